#include "excode/figures.hpp"

#include <map>
#include <sstream>

#include "excode/fixtures.hpp"
#include "excode/simulator.hpp"

namespace excode {

namespace {

SimulationResult run_fixture(const Fixture& f, Scheme scheme) {
  Scenario s = f.scenario;
  s.scheme = scheme;
  return run(s);
}

bool all_delivered(const SimulationResult& r, std::size_t expected) {
  return r.metrics.delivered == expected && r.metrics.decode_failures == 0 && r.diagnostics.clean();
}

FigureCheck check_four_to_three(const Fixture& f) {
  FigureCheck c{f.name + ": 4 transmissions without coding, 3 with", true, {}};
  std::ostringstream d;
  for (Scheme s : {Scheme::NonCoding, Scheme::Cope, Scheme::Excode}) {
    const auto r = run_fixture(f, s);
    const std::uint64_t want = s == Scheme::NonCoding ? 4 : 3;
    d << to_string(s) << "=" << r.metrics.total_tx << " ";
    c.passed = c.passed && r.metrics.total_tx == want && all_delivered(r, 2);
  }
  c.detail = d.str();
  return c;
}

FigureCheck check_relay_only_excode(const Fixture& f, const std::vector<std::string>& relays) {
  FigureCheck c{f.name + ": ExCODE encodes at an interior relay, COPE does not", true, {}};
  const auto ex = run_fixture(f, Scheme::Excode);
  const auto cope = run_fixture(f, Scheme::Cope);
  std::uint64_t at_relays = 0;
  for (const auto& label : relays) at_relays += ex.metrics.per_node_opportunities.at(f.node(label));
  c.passed = at_relays >= 1 && ex.metrics.encode_count == at_relays && all_delivered(ex, 2) &&
             cope.metrics.encode_count == 0 && all_delivered(cope, 2);
  std::ostringstream d;
  d << "excode encodes=" << ex.metrics.encode_count << " (at relays " << at_relays
    << "), cope encodes=" << cope.metrics.encode_count << ", excode delivered=" << ex.metrics.delivered
    << ", payload mismatches=" << ex.diagnostics.payload_mismatches;
  c.detail = d.str();
  return c;
}

}  // namespace

std::vector<FigureCheck> run_fixture_checks() {
  std::vector<FigureCheck> out;
  out.push_back(check_four_to_three(chain_fixture()));
  out.push_back(check_four_to_three(x_fixture()));
  out.push_back(check_relay_only_excode(holders_fixture(), {"C"}));
  out.push_back(check_relay_only_excode(multihop_fixture(), {"O1", "O2", "O3"}));
  return out;
}

ExperimentPlan figures_sweep_plan(bool quick) {
  ExperimentPlan plan;
  plan.name = "figures";
  plan.base.topology.layout = RandomLayoutSpec{PlanDefaults::kNodes, PlanDefaults::kSide, 1};
  plan.base.topology.radio_range = PlanDefaults::kRange;
  plan.base.channel_rate_bps = PlanDefaults::kChannelRate;
  plan.base.duration_s = quick ? 5.0 : PlanDefaults::kDuration;
  plan.random_flows = RandomFlowSpec{2, PlanDefaults::kFlowRate, PlanDefaults::kPacketSize};
  plan.sweep = SweepVariable::Flows;
  plan.sweep_values = {2, 4, 6, 8, 10};
  plan.schemes = {Scheme::NonCoding, Scheme::Cope, Scheme::Excode};
  plan.seeds = quick ? std::vector<std::uint64_t>{1, 2} : std::vector<std::uint64_t>{1, 2, 3, 4, 5};
  return plan;
}

std::vector<FigureCheck> check_sweep(const PlanOutcome& outcome) {
  FigureCheck superset{"sweep: encodes(excode) >= encodes(cope) in every cell", true, {}};
  FigureCheck decodable{"sweep: zero decode failures", true, {}};
  std::map<std::pair<double, std::uint64_t>, std::map<Scheme, std::uint64_t>> encodes;
  std::uint64_t failures = 0;
  for (const auto& c : outcome.cells) {
    if (!c.metrics) {
      superset.passed = decodable.passed = false;
      superset.detail = "cell failed: " + c.error;
      continue;
    }
    encodes[{c.sweep_value, c.seed}][c.scheme] = c.metrics->encode_count;
    failures += c.metrics->decode_failures;
  }
  std::size_t violations = 0;
  for (const auto& [key, by_scheme] : encodes) {
    auto ex = by_scheme.find(Scheme::Excode);
    auto co = by_scheme.find(Scheme::Cope);
    if (ex != by_scheme.end() && co != by_scheme.end() && ex->second < co->second) ++violations;
  }
  superset.passed = superset.passed && violations == 0;
  if (superset.detail.empty()) superset.detail = std::to_string(violations) + " violating cells";
  decodable.passed = decodable.passed && failures == 0;
  decodable.detail = std::to_string(failures) + " decode failures";
  return {superset, decodable};
}

}  // namespace excode
