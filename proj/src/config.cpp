#include "excode/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "excode/fixtures.hpp"

namespace excode {

using nlohmann::json;

ValidationError::ValidationError(std::string f, const std::string& message)
    : std::runtime_error(f + ": " + message), field(std::move(f)) {}

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError(where.empty() ? key : where + "." + key, "unknown field");
  }
}

double get_number(const json& obj, const std::string& key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(where + key, "expected a number");
  return v.get<double>();
}

double positive(double v, const std::string& field) {
  if (!(v > 0.0)) throw ValidationError(field, "must be positive");
  return v;
}

std::uint64_t get_seed(const json& v, const std::string& field) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ValidationError(field, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& where, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw ValidationError(where + key, "expected an integer >= 1");
  return v.get<std::size_t>();
}

Scheme get_scheme(const json& v, const std::string& field) {
  if (!v.is_string()) throw ValidationError(field, "expected a scheme name");
  auto s = parse_scheme(v.get<std::string>());
  if (!s)
    throw ValidationError(field, "unknown scheme '" + v.get<std::string>() + "'; valid names: " +
                                     std::string(kSchemeNames));
  return *s;
}

void parse_topology(const json& t, ExperimentPlan& plan) {
  if (!t.is_object()) throw ValidationError("topology", "expected an object");
  reject_unknown(t, "topology", {"builtin", "positions", "nodes", "side", "range", "seed", "generator"});
  auto& topo = plan.base.topology;
  topo.radio_range = positive(get_number(t, "range", "topology.", PlanDefaults::kRange), "topology.range");

  if (t.contains("builtin")) {
    const auto name = t.at("builtin").get<std::string>();
    auto fixture = find_fixture(name);
    if (!fixture) throw ValidationError("topology.builtin", "unknown fixture '" + name + "'");
    plan.base.topology = fixture->scenario.topology;
    plan.base.flows = fixture->scenario.flows;
    plan.base.duration_s = fixture->scenario.duration_s;
    plan.random_flows.reset();
    plan.topology_seed_fixed = true;
    return;
  }
  if (t.contains("positions")) {
    const auto& arr = t.at("positions");
    if (!arr.is_array() || arr.empty()) throw ValidationError("topology.positions", "expected a non-empty array");
    std::vector<Position> positions;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& p = arr[i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw ValidationError("topology.positions[" + std::to_string(i) + "]", "expected [x, y]");
      positions.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    topo.layout = std::move(positions);
    plan.topology_seed_fixed = true;
    return;
  }
  if (t.contains("generator") && t.at("generator") != "random")
    throw ValidationError("topology.generator", "only 'random' is supported");
  RandomLayoutSpec spec;
  spec.nodes = get_count(t, "nodes", "topology.", PlanDefaults::kNodes);
  spec.side = positive(get_number(t, "side", "topology.", PlanDefaults::kSide), "topology.side");
  if (t.contains("seed")) {
    spec.seed = get_seed(t.at("seed"), "topology.seed");
    plan.topology_seed_fixed = true;
  }
  topo.layout = spec;
}

FlowSpec parse_flow(const json& f, std::size_t index) {
  const std::string where = "flows[" + std::to_string(index) + "].";
  if (!f.is_object()) throw ValidationError("flows[" + std::to_string(index) + "]", "expected an object");
  reject_unknown(f, "flows[" + std::to_string(index) + "]", {"src", "dst", "rate", "packet_size", "start", "stop"});
  FlowSpec flow;
  flow.flow = static_cast<FlowId>(index);
  for (const char* key : {"src", "dst"}) {
    if (!f.contains(key) || !f.at(key).is_number_integer() || f.at(key).get<std::int64_t>() < 0)
      throw ValidationError(where + key, "expected a node id");
  }
  flow.src = f.at("src").get<NodeId>();
  flow.dst = f.at("dst").get<NodeId>();
  if (flow.src == flow.dst) throw ValidationError(where + "dst", "must differ from src");
  flow.rate = positive(get_number(f, "rate", where, PlanDefaults::kFlowRate), where + "rate");
  flow.packet_size = get_count(f, "packet_size", where, PlanDefaults::kPacketSize);
  flow.start = get_number(f, "start", where, 0.0);
  if (flow.start < 0.0) throw ValidationError(where + "start", "must be non-negative");
  flow.stop = get_number(f, "stop", where, flow.stop);
  if (flow.stop <= flow.start) throw ValidationError(where + "stop", "must be after start");
  return flow;
}

void parse_flows(const json& f, ExperimentPlan& plan) {
  if (f.is_array()) {
    plan.base.flows.clear();
    plan.random_flows.reset();
    for (std::size_t i = 0; i < f.size(); ++i) plan.base.flows.push_back(parse_flow(f[i], i));
    return;
  }
  if (!f.is_object()) throw ValidationError("flows", "expected an array of flows or {count, rate}");
  reject_unknown(f, "flows", {"count", "rate", "packet_size"});
  RandomFlowSpec spec;
  spec.count = get_count(f, "count", "flows.", 2);
  spec.rate = positive(get_number(f, "rate", "flows.", PlanDefaults::kFlowRate), "flows.rate");
  spec.packet_size = get_count(f, "packet_size", "flows.", PlanDefaults::kPacketSize);
  plan.random_flows = spec;
  plan.base.flows.clear();
}

void parse_sweep(const json& s, ExperimentPlan& plan) {
  if (!s.is_object()) throw ValidationError("sweep", "expected an object");
  reject_unknown(s, "sweep", {"variable", "values", "from", "to", "step", "schemes", "seeds", "seed_count"});
  if (s.contains("variable")) {
    const auto v = s.at("variable").get<std::string>();
    if (v == "flows") plan.sweep = SweepVariable::Flows;
    else if (v == "rate") plan.sweep = SweepVariable::Rate;
    else throw ValidationError("sweep.variable", "expected 'flows' or 'rate'");
  }
  if (s.contains("values")) {
    const auto& vals = s.at("values");
    if (!vals.is_array() || vals.empty()) throw ValidationError("sweep.values", "expected a non-empty array");
    plan.sweep_values.clear();
    for (const auto& v : vals) {
      if (!v.is_number()) throw ValidationError("sweep.values", "expected numbers");
      plan.sweep_values.push_back(positive(v.get<double>(), "sweep.values"));
    }
  } else if (s.contains("from")) {
    const double from = positive(get_number(s, "from", "sweep.", 0), "sweep.from");
    const double to = get_number(s, "to", "sweep.", from);
    const double step = positive(get_number(s, "step", "sweep.", 1), "sweep.step");
    if (to < from) throw ValidationError("sweep.to", "must be >= sweep.from");
    plan.sweep_values.clear();
    for (double v = from; v <= to + 1e-9 * step; v += step) plan.sweep_values.push_back(v);
  }
  if (plan.sweep != SweepVariable::None && (!s.contains("values") && !s.contains("from")))
    throw ValidationError("sweep.values", "required when sweep.variable is set");
  if (plan.sweep == SweepVariable::Flows) {
    if (!plan.random_flows) throw ValidationError("sweep.variable", "'flows' sweep needs random flows {count, rate}");
    for (double v : plan.sweep_values)
      if (v != static_cast<double>(static_cast<std::size_t>(v)))
        throw ValidationError("sweep.values", "flow counts must be integers");
  }
  if (s.contains("schemes")) {
    const auto& arr = s.at("schemes");
    if (!arr.is_array() || arr.empty()) throw ValidationError("sweep.schemes", "expected a non-empty array");
    plan.schemes.clear();
    for (const auto& v : arr) plan.schemes.push_back(get_scheme(v, "sweep.schemes"));
  }
  if (s.contains("seeds")) {
    const auto& arr = s.at("seeds");
    if (!arr.is_array() || arr.empty()) throw ValidationError("sweep.seeds", "expected a non-empty array");
    plan.seeds.clear();
    for (const auto& v : arr) plan.seeds.push_back(get_seed(v, "sweep.seeds"));
  } else if (s.contains("seed_count")) {
    const auto n = get_count(s, "seed_count", "sweep.", 1);
    const auto first = plan.seeds.front();
    plan.seeds.clear();
    for (std::size_t i = 0; i < n; ++i) plan.seeds.push_back(first + i);
  }
}

}  // namespace

ExperimentPlan parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config root must be an object");

  ExperimentPlan plan;
  plan.base.topology.layout = RandomLayoutSpec{PlanDefaults::kNodes, PlanDefaults::kSide, 1};
  plan.base.topology.radio_range = PlanDefaults::kRange;
  plan.base.channel_rate_bps = PlanDefaults::kChannelRate;
  plan.base.duration_s = PlanDefaults::kDuration;
  plan.random_flows = RandomFlowSpec{2, PlanDefaults::kFlowRate, PlanDefaults::kPacketSize};

  try {
    reject_unknown(root, "", {"name", "topology", "flows", "scheme", "channel", "duration", "drain", "seed", "sweep",
                              "output"});
    if (root.contains("name")) plan.name = root.at("name").get<std::string>();
    if (root.contains("seed")) plan.seeds = {get_seed(root.at("seed"), "seed")};
    plan.base.seed = plan.seeds.front();
    if (root.contains("topology")) parse_topology(root.at("topology"), plan);
    if (root.contains("flows")) parse_flows(root.at("flows"), plan);
    if (root.contains("scheme")) plan.schemes = {get_scheme(root.at("scheme"), "scheme")};
    if (root.contains("channel")) {
      const auto& c = root.at("channel");
      if (!c.is_object()) throw ValidationError("channel", "expected an object");
      reject_unknown(c, "channel", {"rate_bps", "count_header_overhead"});
      plan.base.channel_rate_bps =
          positive(get_number(c, "rate_bps", "channel.", PlanDefaults::kChannelRate), "channel.rate_bps");
      if (c.contains("count_header_overhead")) {
        if (!c.at("count_header_overhead").is_boolean())
          throw ValidationError("channel.count_header_overhead", "expected true or false");
        plan.base.count_header_overhead = c.at("count_header_overhead").get<bool>();
      }
    }
    if (root.contains("duration"))
      plan.base.duration_s = positive(get_number(root, "duration", "", 0), "duration");
    if (root.contains("drain")) {
      plan.base.drain_s = get_number(root, "drain", "", 0);
      if (plan.base.drain_s < 0) throw ValidationError("drain", "must be non-negative");
    }
    if (root.contains("sweep")) parse_sweep(root.at("sweep"), plan);
    if (root.contains("output")) {
      const auto& o = root.at("output");
      if (!o.is_object()) throw ValidationError("output", "expected an object");
      reject_unknown(o, "output", {"dir"});
      if (o.contains("dir")) plan.output_dir = o.at("dir").get<std::string>();
    }
  } catch (const json::type_error& e) {
    throw ValidationError("config", std::string("wrong value type: ") + e.what());
  }

  if (!plan.random_flows) {
    const auto n = plan.base.topology.positions().size();
    for (std::size_t i = 0; i < plan.base.flows.size(); ++i) {
      const auto& f = plan.base.flows[i];
      if (f.src >= n || f.dst >= n)
        throw ValidationError("flows[" + std::to_string(i) + "]", "node id outside the topology");
    }
  }
  return plan;
}

ExperimentPlan load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Scenario materialize(const ExperimentPlan& plan, double sweep_value, Scheme scheme, std::uint64_t seed) {
  Scenario s = plan.base;
  s.scheme = scheme;
  s.seed = seed;
  if (auto* spec = std::get_if<RandomLayoutSpec>(&s.topology.layout); spec && !plan.topology_seed_fixed)
    spec->seed = seed;

  if (plan.random_flows) {
    auto spec = *plan.random_flows;
    if (plan.sweep == SweepVariable::Flows) spec.count = static_cast<std::size_t>(sweep_value);
    if (plan.sweep == SweepVariable::Rate) spec.rate = sweep_value;
    s.flows = random_flows(s.topology.build(), spec.count, spec.rate, spec.packet_size, seed);
  } else if (plan.sweep == SweepVariable::Rate) {
    for (auto& f : s.flows) f.rate = sweep_value;
  }
  return s;
}

}  // namespace excode
