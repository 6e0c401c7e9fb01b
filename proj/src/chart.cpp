#include "excode/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace excode {

int CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  if (v != 0.0 && (std::fabs(v) < 0.01 || std::fabs(v) >= 1e5))
    std::snprintf(buf, sizeof buf, "%.2e", v);
  else
    std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable t;
  std::size_t start = 0;
  bool first = true;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      if (first) t.header = split(line, ',');
      else t.rows.push_back(split(line, ','));
      first = false;
    }
    start = end + 1;
  }
  return t;
}

std::vector<Series> aggregate_series(const CsvTable& table, std::string_view metric) {
  const int c_scheme = table.column("scheme");
  const int c_flows = table.column("flows");
  const int c_load = table.column("offered_kbps");
  const int c_metric = table.column(metric);
  if (c_scheme < 0 || c_flows < 0 || c_load < 0 || c_metric < 0) return {};

  struct Sample {
    double load;
    double value;
  };
  std::map<std::string, std::map<long, std::vector<Sample>>> groups;
  std::vector<std::string> order;
  for (const auto& row : table.rows) {
    const auto& scheme = row.at(c_scheme);
    const auto& cell = row.at(c_metric);
    if (cell.empty()) continue;
    if (!groups.contains(scheme)) order.push_back(scheme);
    groups[scheme][std::stol(row.at(c_flows))].push_back({std::stod(row.at(c_load)), std::stod(cell)});
  }

  std::vector<Series> out;
  for (const auto& scheme : order) {
    Series s{scheme, {}};
    for (auto& [flows, samples] : groups[scheme]) {
      // Within one flow count, rows whose load differs by more than 5% are
      // separate sweep points (rate sweeps).
      std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.load < b.load; });
      std::size_t i = 0;
      while (i < samples.size()) {
        std::size_t j = i;
        double sx = 0, sy = 0;
        while (j < samples.size() && samples[j].load <= samples[i].load * 1.05 + 1e-9) {
          sx += samples[j].load;
          sy += samples[j].value;
          ++j;
        }
        const double n = static_cast<double>(j - i);
        s.points.emplace_back(sx / n, sy / n);
        i = j;
      }
    }
    std::sort(s.points.begin(), s.points.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::string render_line_chart(std::string_view title, std::string_view x_label, std::string_view y_label,
                              const std::vector<Series>& series) {
  constexpr double W = 640, H = 420, L = 80, R = 150, T = 40, B = 60;
  double xmin = INFINITY, xmax = -INFINITY, ymin = 0, ymax = -INFINITY;
  for (const auto& s : series)
    for (auto [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymax = 1;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12) ymax = ymin + 1;
  ymax *= 1.05;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  static constexpr const char* kMarkers[] = {"circle", "rect", "diamond"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n"
    << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
    << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0;
    const double yv = ymin + (ymax - ymin) * i / 5.0;
    o << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    o << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << py(yv) << "\" x2=\"" << W - R << "\" y2=\"" << py(yv)
      << "\" stroke=\"#ddd\"/>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">" << x_label
    << "</text>\n";
  o << "<text transform=\"translate(20," << (T + H - B) / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << y_label
    << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 5];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (auto [x, y] : s.points) o << px(x) << ',' << py(y) << ' ';
    o << "\"/>\n";
    for (auto [x, y] : s.points) {
      const std::string marker = kMarkers[k % 3];
      if (marker == "circle")
        o << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"4\" fill=\"" << color << "\"/>\n";
      else if (marker == "rect")
        o << "<rect x=\"" << px(x) - 4 << "\" y=\"" << py(y) - 4 << "\" width=\"8\" height=\"8\" fill=\"" << color
          << "\"/>\n";
      else
        o << "<polygon points=\"" << px(x) << ',' << py(y) - 5 << ' ' << px(x) + 5 << ',' << py(y) << ' ' << px(x)
          << ',' << py(y) + 5 << ' ' << px(x) - 5 << ',' << py(y) << "\" fill=\"" << color << "\"/>\n";
    }
    const double ly = T + 20 + 20.0 * static_cast<double>(k);
    o << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 40 << "\" y2=\"" << ly
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << W - R + 46 << "\" y=\"" << ly + 4 << "\">" << s.name << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::vector<std::filesystem::path> write_charts_from_csv(const std::filesystem::path& csv_path,
                                                         const std::filesystem::path& out_dir) {
  std::ifstream in(csv_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto table = parse_csv(ss.str());

  struct Spec {
    const char* metric;
    const char* file;
    const char* title;
    const char* y_label;
  };
  static constexpr Spec kCharts[] = {
      {"throughput_kbps", "throughput.svg", "Network throughput vs. offered load", "throughput (kb/s)"},
      {"encoded_frac", "encoded_fraction.svg", "Encoded packets vs. offered load", "encoded fraction"},
      {"pdr", "delivery_ratio.svg", "Packet delivery ratio vs. offered load", "delivery ratio"},
      {"mean_delay_s", "delay.svg", "End-to-end delay vs. offered load", "mean delay (s)"},
  };
  std::vector<std::filesystem::path> written;
  std::filesystem::create_directories(out_dir);
  for (const auto& c : kCharts) {
    const auto path = out_dir / c.file;
    std::ofstream(path) << render_line_chart(c.title, "offered load (kb/s)", c.y_label,
                                             aggregate_series(table, c.metric));
    written.push_back(path);
  }
  return written;
}

}  // namespace excode
