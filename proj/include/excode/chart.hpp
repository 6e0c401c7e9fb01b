#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace excode {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name, or -1.
  int column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  ///< sorted by x
};

/// Minimal standalone SVG line chart.
std::string render_line_chart(std::string_view title, std::string_view x_label, std::string_view y_label,
                              const std::vector<Series>& series);

/// Averages each scheme's rows per load point and plots throughput, encoded
/// fraction, delivery ratio and delay against offered load. Reads nothing but
/// the CSV file.
std::vector<std::filesystem::path> write_charts_from_csv(const std::filesystem::path& csv_path,
                                                         const std::filesystem::path& out_dir);

/// Per-scheme mean of `metric` at each load point, x = mean offered load.
std::vector<Series> aggregate_series(const CsvTable& table, std::string_view metric);

}  // namespace excode
