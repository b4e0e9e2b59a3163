#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace influence {

/// Unquoted comma-separated table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index; throws Error(configuration) naming a missing column.
  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

struct PlotSpec {
  std::string x;
  std::vector<std::string> y;
  std::optional<std::string> group;  // one line per distinct value of this column
  std::string title;
};

/// Standalone SVG line chart: axes with tick labels, one polyline per series
/// and a legend. Rows sharing an x value within a series are averaged.
std::string render_svg(const CsvTable& table, const PlotSpec& spec);

}  // namespace influence
