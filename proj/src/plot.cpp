#include "influence/plot.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "influence/error.hpp"

namespace influence {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> to_number(const std::string& text) {
  double v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Series {
  std::string label;
  std::map<double, std::pair<double, int>> points;  // x -> (sum of y, count)
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  void widen_if_flat() {
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

constexpr std::string_view kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

constexpr double kWidth = 720, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw Error(ErrorKind::configuration, "missing column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (first) {
      table.header = split_row(line);
      first = false;
    } else {
      table.rows.push_back(split_row(line));
    }
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
  return read_csv(in);
}

std::string render_svg(const CsvTable& table, const PlotSpec& spec) {
  const std::size_t x_col = table.column(spec.x);
  std::vector<std::size_t> y_cols;
  for (const auto& y : spec.y) y_cols.push_back(table.column(y));
  const std::optional<std::size_t> group_col =
      spec.group ? std::optional<std::size_t>(table.column(*spec.group)) : std::nullopt;

  std::vector<Series> series;
  std::map<std::pair<std::size_t, std::string>, std::size_t> index;
  for (const auto& row : table.rows) {
    const auto cell = [&](std::size_t c) -> std::string { return c < row.size() ? row[c] : std::string(); };
    const auto x = to_number(cell(x_col));
    if (!x) continue;
    const std::string group = group_col ? cell(*group_col) : std::string();
    for (std::size_t j = 0; j < y_cols.size(); ++j) {
      const auto y = to_number(cell(y_cols[j]));
      if (!y) continue;
      const auto key = std::make_pair(j, group);
      auto it = index.find(key);
      if (it == index.end()) {
        std::string label = spec.y[j];
        if (group_col) label += " [" + *spec.group + "=" + group + "]";
        it = index.emplace(key, series.size()).first;
        series.push_back(Series{std::move(label), {}});
      }
      auto& acc = series[it->second].points[*x];
      acc.first += *y;
      acc.second += 1;
    }
  }

  Range xr{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  Range yr = xr;
  for (const auto& s : series) {
    for (const auto& [x, acc] : s.points) {
      const double y = acc.first / acc.second;
      xr.lo = std::min(xr.lo, x);
      xr.hi = std::max(xr.hi, x);
      yr.lo = std::min(yr.lo, y);
      yr.hi = std::max(yr.hi, y);
    }
  }
  if (series.empty()) {
    xr = Range{};
    yr = Range{};
  }
  xr.widen_if_flat();
  yr.widen_if_flat();

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::string svg;
  auto out = std::back_inserter(svg);
  fmt::format_to(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  fmt::format_to(out,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
                 "font-family=\"sans-serif\" font-size=\"12\">\n",
                 kWidth, kHeight);
  fmt::format_to(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  if (!spec.title.empty()) {
    fmt::format_to(out, "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                   kLeft + plot_w / 2, escape_xml(spec.title));
  }

  // Axes and ticks.
  fmt::format_to(out, "<g stroke=\"black\" stroke-width=\"1\">\n");
  fmt::format_to(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", kLeft, kTop + plot_h, kLeft + plot_w);
  fmt::format_to(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", kLeft, kTop, kTop + plot_h);
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double tx = px(xr.lo + (xr.hi - xr.lo) * i / kTicks);
    const double ty = py(yr.lo + (yr.hi - yr.lo) * i / kTicks);
    fmt::format_to(out, "<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\"/>\n", tx, kTop + plot_h,
                   kTop + plot_h + 5);
    fmt::format_to(out, "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\"/>\n", kLeft - 5, ty, kLeft);
  }
  fmt::format_to(out, "</g>\n");
  for (int i = 0; i <= kTicks; ++i) {
    const double vx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double vy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    fmt::format_to(out, "<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.4g}</text>\n", px(vx),
                   kTop + plot_h + 18, vx);
    fmt::format_to(out, "<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.4g}</text>\n", kLeft - 8, py(vy) + 4, vy);
  }
  fmt::format_to(out, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", kLeft + plot_w / 2,
                 kHeight - 10, escape_xml(spec.x));

  // Series and legend.
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto colour = kPalette[i % std::size(kPalette)];
    std::string points;
    for (const auto& [x, acc] : series[i].points) {
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(x), py(acc.first / acc.second));
    }
    fmt::format_to(out, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", colour,
                   points);
    const double ly = kTop + 10 + 18 * static_cast<double>(i);
    fmt::format_to(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                   kLeft + plot_w + 12, ly, kLeft + plot_w + 32, colour);
    fmt::format_to(out, "<text x=\"{}\" y=\"{}\">{}</text>\n", kLeft + plot_w + 38, ly + 4,
                   escape_xml(series[i].label));
  }
  fmt::format_to(out, "</svg>\n");
  return svg;
}

}  // namespace influence
