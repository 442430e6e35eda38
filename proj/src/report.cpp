#include "ouspec/report.hpp"

#include <algorithm>
#include <cstdio>

#include "ouspec/error.hpp"

namespace ouspec {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void Summary::put(const std::string& key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(key, std::move(value));
}

void Summary::set(const std::string& key, double value) { put(key, format_number(value)); }
void Summary::set(const std::string& key, long long value) { put(key, std::to_string(value)); }
void Summary::set(const std::string& key, const std::string& value) { put(key, value); }

void Summary::write(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kIo, "cannot write " + path);
  for (const auto& [k, v] : entries_) os << k << '=' << v << '\n';
}

CsvWriter::CsvWriter(const std::string& path, std::span<const std::string> header)
    : os_(path), columns_(header.size()) {
  if (!os_) throw Error(ErrorCode::kIo, "cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
  os_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw Error(ErrorCode::kDimensionMismatch, "CSV row width differs from header");
  for (std::size_t i = 0; i < values.size(); ++i) os_ << (i ? "," : "") << format_number(values[i]);
  os_ << '\n';
}

void write_heatmap_svg(const std::string& path, const EmbeddedGrid& grid, std::span<const double> field,
                       const ConvexPolygon& body) {
  if (field.size() != grid.node_count()) throw Error(ErrorCode::kDimensionMismatch, "heatmap field size");
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kIo, "cannot write " + path);

  const double h = grid.spacing();
  const double x0 = grid.origin().x - 0.5 * h;
  const double y0 = grid.origin().y - 0.5 * h;
  const double width = grid.nx() * h;
  const double height = grid.ny() * h;
  const double px = 600.0 / std::max(width, height);

  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const std::size_t n : grid.active_nodes()) {
    lo = first ? field[n] : std::min(lo, field[n]);
    hi = first ? field[n] : std::max(hi, field[n]);
    first = false;
  }
  const double span = hi > lo ? hi - lo : 1.0;

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.3f\" height=\"%.3f\" viewBox=\"0 0 %.3f %.3f\">\n",
                width * px, height * px, width * px, height * px);
  os << buf;
  for (const std::size_t n : grid.active_nodes()) {
    const double s = (field[n] - lo) / span;
    const int r = static_cast<int>(68.0 + s * (253.0 - 68.0) + 0.5);
    const int g = static_cast<int>(1.0 + s * (231.0 - 1.0) + 0.5);
    const int b = static_cast<int>(84.0 + s * (37.0 - 84.0) + 0.5);
    const Vec2 p = grid.position(n);
    // SVG y grows downward.
    std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\" fill=\"rgb(%d,%d,%d)\"/>\n",
                  (p.x - 0.5 * h - x0) * px, (y0 + height - (p.y + 0.5 * h)) * px, h * px, h * px, r, g, b);
    os << buf;
  }
  os << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (const Vec2& v : body.vertices()) {
    std::snprintf(buf, sizeof buf, "%.3f,%.3f ", (v.x - x0) * px, (y0 + height - v.y) * px);
    os << buf;
  }
  os << "\"/>\n</svg>\n";
}

}  // namespace ouspec
