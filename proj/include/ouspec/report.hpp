#pragma once

#include <fstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ouspec/geometry.hpp"
#include "ouspec/grid.hpp"

namespace ouspec {

/// Scientific notation with 17 significant digits.
std::string format_number(double v);

/// Ordered key=value lines; insertion order is kept so output is byte-stable.
class Summary {
 public:
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);
  void set(const std::string& key, const std::string& value);

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  void write(const std::string& path) const;

 private:
  void put(const std::string& key, std::string value);
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Comma-separated writer with a mandatory header row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::span<const std::string> header);
  void row(std::span<const double> values);

 private:
  std::ofstream os_;
  std::size_t columns_;
};

/// Heatmap of a node field: one rectangle per active cell, colored on a linear
/// RGB ramp from (68,1,84) at the field minimum to (253,231,37) at the maximum,
/// with the body outline drawn on top.
void write_heatmap_svg(const std::string& path, const EmbeddedGrid& grid, std::span<const double> field,
                       const ConvexPolygon& body);

}  // namespace ouspec
