#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ouspec {

/// Square compressed-row matrix with sorted column indices per row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::size_t> col;
  std::vector<double> val;

  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };

  /// Sums duplicate entries.
  static CsrMatrix from_triplets(std::size_t n, std::vector<Triplet> triplets);

  std::size_t nnz() const { return val.size(); }
  /// Zero when (i, j) is not stored.
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> multiply(std::span<const double> x) const;

  /// max |A_ij - A_ji| over stored entries (a missing mirror counts as zero).
  double asymmetry() const;
  /// A <- (A + A^T) / 2 in place; requires a structurally symmetric pattern.
  void symmetrize();

  /// "row col value" lines, zero-based, 17 significant digits.
  void dump(const std::string& path) const;
};

}  // namespace ouspec
