#include "ouspec/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ouspec/error.hpp"

namespace ouspec {

CsrMatrix CsrMatrix::from_triplets(std::size_t n, std::vector<Triplet> triplets) {
  std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row < b.row || (a.row == b.row && a.col < b.col);
  });
  CsrMatrix m;
  m.rows = n;
  m.row_ptr.assign(n + 1, 0);
  for (std::size_t k = 0; k < triplets.size(); ++k) {
    const Triplet& t = triplets[k];
    if (t.row >= n || t.col >= n) throw Error(ErrorCode::kDimensionMismatch, "triplet outside matrix");
    if (k > 0 && triplets[k - 1].row == t.row && triplets[k - 1].col == t.col) {
      m.val.back() += t.value;
      continue;
    }
    m.col.push_back(t.col);
    m.val.push_back(t.value);
    ++m.row_ptr[t.row + 1];
  }
  for (std::size_t i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i]);
  const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return val[static_cast<std::size_t>(it - col.begin())];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(rows);
  for (std::size_t i = 0; i < rows; ++i) d[i] = at(i, i);
  return d;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != rows || y.size() != rows) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix-vector sizes differ");
  }
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows);
  multiply(x, y);
  return y;
}

double CsrMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      worst = std::max(worst, std::abs(val[k] - at(col[k], i)));
    }
  }
  return worst;
}

void CsrMatrix::symmetrize() {
  std::vector<double> out(val.size());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      const std::size_t j = col[k];
      if (j == i) {
        out[k] = val[k];
        continue;
      }
      const auto first = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[j]);
      const auto last = col.begin() + static_cast<std::ptrdiff_t>(row_ptr[j + 1]);
      const auto it = std::lower_bound(first, last, i);
      if (it == last || *it != i) {
        throw Error(ErrorCode::kDimensionMismatch, "symmetrize needs a symmetric sparsity pattern");
      }
      const double mirror = val[static_cast<std::size_t>(it - col.begin())];
      // Ordered sum so both halves round identically.
      out[k] = i < j ? 0.5 * (val[k] + mirror) : 0.5 * (mirror + val[k]);
    }
  }
  val = std::move(out);
}

void CsrMatrix::dump(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kIo, "cannot write " + path);
  char buf[96];
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      std::snprintf(buf, sizeof buf, "%zu %zu %.16e\n", i, col[k], val[k]);
      os << buf;
    }
  }
}

}  // namespace ouspec
