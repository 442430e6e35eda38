#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ouspec/geometry.hpp"
#include "ouspec/grid.hpp"
#include "ouspec/sparse.hpp"

namespace ouspec {

/// How rows at CUT nodes are scaled before symmetrization.
enum class CutRowScaling {
  /// Finite-volume rows: every row carries the h^2 cell factor, so the
  /// shortened-leg flux stencil is symmetric before the symmetrization step.
  kCellVolume,
  /// Classical Shortley-Weller rows (leg-averaged denominators 2/(a+ + a-)),
  /// scaled by the node's area fraction; asymmetric at CUT rows until symmetrized.
  kLegAveraged,
};

/// Generalized eigenproblem A u = lambda M u over the active nodes of a grid.
struct SparseOperatorPair {
  CsrMatrix stiffness;
  std::vector<double> mass;
  /// max |A_ij - A_ji| before the (A + A^T)/2 step.
  double raw_asymmetry = 0.0;
  /// Active index whose eigenvector entry is made positive.
  std::optional<std::size_t> sign_anchor;

  std::size_t size() const { return mass.size(); }
};

/// Discretizes u -> -div(gamma grad u) with link fluxes
/// gamma(link midpoint) (u_nb - u) / (alpha h) and zero Dirichlet data at
/// shortened legs; then symmetrizes and attaches M = diag(node_weights).
SparseOperatorPair assemble(const EmbeddedGrid& grid, const ConvexPolygon& body,
                            CutRowScaling scaling = CutRowScaling::kCellVolume);

/// y = A u. Throws kDimensionMismatch.
std::vector<double> apply(const SparseOperatorPair& pair, std::span<const double> u);

}  // namespace ouspec
