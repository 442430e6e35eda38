#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ouspec/discretization.hpp"
#include "ouspec/eigensolver.hpp"
#include "ouspec/geometry.hpp"
#include "ouspec/grid.hpp"

namespace ouspec {

struct SolverConfig {
  double h = 0.02;
  SolverOptions solver;
  CutRowScaling scaling = CutRowScaling::kCellVolume;
};

/// Grid, operators and first eigenpair of one body.
struct BodySolution {
  EmbeddedGrid grid;
  SparseOperatorPair pair;
  EigenSolution eigen;

  /// Eigenfunction as a node field (zero off the active set).
  std::vector<double> u_field() const { return grid.scatter(eigen.u); }
};

BodySolution solve_body(const ConvexPolygon& body, const SolverConfig& cfg);

/// Regular m-gon with the same area as the disk of the given radius, so the
/// first-order boundary perturbation of a radial eigenvalue cancels.
ConvexPolygon disk_polygon(int m, double radius, Vec2 center = {});

/// Worker count: OUSPEC_THREADS if set (>= 1), otherwise 1.
int worker_count();

/// Runs job(0..count-1) on worker_count() threads. Results must be written
/// into per-index slots; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job);

}  // namespace ouspec
