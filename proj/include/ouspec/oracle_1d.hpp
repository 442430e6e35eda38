#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ouspec {

/// First eigenvalue of a one-dimensional reduction of -u'' + x u' = lambda u,
/// found by shooting with RK4 and bisecting on the sign of the endpoint value.
struct ShootingResult {
  double lambda = 0.0;
  /// (x or r, u) samples on the integration grid, u(0) = 1.
  std::vector<std::pair<double, double>> profile;
  double bracket_width = 0.0;
  /// u at the right endpoint for the returned lambda.
  double endpoint_value = 0.0;
};

struct ShootingOptions {
  int steps = 4096;
  double bracket_tol = 1e-12;
};

/// Even first eigenfunction on (-a, a): u'' - x u' + lambda u = 0 on [0, a],
/// u(0) = 1, u'(0) = 0. Throws kBracketNotFound.
ShootingResult interval_eigenvalue(double a, const ShootingOptions& opts = {});

/// Radial first eigenfunction on the centered disk of radius R:
/// u'' + (1/r - r) u' + lambda u = 0, launched from r0 = R/steps with the
/// series u ~ 1 - lambda r^2 / 4. Throws kBracketNotFound.
ShootingResult radial_disk_eigenvalue(double radius, const ShootingOptions& opts = {});

/// "coordinate,u" CSV of the profile.
void write_profile_csv(const ShootingResult& result, const std::string& path, const std::string& coordinate);

}  // namespace ouspec
