#include "ouspec/oracle_1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "ouspec/error.hpp"

namespace ouspec {

namespace {

constexpr double kBesselJ0FirstZero = 2.404825557695773;

struct Launch {
  double x0;
  double u0;
  double du0;
};

// u'' = accel(x, u, u'; lambda); integrates from the launch point to `end`.
template <typename Accel, typename LaunchFn>
double shoot(double lambda, double end, int steps, Accel accel, LaunchFn launch,
             std::vector<std::pair<double, double>>* profile) {
  const Launch l = launch(lambda);
  const double step = (end - l.x0) / steps;
  double x = l.x0;
  double u = l.u0;
  double v = l.du0;
  if (profile) profile->emplace_back(x, u);
  for (int k = 0; k < steps; ++k) {
    const double k1u = v;
    const double k1v = accel(x, u, v, lambda);
    const double k2u = v + 0.5 * step * k1v;
    const double k2v = accel(x + 0.5 * step, u + 0.5 * step * k1u, k2u, lambda);
    const double k3u = v + 0.5 * step * k2v;
    const double k3v = accel(x + 0.5 * step, u + 0.5 * step * k2u, k3u, lambda);
    const double k4u = v + step * k3v;
    const double k4v = accel(x + step, u + step * k3u, k4u, lambda);
    u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    x = l.x0 + (k + 1) * step;
    if (profile) profile->emplace_back(x, u);
  }
  return u;
}

template <typename Accel, typename LaunchFn>
ShootingResult first_root(double end, double upper, int steps, double bracket_tol, Accel accel,
                          LaunchFn launch) {
  auto endpoint = [&](double lambda) { return shoot(lambda, end, steps, accel, launch, nullptr); };

  // Scan geometrically for the first sign change of u(end; lambda); u(end) is
  // positive below the first eigenvalue.
  constexpr double kLower = 1e-6;
  constexpr int kScan = 400;
  double lo = kLower;
  double f_lo = endpoint(lo);
  if (!(f_lo > 0.0)) {
    std::ostringstream msg;
    msg << "u(end) = " << f_lo << " is not positive at the lower bracket " << kLower;
    throw Error(ErrorCode::kBracketNotFound, msg.str());
  }
  double hi = 0.0;
  for (int k = 1; k <= kScan; ++k) {
    const double trial = kLower * std::pow(upper / kLower, static_cast<double>(k) / kScan);
    if (endpoint(trial) <= 0.0) {
      hi = trial;
      break;
    }
    lo = trial;
  }
  if (hi == 0.0) {
    std::ostringstream msg;
    msg << "no sign change of u(end) in [" << kLower << ", " << upper << "]";
    throw Error(ErrorCode::kBracketNotFound, msg.str());
  }

  for (int it = 0; it < 400 && hi - lo > bracket_tol * std::max(1.0, lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (endpoint(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  ShootingResult out;
  out.lambda = 0.5 * (lo + hi);
  out.bracket_width = hi - lo;
  out.endpoint_value = shoot(out.lambda, end, steps, accel, launch, &out.profile);
  return out;
}

}  // namespace

ShootingResult interval_eigenvalue(double a, const ShootingOptions& opts) {
  if (!(a > 0.0)) throw Error(ErrorCode::kBracketNotFound, "interval half-width must be positive");
  const double upper = std::pow(std::numbers::pi / (2.0 * a), 2) * 10.0;
  return first_root(
      a, upper, opts.steps, opts.bracket_tol,
      [](double x, double u, double du, double lambda) { return x * du - lambda * u; },
      [](double) { return Launch{0.0, 1.0, 0.0}; });
}

ShootingResult radial_disk_eigenvalue(double radius, const ShootingOptions& opts) {
  if (!(radius > 0.0)) throw Error(ErrorCode::kBracketNotFound, "disk radius must be positive");
  const double upper = std::pow(kBesselJ0FirstZero / radius, 2) * 10.0;
  const double r0 = radius / opts.steps;
  ShootingResult out = first_root(
      radius, upper, opts.steps - 1, opts.bracket_tol,
      [](double r, double u, double du, double lambda) { return -(1.0 / r - r) * du - lambda * u; },
      [r0](double lambda) { return Launch{r0, 1.0 - lambda * r0 * r0 / 4.0, -lambda * r0 / 2.0}; });
  out.profile.insert(out.profile.begin(), {0.0, 1.0});
  return out;
}

void write_profile_csv(const ShootingResult& result, const std::string& path, const std::string& coordinate) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::kIo, "cannot write " + path);
  os << coordinate << ",u\n";
  char buf[96];
  for (const auto& [x, u] : result.profile) {
    std::snprintf(buf, sizeof buf, "%.16e,%.16e\n", x, u);
    os << buf;
  }
}

}  // namespace ouspec
