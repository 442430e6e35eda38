#include "ouspec/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <thread>

namespace ouspec {

BodySolution solve_body(const ConvexPolygon& body, const SolverConfig& cfg) {
  EmbeddedGrid grid = build_grid(body, cfg.h);
  SparseOperatorPair pair = assemble(grid, body, cfg.scaling);
  EigenSolution eigen = smallest_eigenpair(pair, cfg.solver);
  return {std::move(grid), std::move(pair), std::move(eigen)};
}

ConvexPolygon disk_polygon(int m, double radius, Vec2 center) {
  const double wedge = 2.0 * std::numbers::pi / m;
  return regular_polygon(m, radius * std::sqrt(wedge / std::sin(wedge)), center);
}

int worker_count() {
  if (const char* env = std::getenv("OUSPEC_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, 256));
  }
  return 1;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace ouspec
