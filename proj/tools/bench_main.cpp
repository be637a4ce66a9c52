// Throughput comparison of the OpenMP batch kernels against their serial
// reference implementations.

#include <chrono>
#include <cstdio>
#include <random>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stcga/batch.hpp"

using namespace stcga;
using spacetime::Event;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Event random_event(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-5.0, 5.0);
  return Event{unit(rng), unit(rng), unit(rng), unit(rng)};
}

Multivector random_multivector(const AlgebraPtr& alg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<BladeMask> mask(0, static_cast<BladeMask>(alg->blade_count() - 1));
  Multivector mv(alg);
  for (int k = 0; k < 12; ++k) mv.set_coeff(mask(rng), unit(rng));
  return mv;
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = Clock::now();
    f();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

void report(const char* name, std::size_t n, double serial, double parallel) {
  std::printf("%-28s n=%-8zu serial %8.1f ms   parallel %8.1f ms   speedup %5.2fx\n", name, n,
              serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  const auto& model = spacetime::SpacetimeModel::instance();
  std::mt19937_64 rng(20240901);

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP unavailable; parallel kernels run serially\n");
#endif

  {
    const std::size_t n = 20000;
    std::vector<Multivector> as, bs;
    as.reserve(n);
    bs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      as.push_back(random_multivector(model.algebra(), rng));
      bs.push_back(random_multivector(model.algebra(), rng));
    }
    const double serial = time_best_of(3, [&] { batch::geometric_products_serial(as, bs); });
    const double parallel = time_best_of(3, [&] { batch::geometric_products(as, bs); });
    report("geometric_products", n, serial, parallel);
  }

  {
    const std::size_t n = 200000;
    std::vector<Event> events;
    events.reserve(n);
    for (std::size_t i = 0; i < n; ++i) events.push_back(random_event(rng));
    const double serial = time_best_of(3, [&] { batch::event_constraints_serial(model, events); });
    const double parallel = time_best_of(3, [&] { batch::event_constraints(model, events); });
    report("event_constraints", n, serial, parallel);
  }

  {
    const std::size_t n = 200000;
    std::vector<std::pair<Event, Event>> pairs;
    pairs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(random_event(rng), random_event(rng));
    const double serial =
        time_best_of(3, [&] { batch::minkowski_intervals_serial(model, pairs); });
    const double parallel = time_best_of(3, [&] { batch::minkowski_intervals(model, pairs); });
    report("minkowski_intervals", n, serial, parallel);
  }

  {
    const std::size_t n = 100000;
    std::vector<batch::ShellMembershipCase> cases;
    cases.reserve(n);
    std::uniform_real_distribution<double> radius(-4.0, 4.0);
    for (std::size_t i = 0; i < n; ++i) {
      cases.push_back({random_event(rng), radius(rng), random_event(rng)});
    }
    const double serial =
        time_best_of(3, [&] { batch::shell_membership_residuals_serial(model, cases); });
    const double parallel =
        time_best_of(3, [&] { batch::shell_membership_residuals(model, cases); });
    report("shell_membership_residuals", n, serial, parallel);
  }

  return 0;
}
