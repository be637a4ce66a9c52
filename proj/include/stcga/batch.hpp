#pragma once

#include <utility>
#include <vector>

#include "stcga/spacetime.hpp"

namespace stcga::batch {

/// Data-parallel kernels for the evaluation paths that dominate large runs:
/// bulk products, event-constraint checks, interval evaluation and shell
/// membership. Each kernel ships in two variants, an OpenMP-parallel one and
/// a serial reference; elements are computed independently with identical
/// arithmetic, so the two variants agree bitwise. The benchmark tool
/// compares their throughput.

struct EventConstraintResiduals {
  double null_square = 0.0;  // X.X
  double inf_plus = 0.0;     // X.inf+ - 1
  double inf_minus = 0.0;    // X.inf- + 1
  double omega_inf = 0.0;    // X.winf + 1
  double omega0 = 0.0;       // X.w0
  double max_abs() const;
};

struct ShellMembershipCase {
  spacetime::Event center;
  double r_squared = 0.0;
  spacetime::Event probe;
};

std::vector<Multivector> geometric_products(const std::vector<Multivector>& as,
                                            const std::vector<Multivector>& bs);
std::vector<Multivector> geometric_products_serial(const std::vector<Multivector>& as,
                                                   const std::vector<Multivector>& bs);

std::vector<EventConstraintResiduals> event_constraints(
    const spacetime::SpacetimeModel& model, const std::vector<spacetime::Event>& events);
std::vector<EventConstraintResiduals> event_constraints_serial(
    const spacetime::SpacetimeModel& model, const std::vector<spacetime::Event>& events);

std::vector<double> minkowski_intervals(
    const spacetime::SpacetimeModel& model,
    const std::vector<std::pair<spacetime::Event, spacetime::Event>>& pairs);
std::vector<double> minkowski_intervals_serial(
    const spacetime::SpacetimeModel& model,
    const std::vector<std::pair<spacetime::Event, spacetime::Event>>& pairs);

/// X.S + (d^2(probe, center) - r_squared)/2 for each case; zero when the
/// conformal membership value agrees with the coordinate interval.
std::vector<double> shell_membership_residuals(const spacetime::SpacetimeModel& model,
                                               const std::vector<ShellMembershipCase>& cases);
std::vector<double> shell_membership_residuals_serial(const spacetime::SpacetimeModel& model,
                                                      const std::vector<ShellMembershipCase>& cases);

}  // namespace stcga::batch
