#include "stcga/batch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "stcga/errors.hpp"

namespace stcga::batch {

using spacetime::Event;
using spacetime::SpacetimeModel;

namespace {

EventConstraintResiduals one_event_constraints(const SpacetimeModel& model, const Event& e) {
  const Multivector X = model.embed_event(e);
  EventConstraintResiduals r;
  r.null_square = geometric_product(X, X).scalar_part();
  r.inf_plus = inner_product(X, model.infinity_plus()).scalar_part() - 1.0;
  r.inf_minus = inner_product(X, model.infinity_minus()).scalar_part() + 1.0;
  r.omega_inf = inner_product(X, model.omega_inf()).scalar_part() + 1.0;
  r.omega0 = inner_product(X, model.omega0()).scalar_part();
  return r;
}

double one_shell_membership(const SpacetimeModel& model, const ShellMembershipCase& c) {
  const Multivector X = model.embed_event(c.probe);
  const Multivector S = model.shell_dual(c.center, c.r_squared);
  const double membership = inner_product(X, S).scalar_part();
  const double d_sq = model.minkowski_sq_interval(c.probe, c.center);
  return membership + 0.5 * (d_sq - c.r_squared);
}

}  // namespace

double EventConstraintResiduals::max_abs() const {
  return std::max({std::abs(null_square), std::abs(inf_plus), std::abs(inf_minus),
                   std::abs(omega_inf), std::abs(omega0)});
}

std::vector<Multivector> geometric_products_serial(const std::vector<Multivector>& as,
                                                   const std::vector<Multivector>& bs) {
  if (as.size() != bs.size()) throw ValidationError("geometric_products: size mismatch");
  std::vector<Multivector> out(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) out[i] = geometric_product(as[i], bs[i]);
  return out;
}

std::vector<Multivector> geometric_products(const std::vector<Multivector>& as,
                                            const std::vector<Multivector>& bs) {
  if (as.size() != bs.size()) throw ValidationError("geometric_products: size mismatch");
  std::vector<Multivector> out(as.size());
  const std::int64_t n = static_cast<std::int64_t>(as.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = geometric_product(as[i], bs[i]);
  return out;
}

std::vector<EventConstraintResiduals> event_constraints_serial(const SpacetimeModel& model,
                                                               const std::vector<Event>& events) {
  std::vector<EventConstraintResiduals> out(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) out[i] = one_event_constraints(model, events[i]);
  return out;
}

std::vector<EventConstraintResiduals> event_constraints(const SpacetimeModel& model,
                                                        const std::vector<Event>& events) {
  std::vector<EventConstraintResiduals> out(events.size());
  const std::int64_t n = static_cast<std::int64_t>(events.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = one_event_constraints(model, events[i]);
  return out;
}

std::vector<double> minkowski_intervals_serial(const SpacetimeModel& model,
                                               const std::vector<std::pair<Event, Event>>& pairs) {
  std::vector<double> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out[i] = model.minkowski_sq_interval(pairs[i].first, pairs[i].second);
  }
  return out;
}

std::vector<double> minkowski_intervals(const SpacetimeModel& model,
                                        const std::vector<std::pair<Event, Event>>& pairs) {
  std::vector<double> out(pairs.size());
  const std::int64_t n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = model.minkowski_sq_interval(pairs[i].first, pairs[i].second);
  }
  return out;
}

std::vector<double> shell_membership_residuals_serial(const SpacetimeModel& model,
                                                      const std::vector<ShellMembershipCase>& cases) {
  std::vector<double> out(cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) out[i] = one_shell_membership(model, cases[i]);
  return out;
}

std::vector<double> shell_membership_residuals(const SpacetimeModel& model,
                                               const std::vector<ShellMembershipCase>& cases) {
  std::vector<double> out(cases.size());
  const std::int64_t n = static_cast<std::int64_t>(cases.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = one_shell_membership(model, cases[i]);
  return out;
}

}  // namespace stcga::batch
