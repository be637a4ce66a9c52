#include "stcga/dynamics.hpp"

#include <bit>
#include <cmath>

#include "stcga/errors.hpp"

namespace stcga::dynamics {

using spacetime::Event;
using spacetime::SpacetimeModel;

namespace {

constexpr BladeMask kGammaBits = 0b0001111;

bool gamma_only(const Multivector& a) {
  for (const auto& [mask, c] : a.coeffs()) {
    if ((mask & ~kGammaBits) != 0) return false;
  }
  return true;
}

Event event_from_vector(const Multivector& v) {
  return Event{v.coeff(0b0001), v.coeff(0b0010), v.coeff(0b0100), v.coeff(0b1000)};
}

Event add_events(const Event& a, const Event& b) {
  return Event{a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
}

void renormalize_rotor(Multivector& R) {
  const double s = geometric_product(R, reverse(R)).scalar_part();
  if (!(s > 0.0)) throw DegeneracyError("rotor renormalization: R ~R is not positive");
  R *= 1.0 / std::sqrt(s);
}

// Raw sandwich without versor checks; the integrator normalizes explicitly.
Multivector sandwich(const Multivector& R, const Multivector& a) {
  return geometric_product(geometric_product(R, a), reverse(R));
}

// Adaptive Simpson on the gamma components of a vector-valued integrand.
template <typename F>
Multivector simpson_integrate(const AlgebraPtr& alg, F&& f, double a, double b, double tol) {
  struct Panel {
    double a, b;
    Multivector fa, fm, fb, coarse;
  };
  auto simpson = [](double a, double b, const Multivector& fa, const Multivector& fm,
                    const Multivector& fb) {
    return (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
  };
  Multivector total(alg);
  std::vector<Panel> stack;
  {
    Panel p{a, b, f(a), f(0.5 * (a + b)), f(b), Multivector(alg)};
    p.coarse = simpson(a, b, p.fa, p.fm, p.fb);
    stack.push_back(std::move(p));
  }
  int evals = 0;
  while (!stack.empty()) {
    Panel p = std::move(stack.back());
    stack.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const Multivector fl = f(0.5 * (p.a + m));
    const Multivector fr = f(0.5 * (m + p.b));
    evals += 2;
    if (evals > 200000) throw DegeneracyError("simpson_integrate: no convergence");
    const Multivector left = simpson(p.a, m, p.fa, fl, p.fm);
    const Multivector right = simpson(m, p.b, p.fm, fr, p.fb);
    const Multivector fine = left + right;
    if ((fine - p.coarse).norm() <= 15.0 * tol * std::max(1.0, (p.b - p.a) / (b - a))) {
      total += fine + (fine - p.coarse) / 15.0;
    } else {
      Panel l{p.a, m, p.fa, fl, p.fm, left};
      Panel r{m, p.b, p.fm, fr, p.fb, right};
      stack.push_back(std::move(l));
      stack.push_back(std::move(r));
    }
  }
  return total;
}

}  // namespace

RotorForm parse_rotor_form(const std::string& name) {
  if (name == "standard") return RotorForm::standard;
  if (name == "paper" || name == "paper_commutator") return RotorForm::paper_commutator;
  throw ValidationError("unknown rotor form '" + name + "' (expected standard|paper)");
}

const char* to_string(RotorForm form) {
  return form == RotorForm::standard ? "standard" : "paper_commutator";
}

FieldBivector FieldBivector::from(const SpacetimeModel& model, Multivector B) {
  if (!B.algebra() || !B.algebra()->compatible_with(*model.algebra())) {
    throw ValidationError("FieldBivector: wrong algebra");
  }
  if (!B.is_zero() && !B.is_grade(2)) throw ValidationError("FieldBivector: not a bivector");
  if (!gamma_only(B)) throw ValidationError("FieldBivector: support must be g0..g3 only");
  return FieldBivector{std::move(B)};
}

Multivector lorentz_rhs(const Multivector& R, const FieldBivector& F, RotorForm form) {
  if (!R.is_even()) throw ValidationError("lorentz_rhs: rotor must be even-grade");
  if (!gamma_only(R)) throw ValidationError("lorentz_rhs: rotor must have g0..g3 support");
  if (form == RotorForm::standard) return geometric_product(F.bivector, R) * 0.5;
  return commutator(R, F.bivector);
}

Multivector velocity(const KinematicState& state, const Multivector& u0) {
  return apply_versor(state.rotor, u0);
}

std::vector<KinematicState> integrate_rotor(const SpacetimeModel& model, const Multivector& R0,
                                            const Multivector& u0, const Event& x0,
                                            const FieldBivector& F, double tau_end, int steps,
                                            RotorForm form) {
  if (steps < 1) throw ValidationError("integrate_rotor: steps must be >= 1");
  if (!model.is_pure_spacetime(u0)) {
    throw ValidationError("integrate_rotor: u0 must be a pure spacetime vector");
  }
  const double unorm = model.gamma_square(u0);
  if (std::abs(unorm - 1.0) > 1e-9) {
    throw ValidationError("integrate_rotor: u0 must be unit timelike (u0.u0 = 1)");
  }
  if (!R0.is_even() || !gamma_only(R0)) {
    throw ValidationError("integrate_rotor: R0 must be an even gamma-only rotor");
  }

  const double h = tau_end / steps;
  auto rotor_dot = [&](const Multivector& R) { return lorentz_rhs(R, F, form); };
  auto position_dot = [&](const Multivector& R) { return sandwich(R, u0); };

  std::vector<KinematicState> trajectory;
  trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  Multivector R = R0;
  renormalize_rotor(R);
  Event x = x0;
  trajectory.push_back({0.0, R, x});

  for (int step = 0; step < steps; ++step) {
    const Multivector k1 = rotor_dot(R);
    const Multivector v1 = position_dot(R);
    const Multivector R2 = R + k1 * (0.5 * h);
    const Multivector k2 = rotor_dot(R2);
    const Multivector v2 = position_dot(R2);
    const Multivector R3 = R + k2 * (0.5 * h);
    const Multivector k3 = rotor_dot(R3);
    const Multivector v3 = position_dot(R3);
    const Multivector R4 = R + k3 * h;
    const Multivector k4 = rotor_dot(R4);
    const Multivector v4 = position_dot(R4);

    R += (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (h / 6.0);
    renormalize_rotor(R);
    const Multivector dx = (v1 + 2.0 * v2 + 2.0 * v3 + v4) * (h / 6.0);
    x = add_events(x, event_from_vector(dx));
    trajectory.push_back({(step + 1) * h, R, x});
  }
  return trajectory;
}

KinematicState const_field_exact(const SpacetimeModel& model, const Multivector& u0,
                                 const Event& x0, const FieldBivector& F, double tau) {
  if (!model.is_pure_spacetime(u0)) {
    throw ValidationError("const_field_exact: u0 must be a pure spacetime vector");
  }
  if (std::abs(model.gamma_square(u0) - 1.0) > 1e-9) {
    throw ValidationError("const_field_exact: u0 must be unit timelike");
  }

  const auto& alg = model.algebra();
  const Multivector R = exp_bivector(F.bivector * (0.5 * tau));
  KinematicState state;
  state.tau = tau;
  state.rotor = R;

  if (F.bivector.is_zero()) {
    state.position = add_events(x0, event_from_vector(u0 * tau));
    return state;
  }

  const Multivector square = geometric_product(F.bivector, F.bivector);
  const double s = square.scalar_part();
  const Multivector nonscalar = square - Multivector::scalar(alg, s);
  const double scale = F.bivector.norm();

  Multivector displacement(alg);
  if (nonscalar.norm() <= 1e-12 * scale * scale && std::abs(s) > 1e-12 * scale * scale) {
    // Split u0 into the F-plane part and its complement: the complement is
    // constant, the in-plane part rotates as exp(F tau) u_par, whose
    // integral is F^-1 (exp(F tau) - 1) u_par.
    const Multivector f_inv = F.bivector / s;
    const Multivector u_par = geometric_product(inner_product(u0, F.bivector), f_inv);
    const Multivector u_perp = u0 - u_par;
    const Multivector big = exp_bivector(F.bivector * tau) - Multivector::scalar(alg, 1.0);
    displacement = u_perp * tau + geometric_product(geometric_product(f_inv, big), u_par);
  } else {
    displacement = simpson_integrate(
        alg,
        [&](double t) { return sandwich(exp_bivector(F.bivector * (0.5 * t)), u0); },
        0.0, tau, 1e-10);
  }
  state.position = add_events(x0, event_from_vector(displacement));
  return state;
}

Multivector trajectory_versor(const SpacetimeModel& model, const KinematicState& state,
                              const Event& x0) {
  const Event dx{state.position.t - x0.t, state.position.x - x0.x, state.position.y - x0.y,
                 state.position.z - x0.z};
  const Multivector T = model.st_translator(dx);
  const Multivector V7 = geometric_product(T, state.rotor);
  return model.reduce_to_cga6(V7);
}

}  // namespace stcga::dynamics
