#pragma once

#include <string>
#include <vector>

#include "stcga/spacetime.hpp"

namespace stcga::dynamics {

enum class RotorForm { standard, paper_commutator };

RotorForm parse_rotor_form(const std::string& name);
const char* to_string(RotorForm form);

/// Electromagnetic field bivector over g0..g3 only, in units that absorb
/// the charge-to-mass ratio.
struct FieldBivector {
  Multivector bivector;

  /// Validates grade 2 and pure spacetime support.
  static FieldBivector from(const spacetime::SpacetimeModel& model, Multivector B);
};

struct KinematicState {
  double tau = 0.0;
  Multivector rotor;  // even, R ~R = 1 up to renormalization drift
  spacetime::Event position;
};

/// Right-hand side of the rotor equation of motion:
///   standard:          dR/dtau = F R / 2
///   paper_commutator:  dR/dtau = (R F - F R) / 2
/// The commutator form freezes at R = 1 (the bracket with a scalar
/// vanishes); it is kept for side-by-side comparison.
Multivector lorentz_rhs(const Multivector& R, const FieldBivector& F, RotorForm form);

/// Proper velocity u = R u0 ~R of a state.
Multivector velocity(const KinematicState& state, const Multivector& u0);

/// Classic fourth-order integration of the chosen rotor equation together
/// with the position, with per-step rotor renormalization. u0 must be unit
/// timelike (u0.u0 = +1). Returns steps+1 states including tau = 0.
std::vector<KinematicState> integrate_rotor(const spacetime::SpacetimeModel& model,
                                            const Multivector& R0, const Multivector& u0,
                                            const spacetime::Event& x0, const FieldBivector& F,
                                            double tau_end, int steps, RotorForm form);

/// Constant-field solution R(tau) = exp(F tau / 2). Position in closed form
/// when F has a scalar geometric square (hyperbolic or trigonometric
/// in-plane motion); adaptive Simpson quadrature at 1e-10 otherwise.
KinematicState const_field_exact(const spacetime::SpacetimeModel& model, const Multivector& u0,
                                 const spacetime::Event& x0, const FieldBivector& F, double tau);

/// Combined conformal versor V = T(x(tau) - x0) R(tau) in the reduced
/// 6-dimensional algebra. Sandwiching the embedded start event reproduces
/// the embedded trajectory event, and sandwiching the start tangent O ^ u0
/// reproduces the moving tangent.
Multivector trajectory_versor(const spacetime::SpacetimeModel& model, const KinematicState& state,
                              const spacetime::Event& x0);

}  // namespace stcga::dynamics
