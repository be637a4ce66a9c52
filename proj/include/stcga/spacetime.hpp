#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stcga/multivector.hpp"

namespace stcga::spacetime {

struct Event {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Event&) const = default;
};

enum class ShellKind { timelike_shell, dynamical_sphere, lightcone };

const char* to_string(ShellKind kind);

/// Locus of constant squared Minkowski interval r_squared from a center
/// event. Timelike intervals are positive, so r_squared > 0 is a timelike
/// shell, r_squared < 0 a collapsing/re-expanding dynamical sphere, and
/// r_squared = 0 the center's lightcone.
struct Shell {
  Event center;
  double r_squared = 0.0;
  ShellKind kind = ShellKind::lightcone;
};

Shell make_shell(const Event& center, double r_squared);
ShellKind shell_classify(double r_squared);

/// Conformal model of Minkowski spacetime over a 7-dimensional algebra with
/// distinct timelike and spacelike infinities.
///
/// Generators, in index order: g0 (square +1), g1, g2, g3 (square -1),
/// O (origin event, null), winf (the combined infinity, null, O.winf = -1),
/// and w0 (lightlike infinity, orthogonal to everything - the radical
/// direction). The classical pair of infinities is derived:
///   inf_plus  = w0 - winf   (timelike),
///   inf_minus = w0 + winf   (spacelike),
/// giving O.inf_plus = +1, O.inf_minus = -1 and null squares exactly.
/// Generating over {g, O, winf, w0} instead of {g, O, inf+, inf-} makes the
/// decoupling of w0 structural: products of w0-free elements have exactly
/// zero w0 coordinates, and dropping w0 yields the 6-dimensional reduction
/// with signature (2,4).
class SpacetimeModel {
public:
  static const SpacetimeModel& instance();

  const AlgebraPtr& algebra() const { return alg7_; }
  const AlgebraPtr& algebra6() const { return alg6_; }

  Multivector gamma(int mu) const;  // mu in 0..3
  Multivector origin() const { return Multivector::basis_vector(alg7_, 4); }
  Multivector omega_inf() const { return Multivector::basis_vector(alg7_, 5); }
  Multivector omega0() const { return Multivector::basis_vector(alg7_, 6); }
  Multivector infinity_plus() const;   // w0 - winf
  Multivector infinity_minus() const;  // w0 + winf
  /// g0 g1 g2 g3 ^ O ^ winf in the reduced algebra; squares to -1.
  Multivector pseudoscalar6() const;

  /// Matrix of inner products of the role basis (g0..g3, O, inf+, inf-),
  /// the one whose diagonalization exhibits (+,+,-,-,-,-,0).
  std::vector<std::vector<double>> role_basis_gram() const;
  SignatureCounts role_basis_signature() const;

  /// Pure spacetime vector t g0 + x g1 + y g2 + z g3.
  Multivector spacetime_vector(const Event& e) const;
  bool is_pure_spacetime(const Multivector& v) const;
  /// Minkowski square v.v of a pure spacetime vector.
  double gamma_square(const Multivector& v) const;

  /// X = O + v + (v.v)/2 winf; X.X = 0, X.inf+ = +1, X.inf- = -1,
  /// X.winf = -1, X.w0 = 0.
  Multivector embed_event(const Event& e) const;

  /// Projective inverse of embed_event; any w0 component is ignored.
  Event extract_event(const Multivector& X) const;

  /// Squared interval via d^2 = 2 (P.Q) / ((P.inf+)(Q.inf-)), which equals
  /// (dt)^2 - |dx|^2: positive timelike, negative spacelike, zero lightlike.
  double minkowski_sq_interval(const Event& p, const Event& q) const;
  /// Same ratio evaluated directly on embedded (or scaled) event vectors.
  double interval_from_embedded(const Multivector& P, const Multivector& Q) const;

  /// Part of `a` supported on blades containing w0.
  Multivector radical_component(const Multivector& a) const;

  /// Re-expresses a w0-free element in the 6-dimensional algebra over
  /// {g0..g3, O, winf}. Product-preserving. Throws when the radical
  /// component is nonzero beyond tolerance.
  Multivector reduce_to_cga6(const Multivector& a) const;
  /// Inverse inclusion of the reduction.
  Multivector lift_from_cga6(const Multivector& a) const;

  /// IPNS shell vector S = C - r_squared/2 winf, satisfying S.S = r_squared
  /// and X.S = -(d^2(x, center) - r_squared)/2.
  Multivector shell_dual(const Event& center, double r_squared) const;
  Multivector shell_dual(const Shell& shell) const {
    return shell_dual(shell.center, shell.r_squared);
  }

  /// The embedded event itself: its IPNS zero set is the lightcone of p.
  Multivector lightcone_of(const Event& p) const;

  /// Translation versor 1 - x winf / 2 for a pure spacetime displacement;
  /// sandwiching maps embed_event(e) to embed_event(e + x) and leaves winf
  /// invariant.
  Multivector st_translator(const Multivector& pure_spacetime_x) const;
  Multivector st_translator(const Event& x) const { return st_translator(spacetime_vector(x)); }

  /// Nilpotent versor 1 + x w0 / 2. Sandwiching an event changes only its
  /// radical component (it adds -(x.v) w0).
  Multivector omega0_versor(const Multivector& pure_spacetime_x) const;

  /// IPNS 2-blade P ^ S of the observer's lightcone with a shell. Throws
  /// DegeneracyError when the two IPNS vectors are linearly dependent.
  Multivector observe_intersection(const Event& observer, const Shell& shell) const;

  /// Deterministic sample of events on lightcone(observer) meet shell:
  /// X = observer + s (1, w) with w uniform on S^2 and s solved from the
  /// shell constraint (linear, because the offset is null).
  std::vector<Event> sample_cone_shell_intersection(const Event& observer, const Shell& shell,
                                                    int count, std::uint64_t seed) const;

private:
  SpacetimeModel();
  AlgebraPtr alg7_;
  AlgebraPtr alg6_;
};

struct InfinityLimitRow {
  double delta = 0.0;
  double d2_event_inf_plus = 0.0;
  double d2_event_inf_minus = 0.0;
  double d2_between_infinities = 0.0;
};

struct InfinityLimitReport {
  std::vector<InfinityLimitRow> rows;
  double order_plus = 0.0;   // d^2(P, inf+) ~ +2/delta  -> order 1
  double order_minus = 0.0;  // d^2(P, inf-) ~ -2/delta^2 -> order 2
  int sign_plus = 0;
  int sign_minus = 0;
  int sign_between = 0;  // recorded, not asserted
  bool confirms_limits = false;
};

/// Rebuilds the 7D Gram with regularized infinities
///   inf+ . inf+ = -delta^2,  inf- . inf- = +delta^2,  inf+ . inf- = +delta,
/// evaluates the interval ratio for (P, inf+), (P, inf-) and
/// (inf+, inf-), and reports signs and divergence orders as delta -> 0.
/// The sign assignment is the one for which d^2(P, inf+) -> +infinity and
/// d^2(P, inf-) -> -infinity under the model's interval convention.
/// Deltas must be strictly decreasing positives.
InfinityLimitReport infinity_limit_diagnostics(std::span<const double> deltas);

}  // namespace stcga::spacetime
