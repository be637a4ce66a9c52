#include "stcga/spacetime.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "stcga/errors.hpp"

namespace stcga::spacetime {

namespace {

constexpr BladeMask kGammaBits = 0b0001111;
constexpr int kOriginIndex = 4;
constexpr int kOmegaInfIndex = 5;
constexpr int kOmega0Index = 6;
constexpr BladeMask kOmega0Bit = BladeMask{1} << kOmega0Index;

bool finite(const Event& e) {
  return std::isfinite(e.t) && std::isfinite(e.x) && std::isfinite(e.y) && std::isfinite(e.z);
}

// eta(mu,mu): +1 for g0, -1 for g1..g3.
double metric_sign(int mu) { return mu == 0 ? 1.0 : -1.0; }

}  // namespace

const char* to_string(ShellKind kind) {
  switch (kind) {
    case ShellKind::timelike_shell: return "timelike_shell";
    case ShellKind::dynamical_sphere: return "dynamical_sphere";
    case ShellKind::lightcone: return "lightcone";
  }
  return "?";
}

ShellKind shell_classify(double r_squared) {
  if (r_squared > 0.0) return ShellKind::timelike_shell;
  if (r_squared < 0.0) return ShellKind::dynamical_sphere;
  return ShellKind::lightcone;
}

Shell make_shell(const Event& center, double r_squared) {
  if (!finite(center) || !std::isfinite(r_squared)) {
    throw ValidationError("make_shell: non-finite parameters");
  }
  return Shell{center, r_squared, shell_classify(r_squared)};
}

SpacetimeModel::SpacetimeModel() {
  std::vector<std::vector<double>> gram7(7, std::vector<double>(7, 0.0));
  gram7[0][0] = 1.0;
  gram7[1][1] = gram7[2][2] = gram7[3][3] = -1.0;
  gram7[kOriginIndex][kOmegaInfIndex] = -1.0;
  gram7[kOmegaInfIndex][kOriginIndex] = -1.0;
  // w0 row and column stay zero: the radical direction.
  alg7_ = Algebra::build(7, gram7, {"g0", "g1", "g2", "g3", "O", "winf", "w0"});

  std::vector<std::vector<double>> gram6(6, std::vector<double>(6, 0.0));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) gram6[i][j] = gram7[i][j];
  alg6_ = Algebra::build(6, gram6, {"g0", "g1", "g2", "g3", "O", "winf"});
}

const SpacetimeModel& SpacetimeModel::instance() {
  static const SpacetimeModel model;
  return model;
}

Multivector SpacetimeModel::gamma(int mu) const {
  if (mu < 0 || mu > 3) throw ValidationError("gamma: index must be 0..3");
  return Multivector::basis_vector(alg7_, mu);
}

Multivector SpacetimeModel::infinity_plus() const { return omega0() - omega_inf(); }

Multivector SpacetimeModel::infinity_minus() const { return omega0() + omega_inf(); }

Multivector SpacetimeModel::pseudoscalar6() const {
  return Multivector::blade(alg6_, 0b111111);
}

std::vector<std::vector<double>> SpacetimeModel::role_basis_gram() const {
  std::vector<Multivector> basis;
  for (int mu = 0; mu < 4; ++mu) basis.push_back(gamma(mu));
  basis.push_back(origin());
  basis.push_back(infinity_plus());
  basis.push_back(infinity_minus());
  std::vector<std::vector<double>> g(7, std::vector<double>(7, 0.0));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) g[i][j] = inner_product(basis[i], basis[j]).scalar_part();
  return g;
}

SignatureCounts SpacetimeModel::role_basis_signature() const {
  return Algebra::build(7, role_basis_gram())->signature();
}

Multivector SpacetimeModel::spacetime_vector(const Event& e) const {
  if (!finite(e)) throw ValidationError("spacetime_vector: non-finite coordinates");
  Multivector v(alg7_);
  v.set_coeff(0b0001, e.t);
  v.set_coeff(0b0010, e.x);
  v.set_coeff(0b0100, e.y);
  v.set_coeff(0b1000, e.z);
  return v;
}

bool SpacetimeModel::is_pure_spacetime(const Multivector& v) const {
  if (!v.algebra() || !v.algebra()->compatible_with(*alg7_)) return false;
  for (const auto& [mask, c] : v.coeffs()) {
    if ((mask & ~kGammaBits) != 0 || std::popcount(mask) != 1) return false;
  }
  return true;
}

double SpacetimeModel::gamma_square(const Multivector& v) const {
  double s = 0.0;
  for (int mu = 0; mu < 4; ++mu) {
    const double c = v.coeff(BladeMask{1} << mu);
    s += metric_sign(mu) * c * c;
  }
  return s;
}

Multivector SpacetimeModel::embed_event(const Event& e) const {
  if (!finite(e)) throw ValidationError("embed_event: non-finite coordinates");
  Multivector X = spacetime_vector(e);
  X.set_coeff(BladeMask{1} << kOriginIndex, 1.0);
  const double sq = gamma_square(X);
  if (sq != 0.0) X.set_coeff(BladeMask{1} << kOmegaInfIndex, 0.5 * sq);
  return X;
}

Event SpacetimeModel::extract_event(const Multivector& X) const {
  if (!X.algebra() || !X.algebra()->compatible_with(*alg7_)) {
    throw ValidationError("extract_event: wrong algebra");
  }
  if (!X.is_grade(1)) throw ValidationError("extract_event: not a vector");
  const double weight = inner_product(X, omega_inf()).scalar_part();
  if (std::abs(weight) <= 1e-12 * (1.0 + X.norm())) {
    throw DegeneracyError("extract_event: object at infinity (X . winf = 0)");
  }
  Multivector N = X / (-weight);
  N.set_coeff(kOmega0Bit, 0.0);  // radical part carries no event information
  const Event e{N.coeff(0b0001), N.coeff(0b0010), N.coeff(0b0100), N.coeff(0b1000)};
  const double sq = e.t * e.t + e.x * e.x + e.y * e.y + e.z * e.z;
  const double null_residual = geometric_product(N, N).scalar_part();
  if (std::abs(null_residual) > 1e-7 * (1.0 + sq * sq)) {
    throw ValidationError("extract_event: vector is not null; not an embedded event");
  }
  return e;
}

double SpacetimeModel::interval_from_embedded(const Multivector& P, const Multivector& Q) const {
  const double pq = inner_product(P, Q).scalar_part();
  const double wp = inner_product(P, infinity_plus()).scalar_part();
  const double wq = inner_product(Q, infinity_minus()).scalar_part();
  if (wp == 0.0 || wq == 0.0) {
    throw DegeneracyError("interval: operand at infinity (vanishing normalization)");
  }
  return 2.0 * pq / (wp * wq);
}

double SpacetimeModel::minkowski_sq_interval(const Event& p, const Event& q) const {
  return interval_from_embedded(embed_event(p), embed_event(q));
}

Multivector SpacetimeModel::radical_component(const Multivector& a) const {
  Multivector out(alg7_);
  for (const auto& [mask, c] : a.coeffs()) {
    if (mask & kOmega0Bit) out.set_coeff(mask, c);
  }
  return out;
}

Multivector SpacetimeModel::reduce_to_cga6(const Multivector& a) const {
  const double radical = radical_component(a).norm();
  if (radical > 1e-12 * (1.0 + a.norm())) {
    throw ValidationError("reduce_to_cga6: nonzero radical (w0) component");
  }
  Multivector out(alg6_);
  for (const auto& [mask, c] : a.coeffs()) {
    if ((mask & kOmega0Bit) == 0) out.set_coeff(mask, c);
  }
  return out;
}

Multivector SpacetimeModel::lift_from_cga6(const Multivector& a) const {
  if (!a.algebra() || !a.algebra()->compatible_with(*alg6_)) {
    throw ValidationError("lift_from_cga6: operand is not a reduced-model element");
  }
  Multivector out(alg7_);
  for (const auto& [mask, c] : a.coeffs()) out.set_coeff(mask, c);
  return out;
}

Multivector SpacetimeModel::shell_dual(const Event& center, double r_squared) const {
  if (!std::isfinite(r_squared)) throw ValidationError("shell_dual: non-finite radius");
  return embed_event(center) - omega_inf() * (0.5 * r_squared);
}

Multivector SpacetimeModel::lightcone_of(const Event& p) const { return embed_event(p); }

Multivector SpacetimeModel::st_translator(const Multivector& x) const {
  if (!is_pure_spacetime(x) && !x.is_zero()) {
    throw ValidationError("st_translator: displacement must be a pure spacetime vector");
  }
  // exp(-x winf / 2); the exponent is nilpotent, so the series terminates.
  return Multivector::scalar(alg7_, 1.0) - geometric_product(x, omega_inf()) * 0.5;
}

Multivector SpacetimeModel::omega0_versor(const Multivector& x) const {
  if (!is_pure_spacetime(x) && !x.is_zero()) {
    throw ValidationError("omega0_versor: argument must be a pure spacetime vector");
  }
  return Multivector::scalar(alg7_, 1.0) + geometric_product(x, omega0()) * 0.5;
}

Multivector SpacetimeModel::observe_intersection(const Event& observer, const Shell& shell) const {
  const Multivector P = embed_event(observer);
  const Multivector S = shell_dual(shell);
  const Multivector H = outer_product(P, S);
  if (H.norm() < 1e-10 * P.norm() * S.norm()) {
    throw DegeneracyError(
        "observe_intersection: observer vector and shell vector are linearly dependent");
  }
  return H;
}

std::vector<Event> SpacetimeModel::sample_cone_shell_intersection(const Event& observer,
                                                                  const Shell& shell, int count,
                                                                  std::uint64_t seed) const {
  if (count < 0) throw ValidationError("sample_cone_shell_intersection: negative count");
  observe_intersection(observer, shell);  // reject degenerate configurations up front

  const double base = minkowski_sq_interval(observer, shell.center);
  const Event delta{observer.t - shell.center.t, observer.x - shell.center.x,
                    observer.y - shell.center.y, observer.z - shell.center.z};
  if (delta.t == 0.0 && delta.x == 0.0 && delta.y == 0.0 && delta.z == 0.0) {
    throw DegeneracyError(
        "sample_cone_shell_intersection: observer coincides with the shell center; the cone "
        "does not meet the shell");
  }

  std::mt19937_64 rng(seed);
  // Explicit uniform sphere sampling; std::uniform_real_distribution output
  // is pinned by the standard, unlike normal_distribution.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Event> out;
  out.reserve(static_cast<std::size_t>(count));
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 100 * (count + 1)) {
      throw DegeneracyError(
          "sample_cone_shell_intersection: could not find transversal null directions");
    }
    const double cos_theta = 1.0 - 2.0 * unit(rng);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = 2.0 * M_PI * unit(rng);
    const double wx = sin_theta * std::cos(phi);
    const double wy = sin_theta * std::sin(phi);
    const double wz = cos_theta;
    // X = observer + s (1, w) stays on the observer's cone for every s; the
    // shell constraint is linear in s because the offset is null:
    //   d^2(X, c) = d^2(p, c) + 2 s (dt - dx . w) = r^2.
    const double denom = 2.0 * (delta.t - delta.x * wx - delta.y * wy - delta.z * wz);
    if (std::abs(denom) < 1e-9) continue;
    const double s = (shell.r_squared - base) / denom;
    out.push_back(Event{observer.t + s, observer.x + s * wx, observer.y + s * wy,
                        observer.z + s * wz});
  }
  return out;
}

InfinityLimitReport infinity_limit_diagnostics(std::span<const double> deltas) {
  if (deltas.empty()) throw ValidationError("infinity_limit_diagnostics: empty delta sequence");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] > 0.0)) {
      throw ValidationError("infinity_limit_diagnostics: deltas must be positive");
    }
    if (i > 0 && !(deltas[i] < deltas[i - 1])) {
      throw ValidationError("infinity_limit_diagnostics: deltas must be strictly decreasing");
    }
  }

  // A fixed probe event; any finite event gives the same limit behavior.
  const Event probe{0.4, 0.3, -0.2, 0.1};

  InfinityLimitReport report;
  for (const double delta : deltas) {
    // Regularized model over generators {g0..g3, O, inf+, inf-}. The exact
    // model's zero entries inf+.inf+, inf-.inf-, inf+.inf- are displaced to
    // -delta^2, +delta^2, +delta; pruning is disabled so that entries far
    // below the default epsilon survive.
    std::vector<std::vector<double>> gram(7, std::vector<double>(7, 0.0));
    gram[0][0] = 1.0;
    gram[1][1] = gram[2][2] = gram[3][3] = -1.0;
    gram[4][5] = gram[5][4] = 1.0;   // O . inf+
    gram[4][6] = gram[6][4] = -1.0;  // O . inf-
    gram[5][5] = -delta * delta;
    gram[6][6] = delta * delta;
    gram[5][6] = gram[6][5] = delta;
    auto alg = Algebra::build(7, gram, {"g0", "g1", "g2", "g3", "O", "infp", "infm"}, 0.0);

    const Multivector inf_plus = Multivector::basis_vector(alg, 5);
    const Multivector inf_minus = Multivector::basis_vector(alg, 6);
    const Multivector winf = (inf_minus - inf_plus) * 0.5;

    Multivector v(alg);
    v.set_coeff(0b0001, probe.t);
    v.set_coeff(0b0010, probe.x);
    v.set_coeff(0b0100, probe.y);
    v.set_coeff(0b1000, probe.z);
    const double vv = probe.t * probe.t - probe.x * probe.x - probe.y * probe.y - probe.z * probe.z;
    const Multivector P = Multivector::basis_vector(alg, 4) + v + winf * (0.5 * vv);

    auto ratio = [&](const Multivector& a, const Multivector& b) {
      const double num = inner_product(a, b).scalar_part();
      const double na = inner_product(a, inf_plus).scalar_part();
      const double nb = inner_product(b, inf_minus).scalar_part();
      return 2.0 * num / (na * nb);
    };

    InfinityLimitRow row;
    row.delta = delta;
    row.d2_event_inf_plus = ratio(P, inf_plus);
    row.d2_event_inf_minus = ratio(P, inf_minus);
    row.d2_between_infinities = ratio(inf_plus, inf_minus);
    report.rows.push_back(row);
  }

  auto fit_order = [](const std::vector<InfinityLimitRow>& rows, auto value) {
    // Least-squares slope of log|d^2| against log(1/delta).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& row : rows) {
      const double lx = std::log(1.0 / row.delta);
      const double ly = std::log(std::abs(value(row)));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
  };

  report.order_plus = fit_order(report.rows, [](const InfinityLimitRow& r) {
    return r.d2_event_inf_plus;
  });
  report.order_minus = fit_order(report.rows, [](const InfinityLimitRow& r) {
    return r.d2_event_inf_minus;
  });

  auto stable_sign = [](const std::vector<InfinityLimitRow>& rows, auto value) {
    int sign = value(rows.front()) > 0 ? 1 : -1;
    for (const auto& row : rows) {
      if ((value(row) > 0 ? 1 : -1) != sign) return 0;
    }
    return sign;
  };
  report.sign_plus = stable_sign(report.rows, [](const InfinityLimitRow& r) {
    return r.d2_event_inf_plus;
  });
  report.sign_minus = stable_sign(report.rows, [](const InfinityLimitRow& r) {
    return r.d2_event_inf_minus;
  });
  report.sign_between = stable_sign(report.rows, [](const InfinityLimitRow& r) {
    return r.d2_between_infinities;
  });

  report.confirms_limits = report.sign_plus == 1 && report.sign_minus == -1 &&
                           std::abs(report.order_plus - 1.0) < 0.15 &&
                           std::abs(report.order_minus - 2.0) < 0.15;
  return report;
}

}  // namespace stcga::spacetime
