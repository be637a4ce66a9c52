#include "stcga/multivector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <vector>

#include "stcga/errors.hpp"

namespace stcga {

namespace {

const AlgebraPtr& require_algebra(const Multivector& a, const char* op) {
  if (!a.algebra()) throw ValidationError(std::string(op) + ": multivector has no algebra");
  return a.algebra();
}

const AlgebraPtr& require_same_algebra(const Multivector& a, const Multivector& b,
                                       const char* op) {
  const auto& alg = require_algebra(a, op);
  require_algebra(b, op);
  if (!alg->compatible_with(*b.algebra())) {
    throw ValidationError(std::string(op) + ": operands belong to different algebras");
  }
  return alg;
}

int reverse_sign(int grade) { return ((grade * (grade - 1) / 2) & 1) ? -1 : 1; }

}  // namespace

Multivector Multivector::scalar(AlgebraPtr alg, double value) {
  Multivector mv(std::move(alg));
  if (value != 0.0) mv.coeffs_[0] = value;
  return mv;
}

Multivector Multivector::basis_vector(AlgebraPtr alg, int i) {
  if (!alg) throw ValidationError("basis_vector: null algebra");
  if (i < 0 || i >= alg->dim()) throw ValidationError("basis_vector: generator index out of range");
  Multivector mv(std::move(alg));
  mv.coeffs_[BladeMask{1} << i] = 1.0;
  return mv;
}

Multivector Multivector::blade(AlgebraPtr alg, BladeMask mask, double coeff) {
  if (!alg) throw ValidationError("blade: null algebra");
  if (mask >= alg->blade_count()) throw ValidationError("blade: mask out of range");
  Multivector mv(std::move(alg));
  if (coeff != 0.0) mv.coeffs_[mask] = coeff;
  return mv;
}

Multivector Multivector::vector(AlgebraPtr alg, std::span<const double> components) {
  if (!alg) throw ValidationError("vector: null algebra");
  if (components.size() != static_cast<std::size_t>(alg->dim())) {
    throw ValidationError("vector: component count must equal the dimension");
  }
  Multivector mv(std::move(alg));
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i] != 0.0) mv.coeffs_[BladeMask{1} << i] = components[i];
  }
  return mv;
}

Multivector Multivector::from_dense(AlgebraPtr alg, std::span<const double> dense, bool prune) {
  if (!alg) throw ValidationError("from_dense: null algebra");
  const double eps = prune ? alg->prune_epsilon() : 0.0;
  Multivector mv(std::move(alg));
  for (std::size_t m = 0; m < dense.size(); ++m) {
    const double c = dense[m];
    if (c != 0.0 && std::abs(c) >= eps) mv.coeffs_[static_cast<BladeMask>(m)] = c;
  }
  return mv;
}

double Multivector::coeff(BladeMask mask) const {
  auto it = coeffs_.find(mask);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int Multivector::max_grade() const {
  int g = -1;
  for (const auto& [mask, c] : coeffs_) g = std::max(g, std::popcount(mask));
  return g;
}

bool Multivector::is_grade(int k) const {
  for (const auto& [mask, c] : coeffs_) {
    if (std::popcount(mask) != k) return false;
  }
  return true;
}

bool Multivector::is_even() const {
  for (const auto& [mask, c] : coeffs_) {
    if (std::popcount(mask) & 1) return false;
  }
  return true;
}

double Multivector::norm() const {
  double s = 0.0;
  for (const auto& [mask, c] : coeffs_) s += c * c;
  return std::sqrt(s);
}

Multivector& Multivector::set_coeff(BladeMask mask, double value) {
  if (alg_ && mask >= alg_->blade_count()) throw ValidationError("set_coeff: mask out of range");
  if (value == 0.0) {
    coeffs_.erase(mask);
  } else {
    coeffs_[mask] = value;
  }
  return *this;
}

Multivector& Multivector::prune(double eps) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) < eps) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Multivector& Multivector::operator+=(const Multivector& rhs) {
  if (!alg_) {
    *this = rhs;
    return *this;
  }
  require_same_algebra(*this, rhs, "add");
  for (const auto& [mask, c] : rhs.coeffs_) {
    const double v = (coeffs_[mask] += c);
    if (v == 0.0) coeffs_.erase(mask);
  }
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& rhs) {
  if (!alg_) {
    *this = -Multivector(rhs);
    return *this;
  }
  require_same_algebra(*this, rhs, "subtract");
  for (const auto& [mask, c] : rhs.coeffs_) {
    const double v = (coeffs_[mask] -= c);
    if (v == 0.0) coeffs_.erase(mask);
  }
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  if (s == 0.0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [mask, c] : coeffs_) c *= s;
  return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }

Multivector operator/(Multivector a, double s) {
  if (s == 0.0) throw ValidationError("division of multivector by zero");
  return a *= (1.0 / s);
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  const auto& alg = require_same_algebra(a, b, "geometric_product");
  std::vector<double> acc(alg->blade_count(), 0.0);
  for (const auto& [ma, ca] : a.coeffs()) {
    for (const auto& [mb, cb] : b.coeffs()) {
      alg->accumulate_blade_product(ma, mb, ca * cb, acc.data());
    }
  }
  return Multivector::from_dense(alg, acc, true);
}

Multivector outer_product(const Multivector& a, const Multivector& b) {
  const auto& alg = require_same_algebra(a, b, "outer_product");
  std::vector<double> acc(alg->blade_count(), 0.0);
  for (const auto& [ma, ca] : a.coeffs()) {
    for (const auto& [mb, cb] : b.coeffs()) {
      if (ma & mb) continue;
      acc[ma | mb] += ca * cb * reorder_sign(ma, mb);
    }
  }
  return Multivector::from_dense(alg, acc, true);
}

Multivector inner_product(const Multivector& a, const Multivector& b) {
  const auto& alg = require_same_algebra(a, b, "inner_product");
  const std::size_t n = alg->blade_count();
  std::vector<double> acc(n, 0.0);
  std::vector<double> pair(n, 0.0);
  for (const auto& [ma, ca] : a.coeffs()) {
    const int ga = std::popcount(ma);
    for (const auto& [mb, cb] : b.coeffs()) {
      const int target = std::popcount(mb) - ga;
      if (target < 0) continue;
      std::fill(pair.begin(), pair.end(), 0.0);
      alg->accumulate_blade_product(ma, mb, ca * cb, pair.data());
      for (BladeMask m = 0; m < n; ++m) {
        if (pair[m] != 0.0 && std::popcount(m) == target) acc[m] += pair[m];
      }
    }
  }
  return Multivector::from_dense(alg, acc, true);
}

Multivector reverse(const Multivector& a) {
  Multivector out(a.algebra());
  for (const auto& [mask, c] : a.coeffs()) {
    out.set_coeff(mask, c * reverse_sign(std::popcount(mask)));
  }
  return out;
}

Multivector grade_project(const Multivector& a, int k) {
  const auto& alg = require_algebra(a, "grade_project");
  if (k < 0 || k > alg->dim()) {
    throw ValidationError("grade_project: grade " + std::to_string(k) + " out of range 0.." +
                          std::to_string(alg->dim()));
  }
  Multivector out(alg);
  for (const auto& [mask, c] : a.coeffs()) {
    if (std::popcount(mask) == k) out.set_coeff(mask, c);
  }
  return out;
}

Multivector dual(const Multivector& a, const Multivector& pseudoscalar) {
  require_same_algebra(a, pseudoscalar, "dual");
  const int grade = pseudoscalar.max_grade();
  if (grade < 0 || !pseudoscalar.is_grade(grade)) {
    throw ValidationError("dual: pseudoscalar must be a nonzero blade");
  }
  const Multivector square = geometric_product(pseudoscalar, pseudoscalar);
  const double s = square.scalar_part();
  const Multivector nonscalar = square - Multivector::scalar(a.algebra(), s);
  const double scale = pseudoscalar.norm();
  if (nonscalar.norm() > 1e-10 * scale * scale) {
    throw ValidationError("dual: pseudoscalar square is not a scalar");
  }
  if (std::abs(s) <= 1e-12 * scale * scale) {
    throw DegeneracyError(
        "dual: pseudoscalar squares to zero; its subspace contains a degenerate (radical) "
        "direction and is not invertible");
  }
  return geometric_product(a, pseudoscalar) / s;
}

Multivector meet(const Multivector& a_dual, const Multivector& b_dual) {
  return outer_product(a_dual, b_dual);
}

Multivector exp_bivector(const Multivector& B) {
  const auto& alg = require_algebra(B, "exp_bivector");
  if (B.is_zero()) return Multivector::scalar(alg, 1.0);
  if (!B.is_grade(2)) throw ValidationError("exp_bivector: input is not a bivector");

  const Multivector square = geometric_product(B, B);
  const double s = square.scalar_part();
  const double scale = B.norm();
  const Multivector nonscalar = square - Multivector::scalar(alg, s);

  if (nonscalar.norm() <= 1e-12 * scale * scale) {
    const Multivector one = Multivector::scalar(alg, 1.0);
    if (std::abs(s) <= 1e-14 * scale * scale) return one + B;  // nilpotent
    if (s < 0) {
      const double r = std::sqrt(-s);
      return one * std::cos(r) + B * (std::sin(r) / r);
    }
    const double r = std::sqrt(s);
    return one * std::cosh(r) + B * (std::sinh(r) / r);
  }

  // General bivector: scale down until small, raw series, square back up.
  int halvings = 0;
  Multivector x = B;
  while (x.norm() > 0.5) {
    x *= 0.5;
    ++halvings;
  }
  Multivector sum = Multivector::scalar(alg, 1.0);
  Multivector term = Multivector::scalar(alg, 1.0);
  for (int k = 1; k <= 24; ++k) {
    term = geometric_product(term, x) / static_cast<double>(k);
    sum += term;
    if (term.norm() < 1e-18) break;
  }
  for (int k = 0; k < halvings; ++k) sum = geometric_product(sum, sum);
  return sum;
}

Multivector apply_versor(const Multivector& V, const Multivector& a) {
  const auto& alg = require_same_algebra(V, a, "apply_versor");
  const Multivector vrev = reverse(V);
  const Multivector vv = geometric_product(V, vrev);
  const double s = vv.scalar_part();
  const double scale = V.norm();
  const Multivector nonscalar = vv - Multivector::scalar(alg, s);
  if (nonscalar.norm() > 1e-8 * scale * scale) {
    throw ValidationError("apply_versor: V ~V is not a scalar; V is not a versor");
  }
  if (std::abs(s) <= 1e-12 * scale * scale) {
    throw ValidationError("apply_versor: V ~V vanishes; V is not invertible");
  }
  return geometric_product(geometric_product(V, a), vrev) / s;
}

Multivector commutator(const Multivector& a, const Multivector& b) {
  return (geometric_product(a, b) - geometric_product(b, a)) * 0.5;
}

double projective_distance(const Multivector& a, const Multivector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 && nb == 0.0) return 0.0;
  if (na == 0.0 || nb == 0.0) return 2.0;
  // Least-squares scale of b against a, then relative residual.
  double dot = 0.0;
  for (const auto& [mask, c] : a.coeffs()) dot += c * b.coeff(mask);
  const double s = dot / (nb * nb);
  Multivector diff = a - b * s;
  return diff.norm() / na;
}

bool approx_equal(const Multivector& a, const Multivector& b, double tol) {
  Multivector diff = a - b;
  return diff.norm() <= tol;
}

std::ostream& operator<<(std::ostream& os, const Multivector& a) {
  if (a.is_zero()) return os << "0";
  const auto& names = a.algebra() ? a.algebra()->generator_names() : std::vector<std::string>{};
  bool first = true;
  for (const auto& [mask, c] : a.coeffs()) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (BladeMask rest = mask; rest != 0; rest &= rest - 1) {
      const int i = std::countr_zero(rest);
      os << "*" << (static_cast<std::size_t>(i) < names.size() ? names[i]
                                                              : "e" + std::to_string(i + 1));
    }
  }
  return os;
}

}  // namespace stcga
