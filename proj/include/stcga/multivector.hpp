#pragma once

#include <initializer_list>
#include <iosfwd>
#include <map>
#include <span>

#include "stcga/algebra.hpp"

namespace stcga {

/// Sparse multivector: map from canonical basis-blade masks to coefficients,
/// tied to one Algebra. Absent mask = zero coefficient. Values are immutable
/// in spirit; all operations return fresh multivectors.
class Multivector {
public:
  Multivector() = default;  // detached zero, usable only as a placeholder
  explicit Multivector(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static Multivector scalar(AlgebraPtr alg, double value);
  static Multivector basis_vector(AlgebraPtr alg, int i);
  static Multivector blade(AlgebraPtr alg, BladeMask mask, double coeff = 1.0);
  static Multivector vector(AlgebraPtr alg, std::span<const double> components);
  static Multivector from_dense(AlgebraPtr alg, std::span<const double> dense, bool prune);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<BladeMask, double>& coeffs() const { return coeffs_; }
  double coeff(BladeMask mask) const;
  double scalar_part() const { return coeff(0); }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero multivector.
  int max_grade() const;
  bool is_grade(int k) const;
  bool is_even() const;

  /// Coefficient 2-norm (no metric involved).
  double norm() const;

  Multivector& set_coeff(BladeMask mask, double value);
  Multivector& prune(double eps);

  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);

private:
  AlgebraPtr alg_;
  std::map<BladeMask, double> coeffs_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);
Multivector operator/(Multivector a, double s);

/// The bilinear associative geometric product.
Multivector geometric_product(const Multivector& a, const Multivector& b);
inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

/// Grade-raising antisymmetric part; u ^ v = (uv - vu)/2 for vectors.
Multivector outer_product(const Multivector& a, const Multivector& b);
inline Multivector operator^(const Multivector& a, const Multivector& b) {
  return outer_product(a, b);
}

/// Left contraction a -| b: sum over grades of <a_r b_s>_{s-r}. For vectors
/// this is the symmetric scalar part (uv + vu)/2; for a vector against a
/// grade-k blade it is the grade-(k-1) part of the geometric product.
Multivector inner_product(const Multivector& a, const Multivector& b);

/// Reversion: grade-k parts pick up (-1)^(k(k-1)/2).
Multivector reverse(const Multivector& a);

Multivector grade_project(const Multivector& a, int k);

/// a * I^-1 for an invertible blade I (geometric square a nonzero scalar).
/// Throws DegeneracyError when I contains a degenerate direction.
Multivector dual(const Multivector& a, const Multivector& pseudoscalar);

/// Intersection of dual (IPNS) representations: (A meet B)^D = A^D ^ B^D.
Multivector meet(const Multivector& a_dual, const Multivector& b_dual);

/// exp of a bivector. Closed form when B*B is scalar (trig / hyperbolic /
/// nilpotent); scaled-and-squared power series otherwise.
Multivector exp_bivector(const Multivector& B);

/// V a ~V normalized by the scalar V ~V.
Multivector apply_versor(const Multivector& V, const Multivector& a);

/// (ab - ba)/2.
Multivector commutator(const Multivector& a, const Multivector& b);

/// Scale-invariant distance: min over s of |a - s b| / |a|. Returns 0 for
/// two zero multivectors, 2 when exactly one side is zero.
double projective_distance(const Multivector& a, const Multivector& b);

bool approx_equal(const Multivector& a, const Multivector& b, double tol);

std::ostream& operator<<(std::ostream& os, const Multivector& a);

}  // namespace stcga
