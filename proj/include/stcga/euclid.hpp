#pragma once

#include <array>

#include "stcga/multivector.hpp"

namespace stcga::euclid {

struct Point {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Point&) const = default;
};

struct DualSphereParams {
  Point center;
  double r_squared = 0.0;
};

/// Conformal model of Euclidean 3-space over a 5-dimensional algebra.
///
/// Generators, in index order: e1, e2, e3 (square +1), O (origin, null),
/// einf (infinity, null), with O . einf = -1. Gram signature is
/// (+,+,+,+,-). Points embed as null vectors P with P . einf = -1.
class EuclidModel {
public:
  static const EuclidModel& instance();

  const AlgebraPtr& algebra() const { return alg_; }

  Multivector e(int i) const;  // i in 1..3
  Multivector origin() const { return Multivector::basis_vector(alg_, 3); }
  Multivector infinity() const { return Multivector::basis_vector(alg_, 4); }
  Multivector pseudoscalar() const { return Multivector::blade(alg_, 0b11111); }

  /// Builds the pure-space vector x e1 + y e2 + z e3.
  Multivector space_vector(const Point& p) const;
  bool is_pure_space(const Multivector& v) const;

  /// P = O + p + |p|^2/2 einf; null and normalized to P . einf = -1.
  Multivector embed_point(const Point& p) const;

  /// Projective inverse of embed_point. Throws DegeneracyError for
  /// directions at infinity (P . einf = 0) and ValidationError for vectors
  /// that are not null within tolerance.
  Point extract_point(const Multivector& P) const;

  /// Euclidean distance via -d^2/2 = (P.Q) / ((P.einf)(Q.einf)).
  double distance(const Point& p, const Point& q) const;

  /// T(x) = 1 - x einf / 2; sandwiching embeds translated points.
  Multivector translator(const Multivector& pure_space_x) const;
  Multivector translator(const Point& x) const { return translator(space_vector(x)); }

  /// Tangent vector at the origin: O ^ v.
  Multivector tangent_at_origin(const Multivector& pure_space_v) const;

  /// P ^ einf.
  Multivector flat_point(const Point& p) const;

  /// Direct (OPNS) circumsphere blade A ^ B ^ C ^ D. Throws DegeneracyError
  /// when the four points do not span a sphere.
  Multivector sphere_through_points(const Point& a, const Point& b, const Point& c,
                                    const Point& d) const;

  /// Signed squared radius s.s of an IPNS sphere vector, after rescaling to
  /// s . einf = -1. Negative values are the model's imaginary spheres.
  double dual_sphere_radius_sq(const Multivector& s) const;

  /// Dual sphere around q through p: P . (Q ^ einf).
  Multivector sphere_center_through(const Point& p, const Point& q) const;

  /// IPNS sphere with given center and signed squared radius:
  /// C - r_squared/2 einf.
  Multivector dual_sphere(const Point& center, double r_squared) const;

  /// Center and signed squared radius of an IPNS sphere vector.
  DualSphereParams dual_sphere_params(const Multivector& s) const;

private:
  EuclidModel();
  AlgebraPtr alg_;
};

}  // namespace stcga::euclid
