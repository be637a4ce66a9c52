#include "stcga/euclid.hpp"

#include <bit>
#include <cmath>

#include "stcga/errors.hpp"

namespace stcga::euclid {

namespace {

constexpr BladeMask kSpaceBits = 0b00111;
constexpr int kOriginIndex = 3;
constexpr int kInfinityIndex = 4;

bool finite(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace

EuclidModel::EuclidModel() {
  std::vector<std::vector<double>> gram(5, std::vector<double>(5, 0.0));
  gram[0][0] = gram[1][1] = gram[2][2] = 1.0;
  gram[kOriginIndex][kInfinityIndex] = -1.0;
  gram[kInfinityIndex][kOriginIndex] = -1.0;
  alg_ = Algebra::build(5, gram, {"e1", "e2", "e3", "O", "einf"});
}

const EuclidModel& EuclidModel::instance() {
  static const EuclidModel model;
  return model;
}

Multivector EuclidModel::e(int i) const {
  if (i < 1 || i > 3) throw ValidationError("EuclidModel::e: index must be 1..3");
  return Multivector::basis_vector(alg_, i - 1);
}

Multivector EuclidModel::space_vector(const Point& p) const {
  if (!finite(p)) throw ValidationError("space_vector: non-finite coordinates");
  Multivector v(alg_);
  v.set_coeff(0b001, p.x);
  v.set_coeff(0b010, p.y);
  v.set_coeff(0b100, p.z);
  return v;
}

bool EuclidModel::is_pure_space(const Multivector& v) const {
  if (!v.algebra() || !v.algebra()->compatible_with(*alg_)) return false;
  for (const auto& [mask, c] : v.coeffs()) {
    if ((mask & ~kSpaceBits) != 0 || std::popcount(mask) != 1) return false;
  }
  return true;
}

Multivector EuclidModel::embed_point(const Point& p) const {
  if (!finite(p)) throw ValidationError("embed_point: non-finite coordinates");
  const double sq = p.x * p.x + p.y * p.y + p.z * p.z;
  Multivector P = space_vector(p);
  P.set_coeff(BladeMask{1} << kOriginIndex, 1.0);
  if (sq != 0.0) P.set_coeff(BladeMask{1} << kInfinityIndex, 0.5 * sq);
  return P;
}

Point EuclidModel::extract_point(const Multivector& P) const {
  if (!P.algebra() || !P.algebra()->compatible_with(*alg_)) {
    throw ValidationError("extract_point: wrong algebra");
  }
  if (!P.is_grade(1)) throw ValidationError("extract_point: not a vector");
  const double weight = inner_product(P, infinity()).scalar_part();
  if (std::abs(weight) <= 1e-12 * (1.0 + P.norm())) {
    throw DegeneracyError("extract_point: point at infinity (P . einf = 0)");
  }
  const Multivector N = P / (-weight);
  const Point p{N.coeff(0b001), N.coeff(0b010), N.coeff(0b100)};
  const double sq = p.x * p.x + p.y * p.y + p.z * p.z;
  const double null_residual = geometric_product(N, N).scalar_part();
  if (std::abs(null_residual) > 1e-8 * (1.0 + sq * sq)) {
    throw ValidationError("extract_point: vector is not null; not an embedded point");
  }
  return p;
}

double EuclidModel::distance(const Point& p, const Point& q) const {
  const Multivector P = embed_point(p);
  const Multivector Q = embed_point(q);
  const double pq = inner_product(P, Q).scalar_part();
  const double wp = inner_product(P, infinity()).scalar_part();
  const double wq = inner_product(Q, infinity()).scalar_part();
  const double d_sq = -2.0 * pq / (wp * wq);
  return std::sqrt(std::max(0.0, d_sq));
}

Multivector EuclidModel::translator(const Multivector& x) const {
  if (!is_pure_space(x) && !x.is_zero()) {
    throw ValidationError("translator: displacement must be a pure space vector");
  }
  return Multivector::scalar(alg_, 1.0) - geometric_product(x, infinity()) * 0.5;
}

Multivector EuclidModel::tangent_at_origin(const Multivector& v) const {
  if (!is_pure_space(v) && !v.is_zero()) {
    throw ValidationError("tangent_at_origin: direction must be a pure space vector");
  }
  return outer_product(origin(), v);
}

Multivector EuclidModel::flat_point(const Point& p) const {
  return outer_product(embed_point(p), infinity());
}

Multivector EuclidModel::sphere_through_points(const Point& a, const Point& b, const Point& c,
                                               const Point& d) const {
  const Multivector A = embed_point(a);
  const Multivector B = embed_point(b);
  const Multivector C = embed_point(c);
  const Multivector D = embed_point(d);
  const Multivector S = outer_product(outer_product(A, B), outer_product(C, D));
  const double scale = A.norm() * B.norm() * C.norm() * D.norm();
  if (S.norm() < 1e-10 * scale) {
    throw DegeneracyError("sphere_through_points: points are degenerate (no unique sphere)");
  }
  return S;
}

double EuclidModel::dual_sphere_radius_sq(const Multivector& s) const {
  if (!s.is_grade(1)) throw ValidationError("dual_sphere_radius_sq: not a vector");
  const double weight = inner_product(s, infinity()).scalar_part();
  if (std::abs(weight) <= 1e-12 * (1.0 + s.norm())) {
    throw DegeneracyError("dual_sphere_radius_sq: s . einf = 0 (flat object, no radius)");
  }
  const Multivector n = s / (-weight);
  return inner_product(n, n).scalar_part();
}

Multivector EuclidModel::sphere_center_through(const Point& p, const Point& q) const {
  const Multivector P = embed_point(p);
  const Multivector Q = embed_point(q);
  return inner_product(P, outer_product(Q, infinity()));
}

Multivector EuclidModel::dual_sphere(const Point& center, double r_squared) const {
  return embed_point(center) - infinity() * (0.5 * r_squared);
}

DualSphereParams EuclidModel::dual_sphere_params(const Multivector& s) const {
  if (!s.is_grade(1)) throw ValidationError("dual_sphere_params: not a vector");
  const double weight = inner_product(s, infinity()).scalar_part();
  if (std::abs(weight) <= 1e-12 * (1.0 + s.norm())) {
    throw DegeneracyError("dual_sphere_params: s . einf = 0 (flat object)");
  }
  const Multivector n = s / (-weight);
  DualSphereParams out;
  out.center = Point{n.coeff(0b001), n.coeff(0b010), n.coeff(0b100)};
  out.r_squared = inner_product(n, n).scalar_part();
  return out;
}

}  // namespace stcga::euclid
