#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle_word_algebra.hpp"
#include "stcga/errors.hpp"
#include "stcga/euclid.hpp"
#include "stcga/multivector.hpp"
#include "stcga/spacetime.hpp"
#include "test_util.hpp"

using namespace stcga;
using testutil::random_bivector;
using testutil::random_multivector;
using testutil::random_vector;
using testutil::urand;

namespace {

AlgebraPtr euclid_alg() { return euclid::EuclidModel::instance().algebra(); }
AlgebraPtr spacetime_alg() { return spacetime::SpacetimeModel::instance().algebra(); }

// The 7D Gram in the role basis {g0..g3, O, inf+, inf-}, as an independent
// algebra instance.
AlgebraPtr infinity_basis_alg() {
  std::vector<std::vector<double>> g(7, std::vector<double>(7, 0.0));
  g[0][0] = 1.0;
  g[1][1] = g[2][2] = g[3][3] = -1.0;
  g[4][5] = g[5][4] = 1.0;   // O . inf+
  g[4][6] = g[6][4] = -1.0;  // O . inf-
  return Algebra::build(7, g, {"g0", "g1", "g2", "g3", "O", "infp", "infm"});
}

void check_table_against_word_oracle(const AlgebraPtr& alg, double tol) {
  oracle::WordAlgebra oracle_alg(alg->gram_matrix());
  const std::size_t n = alg->blade_count();
  for (BladeMask a = 0; a < n; ++a) {
    for (BladeMask b = 0; b < n; ++b) {
      const oracle::WordCombo expected = oracle_alg.blade_product(a, b);
      oracle::WordCombo actual;
      for (const auto& term : alg->blade_product(a, b)) {
        for (const auto& [word, c] : oracle_alg.wedge_blade(term.mask)) {
          actual[word] += term.coeff * c;
        }
      }
      for (auto it = actual.begin(); it != actual.end();) {
        it = it->second == 0.0 ? actual.erase(it) : std::next(it);
      }
      const double err = oracle::WordAlgebra::distance(expected, actual);
      CAPTURE(a);
      CAPTURE(b);
      REQUIRE(err < tol);
    }
  }
}

void check_full_associativity(const AlgebraPtr& alg, double tol) {
  const std::size_t n = alg->blade_count();
  std::vector<double> left(n), right(n);
  for (BladeMask b = 0; b < n; ++b) {
    std::vector<std::vector<ProductTerm>> row_ab(n), row_bc(n);
    for (BladeMask m = 0; m < n; ++m) {
      row_ab[m] = alg->blade_product(m, b);
      row_bc[m] = alg->blade_product(b, m);
    }
    for (BladeMask a = 0; a < n; ++a) {
      for (BladeMask c = 0; c < n; ++c) {
        std::fill(left.begin(), left.end(), 0.0);
        std::fill(right.begin(), right.end(), 0.0);
        for (const auto& t : row_ab[a]) {
          alg->accumulate_blade_product(t.mask, c, t.coeff, left.data());
        }
        for (const auto& t : row_bc[c]) {
          alg->accumulate_blade_product(a, t.mask, t.coeff, right.data());
        }
        for (BladeMask m = 0; m < n; ++m) {
          if (std::abs(left[m] - right[m]) > tol) {
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(c);
            REQUIRE(std::abs(left[m] - right[m]) <= tol);
          }
        }
      }
    }
  }
}

void check_contraction_rule(const AlgebraPtr& alg, double tol) {
  for (int i = 0; i < alg->dim(); ++i) {
    for (int j = 0; j < alg->dim(); ++j) {
      const Multivector ei = Multivector::basis_vector(alg, i);
      const Multivector ej = Multivector::basis_vector(alg, j);
      const Multivector anticomm = ei * ej + ej * ei;
      const Multivector expected = Multivector::scalar(alg, 2.0 * alg->gram(i, j));
      CHECK(approx_equal(anticomm, expected, tol));
    }
  }
}

}  // namespace

TEST_CASE("build_algebra validates inputs") {
  CHECK_THROWS_AS(Algebra::build(0, {}), ValidationError);
  CHECK_THROWS_AS(Algebra::build(17, std::vector<std::vector<double>>(17)), ValidationError);
  CHECK_THROWS_AS(Algebra::build(2, {{1.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(Algebra::build(2, {{1.0, 0.5}, {0.4, 1.0}}), ValidationError);
  // Degenerate rows are fine.
  auto alg = Algebra::build(2, {{1.0, 0.0}, {0.0, 0.0}});
  CHECK(alg->signature() == SignatureCounts{1, 0, 1});
}

TEST_CASE("single euclidean generator squares to one") {
  auto alg = Algebra::build(1, {{1.0}});
  const Multivector e1 = Multivector::basis_vector(alg, 0);
  CHECK(approx_equal(e1 * e1, Multivector::scalar(alg, 1.0), 0.0));
}

TEST_CASE("null pair contracts to two") {
  auto alg = Algebra::build(2, {{0.0, 1.0}, {1.0, 0.0}});
  const Multivector e1 = Multivector::basis_vector(alg, 0);
  const Multivector e2 = Multivector::basis_vector(alg, 1);
  CHECK(approx_equal(e1 * e2 + e2 * e1, Multivector::scalar(alg, 2.0), 0.0));
  // e1 e2 = 1 + e1 ^ e2.
  Multivector expected = Multivector::scalar(alg, 1.0);
  expected.set_coeff(0b11, 1.0);
  CHECK(approx_equal(e1 * e2, expected, 0.0));
}

TEST_CASE("spacetime gram in the infinity basis has spectrum (2, 4, 1)") {
  CHECK(infinity_basis_alg()->signature() == SignatureCounts{2, 4, 1});
}

TEST_CASE("contraction rule holds for every generator pair") {
  check_contraction_rule(euclid_alg(), 0.0);
  check_contraction_rule(spacetime_alg(), 0.0);
  check_contraction_rule(infinity_basis_alg(), 0.0);
  std::mt19937_64 rng(7);
  check_contraction_rule(Algebra::build(4, testutil::random_symmetric_gram(4, rng)), 1e-12);
}

TEST_CASE("blade product tables match the word-rewriting oracle") {
  check_table_against_word_oracle(euclid_alg(), 1e-12);
  check_table_against_word_oracle(spacetime_alg(), 1e-12);
  check_table_against_word_oracle(infinity_basis_alg(), 1e-12);
  std::mt19937_64 rng(11);
  check_table_against_word_oracle(Algebra::build(4, testutil::random_symmetric_gram(4, rng)),
                                  1e-10);
  auto degenerate = testutil::random_symmetric_gram(4, rng);
  for (int j = 0; j < 4; ++j) degenerate[2][j] = degenerate[j][2] = 0.0;
  check_table_against_word_oracle(Algebra::build(4, degenerate), 1e-10);
}

TEST_CASE("basis blade products associate") {
  check_full_associativity(euclid_alg(), 1e-12);
  check_full_associativity(spacetime_alg(), 1e-12);
  std::mt19937_64 rng(13);
  check_full_associativity(Algebra::build(4, testutil::random_symmetric_gram(4, rng)), 1e-10);
}

TEST_CASE("random multivector products associate") {
  std::mt19937_64 rng(17);
  for (const auto& alg : {euclid_alg(), spacetime_alg(), infinity_basis_alg()}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Multivector a = random_multivector(alg, rng);
      const Multivector b = random_multivector(alg, rng);
      const Multivector c = random_multivector(alg, rng);
      const Multivector left = (a * b) * c;
      const Multivector right = a * (b * c);
      const double scale = std::max(1.0, left.norm());
      CHECK((left - right).norm() <= 1e-10 * scale);
    }
  }
}

TEST_CASE("geometric product spec cases") {
  const auto& em = euclid::EuclidModel::instance();
  CHECK(approx_equal(em.e(1) * em.e(1), Multivector::scalar(em.algebra(), 1.0), 0.0));
  CHECK(approx_equal(em.e(1) * em.e(2), outer_product(em.e(1), em.e(2)), 0.0));

  auto alg = infinity_basis_alg();
  const Multivector O = Multivector::basis_vector(alg, 4);
  const Multivector inf_plus = Multivector::basis_vector(alg, 5);
  Multivector expected = Multivector::scalar(alg, 1.0);
  expected.set_coeff(0b0110000, 1.0);  // O ^ inf+
  CHECK(approx_equal(O * inf_plus, expected, 0.0));
}

TEST_CASE("geometric product requires matching algebras") {
  const Multivector a = Multivector::scalar(euclid_alg(), 1.0);
  const Multivector b = Multivector::scalar(spacetime_alg(), 1.0);
  CHECK_THROWS_AS(a * b, ValidationError);
}

TEST_CASE("outer product is antisymmetric and grade-raising") {
  std::mt19937_64 rng(19);
  const auto alg = euclid_alg();
  for (int trial = 0; trial < 20; ++trial) {
    const Multivector v = random_vector(alg, rng);
    CHECK(outer_product(v, v).norm() == 0.0);
  }
  const auto& em = euclid::EuclidModel::instance();
  const Multivector e123 = outer_product(outer_product(em.e(1), em.e(2)), em.e(3));
  CHECK(e123.coeff(0b00111) == 1.0);
  CHECK(e123.is_grade(3));

  // (O + e1) ^ e1 = O ^ e1.
  const Multivector lhs = outer_product(em.origin() + em.e(1), em.e(1));
  CHECK(approx_equal(lhs, outer_product(em.origin(), em.e(1)), 0.0));
}

TEST_CASE("vector geometric product splits exactly into inner plus outer") {
  std::mt19937_64 rng(23);
  for (const auto& alg : {euclid_alg(), spacetime_alg()}) {
    for (int trial = 0; trial < 25; ++trial) {
      const Multivector u = random_vector(alg, rng);
      const Multivector v = random_vector(alg, rng);
      const Multivector product = u * v;
      const Multivector split = inner_product(u, v) + outer_product(u, v);
      CHECK(product.coeffs() == split.coeffs());
    }
  }
}

TEST_CASE("left contraction expands on 2-blades") {
  std::mt19937_64 rng(29);
  const auto alg = spacetime_alg();
  for (int trial = 0; trial < 25; ++trial) {
    const Multivector x = random_vector(alg, rng);
    const Multivector a = random_vector(alg, rng);
    const Multivector b = random_vector(alg, rng);
    const Multivector lhs = inner_product(x, outer_product(a, b));
    const Multivector rhs = b * inner_product(x, a).scalar_part() -
                            a * inner_product(x, b).scalar_part();
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("inner product of orthogonal generators vanishes") {
  const auto& em = euclid::EuclidModel::instance();
  CHECK(inner_product(em.e(1), em.e(2)).is_zero());
}

TEST_CASE("reverse signs follow grade") {
  const auto alg = euclid_alg();
  CHECK(approx_equal(reverse(Multivector::scalar(alg, 5.0)), Multivector::scalar(alg, 5.0), 0.0));
  const Multivector biv = Multivector::blade(alg, 0b00011);
  CHECK(approx_equal(reverse(biv), -biv, 0.0));
  const Multivector quad = Multivector::blade(alg, 0b01111);
  CHECK(approx_equal(reverse(quad), quad, 0.0));
}

TEST_CASE("reverse is an antiautomorphism") {
  std::mt19937_64 rng(31);
  const auto alg = spacetime_alg();
  for (int trial = 0; trial < 25; ++trial) {
    const Multivector a = random_multivector(alg, rng);
    const Multivector b = random_multivector(alg, rng);
    const Multivector lhs = reverse(a * b);
    const Multivector rhs = reverse(b) * reverse(a);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("grade projection") {
  const auto& em = euclid::EuclidModel::instance();
  Multivector mixed = Multivector::scalar(em.algebra(), 1.0) + em.e(1) +
                      outer_product(em.e(1), em.e(2));
  CHECK(approx_equal(grade_project(mixed, 1), em.e(1), 0.0));
  CHECK_THROWS_AS(grade_project(mixed, 6), ValidationError);
  CHECK_THROWS_AS(grade_project(mixed, -1), ValidationError);

  std::mt19937_64 rng(37);
  const Multivector u = random_vector(em.algebra(), rng);
  const Multivector v = random_vector(em.algebra(), rng);
  CHECK(grade_project(u * v, 0).scalar_part() ==
        doctest::Approx(inner_product(u, v).scalar_part()).epsilon(1e-14));
}

TEST_CASE("dual against the model pseudoscalar") {
  const auto& em = euclid::EuclidModel::instance();
  const Multivector I = em.pseudoscalar();
  CHECK(approx_equal(dual(I, I), Multivector::scalar(em.algebra(), 1.0), 1e-14));

  // I^2 = -1, so applying dual twice negates.
  CHECK(geometric_product(I, I).scalar_part() == doctest::Approx(-1.0));
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const Multivector a = random_multivector(em.algebra(), rng);
    CHECK((dual(dual(a, I), I) + a).norm() <= 1e-12 * std::max(1.0, a.norm()));
  }

  // Linearity.
  const Multivector a = random_multivector(em.algebra(), rng);
  const Multivector b = random_multivector(em.algebra(), rng);
  const Multivector lhs = dual(a + b * 3.0, I);
  const Multivector rhs = dual(a, I) + dual(b, I) * 3.0;
  CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
}

TEST_CASE("dual rejects degenerate pseudoscalars by name") {
  const auto& sm = spacetime::SpacetimeModel::instance();
  const Multivector I7 = Multivector::blade(sm.algebra(), 0b1111111);
  const Multivector a = sm.gamma(0);
  CHECK_THROWS_WITH_AS(dual(a, I7), doctest::Contains("degenerate"), DegeneracyError);
  CHECK_THROWS_AS(dual(a, sm.gamma(1) + Multivector::scalar(sm.algebra(), 1.0)), ValidationError);
}

TEST_CASE("meet of an object with itself vanishes") {
  const auto& em = euclid::EuclidModel::instance();
  const Multivector s = em.dual_sphere({1.0, 2.0, 3.0}, 4.0);
  CHECK(meet(s, s).norm() == 0.0);
}

TEST_CASE("exp of the zero bivector is one") {
  const auto alg = euclid_alg();
  CHECK(approx_equal(exp_bivector(Multivector(alg)), Multivector::scalar(alg, 1.0), 0.0));
  CHECK_THROWS_AS(exp_bivector(Multivector::basis_vector(alg, 0)), ValidationError);
}

TEST_CASE("exp of a nilpotent translation generator terminates") {
  const auto& sm = spacetime::SpacetimeModel::instance();
  const Multivector x = sm.spacetime_vector({0.3, -1.2, 0.5, 2.0});
  const Multivector B = geometric_product(x, sm.omega_inf()) * 0.5;
  CHECK(geometric_product(B, B).norm() == 0.0);
  CHECK(approx_equal(exp_bivector(B), Multivector::scalar(sm.algebra(), 1.0) + B, 0.0));
}

TEST_CASE("exp rotation matches the 2x2 rotation matrix") {
  const auto& em = euclid::EuclidModel::instance();
  const Multivector B = outer_product(em.e(1), em.e(2));
  for (const double theta : {0.1, 0.7, 2.4, -1.3}) {
    const Multivector R = exp_bivector(B * (0.5 * theta));
    const Multivector rotated = apply_versor(R, em.e(1));
    // R e1 ~R rotates by -theta in the oriented (e1, e2) plane.
    CHECK(rotated.coeff(0b001) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    CHECK(rotated.coeff(0b010) == doctest::Approx(-std::sin(theta)).epsilon(1e-12));
  }
}

TEST_CASE("exp agrees with a 40-term raw series") {
  std::mt19937_64 rng(43);
  auto euclid4 = Algebra::build(
      4, {{1.0, 0, 0, 0}, {0, 1.0, 0, 0}, {0, 0, 1.0, 0}, {0, 0, 0, 1.0}});
  for (const auto& alg : {euclid4, euclid_alg(), spacetime_alg()}) {
    for (int trial = 0; trial < 12; ++trial) {
      Multivector B = random_bivector(alg, rng);
      if (B.norm() > 2.0) B *= 2.0 / B.norm();
      Multivector series = Multivector::scalar(alg, 1.0);
      Multivector term = Multivector::scalar(alg, 1.0);
      for (int k = 1; k <= 40; ++k) {
        term = geometric_product(term, B) / static_cast<double>(k);
        series += term;
      }
      CHECK((exp_bivector(B) - series).norm() <= 1e-10 * std::max(1.0, series.norm()));
    }
  }
}

TEST_CASE("apply_versor basics") {
  const auto& em = euclid::EuclidModel::instance();
  std::mt19937_64 rng(47);
  const Multivector a = random_multivector(em.algebra(), rng);
  CHECK(approx_equal(apply_versor(Multivector::scalar(em.algebra(), 1.0), a), a, 0.0));

  // Not a versor: 1 + e1 has non-scalar V ~V.
  const Multivector bad = Multivector::scalar(em.algebra(), 1.0) + em.e(1);
  CHECK_THROWS_AS(apply_versor(bad, a), ValidationError);
}

TEST_CASE("rotor sandwiches preserve grade and inner products") {
  std::mt19937_64 rng(53);
  const auto& em = euclid::EuclidModel::instance();
  for (int trial = 0; trial < 15; ++trial) {
    const Multivector R = exp_bivector(random_bivector(em.algebra(), rng, -0.7, 0.7));
    const Multivector u = random_vector(em.algebra(), rng);
    const Multivector v = random_vector(em.algebra(), rng);
    const Multivector u2 = apply_versor(R, u);
    const Multivector v2 = apply_versor(R, v);
    CHECK(u2.is_grade(1));
    CHECK(inner_product(u2, v2).scalar_part() ==
          doctest::Approx(inner_product(u, v).scalar_part()).epsilon(1e-9));

    const Multivector blade = outer_product(u, v);
    if (blade.norm() > 1e-6) CHECK(apply_versor(R, blade).is_grade(2));
  }
}

TEST_CASE("commutator basics") {
  const auto& em = euclid::EuclidModel::instance();
  std::mt19937_64 rng(59);
  const Multivector a = random_multivector(em.algebra(), rng);
  CHECK(commutator(a, a).norm() == 0.0);
  CHECK(commutator(Multivector::scalar(em.algebra(), 4.2), a).norm() == 0.0);

  const Multivector e12 = outer_product(em.e(1), em.e(2));
  const Multivector e23 = outer_product(em.e(2), em.e(3));
  const Multivector e13 = outer_product(em.e(1), em.e(3));
  CHECK(approx_equal(commutator(e12, e23), e13, 1e-14));
}

TEST_CASE("products are bilinear") {
  std::mt19937_64 rng(61);
  const auto alg = spacetime_alg();
  for (int trial = 0; trial < 15; ++trial) {
    const Multivector a = random_multivector(alg, rng);
    const Multivector b = random_multivector(alg, rng);
    const Multivector c = random_multivector(alg, rng);
    const double lambda = urand(rng, 0.2, 3.0);
    for (auto product : {&geometric_product, &outer_product, &inner_product}) {
      const Multivector lhs = product(a, b + c * lambda);
      const Multivector rhs = product(a, b) + product(a, c) * lambda;
      CHECK((lhs - rhs).norm() <= 1e-11 * std::max(1.0, rhs.norm()));
    }
  }
}

TEST_CASE("products prune coefficient dust") {
  const auto alg = euclid_alg();
  const Multivector tiny = Multivector::scalar(alg, 1e-20);
  const Multivector one = Multivector::scalar(alg, 1.0);
  CHECK(geometric_product(tiny, one).is_zero());
}

TEST_CASE("large algebras without tables still multiply correctly") {
  std::vector<std::vector<double>> gram(11, std::vector<double>(11, 0.0));
  for (int i = 0; i < 11; ++i) gram[i][i] = (i % 2 == 0) ? 1.0 : -1.0;
  gram[9][10] = gram[10][9] = 0.5;
  auto alg = Algebra::build(11, gram);
  check_contraction_rule(alg, 0.0);

  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const Multivector a = random_multivector(alg, rng, 4);
    const Multivector b = random_multivector(alg, rng, 4);
    const Multivector c = random_multivector(alg, rng, 4);
    const Multivector left = (a * b) * c;
    const Multivector right = a * (b * c);
    CHECK((left - right).norm() <= 1e-10 * std::max(1.0, left.norm()));
  }
}
