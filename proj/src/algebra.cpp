#include "stcga/algebra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include "stcga/errors.hpp"

namespace stcga {

int reorder_sign(BladeMask a, BladeMask b) {
  // Count, for each factor of a, how many factors of b it must hop over to
  // reach sorted order. Standard bit trick: shift a right and popcount
  // against b.
  int swaps = 0;
  a >>= 1;
  while (a != 0) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : 1;
}

AlgebraPtr Algebra::build(int dim, const std::vector<std::vector<double>>& gram,
                          std::vector<std::string> generator_names, double prune_epsilon) {
  if (dim < 1 || dim > kMaxDim) {
    throw ValidationError("algebra dimension must be in 1.." + std::to_string(kMaxDim) +
                          ", got " + std::to_string(dim));
  }
  if (gram.size() != static_cast<std::size_t>(dim)) {
    throw ValidationError("gram matrix must have one row per generator");
  }
  for (const auto& row : gram) {
    if (row.size() != static_cast<std::size_t>(dim)) {
      throw ValidationError("gram matrix must be square");
    }
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (std::abs(gram[i][j] - gram[j][i]) > 1e-12) {
        throw ValidationError("gram matrix is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
    }
  }
  if (!generator_names.empty() && generator_names.size() != static_cast<std::size_t>(dim)) {
    throw ValidationError("generator_names must match the dimension");
  }

  auto alg = std::shared_ptr<Algebra>(new Algebra());
  alg->dim_ = dim;
  alg->prune_epsilon_ = prune_epsilon;
  alg->gram_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    alg->gram_[static_cast<std::size_t>(i) * dim + i] = gram[i][i];
    for (int j = i + 1; j < dim; ++j) {
      // Stored exactly symmetric; off-pair disagreement is already bounded
      // by 1e-12, the upper triangle wins.
      alg->gram_[static_cast<std::size_t>(i) * dim + j] = gram[i][j];
      alg->gram_[static_cast<std::size_t>(j) * dim + i] = gram[i][j];
    }
  }
  if (generator_names.empty()) {
    for (int i = 0; i < dim; ++i) alg->names_.push_back("e" + std::to_string(i + 1));
  } else {
    alg->names_ = std::move(generator_names);
  }

  if (dim <= kTableDimLimit) {
    const std::size_t n = alg->blade_count();
    alg->table_offsets_.assign(n * n + 1, 0);
    std::vector<double> acc(n, 0.0);
    std::vector<ProductTerm> terms;
    terms.reserve(n * n * 2);
    for (BladeMask a = 0; a < n; ++a) {
      for (BladeMask b = 0; b < n; ++b) {
        std::fill(acc.begin(), acc.end(), 0.0);
        alg->expand_product(a, b, 1.0, acc.data());
        for (BladeMask m = 0; m < n; ++m) {
          if (acc[m] != 0.0) terms.push_back({m, acc[m]});
        }
        alg->table_offsets_[a * n + b + 1] = static_cast<std::uint32_t>(terms.size());
      }
    }
    alg->table_terms_ = std::move(terms);
  }
  return alg;
}

std::vector<std::vector<double>> Algebra::gram_matrix() const {
  std::vector<std::vector<double>> g(dim_, std::vector<double>(dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) g[i][j] = gram(i, j);
  return g;
}

void Algebra::vector_times_blade(int i, BladeMask b, double coeff, double* acc) const {
  // Contraction part: e_i -| (b_1 ^ ... ^ b_k) alternates sign along the
  // sorted factor list.
  double sign = 1.0;
  for (BladeMask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const double g = gram(i, j);
    if (g != 0.0) acc[b ^ (BladeMask{1} << j)] += coeff * sign * g;
    sign = -sign;
  }
  // Wedge part: prepend e_i, hopping over the factors below it.
  const BladeMask bit = BladeMask{1} << i;
  if ((b & bit) == 0) {
    const int below = std::popcount(b & (bit - 1));
    acc[b | bit] += (below & 1) ? -coeff : coeff;
  }
}

void Algebra::expand_product(BladeMask a, BladeMask b, double coeff, double* acc) const {
  if (a == 0) {
    acc[b] += coeff;
    return;
  }
  // E_a = e_i ^ E_r with i the lowest factor, so
  //   E_a E_b = e_i (E_r E_b) - (e_i -| E_r) E_b.
  const int i = std::countr_zero(a);
  const BladeMask r = a & (a - 1);

  const std::size_t n = blade_count();
  std::vector<double> inner(n, 0.0);
  expand_product(r, b, coeff, inner.data());
  for (BladeMask m = 0; m < n; ++m) {
    if (inner[m] != 0.0) vector_times_blade(i, m, inner[m], acc);
  }

  double sign = 1.0;
  for (BladeMask rest = r; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const double g = gram(i, j);
    if (g != 0.0) expand_product(r ^ (BladeMask{1} << j), b, -coeff * sign * g, acc);
    sign = -sign;
  }
}

std::vector<ProductTerm> Algebra::blade_product(BladeMask a, BladeMask b) const {
  const std::size_t n = blade_count();
  if (a >= n || b >= n) throw ValidationError("blade mask out of range for this algebra");
  if (!table_offsets_.empty()) {
    const std::size_t idx = static_cast<std::size_t>(a) * n + b;
    return {table_terms_.begin() + table_offsets_[idx],
            table_terms_.begin() + table_offsets_[idx + 1]};
  }
  std::vector<double> acc(n, 0.0);
  expand_product(a, b, 1.0, acc.data());
  std::vector<ProductTerm> out;
  for (BladeMask m = 0; m < n; ++m) {
    if (acc[m] != 0.0) out.push_back({m, acc[m]});
  }
  return out;
}

void Algebra::accumulate_blade_product(BladeMask a, BladeMask b, double coeff, double* acc) const {
  if (!table_offsets_.empty()) {
    const std::size_t idx = static_cast<std::size_t>(a) * blade_count() + b;
    const std::uint32_t end = table_offsets_[idx + 1];
    for (std::uint32_t t = table_offsets_[idx]; t < end; ++t) {
      acc[table_terms_[t].mask] += coeff * table_terms_[t].coeff;
    }
    return;
  }
  expand_product(a, b, coeff, acc);
}

SignatureCounts Algebra::signature(double zero_tol) const {
  Eigen::MatrixXd g(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) g(i, j) = gram(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  SignatureCounts counts;
  for (int i = 0; i < dim_; ++i) {
    if (std::abs(ev[i]) <= zero_tol * scale) {
      ++counts.zero;
    } else if (ev[i] > 0) {
      ++counts.positive;
    } else {
      ++counts.negative;
    }
  }
  return counts;
}

bool Algebra::compatible_with(const Algebra& other) const {
  if (this == &other) return true;
  return dim_ == other.dim_ &&
         std::memcmp(gram_.data(), other.gram_.data(), gram_.size() * sizeof(double)) == 0;
}

}  // namespace stcga
