#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace stcga {

// Basis blades are bitmasks over the generator set: bit i set means the
// canonical wedge factor e_i is present. Blades are wedge products of
// generators in ascending index order, so the exterior basis stays valid
// for any symmetric bilinear form, including degenerate ones.
using BladeMask = std::uint32_t;

struct ProductTerm {
  BladeMask mask;
  double coeff;
};

struct SignatureCounts {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const SignatureCounts&) const = default;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Clifford algebra over a user-supplied symmetric Gram matrix.
///
/// Immutable after construction and shareable across threads. The geometric
/// product of canonical basis blades is expanded through the contraction
/// rule e_i e_j + e_j e_i = 2 g_ij, which needs no diagonalization and keeps
/// coefficients exact for rational Gram entries. For dim <= 8 the full
/// pairwise blade product table is precomputed; larger algebras expand
/// products on the fly.
class Algebra : public std::enable_shared_from_this<Algebra> {
public:
  static constexpr int kMaxDim = 16;
  static constexpr int kTableDimLimit = 8;

  /// Builds an algebra. `gram` must be a dim x dim matrix, symmetric within
  /// 1e-12 (it is symmetrized exactly on storage). Degenerate directions
  /// (zero rows) are accepted. `generator_names` is optional cosmetic
  /// metadata used by serialization; defaults to e1..eN.
  static AlgebraPtr build(int dim, const std::vector<std::vector<double>>& gram,
                          std::vector<std::string> generator_names = {},
                          double prune_epsilon = 1e-14);

  int dim() const { return dim_; }
  std::size_t blade_count() const { return std::size_t{1} << dim_; }
  double gram(int i, int j) const { return gram_[static_cast<std::size_t>(i) * dim_ + j]; }
  double prune_epsilon() const { return prune_epsilon_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  std::vector<std::vector<double>> gram_matrix() const;

  /// Expansion of the geometric product of two canonical basis blades.
  /// Returned terms have distinct masks and nonzero coefficients.
  std::vector<ProductTerm> blade_product(BladeMask a, BladeMask b) const;

  /// Accumulates coeff * E_a * E_b into `acc` (dense, size 2^dim).
  void accumulate_blade_product(BladeMask a, BladeMask b, double coeff, double* acc) const;

  /// Sign counts of the Gram spectrum. Eigenvalues with magnitude below
  /// `zero_tol` * max(1, spectral radius) count as zero.
  SignatureCounts signature(double zero_tol = 1e-9) const;

  /// True when multivectors over `other` may combine with ours: same object
  /// or bit-identical dimension and Gram.
  bool compatible_with(const Algebra& other) const;

private:
  Algebra() = default;

  // e_i * E_b = e_i -| E_b + e_i ^ E_b, expanded into canonical blades.
  void vector_times_blade(int i, BladeMask b, double coeff, double* acc) const;
  void expand_product(BladeMask a, BladeMask b, double coeff, double* acc) const;

  int dim_ = 0;
  double prune_epsilon_ = 1e-14;
  std::vector<double> gram_;  // row-major dim x dim, exactly symmetric
  std::vector<std::string> names_;

  // CSR layout of the pairwise table, indexed by a * 2^dim + b. Empty when
  // dim > kTableDimLimit.
  std::vector<std::uint32_t> table_offsets_;
  std::vector<ProductTerm> table_terms_;
};

/// Reordering sign of juxtaposing two disjoint canonical blades, i.e. the
/// parity of transpositions needed to sort the concatenated factor list.
int reorder_sign(BladeMask a, BladeMask b);

}  // namespace stcga
