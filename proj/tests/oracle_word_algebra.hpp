#pragma once

// Independent oracle for blade products. Multivectors are expanded over
// *words* (ordered geometric products of generators) and reduced with the
// bare rewrite rules
//     e_a e_a -> g_aa,      e_a e_b -> 2 g_ab - e_b e_a   (a > b),
// which are exactly the contraction axiom, nothing else. Canonical wedge
// blades enter as explicit antisymmetrizations over factor permutations.
// No code is shared with the engine's product expansion.

#include <algorithm>
#include <map>
#include <vector>

#include "stcga/algebra.hpp"

namespace stcga::oracle {

using Word = std::vector<int>;
using WordCombo = std::map<Word, double>;  // sorted-word basis -> coefficient

class WordAlgebra {
public:
  explicit WordAlgebra(std::vector<std::vector<double>> gram) : gram_(std::move(gram)) {}

  const WordCombo& normal_order(const Word& w) {
    auto it = cache_.find(w);
    if (it != cache_.end()) return it->second;
    WordCombo result;
    bool reduced = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] < w[i + 1]) continue;
      reduced = true;
      if (w[i] == w[i + 1]) {
        Word shorter;
        shorter.insert(shorter.end(), w.begin(), w.begin() + i);
        shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
        add_scaled(result, normal_order(shorter), gram_[w[i]][w[i]]);
      } else {
        Word shorter;
        shorter.insert(shorter.end(), w.begin(), w.begin() + i);
        shorter.insert(shorter.end(), w.begin() + i + 2, w.end());
        add_scaled(result, normal_order(shorter), 2.0 * gram_[w[i]][w[i + 1]]);
        Word swapped = w;
        std::swap(swapped[i], swapped[i + 1]);
        add_scaled(result, normal_order(swapped), -1.0);
      }
      break;
    }
    if (!reduced) result[w] = 1.0;  // already strictly increasing
    return cache_.emplace(w, std::move(result)).first->second;
  }

  /// Canonical wedge blade as a word combination:
  /// E_A = (1/k!) sum_sigma sgn(sigma) word(sigma(A)).
  const WordCombo& wedge_blade(BladeMask mask) {
    auto it = wedge_cache_.find(mask);
    if (it != wedge_cache_.end()) return it->second;
    Word factors;
    for (int i = 0; i < 32; ++i) {
      if (mask & (BladeMask{1} << i)) factors.push_back(i);
    }
    WordCombo result;
    if (factors.empty()) {
      result[Word{}] = 1.0;
    } else {
      Word perm = factors;
      double factorial = 1.0;
      for (std::size_t k = 2; k <= perm.size(); ++k) factorial *= static_cast<double>(k);
      std::sort(perm.begin(), perm.end());
      do {
        add_scaled(result, normal_order(perm), permutation_sign(factors, perm) / factorial);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return wedge_cache_.emplace(mask, std::move(result)).first->second;
  }

  WordCombo multiply(const WordCombo& a, const WordCombo& b) {
    WordCombo result;
    for (const auto& [wa, ca] : a) {
      for (const auto& [wb, cb] : b) {
        Word concat = wa;
        concat.insert(concat.end(), wb.begin(), wb.end());
        add_scaled(result, normal_order(concat), ca * cb);
      }
    }
    return result;
  }

  /// Geometric product of two canonical blades, expressed in the sorted-word
  /// basis. Compare against the engine's expansion mapped through
  /// wedge_blade.
  WordCombo blade_product(BladeMask a, BladeMask b) {
    return multiply(wedge_blade(a), wedge_blade(b));
  }

  static double distance(const WordCombo& a, const WordCombo& b) {
    double out = 0.0;
    for (const auto& [w, c] : a) {
      auto it = b.find(w);
      out = std::max(out, std::abs(c - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [w, c] : b) {
      if (!a.count(w)) out = std::max(out, std::abs(c));
    }
    return out;
  }

private:
  static void add_scaled(WordCombo& target, const WordCombo& source, double scale) {
    if (scale == 0.0) return;
    for (const auto& [w, c] : source) {
      const double v = (target[w] += scale * c);
      if (v == 0.0) target.erase(w);
    }
  }

  static double permutation_sign(const Word& reference, const Word& perm) {
    // Parity of the permutation mapping reference order to perm.
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        const auto pi = std::find(reference.begin(), reference.end(), perm[i]);
        const auto pj = std::find(reference.begin(), reference.end(), perm[j]);
        if (pi > pj) ++inversions;
      }
    }
    return (inversions & 1) ? -1.0 : 1.0;
  }

  std::vector<std::vector<double>> gram_;
  std::map<Word, WordCombo> cache_;
  std::map<BladeMask, WordCombo> wedge_cache_;
};

}  // namespace stcga::oracle
