#pragma once

// Exact homological algebra over Q[Z^n]: 1-cocycle checks, the Koszul
// cochain complex with differentials built from (z_j - 1), reduction modulo
// the augmentation ideal, and finite-window exactness checks.

#include <cstdint>
#include <string>
#include <vector>

#include "grpcoh/algebra.hpp"

namespace grpcoh {

struct OneCocycleData {
  int n = 1;
  std::vector<ExactSum> values;  // v_i, the prospective f(x_i)
};

/// (x_i - 1) v_j == (x_j - 1) v_i for all i < j.
bool is_cocycle(const OneCocycleData& c);

/// v_i = x_i alpha - alpha.
OneCocycleData coboundary(const ExactSum& alpha);

/// z^m as an exact delta.
ExactSum monomial(int n, const Element& m, GaussianRational c = GaussianRational(1));

/// Multiplication by (z_j - 1), j 0-based.
ExactSum times_z_minus_one(const ExactSum& f, int j);

/// Cochain complex C^0 -> C^1 -> ... -> C^n with C^k indexed by k-subsets of
/// {0,...,n-1} (bit masks, ascending). d^k : C^{k-1} -> C^k sends the
/// coordinate T' to T = T' + {j} with entry (-1)^{#{t in T' : t < j}} (z_j - 1).
class KoszulComplex {
 public:
  explicit KoszulComplex(int n);

  int rank() const { return n_; }
  const std::vector<std::uint32_t>& subsets(int k) const { return subsets_.at(k); }
  std::size_t dimension(int k) const { return subsets(k).size(); }
  int index_of(int k, std::uint32_t mask) const;

  struct Entry {
    int row;  // index into C^k
    int col;  // index into C^{k-1}
    int sign;
    int j;    // the entry is sign * (z_j - 1)
  };
  /// Entries of d^k, 1 <= k <= n.
  const std::vector<Entry>& differential(int k) const { return d_.at(k); }

  /// Applies d^k to a cochain in C^{k-1}.
  std::vector<ExactSum> apply(int k, const std::vector<ExactSum>& cochain) const;

  /// d^{k+1} d^k = 0 on every basis cochain, for every k.
  bool verify_dd_zero() const;

  /// eps_j with d^n = rho_n diag(eps), where rho_n has signs (+, -, ..., -)
  /// and C^{n-1} is indexed by the omitted generator j.
  std::vector<int> top_basis_change() const;

 private:
  int n_;
  std::vector<std::vector<std::uint32_t>> subsets_;
  std::vector<std::vector<Entry>> d_;
};

KoszulComplex koszul_complex(int n);

struct AugmentationReduction {
  GaussianRational remainder;
  std::vector<ExactSum> witnesses;  // f = remainder + sum_i (z_i - 1) g_i
};

AugmentationReduction reduce_mod_augmentation_ideal(const ExactSum& f);

/// remainder + sum (z_i - 1) g_i.
ExactSum recombine(const AugmentationReduction& r, int n);

bool top_cohomology_class_equal(const ExactSum& f, const ExactSum& h);

/// Z^n -> Z^{n+1}: appends a zero exponent.
ExactSum stabilize_embed(const ExactSum& f);

struct CohomologyFailure {
  std::string cocycle;  // text form of the offending cochain
  std::string reason;
};

struct CohomologyReport {
  int n = 0;
  int k = 0;
  int window = 0;
  int pad = 0;
  std::size_t checked = 0;
  std::size_t cocycle_dimension = 0;  // k < n: kernel dimension on the inner window
  std::size_t cokernel_rank = 0;      // k = n: 1 once verified, else 0
  std::vector<CohomologyFailure> failures;

  bool pass() const { return failures.empty(); }
};

/// k < n: every inner-window cocycle (a kernel basis) is d^k of a cochain
/// supported in the full window. k = n: image(d^n on the full window)
/// intersected with the inner window has codimension 1, complemented by
/// delta_e. Inner half-width is window - pad.
CohomologyReport truncated_cohomology_check(int n, int k, int window, int pad);

}  // namespace grpcoh
