#pragma once

// Folner sets, almost-invariant unit vectors and the certificates built from
// them: l^p and operator-norm witnesses on Z^n, torus bump witnesses, and a
// boundary-ratio probe for free groups.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grpcoh/algebra.hpp"
#include "grpcoh/torus.hpp"

namespace grpcoh {

/// The box {0,...,k-1}^n, sorted.
std::vector<Element> box_folner(int n, int k, std::size_t budget = kDefaultElementBudget);

/// |X \ gX| for a finite set X (duplicates ignored).
std::size_t boundary_size(const GroupSpec& spec, const std::vector<Element>& X, const Element& g);

struct FolnerWitness {
  std::vector<Element> X;
  std::vector<std::pair<Element, std::size_t>> per_generator;  // s -> |X \ sX|
  std::vector<double> ratios;                                  // |X \ sX| / |X|
  int stage = 0;
  std::size_t boundary_budget = 0;  // N_n: every constrained boundary is < N_n
  std::vector<int> box_sides;       // side length per axis

  std::size_t size() const { return X.size(); }
};

/// Boundary counts of X against every element of S.
FolnerWitness folner_witness(const GeneratingSet& S, std::vector<Element> X);

/// A box X_n in Z^n with |X_n| > (n N_n)^p and |X_n \ s X_n| < N_n for the
/// first n elements of S. Throws BudgetExceeded when no box within the budget
/// qualifies (which happens as soon as two axes are constrained).
FolnerWitness strong_folner_witness(const GeneratingSet& S, int stage, double p,
                                    std::size_t budget = kDefaultElementBudget);

struct BetaVector {
  FormalSum beta;
  FormalSum indicator;
  CertifiedValue indicator_norm;  // ||sum_{x in X} x||_M
};

/// Normalized indicator of X in the module norm.
BetaVector make_beta_certified(const GroupSpec& spec, const std::vector<Element>& X, const NormFunctional& norm);
FormalSum make_beta(const GroupSpec& spec, const std::vector<Element>& X, const NormFunctional& norm);

struct CertificateEntry {
  int k = 0;
  std::string vector;  // short description of the unit vector
  double vector_norm = 1.0;
  double displacement = 0.0;  // max over the tested generators (upper bound if certified)
  double bound = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> extra;
};

struct AlmostInvarianceCertificate {
  std::string norm;
  std::vector<CertificateEntry> entries;
  std::vector<CertificateEntry> stages;
  bool decay_ok = true;
  std::optional<double> slope;  // fitted log-log decay slope, advisory
  std::vector<std::string> notes;

  bool pass() const;
};

/// Whether displacements keep below each threshold d_1 / 2^j once they drop
/// below it.
bool eventually_decreasing(const std::vector<double>& displacements);

/// Least-squares slope of log d against log k over positive entries.
std::optional<double> loglog_slope(const std::vector<CertificateEntry>& entries);

struct SandwichCheck {
  std::size_t samples = 0;
  double worst_upper_slack = 0.0;  // min of l1 - ||a||_M
  double worst_lower_slack = 0.0;  // min of ||a||_M - l_p
};

/// ||a||_1 >= ||a||_M >= ||a||_p on seeded random samples; throws
/// HypothesisViolated on the first failure.
SandwichCheck check_norm_sandwich(const GroupSpec& spec, const NormFunctional& norm, double p,
                                  std::uint64_t seed, int samples = 24);

struct LpCertificateOptions {
  int stages = 16;
  std::uint64_t seed = 0;
  std::size_t budget = kDefaultElementBudget;
};

/// Box entries k = 1..kMax (universal bound 2 |X \ sX| / |X|^(1/p)) plus
/// strong-Folner stages (bound 2/n) until the budget runs out.
AlmostInvarianceCertificate lp_certificate(const GeneratingSet& S, const NormFunctional& norm, double p, int kMax,
                                           const LpCertificateOptions& opts = {});

struct BumpCertificateOptions {
  double eps = 1e-5;       // displacement certification tolerance
  double slack = 1e-6;     // allowed excess over |m|_1 / i and below 1 for the norm
  int resolution = 0;      // 0: smallest resolving grid for each i
};

/// Per i: certified sup of the sampled bump (must be 1) and certified sup of
/// |(z^m - 1) f_i| against |m|_1 / i, one entry per (i, monomial).
AlmostInvarianceCertificate bump_certificate(int n, int iMax, const std::vector<Element>& monomials,
                                             const BumpCertificateOptions& opts = {});

struct ProbeRecord {
  int radius = 0;
  std::size_t size = 0;
  std::size_t boundary = 0;  // max over S of |X \ sX|
  double ratio = 0.0;        // boundary / |X|
};

/// Boundary ratios of the balls X = ball(r), r = 0..rMax, in F_k.
std::vector<ProbeRecord> nonamenability_probe(const GroupSpec& spec, int rMax,
                                              std::size_t budget = kDefaultElementBudget);

}  // namespace grpcoh
