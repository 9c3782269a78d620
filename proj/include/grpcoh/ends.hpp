#pragma once

// Cayley-ball components after removing a finite set, ends estimates, and
// recovery of potentials from coboundary data along the Cayley graph.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpcoh/algebra.hpp"

namespace grpcoh {

struct Component {
  std::vector<Element> vertices;  // sorted
  bool meets_sphere = false;
};

/// Components of ball(R) \ F under the edges g -- s g, s in S, ordered by
/// their smallest vertex.
std::vector<Component> complement_components(const GeneratingSet& S, int R, const std::vector<Element>& F,
                                             std::size_t budget = kDefaultElementBudget);

enum class EndsVerdict { One, Two, Growing, Undetermined };
const char* verdict_name(EndsVerdict v);

struct EndsRecord {
  int radius = 0;
  std::size_t components = 0;  // components meeting sphere(radius)
};

struct EndsEstimate {
  GroupSpec spec;
  std::vector<Element> removed;
  std::vector<EndsRecord> records;
  EndsVerdict verdict = EndsVerdict::Undetermined;
};

/// Minimum run of equal trailing counts for a stabilized verdict.
inline constexpr int kStableRadii = 4;

/// A trailing run of >= 4 equal counts c gives one (c = 1), two (c = 2) or
/// growing (c >= 3); strictly increasing trailing counts also give growing.
EndsEstimate ends_estimate(const GeneratingSet& S, const std::vector<int>& radii, const std::vector<Element>& F,
                           std::size_t budget = kDefaultElementBudget);

struct H1Dimension {
  enum class Kind { Finite, Infinite, Unknown } kind = Kind::Unknown;
  long value = 0;
  std::string note;

  std::string to_string() const;
};

/// dim H^1(G, CG) = ends - 1.
H1Dimension h1_cg_dimension(const EndsEstimate& e);

/// Coboundary data b(s) = s f - f for s in a generating set, exact.
using CocycleValues = std::map<Element, ExactSum>;

struct LoopViolation {
  Element vertex;
  Element generator;
  GaussianRational expected;
  GaussianRational found;
};

struct PotentialFunction {
  GroupSpec spec;
  std::vector<Element> generators;  // symmetric
  CocycleValues values;             // b on every generator, inverses filled in
  int radius = 0;
  std::map<Element, GaussianRational> coefficients;  // a_x - a_e on ball(radius)
  bool consistent = true;
  std::optional<LoopViolation> violation;

  /// Union of the supports of b(s): the set F(G) outside which the
  /// potential is locally constant.
  std::vector<Element> support_union() const;
};

/// Propagates a_{s^-1 x} = a_x + b(s)_x over ball(R) from a_e = 0 and checks
/// every edge. Missing inverse generators get b(s^-1) = -s^-1 b(s). Strict
/// mode throws InconsistentData on a loop contradiction.
PotentialFunction integrate_coboundary(const GeneratingSet& S, const CocycleValues& b, int R, bool strict = true,
                                       std::size_t budget = kDefaultElementBudget);

struct FiniteSupportDecision {
  bool finite = false;
  std::optional<ExactSum> reconstructed;
  GaussianRational constant;  // value subtracted everywhere
  std::size_t sphere_components = 0;
};

/// Subtracts the constant shared by the sphere-meeting components of
/// ball(R) \ F (F = e.removed) and returns the finitely supported remainder.
/// Throws AmbiguousNormalization when those components disagree.
FiniteSupportDecision finite_support_decision(const PotentialFunction& p, const EndsEstimate& e);

}  // namespace grpcoh
