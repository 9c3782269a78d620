#pragma once

// Fourier side of C*_red(Z^n) = C(T^n): Laurent polynomials evaluated on the
// torus, grid quadrature, certified suprema (which equal operator norms on
// Z^n), and a finite-section power-iteration oracle for the operator norm.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "grpcoh/algebra.hpp"

namespace grpcoh {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct TorusPoint {
  std::vector<double> angles;  // radians
};

/// A real quantity with a two-sided rigorous enclosure.
struct CertifiedValue {
  double estimate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool certified = true;  // false: upper is not a proven bound
  std::size_t evaluations = 0;

  double gap() const { return upper - lower; }
};

/// m^n samples at angles 2*pi*j/m, row-major (first angle varies slowest).
struct SampledTorusFunction {
  int n = 1;
  int m = 1;
  std::vector<Complex> values;
  std::optional<double> lipschitz;  // w.r.t. the max-angle metric
  std::optional<double> sup_bound;  // a priori bound on |f|, if known

  double step() const { return kTwoPi / m; }
  std::vector<double> angles_at(std::size_t flat_index) const;
  void check() const;
};

/// Closed degree box [lo_d, hi_d] per dimension.
struct DegreeWindow {
  std::vector<int> lo;
  std::vector<int> hi;

  static DegreeWindow symmetric(int n, int half_width);
  int max_abs_degree() const;
};

void require_free_abelian(const GroupSpec& spec, const char* what);

/// sum_m a_m e^{i m.theta}.
Complex evaluate(const FormalSum& a, std::span<const double> theta);
inline Complex evaluate(const FormalSum& a, const TorusPoint& p) { return evaluate(a, p.angles); }

/// Samples of the trigonometric polynomial on the m-point grid; records the
/// coefficient Lipschitz bound.
SampledTorusFunction sample(const FormalSum& a, int m);

/// Discrete quadrature of the contour-integral Fourier coefficient formula.
/// Throws AliasingRisk unless m > 2 * max |degree|.
FormalSum fourier_coefficients(const SampledTorusFunction& f, const DegreeWindow& window);

/// [(2 pi)^-n int |f|^2]^(1/2) by trapezoid quadrature exact for the band.
double parseval_l2(const FormalSum& a);

/// sum |a_m| |m|_1: Lipschitz constant of theta -> f(theta) in the max-angle metric.
double coefficient_lipschitz(const FormalSum& a);

/// Result of bounding |f| on the cube center +- half_width.
struct BoxBound {
  double center_value = 0.0;  // |f(center)|, a witness for the lower bound
  double upper = 0.0;         // rigorous bound on sup over the cube
};
using BoxOracle = std::function<BoxBound(std::span<const double> center, double half_width)>;

struct SupSearchOptions {
  std::size_t max_boxes = 4'000'000;
  int initial_split = 0;  // boxes per axis at the start; 0 picks by rank
};

/// Branch and bound over [-pi, pi]^n with cube subdivision until the gap
/// between the best witness and the largest outstanding bound is <= eps.
CertifiedValue maximize_on_torus(int n, const BoxOracle& oracle, double eps,
                                 const SupSearchOptions& opts = {});

/// Certified sup_{T^n} |f| for a Laurent polynomial (the operator norm on Z^n).
/// Empty sums return an exact zero.
CertifiedValue certified_sup(const FormalSum& a, double eps, const SupSearchOptions& opts = {});

/// Grid maximum plus Lipschitz slack; uncertified without a Lipschitz constant.
CertifiedValue certified_sup(const SampledTorusFunction& f);

struct OracleResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

struct OracleOptions {
  int max_iterations = 200'000;
  double rel_tol = 1e-10;  // per-iteration relative increase at convergence
};

/// Largest singular value, by power iteration, of convolution by a acting on
/// vectors supported in the centered box of side `truncation` (outputs are
/// not truncated, so the value never exceeds ||a||_op).
OracleResult op_norm_oracle(const FormalSum& a, int truncation, const OracleOptions& opts = {});

/// Radial cutoff around (1,...,1): 1 for d <= 1/(2i), 0 for d >= 1/i, linear
/// between, d the Euclidean distance in C^n.
class TorusBump {
 public:
  TorusBump(int i, int n);

  int index() const { return i_; }
  int rank() const { return n_; }
  double inner_radius() const { return 0.5 / i_; }
  double outer_radius() const { return 1.0 / i_; }

  /// Euclidean distance from e^{i theta} to (1,...,1).
  static double distance_to_one(std::span<const double> theta);
  double value_at_distance(double d) const;
  double value(std::span<const double> theta) const;
  /// Lipschitz constant in the max-angle metric: 2i * sqrt(n).
  double lipschitz() const;

  /// Whether some grid point of the m-point grid lies strictly in the annulus.
  bool resolves(int m) const;
  /// Smallest grid resolution with resolves(m).
  int min_resolution() const;

 private:
  int i_;
  int n_;
};

/// Sampled bump; throws ResolutionTooCoarse unless the annulus is resolved.
SampledTorusFunction bump(int i, int n, int m);

/// Certified sup of |(z^m - 1) f_i(z)| via interval enclosures of the
/// analytic bump.
CertifiedValue certified_bump_displacement(const TorusBump& f, const Element& monomial, double eps,
                                           const SupSearchOptions& opts = {});

}  // namespace grpcoh
