#include "grpcoh/torus.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include <boost/container/small_vector.hpp>

namespace grpcoh {

namespace {

constexpr double kPi = kTwoPi / 2.0;

std::size_t ipow(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

// Flattened exponent table for fast evaluation.
struct Monomials {
  int n = 0;
  std::vector<double> exps;  // row-major, n per term
  std::vector<Complex> coeffs;

  explicit Monomials(const FormalSum& a) : n(a.spec().rank) {
    for (const auto& [g, c] : a) {
      for (int d = 0; d < n; ++d) exps.push_back(g[d]);
      coeffs.push_back(c);
    }
  }
  std::size_t size() const { return coeffs.size(); }
};

}  // namespace

void require_free_abelian(const GroupSpec& spec, const char* what) {
  if (spec.family != Family::FreeAbelian) {
    fail(ErrorCode::InvalidArgument, std::string(what) + " is defined only for free abelian groups");
  }
}

std::vector<double> SampledTorusFunction::angles_at(std::size_t flat_index) const {
  std::vector<double> theta(n);
  for (int d = n - 1; d >= 0; --d) {
    theta[d] = step() * static_cast<double>(flat_index % m);
    flat_index /= m;
  }
  return theta;
}

void SampledTorusFunction::check() const {
  if (n < 1 || m < 1) fail(ErrorCode::InvalidArgument, "sampled function needs n >= 1 and m >= 1");
  if (values.size() != ipow(static_cast<std::size_t>(m), n)) {
    fail(ErrorCode::InvalidArgument, "sampled function must carry m^n values");
  }
  if (lipschitz && !(*lipschitz >= 0.0)) fail(ErrorCode::InvalidArgument, "Lipschitz constant must be >= 0");
}

DegreeWindow DegreeWindow::symmetric(int n, int half_width) {
  if (half_width < 0) fail(ErrorCode::InvalidArgument, "window half-width must be >= 0");
  return {std::vector<int>(n, -half_width), std::vector<int>(n, half_width)};
}

int DegreeWindow::max_abs_degree() const {
  int out = 0;
  for (auto x : lo) out = std::max(out, std::abs(x));
  for (auto x : hi) out = std::max(out, std::abs(x));
  return out;
}

Complex evaluate(const FormalSum& a, std::span<const double> theta) {
  require_free_abelian(a.spec(), "evaluate");
  if (static_cast<int>(theta.size()) != a.spec().rank) {
    fail(ErrorCode::RankMismatch, "torus point dimension does not match the rank");
  }
  Complex acc{0.0, 0.0};
  for (const auto& [g, c] : a) {
    double phase = 0.0;
    for (std::size_t d = 0; d < theta.size(); ++d) phase += g[d] * theta[d];
    acc += c * std::polar(1.0, phase);
  }
  return acc;
}

double coefficient_lipschitz(const FormalSum& a) {
  double total = 0.0;
  for (const auto& [g, c] : a) total += std::abs(c) * static_cast<double>(word_length(a.spec(), g));
  return total;
}

SampledTorusFunction sample(const FormalSum& a, int m) {
  require_free_abelian(a.spec(), "sample");
  if (m < 1) fail(ErrorCode::InvalidArgument, "grid resolution must be >= 1");
  const int n = a.spec().rank;
  SampledTorusFunction f;
  f.n = n;
  f.m = m;
  f.lipschitz = coefficient_lipschitz(a);
  const std::size_t count = ipow(m, n);
  f.values.resize(count);
  std::vector<double> theta(n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int d = n - 1; d >= 0; --d) {
      theta[d] = f.step() * static_cast<double>(rest % m);
      rest /= m;
    }
    f.values[idx] = evaluate(a, theta);
  }
  return f;
}

FormalSum fourier_coefficients(const SampledTorusFunction& f, const DegreeWindow& window) {
  f.check();
  const int n = f.n;
  if (static_cast<int>(window.lo.size()) != n || static_cast<int>(window.hi.size()) != n) {
    fail(ErrorCode::RankMismatch, "degree window dimension does not match the sampled function");
  }
  for (int d = 0; d < n; ++d) {
    if (window.lo[d] > window.hi[d]) fail(ErrorCode::InvalidArgument, "empty degree window");
  }
  if (!(f.m > 2 * window.max_abs_degree())) {
    fail(ErrorCode::AliasingRisk, "resolution " + std::to_string(f.m) + " does not exceed twice the window degree " +
                                      std::to_string(window.max_abs_degree()));
  }
  // twiddle[d][k - lo][j] = e^{-i k theta_j}
  std::vector<std::vector<std::vector<Complex>>> twiddle(n);
  for (int d = 0; d < n; ++d) {
    for (int k = window.lo[d]; k <= window.hi[d]; ++k) {
      std::vector<Complex> row(f.m);
      for (int j = 0; j < f.m; ++j) {
        // reduce k*j mod m first so the phase stays exact for large grids
        const long r = ((static_cast<long>(k) * j) % f.m + f.m) % f.m;
        row[j] = std::polar(1.0, -kTwoPi * static_cast<double>(r) / f.m);
      }
      twiddle[d].push_back(std::move(row));
    }
  }
  const double norm = 1.0 / static_cast<double>(f.values.size());
  std::vector<FormalSum::Term> terms;
  std::vector<int> k(window.lo);
  std::vector<int> j(n);
  while (true) {
    Complex acc{0.0, 0.0};
    std::fill(j.begin(), j.end(), 0);
    for (std::size_t idx = 0; idx < f.values.size(); ++idx) {
      Complex w{1.0, 0.0};
      for (int d = 0; d < n; ++d) w *= twiddle[d][k[d] - window.lo[d]][j[d]];
      acc += f.values[idx] * w;
      for (int d = n - 1; d >= 0; --d) {
        if (++j[d] < f.m) break;
        j[d] = 0;
      }
    }
    terms.emplace_back(Element(Element::Storage(k.begin(), k.end())), acc * norm);
    int d = n - 1;
    for (; d >= 0; --d) {
      if (++k[d] <= window.hi[d]) break;
      k[d] = window.lo[d];
    }
    if (d < 0) break;
  }
  return FormalSum(GroupSpec::free_abelian(n), std::move(terms));
}

double parseval_l2(const FormalSum& a) {
  require_free_abelian(a.spec(), "parseval_l2");
  if (a.empty()) return 0.0;
  const int n = a.spec().rank;
  // |f|^2 has frequencies within +-span per axis, so m = span + 1 points are exact.
  int m = 1;
  for (int d = 0; d < n; ++d) {
    int lo = a.terms().front().first[d];
    int hi = lo;
    for (const auto& t : a) {
      lo = std::min(lo, t.first[d]);
      hi = std::max(hi, t.first[d]);
    }
    m = std::max(m, hi - lo + 1);
  }
  const auto f = sample(a, m);
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::norm(v);
  return std::sqrt(acc / static_cast<double>(f.values.size()));
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

using Point = boost::container::small_vector<double, 4>;

struct Box {
  double upper;
  double half_width;
  Point center;
  bool operator<(const Box& o) const { return upper < o.upper; }
};

}  // namespace

CertifiedValue maximize_on_torus(int n, const BoxOracle& oracle, double eps, const SupSearchOptions& opts) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "torus rank must be >= 1");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "certification tolerance must be positive");
  int split = opts.initial_split;
  if (split <= 0) split = n == 1 ? 64 : n == 2 ? 16 : n == 3 ? 8 : 4;

  CertifiedValue out;
  out.lower = 0.0;
  std::priority_queue<Box> queue;
  auto consider = [&](Point center, double r) {
    BoxBound b = oracle(std::span<const double>(center.data(), center.size()), r);
    ++out.evaluations;
    out.lower = std::max(out.lower, b.center_value);
    if (b.upper > out.lower) queue.push(Box{b.upper, r, std::move(center)});
  };

  const double r0 = kPi / split;
  const std::size_t start = ipow(split, n);
  for (std::size_t idx = 0; idx < start; ++idx) {
    Point c(n);
    std::size_t rest = idx;
    for (int d = 0; d < n; ++d) {
      c[d] = -kPi + (2.0 * static_cast<double>(rest % split) + 1.0) * r0;
      rest /= split;
    }
    consider(std::move(c), r0);
  }

  const std::size_t children = ipow(2, n);
  while (!queue.empty()) {
    if (queue.top().upper <= out.lower) {
      queue.pop();
      continue;
    }
    if (queue.top().upper - out.lower <= eps) break;
    if (out.evaluations >= opts.max_boxes) break;
    Box box = queue.top();
    queue.pop();
    const double r = box.half_width / 2.0;
    for (std::size_t ch = 0; ch < children; ++ch) {
      Point c(box.center);
      for (int d = 0; d < n; ++d) c[d] += ((ch >> d) & 1U) ? r : -r;
      consider(std::move(c), r);
    }
  }
  out.upper = queue.empty() ? out.lower : std::max(out.lower, queue.top().upper);
  out.estimate = out.lower;
  out.certified = out.upper - out.lower <= eps;
  return out;
}

CertifiedValue certified_sup(const FormalSum& a, double eps, const SupSearchOptions& opts) {
  require_free_abelian(a.spec(), "certified_sup");
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "certification tolerance must be positive");
  if (a.empty()) return CertifiedValue{};
  const Monomials mono(a);
  const int n = mono.n;
  const double l1 = lp_norm(a, 1.0);
  double lip = 0.0;
  double curv = 0.0;
  for (std::size_t t = 0; t < mono.size(); ++t) {
    double m1 = 0.0;
    for (int d = 0; d < n; ++d) m1 += std::abs(mono.exps[t * n + d]);
    lip += std::abs(mono.coeffs[t]) * m1;
    curv += std::abs(mono.coeffs[t]) * m1 * m1;
  }
  // covers rounding in the center evaluation
  const double margin = 1e-13 * l1 * static_cast<double>(mono.size());

  boost::container::small_vector<Complex, 4> grad(n);
  auto oracle = [&](std::span<const double> c, double r) {
    Complex f{0.0, 0.0};
    std::fill(grad.begin(), grad.end(), Complex{0.0, 0.0});
    for (std::size_t t = 0; t < mono.size(); ++t) {
      const double* e = &mono.exps[t * n];
      double phase = 0.0;
      for (int d = 0; d < n; ++d) phase += e[d] * c[d];
      const Complex term = mono.coeffs[t] * std::polar(1.0, phase);
      f += term;
      const Complex iterm{-term.imag(), term.real()};
      for (int d = 0; d < n; ++d) grad[d] += e[d] * iterm;
    }
    const double absf = std::abs(f);
    // |f(c + delta)| <= |f(c) + grad.delta| + curv r^2 / 2, and the linear
    // part is bounded through |u + v|^2 = |u|^2 + 2 Re(conj(u) v) + |v|^2.
    double cross = 0.0;
    double glen = 0.0;
    for (int d = 0; d < n; ++d) {
      cross += std::abs((std::conj(f) * grad[d]).real());
      glen += std::abs(grad[d]);
    }
    const double taylor = std::sqrt(absf * absf + 2.0 * r * cross + (r * glen) * (r * glen)) + 0.5 * curv * r * r;
    const double lipschitz = absf + lip * r;
    return BoxBound{absf, std::min({taylor, lipschitz, l1}) + margin};
  };
  CertifiedValue out = maximize_on_torus(n, oracle, eps, opts);
  // triangle inequality: sup |f| <= ||a||_1
  out.upper = std::max(out.lower, std::min(out.upper, l1));
  out.certified = out.upper - out.lower <= eps;
  return out;
}

CertifiedValue certified_sup(const SampledTorusFunction& f) {
  f.check();
  CertifiedValue out;
  for (const auto& v : f.values) out.lower = std::max(out.lower, std::abs(v));
  out.estimate = out.lower;
  out.evaluations = f.values.size();
  if (!f.lipschitz) {
    out.upper = std::numeric_limits<double>::infinity();
    out.certified = false;
    if (f.sup_bound) out.upper = std::max(out.lower, *f.sup_bound);
    return out;
  }
  // every point is within half a grid step of a sample in the max-angle metric
  out.upper = out.lower + *f.lipschitz * f.step() / 2.0;
  if (f.sup_bound) out.upper = std::max(out.lower, std::min(out.upper, *f.sup_bound));
  out.certified = true;
  return out;
}

// ---------------------------------------------------------------------------
// Finite-section oracle

OracleResult op_norm_oracle(const FormalSum& a, int truncation, const OracleOptions& opts) {
  require_free_abelian(a.spec(), "op_norm_oracle");
  if (truncation < 1) fail(ErrorCode::InvalidArgument, "truncation must be >= 1");
  OracleResult res;
  if (a.empty()) {
    res.converged = true;
    return res;
  }
  const int n = a.spec().rank;
  std::vector<int> smin(n), smax(n);
  for (int d = 0; d < n; ++d) {
    smin[d] = smax[d] = a.terms().front().first[d];
    for (const auto& t : a) {
      smin[d] = std::min(smin[d], t.first[d]);
      smax[d] = std::max(smax[d], t.first[d]);
    }
  }
  const std::size_t dom_size = ipow(truncation, n);
  if (dom_size > 50'000'000) fail(ErrorCode::BudgetExceeded, "finite section too large");
  std::vector<std::size_t> ostride(n);
  std::size_t out_size = 1;
  for (int d = n - 1; d >= 0; --d) {
    ostride[d] = out_size;
    out_size *= static_cast<std::size_t>(truncation + smax[d] - smin[d]);
  }
  std::vector<std::size_t> base(dom_size);
  for (std::size_t idx = 0; idx < dom_size; ++idx) {
    std::size_t rest = idx;
    std::size_t b = 0;
    for (int d = n - 1; d >= 0; --d) {
      b += (rest % truncation) * ostride[d];
      rest /= truncation;
    }
    base[idx] = b;
  }
  std::vector<std::size_t> toff;
  std::vector<Complex> coef;
  for (const auto& [g, c] : a) {
    std::size_t off = 0;
    for (int d = 0; d < n; ++d) off += static_cast<std::size_t>(g[d] - smin[d]) * ostride[d];
    toff.push_back(off);
    coef.push_back(c);
  }

  std::vector<Complex> v(dom_size), u(out_size);
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> normal;
  for (auto& x : v) x = {normal(rng), normal(rng)};
  auto normalize = [](std::vector<Complex>& x) {
    double s = 0.0;
    for (const auto& y : x) s += std::norm(y);
    s = std::sqrt(s);
    if (s > 0.0) {
      for (auto& y : x) y /= s;
    }
    return s;
  };
  normalize(v);

  double prev = 0.0;
  int calm = 0;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    std::fill(u.begin(), u.end(), Complex{0.0, 0.0});
    for (std::size_t x = 0; x < dom_size; ++x) {
      const Complex vx = v[x];
      for (std::size_t t = 0; t < coef.size(); ++t) u[base[x] + toff[t]] += coef[t] * vx;
    }
    double sigma = 0.0;
    for (const auto& y : u) sigma += std::norm(y);
    sigma = std::sqrt(sigma);
    res.value = std::max(res.value, sigma);
    res.iterations = it;
    if (sigma == 0.0) {
      res.converged = true;
      break;
    }
    if (sigma - prev <= opts.rel_tol * sigma) {
      if (++calm >= 5) {
        res.converged = true;
        break;
      }
    } else {
      calm = 0;
    }
    prev = sigma;
    for (std::size_t x = 0; x < dom_size; ++x) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < coef.size(); ++t) acc += std::conj(coef[t]) * u[base[x] + toff[t]];
      v[x] = acc;
    }
    if (normalize(v) == 0.0) {
      res.converged = true;
      break;
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Bumps

TorusBump::TorusBump(int i, int n) : i_(i), n_(n) {
  if (i < 1) fail(ErrorCode::InvalidArgument, "bump index must be >= 1");
  if (n < 1) fail(ErrorCode::InvalidArgument, "bump rank must be >= 1");
}

double TorusBump::distance_to_one(std::span<const double> theta) {
  double s = 0.0;
  for (double t : theta) {
    const double h = 2.0 * std::sin(t / 2.0);
    s += h * h;
  }
  return std::sqrt(s);
}

double TorusBump::value_at_distance(double d) const {
  return std::clamp(2.0 - 2.0 * i_ * d, 0.0, 1.0);
}

double TorusBump::value(std::span<const double> theta) const {
  if (static_cast<int>(theta.size()) != n_) fail(ErrorCode::RankMismatch, "bump evaluated off its torus");
  return value_at_distance(distance_to_one(theta));
}

double TorusBump::lipschitz() const { return 2.0 * i_ * std::sqrt(static_cast<double>(n_)); }

bool TorusBump::resolves(int m) const {
  if (m < 1) return false;
  const double step = kTwoPi / m;
  // d >= (2/pi)|theta|_2 on [-pi, pi]^n, so annulus points have |j| < m / (4i) + 1
  const int reach = static_cast<int>(std::ceil(m / (4.0 * i_))) + 1;
  const int width = 2 * reach + 1;
  const std::size_t count = ipow(width, n_);
  std::vector<double> theta(n_);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int d = 0; d < n_; ++d) {
      theta[d] = step * (static_cast<double>(rest % width) - reach);
      rest /= width;
    }
    const double d = distance_to_one(theta);
    if (d > inner_radius() && d < outer_radius()) return true;
  }
  return false;
}

int TorusBump::min_resolution() const {
  for (int m = 1;; ++m) {
    if (resolves(m)) return m;
  }
}

SampledTorusFunction bump(int i, int n, int m) {
  const TorusBump f(i, n);
  if (!f.resolves(m)) {
    fail(ErrorCode::ResolutionTooCoarse, "grid resolution " + std::to_string(m) +
                                             " places no point in the transition annulus of bump " +
                                             std::to_string(i));
  }
  SampledTorusFunction s;
  s.n = n;
  s.m = m;
  s.lipschitz = f.lipschitz();
  s.sup_bound = 1.0;
  const std::size_t count = ipow(m, n);
  s.values.resize(count);
  std::vector<double> theta(n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (int d = n - 1; d >= 0; --d) {
      theta[d] = s.step() * static_cast<double>(rest % m);
      rest /= m;
    }
    s.values[idx] = f.value(theta);
  }
  return s;
}

namespace {

// Smallest angular distance from any point of [lo, hi] to 2*pi*Z, in [0, pi].
double min_distance_to_zero(double lo, double hi) {
  const double k = std::ceil(lo / kTwoPi);
  if (k * kTwoPi <= hi) return 0.0;
  auto dist = [](double x) {
    double y = std::fmod(std::abs(x), kTwoPi);
    return std::min(y, kTwoPi - y);
  };
  return std::min(dist(lo), dist(hi));
}

// sup of |sin| over [lo, hi].
double sup_abs_sin(double lo, double hi) {
  const double k = std::ceil((lo - kPi / 2.0) / kPi);
  if (kPi / 2.0 + k * kPi <= hi) return 1.0;
  return std::max(std::abs(std::sin(lo)), std::abs(std::sin(hi)));
}

}  // namespace

CertifiedValue certified_bump_displacement(const TorusBump& f, const Element& monomial, double eps,
                                           const SupSearchOptions& opts) {
  const int n = f.rank();
  if (static_cast<int>(monomial.size()) != n) fail(ErrorCode::RankMismatch, "monomial rank does not match the bump");
  double m1 = 0.0;
  for (auto x : monomial.data()) m1 += std::abs(x);
  if (m1 == 0.0) {
    CertifiedValue zero;
    zero.evaluations = 1;
    return zero;
  }
  auto oracle = [&](std::span<const double> c, double r) {
    double phase = 0.0;
    double dmin2 = 0.0;
    for (int d = 0; d < n; ++d) {
      phase += monomial[d] * c[d];
      const double h = 2.0 * std::sin(min_distance_to_zero(c[d] - r, c[d] + r) / 2.0);
      dmin2 += h * h;
    }
    const double center = 2.0 * std::abs(std::sin(phase / 2.0)) * f.value(c);
    const double fub = f.value_at_distance(std::sqrt(dmin2));
    if (fub == 0.0) return BoxBound{center, 0.0};
    const double sin_ub = sup_abs_sin((phase - m1 * r) / 2.0, (phase + m1 * r) / 2.0);
    return BoxBound{center, 2.0 * sin_ub * fub + 1e-15};
  };
  return maximize_on_torus(n, oracle, eps, opts);
}

}  // namespace grpcoh
