#include "grpcoh/folner.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace grpcoh {

namespace {

std::vector<Element> sorted_unique(std::vector<Element> X) {
  if (!std::is_sorted(X.begin(), X.end())) std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  return X;
}

// Product box with the given side per axis, anchored at the origin.
std::vector<Element> product_box(const std::vector<int>& sides) {
  std::vector<Element> out;
  const int n = static_cast<int>(sides.size());
  std::size_t total = 1;
  for (int s : sides) total *= static_cast<std::size_t>(s);
  out.reserve(total);
  Element::Storage cur(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    out.emplace_back(cur);
    for (int d = n - 1; d >= 0; --d) {
      if (++cur[d] < sides[d]) break;
      cur[d] = 0;
    }
  }
  return out;  // lexicographic order of equal-length vectors
}

std::string format_exponents(const Element& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(m[i]);
  }
  return out;
}

// ||a||_M as a certified value. Operator norms need Z^n.
CertifiedValue module_norm(const FormalSum& a, const NormFunctional& norm) {
  if (norm.kind == NormKind::Lp) {
    const double v = lp_norm(a, norm.p);
    return CertifiedValue{v, v, v, true, a.size()};
  }
  if (a.spec().family != Family::FreeAbelian) {
    fail(ErrorCode::InvalidArgument, "operator-norm certificates are limited to free abelian groups");
  }
  // relative tolerance keeps large indicator sums tractable
  return certified_sup(a, norm.eps * std::max(1.0, lp_norm(a, 1.0)));
}

constexpr double kRelSlack = 1e-12;

}  // namespace

std::vector<Element> box_folner(int n, int k, std::size_t budget) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "rank must be >= 1");
  if (k < 1) fail(ErrorCode::InvalidArgument, "box side must be >= 1");
  if (std::pow(static_cast<double>(k), n) > static_cast<double>(budget)) {
    fail(ErrorCode::BudgetExceeded, "box of side " + std::to_string(k) + " in Z^" + std::to_string(n) +
                                        " exceeds the element budget");
  }
  return product_box(std::vector<int>(n, k));
}

std::size_t boundary_size(const GroupSpec& spec, const std::vector<Element>& X, const Element& g) {
  validate(spec, g);
  std::vector<Element> copy;
  const bool clean = std::is_sorted(X.begin(), X.end()) && std::adjacent_find(X.begin(), X.end()) == X.end();
  if (!clean) copy = sorted_unique(X);
  const auto& sorted = clean ? X : copy;
  std::vector<Element> shifted;
  shifted.reserve(sorted.size());
  for (const auto& x : sorted) shifted.push_back(detail::multiply_unchecked(spec, g, x));
  // translation keeps the order on Z^n; free words need a re-sort
  if (!std::is_sorted(shifted.begin(), shifted.end())) std::sort(shifted.begin(), shifted.end());
  std::size_t common = 0;
  auto a = sorted.begin();
  auto b = shifted.begin();
  while (a != sorted.end() && b != shifted.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  return sorted.size() - common;
}

FolnerWitness folner_witness(const GeneratingSet& S, std::vector<Element> X) {
  FolnerWitness w;
  w.X = sorted_unique(std::move(X));
  for (const auto& x : w.X) validate(S.spec(), x);
  for (const auto& s : S) {
    const std::size_t b = boundary_size(S.spec(), w.X, s);
    w.per_generator.emplace_back(s, b);
    w.ratios.push_back(w.X.empty() ? 0.0 : static_cast<double>(b) / static_cast<double>(w.X.size()));
  }
  return w;
}

FolnerWitness strong_folner_witness(const GeneratingSet& S, int stage, double p, std::size_t budget) {
  const auto& spec = S.spec();
  require_free_abelian(spec, "strong_folner_witness");
  if (stage < 1) fail(ErrorCode::InvalidArgument, "stage must be >= 1");
  if (!(p >= 2.0)) fail(ErrorCode::InvalidArgument, "strong Folner witnesses require p >= 2");
  const int n = spec.rank;
  const std::size_t constrained = std::min<std::size_t>(stage, S.size());
  std::vector<bool> axis(n, false);
  for (std::size_t i = 0; i < constrained; ++i) {
    for (int d = 0; d < n; ++d) axis[d] = axis[d] || S.elements()[i][d] != 0;
  }
  const int c = static_cast<int>(std::count(axis.begin(), axis.end(), true));

  // |X \ gX| for the box with side k on the constrained axes, 1 elsewhere
  auto boundary_budget = [&](long k) {
    long worst = 0;
    for (std::size_t i = 0; i < constrained; ++i) {
      const auto& g = S.elements()[i];
      double kept = 1.0;
      for (int d = 0; d < n; ++d) {
        const long side = axis[d] ? k : 1;
        kept *= static_cast<double>(std::max(0L, side - std::abs(static_cast<long>(g[d]))));
      }
      worst = std::max(worst, static_cast<long>(std::pow(static_cast<double>(k), c) - kept));
    }
    return worst + 1;
  };
  auto qualifies = [&](long k) {
    const double size = std::pow(static_cast<double>(k), c);
    return size > std::pow(static_cast<double>(stage) * static_cast<double>(boundary_budget(k)), p);
  };
  auto too_big = [&](long k) { return std::pow(static_cast<double>(k), c) > static_cast<double>(budget); };

  long hi = 1;
  while (!qualifies(hi)) {
    hi *= 2;
    if (too_big(hi) && !qualifies(hi)) {
      fail(ErrorCode::BudgetExceeded, "no box within the element budget satisfies stage " + std::to_string(stage) +
                                          " with " + std::to_string(c) + " constrained axes");
    }
  }
  long lo = hi / 2;  // qualifies(lo) is false or lo == 0
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    (qualifies(mid) ? hi : lo) = mid;
  }
  if (too_big(hi)) fail(ErrorCode::BudgetExceeded, "stage " + std::to_string(stage) + " box exceeds the budget");

  std::vector<int> sides(n, 1);
  for (int d = 0; d < n; ++d) {
    if (axis[d]) sides[d] = static_cast<int>(hi);
  }
  FolnerWitness w = folner_witness(S, product_box(sides));
  w.stage = stage;
  w.box_sides = sides;
  w.boundary_budget = static_cast<std::size_t>(boundary_budget(hi));
  for (std::size_t i = 0; i < constrained; ++i) {
    if (w.per_generator[i].second >= w.boundary_budget) {
      throw std::logic_error("strong Folner box violates its boundary budget");
    }
  }
  return w;
}

BetaVector make_beta_certified(const GroupSpec& spec, const std::vector<Element>& X, const NormFunctional& norm) {
  if (X.empty()) fail(ErrorCode::DegenerateInput, "make_beta needs a nonempty set");
  BetaVector out;
  out.indicator = indicator(spec, X);
  out.indicator_norm = module_norm(out.indicator, norm);
  out.beta = scale(Complex(1.0 / out.indicator_norm.estimate), out.indicator);
  return out;
}

FormalSum make_beta(const GroupSpec& spec, const std::vector<Element>& X, const NormFunctional& norm) {
  return make_beta_certified(spec, X, norm).beta;
}

bool AlmostInvarianceCertificate::pass() const {
  if (!decay_ok) return false;
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  for (const auto& e : stages) {
    if (!e.pass) return false;
  }
  return true;
}

bool eventually_decreasing(const std::vector<double>& d) {
  if (d.size() < 2) return true;
  if (d.front() == 0.0) return std::all_of(d.begin(), d.end(), [](double x) { return x == 0.0; });
  if (!(d.back() < d.front())) return false;
  for (double t = d.front() / 2.0; t > d.back(); t /= 2.0) {
    auto first = std::find_if(d.begin(), d.end(), [t](double x) { return x < t; });
    if (std::any_of(first, d.end(), [t](double x) { return x >= t; })) return false;
  }
  return true;
}

std::optional<double> loglog_slope(const std::vector<CertificateEntry>& entries) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& e : entries) {
    if (e.k <= 0 || !(e.displacement > 0.0)) continue;
    const double x = std::log(static_cast<double>(e.k));
    const double y = std::log(e.displacement);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  const double den = count * sxx - sx * sx;
  if (count < 2 || den <= 0.0) return std::nullopt;
  return (count * sxy - sx * sy) / den;
}

SandwichCheck check_norm_sandwich(const GroupSpec& spec, const NormFunctional& norm, double p, std::uint64_t seed,
                                  int samples) {
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "p must be >= 1");
  const auto support = ball(standard_generators(spec), 2);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, support.size() - 1);
  std::uniform_int_distribution<int> terms(1, 6);
  SandwichCheck out;
  out.worst_upper_slack = out.worst_lower_slack = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    std::vector<FormalSum::Term> t;
    const int count = terms(rng);
    for (int j = 0; j < count; ++j) {
      const double re = coeff(rng);
      const double im = coeff(rng);
      t.emplace_back(support[pick(rng)], Complex(re, im));
    }
    const FormalSum a(spec, std::move(t));
    const CertifiedValue m = module_norm(a, norm);
    const double tol = (norm.kind == NormKind::Operator ? norm.eps * std::max(1.0, lp_norm(a, 1.0)) : 0.0) + 1e-9;
    const double upper_slack = lp_norm(a, 1.0) + 1e-9 - m.upper;
    const double lower_slack = m.upper - lp_norm(a, p) + tol;
    out.worst_upper_slack = std::min(out.worst_upper_slack, upper_slack);
    out.worst_lower_slack = std::min(out.worst_lower_slack, lower_slack);
    ++out.samples;
    if (upper_slack < 0.0 || lower_slack < 0.0) {
      std::ostringstream os;
      os << "norm " << norm.name() << " violates l1 >= ||.||_M >= l" << p << " on sample " << s;
      fail(ErrorCode::HypothesisViolated, os.str());
    }
  }
  return out;
}

namespace {

struct Displacement {
  double value = 0.0;
  double bound = 0.0;
  bool within = true;
  bool certified = true;
};

// max over gens of ||s beta - beta||_M against 2 |X \ sX| / |X|^(1/p).
Displacement displacement(const GroupSpec& spec, const std::vector<Element>& X, const BetaVector& beta,
                          const std::vector<Element>& gens, const NormFunctional& norm, double p) {
  Displacement out;
  const double root = std::pow(static_cast<double>(X.size()), 1.0 / p);
  const FormalSum& ind = beta.indicator;
  for (const auto& s : gens) {
    const FormalSum diff = left_translate(s, ind) - ind;
    const CertifiedValue num = module_norm(diff, norm);
    // the numerator bound over the denominator lower bound is a rigorous upper bound
    const double den = beta.indicator_norm.lower > 0.0 ? beta.indicator_norm.lower : beta.indicator_norm.estimate;
    const double value = num.upper / den;
    const double bound = 2.0 * static_cast<double>(boundary_size(spec, X, s)) / root;
    out.value = std::max(out.value, value);
    out.bound = std::max(out.bound, bound);
    out.within = out.within && value <= bound * (1.0 + kRelSlack);
    out.certified = out.certified && num.certified && beta.indicator_norm.certified;
  }
  return out;
}

}  // namespace

AlmostInvarianceCertificate lp_certificate(const GeneratingSet& S, const NormFunctional& norm, double p, int kMax,
                                           const LpCertificateOptions& opts) {
  const auto& spec = S.spec();
  require_free_abelian(spec, "lp_certificate");
  if (kMax < 1) fail(ErrorCode::InvalidArgument, "kmax must be >= 1");
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "p must be >= 1");
  AlmostInvarianceCertificate cert;
  cert.norm = norm.name();
  const SandwichCheck sandwich = check_norm_sandwich(spec, norm, p, opts.seed);
  {
    std::ostringstream os;
    os << "norm sandwich held on " << sandwich.samples << " seeded samples";
    cert.notes.push_back(os.str());
  }

  const int n = spec.rank;
  std::vector<double> series;
  for (int k = 1; k <= kMax; ++k) {
    const auto X = box_folner(n, k, opts.budget);
    const BetaVector beta = make_beta_certified(spec, X, norm);
    const Displacement d = displacement(spec, X, beta, S.elements(), norm, p);
    CertificateEntry e;
    e.k = k;
    e.vector = "box side " + std::to_string(k) + " in Z^" + std::to_string(n);
    e.vector_norm = module_norm(beta.beta, norm).estimate;
    e.displacement = d.value;
    e.bound = d.bound;
    e.pass = d.within && d.certified;
    e.extra = {{"size", static_cast<double>(X.size())}};
    cert.entries.push_back(std::move(e));
    series.push_back(d.value);
  }
  cert.decay_ok = eventually_decreasing(series);
  cert.slope = loglog_slope(cert.entries);

  if (p < 2.0) {
    cert.notes.push_back("strong Folner stages need p >= 2; none emitted");
    return cert;
  }
  for (int stage = 1; stage <= opts.stages; ++stage) {
    FolnerWitness w;
    try {
      w = strong_folner_witness(S, stage, p, opts.budget);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::BudgetExceeded) throw;
      cert.notes.push_back("stages stop at " + std::to_string(stage) + ": " + err.what());
      break;
    }
    const std::size_t constrained = std::min<std::size_t>(stage, S.size());
    const std::vector<Element> gens(S.elements().begin(), S.elements().begin() + static_cast<long>(constrained));
    const BetaVector beta = make_beta_certified(spec, w.X, norm);
    const Displacement d = displacement(spec, w.X, beta, gens, norm, p);
    CertificateEntry e;
    e.k = stage;
    std::ostringstream desc;
    desc << "stage box";
    for (int s : w.box_sides) desc << ' ' << s;
    e.vector = desc.str();
    e.vector_norm = module_norm(beta.beta, norm).estimate;
    e.displacement = d.value;
    e.bound = 2.0 / stage;
    const double universal = 2.0 * static_cast<double>(w.boundary_budget) / std::pow(static_cast<double>(w.size()), 1.0 / p);
    e.pass = d.within && d.certified && d.value <= e.bound * (1.0 + kRelSlack) && universal < e.bound;
    e.extra = {{"size", static_cast<double>(w.size())},
               {"boundary_budget", static_cast<double>(w.boundary_budget)},
               {"universal_bound", universal}};
    cert.stages.push_back(std::move(e));
  }
  return cert;
}

AlmostInvarianceCertificate bump_certificate(int n, int iMax, const std::vector<Element>& monomials,
                                             const BumpCertificateOptions& opts) {
  if (iMax < 1) fail(ErrorCode::InvalidArgument, "imax must be >= 1");
  if (monomials.empty()) fail(ErrorCode::InvalidArgument, "bump certificate needs at least one monomial");
  const GroupSpec spec = GroupSpec::free_abelian(n);
  for (const auto& m : monomials) validate(spec, m);

  AlmostInvarianceCertificate cert;
  cert.norm = "op";
  std::vector<std::vector<double>> series(monomials.size());
  for (int i = 1; i <= iMax; ++i) {
    const TorusBump f(i, n);
    const int res = opts.resolution > 0 ? opts.resolution : f.min_resolution();
    const CertifiedValue nrm = certified_sup(bump(i, n, res));
    const bool norm_ok = nrm.certified && nrm.lower >= 1.0 - opts.slack && nrm.upper <= 1.0 + opts.slack;
    for (std::size_t j = 0; j < monomials.size(); ++j) {
      const auto& m = monomials[j];
      const CertifiedValue disp = certified_bump_displacement(f, m, opts.eps);
      CertificateEntry e;
      e.k = i;
      e.vector = "bump " + std::to_string(i) + " shifted by z^(" + format_exponents(m) + ")";
      e.vector_norm = nrm.estimate;
      e.displacement = disp.upper;
      e.bound = static_cast<double>(word_length(spec, m)) / i;
      e.pass = norm_ok && disp.certified && disp.upper <= e.bound + opts.slack;
      e.extra = {{"norm_lower", nrm.lower},
                 {"norm_upper", nrm.upper},
                 {"displacement_lower", disp.lower},
                 {"resolution", static_cast<double>(res)}};
      series[j].push_back(disp.upper);
      cert.entries.push_back(std::move(e));
    }
  }
  for (const auto& s : series) cert.decay_ok = cert.decay_ok && eventually_decreasing(s);
  if (monomials.size() == 1) cert.slope = loglog_slope(cert.entries);
  return cert;
}

std::vector<ProbeRecord> nonamenability_probe(const GroupSpec& spec, int rMax, std::size_t budget) {
  if (spec.family != Family::Free) fail(ErrorCode::InvalidArgument, "the probe runs on free groups");
  if (rMax < 0) fail(ErrorCode::InvalidArgument, "radius must be >= 0");
  const auto S = standard_generators(spec);
  std::vector<ProbeRecord> out;
  for (int r = 0; r <= rMax; ++r) {
    const auto X = ball(S, r, budget);
    ProbeRecord rec;
    rec.radius = r;
    rec.size = X.size();
    for (const auto& s : S) rec.boundary = std::max(rec.boundary, boundary_size(spec, X, s));
    rec.ratio = static_cast<double>(rec.boundary) / static_cast<double>(rec.size);
    out.push_back(rec);
  }
  return out;
}

}  // namespace grpcoh
