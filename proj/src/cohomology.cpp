#include "grpcoh/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_map>

#include "grpcoh/torus.hpp"

namespace grpcoh {

namespace {

void require_exponent_rank(const ExactSum& f, int n) {
  require_free_abelian(f.spec(), "cohomology");
  if (f.spec().rank != n) fail(ErrorCode::RankMismatch, "expected a sum over Z^" + std::to_string(n));
}

}  // namespace

ExactSum monomial(int n, const Element& m, GaussianRational c) {
  return ExactSum::delta(GroupSpec::free_abelian(n), m, std::move(c));
}

ExactSum times_z_minus_one(const ExactSum& f, int j) {
  require_free_abelian(f.spec(), "times_z_minus_one");
  if (j < 0 || j >= f.spec().rank) fail(ErrorCode::InvalidArgument, "generator index out of range");
  return left_translate(generator(f.spec(), j), f) - f;
}

bool is_cocycle(const OneCocycleData& c) {
  if (c.n < 1 || static_cast<int>(c.values.size()) != c.n) {
    fail(ErrorCode::InvalidArgument, "cocycle data needs one value per generator");
  }
  for (const auto& v : c.values) require_exponent_rank(v, c.n);
  for (int i = 0; i < c.n; ++i) {
    for (int j = i + 1; j < c.n; ++j) {
      if (times_z_minus_one(c.values[j], i) != times_z_minus_one(c.values[i], j)) return false;
    }
  }
  return true;
}

OneCocycleData coboundary(const ExactSum& alpha) {
  require_free_abelian(alpha.spec(), "coboundary");
  OneCocycleData c;
  c.n = alpha.spec().rank;
  for (int i = 0; i < c.n; ++i) c.values.push_back(times_z_minus_one(alpha, i));
  return c;
}

// ---------------------------------------------------------------------------
// Koszul complex

KoszulComplex::KoszulComplex(int n) : n_(n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "rank must be >= 1");
  if (n > 16) fail(ErrorCode::InvalidArgument, "Koszul complexes are limited to rank 16");
  subsets_.resize(n + 1);
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) subsets_[std::popcount(mask)].push_back(mask);
  d_.resize(n + 1);
  for (int k = 1; k <= n; ++k) {
    for (std::size_t col = 0; col < subsets_[k - 1].size(); ++col) {
      const std::uint32_t T = subsets_[k - 1][col];
      for (int j = 0; j < n; ++j) {
        if (T & (1U << j)) continue;
        const int below = std::popcount(T & ((1U << j) - 1U));
        d_[k].push_back({index_of(k, T | (1U << j)), static_cast<int>(col), below % 2 ? -1 : 1, j});
      }
    }
  }
}

int KoszulComplex::index_of(int k, std::uint32_t mask) const {
  const auto& s = subsets_.at(k);
  auto it = std::lower_bound(s.begin(), s.end(), mask);
  if (it == s.end() || *it != mask) fail(ErrorCode::InvalidArgument, "subset is not in the requested degree");
  return static_cast<int>(it - s.begin());
}

std::vector<ExactSum> KoszulComplex::apply(int k, const std::vector<ExactSum>& cochain) const {
  if (k < 1 || k > n_) fail(ErrorCode::InvalidArgument, "differential degree out of range");
  if (cochain.size() != dimension(k - 1)) fail(ErrorCode::InvalidArgument, "cochain has the wrong number of coordinates");
  const GroupSpec spec = GroupSpec::free_abelian(n_);
  for (const auto& c : cochain) require_exponent_rank(c, n_);
  std::vector<ExactSum> out(dimension(k), ExactSum(spec));
  for (const auto& e : differential(k)) {
    if (cochain[e.col].empty()) continue;
    const ExactSum term = times_z_minus_one(cochain[e.col], e.j);
    out[e.row] = e.sign > 0 ? out[e.row] + term : out[e.row] - term;
  }
  return out;
}

bool KoszulComplex::verify_dd_zero() const {
  const GroupSpec spec = GroupSpec::free_abelian(n_);
  for (int k = 1; k < n_; ++k) {
    for (std::size_t col = 0; col < dimension(k - 1); ++col) {
      std::vector<ExactSum> basis(dimension(k - 1), ExactSum(spec));
      basis[col] = ExactSum::delta(spec, identity(spec));
      for (const auto& c : apply(k + 1, apply(k, basis))) {
        if (!c.empty()) return false;
      }
    }
  }
  return true;
}

std::vector<int> KoszulComplex::top_basis_change() const {
  const std::uint32_t full = (1U << n_) - 1U;
  std::vector<int> eps(n_, 0);
  for (const auto& e : differential(n_)) {
    const std::uint32_t omitted = full & ~subsets_[n_ - 1][e.col];
    const int j = std::countr_zero(omitted);
    const int rho = j == 0 ? 1 : -1;
    eps[j] = e.sign * rho;
  }
  return eps;
}

KoszulComplex koszul_complex(int n) {
  KoszulComplex c(n);
  if (!c.verify_dd_zero()) throw std::logic_error("Koszul differentials do not compose to zero");
  return c;
}

// ---------------------------------------------------------------------------
// Augmentation ideal

AugmentationReduction reduce_mod_augmentation_ideal(const ExactSum& f) {
  require_free_abelian(f.spec(), "reduce_mod_augmentation_ideal");
  const int n = f.spec().rank;
  AugmentationReduction out;
  std::vector<std::vector<ExactSum::Term>> terms(n);
  for (const auto& [m, c] : f) {
    out.remainder += c;
    // z^m - 1 = sum_i z_1^{m_1}...z_{i-1}^{m_{i-1}} (z_i^{m_i} - 1)
    Element::Storage prefix(n, 0);
    for (int i = 0; i < n; ++i) {
      const int k = m[i];
      if (k > 0) {
        for (int t = 0; t < k; ++t) {
          Element::Storage e(prefix);
          e[i] = t;
          terms[i].emplace_back(Element(std::move(e)), c);
        }
      } else if (k < 0) {
        for (int t = k; t < 0; ++t) {
          Element::Storage e(prefix);
          e[i] = t;
          terms[i].emplace_back(Element(std::move(e)), -c);
        }
      }
      prefix[i] = k;
    }
  }
  for (int i = 0; i < n; ++i) out.witnesses.emplace_back(f.spec(), std::move(terms[i]));
  return out;
}

ExactSum recombine(const AugmentationReduction& r, int n) {
  const GroupSpec spec = GroupSpec::free_abelian(n);
  if (static_cast<int>(r.witnesses.size()) != n) fail(ErrorCode::RankMismatch, "witness count does not match rank");
  ExactSum out = ExactSum::delta(spec, identity(spec), r.remainder);
  for (int i = 0; i < n; ++i) out = out + times_z_minus_one(r.witnesses[i], i);
  return out;
}

bool top_cohomology_class_equal(const ExactSum& f, const ExactSum& h) {
  require_same_spec(f.spec(), h.spec());
  return reduce_mod_augmentation_ideal(f).remainder == reduce_mod_augmentation_ideal(h).remainder;
}

ExactSum stabilize_embed(const ExactSum& f) {
  require_free_abelian(f.spec(), "stabilize_embed");
  std::vector<ExactSum::Term> terms;
  for (const auto& [m, c] : f) {
    Element::Storage e(m.data());
    e.push_back(0);
    terms.emplace_back(Element(std::move(e)), c);
  }
  return ExactSum::from_trusted(GroupSpec::free_abelian(f.spec().rank + 1), std::move(terms));
}

// ---------------------------------------------------------------------------
// Windowed exact linear algebra

namespace {

using SparseVec = std::vector<std::pair<std::uint32_t, Rational>>;  // sorted by index

// a += f * b
void axpy(SparseVec& a, const Rational& f, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(std::move(*ia++));
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, f * ib->second);
      ++ib;
    } else {
      Rational v = ia->second + f * ib->second;
      if (sgn(v) != 0) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  a.swap(out);
}

// Cochains of C^k supported in [-w, w]^n, flattened monomial-major.
class WindowSpace {
 public:
  WindowSpace(int n, int coords, int w) : n_(n), coords_(coords), w_(w), side_(2 * w + 1) {
    cells_ = 1;
    for (int d = 0; d < n; ++d) cells_ *= static_cast<std::size_t>(side_);
  }

  std::size_t size() const { return cells_ * static_cast<std::size_t>(coords_); }
  int coords() const { return coords_; }
  int half_width() const { return w_; }

  bool contains(const Element& m) const {
    for (int d = 0; d < n_; ++d) {
      if (std::abs(m[d]) > w_) return false;
    }
    return true;
  }

  std::uint32_t index(const Element& m, int coord) const {
    std::size_t cell = 0;
    for (int d = 0; d < n_; ++d) cell = cell * side_ + static_cast<std::size_t>(m[d] + w_);
    return static_cast<std::uint32_t>(cell * coords_ + coord);
  }

  std::pair<Element, int> locate(std::uint32_t idx) const {
    const int coord = static_cast<int>(idx % coords_);
    std::size_t cell = idx / coords_;
    Element::Storage m(n_);
    for (int d = n_ - 1; d >= 0; --d) {
      m[d] = static_cast<std::int32_t>(cell % side_) - w_;
      cell /= side_;
    }
    return {Element(std::move(m)), coord};
  }

  SparseVec flatten(const std::vector<ExactSum>& cochain) const {
    SparseVec out;
    for (int c = 0; c < coords_; ++c) {
      for (const auto& [m, v] : cochain[c]) {
        if (!contains(m)) fail(ErrorCode::InvalidArgument, "cochain leaves the window");
        if (sgn(v.im) != 0) fail(ErrorCode::InvalidArgument, "window solver works over the rationals");
        out.emplace_back(index(m, c), v.re);
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  std::vector<ExactSum> unflatten(const SparseVec& v) const {
    const GroupSpec spec = GroupSpec::free_abelian(n_);
    std::vector<std::vector<ExactSum::Term>> terms(coords_);
    for (const auto& [idx, x] : v) {
      auto [m, c] = locate(idx);
      terms[c].emplace_back(std::move(m), GaussianRational(x));
    }
    std::vector<ExactSum> out;
    for (auto& t : terms) out.push_back(ExactSum::from_trusted(spec, std::move(t)));
    return out;
  }

 private:
  int n_;
  int coords_;
  int w_;
  int side_;
  std::size_t cells_;
};

// Column reduction of d^k : C^{k-1}(domain window) -> C^k(codomain window),
// keeping the combination of original columns behind every reduced column.
class ReducedMap {
 public:
  ReducedMap(const KoszulComplex& K, int k, const WindowSpace& dom, const WindowSpace& cod) {
    // group entries by column so each domain basis vector maps in one pass
    std::vector<std::vector<KoszulComplex::Entry>> by_col(K.dimension(k - 1));
    for (const auto& e : K.differential(k)) by_col[e.col].push_back(e);
    for (std::uint32_t c = 0; c < dom.size(); ++c) {
      auto [m, coord] = dom.locate(c);
      SparseVec col;
      for (const auto& e : by_col[coord]) {
        Element::Storage up(m.data());
        up[e.j] += 1;
        col.emplace_back(cod.index(Element(std::move(up)), e.row), Rational(e.sign));
        col.emplace_back(cod.index(m, e.row), Rational(-e.sign));
      }
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      add_column(std::move(col), SparseVec{{c, Rational(1)}});
    }
  }

  // Kernel basis in domain coordinates.
  const std::vector<SparseVec>& kernel() const { return kernel_; }

  // y with d y = z, or false.
  bool solve(SparseVec z, SparseVec& y) const {
    y.clear();
    while (!z.empty()) {
      auto it = pivot_.find(z.back().first);
      if (it == pivot_.end()) return false;
      const auto& [r, v] = reduced_[it->second];
      const Rational f = z.back().second / r.back().second;
      axpy(z, -f, r);
      axpy(y, f, v);
    }
    return true;
  }

  std::size_t rank() const { return reduced_.size(); }

 private:
  void add_column(SparseVec col, SparseVec hist) {
    while (!col.empty()) {
      auto it = pivot_.find(col.back().first);
      if (it == pivot_.end()) break;
      const auto& [r, v] = reduced_[it->second];
      const Rational f = -col.back().second / r.back().second;
      axpy(col, f, r);
      axpy(hist, f, v);
    }
    if (col.empty()) {
      kernel_.push_back(std::move(hist));
      return;
    }
    pivot_.emplace(col.back().first, reduced_.size());
    reduced_.emplace_back(std::move(col), std::move(hist));
  }

  std::vector<std::pair<SparseVec, SparseVec>> reduced_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_;
  std::vector<SparseVec> kernel_;
};

std::string describe_cochain(const std::vector<ExactSum>& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << " | ";
    bool first = true;
    for (const auto& [m, v] : c[i]) {
      if (!first) os << " + ";
      first = false;
      os << v.to_string() << "*z^(" << format_element(c[i].spec(), m) << ")";
    }
    if (first) os << "0";
  }
  return os.str();
}

}  // namespace

CohomologyReport truncated_cohomology_check(int n, int k, int window, int pad) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "rank must be >= 1");
  if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "degree must satisfy 0 < k <= n");
  if (pad < 0 || window - pad < 1) fail(ErrorCode::InvalidArgument, "need window - pad >= 1");
  const KoszulComplex K = koszul_complex(n);
  const int inner = window - pad;
  CohomologyReport rep;
  rep.n = n;
  rep.k = k;
  rep.window = window;
  rep.pad = pad;

  const WindowSpace dom(n, static_cast<int>(K.dimension(k - 1)), window);
  const WindowSpace cod(n, static_cast<int>(K.dimension(k)), window + 1);
  const ReducedMap D(K, k, dom, cod);

  auto check_preimage = [&](const std::vector<ExactSum>& z) {
    SparseVec y;
    if (!D.solve(cod.flatten(z), y)) return false;
    // independent confirmation through the symbolic differential
    return K.apply(k, dom.unflatten(y)) == z;
  };

  if (k < n) {
    const WindowSpace in(n, static_cast<int>(K.dimension(k)), inner);
    const WindowSpace next(n, static_cast<int>(K.dimension(k + 1)), inner + 1);
    const ReducedMap Z(K, k + 1, in, next);
    rep.cocycle_dimension = Z.kernel().size();
    for (const auto& zv : Z.kernel()) {
      const auto z = in.unflatten(zv);
      ++rep.checked;
      for (const auto& c : K.apply(k + 1, z)) {
        if (!c.empty()) throw std::logic_error("kernel vector is not a cocycle");
      }
      if (!check_preimage(z)) rep.failures.push_back({describe_cochain(z), "no preimage in the padded window"});
    }
    return rep;
  }

  // top degree: delta_m - delta_e is a coboundary for every inner m, delta_e is not
  const GroupSpec spec = GroupSpec::free_abelian(n);
  const Element e = identity(spec);
  const WindowSpace in(n, 1, inner);
  for (std::uint32_t idx = 0; idx < in.size(); ++idx) {
    const Element m = in.locate(idx).first;
    if (m == e) continue;
    ++rep.checked;
    const std::vector<ExactSum> z{ExactSum::delta(spec, m) - ExactSum::delta(spec, e)};
    if (!check_preimage(z)) rep.failures.push_back({describe_cochain(z), "difference of monomials not in the image"});
  }
  ++rep.checked;
  SparseVec y;
  const std::vector<ExactSum> unit{ExactSum::delta(spec, e)};
  const bool unit_hit = D.solve(cod.flatten(unit), y);
  if (unit_hit) rep.failures.push_back({describe_cochain(unit), "delta_e lies in the image"});
  rep.cokernel_rank = rep.failures.empty() ? 1 : 0;
  return rep;
}

}  // namespace grpcoh
