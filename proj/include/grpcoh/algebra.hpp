#pragma once

// Sparse group-algebra arithmetic. A formal sum is a finitely supported map
// Element -> coefficient stored as a vector of terms sorted by element.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "grpcoh/error.hpp"
#include "grpcoh/groups.hpp"
#include "grpcoh/scalar.hpp"

namespace grpcoh {

template <class C>
class BasicFormalSum {
 public:
  using Coeff = C;
  using Term = std::pair<Element, C>;
  using Traits = CoeffTraits<C>;

  BasicFormalSum() = default;
  explicit BasicFormalSum(GroupSpec spec) : spec_(spec) {}

  /// Duplicate elements are summed; negligible coefficients are dropped.
  BasicFormalSum(GroupSpec spec, std::vector<Term> terms) : spec_(spec) {
    for (const auto& t : terms) validate(spec_, t.first);
    assign_unchecked(std::move(terms));
  }

  static BasicFormalSum delta(const GroupSpec& spec, const Element& g, C c = Traits::one()) {
    return BasicFormalSum(spec, {{g, std::move(c)}});
  }

  const GroupSpec& spec() const { return spec_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  C coefficient(const Element& g) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                               [](const Term& t, const Element& e) { return t.first < e; });
    if (it != terms_.end() && it->first == g) return it->second;
    return Traits::zero();
  }

  friend bool operator==(const BasicFormalSum& a, const BasicFormalSum& b) {
    return a.spec_ == b.spec_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicFormalSum& a, const BasicFormalSum& b) { return !(a == b); }

  /// Elements must be valid for spec; skips validation.
  static BasicFormalSum from_trusted(const GroupSpec& spec, std::vector<Term> terms) {
    BasicFormalSum out(spec);
    out.assign_unchecked(std::move(terms));
    return out;
  }

 private:
  void assign_unchecked(std::vector<Term> terms) {
    auto not_less = [](const Term& a, const Term& b) { return !(a.first < b.first); };
    if (std::adjacent_find(terms.begin(), terms.end(), not_less) == terms.end()) {
      std::erase_if(terms, [](const Term& t) { return Traits::negligible(t.second); });
      terms_ = std::move(terms);
      return;
    }
    auto less = [](const Term& a, const Term& b) { return a.first < b.first; };
    if (!std::is_sorted(terms.begin(), terms.end(), less)) std::stable_sort(terms.begin(), terms.end(), less);
    terms_.clear();
    terms_.reserve(terms.size());
    for (auto& t : terms) {
      if (!terms_.empty() && terms_.back().first == t.first) {
        terms_.back().second += t.second;
      } else {
        if (!terms_.empty() && Traits::negligible(terms_.back().second)) terms_.pop_back();
        terms_.push_back(std::move(t));
      }
    }
    if (!terms_.empty() && Traits::negligible(terms_.back().second)) terms_.pop_back();
  }

  GroupSpec spec_;
  std::vector<Term> terms_;
};

using FormalSum = BasicFormalSum<Complex>;
using ExactSum = BasicFormalSum<GaussianRational>;

inline void require_same_spec(const GroupSpec& a, const GroupSpec& b) {
  if (!(a == b)) fail(ErrorCode::RankMismatch, "formal sums over " + describe(a) + " and " + describe(b));
}

/// c1*a + c2*b, pruned.
template <class C>
BasicFormalSum<C> linear_combine(const C& c1, const BasicFormalSum<C>& a, const C& c2,
                                 const BasicFormalSum<C>& b) {
  require_same_spec(a.spec(), b.spec());
  using Term = typename BasicFormalSum<C>::Term;
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.emplace_back(ia->first, c1 * ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, c2 * ib->second);
      ++ib;
    } else {
      out.emplace_back(ia->first, c1 * ia->second + c2 * ib->second);
      ++ia;
      ++ib;
    }
  }
  return BasicFormalSum<C>::from_trusted(a.spec(), std::move(out));
}

template <class C>
BasicFormalSum<C> operator+(const BasicFormalSum<C>& a, const BasicFormalSum<C>& b) {
  return linear_combine(CoeffTraits<C>::one(), a, CoeffTraits<C>::one(), b);
}

template <class C>
BasicFormalSum<C> operator-(const BasicFormalSum<C>& a, const BasicFormalSum<C>& b) {
  return linear_combine(CoeffTraits<C>::one(), a, C(-CoeffTraits<C>::one()), b);
}

template <class C>
BasicFormalSum<C> scale(const C& c, const BasicFormalSum<C>& a) {
  using Term = typename BasicFormalSum<C>::Term;
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& [g, x] : a) out.emplace_back(g, c * x);
  return BasicFormalSum<C>::from_trusted(a.spec(), std::move(out));
}

/// Bilinear extension of the group law.
template <class C>
BasicFormalSum<C> convolve(const BasicFormalSum<C>& a, const BasicFormalSum<C>& b) {
  require_same_spec(a.spec(), b.spec());
  using Term = typename BasicFormalSum<C>::Term;
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& [g, x] : a) {
    for (const auto& [h, y] : b) out.emplace_back(detail::multiply_unchecked(a.spec(), g, h), x * y);
  }
  return BasicFormalSum<C>::from_trusted(a.spec(), std::move(out));
}

/// (g.a)(x) = a(g^-1 x).
template <class C>
BasicFormalSum<C> left_translate(const Element& g, const BasicFormalSum<C>& a) {
  validate(a.spec(), g);
  using Term = typename BasicFormalSum<C>::Term;
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& [x, c] : a) out.emplace_back(detail::multiply_unchecked(a.spec(), g, x), c);
  return BasicFormalSum<C>::from_trusted(a.spec(), std::move(out));
}

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// ||a||_p = (sum |a_g|^p)^(1/p); p = kInfNorm gives max |a_g| (diagnostic only).
template <class C>
double lp_norm(const BasicFormalSum<C>& a, double p) {
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "lp_norm requires p >= 1");
  if (a.empty()) return 0.0;
  double scale_ = 0.0;
  for (const auto& t : a) scale_ = std::max(scale_, CoeffTraits<C>::magnitude(t.second));
  if (std::isinf(p) || scale_ == 0.0) return scale_;
  // scaled accumulation keeps large p from overflowing
  double acc = 0.0;
  for (const auto& t : a) acc += std::pow(CoeffTraits<C>::magnitude(t.second) / scale_, p);
  return scale_ * std::pow(acc, 1.0 / p);
}

/// Indicator sum of a finite set: sum_{x in X} x.
template <class C = Complex>
BasicFormalSum<C> indicator(const GroupSpec& spec, const std::vector<Element>& xs) {
  using Term = typename BasicFormalSum<C>::Term;
  std::vector<Term> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.emplace_back(x, CoeffTraits<C>::one());
  return BasicFormalSum<C>(spec, std::move(out));
}

FormalSum to_float(const ExactSum& a);
ExactSum to_exact(const FormalSum& a);

enum class NormKind { Lp, Operator };

/// The module norm ||.||_M: an l^p norm or the reduced-C* operator norm.
struct NormFunctional {
  NormKind kind = NormKind::Lp;
  double p = 2.0;
  double eps = 1e-9;  // certification tolerance for Operator

  static NormFunctional lp(double p);
  static NormFunctional op(double eps = 1e-9);
  std::string name() const;
};

}  // namespace grpcoh
