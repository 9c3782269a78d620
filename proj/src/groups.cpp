#include "grpcoh/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <unordered_set>

#include "grpcoh/error.hpp"

namespace grpcoh {

GroupSpec GroupSpec::free_abelian(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "rank must be >= 1");
  return {Family::FreeAbelian, n};
}

GroupSpec GroupSpec::free_group(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "rank must be >= 1");
  if (k > 26) fail(ErrorCode::InvalidArgument, "free groups are limited to 26 generators");
  return {Family::Free, k};
}

std::string describe(const GroupSpec& spec) {
  return (spec.family == Family::FreeAbelian ? "Z^" : "F_") + std::to_string(spec.rank);
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL ^ e.size();
  for (auto x : e.data()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

void validate(const GroupSpec& spec, const Element& a) {
  if (spec.rank < 1) fail(ErrorCode::InvalidArgument, "rank must be >= 1");
  if (spec.family == Family::FreeAbelian) {
    if (static_cast<int>(a.size()) != spec.rank) {
      fail(ErrorCode::RankMismatch, "element has " + std::to_string(a.size()) +
                                        " coordinates, group " + describe(spec));
    }
    return;
  }
  const auto& w = a.data();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0 || std::abs(w[i]) > spec.rank) {
      fail(ErrorCode::RankMismatch, "generator index out of range for " + describe(spec));
    }
    if (i > 0 && w[i] == -w[i - 1]) fail(ErrorCode::InvalidArgument, "free word is not reduced");
  }
}

Element identity(const GroupSpec& spec) {
  if (spec.family == Family::FreeAbelian) return Element(Element::Storage(spec.rank, 0));
  return Element();
}

bool is_identity(const GroupSpec& spec, const Element& a) {
  if (spec.family == Family::Free) return a.size() == 0;
  return std::all_of(a.data().begin(), a.data().end(), [](auto x) { return x == 0; });
}

Element multiply(const GroupSpec& spec, const Element& a, const Element& b) {
  validate(spec, a);
  validate(spec, b);
  return detail::multiply_unchecked(spec, a, b);
}

Element detail::multiply_unchecked(const GroupSpec& spec, const Element& a, const Element& b) {
  if (spec.family == Family::FreeAbelian) {
    Element::Storage out(a.data());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return Element(std::move(out));
  }
  const auto& u = a.data();
  const auto& v = b.data();
  std::size_t cancel = 0;
  while (cancel < u.size() && cancel < v.size() && u[u.size() - 1 - cancel] == -v[cancel]) ++cancel;
  Element::Storage out(u.begin(), u.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(cancel), v.end());
  return Element(std::move(out));
}

Element inverse(const GroupSpec& spec, const Element& a) {
  validate(spec, a);
  Element::Storage out;
  if (spec.family == Family::FreeAbelian) {
    for (auto x : a.data()) out.push_back(-x);
  } else {
    for (auto it = a.data().rbegin(); it != a.data().rend(); ++it) out.push_back(-*it);
  }
  return Element(std::move(out));
}

long word_length(const GroupSpec& spec, const Element& a) {
  long len = 0;
  if (spec.family == Family::Free) return static_cast<long>(a.size());
  for (auto x : a.data()) len += std::abs(x);
  return len;
}

Element generator(const GroupSpec& spec, int i) {
  if (i < 0 || i >= spec.rank) fail(ErrorCode::InvalidArgument, "generator index out of range");
  if (spec.family == Family::FreeAbelian) {
    Element::Storage v(spec.rank, 0);
    v[i] = 1;
    return Element(std::move(v));
  }
  return Element({i + 1});
}

GeneratingSet::GeneratingSet(const GroupSpec& spec, const std::vector<Element>& elements)
    : spec_(spec) {
  auto add = [this](const Element& g) {
    if (std::find(elements_.begin(), elements_.end(), g) == elements_.end()) elements_.push_back(g);
  };
  for (const auto& s : elements) {
    validate(spec, s);
    if (is_identity(spec, s)) continue;
    add(s);
    add(inverse(spec, s));
  }
  if (elements_.empty()) fail(ErrorCode::InvalidArgument, "generating set is empty");
}

GeneratingSet standard_generators(const GroupSpec& spec) {
  std::vector<Element> gens;
  for (int i = 0; i < spec.rank; ++i) gens.push_back(generator(spec, i));
  return GeneratingSet(spec, gens);
}

namespace {

bool is_standard(const GeneratingSet& gens) {
  const auto& spec = gens.spec();
  if (gens.size() != static_cast<std::size_t>(2 * spec.rank)) return false;
  for (const auto& s : gens) {
    if (word_length(spec, s) != 1) return false;
  }
  return true;
}

// Exact ball sizes for the standard generators; used to fail before
// enumerating. Returns a saturated value on overflow.
double projected_ball_size(const GroupSpec& spec, int r) {
  if (spec.family == Family::Free) {
    const double q = 2.0 * spec.rank - 1.0;
    if (spec.rank == 1) return 2.0 * r + 1.0;
    return 1.0 + 2.0 * spec.rank * (std::pow(q, r) - 1.0) / (q - 1.0);
  }
  // |{x in Z^n : |x|_1 <= r}| = sum_k 2^k C(n,k) C(r,k)
  double total = 0.0;
  double cn = 1.0;
  double cr = 1.0;
  for (int k = 0; k <= spec.rank && k <= r; ++k) {
    if (k > 0) {
      cn = cn * (spec.rank - k + 1) / k;
      cr = cr * (r - k + 1) / k;
    }
    total += std::ldexp(cn * cr, k);
  }
  return total;
}

std::vector<std::vector<Element>> shells(const GeneratingSet& gens, int r, std::size_t budget) {
  if (r < 0) fail(ErrorCode::InvalidArgument, "radius must be >= 0");
  const auto& spec = gens.spec();
  if (is_standard(gens) && projected_ball_size(spec, r) > static_cast<double>(budget)) {
    fail(ErrorCode::BallTooLarge, "ball of radius " + std::to_string(r) + " in " + describe(spec) +
                                      " exceeds the element budget of " + std::to_string(budget));
  }
  std::unordered_set<Element, ElementHash> seen;
  std::vector<std::vector<Element>> out;
  out.push_back({identity(spec)});
  seen.insert(out.back().front());
  for (int k = 1; k <= r; ++k) {
    std::vector<Element> next;
    for (const auto& g : out.back()) {
      for (const auto& s : gens) {
        Element h = detail::multiply_unchecked(spec, s, g);
        if (seen.insert(h).second) {
          if (seen.size() > budget) {
            fail(ErrorCode::BallTooLarge, "ball enumeration exceeded the element budget of " +
                                              std::to_string(budget));
          }
          next.push_back(std::move(h));
        }
      }
    }
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

std::vector<Element> ball(const GeneratingSet& gens, int r, std::size_t budget) {
  std::vector<Element> all;
  for (auto& shell : shells(gens, r, budget)) {
    all.insert(all.end(), std::make_move_iterator(shell.begin()), std::make_move_iterator(shell.end()));
  }
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Element> sphere(const GeneratingSet& gens, int r, std::size_t budget) {
  auto sh = shells(gens, r, budget);
  auto last = std::move(sh.back());
  std::sort(last.begin(), last.end());
  return last;
}

std::string format_element(const GroupSpec& spec, const Element& a) {
  validate(spec, a);
  std::string out;
  if (spec.family == Family::FreeAbelian) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(a[i]);
    }
    return out;
  }
  for (auto x : a.data()) {
    out += static_cast<char>(x > 0 ? 'a' + (x - 1) : 'A' + (-x - 1));
  }
  return out;
}

Element parse_element(const GroupSpec& spec, std::string_view text) {
  Element::Storage v;
  if (spec.family == Family::FreeAbelian) {
    std::size_t pos = 0;
    while (true) {
      auto comma = text.find(',', pos);
      auto tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
      while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
      while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
      if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
      std::int32_t x = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), x);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
        fail(ErrorCode::ParseError, "bad Z^n element '" + std::string(text) + "'");
      }
      v.push_back(x);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    Element e(std::move(v));
    validate(spec, e);
    return e;
  }
  for (char c : text) {
    int idx = 0;
    if (c >= 'a' && c <= 'z') {
      idx = c - 'a' + 1;
    } else if (c >= 'A' && c <= 'Z') {
      idx = -(c - 'A' + 1);
    } else {
      fail(ErrorCode::ParseError, "bad free-group word '" + std::string(text) + "'");
    }
    if (std::abs(idx) > spec.rank) fail(ErrorCode::RankMismatch, "letter out of range for " + describe(spec));
    if (!v.empty() && v.back() == -idx) {
      v.pop_back();
    } else {
      v.push_back(idx);
    }
  }
  return Element(std::move(v));
}

}  // namespace grpcoh
