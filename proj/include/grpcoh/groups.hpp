#pragma once

// Finitely generated group families: free abelian groups Z^n and free
// groups F_k. Elements are immutable values; operations are pure.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace grpcoh {

enum class Family { FreeAbelian, Free };

struct GroupSpec {
  Family family = Family::FreeAbelian;
  int rank = 1;

  static GroupSpec free_abelian(int n);
  static GroupSpec free_group(int k);

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

std::string describe(const GroupSpec& spec);

/// FreeAbelian: exponent vector of length rank.
/// Free: reduced word of signed generator indices (+i is x_i, -i is x_i^-1,
/// 1-based).
class Element {
 public:
  using Storage = boost::container::small_vector<std::int32_t, 4>;

  Element() = default;
  explicit Element(Storage data) : data_(std::move(data)) {}
  Element(std::initializer_list<std::int32_t> xs) : data_(xs) {}

  const Storage& data() const { return data_; }
  std::size_t size() const { return data_.size(); }
  std::int32_t operator[](std::size_t i) const { return data_[i]; }

  friend bool operator==(const Element& a, const Element& b) { return a.data_ == b.data_; }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  friend bool operator<(const Element& a, const Element& b) {
    if (a.data_.size() != b.data_.size()) return a.data_.size() < b.data_.size();
    return a.data_ < b.data_;
  }

 private:
  Storage data_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

void validate(const GroupSpec& spec, const Element& a);
Element identity(const GroupSpec& spec);
bool is_identity(const GroupSpec& spec, const Element& a);
Element multiply(const GroupSpec& spec, const Element& a, const Element& b);
Element inverse(const GroupSpec& spec, const Element& a);

namespace detail {
// Hot-loop variant for callers that validated their inputs already.
Element multiply_unchecked(const GroupSpec& spec, const Element& a, const Element& b);
}  // namespace detail

/// Word length with respect to the standard generators.
long word_length(const GroupSpec& spec, const Element& a);

/// i-th standard basis vector (FreeAbelian) or generator word (Free), 0-based.
Element generator(const GroupSpec& spec, int i);

/// Symmetric, identity-free generating set. Construction symmetrizes.
class GeneratingSet {
 public:
  GeneratingSet(const GroupSpec& spec, const std::vector<Element>& elements);

  const GroupSpec& spec() const { return spec_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  GroupSpec spec_;
  std::vector<Element> elements_;
};

/// {+e_1, -e_1, ..., +e_n, -e_n} or {x_1, x_1^-1, ...}, in that order.
GeneratingSet standard_generators(const GroupSpec& spec);

inline constexpr std::size_t kDefaultElementBudget = 1'000'000;

/// Elements of word length <= r w.r.t. S, sorted. Throws BallTooLarge when
/// the enumeration would exceed `budget` elements.
std::vector<Element> ball(const GeneratingSet& gens, int r,
                          std::size_t budget = kDefaultElementBudget);

/// Elements of word length exactly r w.r.t. S, sorted.
std::vector<Element> sphere(const GeneratingSet& gens, int r,
                            std::size_t budget = kDefaultElementBudget);

/// Text encoding: "1,-2,0" for Z^n, "abA" for F_k (upper case = inverse).
std::string format_element(const GroupSpec& spec, const Element& a);
Element parse_element(const GroupSpec& spec, std::string_view text);

}  // namespace grpcoh
