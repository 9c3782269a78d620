#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "grpcoh/error.hpp"
#include "grpcoh/groups.hpp"

using namespace grpcoh;

namespace {

// Independent free reduction on the text encoding.
std::string reduce_word(const std::string& w) {
  std::string out;
  for (char c : w) {
    const char inv = static_cast<char>(std::islower(c) ? std::toupper(c) : std::tolower(c));
    if (!out.empty() && out.back() == inv) {
      out.pop_back();
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string random_word(std::mt19937_64& rng, int k, int len) {
  std::uniform_int_distribution<int> letter(0, 2 * k - 1);
  std::string w;
  for (int i = 0; i < len; ++i) {
    const int l = letter(rng);
    w.push_back(static_cast<char>(l < k ? 'a' + l : 'A' + (l - k)));
  }
  return w;
}

}  // namespace

TEST_SUITE("groups") {
  TEST_CASE("multiplication examples") {
    const auto z2 = GroupSpec::free_abelian(2);
    CHECK(multiply(z2, Element{1, 2}, Element{3, -1}) == Element{4, 1});
    const auto f2 = GroupSpec::free_group(2);
    CHECK(format_element(f2, multiply(f2, parse_element(f2, "ab"), parse_element(f2, "B"))) == "a");
    CHECK(multiply(f2, parse_element(f2, "abA"), identity(f2)) == parse_element(f2, "abA"));
    CHECK(multiply(z2, Element{5, -7}, identity(z2)) == Element{5, -7});
  }

  TEST_CASE("inverse and identity") {
    const auto f3 = GroupSpec::free_group(3);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
      const auto a = parse_element(f3, random_word(rng, 3, 9));
      CHECK(is_identity(f3, multiply(f3, a, inverse(f3, a))));
      CHECK(is_identity(f3, multiply(f3, inverse(f3, a), a)));
    }
    CHECK(identity(GroupSpec::free_abelian(3)) == Element{0, 0, 0});
    CHECK(identity(f3).size() == 0);
  }

  TEST_CASE("free products agree with naive reduction and associate") {
    const auto f2 = GroupSpec::free_group(2);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
      const auto u = random_word(rng, 2, 7);
      const auto v = random_word(rng, 2, 7);
      const auto w = random_word(rng, 2, 5);
      const auto a = parse_element(f2, u);
      const auto b = parse_element(f2, v);
      const auto c = parse_element(f2, w);
      CHECK(format_element(f2, multiply(f2, a, b)) == reduce_word(u + v));
      CHECK(multiply(f2, multiply(f2, a, b), c) == multiply(f2, a, multiply(f2, b, c)));
    }
  }

  TEST_CASE("validation") {
    const auto z2 = GroupSpec::free_abelian(2);
    CHECK_THROWS_AS(multiply(z2, Element{1}, Element{1, 2}), Error);
    try {
      validate(z2, Element{1, 2, 3});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RankMismatch);
    }
    const auto f2 = GroupSpec::free_group(2);
    CHECK_THROWS_AS(validate(f2, Element{1, -1}), Error);
    CHECK_THROWS_AS(validate(f2, Element{3}), Error);
    CHECK_THROWS_AS(GroupSpec::free_abelian(0), Error);
    CHECK_THROWS_AS(parse_element(f2, "ac"), Error);
    CHECK_THROWS_AS(parse_element(z2, "1,x"), Error);
  }

  TEST_CASE("generating sets are symmetric and identity free") {
    const auto z2 = GroupSpec::free_abelian(2);
    const GeneratingSet S(z2, {Element{1, 0}, Element{0, 0}, Element{0, 1}});
    CHECK(S.size() == 4);
    for (const auto& s : S) {
      CHECK_FALSE(is_identity(z2, s));
      CHECK(std::find(S.begin(), S.end(), inverse(z2, s)) != S.end());
    }
    CHECK_THROWS_AS(GeneratingSet(z2, {Element{0, 0}}), Error);
  }

  TEST_CASE("ball sizes") {
    // |{x in Z^2 : |x|_1 <= r}| = 2r^2 + 2r + 1; |B_r(F_2)| = 2 * 3^r - 1
    const auto z2 = standard_generators(GroupSpec::free_abelian(2));
    const auto f2 = standard_generators(GroupSpec::free_group(2));
    for (int r = 0; r <= 6; ++r) {
      CHECK(ball(z2, r).size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
      long p = 1;
      for (int i = 0; i < r; ++i) p *= 3;
      CHECK(ball(f2, r).size() == static_cast<std::size_t>(2 * p - 1));
    }
    CHECK(ball(standard_generators(GroupSpec::free_abelian(1)), 2).size() == 5);
    CHECK(ball(f2, 1).size() == 5);
    CHECK(sphere(z2, 3).size() == 12);
  }

  TEST_CASE("ball elements match brute force in Z^3") {
    const auto S = standard_generators(GroupSpec::free_abelian(3));
    std::set<Element> expect;
    for (int a = -3; a <= 3; ++a)
      for (int b = -3; b <= 3; ++b)
        for (int c = -3; c <= 3; ++c)
          if (std::abs(a) + std::abs(b) + std::abs(c) <= 3) expect.insert(Element{a, b, c});
    const auto got = ball(S, 3);
    CHECK(std::set<Element>(got.begin(), got.end()) == expect);
    CHECK(std::is_sorted(got.begin(), got.end()));
  }

  TEST_CASE("ball budget") {
    const auto f2 = standard_generators(GroupSpec::free_group(2));
    try {
      (void)ball(f2, 20);
      FAIL("expected BallTooLarge");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BallTooLarge);
    }
    CHECK_THROWS_AS(ball(f2, 5, 100), Error);
    // non-standard generators are caught during enumeration
    const GeneratingSet odd(GroupSpec::free_abelian(1), {Element{2}, Element{3}});
    CHECK_THROWS_AS(ball(odd, 50, 30), Error);
  }

  TEST_CASE("text encoding round trip") {
    const auto z3 = GroupSpec::free_abelian(3);
    CHECK(format_element(z3, Element{1, -2, 0}) == "1,-2,0");
    CHECK(parse_element(z3, " 1, -2 ,0") == Element{1, -2, 0});
    const auto f3 = GroupSpec::free_group(3);
    CHECK(format_element(f3, parse_element(f3, "abAc")) == "abAc");
    CHECK(format_element(f3, parse_element(f3, "aAb")) == "b");
    CHECK(word_length(z3, Element{1, -2, 0}) == 3);
  }
}
