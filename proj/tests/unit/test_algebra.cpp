#include <doctest.h>

#include <map>
#include <random>

#include "grpcoh/algebra.hpp"

using namespace grpcoh;

namespace {

FormalSum random_sum(std::mt19937_64& rng, const GroupSpec& spec, int terms, int width) {
  std::uniform_int_distribution<int> coord(-width, width);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::vector<FormalSum::Term> out;
  for (int t = 0; t < terms; ++t) {
    Element::Storage v(spec.rank);
    for (auto& x : v) x = coord(rng);
    out.emplace_back(Element(v), Complex(coeff(rng), coeff(rng)));
  }
  return FormalSum(spec, out);
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("sums merge duplicates and prune") {
    const auto z1 = GroupSpec::free_abelian(1);
    const FormalSum a(z1, {{Element{1}, 2.0}, {Element{0}, 1.0}, {Element{1}, -2.0}, {Element{2}, 1e-14}});
    CHECK(a.size() == 1);
    CHECK(a.coefficient(Element{0}) == Complex(1.0));
    CHECK(a.coefficient(Element{5}) == Complex(0.0));
  }

  TEST_CASE("convolution examples") {
    const auto z1 = GroupSpec::free_abelian(1);
    const auto one_plus_x = FormalSum(z1, {{Element{0}, 1.0}, {Element{1}, 1.0}});
    const auto sq = convolve(one_plus_x, one_plus_x);
    CHECK(sq == FormalSum(z1, {{Element{0}, 1.0}, {Element{1}, 2.0}, {Element{2}, 1.0}}));
    const auto x_minus_1 = FormalSum(z1, {{Element{1}, 1.0}, {Element{0}, -1.0}});
    const auto x_inv_minus_1 = FormalSum(z1, {{Element{-1}, 1.0}, {Element{0}, -1.0}});
    CHECK(convolve(x_minus_1, x_inv_minus_1) ==
          FormalSum(z1, {{Element{1}, -1.0}, {Element{0}, 2.0}, {Element{-1}, -1.0}}));

    const auto f2 = GroupSpec::free_group(2);
    const auto a = FormalSum::delta(f2, parse_element(f2, "a"));
    const auto b = FormalSum::delta(f2, parse_element(f2, "b"));
    CHECK(convolve(a, b) != convolve(b, a));
    CHECK(convolve(a, FormalSum::delta(f2, parse_element(f2, "A"))) == FormalSum::delta(f2, identity(f2)));
  }

  TEST_CASE("convolution matches a naive map-based product") {
    std::mt19937_64 rng(3);
    const auto z2 = GroupSpec::free_abelian(2);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_sum(rng, z2, 6, 3);
      const auto b = random_sum(rng, z2, 6, 3);
      std::map<std::pair<int, int>, Complex> naive;
      for (const auto& [g, x] : a)
        for (const auto& [h, y] : b) naive[{g[0] + h[0], g[1] + h[1]}] += x * y;
      const auto c = convolve(a, b);
      for (const auto& [k, v] : naive) {
        CHECK(std::abs(c.coefficient(Element{k.first, k.second}) - v) < 1e-12);
      }
      for (const auto& [g, x] : c) CHECK(naive.count({g[0], g[1]}) == 1);
    }
  }

  TEST_CASE("exact convolution is associative in F_2") {
    const auto f2 = GroupSpec::free_group(2);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> letter(0, 3);
    std::uniform_int_distribution<int> c(-4, 4);
    auto word = [&] {
      std::string w;
      for (int i = 0; i < 3; ++i) w.push_back("abAB"[letter(rng)]);
      return parse_element(f2, w);
    };
    auto rand = [&] {
      std::vector<ExactSum::Term> t;
      for (int i = 0; i < 4; ++i) t.emplace_back(word(), GaussianRational(Rational(c(rng), 3), Rational(c(rng))));
      return ExactSum(f2, t);
    };
    for (int i = 0; i < 20; ++i) {
      const auto a = rand(), b = rand(), d = rand();
      CHECK(convolve(convolve(a, b), d) == convolve(a, convolve(b, d)));
    }
  }

  TEST_CASE("rank mismatch") {
    const auto a = FormalSum::delta(GroupSpec::free_abelian(1), Element{0});
    const auto b = FormalSum::delta(GroupSpec::free_abelian(2), Element{0, 0});
    try {
      (void)convolve(a, b);
      FAIL("expected RankMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::RankMismatch);
    }
    CHECK_THROWS_AS(a + b, Error);
  }

  TEST_CASE("norms") {
    const auto z1 = GroupSpec::free_abelian(1);
    const FormalSum a(z1, {{Element{0}, 3.0}, {Element{1}, Complex(0.0, 4.0)}});
    CHECK(lp_norm(a, 1.0) == doctest::Approx(7.0));
    CHECK(lp_norm(a, 2.0) == doctest::Approx(5.0));
    CHECK(lp_norm(a, kInfNorm) == doctest::Approx(4.0));
    CHECK(lp_norm(FormalSum(z1), 2.0) == 0.0);
    CHECK_THROWS_AS(lp_norm(a, 0.5), Error);
    // large exponents stay finite
    const FormalSum big(z1, {{Element{0}, 1e200}, {Element{1}, 1e200}});
    CHECK(lp_norm(big, 3.0) == doctest::Approx(1e200 * std::cbrt(2.0)));
  }

  TEST_CASE("left translation and indicators") {
    const auto z2 = GroupSpec::free_abelian(2);
    const auto x = indicator(z2, {Element{0, 0}, Element{1, 0}});
    const auto y = left_translate(Element{0, 1}, x);
    CHECK(y == indicator(z2, {Element{0, 1}, Element{1, 1}}));
    CHECK(lp_norm(y, 2.0) == doctest::Approx(std::sqrt(2.0)));
  }

  TEST_CASE("exact and float conversion") {
    const auto z1 = GroupSpec::free_abelian(1);
    const FormalSum a(z1, {{Element{0}, Complex(0.5, -0.25)}, {Element{3}, 0.1}});
    CHECK(to_float(to_exact(a)) == a);
    const auto e = to_exact(a);
    CHECK(e.coefficient(Element{0}) == GaussianRational(Rational(1, 2), Rational(-1, 4)));
  }
}
