#include <doctest.h>

#include <random>

#include "grpcoh/ends.hpp"

using namespace grpcoh;

namespace {

std::vector<int> radii(int lo, int hi) {
  std::vector<int> r;
  for (int i = lo; i <= hi; ++i) r.push_back(i);
  return r;
}

CocycleValues coboundary_data(const GeneratingSet& S, const ExactSum& f) {
  CocycleValues b;
  for (const auto& s : S) b.emplace(s, left_translate(s, f) - f);
  return b;
}

long pow3(int r) {
  long p = 1;
  for (int i = 0; i < r; ++i) p *= 3;
  return p;
}

}  // namespace

TEST_SUITE("ends") {
  TEST_CASE("complement components") {
    const auto Z = standard_generators(GroupSpec::free_abelian(1));
    const auto c = complement_components(Z, 10, {Element{-1}, Element{0}, Element{1}});
    REQUIRE(c.size() == 2);
    CHECK(c[0].meets_sphere);
    CHECK(c[1].meets_sphere);
    CHECK(c[0].vertices.size() == 9);

    const auto Z2 = standard_generators(GroupSpec::free_abelian(2));
    const auto c2 = complement_components(Z2, 10, ball(Z2, 1));
    CHECK(std::count_if(c2.begin(), c2.end(), [](const Component& x) { return x.meets_sphere; }) == 1);

    const auto e = complement_components(Z2, 5, {});
    REQUIRE(e.size() == 1);
    CHECK(e[0].vertices.size() == 61);
    CHECK_THROWS_AS(complement_components(Z, 3, {Element{7}}), Error);
  }

  TEST_CASE("ends of Z, Z^2 and F_2") {
    const auto Z = standard_generators(GroupSpec::free_abelian(1));
    const auto z = ends_estimate(Z, radii(6, 12), ball(Z, 1));
    for (const auto& r : z.records) CHECK(r.components == 2);
    CHECK(z.verdict == EndsVerdict::Two);
    CHECK(h1_cg_dimension(z).kind == H1Dimension::Kind::Finite);
    CHECK(h1_cg_dimension(z).value == 1);

    const auto Z2 = standard_generators(GroupSpec::free_abelian(2));
    const auto z2 = ends_estimate(Z2, radii(6, 12), ball(Z2, 1));
    for (const auto& r : z2.records) CHECK(r.components == 1);
    CHECK(z2.verdict == EndsVerdict::One);
    CHECK(h1_cg_dimension(z2).value == 0);
    CHECK_FALSE(h1_cg_dimension(z2).note.empty());

    const auto F2 = standard_generators(GroupSpec::free_group(2));
    const auto f = ends_estimate(F2, radii(3, 7), ball(F2, 1));
    for (const auto& r : f.records) CHECK(r.components == 12);
    CHECK(f.verdict == EndsVerdict::Growing);
    CHECK(h1_cg_dimension(f).kind == H1Dimension::Kind::Infinite);
    CHECK(std::string(verdict_name(f.verdict)) == "growing");
  }

  TEST_CASE("free group counts follow the tree") {
    // removing ball(r) leaves one subtree per word of length r + 1
    const auto F2 = standard_generators(GroupSpec::free_group(2));
    for (int r = 0; r <= 5; ++r) {
      const auto e = ends_estimate(F2, {r + 1, r + 2}, ball(F2, r));
      for (const auto& rec : e.records) CHECK(rec.components == static_cast<std::size_t>(4 * pow3(r)));
    }
  }

  TEST_CASE("counts are monotone in the removed set") {
    const auto F2 = standard_generators(GroupSpec::free_group(2));
    std::size_t prev = 0;
    for (int r = 0; r <= 4; ++r) {
      const auto e = ends_estimate(F2, {6}, ball(F2, r));
      CHECK(e.records[0].components >= prev);
      prev = e.records[0].components;
    }
  }

  TEST_CASE("short or unstable runs stay undetermined") {
    const auto Z = standard_generators(GroupSpec::free_abelian(1));
    const auto e = ends_estimate(Z, {4, 5}, ball(Z, 1));
    CHECK(e.verdict == EndsVerdict::Undetermined);
    CHECK(h1_cg_dimension(e).kind == H1Dimension::Kind::Unknown);
  }

  TEST_CASE("integrate delta on Z") {
    const auto z1 = GroupSpec::free_abelian(1);
    const auto Z = standard_generators(z1);
    CocycleValues b;
    b.emplace(Element{1}, ExactSum(z1, {{Element{1}, 1}, {Element{0}, -1}}));
    const auto p = integrate_coboundary(Z, b, 8);
    CHECK(p.consistent);
    // a_0 - a_e relative to the far constant: a_0 = c + 1 with c = -1 here
    CHECK(p.coefficients.at(Element{0}) == GaussianRational(0));
    CHECK(p.coefficients.at(Element{5}) == GaussianRational(-1));
    CHECK(p.coefficients.at(Element{-5}) == GaussianRational(-1));
    const auto d = finite_support_decision(p, ends_estimate(Z, radii(5, 8), p.support_union()));
    CHECK(d.finite);
    REQUIRE(d.reconstructed.has_value());
    CHECK(*d.reconstructed == ExactSum::delta(z1, Element{0}));
    CHECK(d.sphere_components == 2);
  }

  TEST_CASE("zero cocycle integrates to zero") {
    const auto z1 = GroupSpec::free_abelian(1);
    const auto Z = standard_generators(z1);
    CocycleValues b;
    b.emplace(Element{1}, ExactSum(z1));
    const auto p = integrate_coboundary(Z, b, 6);
    for (const auto& [x, a] : p.coefficients) CHECK(a.is_zero());
    const auto d = finite_support_decision(p, ends_estimate(Z, radii(3, 6), {Element{0}}));
    CHECK(d.finite);
    CHECK(d.reconstructed->empty());
  }

  TEST_CASE("sign jump is ambiguous") {
    const auto z1 = GroupSpec::free_abelian(1);
    const auto Z = standard_generators(z1);
    CocycleValues b;
    b.emplace(Element{1}, ExactSum::delta(z1, Element{0}));
    const auto p = integrate_coboundary(Z, b, 8);
    CHECK(p.consistent);
    try {
      (void)finite_support_decision(p, ends_estimate(Z, radii(5, 8), p.support_union()));
      FAIL("expected AmbiguousNormalization");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AmbiguousNormalization);
    }
  }

  TEST_CASE("non-cocycle data is inconsistent") {
    const auto z2 = GroupSpec::free_abelian(2);
    const auto S = standard_generators(z2);
    CocycleValues b;
    b.emplace(Element{1, 0}, ExactSum::delta(z2, Element{0, 0}));
    b.emplace(Element{0, 1}, ExactSum(z2));
    try {
      (void)integrate_coboundary(S, b, 4);
      FAIL("expected InconsistentData");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InconsistentData);
    }
    const auto loose = integrate_coboundary(S, b, 4, false);
    CHECK_FALSE(loose.consistent);
    CHECK(loose.violation.has_value());
  }

  TEST_CASE("random round trips on Z^2 and F_2") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> c(-2, 2);
    std::uniform_int_distribution<int> q(-9, 9);
    const auto z2 = GroupSpec::free_abelian(2);
    const auto S = standard_generators(z2);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<ExactSum::Term> t;
      for (int i = 0; i < 5; ++i) t.emplace_back(Element{c(rng), c(rng)}, GaussianRational(Rational(q(rng), 7)));
      const ExactSum f(z2, t);
      const auto p = integrate_coboundary(S, coboundary_data(S, f), 8);
      auto F = ball(S, 5);
      const auto d = finite_support_decision(p, ends_estimate(S, radii(5, 8), F));
      REQUIRE(d.reconstructed.has_value());
      CHECK(*d.reconstructed == f);
    }

    const auto f2 = GroupSpec::free_group(2);
    const auto T = standard_generators(f2);
    const ExactSum f(f2, {{parse_element(f2, "ab"), 3}, {identity(f2), -1}});
    const auto p = integrate_coboundary(T, coboundary_data(T, f), 6);
    const auto d = finite_support_decision(p, ends_estimate(T, radii(4, 6), ball(T, 3)));
    CHECK(*d.reconstructed == f);
  }
}
