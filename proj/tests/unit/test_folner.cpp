#include <doctest.h>

#include <random>
#include <set>

#include "grpcoh/folner.hpp"

using namespace grpcoh;

namespace {

std::size_t boundary_by_set(const GroupSpec& spec, const std::vector<Element>& X, const Element& g) {
  std::set<Element> gx;
  for (const auto& x : X) gx.insert(multiply(spec, g, x));
  std::set<Element> xs(X.begin(), X.end());
  std::size_t count = 0;
  for (const auto& x : xs) count += gx.count(x) == 0;
  return count;
}

// F_2 balls as strings, reduced by hand.
std::set<std::string> free_ball(int r) {
  std::set<std::string> out{""};
  std::set<std::string> frontier{""};
  for (int i = 0; i < r; ++i) {
    std::set<std::string> next;
    for (const auto& w : frontier) {
      for (char c : std::string("abAB")) {
        const char inv = static_cast<char>(std::islower(c) ? std::toupper(c) : std::tolower(c));
        if (!w.empty() && w.back() == inv) continue;
        next.insert(w + c);
      }
    }
    out.insert(next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

std::string left_multiply(char s, const std::string& w) {
  const char inv = static_cast<char>(std::islower(s) ? std::toupper(s) : std::tolower(s));
  if (!w.empty() && w.front() == inv) return w.substr(1);
  return s + w;
}

}  // namespace

TEST_SUITE("folner") {
  TEST_CASE("boxes") {
    const auto b = box_folner(1, 10);
    REQUIRE(b.size() == 10);
    CHECK(b.front() == Element{0});
    CHECK(b.back() == Element{9});
    CHECK(box_folner(2, 3).size() == 9);
    CHECK(box_folner(1, 1) == std::vector<Element>{Element{0}});
    CHECK_THROWS_AS(box_folner(3, 200), Error);
  }

  TEST_CASE("boundary examples") {
    const auto z1 = GroupSpec::free_abelian(1);
    const auto z2 = GroupSpec::free_abelian(2);
    CHECK(boundary_size(z1, box_folner(1, 10), Element{1}) == 1);
    CHECK(boundary_size(z2, box_folner(2, 10), Element{1, 0}) == 10);
    CHECK(boundary_size(z2, box_folner(2, 10), Element{0, 0}) == 0);
    // duplicates and order do not matter
    CHECK(boundary_size(z1, {Element{3}, Element{1}, Element{3}, Element{2}}, Element{-1}) == 1);
  }

  TEST_CASE("l1 displacement equals twice the boundary") {
    std::mt19937_64 rng(41);
    const auto z2 = GroupSpec::free_abelian(2);
    std::uniform_int_distribution<int> c(-4, 4);
    std::uniform_int_distribution<int> size(1, 30);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Element> X;
      const int m = size(rng);
      for (int i = 0; i < m; ++i) X.push_back(Element{c(rng), c(rng)});
      std::sort(X.begin(), X.end());
      X.erase(std::unique(X.begin(), X.end()), X.end());
      const Element g{c(rng), c(rng)};
      const auto ind = indicator(z2, X);
      const auto disp = left_translate(g, ind) - ind;
      const auto b = boundary_size(z2, X, g);
      CHECK(b == boundary_by_set(z2, X, g));
      CHECK(lp_norm(disp, 1.0) == doctest::Approx(2.0 * static_cast<double>(b)));
    }
  }

  TEST_CASE("box boundary is one face") {
    for (int k = 1; k <= 12; ++k) {
      CHECK(boundary_size(GroupSpec::free_abelian(2), box_folner(2, k), Element{0, -1}) == static_cast<std::size_t>(k));
      CHECK(boundary_size(GroupSpec::free_abelian(3), box_folner(3, k), Element{0, 0, 1}) ==
            static_cast<std::size_t>(k * k));
    }
  }

  TEST_CASE("witness counts") {
    const auto S = standard_generators(GroupSpec::free_abelian(2));
    const auto w = folner_witness(S, box_folner(2, 5));
    REQUIRE(w.per_generator.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(w.per_generator[i].second == 5);
      CHECK(w.ratios[i] == doctest::Approx(0.2));
    }
  }

  TEST_CASE("strong folner witness") {
    const auto Z = standard_generators(GroupSpec::free_abelian(1));
    const auto w = strong_folner_witness(Z, 5, 2.0);
    CHECK(w.boundary_budget == 2);
    CHECK(w.size() == 101);
    CHECK(w.size() > 100);
    CHECK(w.per_generator.front().second < w.boundary_budget);
    // stage 1 and 2 only constrain +e_1 and -e_1
    const auto Z2 = standard_generators(GroupSpec::free_abelian(2));
    for (int stage = 1; stage <= 2; ++stage) {
      const auto v = strong_folner_witness(Z2, stage, 2.0);
      const double lhs = static_cast<double>(v.size());
      const double rhs = std::pow(stage * static_cast<double>(v.boundary_budget), 2.0);
      CHECK(lhs > rhs);
      for (int s = 0; s < stage; ++s) CHECK(v.per_generator[s].second < v.boundary_budget);
    }
    try {
      (void)strong_folner_witness(Z2, 3, 2.0);
      FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
    CHECK_THROWS_AS(strong_folner_witness(Z, 2, 1.5), Error);
  }

  TEST_CASE("make_beta") {
    const auto z1 = GroupSpec::free_abelian(1);
    for (int k : {1, 4, 9, 30}) {
      const auto b = make_beta(z1, box_folner(1, k), NormFunctional::lp(2.0));
      CHECK(lp_norm(b, 2.0) == doctest::Approx(1.0));
      CHECK(b.coefficient(Element{0}).real() == doctest::Approx(1.0 / std::sqrt(k)));
      const auto d = left_translate(Element{1}, b) - b;
      CHECK(lp_norm(d, 2.0) == doctest::Approx(std::sqrt(2.0 / k)));
      const auto op = make_beta(z1, box_folner(1, k), NormFunctional::op(1e-9));
      CHECK(op.coefficient(Element{k - 1}).real() == doctest::Approx(1.0 / k).epsilon(1e-8));
    }
    CHECK(make_beta(z1, {Element{0}}, NormFunctional::lp(3.0)) == FormalSum::delta(z1, Element{0}));
    CHECK(make_beta(z1, {Element{0}}, NormFunctional::op()).coefficient(Element{0}).real() == doctest::Approx(1.0));
    CHECK_THROWS_AS(make_beta(z1, {}, NormFunctional::lp(2.0)), Error);
    CHECK_THROWS_AS(make_beta(GroupSpec::free_group(2), {Element{}}, NormFunctional::op()), Error);
  }

  TEST_CASE("decay rule") {
    CHECK(eventually_decreasing({1.0, 0.5, 0.3, 0.2, 0.1}));
    CHECK(eventually_decreasing({0.0, 0.0}));
    CHECK_FALSE(eventually_decreasing({1.0, 1.0, 1.0}));
    CHECK_FALSE(eventually_decreasing({1.0, 0.4, 0.9, 0.1}));
    CHECK(eventually_decreasing({1.0, 1.2, 0.4, 0.45, 0.2}));
    std::vector<CertificateEntry> e;
    for (int k = 1; k <= 10; ++k) e.push_back({k, "", 1.0, 1.0 / k, 1.0, true, {}});
    REQUIRE(loglog_slope(e).has_value());
    CHECK(*loglog_slope(e) == doctest::Approx(-1.0));
  }

  TEST_CASE("norm sandwich") {
    const auto z2 = GroupSpec::free_abelian(2);
    CHECK(check_norm_sandwich(z2, NormFunctional::lp(2.0), 2.0, 1).samples == 24);
    CHECK_NOTHROW(check_norm_sandwich(z2, NormFunctional::op(1e-6), 2.0, 1));
    try {
      (void)check_norm_sandwich(z2, NormFunctional::lp(2.0), 1.0, 1);
      FAIL("expected HypothesisViolated");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::HypothesisViolated);
    }
  }

  TEST_CASE("l2 certificate on Z") {
    const auto S = standard_generators(GroupSpec::free_abelian(1));
    const auto c = lp_certificate(S, NormFunctional::lp(2.0), 2.0, 60);
    REQUIRE(c.entries.size() == 60);
    for (const auto& e : c.entries) {
      CHECK(e.displacement == doctest::Approx(std::sqrt(2.0 / e.k)));
      CHECK(e.bound == doctest::Approx(2.0 / std::sqrt(e.k)));
      CHECK(e.pass);
    }
    for (int k = 2; 2 * k <= 60; ++k) CHECK(c.entries[2 * k - 1].displacement < c.entries[k - 1].displacement);
    CHECK(c.decay_ok);
    CHECK(c.stages.size() == 16);
    for (std::size_t n = 1; n <= c.stages.size(); ++n) {
      CHECK(c.stages[n - 1].bound == doctest::Approx(2.0 / n));
      CHECK(c.stages[n - 1].pass);
    }
    CHECK(c.pass());
  }

  TEST_CASE("l2 certificate on Z^2") {
    const auto S = standard_generators(GroupSpec::free_abelian(2));
    const auto c = lp_certificate(S, NormFunctional::lp(2.0), 2.0, 30);
    for (const auto& e : c.entries) {
      CHECK(e.displacement == doctest::Approx(std::sqrt(2.0 / e.k)));
      CHECK(e.bound == doctest::Approx(2.0));
    }
    CHECK(c.stages.size() == 2);
    CHECK_FALSE(c.notes.empty());
    CHECK(c.pass());
  }

  TEST_CASE("operator norm certificate on Z") {
    const auto S = standard_generators(GroupSpec::free_abelian(1));
    const auto c = lp_certificate(S, NormFunctional::op(1e-7), 2.0, 25, {.stages = 4});
    CHECK(c.pass());
    for (const auto& e : c.entries) CHECK(e.displacement <= e.bound * (1 + 1e-12));
  }

  TEST_CASE("bump certificate") {
    const auto c = bump_certificate(1, 8, {Element{1}, Element{0}});
    CHECK(c.entries.size() == 16);
    for (const auto& e : c.entries) CHECK(e.pass);
    CHECK(c.pass());
  }

  TEST_CASE("free group probe against string enumeration") {
    const auto probe = nonamenability_probe(GroupSpec::free_group(2), 5);
    REQUIRE(probe.size() == 6);
    for (int r = 0; r <= 5; ++r) {
      const auto ball = free_ball(r);
      std::size_t worst = 0;
      for (char s : std::string("aAbB")) {
        std::size_t missing = 0;
        std::set<std::string> shifted;
        for (const auto& w : ball) shifted.insert(left_multiply(s, w));
        for (const auto& w : ball) missing += shifted.count(w) == 0;
        worst = std::max(worst, missing);
      }
      CHECK(probe[r].size == ball.size());
      CHECK(probe[r].boundary == worst);
      CHECK(probe[r].ratio >= 1.0 / 3.0);
    }
    CHECK(probe[0].ratio == 1.0);
    CHECK(probe[1].ratio == doctest::Approx(0.6));
    CHECK_THROWS_AS(nonamenability_probe(GroupSpec::free_abelian(2), 2), Error);
  }
}
