#include <doctest.h>

#include "grpcoh/json_io.hpp"

using namespace grpcoh;

TEST_SUITE("json_io") {
  TEST_CASE("groups") {
    const auto f3 = GroupSpec::free_group(3);
    CHECK(group_from_json(group_to_json(f3)) == f3);
    CHECK(group_to_json(GroupSpec::free_abelian(2)) == json{{"family", "zn"}, {"rank", 2}});
    CHECK_THROWS_AS(parse_family("sl2", 2), Error);
  }

  TEST_CASE("float sums round trip") {
    const auto z2 = GroupSpec::free_abelian(2);
    const FormalSum a(z2, {{Element{1, -2}, Complex(0.1, 3.0)}, {Element{0, 0}, -7.25}});
    CHECK(sum_from_json(z2, sum_to_json(a)) == a);
    CHECK(sum_to_json(a)[0]["elem"] == "0,0");
  }

  TEST_CASE("exact sums round trip") {
    const auto f2 = GroupSpec::free_group(2);
    const ExactSum a(f2, {{parse_element(f2, "aB"), GaussianRational(Rational(-3, 7), Rational(5, 2))},
                          {identity(f2), GaussianRational(Rational(123456789, 1000))}});
    CHECK(exact_sum_from_json(f2, sum_to_json(a)) == a);
    const auto j = parse_json(R"([{"elem": "ab", "re": 0.5}])");
    CHECK(exact_sum_from_json(f2, j).coefficient(parse_element(f2, "ab")) == GaussianRational(Rational(1, 2)));
  }

  TEST_CASE("sampled functions round trip") {
    auto s = sample(FormalSum::delta(GroupSpec::free_abelian(1), Element{1}), 6);
    s.sup_bound = 1.0;
    const auto back = sampled_from_json(sampled_to_json(s));
    CHECK(back.values == s.values);
    CHECK(back.lipschitz == s.lipschitz);
    CHECK(back.sup_bound == s.sup_bound);
    CHECK_THROWS_AS(sampled_from_json(parse_json(R"({"n": 1, "m": 3, "values": [[1, 0]]})")), Error);
  }

  TEST_CASE("cocycles round trip") {
    const auto z1 = GroupSpec::free_abelian(1);
    CocycleValues v;
    v.emplace(Element{1}, ExactSum(z1, {{Element{1}, 1}, {Element{0}, -1}}));
    const auto in = cocycle_from_json(cocycle_to_json(z1, {Element{1}}, v));
    CHECK(in.spec == z1);
    CHECK(in.generators == std::vector<Element>{Element{1}});
    CHECK(in.values == v);
  }

  TEST_CASE("certificates") {
    AlmostInvarianceCertificate c;
    c.norm = "l2";
    c.entries.push_back({1, "box", 1.0, 0.5, 1.0, true, {{"boundary", 1.0}}});
    c.stages.push_back({1, "box", 1.0, 0.5, 2.0, true, {}});
    const auto j = certificate_to_json(c);
    CHECK(j["verdict"] == "pass");
    CHECK(j["entries"].size() == 1);
    CHECK(certificate_to_csv(c) == "kind,k,displacement,bound\nentry,1,0.5,1\nstage,1,0.5,2\n");
    CertifiedValue inf;
    inf.upper = std::numeric_limits<double>::infinity();
    CHECK(certified_to_json(inf)["upper"].is_null());
  }

  TEST_CASE("parse errors") {
    try {
      (void)parse_json("{not json");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
    }
    CHECK_THROWS_AS(sum_from_json(GroupSpec::free_abelian(1), parse_json(R"({"elem": "1"})")), Error);
    CHECK_THROWS_AS(sum_from_json(GroupSpec::free_abelian(1), parse_json(R"([{"re": 1}])")), Error);
  }
}
