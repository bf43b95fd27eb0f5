#include "cgroup_verify.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace ht;
using fixtures::vx;

TEST_SUITE("cgroup_verify") {
  TEST_CASE("masks") {
    CHECK(full_mask(4) == 0b1111);
    CHECK(mask_members(0b1010) == std::vector<int>{1, 3});
    CHECK(mask_string(0b1011) == "{0,1,3}");
  }

  TEST_CASE("verdicts combine pessimistically") {
    CHECK(combine(Verdict::Pass, Verdict::Pass) == Verdict::Pass);
    CHECK(combine(Verdict::Pass, Verdict::Inconclusive) == Verdict::Inconclusive);
    CHECK(combine(Verdict::Inconclusive, Verdict::Fail) == Verdict::Fail);
  }

  TEST_CASE("relations") {
    auto g = fixtures::type_group(HyperbolicType::T3334, 2);
    auto ok = check_relations(g, expected_diagram(HyperbolicType::T3334));
    CHECK(ok.ok);
    CHECK(ok.pairs.size() == 6);
    auto bad = check_relations(g, expected_diagram(HyperbolicType::T3335));
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.failures.size() == 1);
    CHECK(bad.failures[0].find("rho0rho3") != std::string::npos);
    CHECK_FALSE(check_relations(g, expected_diagram(HyperbolicType::T33334)).ok);
  }

  TEST_CASE("parabolics are memoized and shared between copies") {
    auto g = fixtures::type_group(HyperbolicType::T3334, 1);
    auto copy = g;
    CHECK(g.parabolic_order(0b0110) == copy.parabolic_order(0b0110));
    CHECK(g.orbit_ids(0b0011).get() == copy.orbit_ids(0b0011).get());
    CHECK_THROWS_AS(g.parabolic(0b10000), Error);
  }

  TEST_CASE("finite Coxeter groups are C-groups") {
    for (auto m : {CoxeterMatrix::from_branches(3, {{0, 1, 3}, {1, 2, 3}}),
                   CoxeterMatrix::from_branches(3, {{0, 1, 5}, {1, 2, 3}}),
                   CoxeterMatrix::from_branches(4, {{0, 1, 4}, {1, 2, 3}, {2, 3, 3}})}) {
      auto g = fixtures::coxeter(m);
      auto r = verify_intersection_property(g);
      CHECK(r.overall == Verdict::Pass);
    }
  }

  TEST_CASE("intersection property counterexample") {
    auto g = fixtures::ip_counterexample();
    CHECK(g.group().order() == 120);
    auto r = verify_intersection_property(g);
    CHECK(r.overall == Verdict::Fail);
    bool seen = false;
    for (const auto& p : r.pairs)
      if (p.verdict == Verdict::Fail) {
        seen = true;
        CHECK(p.method == IPMethod::ExactIntersection);
        CHECK(p.intersection_order == 4);
        CHECK(p.parabolic_order == 2);
      }
    CHECK(seen);
    // certificates can never pass on a violated pair
    auto c = ip_pair_certificate(g, 0b111, 0, 2);
    CHECK(c.verdict == Verdict::Inconclusive);
  }

  TEST_CASE("gcd certificates of the (3,3,3,4) graph") {
    auto g = fixtures::type_group(HyperbolicType::T3334, 2);
    const TypeMask all = 0b1111;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        auto r = ip_pair_certificate(g, all, i, j);
        CHECK(r.verdict == Verdict::Pass);
        CHECK(r.method == IPMethod::GcdCertificate);
      }
    // witness rows for the pairs {0,1} and {0,3}
    auto d = ip_vertex_data(g, all, 0, 1, vx(20, 2));
    CHECK(d.orbit_intersection == 1);
    CHECK(d.s_i == 6);
    CHECK(d.s_j == 24);
    CHECK(d.gcd_ok);
    auto e = ip_vertex_data(g, all, 0, 3, vx(20, 1));
    CHECK(e.orbit_intersection == 3);
    CHECK(e.s_i == 2);
    CHECK(e.s_j == 6);
    CHECK(e.gcd == 2);
    CHECK(e.gcd_ok);
    CHECK_THROWS_AS(ip_vertex_data(g, all, 0, 0, 0), Error);
    CHECK_THROWS_AS(ip_vertex_data(g, all, 0, 1, 40), Error);
  }

  TEST_CASE("certificate and exact paths agree") {
    auto g = fixtures::coxeter(CoxeterMatrix::from_branches(3, {{0, 1, 4}, {1, 2, 3}}));
    IPOptions o;
    auto r = ip_pair(g, 0b111, 0, 1, o);
    CHECK(r.verdict == Verdict::Pass);
    o.try_certificates = false;
    auto e = ip_pair(g, 0b111, 0, 1, o);
    CHECK(e.method == IPMethod::ExactIntersection);
    CHECK(e.intersection_order == e.parabolic_order);
  }

  TEST_CASE("JSON report") {
    auto g = fixtures::type_group(HyperbolicType::T3334, 2);
    auto j = to_json(verify_intersection_property(g));
    CHECK(j["verdict"] == "Pass");
    CHECK(j["pairs"].size() == 6 + 4 * 3 + 6 * 1);
    CHECK(j["pairs"][0]["G_ij"].is_string());
  }
}
