#include "coset_enum.hpp"

#include <doctest.h>

#include <set>

using namespace ht;

namespace {

CoxeterMatrix linear(const std::vector<int>& labels) {
  std::vector<std::tuple<int, int, int>> b;
  for (std::size_t i = 0; i < labels.size(); ++i) b.emplace_back(int(i), int(i) + 1, labels[i]);
  return CoxeterMatrix::from_branches(int(labels.size()) + 1, b);
}

}  // namespace

TEST_SUITE("coset_enum") {
  TEST_CASE("matrix construction") {
    auto m = linear({5, 3});
    CHECK(m.rank() == 3);
    CHECK(m(0, 1) == 5);
    CHECK(m(1, 0) == 5);
    CHECK(m(0, 2) == 2);
    CHECK(m(1, 1) == 1);
    auto r = m.restrict({1, 2});
    CHECK(r.rank() == 2);
    CHECK(r(0, 1) == 3);
    CHECK_THROWS_AS(CoxeterMatrix({{1, 3}, {2, 1}}), Error);
    CHECK(coxeter_matrix_from_json(to_json(m)) == m);
  }

  TEST_CASE("orders of finite Coxeter groups") {
    struct Case {
      std::vector<int> labels;
      std::size_t order;
    };
    for (const auto& c : std::vector<Case>{{{3}, 6},
                                           {{5}, 10},
                                           {{3, 3}, 24},
                                           {{4, 3}, 48},
                                           {{5, 3}, 120},
                                           {{3, 3, 3}, 120},
                                           {{4, 3, 3}, 384},
                                           {{3, 4, 3}, 1152}}) {
      auto t = enumerate_cosets(linear(c.labels), {});
      CHECK(t.closed);
      CHECK(t.count == c.order);
      CHECK(coset_group(t).order() == c.order);
    }
    // D4
    auto d4 = CoxeterMatrix::from_branches(4, {{0, 1, 3}, {1, 2, 3}, {1, 3, 3}});
    CHECK(enumerate_cosets(d4, {}).count == 192);
  }

  TEST_CASE("parabolic indices and words") {
    auto m = linear({4, 3});
    auto t = enumerate_cosets(m, {1, 2});
    CHECK(t.count == 8);
    // every word leads from the base coset to its own coset
    for (std::size_t c = 0; c < t.count; ++c) {
      Point x = 0;
      for (int g : t.words[c]) x = t.action[std::size_t(g)][x];
      CHECK(x == c);
    }
    CHECK(t.words[0].empty());
    auto g = coset_action(t, 3);
    CHECK(g.d == 8);
    // generators of the subgroup fix the base coset
    CHECK(t.action[1][0] == 0);
    CHECK(t.action[2][0] == 0);
  }

  TEST_CASE("minimal left coset representatives") {
    auto m = linear({4, 3});
    auto w = parabolic_transversal_words(m, {0, 1});
    REQUIRE(w.size() == 6);
    // Poincare series of B3 over B2 is 1 + q + ... + q^5
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(w[k].size() == k);
    // reversed words hit distinct right cosets of the parabolic
    auto t = enumerate_cosets(m, {0, 1});
    std::set<Point> hit;
    for (const auto& word : w) {
      Point x = 0;
      for (auto it = word.rbegin(); it != word.rend(); ++it) x = t.action[std::size_t(*it)][x];
      hit.insert(x);
    }
    CHECK(hit.size() == 6);
    auto h3 = parabolic_transversal_words(linear({5, 3}), {1, 2});
    CHECK(h3.size() == 20);
  }

  TEST_CASE("cap on infinite groups") {
    auto affine = CoxeterMatrix::from_branches(3, {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}});
    CHECK_THROWS_AS(enumerate_cosets(affine, {}, 5000), CosetCapExceeded);
  }

  TEST_CASE("extra relators") {
    // (rho0 rho1 rho2)^5 is the central element of [5,3]; killing it leaves the group of order 60
    Word petrie;
    for (int k = 0; k < 5; ++k) petrie.insert(petrie.end(), {0, 1, 2});
    auto h3 = linear({5, 3});
    CHECK(enumerate_cosets(h3, {}, {petrie}).count == 60);
    CHECK(enumerate_cosets(h3, {0, 1}, {petrie}).count == 6);
    CHECK_THROWS_AS(enumerate_cosets(h3, {}, {{0, 7}}), Error);
  }
}
