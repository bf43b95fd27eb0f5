#pragma once

#include "catalog.hpp"
#include "cgroup_verify.hpp"

namespace fixtures {

inline ht::TypedGroup from_images(std::size_t n, const std::vector<std::vector<ht::Point>>& gens) {
  std::vector<ht::Perm> p;
  for (const auto& g : gens) p.emplace_back(g);
  return ht::TypedGroup(ht::Group(n, p));
}

// Three involutions on 5 points whose group (S5) has G_1 cap G_2 of order 4 while G_12 = <rho_0> has order 2.
inline ht::TypedGroup ip_counterexample() {
  return from_images(5, {{1, 0, 3, 2, 4}, {3, 1, 2, 0, 4}, {0, 2, 1, 4, 3}});
}

// A rank-4 C-group of order 2520 on 7 points that is not flag-transitive
// (its coset geometry has 3780 chambers).
inline ht::TypedGroup non_flag_transitive() {
  return from_images(7, {{0, 6, 5, 3, 4, 2, 1}, {5, 1, 2, 4, 3, 0, 6}, {5, 1, 6, 3, 4, 0, 2}, {3, 6, 2, 0, 4, 5, 1}});
}

// Regular action of a finite Coxeter group on its own elements.
inline ht::TypedGroup coxeter(const ht::CoxeterMatrix& m) {
  return ht::TypedGroup(ht::coset_group(ht::enumerate_cosets(m, {})));
}

inline ht::TypedGroup type_group(ht::HyperbolicType t, std::size_t layers) {
  auto spec = ht::load_construction(t, ht::default_data_dir());
  return ht::TypedGroup(ht::induced_group(ht::build(spec, layers)));
}

// Vertex (v, l) of a cover with base degree d, v 1-based as in printed tables.
inline ht::Point vx(std::size_t d, ht::Point v, ht::Point l = 0) { return static_cast<ht::Point>(l * d + v - 1); }

}  // namespace fixtures
