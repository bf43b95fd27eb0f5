#pragma once

#include "cpr_graph.hpp"

#include <json.hpp>

#include <tuple>
#include <vector>

namespace ht {

class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;
  explicit CoxeterMatrix(std::vector<std::vector<int>> m);
  // Rank-n matrix with every off-diagonal entry 2 except the listed branches.
  static CoxeterMatrix from_branches(int n, const std::vector<std::tuple<int, int, int>>& branches);

  int rank() const { return static_cast<int>(m_.size()); }
  int operator()(int i, int j) const { return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const std::vector<std::vector<int>>& rows() const { return m_; }
  // Restriction to the listed generators, renumbered in order.
  CoxeterMatrix restrict(const std::vector<int>& gens) const;
  bool operator==(const CoxeterMatrix&) const = default;

 private:
  std::vector<std::vector<int>> m_;
};

struct CosetTable {
  std::size_t count = 0;
  int rank = 0;
  std::vector<std::vector<Point>> action;  // action[g][c]
  std::vector<Word> words;                  // ShortLex-least w with coset H*w
  bool closed = false;
};

struct CosetCapExceeded : Error {
  CosetCapExceeded(const std::string& w, std::size_t live) : Error(w), live_cosets(live) {}
  std::size_t live_cosets;
};

CosetTable enumerate_cosets(const CoxeterMatrix& m, const std::vector<int>& parabolic,
                            std::size_t cap = 1'000'000);
// Same with extra relators added to the Coxeter presentation.
CosetTable enumerate_cosets(const CoxeterMatrix& m, const std::vector<int>& parabolic,
                            const std::vector<Word>& extra_relators, std::size_t cap = 1'000'000);
ColoredGraph coset_action(const CosetTable& t, int rank);
// Permutation group generated by the coset action.
Group coset_group(const CosetTable& t);
// Minimal left-coset representatives w of w*W_J, each as its ShortLex-least
// reduced word, listed in ShortLex order.
std::vector<Word> parabolic_transversal_words(const CoxeterMatrix& m, const std::vector<int>& parabolic,
                                              std::size_t cap = 1'000'000);

nlohmann::json to_json(const CoxeterMatrix& m);
CoxeterMatrix coxeter_matrix_from_json(const nlohmann::json& j);

}  // namespace ht
