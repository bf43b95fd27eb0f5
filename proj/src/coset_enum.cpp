#include "coset_enum.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>

namespace ht {

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> m) : m_(std::move(m)) {
  const std::size_t n = m_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m_[i].size() != n) throw Error("Coxeter matrix must be square");
    if (m_[i][i] != 1) throw Error("Coxeter matrix diagonal must be 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (m_[i][j] != m_[j][i]) throw Error("Coxeter matrix must be symmetric");
      if (i != j && m_[i][j] < 2) throw Error("Coxeter matrix off-diagonal entries must be >= 2");
    }
  }
}

CoxeterMatrix CoxeterMatrix::from_branches(int n, const std::vector<std::tuple<int, int, int>>& branches) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  for (auto [i, j, v] : branches) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw Error("invalid branch");
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
  }
  return CoxeterMatrix(std::move(m));
}

CoxeterMatrix CoxeterMatrix::restrict(const std::vector<int>& gens) const {
  std::vector<std::vector<int>> m;
  for (int i : gens) {
    m.emplace_back();
    for (int j : gens) m.back().push_back((*this)(i, j));
  }
  return CoxeterMatrix(std::move(m));
}

namespace {

// HLT enumeration with coincidence processing.
class Enumerator {
 public:
  Enumerator(int n, std::size_t cap) : n_(n), cap_(cap) { add_row(); }

  std::size_t rows() const { return live_.size(); }
  bool live(std::size_t c) const { return live_[c]; }
  long get(std::size_t c, int g) const { return table_[c * static_cast<std::size_t>(n_) + static_cast<std::size_t>(g)]; }
  std::size_t find(std::size_t c) const {
    while (parent_[c] != c) c = parent_[c];
    return c;
  }
  std::size_t live_count() const { return static_cast<std::size_t>(std::count(live_.begin(), live_.end(), true)); }

  void scan_fill(std::size_t c, const Word& w) {
    const std::size_t len = w.size();
    while (true) {
      std::size_t f = c, i = 0;
      while (i < len && get(f, w[i]) >= 0) f = static_cast<std::size_t>(get(f, w[i++]));
      if (i == len) {
        if (f != c) coincidence(f, c);
        return;
      }
      std::size_t b = c;
      long j = static_cast<long>(len) - 1;
      while (j >= static_cast<long>(i) && get(b, w[static_cast<std::size_t>(j)]) >= 0)
        b = static_cast<std::size_t>(get(b, w[static_cast<std::size_t>(j--)]));
      if (j < static_cast<long>(i)) {
        coincidence(f, b);
        return;
      }
      if (j == static_cast<long>(i)) {
        set(f, w[i], b);
        set(b, w[i], f);
        return;
      }
      define(f, w[i]);
    }
  }

  void define(std::size_t c, int g) {
    std::size_t d = add_row();
    set(c, g, d);
    set(d, g, c);
  }

 private:
  long& at(std::size_t c, int g) { return table_[c * static_cast<std::size_t>(n_) + static_cast<std::size_t>(g)]; }
  void set(std::size_t c, int g, std::size_t d) { at(c, g) = static_cast<long>(d); }

  std::size_t add_row() {
    if (live_.size() >= cap_) throw CosetCapExceeded("coset enumeration exceeded cap", live_count());
    table_.insert(table_.end(), static_cast<std::size_t>(n_), -1);
    live_.push_back(true);
    parent_.push_back(live_.size() - 1);
    return live_.size() - 1;
  }

  void coincidence(std::size_t a0, std::size_t b0) {
    std::vector<std::pair<std::size_t, std::size_t>> q{{a0, b0}};
    while (!q.empty()) {
      auto [a, b] = q.back();
      q.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      parent_[b] = a;
      live_[b] = false;
      for (int g = 0; g < n_; ++g) {
        long x = at(b, g);
        if (x < 0) continue;
        at(b, g) = -1;
        auto xs = static_cast<std::size_t>(x);
        if (at(xs, g) == static_cast<long>(b)) at(xs, g) = -1;
        long y = at(a, g);
        if (y < 0) {
          std::size_t x2 = find(xs);
          set(a, g, x2);
          set(x2, g, a);
        } else {
          q.emplace_back(static_cast<std::size_t>(y), xs);
        }
      }
    }
  }

  int n_;
  std::size_t cap_;
  std::vector<long> table_;
  std::vector<bool> live_;
  std::vector<std::size_t> parent_;
};

}  // namespace

CosetTable enumerate_cosets(const CoxeterMatrix& m, const std::vector<int>& parabolic, std::size_t cap) {
  return enumerate_cosets(m, parabolic, std::vector<Word>{}, cap);
}

CosetTable enumerate_cosets(const CoxeterMatrix& m, const std::vector<int>& parabolic,
                            const std::vector<Word>& extra_relators, std::size_t cap) {
  const int n = m.rank();
  if (n == 0) throw Error("empty Coxeter matrix");
  for (int g : parabolic)
    if (g < 0 || g >= n) throw Error("parabolic generator out of range");
  std::vector<Word> rels;
  for (int i = 0; i < n; ++i) {
    rels.push_back({i, i});
    for (int j = i + 1; j < n; ++j) {
      Word r;
      for (int k = 0; k < m(i, j); ++k) {
        r.push_back(i);
        r.push_back(j);
      }
      rels.push_back(std::move(r));
    }
  }
  for (const auto& r : extra_relators) {
    for (int g : r)
      if (g < 0 || g >= n) throw Error("relator generator out of range");
    if (!r.empty()) rels.push_back(r);
  }
  Enumerator e(n, cap);
  for (int g : parabolic) e.scan_fill(0, {g});
  for (std::size_t c = 0; c < e.rows(); ++c) {
    if (!e.live(c)) continue;
    for (const auto& r : rels) {
      if (!e.live(c)) break;
      e.scan_fill(c, r);
    }
    if (e.live(c))
      for (int g = 0; g < n; ++g)
        if (e.get(c, g) < 0) e.define(c, g);
  }

  // Renumber breadth-first from the subgroup coset.
  CosetTable t;
  t.rank = n;
  std::vector<long> idx(e.rows(), -1);
  std::vector<std::size_t> order{0};
  idx[0] = 0;
  t.words.push_back({});
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (int g = 0; g < n; ++g) {
      long v = e.get(order[k], g);
      if (v < 0) throw Error("coset table not closed");
      std::size_t d = e.find(static_cast<std::size_t>(v));
      if (idx[d] < 0) {
        idx[d] = static_cast<long>(order.size());
        order.push_back(d);
        Word w = t.words[k];
        w.push_back(g);
        t.words.push_back(std::move(w));
      }
    }
  }
  t.count = order.size();
  t.action.assign(static_cast<std::size_t>(n), std::vector<Point>(t.count));
  for (std::size_t k = 0; k < order.size(); ++k)
    for (int g = 0; g < n; ++g)
      t.action[static_cast<std::size_t>(g)][k] =
          static_cast<Point>(idx[e.find(static_cast<std::size_t>(e.get(order[k], g)))]);
  t.closed = true;
  return t;
}

ColoredGraph coset_action(const CosetTable& t, int rank) {
  if (!t.closed) throw Error("coset table not closed");
  if (rank != t.rank) throw Error("rank mismatch");
  ColoredGraph g;
  g.d = t.count;
  g.n = rank;
  for (int c = 0; c < rank; ++c)
    for (Point x = 0; x < t.count; ++x) {
      Point y = t.action[static_cast<std::size_t>(c)][x];
      if (x < y) g.edges.push_back({c, x, y});
    }
  return g;
}

Group coset_group(const CosetTable& t) {
  std::vector<Perm> gens;
  for (const auto& a : t.action) gens.emplace_back(a);
  return Group(t.count, std::move(gens));
}

std::vector<Word> parabolic_transversal_words(const CoxeterMatrix& m, const std::vector<int>& parabolic,
                                              std::size_t cap) {
  CosetTable t = enumerate_cosets(m, parabolic, cap);
  // Left coset w*W_J corresponds to right coset W_J*w^{-1}; prepending s acts as s on the table.
  std::vector<std::size_t> dist(t.count);
  for (std::size_t c = 0; c < t.count; ++c) dist[c] = t.words[c].size();
  std::vector<std::size_t> by_dist(t.count);
  for (std::size_t c = 0; c < t.count; ++c) by_dist[c] = c;
  std::stable_sort(by_dist.begin(), by_dist.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  std::vector<Word> left(t.count);
  for (std::size_t c : by_dist) {
    if (dist[c] == 0) continue;
    for (int s = 0; s < t.rank; ++s) {
      Point nb = t.action[static_cast<std::size_t>(s)][c];
      if (dist[nb] + 1 == dist[c]) {
        left[c] = {s};
        left[c].insert(left[c].end(), left[nb].begin(), left[nb].end());
        break;
      }
    }
  }
  std::sort(left.begin(), left.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return left;
}

nlohmann::json to_json(const CoxeterMatrix& m) { return m.rows(); }

CoxeterMatrix coxeter_matrix_from_json(const nlohmann::json& j) {
  try {
    return CoxeterMatrix(j.get<std::vector<std::vector<int>>>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed Coxeter matrix JSON: ") + e.what());
  }
}

}  // namespace ht
