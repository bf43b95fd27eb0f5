#include "perm.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace ht {

Perm::Perm(std::size_t degree) : img_(degree) { std::iota(img_.begin(), img_.end(), Point{0}); }

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x]) throw Error("images do not form a bijection");
    seen[x] = 1;
  }
}

Perm Perm::from_cycles(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      Point a = c[i], b = c[(i + 1) % c.size()];
      if (a >= degree || b >= degree) throw Error("cycle point out of range");
      if (used[a]) throw Error("cycles are not disjoint");
      used[a] = 1;
      img[a] = b;
    }
  }
  return Perm(std::move(img));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  std::vector<Point> inv(img_.size());
  for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<Point>(i);
  Perm r;
  r.img_ = std::move(inv);
  return r;
}

std::optional<Point> Perm::first_moved() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != i) return static_cast<Point>(i);
  return std::nullopt;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Point x : p.images()) h = (h ^ x) * 1099511628211ull;
  return h;
}

namespace {

Perm make_perm(std::vector<Point>&& v) { return Perm(std::move(v), Perm::Trusted{}); }

inline void mul_into(const std::vector<Point>& p, const std::vector<Point>& q, std::vector<Point>& out) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = q[p[i]];
}

bool is_id(const std::vector<Point>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != i) return false;
  return true;
}

}  // namespace

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree()) throw Error("degree mismatch in compose");
  std::vector<Point> out(p.degree());
  mul_into(p.images(), q.images(), out);
  return make_perm(std::move(out));
}

BigInt element_order(const Perm& p) {
  const std::size_t n = p.degree();
  std::vector<char> seen(n, 0);
  BigInt ord = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (Point j = static_cast<Point>(i); !seen[j]; j = p[j]) {
      seen[j] = 1;
      ++len;
    }
    ord = boost::multiprecision::lcm(ord, BigInt(len));
  }
  return ord;
}

// ---------------------------------------------------------------------------
// Stabilizer chain (deterministic Schreier-Sims)

StabilizerChain::StabilizerChain(std::size_t degree, const std::vector<Perm>& gens,
                                 const std::vector<Point>& base_prefix)
    : degree_(degree) {
  for (const auto& g : gens)
    if (g.degree() != degree) throw Error("generator degree mismatch");
  for (Point b : base_prefix)
    if (b >= degree) throw Error("base point out of range");
  build(gens, base_prefix);
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  for (const auto& lv : levels_) b.push_back(lv.base);
  return b;
}

BigInt StabilizerChain::order() const {
  BigInt o = 1;
  for (const auto& lv : levels_) o *= lv.orbit.size();
  return o;
}

bool StabilizerChain::in_orbit(std::size_t level, Point p) const { return levels_[level].sv[p] != -1; }

Perm StabilizerChain::transversal(std::size_t level, Point p) const {
  const auto& lv = levels_[level];
  if (lv.sv[p] == -1) throw Error("point not in basic orbit");
  std::vector<int> path;
  Point q = p;
  while (lv.sv[q] != -2) {
    int k = lv.sv[q];
    path.push_back(k);
    q = lv.inv_gens[k][q];
  }
  std::vector<Point> u(degree_), tmp(degree_);
  std::iota(u.begin(), u.end(), Point{0});
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    mul_into(u, lv.gens[*it].images(), tmp);
    u.swap(tmp);
  }
  return make_perm(std::move(u));
}

void StabilizerChain::strip_level(std::size_t level, std::vector<Point>& g, std::vector<Point>& tmp) const {
  const auto& lv = levels_[level];
  Point q = g[lv.base];
  while (lv.sv[q] != -2) {
    int k = lv.sv[q];
    mul_into(g, lv.inv_gens[k].images(), tmp);
    g.swap(tmp);
    q = lv.inv_gens[k][q];
  }
}

std::size_t StabilizerChain::sift(std::vector<Point>& g, std::size_t from) const {
  std::vector<Point> tmp(degree_);
  for (std::size_t l = from; l < levels_.size(); ++l) {
    if (levels_[l].sv[g[levels_[l].base]] == -1) return l;
    strip_level(l, g, tmp);
  }
  return levels_.size();
}

bool StabilizerChain::contains(const Perm& p) const {
  if (p.degree() != degree_) throw Error("degree mismatch in membership test");
  std::vector<Point> g = p.images();
  return sift(g) == levels_.size() && is_id(g);
}

StabilizerChain StabilizerChain::tail(std::size_t k) const {
  StabilizerChain c;
  c.degree_ = degree_;
  c.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(std::min(k, levels_.size())), levels_.end());
  return c;
}

void StabilizerChain::extend_orbit(ChainLevel& lv, std::size_t new_gen) const {
  const std::size_t old = lv.orbit.size();
  for (std::size_t idx = 0; idx < lv.orbit.size(); ++idx) {
    const Point p = lv.orbit[idx];
    for (std::size_t gi = (idx < old ? new_gen : 0); gi < lv.gens.size(); ++gi) {
      Point q = lv.gens[gi][p];
      if (lv.sv[q] == -1) {
        lv.sv[q] = static_cast<std::int32_t>(gi);
        lv.orbit.push_back(q);
      }
    }
  }
}

void StabilizerChain::build(const std::vector<Perm>& input, const std::vector<Point>& base_prefix) {
  levels_.clear();
  auto add_level = [&](Point b) {
    ChainLevel lv;
    lv.base = b;
    lv.sv.assign(degree_, -1);
    lv.sv[b] = -2;
    lv.orbit.push_back(b);
    levels_.push_back(std::move(lv));
  };
  for (Point b : base_prefix) add_level(b);

  std::vector<Perm> gens;
  for (const auto& g : input) {
    if (g.is_identity()) continue;
    if (std::find(gens.begin(), gens.end(), g) != gens.end()) continue;
    gens.push_back(g);
  }
  for (const auto& g : gens) {
    bool fixes_all = true;
    for (const auto& lv : levels_)
      if (g[lv.base] != lv.base) { fixes_all = false; break; }
    if (fixes_all) add_level(*g.first_moved());
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    for (const auto& g : gens) {
      bool fixes = true;
      for (std::size_t m = 0; m < l; ++m)
        if (g[levels_[m].base] != levels_[m].base) { fixes = false; break; }
      if (!fixes) continue;
      levels_[l].gens.push_back(g);
      levels_[l].inv_gens.push_back(g.inverse());
      extend_orbit(levels_[l], levels_[l].gens.size() - 1);
    }
  }

  // progress[l][idx]: number of level generators already paired with orbit[idx]
  std::vector<std::vector<std::size_t>> progress(levels_.size());
  std::vector<Point> g(degree_), tmp(degree_);
  long i = static_cast<long>(levels_.size()) - 1;
  while (i >= 0) {
    auto& lv = levels_[static_cast<std::size_t>(i)];
    auto& prog = progress[static_cast<std::size_t>(i)];
    bool restarted = false;
    for (std::size_t idx = 0; !restarted && idx < lv.orbit.size(); ++idx) {
      if (prog.size() < lv.orbit.size()) prog.resize(lv.orbit.size(), 0);
      const Point p = lv.orbit[idx];
      Perm up;
      bool have_up = false;
      while (prog[idx] < lv.gens.size()) {
        const std::size_t si = prog[idx]++;
        const Perm& s = lv.gens[si];
        if (!have_up) {
          up = transversal(static_cast<std::size_t>(i), p);
          have_up = true;
        }
        // Schreier generator u_p * s * u_q^{-1}
        mul_into(up.images(), s.images(), g);
        strip_level(static_cast<std::size_t>(i), g, tmp);
        if (is_id(g)) continue;
        std::size_t j = sift(g, static_cast<std::size_t>(i) + 1);
        if (j == levels_.size() && is_id(g)) continue;
        if (j == levels_.size()) {
          add_level(*make_perm(std::vector<Point>(g)).first_moved());
          progress.emplace_back();
        }
        Perm h = make_perm(std::vector<Point>(g));
        Perm hinv = h.inverse();
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].gens.push_back(h);
          levels_[l].inv_gens.push_back(hinv);
          extend_orbit(levels_[l], levels_[l].gens.size() - 1);
        }
        i = static_cast<long>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
}

// ---------------------------------------------------------------------------
// Group

struct Group::Lazy {
  std::once_flag flag;
  bool preset = false;
  StabilizerChain chain;
};

Group::Group(std::size_t degree, std::vector<Perm> gens, std::vector<std::string> labels)
    : degree_(degree), gens_(std::move(gens)), labels_(std::move(labels)), lazy_(std::make_shared<Lazy>()) {
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw Error("generator degree mismatch");
}

Group::Group(std::size_t degree, std::vector<Perm> gens, StabilizerChain chain)
    : degree_(degree), gens_(std::move(gens)), lazy_(std::make_shared<Lazy>()) {
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw Error("generator degree mismatch");
  lazy_->preset = true;
  lazy_->chain = std::move(chain);
}

const StabilizerChain& Group::chain() const {
  if (!lazy_) throw Error("empty group object");
  std::call_once(lazy_->flag, [this] {
    if (!lazy_->preset) lazy_->chain = StabilizerChain(degree_, gens_);
  });
  return lazy_->chain;
}

bool Group::contains(const Perm& p) const {
  if (p.degree() != degree_) throw Error("degree mismatch in membership test");
  return chain().contains(p);
}

std::vector<Point> Group::orbit(Point x) const {
  if (x >= degree_) throw Error("point out of range");
  std::vector<char> seen(degree_, 0);
  std::vector<Point> orb{x};
  seen[x] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const auto& g : gens_) {
      Point y = g[orb[i]];
      if (!seen[y]) {
        seen[y] = 1;
        orb.push_back(y);
      }
    }
  return orb;
}

std::vector<std::uint32_t> Group::orbit_ids() const {
  constexpr std::uint32_t none = ~0u;
  std::vector<std::uint32_t> id(degree_, none);
  std::uint32_t next = 0;
  for (Point x = 0; x < degree_; ++x) {
    if (id[x] != none) continue;
    std::vector<Point> stack{x};
    id[x] = next;
    while (!stack.empty()) {
      Point p = stack.back();
      stack.pop_back();
      for (const auto& g : gens_) {
        Point y = g[p];
        if (id[y] == none) {
          id[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return id;
}

Group Group::point_stabilizer(Point x) const {
  if (x >= degree_) throw Error("point out of range");
  StabilizerChain c(degree_, gens_, {x});
  StabilizerChain t = c.tail(1);
  std::vector<Perm> gens;
  if (!t.levels().empty()) gens = t.levels().front().gens;
  return Group(degree_, std::move(gens), std::move(t));
}

Perm Group::evaluate_word(const Word& w) const {
  std::vector<Point> cur(degree_), tmp(degree_);
  std::iota(cur.begin(), cur.end(), Point{0});
  for (int k : w) {
    if (k < 0 || static_cast<std::size_t>(k) >= gens_.size()) throw Error("invalid generator index in word");
    mul_into(cur, gens_[static_cast<std::size_t>(k)].images(), tmp);
    cur.swap(tmp);
  }
  return make_perm(std::move(cur));
}

bool Group::is_trivial() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Perm& p) { return p.is_identity(); });
}

// ---------------------------------------------------------------------------
// Element enumeration

bool for_each_element_impl(const StabilizerChain& c, const std::function<bool(const Perm&)>& f) {
  const auto& lv = c.levels();
  const std::size_t n = c.degree();
  std::vector<std::vector<Perm>> trans(lv.size());
  for (std::size_t l = 0; l < lv.size(); ++l)
    for (Point p : lv[l].orbit) trans[l].push_back(c.transversal(l, p));
  if (lv.empty()) return f(Perm(n));
  // g = v_{k-1} ... v_0, built from the deepest level outward
  std::vector<std::vector<Point>> acc(lv.size() + 1, std::vector<Point>(n));
  std::iota(acc[lv.size()].begin(), acc[lv.size()].end(), Point{0});
  std::function<bool(std::size_t)> rec = [&](std::size_t l) -> bool {
    for (const auto& v : trans[l]) {
      mul_into(acc[l + 1], v.images(), acc[l]);
      if (l == 0) {
        if (!f(make_perm(std::vector<Point>(acc[0])))) return false;
      } else if (!rec(l - 1)) {
        return false;
      }
    }
    return true;
  };
  return rec(lv.size() - 1);
}

// ---------------------------------------------------------------------------
// Intersection by backtrack over the chain of a, pruned by b

IntersectionResult subgroup_intersection(const Group& a, const Group& b, std::uint64_t node_budget) {
  if (a.degree() != b.degree()) throw Error("degree mismatch in intersection");
  const std::size_t n = a.degree();
  const StabilizerChain& ca = a.chain();
  const auto base = ca.base();
  const std::size_t k = base.size();
  StabilizerChain cb(n, b.generators(), base);

  std::vector<std::vector<Perm>> ta(k);
  for (std::size_t l = 0; l < k; ++l)
    for (Point p : ca.levels()[l].orbit) ta[l].push_back(ca.transversal(l, p));

  IntersectionResult res;
  std::vector<Perm> found_gens;
  StabilizerChain found(n, {});
  BigInt count = 0;
  bool aborted = false;

  std::vector<std::vector<Point>> h(k + 1, std::vector<Point>(n)), z(k + 1, std::vector<Point>(n));
  std::iota(h[0].begin(), h[0].end(), Point{0});
  std::iota(z[0].begin(), z[0].end(), Point{0});

  std::function<void(std::size_t)> dfs = [&](std::size_t l) {
    if (aborted) return;
    if (++res.nodes > node_budget) {
      aborted = true;
      return;
    }
    if (l == k) {
      Perm g = make_perm(std::vector<Point>(h[k]));
      if (!cb.contains(g)) return;
      ++count;
      if (!found.contains(g)) {
        found_gens.push_back(g);
        found = StabilizerChain(n, found_gens);
      }
      return;
    }
    const auto& lvb = cb.levels()[l];
    for (const auto& v : ta[l]) {
      // h' = v * h
      mul_into(v.images(), h[l], h[l + 1]);
      Point c = h[l + 1][base[l]];
      Point r = z[l][c];
      if (lvb.sv[r] == -1) continue;
      Perm w = cb.transversal(l, r);
      Perm winv = w.inverse();
      mul_into(z[l], winv.images(), z[l + 1]);
      dfs(l + 1);
      if (aborted) return;
    }
  };
  dfs(0);

  if (aborted) {
    res.outcome = Outcome::BudgetExhausted;
    return res;
  }
  res.outcome = Outcome::Done;
  res.order = count;
  res.group = Group(n, found_gens, found);
  return res;
}

// ---------------------------------------------------------------------------
// Right cosets

Perm canonical_right_coset(const StabilizerChain& h, const Perm& x) {
  std::vector<Point> cur = x.images(), tmp(cur.size());
  for (std::size_t l = 0; l < h.levels().size(); ++l) {
    const auto& lv = h.levels()[l];
    Point best = lv.orbit[0];
    for (Point q : lv.orbit)
      if (cur[q] < cur[best]) best = q;
    if (best == lv.base) continue;
    Perm u = h.transversal(l, best);
    mul_into(u.images(), cur, tmp);
    cur.swap(tmp);
  }
  return make_perm(std::move(cur));
}

std::vector<TransversalEntry> coset_transversal_words(const Group& g, const Group& h, std::uint64_t cap) {
  if (g.degree() != h.degree()) throw Error("degree mismatch in transversal");
  for (const auto& s : h.generators())
    if (!g.contains(s)) throw Error("subgroup generator not contained in group");
  const BigInt index = g.order() / h.order();
  const StabilizerChain& hc = h.chain();
  std::vector<TransversalEntry> reps;
  std::unordered_map<Perm, std::size_t, PermHash> seen;
  Perm id(g.degree());
  reps.push_back({id, {}});
  seen.emplace(canonical_right_coset(hc, id), 0);
  for (std::size_t i = 0; i < reps.size() && BigInt(reps.size()) < index; ++i) {
    for (std::size_t s = 0; s < g.generators().size(); ++s) {
      Perm cand = compose(reps[i].rep, g.generators()[s]);
      Perm key = canonical_right_coset(hc, cand);
      if (seen.count(key)) continue;
      if (reps.size() >= cap)
        throw CapExceeded("coset index exceeds cap", reps.size());
      seen.emplace(std::move(key), reps.size());
      Word w = reps[i].word;
      w.push_back(static_cast<int>(s));
      reps.push_back({std::move(cand), std::move(w)});
      if (BigInt(reps.size()) == index) break;
    }
  }
  return reps;
}

std::vector<Perm> coset_transversal(const Group& g, const Group& h, std::uint64_t cap) {
  std::vector<Perm> out;
  for (auto& e : coset_transversal_words(g, h, cap)) out.push_back(std::move(e.rep));
  return out;
}

}  // namespace ht
