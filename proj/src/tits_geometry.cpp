#include "tits_geometry.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace ht {

using nlohmann::json;

IncidenceSystem::IncidenceSystem(std::vector<std::size_t> counts) : count_(std::move(counts)) {
  const auto n = count_.size();
  inc_.assign(n, std::vector<std::vector<std::vector<std::uint32_t>>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) inc_[i][j].assign(count_[i], {});
}

void IncidenceSystem::add_incidence(int i, std::uint32_t a, int j, std::uint32_t b) {
  if (i == j) throw Error("elements of the same type are never incident");
  if (i < 0 || j < 0 || i >= rank() || j >= rank() || a >= count(i) || b >= count(j))
    throw Error("incidence out of range");
  inc_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][a].push_back(b);
  inc_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][b].push_back(a);
}

void IncidenceSystem::finalize() {
  for (auto& row : inc_)
    for (auto& col : row)
      for (auto& v : col) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
      }
}

bool IncidenceSystem::incident(int i, std::uint32_t a, int j, std::uint32_t b) const {
  if (i == j) return a == b;
  const auto& v = neighbours(i, a, j);
  return std::binary_search(v.begin(), v.end(), b);
}

const std::vector<std::uint32_t>& IncidenceSystem::neighbours(int i, std::uint32_t a, int j) const {
  return inc_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][a];
}

std::size_t IncidenceSystem::incidence_pairs() const {
  std::size_t s = 0;
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      for (std::uint32_t a = 0; a < count(i); ++a) s += neighbours(i, a, j).size();
  return s;
}

std::vector<BigInt> geometry_indices(const TypedGroup& g) {
  std::vector<BigInt> out;
  const BigInt order = g.group().order();
  for (int i = 0; i < g.rank(); ++i) out.push_back(order / g.parabolic_order(full_mask(g.rank()) & ~(TypeMask{1} << i)));
  return out;
}

namespace {

// Right cosets of h in g with the generator action on them and a word per coset.
struct CosetSpace {
  std::vector<Word> words;
  std::vector<std::vector<std::uint32_t>> act;  // act[s][c]
};

CosetSpace coset_space(const Group& g, const Group& h, std::size_t expected) {
  const auto& hc = h.chain();
  const auto ngens = g.generators().size();
  CosetSpace cs;
  cs.act.assign(ngens, std::vector<std::uint32_t>(expected));
  std::vector<Perm> reps;
  std::unordered_map<Perm, std::uint32_t, PermHash> index;
  Perm id(g.degree());
  reps.push_back(id);
  cs.words.push_back({});
  index.emplace(canonical_right_coset(hc, id), 0);
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (std::size_t s = 0; s < ngens; ++s) {
      Perm next = compose(reps[c], g.generators()[s]);
      Perm key = canonical_right_coset(hc, next);
      auto it = index.find(key);
      std::uint32_t target;
      if (it == index.end()) {
        target = static_cast<std::uint32_t>(reps.size());
        if (target >= expected) throw Error("coset enumeration found more cosets than the index");
        index.emplace(std::move(key), target);
        Word w = cs.words[c];
        w.push_back(static_cast<int>(s));
        cs.words.push_back(std::move(w));
        reps.push_back(std::move(next));
      } else {
        target = it->second;
      }
      cs.act[s][c] = target;
    }
  if (reps.size() != expected) throw Error("coset enumeration found fewer cosets than the index");
  return cs;
}

}  // namespace

IncidenceSystem build_geometry(const TypedGroup& g, std::uint64_t cap) {
  const int n = g.rank();
  auto idx = geometry_indices(g);
  for (const auto& x : idx)
    if (x > BigInt(cap)) {
      std::string s = "geometry too large: indices";
      for (const auto& y : idx) s += " " + y.str();
      throw GeometryCapExceeded(s + " exceed cap " + std::to_string(cap), idx);
    }
  std::vector<std::size_t> counts;
  for (const auto& x : idx) counts.push_back(static_cast<std::size_t>(x));
  std::vector<CosetSpace> spaces;
  for (int i = 0; i < n; ++i)
    spaces.push_back(coset_space(g.group(), g.parabolic(full_mask(n) & ~(TypeMask{1} << i)), counts[static_cast<std::size_t>(i)]));

  IncidenceSystem s(counts);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& sj = spaces[static_cast<std::size_t>(j)];
      // type-j cosets meeting G_i: the orbit of the base coset under G_i
      std::vector<std::uint32_t> orb{0};
      std::vector<char> seen(counts[static_cast<std::size_t>(j)], 0);
      seen[0] = 1;
      for (std::size_t q = 0; q < orb.size(); ++q)
        for (int l = 0; l < n; ++l) {
          if (l == i) continue;
          auto y = sj.act[static_cast<std::size_t>(l)][orb[q]];
          if (!seen[y]) {
            seen[y] = 1;
            orb.push_back(y);
          }
        }
      // G_i g meets exactly the cosets b^g with b in that orbit
      const auto& si = spaces[static_cast<std::size_t>(i)];
      for (std::uint32_t c = 0; c < counts[static_cast<std::size_t>(i)]; ++c)
        for (std::uint32_t b : orb) {
          std::uint32_t y = b;
          for (int gen : si.words[c]) y = sj.act[static_cast<std::size_t>(gen)][y];
          s.add_incidence(i, c, j, y);
        }
    }
  s.finalize();
  return s;
}

namespace {

// Depth-first extension of partial flags over the listed types, in order.
// f receives each complete flag; returning false stops the search.
bool extend_flags(const IncidenceSystem& s, const std::vector<int>& types, Flag& flag, std::size_t depth,
                  const std::function<bool(const Flag&)>& f) {
  if (depth == types.size()) return f(flag);
  const int t = types[depth];
  auto ok = [&](std::uint32_t e) {
    for (std::size_t d = 0; d < depth; ++d) {
      const int u = types[d];
      if (!s.incident(u, static_cast<std::uint32_t>(flag[static_cast<std::size_t>(u)]), t, e)) return false;
    }
    return true;
  };
  auto visit = [&](std::uint32_t e) {
    if (!ok(e)) return true;
    flag[static_cast<std::size_t>(t)] = e;
    bool go = extend_flags(s, types, flag, depth + 1, f);
    flag[static_cast<std::size_t>(t)] = -1;
    return go;
  };
  if (depth == 0) {
    for (std::uint32_t e = 0; e < s.count(t); ++e)
      if (!visit(e)) return false;
  } else {
    const int u = types[0];
    for (std::uint32_t e : s.neighbours(u, static_cast<std::uint32_t>(flag[static_cast<std::size_t>(u)]), t))
      if (!visit(e)) return false;
  }
  return true;
}

// Elements of type t incident to every element of the flag.
std::vector<std::uint32_t> residue_elements(const IncidenceSystem& s, const Flag& flag, int t) {
  std::vector<std::uint32_t> out;
  int first = -1;
  for (int u = 0; u < s.rank(); ++u)
    if (flag[static_cast<std::size_t>(u)] >= 0) {
      first = u;
      break;
    }
  if (first < 0) {
    out.resize(s.count(t));
    std::iota(out.begin(), out.end(), 0u);
    return out;
  }
  for (std::uint32_t e : s.neighbours(first, static_cast<std::uint32_t>(flag[static_cast<std::size_t>(first)]), t)) {
    bool ok = true;
    for (int u = first + 1; u < s.rank() && ok; ++u)
      if (flag[static_cast<std::size_t>(u)] >= 0)
        ok = s.incident(u, static_cast<std::uint32_t>(flag[static_cast<std::size_t>(u)]), t, e);
    if (ok) out.push_back(e);
  }
  return out;
}

}  // namespace

std::string flag_string(const Flag& f) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t t = 0; t < f.size(); ++t)
    if (f[t] >= 0) {
      os << (first ? "" : ", ") << "type " << t << ": " << f[t];
      first = false;
    }
  os << "}";
  return os.str();
}

ChamberResult enumerate_chambers(const IncidenceSystem& s, std::uint64_t cap, std::size_t store_limit) {
  ChamberResult r;
  std::vector<int> types(static_cast<std::size_t>(s.rank()));
  std::iota(types.begin(), types.end(), 0);
  Flag flag(types.size(), -1);
  extend_flags(s, types, flag, 0, [&](const Flag& f) {
    if (r.count >= cap) {
      r.complete = false;
      return false;
    }
    ++r.count;
    if (r.chambers.size() < store_limit) r.chambers.push_back(f);
    return true;
  });
  return r;
}

AuditReport check_thin(const IncidenceSystem& s) {
  AuditReport r;
  const int n = s.rank();
  for (int i = 0; i < n; ++i) {
    std::vector<int> types;
    for (int t = 0; t < n; ++t)
      if (t != i) types.push_back(t);
    Flag flag(static_cast<std::size_t>(n), -1);
    extend_flags(s, types, flag, 0, [&](const Flag& f) {
      ++r.checked;
      auto ext = residue_elements(s, f, i);
      if (ext.size() != 2) {
        r.ok = false;
        if (r.violations.size() < 8)
          r.violations.push_back("flag " + flag_string(f) + " lies in " + std::to_string(ext.size()) + " chambers");
      }
      return true;
    });
  }
  return r;
}

AuditReport check_residually_connected(const IncidenceSystem& s) {
  AuditReport r;
  const int n = s.rank();
  std::vector<std::vector<std::int64_t>> pos;  // residue position per element, -1 outside
  for (int t = 0; t < n; ++t) pos.emplace_back(s.count(t), -1);
  for (TypeMask K = 0; K < full_mask(n) + 1; ++K) {
    auto types = mask_members(K);
    if (n - static_cast<int>(types.size()) < 2) continue;
    std::vector<int> rest;
    for (int t = 0; t < n; ++t)
      if (!(K & (TypeMask{1} << t))) rest.push_back(t);
    Flag flag(static_cast<std::size_t>(n), -1);
    extend_flags(s, types, flag, 0, [&](const Flag& f) {
      ++r.checked;
      // union-find over the residue's elements, indexed per type
      std::vector<std::vector<std::uint32_t>> elems;
      std::vector<std::size_t> offset;
      std::size_t total = 0;
      for (int t : rest) {
        elems.push_back(residue_elements(s, f, t));
        offset.push_back(total);
        total += elems.back().size();
      }
      std::vector<std::size_t> parent(total);
      std::iota(parent.begin(), parent.end(), std::size_t{0});
      std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      std::size_t comps = total;
      for (std::size_t b = 0; b < rest.size(); ++b)
        for (std::size_t q = 0; q < elems[b].size(); ++q) pos[static_cast<std::size_t>(rest[b])][elems[b][q]] = static_cast<std::int64_t>(offset[b] + q);
      for (std::size_t a = 0; a < rest.size(); ++a)
        for (std::size_t b = a + 1; b < rest.size(); ++b)
          for (std::size_t p = 0; p < elems[a].size(); ++p)
            for (std::uint32_t e : s.neighbours(rest[a], elems[a][p], rest[b])) {
              const auto q = pos[static_cast<std::size_t>(rest[b])][e];
              if (q < 0) continue;
              auto x = find(offset[a] + p), y = find(static_cast<std::size_t>(q));
              if (x != y) {
                parent[x] = y;
                --comps;
              }
            }
      for (std::size_t b = 0; b < rest.size(); ++b)
        for (auto e : elems[b]) pos[static_cast<std::size_t>(rest[b])][e] = -1;
      if (comps != 1) {
        r.ok = false;
        if (r.violations.size() < 8)
          r.violations.push_back("residue of flag " + flag_string(f) + " has " + std::to_string(comps) +
                                 " components");
      }
      return true;
    });
  }
  return r;
}

json to_json(const IncidenceSystem& s) {
  json inc = json::array();
  for (int i = 0; i < s.rank(); ++i)
    for (int j = i + 1; j < s.rank(); ++j)
      for (std::uint32_t a = 0; a < s.count(i); ++a)
        for (std::uint32_t b : s.neighbours(i, a, j)) inc.push_back({i, a, j, b});
  return {{"types", s.rank()}, {"elements", s.counts()}, {"incidence", inc}};
}

std::string to_dot(const IncidenceSystem& s, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int i = 0; i < s.rank(); ++i)
    for (std::uint32_t a = 0; a < s.count(i); ++a) os << "  \"" << i << ":" << a << "\";\n";
  for (int i = 0; i < s.rank(); ++i)
    for (int j = i + 1; j < s.rank(); ++j)
      for (std::uint32_t a = 0; a < s.count(i); ++a)
        for (std::uint32_t b : s.neighbours(i, a, j))
          os << "  \"" << i << ":" << a << "\" -- \"" << j << ":" << b << "\";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ht
