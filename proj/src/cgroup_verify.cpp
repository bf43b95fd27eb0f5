#include "cgroup_verify.hpp"

#include <algorithm>
#include <bit>

namespace ht {

using nlohmann::json;

std::vector<int> mask_members(TypeMask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

std::string mask_string(TypeMask m) {
  std::string s = "{";
  bool first = true;
  for (int i : mask_members(m)) {
    if (!first) s += ",";
    s += std::to_string(i);
    first = false;
  }
  return s + "}";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

std::string to_string(IPMethod m) {
  switch (m) {
    case IPMethod::None: return "None";
    case IPMethod::GcdCertificate: return "GcdCertificate";
    case IPMethod::CountingCertificate: return "CountingCertificate";
    case IPMethod::ExactIntersection: return "ExactIntersection";
  }
  return "?";
}

TypedGroup::TypedGroup(Group g) : group_(std::move(g)), memo_(std::make_shared<Memo>()) {
  if (rank() > 31) throw Error("too many generators");
}

Group TypedGroup::parabolic(TypeMask J) const {
  if (J & ~full_mask(rank())) throw Error("type subset out of range");
  std::lock_guard lk(memo_->mu);
  auto it = memo_->groups.find(J);
  if (it != memo_->groups.end()) return it->second;
  std::vector<Perm> gens;
  std::vector<std::string> labels;
  for (int i : mask_members(J)) {
    gens.push_back(generator(i));
    labels.push_back("rho" + std::to_string(i));
  }
  Group p = J == full_mask(rank()) ? group_ : Group(degree(), std::move(gens), std::move(labels));
  memo_->groups.emplace(J, p);
  return p;
}

std::shared_ptr<const std::vector<std::uint32_t>> TypedGroup::orbit_ids(TypeMask J) const {
  {
    std::lock_guard lk(memo_->mu);
    auto it = memo_->orbits.find(J);
    if (it != memo_->orbits.end()) return it->second;
  }
  auto ids = std::make_shared<const std::vector<std::uint32_t>>(parabolic(J).orbit_ids());
  std::lock_guard lk(memo_->mu);
  return memo_->orbits.emplace(J, ids).first->second;
}

RelationsReport check_relations(const TypedGroup& g, const CoxeterMatrix& m) {
  RelationsReport r;
  if (m.rank() != g.rank()) {
    r.ok = false;
    r.failures.push_back("rank " + std::to_string(g.rank()) + " does not match diagram rank " +
                         std::to_string(m.rank()));
    return r;
  }
  for (int i = 0; i < g.rank(); ++i) {
    const Perm& p = g.generator(i);
    if (p.is_identity() || !compose(p, p).is_identity()) {
      r.ok = false;
      r.failures.push_back("rho" + std::to_string(i) + " is not an involution");
    }
  }
  for (int i = 0; i < g.rank(); ++i)
    for (int j = i + 1; j < g.rank(); ++j) {
      PairOrder po{i, j, m(i, j), element_order(compose(g.generator(i), g.generator(j)))};
      if (po.actual != po.expected) {
        r.ok = false;
        r.failures.push_back("order of rho" + std::to_string(i) + "rho" + std::to_string(j) + " is " +
                             po.actual.str() + ", expected " + std::to_string(po.expected));
      }
      r.pairs.push_back(std::move(po));
    }
  return r;
}

namespace {

BigInt bgcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

struct PairContext {
  Group A, B;
  BigInt orderA, orderB, target;
  std::shared_ptr<const std::vector<std::uint32_t>> idsB;
  std::vector<std::size_t> sizeB;  // per orbit id
};

PairContext pair_context(const TypedGroup& g, TypeMask J, int i, int j) {
  const TypeMask bi = TypeMask{1} << i, bj = TypeMask{1} << j;
  if (i == j || !(J & bi) || !(J & bj)) throw Error("pair must consist of two distinct members of the type subset");
  PairContext c{g.parabolic(J & ~bi), g.parabolic(J & ~bj), 0, 0, 0, g.orbit_ids(J & ~bj), {}};
  c.orderA = c.A.order();
  c.orderB = c.B.order();
  c.target = g.parabolic_order(J & ~bi & ~bj);
  for (auto id : *c.idsB) {
    if (id >= c.sizeB.size()) c.sizeB.resize(id + 1, 0);
    ++c.sizeB[id];
  }
  return c;
}

IPVertexData vertex_data(const PairContext& c, Point x) {
  IPVertexData d;
  auto oa = c.A.orbit(x);
  const auto& idsB = *c.idsB;
  std::size_t inter = 0;
  for (Point y : oa)
    if (idsB[y] == idsB[x]) ++inter;
  const std::size_t ob = c.sizeB[idsB[x]];
  d.orbit_intersection = inter;
  d.s_i = c.orderA / oa.size();
  d.s_j = c.orderB / ob;
  d.gcd = bgcd(d.s_i, d.s_j);
  d.gcd_ok = d.orbit_intersection * d.gcd <= c.target;
  return d;
}

IPPairResult blank(TypeMask J, int i, int j, const PairContext& c) {
  IPPairResult r;
  r.J = J;
  r.i = i;
  r.j = j;
  r.parabolic_order = c.target;
  return r;
}

IPPairResult certificate_scan(const TypedGroup& g, const PairContext& c, TypeMask J, int i, int j,
                              const IPOptions& o) {
  IPPairResult r = blank(J, i, j, c);
  const auto n = static_cast<Point>(g.degree());
  std::vector<IPVertexData> data(n);
  for (Point x = 0; x < n; ++x) {
    data[x] = vertex_data(c, x);
    if (data[x].gcd_ok) {
      r.verdict = Verdict::Pass;
      r.method = IPMethod::GcdCertificate;
      r.witness = x;
      r.orbit_intersection = data[x].orbit_intersection;
      r.s_i = data[x].s_i;
      r.s_j = data[x].s_j;
      r.stab_intersection = data[x].gcd;
      return r;
    }
  }
  // Counting form: exact |stab_A(x) cap stab_B(x)|, in vertex order.
  std::size_t tried = 0;
  for (Point x = 0; x < n; ++x) {
    if (data[x].orbit_intersection > c.target) continue;
    if (tried++ >= o.counting_scan_limit) break;
    auto res = subgroup_intersection(c.A.point_stabilizer(x), c.B.point_stabilizer(x), o.node_budget);
    r.nodes += res.nodes;
    if (res.outcome != Outcome::Done) continue;
    if (data[x].orbit_intersection * res.order <= c.target) {
      r.verdict = Verdict::Pass;
      r.method = IPMethod::CountingCertificate;
      r.witness = x;
      r.orbit_intersection = data[x].orbit_intersection;
      r.s_i = data[x].s_i;
      r.s_j = data[x].s_j;
      r.stab_intersection = res.order;
      return r;
    }
  }
  return r;
}

}  // namespace

IPVertexData ip_vertex_data(const TypedGroup& g, TypeMask J, int i, int j, Point x) {
  if (x >= g.degree()) throw Error("point out of range");
  return vertex_data(pair_context(g, J, i, j), x);
}

IPPairResult ip_pair_certificate(const TypedGroup& g, TypeMask J, int i, int j, const IPOptions& o) {
  auto c = pair_context(g, J, i, j);
  return certificate_scan(g, c, J, i, j, o);
}

IPPairResult ip_pair(const TypedGroup& g, TypeMask J, int i, int j, const IPOptions& o) {
  auto c = pair_context(g, J, i, j);
  if (o.try_certificates) {
    auto r = certificate_scan(g, c, J, i, j, o);
    if (r.verdict == Verdict::Pass) return r;
  }
  IPPairResult r = blank(J, i, j, c);
  auto res = subgroup_intersection(c.A, c.B, o.node_budget);
  r.nodes = res.nodes;
  r.method = IPMethod::ExactIntersection;
  if (res.outcome != Outcome::Done) {
    r.verdict = Verdict::Inconclusive;
    return r;
  }
  r.intersection_order = res.order;
  r.verdict = res.order == c.target ? Verdict::Pass : Verdict::Fail;
  return r;
}

IPReport verify_intersection_property(const TypedGroup& g, const IPOptions& o) {
  IPReport rep;
  const int n = g.rank();
  // Smaller residues first: each G_J is checked only after its own maximal parabolics.
  std::vector<TypeMask> masks;
  for (TypeMask J = 1; J <= full_mask(n); ++J)
    if (std::popcount(J) >= 2) masks.push_back(J);
  std::stable_sort(masks.begin(), masks.end(),
                   [](TypeMask a, TypeMask b) { return std::popcount(a) < std::popcount(b); });
  for (TypeMask J : masks) {
    auto mem = mask_members(J);
    for (std::size_t a = 0; a < mem.size(); ++a)
      for (std::size_t b = a + 1; b < mem.size(); ++b) {
        auto r = ip_pair(g, J, mem[a], mem[b], o);
        rep.overall = combine(rep.overall, r.verdict);
        rep.pairs.push_back(std::move(r));
      }
  }
  return rep;
}

json to_json(const RelationsReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"i", p.i}, {"j", p.j}, {"expected", p.expected}, {"actual", p.actual.str()}});
  return {{"ok", r.ok}, {"pairs", pairs}, {"failures", r.failures}};
}

json to_json(const IPPairResult& r) {
  json j = {{"residue", mask_members(r.J)},
            {"i", r.i},
            {"j", r.j},
            {"verdict", to_string(r.verdict)},
            {"method", to_string(r.method)},
            {"G_ij", r.parabolic_order.str()}};
  if (r.witness) {
    j["x"] = *r.witness;
    j["o_ij"] = r.orbit_intersection.str();
    j["s_i"] = r.s_i.str();
    j["s_j"] = r.s_j.str();
    j["stab_bound"] = r.stab_intersection.str();
  }
  if (r.method == IPMethod::ExactIntersection) j["intersection_order"] = r.intersection_order.str();
  if (r.nodes) j["nodes"] = r.nodes;
  return j;
}

json to_json(const IPReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs) pairs.push_back(to_json(p));
  return {{"verdict", to_string(r.overall)}, {"pairs", pairs}};
}

}  // namespace ht
