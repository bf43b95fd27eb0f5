#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace ht {

using nlohmann::json;

std::string to_string(GeometryStatus s) {
  switch (s) {
    case GeometryStatus::NotRequested: return "NotRequested";
    case GeometryStatus::Materialized: return "Materialized";
    case GeometryStatus::TooLarge: return "TooLarge";
    case GeometryStatus::Skipped: return "Skipped";
  }
  return "?";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 1;
}

std::string vertex_label(Point x, std::size_t base_degree) {
  if (base_degree == 0) return std::to_string(x + 1);
  return "(" + std::to_string(x % base_degree + 1) + "," + std::to_string(x / base_degree) + ")";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void fail(VerifyReport& r, const std::string& stage, const std::string& reason) {
  r.verdict = Verdict::Fail;
  r.failed_stage = stage;
  r.reason = reason;
}

std::vector<ResidueCheck> residue_checks(const TypedGroup& g, const std::map<int, ResidueFact>& facts) {
  std::vector<ResidueCheck> out;
  const int n = g.rank();
  for (int i = 0; i < n; ++i) {
    ResidueCheck c;
    c.i = i;
    const TypeMask m = full_mask(n) & ~(TypeMask{1} << i);
    c.order = g.parabolic_order(m);
    Perm cox(g.degree());
    for (int j : mask_members(m)) cox = compose(cox, g.generator(j));
    c.period = element_order(cox);
    if (auto it = facts.find(i); it != facts.end()) {
      c.expected_order = it->second.order;
      c.expected_period = it->second.period;
      c.ok = c.order == it->second.order && c.period == it->second.period;
    }
    out.push_back(std::move(c));
  }
  return out;
}

GeometryResult run_geometry(const TypedGroup& g, const BigInt& order, const VerifyConfig& c) {
  GeometryResult r;
  r.indices = geometry_indices(g);
  const bool small = std::all_of(r.indices.begin(), r.indices.end(),
                                 [&](const BigInt& x) { return x <= BigInt(c.geometry_cap); });
  if (!small || order > BigInt(c.chamber_cap)) {
    r.status = GeometryStatus::TooLarge;
    r.note = "geometry exceeds the cap; regular by the C-group criterion (IP + FT verified), not materialized";
    return r;
  }
  auto s = build_geometry(g, c.geometry_cap);
  auto ch = enumerate_chambers(s, c.chamber_cap);
  r.status = GeometryStatus::Materialized;
  r.chambers = ch.count;
  r.chambers_match = ch.complete && BigInt(ch.count) == order;
  r.thin = check_thin(s);
  r.connected = check_residually_connected(s);
  r.verdict = r.chambers_match && r.thin.ok && r.connected.ok ? Verdict::Pass : Verdict::Fail;
  r.note = r.verdict == Verdict::Pass ? "thin, residually connected, chambers = |G|"
                                      : "materialized geometry contradicts the verified premises";
  return r;
}

}  // namespace

VerifyReport verify_graph(const ColoredGraph& graph, const CoxeterMatrix& diagram,
                          const std::map<int, ResidueFact>& residues, const VerifyConfig& c) {
  const auto t0 = Clock::now();
  VerifyReport r;
  r.degree = graph.d;
  r.validation = validate_proper(graph);
  if (!r.validation.ok) {
    fail(r, "validate", r.validation.violations.empty() ? "invalid graph" : r.validation.violations.front());
    r.seconds = seconds_since(t0);
    return r;
  }
  TypedGroup g(induced_group(graph));
  r.relations = check_relations(g, diagram);
  if (!r.relations.ok) {
    fail(r, "relations", r.relations.failures.empty() ? "relations differ" : r.relations.failures.front());
    r.seconds = seconds_since(t0);
    return r;
  }
  r.order = g.group().order();
  r.residues = residue_checks(g, residues);
  for (const auto& rc : r.residues)
    if (!rc.ok) {
      fail(r, "residues", "G_" + std::to_string(rc.i) + " has order " + rc.order.str() + " and period " +
                              rc.period.str() + ", expected " + rc.expected_order->str() + " and " +
                              rc.expected_period->str());
      r.seconds = seconds_since(t0);
      return r;
    }

  // Both properties are computed even when one fails, so reports show each verdict.
  r.ip = verify_intersection_property(g, c.ip);
  r.ft = verify_flag_transitive(g, c.ft);
  if (r.ip->overall != Verdict::Pass) {
    for (const auto& p : r.ip->pairs)
      if (p.verdict == r.ip->overall) {
        r.failed_stage = "ip";
        r.reason = "pair {" + std::to_string(p.i) + "," + std::to_string(p.j) + "} in residue " + mask_string(p.J) +
                   ": " + to_string(p.verdict);
        if (p.method == IPMethod::ExactIntersection && p.verdict == Verdict::Fail)
          r.reason += " (|A cap B| = " + p.intersection_order.str() + ", |G_ij| = " + p.parabolic_order.str() + ")";
        break;
      }
  } else if (r.ft->overall != Verdict::Pass) {
    for (const auto& tr : r.ft->triples)
      if (tr.verdict == r.ft->overall) {
        r.failed_stage = "ft";
        r.reason = "triple " + mask_string(TypeMask{1} << tr.i | TypeMask{1} << tr.j | TypeMask{1} << tr.k) +
                   " in residue " + mask_string(tr.J) + ": " + to_string(tr.verdict);
        if (!tr.note.empty()) r.reason += " (" + tr.note + ")";
        break;
      }
  }
  const Verdict premises = combine(r.ip->overall, r.ft->overall);
  if (premises != Verdict::Pass) {
    r.verdict = premises;
    r.geometry.status = c.geometry ? GeometryStatus::Skipped : GeometryStatus::NotRequested;
    r.seconds = seconds_since(t0);
    return r;
  }
  r.verdict = Verdict::Pass;
  r.conclusion = "regular hypertope: C-group with the intersection property, flag-transitive";
  if (c.geometry) {
    r.geometry = run_geometry(g, r.order, c);
    if (r.geometry.verdict != Verdict::Pass) fail(r, "geometry", r.geometry.note);
    else if (r.geometry.status == GeometryStatus::Materialized)
      r.conclusion += "; coset geometry materialized and audited";
    else
      r.conclusion += "; coset geometry not materialized (above cap)";
  }
  r.seconds = seconds_since(t0);
  return r;
}

VerifyReport verify_type(HyperbolicType type, std::size_t t, const VerifyConfig& c) {
  if (t < 1) throw Error("t must be positive");
  const auto t0 = Clock::now();
  auto spec = load_construction(type, c.data_dir.empty() ? default_data_dir() : c.data_dir);
  std::optional<ColoredGraph> graph;
  std::string build_error;
  try {
    graph = build(spec, t);
  } catch (const CosetCapExceeded&) {
    throw;
  } catch (const Error& e) {
    build_error = e.what();  // the data describe no proper graph at this t
  }
  VerifyReport r;
  if (graph) {
    r = verify_graph(*graph, spec.diagram, spec.residues, c);
  } else {
    r.validation.ok = false;
    r.validation.violations.push_back(build_error);
    fail(r, "validate", build_error);
  }
  r.type = type_name(type);
  r.t = t;
  r.base_degree = spec.base_degree;
  r.min_t = spec.min_t;
  if (static_cast<int>(t) < spec.min_t)
    r.warnings.push_back("t = " + std::to_string(t) + " is below " + std::to_string(spec.min_t) +
                         ": vertex certificates are not expected for every pair or triple here; exact checks decide");
  r.seconds = seconds_since(t0);
  return r;
}

namespace {

json with_labels(json arr, std::size_t base_degree) {
  for (auto& e : arr)
    if (e.contains("x")) e["x_label"] = vertex_label(e["x"].get<Point>(), base_degree);
  return arr;
}

json audit_json(const AuditReport& a) {
  return {{"ok", a.ok}, {"checked", a.checked}, {"violations", a.violations}};
}

std::vector<std::string> strs(const std::vector<BigInt>& v) {
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

}  // namespace

json to_json(const VerifyReport& r) {
  json j;
  j["type"] = r.type;
  j["t"] = r.t;
  j["base_degree"] = r.base_degree;
  j["degree"] = r.degree;
  j["min_t"] = r.min_t;
  j["verdict"] = to_string(r.verdict);
  j["exit_code"] = exit_code(r.verdict);
  if (!r.failed_stage.empty()) j["failure"] = {{"stage", r.failed_stage}, {"reason", r.reason}};
  j["validation"] = {{"ok", r.validation.ok}, {"violations", r.validation.violations}};
  j["relations"] = to_json(r.relations);
  if (!r.order.is_zero()) j["order"] = r.order.str();
  json res = json::array();
  for (const auto& c : r.residues) {
    json e = {{"i", c.i}, {"order", c.order.str()}, {"period", c.period.str()}, {"ok", c.ok}};
    if (c.expected_order) e["expected_order"] = c.expected_order->str();
    if (c.expected_period) e["expected_period"] = c.expected_period->str();
    res.push_back(e);
  }
  j["residues"] = res;
  if (r.ip) {
    auto ip = to_json(*r.ip);
    ip["pairs"] = with_labels(ip["pairs"], r.base_degree);
    j["intersection_property"] = ip;
  }
  if (r.ft) {
    auto ft = to_json(*r.ft);
    ft["triples"] = with_labels(ft["triples"], r.base_degree);
    j["flag_transitivity"] = ft;
  }
  json geo = {{"status", to_string(r.geometry.status)}};
  if (!r.geometry.indices.empty()) geo["indices"] = strs(r.geometry.indices);
  if (r.geometry.status == GeometryStatus::Materialized) {
    geo["chambers"] = r.geometry.chambers;
    geo["chambers_match_order"] = r.geometry.chambers_match;
    geo["thin"] = audit_json(r.geometry.thin);
    geo["residually_connected"] = audit_json(r.geometry.connected);
    geo["verdict"] = to_string(r.geometry.verdict);
  }
  if (!r.geometry.note.empty()) geo["note"] = r.geometry.note;
  j["geometry"] = geo;
  if (!r.conclusion.empty()) j["conclusion"] = r.conclusion;
  j["warnings"] = r.warnings;
  return j;
}

std::vector<CensusRow> run_census(const std::vector<HyperbolicType>& types, std::size_t t_from, std::size_t t_to,
                                  const VerifyConfig& c, unsigned threads) {
  if (t_from < 1 || t_to < t_from) throw Error("invalid t range");
  std::vector<std::pair<HyperbolicType, std::size_t>> jobs;
  for (auto ty : types)
    for (std::size_t t = t_from; t <= t_to; ++t) jobs.emplace_back(ty, t);
  std::vector<CensusRow> rows(jobs.size());
  VerifyConfig cfg = c;
  cfg.geometry = false;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      auto [ty, t] = jobs[k];
      CensusRow& row = rows[k];
      row.type = type_name(ty);
      row.t = t;
      const auto t0 = Clock::now();
      try {
        auto r = verify_type(ty, t, cfg);
        row.degree = r.degree;
        row.order = r.order;
        row.relations = r.validation.ok && r.relations.ok ? Verdict::Pass : Verdict::Fail;
        row.ip = r.ip ? r.ip->overall : Verdict::Inconclusive;
        row.ft = r.ft ? r.ft->overall : Verdict::Inconclusive;
        for (const auto& rc : r.residues) row.residue_orders.push_back(rc.order);
        row.t_divides_order = !r.order.is_zero() && r.order % t == 0;
        if (!r.failed_stage.empty() && r.failed_stage != "ip" && r.failed_stage != "ft") row.error = r.reason;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      row.wall_ms = seconds_since(t0) * 1000.0;
    }
  };
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

json to_json(const CensusRow& r) {
  json j = {{"type", r.type},
            {"t", r.t},
            {"degree", r.degree},
            {"order", r.order.str()},
            {"relations", to_string(r.relations)},
            {"ip", to_string(r.ip)},
            {"ft", to_string(r.ft)},
            {"residue_orders", strs(r.residue_orders)},
            {"t_divides_order", r.t_divides_order},
            {"wall_ms", r.wall_ms}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

json census_json(const std::vector<CensusRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

std::string census_csv(const std::vector<CensusRow>& rows, bool with_time) {
  std::ostringstream os;
  os << "type,t,degree,order,relations,ip,ft,residue_orders,t_divides_order";
  if (with_time) os << ",wall_ms";
  os << ",error\n";
  for (const auto& r : rows) {
    std::string res;
    for (const auto& x : r.residue_orders) res += (res.empty() ? "" : ";") + x.str();
    os << r.type << ',' << r.t << ',' << r.degree << ',' << r.order.str() << ',' << to_string(r.relations) << ','
       << to_string(r.ip) << ',' << to_string(r.ft) << ',' << res << ',' << (r.t_divides_order ? "true" : "false");
    if (with_time) os << ',' << static_cast<long long>(r.wall_ms + 0.5);
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << ',' << err << '\n';
  }
  return os.str();
}

}  // namespace ht
