#include "cpr_graph.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace ht {

using nlohmann::json;

std::vector<std::pair<Point, Point>> ColoredGraph::matching(int c) const {
  std::vector<std::pair<Point, Point>> m;
  for (const auto& e : edges)
    if (e.colour == c) m.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(m.begin(), m.end());
  return m;
}

ValidationReport validate_proper(const ColoredGraph& g) {
  ValidationReport r;
  auto fail = [&](std::string s) {
    r.ok = false;
    r.violations.push_back(std::move(s));
  };
  if (g.n <= 0) fail("graph has no colours");
  std::vector<std::vector<long>> partner(static_cast<std::size_t>(std::max(g.n, 0)),
                                         std::vector<long>(g.d, -1));
  for (const auto& e : g.edges) {
    if (e.colour < 0 || e.colour >= g.n) {
      fail("edge colour " + std::to_string(e.colour) + " out of range");
      continue;
    }
    if (e.u >= g.d || e.v >= g.d) {
      fail("colour " + std::to_string(e.colour) + ": vertex out of range in edge " + std::to_string(e.u) + "-" +
           std::to_string(e.v));
      continue;
    }
    if (e.u == e.v) {
      fail("colour " + std::to_string(e.colour) + ": loop at vertex " + std::to_string(e.u));
      continue;
    }
    auto& p = partner[static_cast<std::size_t>(e.colour)];
    for (Point x : {e.u, e.v})
      if (p[x] != -1)
        fail("colour " + std::to_string(e.colour) + ": vertex " + std::to_string(x) + " matched twice");
    p[e.u] = e.v;
    p[e.v] = e.u;
  }
  if (!r.ok) return r;
  std::vector<std::vector<std::pair<Point, Point>>> ms;
  for (int c = 0; c < g.n; ++c) {
    ms.push_back(g.matching(c));
    if (ms.back().empty()) fail("colour " + std::to_string(c) + ": empty matching");
  }
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (!ms[static_cast<std::size_t>(i)].empty() && ms[static_cast<std::size_t>(i)] == ms[static_cast<std::size_t>(j)])
        fail("colours " + std::to_string(i) + " and " + std::to_string(j) + " have identical matchings");
  return r;
}

std::vector<Perm> colour_involutions(const ColoredGraph& g) {
  std::vector<std::vector<Point>> img(static_cast<std::size_t>(g.n), std::vector<Point>(g.d));
  for (auto& v : img) std::iota(v.begin(), v.end(), Point{0});
  for (const auto& e : g.edges) {
    if (e.colour < 0 || e.colour >= g.n || e.u >= g.d || e.v >= g.d) throw Error("edge out of range");
    auto& p = img[static_cast<std::size_t>(e.colour)];
    if (p[e.u] != e.u || p[e.v] != e.v || e.u == e.v)
      throw Error("colour " + std::to_string(e.colour) + " is not a matching");
    p[e.u] = e.v;
    p[e.v] = e.u;
  }
  std::vector<Perm> out;
  for (auto& v : img) out.emplace_back(std::move(v), Perm::Trusted{});
  return out;
}

Group induced_group(const ColoredGraph& g) {
  auto rep = validate_proper(g);
  if (!rep.ok) throw Error("invalid CPR-graph: " + rep.violations.front());
  std::vector<std::string> labels;
  for (int i = 0; i < g.n; ++i) labels.push_back("rho" + std::to_string(i));
  return Group(g.d, colour_involutions(g), std::move(labels));
}

std::vector<JComponent> j_components(const ColoredGraph& g, const std::vector<int>& colours) {
  if (colours.empty()) throw Error("empty colour set");
  std::set<int> J(colours.begin(), colours.end());
  std::vector<std::vector<Point>> adj(g.d);
  for (const auto& e : g.edges)
    if (J.count(e.colour)) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  std::vector<char> seen(g.d, 0);
  std::vector<JComponent> out;
  for (Point s = 0; s < g.d; ++s) {
    if (seen[s]) continue;
    JComponent comp;
    comp.colours.assign(J.begin(), J.end());
    std::vector<Point> stack{s};
    seen[s] = 1;
    std::size_t edge_ends = 0;
    while (!stack.empty()) {
      Point x = stack.back();
      stack.pop_back();
      comp.vertices.push_back(x);
      edge_ends += adj[x].size();
      for (Point y : adj[x])
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    if (J.size() == 2) {
      const std::size_t nv = comp.vertices.size(), ne = edge_ends / 2;
      if (nv == 1)
        comp.shape = ComponentShape::Isolated;
      else if (ne == nv)
        comp.shape = ComponentShape::AlternatingCycle;  // includes a doubled edge (2 vertices)
      else
        comp.shape = ComponentShape::AlternatingPath;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

BigInt predicted_period(const ColoredGraph& g, int i, int j) {
  if (i == j) throw Error("predicted_period needs two distinct colours");
  BigInt p = 1;
  for (const auto& c : j_components(g, {i, j})) {
    std::size_t k = c.vertices.size();
    std::size_t contrib = c.shape == ComponentShape::AlternatingCycle ? k / 2 : k;
    p = boost::multiprecision::lcm(p, BigInt(contrib));
  }
  return p;
}

ColoredGraph cyclic_cover(const VoltageGraph& v, std::size_t t) {
  if (t == 0) throw Error("cover index t must be positive");
  ColoredGraph g;
  g.d = v.d * t;
  g.n = v.n;
  for (std::size_t l = 0; l < t; ++l) {
    const auto off = static_cast<Point>(l * v.d), next = static_cast<Point>(((l + 1) % t) * v.d);
    for (const auto& e : v.solid) g.edges.push_back({e.colour, off + e.u, off + e.v});
    for (const auto& e : v.dotted) g.edges.push_back({e.colour, off + e.u, next + e.v, true});
  }
  auto rep = validate_proper(g);
  if (!rep.ok) throw Error("derived graph at t=" + std::to_string(t) + " is not proper: " + rep.violations.front());
  return g;
}

ColoredGraph crossed_double(const ColoredGraph& g, const std::vector<CrossSpec>& crosses) {
  const auto d = static_cast<Point>(g.d);
  ColoredGraph out;
  out.d = 2 * g.d;
  out.n = g.n;
  std::vector<char> crossed(g.edges.size(), 0);
  for (const auto& c : crosses) {
    auto it = std::find_if(g.edges.begin(), g.edges.end(), [&](const Edge& e) {
      return e.colour == c.colour && ((e.u == c.u && e.v == c.v) || (e.u == c.v && e.v == c.u));
    });
    if (it == g.edges.end())
      throw Error("crossed edge " + std::to_string(c.u) + "-" + std::to_string(c.v) + " of colour " +
                  std::to_string(c.colour) + " missing");
    auto idx = static_cast<std::size_t>(it - g.edges.begin());
    crossed[idx] = c.keep_original ? 2 : 1;
    out.n = std::max(out.n, c.new_colour + 1);
  }
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (crossed[k] == 1) continue;
    const auto& e = g.edges[k];
    out.edges.push_back(e);
    out.edges.push_back({e.colour, e.u + d, e.v + d, e.dotted});
  }
  for (const auto& c : crosses) {
    out.edges.push_back({c.new_colour, c.u, c.v + d});
    out.edges.push_back({c.new_colour, c.v, c.u + d});
  }
  return out;
}

ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
  if (a.n != b.n) throw Error("colour count mismatch in disjoint union");
  ColoredGraph out = a;
  out.d = a.d + b.d;
  const auto off = static_cast<Point>(a.d);
  for (const auto& e : b.edges) out.edges.push_back({e.colour, e.u + off, e.v + off, e.dotted});
  return out;
}

ColoredGraph relabel(const ColoredGraph& g, const std::vector<Point>& map) {
  if (map.size() != g.d) throw Error("relabelling has wrong size");
  Perm check(map);  // throws unless a bijection
  ColoredGraph out = g;
  for (auto& e : out.edges) {
    e.u = map[e.u];
    e.v = map[e.v];
  }
  return out;
}

namespace {

json edges_json(const std::vector<Edge>& es) {
  json a = json::array();
  for (const auto& e : es) a.push_back({e.colour, e.u, e.v});
  return a;
}

std::vector<Edge> edges_from(const json& a) {
  std::vector<Edge> out;
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 3) throw Error("edge must be [colour, u, v]");
    out.push_back({e[0].get<int>(), e[1].get<Point>(), e[2].get<Point>()});
  }
  return out;
}

}  // namespace

json to_json(const ColoredGraph& g) {
  // canonical edge order: by colour, then endpoints
  std::vector<Edge> es = g.edges;
  for (auto& e : es)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.colour, a.u, a.v) < std::tie(b.colour, b.u, b.v);
  });
  return {{"d", g.d}, {"n", g.n}, {"edges", edges_json(es)}};
}

json to_json(const VoltageGraph& v) {
  return {{"d", v.d}, {"n", v.n}, {"solid", edges_json(v.solid)}, {"dotted", edges_json(v.dotted)}};
}

ColoredGraph colored_graph_from_json(const json& j) {
  try {
    ColoredGraph g;
    g.d = j.at("d").get<std::size_t>();
    g.n = j.at("n").get<int>();
    g.edges = edges_from(j.at("edges"));
    return g;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed graph JSON: ") + e.what());
  }
}

VoltageGraph voltage_graph_from_json(const json& j) {
  try {
    VoltageGraph v;
    v.d = j.at("d").get<std::size_t>();
    v.n = j.at("n").get<int>();
    v.solid = edges_from(j.at("solid"));
    v.dotted = edges_from(j.value("dotted", json::array()));
    return v;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed voltage graph JSON: ") + e.what());
  }
}

std::string to_dot(const ColoredGraph& g, std::size_t base_degree, const std::string& name) {
  static const char* palette[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "black", "cyan"};
  auto vname = [&](Point x) {
    if (base_degree == 0) return std::to_string(x);
    return "\"(" + std::to_string(x % base_degree + 1) + "," + std::to_string(x / base_degree) + ")\"";
  };
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (Point x = 0; x < g.d; ++x) os << "  " << vname(x) << ";\n";
  std::vector<Edge> es = g.edges;
  for (auto& e : es)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.colour, a.u, a.v) < std::tie(b.colour, b.u, b.v);
  });
  for (const auto& e : es) {
    os << "  " << vname(e.u) << " -- " << vname(e.v) << " [label=\"" << e.colour << "\", color=\""
       << palette[static_cast<std::size_t>(e.colour) % 8] << "\"" << (e.dotted ? ", style=dashed" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ht
