#pragma once

#include "perm.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ht {

struct Edge {
  int colour = 0;
  Point u = 0, v = 0;
  bool dotted = false;  // produced from a voltage-1 edge; affects DOT styling only
  bool operator==(const Edge&) const = default;
};

// Proper edge-coloured graph; vertices 0..d-1, colours 0..n-1.
struct ColoredGraph {
  std::size_t d = 0;
  int n = 0;
  std::vector<Edge> edges;

  // Pairs of colour c with u < v, sorted.
  std::vector<std::pair<Point, Point>> matching(int c) const;
};

// Base graph for Z_t covers. Dotted edge (c,u,v) joins (u,l) to (v,l+1).
struct VoltageGraph {
  std::size_t d = 0;
  int n = 0;
  std::vector<Edge> solid;
  std::vector<Edge> dotted;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

enum class ComponentShape { Isolated, AlternatingPath, AlternatingCycle, General };

struct JComponent {
  std::vector<int> colours;
  std::vector<Point> vertices;  // ascending
  ComponentShape shape = ComponentShape::General;
};

struct CrossSpec {
  int colour = 0;      // colour of the crossed edge in the half graph
  Point u = 0, v = 0;  // its endpoints
  int new_colour = 0;  // colour of the two cross edges
  bool keep_original = false;
};

ValidationReport validate_proper(const ColoredGraph& g);
// Generator i swaps the endpoints of colour-i edges. Throws on an invalid graph.
Group induced_group(const ColoredGraph& g);
// Involutions per colour without validation beyond the matching property.
std::vector<Perm> colour_involutions(const ColoredGraph& g);

std::vector<JComponent> j_components(const ColoredGraph& g, const std::vector<int>& colours);
BigInt predicted_period(const ColoredGraph& g, int i, int j);

ColoredGraph cyclic_cover(const VoltageGraph& v, std::size_t t);
ColoredGraph crossed_double(const ColoredGraph& g, const std::vector<CrossSpec>& crosses);
ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b);
// Vertex x of g becomes vertex map[x].
ColoredGraph relabel(const ColoredGraph& g, const std::vector<Point>& map);

nlohmann::json to_json(const ColoredGraph& g);
nlohmann::json to_json(const VoltageGraph& v);
ColoredGraph colored_graph_from_json(const nlohmann::json& j);
VoltageGraph voltage_graph_from_json(const nlohmann::json& j);

// DOT export; when base_degree > 0, vertices are named (v,l) with 1-based v.
// Dotted edges are dashed.
std::string to_dot(const ColoredGraph& g, std::size_t base_degree = 0, const std::string& name = "X");

}  // namespace ht
