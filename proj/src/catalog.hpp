#pragma once

#include "coset_enum.hpp"
#include "cpr_graph.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ht {

enum class HyperbolicType { T3334, T3335, T3434, T3435, T3535, T33334, Y5_33, Y53_33 };

const std::vector<HyperbolicType>& all_types();
// Names as accepted by the CLI: "3334", ..., "33334", "5-33", "53-33".
std::string type_name(HyperbolicType t);
std::optional<HyperbolicType> parse_type(const std::string& s);

// What is expected of the maximal parabolic G_i (generator i dropped).
struct ResidueFact {
  BigInt order;
  BigInt period;  // order of the product of the remaining generators in index order
};

// Half graph for the crossed-double types: the coset action of a finite
// Coxeter group, relabelled, with extra edges, then crossed and covered.
struct YBase {
  CoxeterMatrix coxeter;
  std::vector<int> parabolic;
  std::vector<Point> relabel;     // coset index -> vertex
  std::vector<Edge> extra;        // added to the half graph after relabelling
  std::vector<CrossSpec> crosses;
  std::vector<Edge> dotted;       // (c,u,v): (u,l) -- (v,l+1) in the doubled graph
};

struct ConstructionSpec {
  HyperbolicType type = HyperbolicType::T3334;
  int rank = 0;
  int min_t = 1;
  std::size_t base_degree = 0;
  CoxeterMatrix diagram;
  std::map<int, ResidueFact> residues;
  std::optional<VoltageGraph> voltage;
  std::optional<YBase> y;
  std::string provenance;
};

CoxeterMatrix expected_diagram(HyperbolicType t);
std::map<int, ResidueFact> expected_residues(HyperbolicType t);
int min_t(HyperbolicType t);
// Vertex count of the t = 1 graph when it is fixed independently of the data file.
std::optional<std::size_t> known_base_degree(HyperbolicType t);

struct DataMissing : Error {
  using Error::Error;
};
struct DataCorrupt : Error {
  using Error::Error;
};

// HYPERTOPE_DATA_DIR if set, else the directory configured at build time.
std::string default_data_dir();
std::string data_file_name(HyperbolicType t);
bool data_available(HyperbolicType t, const std::string& dir);

// Reads and checks the data file against the SHA256SUMS manifest in dir.
ConstructionSpec load_construction(HyperbolicType t, const std::string& dir);
ConstructionSpec construction_from_json(HyperbolicType t, const nlohmann::json& j);

// The half graph (Y-types) or the voltage graph, as a voltage graph over the base vertices.
VoltageGraph base_voltage_graph(const ConstructionSpec& s);
ColoredGraph build(const ConstructionSpec& s, std::size_t t);

std::string sha256_hex(const std::string& bytes);

}  // namespace ht
