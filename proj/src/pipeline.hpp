#pragma once

#include "catalog.hpp"
#include "cgroup_verify.hpp"
#include "flag_verify.hpp"
#include "tits_geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ht {

struct VerifyConfig {
  std::string data_dir;  // empty: default_data_dir()
  IPOptions ip;
  FTOptions ft;
  bool geometry = true;
  std::uint64_t geometry_cap = 1'000'000;  // elements per type
  std::uint64_t chamber_cap = 10'000'000;  // chambers, i.e. |G|
};

struct ResidueCheck {
  int i = 0;
  BigInt order, period;
  std::optional<BigInt> expected_order, expected_period;
  bool ok = true;
};

enum class GeometryStatus { NotRequested, Materialized, TooLarge, Skipped };
std::string to_string(GeometryStatus s);

struct GeometryResult {
  GeometryStatus status = GeometryStatus::NotRequested;
  std::vector<BigInt> indices;
  std::uint64_t chambers = 0;
  bool chambers_match = false;
  AuditReport thin, connected;
  Verdict verdict = Verdict::Pass;
  std::string note;
};

struct VerifyReport {
  std::string type;
  std::size_t t = 0, base_degree = 0, degree = 0;
  int min_t = 1;
  BigInt order;
  ValidationReport validation;
  RelationsReport relations;
  std::vector<ResidueCheck> residues;
  std::optional<IPReport> ip;
  std::optional<FTReport> ft;
  GeometryResult geometry;
  Verdict verdict = Verdict::Inconclusive;
  std::string failed_stage;  // empty when nothing failed
  std::string reason;
  std::string conclusion;
  std::vector<std::string> warnings;
  double seconds = 0;
};

// Checks of an already built graph against a diagram and residue table.
VerifyReport verify_graph(const ColoredGraph& g, const CoxeterMatrix& diagram,
                          const std::map<int, ResidueFact>& residues, const VerifyConfig& c);
// Loads the construction, builds it for t and verifies it. Data errors propagate.
VerifyReport verify_type(HyperbolicType type, std::size_t t, const VerifyConfig& c);

// 0 Pass, 1 Fail, 2 Inconclusive.
int exit_code(Verdict v);

nlohmann::json to_json(const VerifyReport& r);

struct CensusRow {
  std::string type;
  std::size_t t = 0, degree = 0;
  BigInt order;
  Verdict relations = Verdict::Inconclusive, ip = Verdict::Inconclusive, ft = Verdict::Inconclusive;
  std::vector<BigInt> residue_orders;
  bool t_divides_order = false;
  double wall_ms = 0;
  std::string error;  // set when the row could not be computed
};

// One row per (type, t), in the order given; rows run on up to `threads` workers.
std::vector<CensusRow> run_census(const std::vector<HyperbolicType>& types, std::size_t t_from, std::size_t t_to,
                                  const VerifyConfig& c, unsigned threads = 0);
nlohmann::json to_json(const CensusRow& r);
nlohmann::json census_json(const std::vector<CensusRow>& rows);
std::string census_csv(const std::vector<CensusRow>& rows, bool with_time = true);

// Vertex (v, l) of a cover with base degree d, 1-based v as printed in tables.
std::string vertex_label(Point x, std::size_t base_degree);

}  // namespace ht
