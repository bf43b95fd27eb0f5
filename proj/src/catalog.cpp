#include "catalog.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef HYPERTOPE_DATA_DIR
#define HYPERTOPE_DATA_DIR "data/v1"
#endif

namespace ht {

using nlohmann::json;

const std::vector<HyperbolicType>& all_types() {
  static const std::vector<HyperbolicType> v = {HyperbolicType::T3334, HyperbolicType::T3335,  HyperbolicType::T3434,
                                                HyperbolicType::T3435, HyperbolicType::T3535,  HyperbolicType::T33334,
                                                HyperbolicType::Y5_33, HyperbolicType::Y53_33};
  return v;
}

std::string type_name(HyperbolicType t) {
  switch (t) {
    case HyperbolicType::T3334: return "3334";
    case HyperbolicType::T3335: return "3335";
    case HyperbolicType::T3434: return "3434";
    case HyperbolicType::T3435: return "3435";
    case HyperbolicType::T3535: return "3535";
    case HyperbolicType::T33334: return "33334";
    case HyperbolicType::Y5_33: return "5-33";
    case HyperbolicType::Y53_33: return "53-33";
  }
  return "?";
}

std::optional<HyperbolicType> parse_type(const std::string& s) {
  for (auto t : all_types())
    if (type_name(t) == s) return t;
  return std::nullopt;
}

namespace {

// Square diagrams: rho0-rho1-rho2-rho3-rho0 with labels p on 0-3 and q on 1-2.
CoxeterMatrix square(int p, int q) { return CoxeterMatrix::from_branches(4, {{0, 1, 3}, {1, 2, q}, {2, 3, 3}, {0, 3, p}}); }

}  // namespace

CoxeterMatrix expected_diagram(HyperbolicType t) {
  switch (t) {
    case HyperbolicType::T3334: return square(4, 3);
    case HyperbolicType::T3335: return square(5, 3);
    case HyperbolicType::T3434: return square(4, 4);
    case HyperbolicType::T3435: return square(5, 4);
    case HyperbolicType::T3535: return square(5, 5);
    case HyperbolicType::T33334:
      return CoxeterMatrix::from_branches(5, {{0, 1, 3}, {1, 2, 3}, {2, 3, 3}, {3, 4, 3}, {0, 4, 4}});
    case HyperbolicType::Y5_33: return CoxeterMatrix::from_branches(4, {{0, 1, 5}, {1, 2, 3}, {1, 3, 3}});
    case HyperbolicType::Y53_33:
      return CoxeterMatrix::from_branches(5, {{0, 1, 5}, {1, 2, 3}, {2, 3, 3}, {2, 4, 3}});
  }
  throw Error("unknown type");
}

std::map<int, ResidueFact> expected_residues(HyperbolicType t) {
  // (order, Coxeter-element period) of each maximal parabolic
  using R = std::vector<std::pair<int, int>>;
  R r;
  switch (t) {
    case HyperbolicType::T3334: r = {{24, 4}, {48, 6}, {48, 6}, {24, 4}}; break;
    case HyperbolicType::T3335: r = {{24, 4}, {120, 10}, {120, 10}, {24, 4}}; break;
    case HyperbolicType::T3434: r = {{48, 6}, {48, 6}, {48, 6}, {48, 6}}; break;
    case HyperbolicType::T3435: r = {{48, 6}, {120, 10}, {120, 10}, {48, 6}}; break;
    case HyperbolicType::T3535: r = {{120, 10}, {120, 10}, {120, 10}, {120, 10}}; break;
    case HyperbolicType::T33334: r = {{120, 5}, {384, 8}, {1152, 12}, {384, 8}, {120, 5}}; break;
    case HyperbolicType::Y5_33: r = {{24, 4}, {8, 2}, {120, 10}, {120, 10}}; break;
    case HyperbolicType::Y53_33: r = {{192, 6}, {48, 4}, {40, 10}, {14400, 30}, {14400, 30}}; break;
  }
  std::map<int, ResidueFact> out;
  for (std::size_t i = 0; i < r.size(); ++i) out[static_cast<int>(i)] = {BigInt(r[i].first), BigInt(r[i].second)};
  return out;
}

int min_t(HyperbolicType t) { return t == HyperbolicType::T33334 ? 1 : 2; }

std::optional<std::size_t> known_base_degree(HyperbolicType t) {
  switch (t) {
    case HyperbolicType::T3334: return 20;
    case HyperbolicType::T3335: return 14;
    case HyperbolicType::T3535: return 24;
    case HyperbolicType::T33334: return 112;
    case HyperbolicType::Y5_33: return 24;
    case HyperbolicType::Y53_33: return 240;
    default: return std::nullopt;
  }
}

std::string default_data_dir() {
  if (const char* e = std::getenv("HYPERTOPE_DATA_DIR"); e && *e) return e;
  return HYPERTOPE_DATA_DIR;
}

std::string data_file_name(HyperbolicType t) { return type_name(t) + ".json"; }

bool data_available(HyperbolicType t, const std::string& dir) {
  return std::filesystem::exists(std::filesystem::path(dir) / data_file_name(t));
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataMissing("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// sha256sum format: "<hex>  <name>" per line.
std::string manifest_digest(const std::filesystem::path& dir, const std::string& name) {
  auto mpath = dir / "SHA256SUMS";
  if (!std::filesystem::exists(mpath)) throw DataCorrupt("checksum manifest missing in " + dir.string());
  std::istringstream in(slurp(mpath));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string digest, file;
    ls >> digest >> file;
    if (!file.empty() && file[0] == '*') file.erase(0, 1);
    if (file == name) return digest;
  }
  throw DataCorrupt(name + " is not listed in the checksum manifest");
}

std::vector<Edge> edge_list(const json& a, std::size_t width = 3) {
  std::vector<Edge> out;
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != width) throw Error("edge must be [colour, u, v]");
    out.push_back({e[0].get<int>(), e[1].get<Point>(), e[2].get<Point>()});
  }
  return out;
}

}  // namespace

ConstructionSpec construction_from_json(HyperbolicType t, const json& j) {
  ConstructionSpec s;
  s.type = t;
  s.diagram = expected_diagram(t);
  s.rank = s.diagram.rank();
  s.residues = expected_residues(t);
  s.min_t = min_t(t);
  try {
    if (j.at("format").get<std::string>() != "hypertope-construction/1") throw Error("unsupported data format");
    if (j.at("type").get<std::string>() != type_name(t)) throw Error("data file is for another type");
    s.provenance = j.value("provenance", "");
    if (j.contains("voltage")) {
      s.voltage = voltage_graph_from_json(j.at("voltage"));
      s.base_degree = s.voltage->d;
      if (s.voltage->n != s.rank) throw Error("colour count does not match the diagram rank");
    } else if (j.contains("y_base")) {
      const auto& y = j.at("y_base");
      YBase b;
      b.coxeter = coxeter_matrix_from_json(y.at("coxeter"));
      b.parabolic = y.at("parabolic").get<std::vector<int>>();
      b.relabel = y.at("relabel").get<std::vector<Point>>();
      b.extra = edge_list(y.value("extra", json::array()));
      for (const auto& c : y.value("crosses", json::array())) {
        if (!c.is_array() || c.size() != 5) throw Error("cross must be [colour, u, v, new_colour, keep]");
        b.crosses.push_back({c[0].get<int>(), c[1].get<Point>(), c[2].get<Point>(), c[3].get<int>(), c[4].get<bool>()});
      }
      b.dotted = edge_list(y.value("dotted", json::array()));
      s.base_degree = 2 * b.relabel.size();
      s.y = std::move(b);
    } else {
      throw Error("data file has neither voltage nor y_base");
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed construction data: ") + e.what());
  }
  if (auto k = known_base_degree(t); k && *k != s.base_degree)
    throw Error("base vertex count " + std::to_string(s.base_degree) + " differs from the expected " +
                std::to_string(*k));
  return s;
}

ConstructionSpec load_construction(HyperbolicType t, const std::string& dir) {
  const std::filesystem::path d(dir);
  const auto name = data_file_name(t);
  if (!std::filesystem::exists(d / name)) throw DataMissing("no data file for type " + type_name(t) + " in " + dir);
  const std::string bytes = slurp(d / name);
  if (sha256_hex(bytes) != manifest_digest(d, name)) throw DataCorrupt("checksum mismatch for " + (d / name).string());
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::exception& e) {
    throw DataCorrupt(std::string("unparsable data file: ") + e.what());
  }
  return construction_from_json(t, j);
}

VoltageGraph base_voltage_graph(const ConstructionSpec& s) {
  if (s.voltage) return *s.voltage;
  if (!s.y) throw Error("construction has no base data");
  const auto& y = *s.y;
  CosetTable tab = enumerate_cosets(y.coxeter, y.parabolic);
  ColoredGraph half = relabel(coset_action(tab, y.coxeter.rank()), y.relabel);
  half.edges.insert(half.edges.end(), y.extra.begin(), y.extra.end());
  ColoredGraph dbl = crossed_double(half, y.crosses);
  VoltageGraph v;
  v.d = dbl.d;
  v.n = std::max(dbl.n, s.rank);
  v.solid = dbl.edges;
  for (auto& e : v.solid) e.dotted = false;
  v.dotted = y.dotted;
  return v;
}

ColoredGraph build(const ConstructionSpec& s, std::size_t t) { return cyclic_cover(base_voltage_graph(s), t); }

}  // namespace ht
