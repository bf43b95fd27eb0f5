// hypertope: build, verify, census and export the hyperbolic hypertope families.
#include "hypertope/hypertope.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <string>

namespace {

constexpr int kExitError = 3;  // could not run: bad input, missing or corrupt data, I/O

struct Common {
  std::string type;
  std::uint64_t t = 1;
  std::string t_range;
  std::string out;
  std::string format;
  std::uint64_t geometry_cap = 1'000'000;
  std::uint64_t node_budget = 10'000'000;
  std::uint64_t witness_trials = 1'000'000;
  std::uint64_t seed = 0x5EED;
  std::string data_dir;
  unsigned threads = 0;
  bool no_geometry = false;
  bool geometry_export = false;
};

struct CString {
  char* p = nullptr;
  ~CString() { ht_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using Options = std::unique_ptr<ht_options, decltype(&ht_options_free)>;

const char* status_name(ht_status s) {
  switch (s) {
    case HT_OK: return "Ok";
    case HT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case HT_ERR_DATA_MISSING: return "DataMissing";
    case HT_ERR_DATA_CORRUPT: return "DataCorrupt";
    case HT_ERR_CAP_EXCEEDED: return "CapExceeded";
    case HT_ERR_IO: return "IO";
    case HT_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

// Machine-readable failure on stdout, human-readable on stderr.
int report_error(ht_status s, const std::string& stage) {
  nlohmann::json j = {{"verdict", "Error"},
                      {"exit_code", kExitError},
                      {"failure", {{"stage", stage}, {"status", status_name(s)}, {"reason", ht_last_error()}}}};
  std::cout << j.dump(1) << "\n";
  std::cerr << "hypertope: " << stage << ": " << ht_last_error() << "\n";
  return kExitError;
}

Options make_options(const Common& c) {
  ht_options* raw = nullptr;
  if (ht_options_create(&raw) != HT_OK) throw std::runtime_error(ht_last_error());
  Options o(raw, &ht_options_free);
  ht_options_set_node_budget(raw, c.node_budget);
  ht_options_set_witness_trials(raw, c.witness_trials);
  ht_options_set_seed(raw, c.seed);
  ht_options_set_geometry_cap(raw, c.geometry_cap);
  ht_options_set_geometry(raw, c.no_geometry ? 0 : 1);
  ht_options_set_threads(raw, c.threads);
  if (!c.data_dir.empty()) ht_options_set_data_dir(raw, c.data_dir.c_str());
  return o;
}

std::string safe(std::string s) {
  for (auto& ch : s)
    if (ch == '-' || ch == ',') ch = '_';
  return s;
}

// Writes to out/name, or to stdout when no directory was given.
bool emit(const Common& c, const std::string& name, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    if (!body.empty() && body.back() != '\n') std::cout << "\n";
    return true;
  }
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  const auto path = std::filesystem::path(c.out) / name;
  std::ofstream f(path, std::ios::binary);
  f << body;
  if (!f) {
    std::cerr << "hypertope: cannot write " << path.string() << "\n";
    return false;
  }
  std::cerr << "wrote " << path.string() << "\n";
  return true;
}

void add_budget_flags(CLI::App* s, Common& c) {
  s->add_option("--geometry-cap", c.geometry_cap, "Largest number of elements per type to materialize")
      ->envname("HYPERTOPE_GEOMETRY_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--node-budget", c.node_budget, "Backtrack node budget for exact intersections")
      ->envname("HYPERTOPE_NODE_BUDGET")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--witness-trials", c.witness_trials, "Random trials when searching coset witnesses")
      ->envname("HYPERTOPE_WITNESS_TRIALS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s->add_option("--seed", c.seed, "Seed for the witness search")->envname("HYPERTOPE_SEED")->capture_default_str();
  s->add_option("--data-dir", c.data_dir, "Directory with the construction data and SHA256SUMS")
      ->envname("HYPERTOPE_DATA_DIR");
  s->add_option("--out", c.out, "Write files into this directory instead of stdout")->envname("HYPERTOPE_OUT");
}

int cmd_verify(const Common& c) {
  auto o = make_options(c);
  ht_report* rep = nullptr;
  if (auto s = ht_verify(c.type.c_str(), c.t, o.get(), &rep); s != HT_OK)
    return report_error(s, s == HT_ERR_DATA_MISSING || s == HT_ERR_DATA_CORRUPT ? "load" : "verify");
  std::unique_ptr<ht_report, decltype(&ht_report_free)> guard(rep, &ht_report_free);
  CString js;
  ht_report_json(rep, &js.p);
  ht_verdict v = HT_INCONCLUSIVE;
  ht_report_verdict(rep, &v);
  auto j = nlohmann::json::parse(js.str());
  for (const auto& w : j["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  if (!emit(c, "verify_" + safe(c.type) + "_t" + std::to_string(c.t) + ".json", js.str())) return kExitError;
  if (!c.out.empty()) {
    std::cout << c.type << " t=" << c.t << " |G|=" << j.value("order", "?") << " " << j["verdict"].get<std::string>();
    if (j.contains("failure")) std::cout << " at " << j["failure"]["stage"].get<std::string>();
    std::cout << "\n";
  }
  return static_cast<int>(v);
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_range(const std::string& s) {
  static const std::regex re(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  auto a = std::stoull(m[1]), b = std::stoull(m[2]);
  if (a < 1 || b < a) return std::nullopt;
  return std::make_pair(a, b);
}

int cmd_census(const Common& c, bool t_given) {
  std::uint64_t a = 1, b = 6;
  if (!c.t_range.empty()) {
    auto r = parse_range(c.t_range);
    if (!r) {
      std::cerr << "hypertope: --t-range expects A..B with 1 <= A <= B\n";
      return kExitError;
    }
    std::tie(a, b) = *r;
  } else if (t_given) {
    a = b = c.t;
  }
  const std::string fmt = c.format.empty() ? "csv" : c.format;
  if (fmt != "csv" && fmt != "json") {
    std::cerr << "hypertope: census writes csv or json\n";
    return kExitError;
  }
  auto o = make_options(c);
  CString body;
  ht_verdict worst = HT_PASS;
  const std::string types = c.type.empty() ? "all" : c.type;
  if (auto s = ht_census(types.c_str(), a, b, o.get(), fmt == "csv" ? HT_FORMAT_CSV : HT_FORMAT_JSON, &body.p, &worst);
      s != HT_OK)
    return report_error(s, "census");
  if (!emit(c, "census_" + safe(types) + "_t" + std::to_string(a) + "-" + std::to_string(b) + "." + fmt, body.str()))
    return kExitError;
  return static_cast<int>(worst);
}

int cmd_export(const Common& c) {
  const std::string fmt = c.format.empty() ? "json" : c.format;
  if (fmt != "json" && fmt != "dot") {
    std::cerr << "hypertope: export writes json or dot\n";
    return kExitError;
  }
  const ht_format f = fmt == "dot" ? HT_FORMAT_DOT : HT_FORMAT_JSON;
  auto o = make_options(c);
  ht_graph* g = nullptr;
  if (auto s = ht_build(c.type.c_str(), c.t, o.get(), &g); s != HT_OK)
    return report_error(s, s == HT_ERR_DATA_MISSING || s == HT_ERR_DATA_CORRUPT ? "load" : "build");
  std::unique_ptr<ht_graph, decltype(&ht_graph_free)> guard(g, &ht_graph_free);
  const std::string stem = safe(c.type) + "_t" + std::to_string(c.t);
  CString body;
  if (auto s = ht_graph_export(g, f, &body.p); s != HT_OK) return report_error(s, "export");
  if (!emit(c, "X_" + stem + "." + fmt, body.str())) return kExitError;
  if (c.geometry_export) {
    CString geo;
    if (auto s = ht_geometry_export(g, f, o.get(), &geo.p); s != HT_OK) return report_error(s, "geometry");
    if (!emit(c, "Gamma_" + stem + "." + fmt, geo.str())) return kExitError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular hypertopes of hyperbolic type from CPR graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ht_version()));
  Common c;

  auto* verify = app.add_subcommand("verify", "Build one construction and verify it; exit 0 Pass, 1 Fail, 2 Inconclusive");
  verify->add_option("--type", c.type, "Diagram type, e.g. 3334, 33334, 5-33, 53-33")
      ->envname("HYPERTOPE_TYPE")
      ->required();
  verify->add_option("--t", c.t, "Number of layers of the cyclic cover")
      ->envname("HYPERTOPE_T")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--format", c.format, "Report format")->envname("HYPERTOPE_FORMAT")->check(CLI::IsMember({"json"}));
  verify->add_flag("--no-geometry", c.no_geometry, "Skip materializing the coset geometry");
  add_budget_flags(verify, c);

  auto* census = app.add_subcommand("census", "Verify every (type, t) in a range and check that t divides |G|");
  census->add_option("--type", c.type, "Comma-separated types, or all (default: every type with data)")
      ->envname("HYPERTOPE_TYPE");
  auto* census_t = census->add_option("--t", c.t, "A single t")->envname("HYPERTOPE_T")->check(CLI::PositiveNumber);
  census->add_option("--t-range", c.t_range, "Range A..B (default 1..6)")->envname("HYPERTOPE_T_RANGE");
  census->add_option("--format", c.format, "csv or json")
      ->envname("HYPERTOPE_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}));
  census->add_option("--threads", c.threads, "Worker threads (0: hardware concurrency)")->envname("HYPERTOPE_THREADS");
  add_budget_flags(census, c);

  auto* exp = app.add_subcommand("export", "Write the CPR graph (and optionally its coset geometry) as JSON or DOT");
  exp->add_option("--type", c.type, "Diagram type")->envname("HYPERTOPE_TYPE")->required();
  exp->add_option("--t", c.t, "Number of layers")->envname("HYPERTOPE_T")->check(CLI::PositiveNumber)->capture_default_str();
  exp->add_option("--format", c.format, "json or dot")->envname("HYPERTOPE_FORMAT")->check(CLI::IsMember({"json", "dot"}));
  exp->add_flag("--geometry", c.geometry_export, "Also export the coset geometry");
  add_budget_flags(exp, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }
  try {
    if (verify->parsed()) return cmd_verify(c);
    if (census->parsed()) return cmd_census(c, census_t->count() > 0);
    if (exp->parsed()) return cmd_export(c);
  } catch (const std::exception& e) {
    std::cerr << "hypertope: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
