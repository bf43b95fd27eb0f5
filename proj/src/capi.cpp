#include "hypertope/hypertope.h"

#include "pipeline.hpp"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>

struct ht_options {
  ht::VerifyConfig cfg;
  unsigned threads = 0;
};

struct ht_graph {
  ht::ColoredGraph g;
  std::size_t base_degree = 0;
  std::string name;
};

struct ht_report {
  ht::VerifyReport r;
};

namespace {

thread_local std::string last_error;

ht_status set_error(ht_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Maps exceptions thrown by the core to status codes.
template <class F>
ht_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const ht::DataMissing& e) {
    return set_error(HT_ERR_DATA_MISSING, e.what());
  } catch (const ht::DataCorrupt& e) {
    return set_error(HT_ERR_DATA_CORRUPT, e.what());
  } catch (const ht::GeometryCapExceeded& e) {
    return set_error(HT_ERR_CAP_EXCEEDED, e.what());
  } catch (const ht::CosetCapExceeded& e) {
    return set_error(HT_ERR_CAP_EXCEEDED, e.what());
  } catch (const ht::Error& e) {
    return set_error(HT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(HT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return set_error(HT_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(HT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(HT_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(HT_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

ht::HyperbolicType type_arg(const char* s) {
  if (!s) throw ht::Error("type is NULL");
  auto t = ht::parse_type(s);
  if (!t) throw ht::Error(std::string("unknown type '") + s + "'");
  return *t;
}

const ht::VerifyConfig& config(const ht_options* o) {
  static const ht::VerifyConfig defaults;
  return o ? o->cfg : defaults;
}

std::string data_dir(const ht_options* o) {
  return o && !o->cfg.data_dir.empty() ? o->cfg.data_dir : ht::default_data_dir();
}

#define HT_REQUIRE(cond, msg) \
  if (!(cond)) return set_error(HT_ERR_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* ht_version(void) { return "1.0.0"; }

const char* ht_last_error(void) { return last_error.c_str(); }

void ht_string_free(char* s) { std::free(s); }

ht_status ht_type_names(char** out) {
  HT_REQUIRE(out, "out is NULL");
  return guarded([&] {
    std::string s;
    for (auto t : ht::all_types()) s += (s.empty() ? "" : ",") + ht::type_name(t);
    *out = dup(s);
    return HT_OK;
  });
}

ht_status ht_data_available(const char* type, const char* dir, int* out) {
  HT_REQUIRE(out, "out is NULL");
  return guarded([&] {
    *out = ht::data_available(type_arg(type), dir ? dir : ht::default_data_dir()) ? 1 : 0;
    return HT_OK;
  });
}

ht_status ht_options_create(ht_options** out) {
  HT_REQUIRE(out, "out is NULL");
  return guarded([&] {
    *out = new ht_options;
    return HT_OK;
  });
}

void ht_options_free(ht_options* o) { delete o; }

ht_status ht_options_set_data_dir(ht_options* o, const char* dir) {
  HT_REQUIRE(o, "options is NULL");
  o->cfg.data_dir = dir ? dir : "";
  return HT_OK;
}

ht_status ht_options_set_node_budget(ht_options* o, uint64_t nodes) {
  HT_REQUIRE(o && nodes > 0, "node budget must be positive");
  o->cfg.ip.node_budget = nodes;
  return HT_OK;
}

ht_status ht_options_set_witness_trials(ht_options* o, uint64_t trials) {
  HT_REQUIRE(o && trials > 0, "witness trials must be positive");
  o->cfg.ft.witness_trials = trials;
  return HT_OK;
}

ht_status ht_options_set_seed(ht_options* o, uint64_t seed) {
  HT_REQUIRE(o, "options is NULL");
  o->cfg.ft.seed = seed;
  return HT_OK;
}

ht_status ht_options_set_geometry_cap(ht_options* o, uint64_t cap) {
  HT_REQUIRE(o && cap > 0, "geometry cap must be positive");
  o->cfg.geometry_cap = cap;
  return HT_OK;
}

ht_status ht_options_set_geometry(ht_options* o, int enabled) {
  HT_REQUIRE(o, "options is NULL");
  o->cfg.geometry = enabled != 0;
  return HT_OK;
}

ht_status ht_options_set_threads(ht_options* o, unsigned threads) {
  HT_REQUIRE(o, "options is NULL");
  o->threads = threads;
  return HT_OK;
}

ht_status ht_build(const char* type, uint64_t t, const ht_options* o, ht_graph** out) {
  HT_REQUIRE(out, "out is NULL");
  HT_REQUIRE(t >= 1, "t must be positive");
  return guarded([&] {
    auto ty = type_arg(type);
    auto spec = ht::load_construction(ty, data_dir(o));
    auto* g = new ht_graph;
    try {
      g->g = ht::build(spec, t);
    } catch (...) {
      delete g;
      throw;
    }
    g->base_degree = spec.base_degree;
    g->name = "X_" + ht::type_name(ty) + "_t" + std::to_string(t);
    for (auto& ch : g->name)
      if (ch == '-') ch = '_';
    *out = g;
    return HT_OK;
  });
}

ht_status ht_graph_from_json(const char* json, ht_graph** out) {
  HT_REQUIRE(json && out, "argument is NULL");
  return guarded([&] {
    auto cg = ht::colored_graph_from_json(nlohmann::json::parse(json));
    *out = new ht_graph{std::move(cg), 0, "X"};
    return HT_OK;
  });
}

void ht_graph_free(ht_graph* g) { delete g; }

ht_status ht_graph_degree(const ht_graph* g, uint64_t* out) {
  HT_REQUIRE(g && out, "argument is NULL");
  *out = g->g.d;
  return HT_OK;
}

ht_status ht_graph_colours(const ht_graph* g, int* out) {
  HT_REQUIRE(g && out, "argument is NULL");
  *out = g->g.n;
  return HT_OK;
}

ht_status ht_graph_group_order(const ht_graph* g, char** out) {
  HT_REQUIRE(g && out, "argument is NULL");
  return guarded([&] {
    *out = dup(ht::induced_group(g->g).order().str());
    return HT_OK;
  });
}

ht_status ht_graph_export(const ht_graph* g, ht_format f, char** out) {
  HT_REQUIRE(g && out, "argument is NULL");
  HT_REQUIRE(f == HT_FORMAT_JSON || f == HT_FORMAT_DOT, "graphs export as JSON or DOT");
  return guarded([&] {
    *out = dup(f == HT_FORMAT_JSON ? ht::to_json(g->g).dump(1) + "\n" : ht::to_dot(g->g, g->base_degree, g->name));
    return HT_OK;
  });
}

ht_status ht_geometry_export(const ht_graph* g, ht_format f, const ht_options* o, char** out) {
  HT_REQUIRE(g && out, "argument is NULL");
  HT_REQUIRE(f == HT_FORMAT_JSON || f == HT_FORMAT_DOT, "geometries export as JSON or DOT");
  return guarded([&] {
    ht::TypedGroup tg(ht::induced_group(g->g));
    auto s = ht::build_geometry(tg, config(o).geometry_cap);
    *out = dup(f == HT_FORMAT_JSON ? ht::to_json(s).dump(1) + "\n" : ht::to_dot(s, "Gamma"));
    return HT_OK;
  });
}

ht_status ht_verify(const char* type, uint64_t t, const ht_options* o, ht_report** out) {
  HT_REQUIRE(out, "out is NULL");
  HT_REQUIRE(t >= 1, "t must be positive");
  return guarded([&] {
    auto ty = type_arg(type);
    *out = new ht_report{ht::verify_type(ty, t, config(o))};
    return HT_OK;
  });
}

void ht_report_free(ht_report* r) { delete r; }

ht_status ht_report_verdict(const ht_report* r, ht_verdict* out) {
  HT_REQUIRE(r && out, "argument is NULL");
  *out = static_cast<ht_verdict>(ht::exit_code(r->r.verdict));
  return HT_OK;
}

ht_status ht_report_json(const ht_report* r, char** out) {
  HT_REQUIRE(r && out, "argument is NULL");
  return guarded([&] {
    *out = dup(ht::to_json(r->r).dump(1) + "\n");
    return HT_OK;
  });
}

ht_status ht_census(const char* types, uint64_t t_from, uint64_t t_to, const ht_options* o, ht_format f,
                    char** out, ht_verdict* worst) {
  HT_REQUIRE(out, "out is NULL");
  HT_REQUIRE(t_from >= 1 && t_to >= t_from, "invalid t range");
  HT_REQUIRE(f == HT_FORMAT_JSON || f == HT_FORMAT_CSV, "census exports as JSON or CSV");
  return guarded([&] {
    std::vector<ht::HyperbolicType> list;
    const std::string dir = data_dir(o);
    if (!types || std::string(types).empty() || std::string(types) == "all") {
      for (auto t : ht::all_types())
        if (ht::data_available(t, dir)) list.push_back(t);
    } else {
      std::stringstream ss(types);
      for (std::string item; std::getline(ss, item, ',');) list.push_back(type_arg(item.c_str()));
    }
    auto cfg = config(o);
    cfg.data_dir = dir;
    auto rows = ht::run_census(list, t_from, t_to, cfg, o ? o->threads : 0);
    ht::Verdict w = ht::Verdict::Pass;
    for (const auto& r : rows) {
      if (!r.error.empty() || !r.t_divides_order) {
        w = ht::Verdict::Fail;
        continue;
      }
      w = ht::combine(w, ht::combine(r.relations, ht::combine(r.ip, r.ft)));
    }
    if (worst) *worst = static_cast<ht_verdict>(ht::exit_code(w));
    *out = dup(f == HT_FORMAT_JSON ? ht::census_json(rows).dump(1) + "\n" : ht::census_csv(rows));
    return HT_OK;
  });
}

}  // extern "C"
