#ifndef HYPERTOPE_HYPERTOPE_H
#define HYPERTOPE_HYPERTOPE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef HYPERTOPE_BUILDING
#    define HT_API __declspec(dllexport)
#  else
#    define HT_API __declspec(dllimport)
#  endif
#else
#  define HT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns a status; details of the last failure on this thread
   are available from ht_last_error(). */
typedef enum ht_status {
  HT_OK = 0,
  HT_ERR_INVALID_ARGUMENT = 1,
  HT_ERR_DATA_MISSING = 2,
  HT_ERR_DATA_CORRUPT = 3,
  HT_ERR_CAP_EXCEEDED = 4,
  HT_ERR_IO = 5,
  HT_ERR_INTERNAL = 6
} ht_status;

/* Numeric values equal the process exit codes of the command-line tool. */
typedef enum ht_verdict { HT_PASS = 0, HT_FAIL = 1, HT_INCONCLUSIVE = 2 } ht_verdict;

typedef enum ht_format { HT_FORMAT_JSON = 0, HT_FORMAT_CSV = 1, HT_FORMAT_DOT = 2 } ht_format;

typedef struct ht_options ht_options;
typedef struct ht_graph ht_graph;
typedef struct ht_report ht_report;

HT_API const char* ht_version(void);
HT_API const char* ht_last_error(void);
/* Strings returned through char** out-parameters are owned by the caller. */
HT_API void ht_string_free(char* s);

/* Type names: "3334", "3335", "3434", "3435", "3535", "33334", "5-33", "53-33".
   Writes a comma-separated list of all of them. */
HT_API ht_status ht_type_names(char** out);
/* 1 when the data file for the type is present in data_dir (NULL: default). */
HT_API ht_status ht_data_available(const char* type, const char* data_dir, int* out);

/* Options; a NULL ht_options* means defaults everywhere. */
HT_API ht_status ht_options_create(ht_options** out);
HT_API void ht_options_free(ht_options* o);
HT_API ht_status ht_options_set_data_dir(ht_options* o, const char* dir);
HT_API ht_status ht_options_set_node_budget(ht_options* o, uint64_t nodes);
HT_API ht_status ht_options_set_witness_trials(ht_options* o, uint64_t trials);
HT_API ht_status ht_options_set_seed(ht_options* o, uint64_t seed);
HT_API ht_status ht_options_set_geometry_cap(ht_options* o, uint64_t cap);
HT_API ht_status ht_options_set_geometry(ht_options* o, int enabled);
HT_API ht_status ht_options_set_threads(ht_options* o, unsigned threads);

/* Graphs */
HT_API ht_status ht_build(const char* type, uint64_t t, const ht_options* o, ht_graph** out);
HT_API ht_status ht_graph_from_json(const char* json, ht_graph** out);
HT_API void ht_graph_free(ht_graph* g);
HT_API ht_status ht_graph_degree(const ht_graph* g, uint64_t* out);
HT_API ht_status ht_graph_colours(const ht_graph* g, int* out);
/* Decimal string of the order of the induced permutation group. */
HT_API ht_status ht_graph_group_order(const ht_graph* g, char** out);
/* HT_FORMAT_JSON or HT_FORMAT_DOT; the result is byte-identical for equal inputs. */
HT_API ht_status ht_graph_export(const ht_graph* g, ht_format f, char** out);
/* Coset geometry of the induced group (JSON or DOT); HT_ERR_CAP_EXCEEDED above the geometry cap. */
HT_API ht_status ht_geometry_export(const ht_graph* g, ht_format f, const ht_options* o, char** out);

/* Verification */
HT_API ht_status ht_verify(const char* type, uint64_t t, const ht_options* o, ht_report** out);
HT_API void ht_report_free(ht_report* r);
HT_API ht_status ht_report_verdict(const ht_report* r, ht_verdict* out);
HT_API ht_status ht_report_json(const ht_report* r, char** out);

/* Census over a comma-separated list of types (NULL or "all": every type with data)
   and t in [t_from, t_to]. *worst receives the worst verdict over all rows. */
HT_API ht_status ht_census(const char* types, uint64_t t_from, uint64_t t_to, const ht_options* o, ht_format f,
                           char** out, ht_verdict* worst);

#ifdef __cplusplus
}
#endif

#endif
