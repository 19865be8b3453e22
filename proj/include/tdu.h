/* Trust-based data usage platform: C API.
 *
 * All functions that take a tdu_platform handle return a tdu_status; on
 * failure tdu_last_error() describes what went wrong. Strings returned
 * through char** out parameters are heap-allocated and must be released
 * with tdu_string_free(). Handles are not thread-safe for concurrent
 * mutation; concurrent queries against one handle are fine.
 */
#ifndef TDU_H
#define TDU_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tdu_platform tdu_platform;

typedef enum {
    TDU_OK = 0,
    TDU_ERROR_INVALID_ARGUMENT = 1,
    TDU_ERROR_PARSE = 2,
    TDU_ERROR_IO = 3,
    TDU_ERROR_INTERNAL = 4
} tdu_status;

typedef enum { TDU_FORMAT_XML = 0, TDU_FORMAT_JSON = 1 } tdu_format;

/* config_json: {"port":..,"data-dir":..,"ledger-path":..,"modal-conversion":..,
 * "subjects":[{"id":..,"actorClass":..}]}; NULL or "" uses defaults. */
tdu_status tdu_platform_create(const char* config_json, tdu_platform** out);
tdu_status tdu_platform_create_from_file(const char* config_path, tdu_platform** out);
void tdu_platform_destroy(tdu_platform* platform);

/* Message for the most recent failure on this handle; owned by the handle. */
const char* tdu_last_error(const tdu_platform* platform);
void tdu_string_free(char* s);

/* Policy manager. */
tdu_status tdu_policy_add(tdu_platform* platform, const char* document, tdu_format format);
tdu_status tdu_policy_list(tdu_platform* platform, char** out_json);
/* Conflict report: [] means every potential clash has a resolution. */
tdu_status tdu_policy_check(tdu_platform* platform, char** out_json);

tdu_status tdu_subject_register(tdu_platform* platform, const char* id,
                                const char* actor_class);

/* Data manager. CSV header:
 * entity_id,entity_type,metric,timestamp,street,zone,value */
tdu_status tdu_data_ingest_csv(tdu_platform* platform, const char* csv);
tdu_status tdu_data_generate(uint64_t seed, size_t count, int streets_per_zone,
                             int zones, int64_t t0, int64_t t1, char** out_csv);
tdu_status tdu_data_transform(tdu_platform* platform, const char* spatial,
                              const char* temporal, const char* abstraction,
                              int64_t t0, int64_t t1, tdu_format format,
                              char** out_items);

/* Full enforcement round trip: evaluates the JSON request, releases data
 * when granted, appends one ledger record. Output carries the decision,
 * a textual explanation, released items and the ledger record id. */
tdu_status tdu_query(tdu_platform* platform, const char* request_json, char** out_json);

/* filter_json: {"policy":..,"subject":..,"outcome":"Granted"|"Refused",
 * "from":..,"to":..}; NULL or "" selects everything. */
tdu_status tdu_ledger_history(tdu_platform* platform, const char* filter_json,
                              char** out_json);

/* Trust-enforcement-time benchmark over the built-in scenario workload.
 * mode: "cold", "warm", or "both" ({"cold":{...},"warm":{...}}). */
tdu_status tdu_bench(int iterations, const char* mode, char** out_stats_json);

/* Blocks until the process is signalled; serves the HTTP endpoints. */
tdu_status tdu_serve(tdu_platform* platform, const char* host, int port);

#ifdef __cplusplus
}
#endif

#endif /* TDU_H */
