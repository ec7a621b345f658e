/* C interface to the reserve-matching engine. All functions return RSM_OK or
 * an error code; rsm_last_error() describes the most recent failure on the
 * calling thread. Strings returned through char** are heap-allocated and
 * must be released with rsm_string_free(). Handles are opaque and owned by
 * the caller via the matching *_free function.
 */
#ifndef RESMATCH_H
#define RESMATCH_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rsm_instance rsm_instance;
typedef struct rsm_matching rsm_matching;
typedef struct rsm_result rsm_result;

enum {
  RSM_OK = 0,
  RSM_ERR_DUPLICATE_ID = 1,
  RSM_ERR_MISSING_THRESHOLD = 2,
  RSM_ERR_THRESHOLD_ORDER = 3,
  RSM_ERR_UNKNOWN_PATIENT = 4,
  RSM_ERR_UNKNOWN_CATEGORY = 5,
  RSM_ERR_BAD_RESERVE = 6,
  RSM_ERR_CAPACITY_EXCEEDED = 7,
  RSM_ERR_UNDEFINED_COMPARISON = 8,
  RSM_ERR_INVALID_CHAIN = 9,
  RSM_ERR_TOO_LARGE = 10,
  RSM_ERR_PARSE = 11,
  RSM_ERR_BAD_SPEC = 12,
  RSM_ERR_BAD_ARG = 13,
  RSM_ERR_INTERNAL = 14
};

const char* rsm_version(void);

/* Message for the last failing call on this thread; empty string if none. */
const char* rsm_last_error(void);

void rsm_string_free(char* text);

/* ---- instances ---------------------------------------------------------- */

int rsm_instance_parse(const char* json_text, rsm_instance** out);
int rsm_instance_preset(const char* name, rsm_instance** out);

/* spec_json fields (all optional): patients, categories, reserve_min,
 * reserve_max, supply_cap, list_fraction, beta_max_frac, eta_min_frac. */
int rsm_instance_random(const char* spec_json, uint64_t seed, rsm_instance** out);

int rsm_instance_to_json(const rsm_instance* instance, char** out_text);
int rsm_instance_counts(const rsm_instance* instance, int64_t* patients, int64_t* categories,
                        int64_t* supply);
void rsm_instance_free(rsm_instance* instance);

/* ---- matchings ---------------------------------------------------------- */

int rsm_matching_parse(const rsm_instance* instance, const char* json_text, rsm_matching** out);
int rsm_matching_to_json(const rsm_instance* instance, const rsm_matching* mu, char** out_text);
int rsm_matching_stats(const rsm_instance* instance, const rsm_matching* mu, int64_t* assigned,
                       int64_t* beneficiary);
void rsm_matching_free(rsm_matching* mu);

/* ---- solving ------------------------------------------------------------ */

/* precedence_csv: comma-separated category ids, or NULL for declaration
 * order. The result holds the three stage matchings. */
int rsm_solve(const rsm_instance* instance, const char* precedence_csv, rsm_result** out);
int rsm_result_matching(const rsm_result* result, int stage, rsm_matching** out);
void rsm_result_free(rsm_result* result);

/* Deferred acceptance from an initial matching (NULL = empty matching). */
int rsm_daim(const rsm_instance* instance, const rsm_matching* initial,
             const char* precedence_csv, rsm_matching** out);

/* ---- reports (JSON strings) --------------------------------------------- */

/* Violation lists for the three matching requirements plus the Pareto verdict. */
int rsm_check(const rsm_instance* instance, const rsm_matching* mu, char** report_json);

/* Exhaustive optima, the joint-achievability verdict and the Pareto
 * equivalence verdict; force != 0 overrides the enumeration guard. */
int rsm_oracle(const rsm_instance* instance, int force, char** report_json);

/* Possibility report: sparse categories, the membership bound b, the premise
 * verdict and whether all units can go to beneficiaries. */
int rsm_hall(const rsm_instance* instance, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* RESMATCH_H */
