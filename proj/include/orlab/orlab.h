#ifndef ORLAB_H
#define ORLAB_H

#include <stdint.h>

#if defined(__GNUC__)
#define ORLAB_API __attribute__((visibility("default")))
#else
#define ORLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every call returns one; on failure orlab_last_error()
   holds the message. */
typedef enum orlab_status {
  ORLAB_OK = 0,
  ORLAB_INVALID_INPUT,
  ORLAB_INVALID_COMPLEX,
  ORLAB_INVALID_MAP,
  ORLAB_UNKNOWN_ID,
  ORLAB_MISMATCH,
  ORLAB_NO_E,
  ORLAB_NOT_MINIMAL,
  ORLAB_PROPER_POWER,
  ORLAB_NOT_CLOSED,
  ORLAB_NO_ALPHA,
  ORLAB_ORDER_UNDECIDED,
  ORLAB_NON_UNIQUE_MIN,
  ORLAB_CLASSIFICATION_CONFLICT,
  ORLAB_WORD_PROBLEM_UNKNOWN,
  ORLAB_MALFORMED_STATE,
  ORLAB_STUCK,
  ORLAB_NOT_PRIME,
  ORLAB_UNSUPPORTED,
  ORLAB_INTERNAL
} orlab_status;

/* Absent id or option. */
#define ORLAB_NONE (-1)

typedef struct orlab_complex orlab_complex;
typedef struct orlab_map orlab_map;

ORLAB_API const char* orlab_status_name(orlab_status s);
/* Message of the last failed call on this thread. */
ORLAB_API const char* orlab_last_error(void);
/* Strings returned through char** outputs are owned by the caller. */
ORLAB_API void orlab_free(char* s);

/* Complexes. Serialisation is canonical: ids ascending, compact JSON. */
ORLAB_API orlab_status orlab_complex_parse(const char* json, orlab_complex** out);
ORLAB_API void orlab_complex_free(orlab_complex* k);
ORLAB_API orlab_status orlab_complex_json(const orlab_complex* k, char** out);
ORLAB_API orlab_status orlab_complex_validate(const orlab_complex* k, int* valid, char** report);
ORLAB_API orlab_status orlab_complex_euler(const orlab_complex* k, int64_t* out);
/* p = 0 for integer coefficients, otherwise a prime. */
ORLAB_API orlab_status orlab_complex_homology(const orlab_complex* k, int64_t p, char** out);

/* Maps. A map file may name the target's e and alpha in "target". */
ORLAB_API orlab_status orlab_map_parse(const char* json, orlab_map** out);
ORLAB_API void orlab_map_free(orlab_map* f);
ORLAB_API orlab_status orlab_map_json(const orlab_map* f, char** out);
ORLAB_API orlab_status orlab_map_validate(const orlab_map* f, int* valid, char** report);
/* branch != 0 checks the branch-map condition instead. */
ORLAB_API orlab_status orlab_map_immersion(const orlab_map* f, int branch, int* ok, char** report);
ORLAB_API orlab_status orlab_map_fold(const orlab_map* f, char** out);

/* Enlargements. e and alpha override or supply the fields of the file. */
ORLAB_API orlab_status orlab_enlarge(const orlab_complex* x, int64_t e_source, int64_t e_target, int64_t e_id,
                                     const char* relator, int64_t alpha_id, char** out);
ORLAB_API orlab_status orlab_branched_cover(const char* y_json, int64_t e, int64_t alpha, int64_t n, char** out);
ORLAB_API orlab_status orlab_split_relator(const char* y_json, int64_t e, int64_t alpha, int order_budget, char** out);
ORLAB_API orlab_status orlab_classify_edges(const orlab_map* f, int64_t e, int64_t alpha, char** out);
/* stuck is set when no certificate is produced or the certificate fails
   its replay. */
ORLAB_API orlab_status orlab_collapse(const orlab_map* f, int64_t e, int64_t alpha, int torsion_free, int* stuck,
                                      char** out);

/* Suites. options_json: {"budget":{"vertices","edges","cells","max_degree",
   "seconds","covered"}, "checks":[names], "primes", "covers",
   "picture_vertices", "surfaces":[[genus,boundary]], "witness_dir",
   "instances":[maps], "timings":bool}; every field optional. */
ORLAB_API orlab_status orlab_verify_bounds(const char* y_json, int64_t e, int64_t alpha, const char* options_json,
                                           int64_t* fails, char** report);
ORLAB_API orlab_status orlab_replay_witness(const char* bundle_json, int* fail, char** out);
/* budget_json as above plus "list": false to omit the maps. */
ORLAB_API orlab_status orlab_enumerate(const char* target_json, const char* budget_json, char** out);

ORLAB_API orlab_status orlab_picture_check(const char* picture_json, const char* y_json, int64_t e, int64_t alpha,
                                           int64_t n, int* fail, char** out);

/* Words such as "a B a" (uppercase = inverse). */
ORLAB_API orlab_status orlab_order_compare(const char* g, const char* h, int budget, char** out);
/* Sampled order axioms over two generators; violations counted in *fail. */
ORLAB_API orlab_status orlab_order_sample(int64_t samples, uint64_t seed, int budget, int64_t* fail, char** out);

ORLAB_API orlab_status orlab_demo_step(const orlab_map* stage, const char* boundary, int64_t cell, int64_t rotation,
                                       char** out);

#ifdef __cplusplus
}
#endif

#endif
