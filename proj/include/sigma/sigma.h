#ifndef SIGMA_H
#define SIGMA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SIGMA_API __declspec(dllexport)
#else
#define SIGMA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Codes 1..20 mirror the core error codes one-to-one. */
typedef enum sigma_status {
  SIGMA_OK = 0,
  SIGMA_INVALID_ARGUMENT = 1,
  SIGMA_OVERLAP = 2,
  SIGMA_COVERAGE = 3,
  SIGMA_GROUND_MISMATCH = 4,
  SIGMA_NOT_A_REFINEMENT = 5,
  SIGMA_ORACLE_BOUND_EXCEEDED = 6,
  SIGMA_WEIGHT_SUM = 7,
  SIGMA_NEGATIVE_WEIGHT = 8,
  SIGMA_SHAPE = 9,
  SIGMA_INVALID_GROUP = 10,
  SIGMA_COMMUTATIVITY_VIOLATION = 11,
  SIGMA_EMPTY_DOMAIN = 12,
  SIGMA_SOURCE_MISMATCH = 13,
  SIGMA_NOT_APPLICABLE = 14,
  SIGMA_EMPTY_BRANCH_SET = 15,
  SIGMA_INCOMPATIBLE_INPUT = 16,
  SIGMA_LABEL_CONFLICT = 17,
  SIGMA_CYCLICITY = 18,
  SIGMA_POLICY = 19,
  SIGMA_PARSE = 20,
  SIGMA_NULL_ARGUMENT = 98,
  SIGMA_INTERNAL = 99
} sigma_status;

typedef struct sigma_partition sigma_partition;
typedef struct sigma_measure sigma_measure;
typedef struct sigma_domain sigma_domain;
typedef struct sigma_group sigma_group;

SIGMA_API const char* sigma_status_name(sigma_status status);
/* Message of the last failure on the calling thread; "" after success. */
SIGMA_API const char* sigma_last_error(void);
/* Every char* returned through an out parameter is released with this. */
SIGMA_API void sigma_string_free(char* s);
SIGMA_API const char* sigma_version(void);

SIGMA_API sigma_status sigma_set_oracle_bound(size_t n);

/* Partitions. JSON: {"n":4,"blocks":[[1,2],[3,4]]}, 1-based labels. */
SIGMA_API sigma_status sigma_partition_from_json(const char* json, sigma_partition** out);
/* labels[i] is any integer naming the atom of element i. */
SIGMA_API sigma_status sigma_partition_from_labels(const int* labels, size_t n, sigma_partition** out);
SIGMA_API sigma_status sigma_partition_trivial(int n, sigma_partition** out);
SIGMA_API sigma_status sigma_partition_discrete(int n, sigma_partition** out);
SIGMA_API void sigma_partition_free(sigma_partition* p);
SIGMA_API sigma_status sigma_partition_to_json(const sigma_partition* p, char** out);
SIGMA_API sigma_status sigma_partition_to_text(const sigma_partition* p, char** out);
SIGMA_API int sigma_partition_size(const sigma_partition* p);
SIGMA_API size_t sigma_partition_atom_count(const sigma_partition* p);
SIGMA_API int sigma_partition_equal(const sigma_partition* a, const sigma_partition* b);

SIGMA_API sigma_status sigma_join(const sigma_partition* a, const sigma_partition* b, sigma_partition** out);
SIGMA_API sigma_status sigma_meet(const sigma_partition* a, const sigma_partition* b, sigma_partition** out);
/* *out = 1 when fine refines coarse. */
SIGMA_API sigma_status sigma_refines(const sigma_partition* coarse, const sigma_partition* fine, int* out);
/* *commuting = 1 or 0; for 0 the witness is written 1-based, else zeros. */
SIGMA_API sigma_status sigma_commute(const sigma_partition* a, const sigma_partition* b, int* commuting,
                                     int* witness_x, int* witness_z);
SIGMA_API sigma_status sigma_commute_json(const sigma_partition* a, const sigma_partition* b, char** out);

/* Groups. JSON: {"n":4,"generators":[[[2,3]]]}, cycles or image lists. */
SIGMA_API sigma_status sigma_group_from_json(const char* json, sigma_group** out);
SIGMA_API sigma_status sigma_group_automorphisms(const sigma_partition* p, sigma_group** out);
SIGMA_API void sigma_group_free(sigma_group* g);
SIGMA_API size_t sigma_group_order(const sigma_group* g);
SIGMA_API sigma_status sigma_group_to_json(const sigma_group* g, int with_elements, char** out);
/* group may be NULL for the automorphism group of p. */
SIGMA_API sigma_status sigma_invariant_json(const sigma_partition* p, const sigma_group* group, char** out);

/* Measures. JSON: {"partition":{...},"weights":["1/2","1/2"]}. */
SIGMA_API sigma_status sigma_measure_from_json(const char* json, sigma_measure** out);
SIGMA_API void sigma_measure_free(sigma_measure* mu);
SIGMA_API sigma_status sigma_measure_to_json(const sigma_measure* mu, char** out);
/* split_json: per coarse atom, a list of rational strings ([] if unsplit). */
SIGMA_API sigma_status sigma_measure_extend(const sigma_measure* mu, const sigma_partition* fine,
                                            const char* split_json, sigma_measure** out);
SIGMA_API sigma_status sigma_measure_restrict(const sigma_measure* mu, const sigma_partition* coarse,
                                              sigma_measure** out);
SIGMA_API sigma_status sigma_measure_is_invariant(const sigma_measure* mu, const sigma_group* group, int* out);

/* Compatibility domains. JSON: {"n":4,"members":[{...},...]}. */
SIGMA_API sigma_status sigma_domain_from_json(const char* json, sigma_domain** out);
SIGMA_API sigma_status sigma_domain_build(const sigma_partition* const* generators, size_t count,
                                          sigma_domain** out);
SIGMA_API void sigma_domain_free(sigma_domain* d);
SIGMA_API size_t sigma_domain_size(const sigma_domain* d);
SIGMA_API sigma_status sigma_domain_to_json(const sigma_domain* d, char** out);
SIGMA_API sigma_status sigma_domain_dot(const sigma_domain* d, char** out);

/* {"pairs":[...]} plus "uniqueness" when group is not NULL. */
SIGMA_API sigma_status sigma_endogenous_json(const sigma_domain* d, const sigma_group* group, char** out);
SIGMA_API sigma_status sigma_self_consistent_json(const sigma_measure* mu, const sigma_domain* d, char** out);
SIGMA_API sigma_status sigma_algebras_for_json(const sigma_measure* mu, const sigma_domain* d, char** out);
/* mode: 0 any nontrivial symmetry, 1 full automorphism group, 2 persistent. */
SIGMA_API sigma_status sigma_axiom_c_json(const sigma_measure* mu, const sigma_partition* fine,
                                          const sigma_domain* d, int mode, char** out);

/* Event graphs. chains_json: {"chains":[["R1","R2"]],"steps":{...}}. Either
   output may be NULL. */
SIGMA_API sigma_status sigma_event_graph(const char* chains_json, char** json_out, char** dot_out);

/* policy_json: {"kind":"exhaustive"} | {"kind":"scripted","script":[{"atom":[1,2],
   "parts":[[1],[2]]}]} | {"kind":"halving"} | {"kind":"random","seed":7}.
   domain may be NULL. */
SIGMA_API sigma_status sigma_simulate_json(const sigma_partition* start, const char* policy_json, size_t max_steps,
                                           const sigma_domain* domain, char** out);

/* suites: comma separated, NULL or "" for all. *all_ok is 1 when every case passed. */
SIGMA_API sigma_status sigma_oracle_json(size_t max_n, const char* suites, uint64_t seed, char** out,
                                         int* all_ok);
SIGMA_API sigma_status sigma_oracle_suites(char** out);
SIGMA_API sigma_status sigma_oracle_max_n_from_env(size_t fallback, size_t* out);

SIGMA_API sigma_status sigma_toy_transcript(char** out);

#ifdef __cplusplus
}
#endif

#endif
