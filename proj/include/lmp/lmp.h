/*
 * C API for the local-majority consensus toolkit: graph generation,
 * structural audits, protocol simulation and the analytic bound
 * evaluators, behind opaque handles and status codes.
 *
 * Conventions: every function returns lmp_status; outputs go through
 * out-parameters. Strings returned via char** are heap-allocated and must
 * be released with lmp_string_free. Graph handles must be released with
 * lmp_graph_free. On failure, lmp_last_error() returns a thread-local
 * message describing the most recent error in the calling thread.
 */
#ifndef LMP_H
#define LMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LMP_API __declspec(dllexport)
#else
#define LMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lmp_status {
    LMP_OK = 0,
    LMP_ERR_INVALID_ARGUMENT = 1,
    LMP_ERR_SELF_LOOP = 2,
    LMP_ERR_DUPLICATE_EDGE = 3,
    LMP_ERR_VERTEX_RANGE = 4,
    LMP_ERR_ODD_DEGREE_SUM = 5,
    LMP_ERR_ATTEMPTS_EXHAUSTED = 6,
    LMP_ERR_PARSE = 7,
    LMP_ERR_IO = 8,
    LMP_ERR_PRECONDITION = 9,
    LMP_ERR_NO_EFFECTIVE_DEGREE = 10,
    LMP_ERR_STATE_SPACE = 11,
    LMP_ERR_CONFIG = 12,
    LMP_ERR_INTERNAL = 13
} lmp_status;

typedef struct lmp_graph lmp_graph;

LMP_API const char* lmp_version(void);
LMP_API const char* lmp_status_name(lmp_status status);
LMP_API const char* lmp_last_error(void);
LMP_API void lmp_string_free(char* s);
LMP_API void lmp_graph_free(lmp_graph* g);

/* ---- graphs: construction and edge-list files ("n m" header, one
 * "u v" line per edge, 0-indexed, u < v) ---- */

LMP_API lmp_status lmp_graph_build(uint32_t n, const uint32_t* endpoints, size_t edge_count,
                                   lmp_graph** out);
LMP_API lmp_status lmp_graph_read_file(const char* path, lmp_graph** out);
LMP_API lmp_status lmp_graph_write_file(const lmp_graph* g, const char* path);
LMP_API lmp_status lmp_graph_order(const lmp_graph* g, uint32_t* out);
LMP_API lmp_status lmp_graph_size(const lmp_graph* g, uint64_t* out);
LMP_API lmp_status lmp_graph_degree(const lmp_graph* g, uint32_t v, uint32_t* out);
LMP_API lmp_status lmp_graph_connected(const lmp_graph* g, int* out);

/* ---- generators (deterministic per seed) ---- */

LMP_API lmp_status lmp_gen_regular(uint32_t n, uint32_t d, uint64_t seed, uint32_t max_attempts,
                                   int require_connected, lmp_graph** out);
LMP_API lmp_status lmp_gen_configuration(const uint32_t* degrees, uint32_t n, uint64_t seed,
                                         uint32_t max_attempts, int require_connected,
                                         lmp_graph** out);
LMP_API lmp_status lmp_gen_gnp(uint32_t n, double p, uint64_t seed, lmp_graph** out);

/* ---- structural audit ---- */

typedef struct lmp_audit_params {
    double c;         /* niceness exponent, in (0, 1/8) */
    double kappa_min; /* effective-minimum-degree fraction */
    double big_c;     /* small-cycle horizon factor */
    double big_b;     /* light-degree factor */
    double eps1;      /* regular-case depth factor */
    double eps;       /* time-constant slack */
    double eta;       /* tree-regular count proxy exponent */
} lmp_audit_params;

LMP_API void lmp_audit_params_default(lmp_audit_params* params);

/* Full audit document (profile, thresholds, typicality verdicts) as JSON. */
LMP_API lmp_status lmp_inspect_json(const lmp_graph* g, const lmp_audit_params* params,
                                    char** json_out);

typedef struct lmp_threshold_set {
    double omega, ell, h, omega_prime, l1, a_const, k_population;
    uint32_t nu;
    uint32_t omega_ceil, h_ceil, omega_prime_ceil, a_omega_prime_ceil;
    int h_nonpositive;
} lmp_threshold_set;

LMP_API lmp_status lmp_thresholds(uint64_t n, uint32_t d, double theta,
                                  const lmp_audit_params* params, lmp_threshold_set* out);

/* ---- analytic bounds ---- */

typedef struct lmp_condition {
    double lhs;
    int satisfied;
    double alpha_max;
    uint32_t nu;
} lmp_condition;

LMP_API lmp_status lmp_condition_check(double alpha, uint32_t d, double beta, lmp_condition* out);

/* CSV with columns t,p_t,bound_t,dominated for the majority recursion. */
LMP_API lmp_status lmp_recursion_csv(double alpha, uint32_t d, double beta, uint32_t t_max,
                                     char** csv_out);

/* ---- protocol simulation ---- */

typedef struct lmp_sim_params {
    int protocol;          /* 0 = mp, 1 = mmp */
    uint32_t k;            /* odd poll size */
    double alpha;          /* initial red probability, in (0, 1/2) */
    uint64_t seed;
    uint32_t max_rounds;   /* 0 = auto: max(50, 10 ceil(A omega')) */
    uint32_t scope_root;   /* mmp only */
    int32_t scope_radius;  /* mmp only; < 0 = unset */
    int record_colourings; /* include full per-round states in the JSON */
} lmp_sim_params;

LMP_API lmp_status lmp_simulate_json(const lmp_graph* g, const lmp_sim_params* params,
                                     char** json_out);

/* ---- campaigns (flat key = value config text) ---- */

/* Runs a campaign, writes CSV/JSON into the output directory (config
 * out_dir unless overridden) and returns the aggregate summary as JSON. */
LMP_API lmp_status lmp_campaign_run(const char* config_text, const char* out_dir_override,
                                    char** summary_json_out);

/* Campaign over a sorted alpha grid; also writes the sweep curve CSV. */
LMP_API lmp_status lmp_sweep_run(const char* config_text, const char* out_dir_override,
                                 char** summary_json_out);

/* ---- acceptance suite ---- */

/* Runs acceptance criterion `id` (1-9), or all of them when id = 0.
 * Appends one line per criterion to *report_out and counts failures. */
LMP_API lmp_status lmp_verify_run(int id, char** report_out, int* failures_out);

#ifdef __cplusplus
}
#endif

#endif /* LMP_H */
