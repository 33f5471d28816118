#ifndef CAPKC_CAPKC_H
#define CAPKC_CAPKC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define CAPKC_API __attribute__((visibility("default")))
#else
#define CAPKC_API
#endif

/* Every fallible call returns a status; on failure capkc_last_error()
   describes it (thread-local, valid until the next call on that thread). */
typedef enum capkc_status {
  CAPKC_OK = 0,
  CAPKC_INFEASIBLE = 1,       /* no solution at any radius (report still produced) */
  CAPKC_INPUT_ERROR = 2,      /* malformed text or out-of-range parameters */
  CAPKC_INVALID = 3,          /* a solution or witness failed verification */
  CAPKC_ORACLE_REFUSED = 4,   /* exact search too large */
  CAPKC_INVARIANT = 5,        /* internal invariant broken (a bug) */
  CAPKC_NULL_ARGUMENT = 6
} capkc_status;

typedef enum capkc_mode { CAPKC_MODE_HARD = 0, CAPKC_MODE_SOFT = 1, CAPKC_MODE_EXACT = 2 } capkc_mode;

typedef struct capkc_instance capkc_instance;
typedef struct capkc_report capkc_report;

CAPKC_API const char* capkc_version(void);
CAPKC_API const char* capkc_last_error(void);
/* Strings returned through char** out-parameters are owned by the caller. */
CAPKC_API void capkc_free_string(char* s);

/* Instances (text format documented in README). */
CAPKC_API capkc_status capkc_instance_parse(const char* text, capkc_instance** out);
CAPKC_API capkc_status capkc_instance_read_file(const char* path, capkc_instance** out);
CAPKC_API capkc_status capkc_instance_write(const capkc_instance* inst, char** text);
CAPKC_API void capkc_instance_free(capkc_instance* inst);
CAPKC_API int capkc_instance_vertex_count(const capkc_instance* inst);
CAPKC_API int capkc_instance_k(const capkc_instance* inst);
CAPKC_API capkc_mode capkc_instance_mode(const capkc_instance* inst);
CAPKC_API capkc_status capkc_instance_set_k(capkc_instance* inst, int k);
CAPKC_API capkc_status capkc_instance_set_mode(capkc_instance* inst, capkc_mode mode);

/* Generators. `witness` (may be NULL) receives a fractional LP point in the
   assignment dump format, or NULL when the generator has none. */
CAPKC_API capkc_status capkc_gen_fig1(capkc_instance** out, char** witness);
CAPKC_API capkc_status capkc_gen_gap(int k, int nonuniform, capkc_instance** out, char** witness);
/* triples holds 3 * set_count element ids in [0, universe). */
CAPKC_API capkc_status capkc_gen_x3c(const int* triples, int set_count, int universe, capkc_instance** out);
CAPKC_API capkc_status capkc_gen_random(int n, double density, long long cap_lo, long long cap_hi, int k,
                                        capkc_mode mode, uint64_t seed, capkc_instance** out);

/* Solving. CAPKC_MODE_EXACT runs the brute-force oracle. */
typedef struct capkc_solve_options {
  capkc_mode mode;
  int max_stretch;          /* 0 = no guard; otherwise fail when exceeded */
  int check_each_primitive; /* re-check LP rows after every shift (slow) */
} capkc_solve_options;

CAPKC_API void capkc_solve_options_init(capkc_solve_options* options);
/* Returns CAPKC_OK or CAPKC_INFEASIBLE with *out set either way. */
CAPKC_API capkc_status capkc_solve(const capkc_instance* inst, const capkc_solve_options* options, capkc_report** out);
CAPKC_API void capkc_report_free(capkc_report* report);
CAPKC_API int capkc_report_solved(const capkc_report* report);
CAPKC_API int capkc_report_hop_radius(const capkc_report* report);
CAPKC_API int capkc_report_stretch(const capkc_report* report);
/* Rationals are rendered as "p/q" or integers. */
CAPKC_API capkc_status capkc_report_threshold(const capkc_report* report, char** text);
CAPKC_API capkc_status capkc_report_achieved_radius(const capkc_report* report, char** text);
CAPKC_API capkc_status capkc_report_text(const capkc_report* report, char** text);
CAPKC_API capkc_status capkc_report_solution(const capkc_report* report, char** text);
CAPKC_API capkc_status capkc_report_certificate(const capkc_report* report, char** text);
CAPKC_API capkc_status capkc_report_lp_dump(const capkc_report* report, char** text);

/* Independent checks. On CAPKC_INVALID, capkc_last_error() names the
   violated condition. */
CAPKC_API capkc_status capkc_verify_solution(const capkc_instance* inst, const char* solution_text);
/* Uniform-capacity infeasibility witness ("witness" + "v <id>" lines);
   requires every capacity to equal the same positive L. */
CAPKC_API capkc_status capkc_verify_uniform_witness(const capkc_instance* inst, const char* witness_text);
CAPKC_API capkc_status capkc_find_uniform_witness(const capkc_instance* inst, char** witness_text);

#ifdef __cplusplus
}
#endif

#endif
