#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "capkc/capkc.h"

static int failures = 0;

#define EXPECT(cond)                                                     \
  do {                                                                   \
    if (!(cond)) {                                                       \
      fprintf(stderr, "%s:%d: expected %s (last error: %s)\n", __FILE__, \
              __LINE__, #cond, capkc_last_error());                      \
      ++failures;                                                        \
    }                                                                    \
  } while (0)

static void parse_errors(void) {
  capkc_instance* inst = NULL;
  EXPECT(capkc_instance_parse("capkc 1 2 1 1 hard\nv 0 1\nv 1 1\ne 0 0 1\n", &inst) == CAPKC_INPUT_ERROR);
  EXPECT(inst == NULL);
  EXPECT(strstr(capkc_last_error(), "line 4") != NULL);
  EXPECT(capkc_instance_parse(NULL, &inst) == CAPKC_NULL_ARGUMENT);
  EXPECT(capkc_instance_read_file("/nonexistent/instance.txt", &inst) == CAPKC_INPUT_ERROR);
  EXPECT(capkc_gen_gap(10, 0, &inst, NULL) == CAPKC_INPUT_ERROR);
}

static void path_instance(void) {
  capkc_instance* inst = NULL;
  char* text = NULL;
  capkc_report* report = NULL;
  capkc_solve_options options;

  EXPECT(capkc_instance_parse("capkc 1 3 2 1 hard\nv 0 3\nv 1 3\nv 2 3\ne 0 1 1\ne 1 2 1\n", &inst) == CAPKC_OK);
  EXPECT(capkc_instance_vertex_count(inst) == 3);
  EXPECT(capkc_instance_k(inst) == 1);
  EXPECT(capkc_instance_mode(inst) == CAPKC_MODE_HARD);
  EXPECT(capkc_instance_write(inst, &text) == CAPKC_OK);
  EXPECT(strncmp(text, "capkc 1 3 2 1 hard", 18) == 0);
  capkc_free_string(text);

  capkc_solve_options_init(&options);
  EXPECT(options.mode == CAPKC_MODE_HARD);
  options.check_each_primitive = 1;
  EXPECT(capkc_solve(inst, &options, &report) == CAPKC_OK);
  EXPECT(capkc_report_solved(report));
  /* The rounding may pick a leaf as hub; the middle is only guaranteed by the oracle. */
  EXPECT(capkc_report_hop_radius(report) >= 1 && capkc_report_hop_radius(report) <= capkc_report_stretch(report));
  EXPECT(capkc_report_threshold(report, &text) == CAPKC_OK);
  EXPECT(strcmp(text, "1") == 0);
  capkc_free_string(text);
  EXPECT(capkc_report_text(report, &text) == CAPKC_OK);
  EXPECT(strstr(text, "status solved") != NULL);
  capkc_free_string(text);
  EXPECT(capkc_report_lp_dump(report, &text) == CAPKC_OK);
  EXPECT(strstr(text, "Subject To") != NULL);
  capkc_free_string(text);

  EXPECT(capkc_report_solution(report, &text) == CAPKC_OK);
  EXPECT(capkc_verify_solution(inst, text) == CAPKC_OK);
  capkc_free_string(text);
  capkc_report_free(report);

  /* Center at a leaf cannot reach the far end in one hop. */
  EXPECT(capkc_verify_solution(inst, "solution 1 1\ncenter 0 1\nassign 0 0\nassign 1 0\nassign 2 0\n") ==
         CAPKC_INVALID);
  EXPECT(strlen(capkc_last_error()) > 0);
  EXPECT(capkc_verify_solution(inst, "solution 1 1\ncenter 7 1\n") == CAPKC_INPUT_ERROR);

  EXPECT(capkc_instance_set_k(inst, 0) == CAPKC_OK);
  EXPECT(capkc_instance_set_k(inst, -1) == CAPKC_INPUT_ERROR);
  capkc_instance_free(inst);
}

static void generators(void) {
  capkc_instance* inst = NULL;
  char* witness = NULL;
  capkc_report* report = NULL;
  capkc_solve_options options;
  const int triples[] = {0, 1, 2};

  EXPECT(capkc_gen_fig1(&inst, &witness) == CAPKC_OK);
  EXPECT(capkc_instance_vertex_count(inst) == 12);
  EXPECT(witness != NULL && strstr(witness, "y 0 3/4") != NULL);
  capkc_free_string(witness);
  capkc_solve_options_init(&options);
  EXPECT(capkc_solve(inst, &options, &report) == CAPKC_INFEASIBLE);
  EXPECT(report != NULL && !capkc_report_solved(report));
  capkc_report_free(report);
  capkc_instance_free(inst);

  EXPECT(capkc_gen_x3c(triples, 1, 3, &inst) == CAPKC_OK);
  options.mode = CAPKC_MODE_EXACT;
  EXPECT(capkc_solve(inst, &options, &report) == CAPKC_OK);
  EXPECT(capkc_report_hop_radius(report) == 1);
  capkc_report_free(report);
  capkc_instance_free(inst);

  EXPECT(capkc_gen_random(20, 0.05, 7, 9, 3, CAPKC_MODE_SOFT, 42, &inst) == CAPKC_OK);
  EXPECT(capkc_instance_mode(inst) == CAPKC_MODE_SOFT);
  options.mode = CAPKC_MODE_SOFT;
  EXPECT(capkc_solve(inst, &options, &report) == CAPKC_OK);
  EXPECT(capkc_report_hop_radius(report) <= 11);
  capkc_report_free(report);
  capkc_instance_free(inst);
}

static void uniform_witness(void) {
  capkc_instance* inst = NULL;
  char* witness = NULL;
  /* Five isolated vertices of capacity 1 need five centers. */
  EXPECT(capkc_instance_parse("capkc 1 5 0 4 hard\nv 0 1\nv 1 1\nv 2 1\nv 3 1\nv 4 1\n", &inst) == CAPKC_OK);
  EXPECT(capkc_verify_uniform_witness(inst, "witness\n") == CAPKC_OK);
  EXPECT(capkc_verify_uniform_witness(inst, "witness\nv 0\nv 1\nv 2\nv 3\nv 4\n") == CAPKC_OK);
  EXPECT(capkc_find_uniform_witness(inst, &witness) == CAPKC_OK);
  EXPECT(capkc_verify_uniform_witness(inst, witness) == CAPKC_OK);
  capkc_free_string(witness);
  EXPECT(capkc_instance_set_k(inst, 5) == CAPKC_OK);
  EXPECT(capkc_verify_uniform_witness(inst, "witness\n") == CAPKC_INVALID);
  EXPECT(capkc_verify_uniform_witness(inst, "nonsense\n") == CAPKC_INPUT_ERROR);
  capkc_instance_free(inst);

  EXPECT(capkc_instance_parse("capkc 1 2 1 1 hard\nv 0 1\nv 1 2\ne 0 1 1\n", &inst) == CAPKC_OK);
  EXPECT(capkc_verify_uniform_witness(inst, "witness\n") == CAPKC_INPUT_ERROR);
  capkc_instance_free(inst);
}

int main(void) {
  EXPECT(capkc_version() != NULL);
  parse_errors();
  path_instance();
  generators();
  uniform_witness();
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
