/* Exercises the C interface from C. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "grpcoh/grpcoh.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

int main(void) {
  grpcoh_group* z1 = NULL;
  grpcoh_sum* a = NULL;
  grpcoh_sum* sq = NULL;
  grpcoh_report* rep = NULL;
  char* text = NULL;
  double lo = 0, hi = 0, v = 0, re = 0, im = 0;
  size_t n = 0;
  const double pi[1] = {3.14159265358979323846};

  EXPECT(strlen(grpcoh_version()) > 0);
  EXPECT(grpcoh_group_create(GRPCOH_FREE_ABELIAN, 1, &z1) == GRPCOH_OK);
  EXPECT(grpcoh_sum_from_json(z1, "[{\"elem\": \"1\", \"re\": 1}, {\"elem\": \"0\", \"re\": -1}]", &a) == GRPCOH_OK);
  EXPECT(grpcoh_sum_size(a, &n) == GRPCOH_OK && n == 2);
  EXPECT(grpcoh_sum_lp_norm(a, 2.0, &v) == GRPCOH_OK && fabs(v - sqrt(2.0)) < 1e-12);
  EXPECT(grpcoh_sum_evaluate(a, pi, 1, &re, &im) == GRPCOH_OK && fabs(re + 2.0) < 1e-12);
  EXPECT(grpcoh_sum_certified_sup(a, 1e-6, &lo, &hi) == GRPCOH_OK);
  EXPECT(lo >= 2.0 - 1e-6 && hi >= 2.0 && hi - lo <= 1e-6);
  EXPECT(grpcoh_sum_op_norm_oracle(a, 101, &v) == GRPCOH_OK && v <= 2.0 && v > 1.99);
  EXPECT(grpcoh_sum_convolve(a, a, &sq) == GRPCOH_OK);
  EXPECT(grpcoh_sum_size(sq, &n) == GRPCOH_OK && n == 3);
  EXPECT(grpcoh_sum_to_json(sq, &text) == GRPCOH_OK && strstr(text, "\"2\"") != NULL);
  grpcoh_string_free(text);
  text = NULL;

  /* errors carry a status and a message */
  grpcoh_sum* bad = NULL;
  EXPECT(grpcoh_sum_from_json(z1, "[{\"elem\": \"1,2\", \"re\": 1}]", &bad) == GRPCOH_ERR_RANK_MISMATCH);
  EXPECT(bad == NULL);
  EXPECT(strlen(grpcoh_last_error()) > 0);
  EXPECT(grpcoh_sum_from_json(z1, "[", &bad) == GRPCOH_ERR_PARSE);
  EXPECT(strcmp(grpcoh_status_name(GRPCOH_ERR_PARSE), "ParseError") == 0);
  EXPECT(grpcoh_sum_lp_norm(NULL, 2.0, &v) == GRPCOH_ERR_INVALID_ARGUMENT);
  grpcoh_group* g0 = NULL;
  EXPECT(grpcoh_group_create(GRPCOH_FREE, 0, &g0) == GRPCOH_ERR_INVALID_ARGUMENT && g0 == NULL);

  EXPECT(grpcoh_run("{\"command\": \"ends\", \"rank\": 1}", &rep) == GRPCOH_OK);
  EXPECT(grpcoh_report_passed(rep) == 1 && grpcoh_report_exit_code(rep) == 0);
  EXPECT(grpcoh_report_json(rep, &text) == GRPCOH_OK && strstr(text, "\"two\"") != NULL);
  grpcoh_string_free(text);
  EXPECT(grpcoh_report_csv(rep, &text) == GRPCOH_ERR_INVALID_ARGUMENT && text == NULL);
  grpcoh_report_destroy(rep);
  rep = NULL;
  EXPECT(grpcoh_run("{\"command\": \"folner\", \"rank\": 1, \"kmax\": 4}", &rep) == GRPCOH_OK);
  EXPECT(grpcoh_report_csv(rep, &text) == GRPCOH_OK && strncmp(text, "kind,k,", 7) == 0);
  grpcoh_string_free(text);
  grpcoh_report_destroy(rep);
  EXPECT(grpcoh_run("{\"command\": \"nope\"}", &rep) == GRPCOH_ERR_INVALID_ARGUMENT && rep == NULL);

  grpcoh_sum_destroy(sq);
  grpcoh_sum_destroy(a);
  grpcoh_group_destroy(z1);
  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
