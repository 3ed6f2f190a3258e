#include <math.h>
#include <stdio.h>
#include <string.h>

#include "succession.h"

#define CHECK(cond)                                                            \
  do {                                                                         \
    if (!(cond)) {                                                             \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,          \
              succession_last_error_message());                                \
      return 1;                                                                \
    }                                                                          \
  } while (0)

int main(void) {
  SuccessionFrequencyVector *fv = NULL;
  const int64_t counts[] = {2, 1};
  SuccessionLawSpec natural = {SUCCESSION_LAW_KIND_NATURAL, 0.0};
  SuccessionLawSpec jp = {SUCCESSION_LAW_KIND_LIDSTONE, 0.5};
  double p = 0.0;

  CHECK(succession_fv_from_counts(3, counts, 2, &fv) == SUCCESSION_STATUS_OK);
  CHECK(succession_conditional(fv, natural, 2, &p) == SUCCESSION_STATUS_OK);
  CHECK(fabs(p - 0.375) < 1e-15);
  CHECK(succession_escape_mass(fv, jp, &p) == SUCCESSION_STATUS_OK);
  CHECK(fabs(p - 0.5 / 4.5) < 1e-15);
  CHECK(succession_fv_observe(fv, 7) == SUCCESSION_STATUS_SYMBOL_OUT_OF_RANGE);
  CHECK(strlen(succession_last_error_message()) > 0);

  SuccessionStats s;
  CHECK(succession_fv_stats(fv, &s) == SUCCESSION_STATUS_OK);
  CHECK(s.k == 3 && s.n == 3 && s.q == 2 && s.q_prime == 1);
  succession_fv_free(fv);

  uint32_t days[100];
  for (int i = 0; i < 100; i++) days[i] = '1';
  SuccessionLawSpec laplace = {SUCCESSION_LAW_KIND_LAPLACE, 0.0};
  SuccessionReport r;
  CHECK(succession_evaluate(days, 100, 256, laplace, &r) == SUCCESSION_STATUS_OK);
  CHECK(ceil(r.bits) == 301.0 && r.bytes_ceil == 38 && r.q == 1);

  puts("ok");
  return 0;
}
