#include <stdio.h>
#include "frameposet.h"

#define CHECK(expr)                                                        \
  do {                                                                     \
    FpStatus s_ = (expr);                                                  \
    if (s_ != FP_STATUS_OK) {                                              \
      const char *m_ = fp_last_error_message();                            \
      fprintf(stderr, "%s: status %d: %s\n", #expr, s_, m_ ? m_ : "");     \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  const double square[] = {1, 0, 0, 1, -1, 0, 0, -1};
  FpFrame *f = NULL;
  FpPoset *p = NULL;
  double lo = 0, hi = 0;
  uint32_t members[16];
  size_t count = 0, chi[4];
  int passed = 0;
  size_t violations = 0;
  char *json = NULL;

  CHECK(fp_frame_new_real(2, 4, square, &f));
  CHECK(fp_frame_bounds(f, NULL, &lo, &hi));
  CHECK(fp_factor_poset(f, NULL, 0, &p));
  CHECK(fp_poset_members(p, members, 16, &count));
  CHECK(fp_poset_characteristic(p, chi, 4));
  CHECK(fp_poset_necessary_check(p, &passed, &violations));
  CHECK(fp_poset_to_json(p, &json));

  printf("bounds %.17g %.17g\n", lo, hi);
  printf("members %zu\n", count);
  printf("chi %zu %zu %zu %zu\n", chi[0], chi[1], chi[2], chi[3]);
  printf("necessary %d %zu\n", passed, violations);
  printf("%s", json);

  fp_string_free(json);
  fp_poset_free(p);
  fp_frame_free(f);

  if (fp_frame_from_json("{", &f) != FP_STATUS_PARSE || fp_last_error_message() == NULL) return 2;
  return 0;
}
