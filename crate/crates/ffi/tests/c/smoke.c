#include <stdio.h>
#include <string.h>

#include "quandlekit.h"

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,          \
              qk_last_error());                                        \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  QkQuandle *r4 = NULL;
  CHECK(qk_quandle_from_catalog("R4", &r4) == QK_STATUS_OK);
  size_t n = 0;
  CHECK(qk_quandle_order(r4, &n) == QK_STATUS_OK && n == 4);

  QkElement *u = NULL, *v = NULL, *w = NULL;
  CHECK(qk_element_parse(r4, "z", "a0 + a2", &u) == QK_STATUS_OK);
  CHECK(qk_element_parse(r4, "z", "a0 - a2", &v) == QK_STATUS_OK);
  CHECK(qk_element_op(QK_OP_MUL, u, v, &w) == QK_STATUS_OK);
  bool zero = false;
  CHECK(qk_element_is_zero(w, &zero) == QK_STATUS_OK && zero);

  size_t count = 0;
  char *listing = NULL;
  QkQuandle *r3 = NULL;
  CHECK(qk_quandle_from_catalog("R3", &r3) == QK_STATUS_OK);
  CHECK(qk_idempotents(r3, "z", 3, 1000000, &count, &listing) == QK_STATUS_OK);
  CHECK(count == 3);
  qk_string_free(listing);

  size_t bad[4] = {0, 0, 0, 1};
  QkQuandle *q = NULL;
  CHECK(qk_quandle_from_table(bad, 2, &q) == QK_STATUS_INVALID_QUANDLE);
  CHECK(q == NULL && strlen(qk_last_error()) > 0);

  const char *argv[] = {"maximal-quandles", "--quandle", "R3", "--ring", "zmod:2",
                        "--expect-count", "3"};
  int code = -1;
  char *out = NULL, *err = NULL;
  CHECK(qk_cli_run(7, argv, &code, &out, &err) == QK_STATUS_OK && code == 0);
  CHECK(strstr(out, "count: 3") != NULL);
  qk_string_free(out);
  qk_string_free(err);

  qk_element_free(u);
  qk_element_free(v);
  qk_element_free(w);
  qk_quandle_free(r3);
  qk_quandle_free(r4);
  puts("ok");
  return 0;
}
