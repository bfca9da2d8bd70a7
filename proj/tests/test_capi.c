/* The C API used from C: status codes, ownership, ceilings. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "solquo/solquo.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);  \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static const char* s4 =
    "{ a, b, c, d | a^2 =: c, b^a = b^2 c, b^3, c^a = c, c^b =: d, c^2,"
    " d^a = c d, d^b = c d, d^c = d, d^2 }";

int main(void) {
  solquo_pc* pc = NULL;
  solquo_pc* cover = NULL;
  solquo_fp* fp = NULL;
  solquo_result* res = NULL;
  solquo_options* opts = solquo_options_new();
  char* s = NULL;
  char* f = NULL;
  int consistent = -1;

  EXPECT(solquo_version()[0] != '\0');

  EXPECT(solquo_pc_parse(s4, &pc) == SOLQUO_OK);
  EXPECT(solquo_pc_size(pc) == 4);
  EXPECT(solquo_pc_check(pc, NULL, &consistent, NULL) == SOLQUO_OK && consistent == 1);
  EXPECT(solquo_pc_collect(pc, "bba", &s) == SOLQUO_OK && strcmp(s, "a b d") == 0);
  solquo_string_free(s);
  EXPECT(solquo_pc_order(pc, &s, &f) == SOLQUO_OK);
  EXPECT(strcmp(s, "24") == 0 && strcmp(f, "2^3 * 3") == 0);
  solquo_string_free(s);
  solquo_string_free(f);
  EXPECT(solquo_pc_collect(pc, "bqa", &s) == SOLQUO_ERR_PARSE);
  EXPECT(strlen(solquo_last_error()) > 0);

  EXPECT(solquo_pc_cover(pc, 2, NULL, &cover) == SOLQUO_OK);
  EXPECT(solquo_pc_order(cover, &s, NULL) == SOLQUO_OK && strcmp(s, "6144") == 0);
  solquo_string_free(s);
  EXPECT(solquo_pc_format(cover, SOLQUO_JSON, &s) == SOLQUO_OK && s[0] == '{');
  solquo_string_free(s);
  solquo_pc_free(cover);

  EXPECT(solquo_fp_parse("{ x, y | x^2 y^ }", &fp) == SOLQUO_ERR_PARSE && fp == NULL);
  EXPECT(solquo_fp_parse("{ x, y | x^2, y^3, (x y)^3 }", &fp) == SOLQUO_OK);
  EXPECT(solquo_run(fp, "[(4,1)]", NULL, &res) == SOLQUO_ERR_ARGUMENT && res == NULL);
  EXPECT(solquo_run(fp, "[(3,1),(2,1)]", NULL, &res) == SOLQUO_OK);
  EXPECT(solquo_result_order(res, &s) == SOLQUO_OK && strcmp(s, "12") == 0);
  solquo_string_free(s);
  EXPECT(solquo_pc_size(solquo_result_pc(res)) == 3);
  solquo_result_free(res);

  EXPECT(solquo_options_set_max_order(opts, "ten") == SOLQUO_ERR_ARGUMENT);
  EXPECT(solquo_options_set_max_order(opts, "5") == SOLQUO_OK);
  res = NULL;
  EXPECT(solquo_run(fp, "[(3,1),(2,1)]", opts, &res) == SOLQUO_ERR_CEILING);
  EXPECT(res != NULL);
  EXPECT(solquo_result_order(res, &s) == SOLQUO_OK && strcmp(s, "3") == 0);
  solquo_string_free(s);
  solquo_result_free(res);

  EXPECT(solquo_pc_check(NULL, NULL, &consistent, NULL) == SOLQUO_ERR_ARGUMENT);

  solquo_options_free(opts);
  solquo_fp_free(fp);
  solquo_pc_free(pc);
  if (failures == 0) puts("ok");
  return failures == 0 ? 0 : 1;
}
