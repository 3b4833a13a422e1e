#include <stdio.h>
#include <string.h>

#include "dsrecon.h"

#define CHECK(cond)                                                     \
  do {                                                                  \
    if (!(cond)) {                                                      \
      const char *e = ds_last_error();                                  \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond, e ? e : ""); \
      return 1;                                                         \
    }                                                                   \
  } while (0)

int main(void) {
  DsWord *x = NULL, *y = NULL, *bad = NULL;
  CHECK(ds_word_parse("010", &x) == DS_STATUS_OK);
  CHECK(ds_word_len(x) == 3);

  DsBall *ball = NULL;
  CHECK(ds_ball_new(x, DS_BALL_KIND_DS, &ball) == DS_STATUS_OK);
  CHECK(ds_ball_len(ball) == 4);
  char buf[8];
  size_t needed = 0;
  CHECK(ds_ball_member(ball, 0, buf, sizeof buf, &needed) == DS_STATUS_OK);
  CHECK(strcmp(buf, "00") == 0 && needed == 3);
  CHECK(ds_ball_member(ball, 0, buf, 2, &needed) == DS_STATUS_BUFFER_TOO_SMALL);
  ds_ball_free(ball);

  CHECK(ds_word_parse("0102", &bad) == DS_STATUS_INVALID_WORD);
  CHECK(ds_last_error() != NULL);

  CHECK(ds_word_parse("100", &y) == DS_STATUS_OK);
  DsPairInfo info;
  CHECK(ds_classify(x, y, &info) == DS_STATUS_OK);
  CHECK(info.case_tag == DS_CASE_TAG_ADJACENT_TRANSPOSITION);
  CHECK(info.deletion_common == 2 && info.substitution_common == 2);

  DsCode *code = NULL;
  uint64_t size = 0;
  CHECK(ds_code_new("vt", 8, "a=0", &code) == DS_STATUS_OK);
  CHECK(ds_code_size(code, &size) == DS_STATUS_OK && size == 16);
  ds_code_free(code);

  char *json = NULL;
  bool passed = false;
  CHECK(ds_verify_json("ball-sizes", 5, &passed, &json) == DS_STATUS_OK);
  CHECK(passed && strstr(json, "\"ball-sizes\"") != NULL);
  ds_string_free(json);

  ds_word_free(x);
  ds_word_free(y);
  puts("ok");
  return 0;
}
