#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sasaki.h"

#define CHECK(cond)                                                    \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "check failed at line %d: %s\n", __LINE__, #cond); \
      return 1;                                                        \
    }                                                                  \
  } while (0)

int main(void) {
  SasakiJoin *j = NULL;
  CHECK(sasaki_join_new("CP2", 1, 13, 3, 2, &j) == SASAKI_STATUS_OK);

  size_t len = 0;
  CHECK(sasaki_csc_ray_slopes(j, NULL, 0, &len) == SASAKI_STATUS_INVALID_ARGUMENT);
  CHECK(len == 3);
  double slopes[3];
  CHECK(sasaki_csc_ray_slopes(j, slopes, 3, &len) == SASAKI_STATUS_OK);
  CHECK(slopes[0] < slopes[1] && slopes[1] < slopes[2]);

  char *json = NULL;
  CHECK(sasaki_csc_rays_json(j, &json) == SASAKI_STATUS_OK);
  CHECK(strstr(json, "\"ray_count\":3") != NULL);
  sasaki_string_free(json);

  CHECK(sasaki_se_ray_json(j, &json) == SASAKI_STATUS_INVALID_INPUT);
  CHECK(strstr(sasaki_last_error(), "c1 obstruction") != NULL);
  sasaki_join_free(j);

  SasakiJoin *bad = NULL;
  CHECK(sasaki_join_new("CP2", 1, 3, 3, 2, &bad) == SASAKI_STATUS_INVALID_INPUT);
  CHECK(bad == NULL);

  const char *argv[] = {"ypq", "--p", "13", "--q", "8"};
  int32_t code = -1;
  CHECK(sasaki_run_json(5, argv, &json, &code) == SASAKI_STATUS_OK);
  CHECK(code == 0);
  CHECK(strstr(json, "\"quasiregular\": true") != NULL);
  sasaki_string_free(json);

  printf("ok %s\n", sasaki_version());
  return 0;
}
