#include <stdio.h>
#include <stdlib.h>
#include "subcode.h"

#define CHECK(call)                                                          \
  do {                                                                       \
    enum SubcodeStatus s_ = (call);                                          \
    if (s_ != SUBCODE_STATUS_OK) {                                           \
      fprintf(stderr, "%s failed: %d %s\n", #call, s_, subcode_last_error()); \
      return 1;                                                              \
    }                                                                        \
  } while (0)

int main(void) {
  SubcodeCode *code = NULL;
  size_t n = 0;
  int64_t d = 0;
  uint64_t johnson = 0, one = 0;
  CHECK(subcode_code_construct(SUBCODE_CONSTRUCTION_LIFTED_MRD_PLUS_ONE, 8, 4, 6, &code));
  CHECK(subcode_code_len(code, &n));
  CHECK(subcode_code_min_distance(code, &d));
  CHECK(subcode_bound_johnson(2, 8, 6, 4, &johnson));
  CHECK(subcode_bound_one_incidence(2, 4, 1, &one));
  subcode_code_free(code);

  SubcodeGraph *g = NULL;
  SubcodeSearchOptions opts = {0};
  SubcodeCliqueResult r;
  size_t clique[16];
  CHECK(subcode_distance_graph(2, 4, 2, 4, &g));
  CHECK(subcode_max_clique(g, &opts, &r, clique, 16));
  subcode_graph_free(g);

  if (subcode_code_parse("not a code", &code) != SUBCODE_STATUS_PARSE || subcode_last_error() == NULL) {
    return 2;
  }
  printf("%zu %lld %llu %llu %zu %d\n", n, (long long)d, (unsigned long long)johnson, (unsigned long long)one,
         r.lower, (int)r.optimal);
  return 0;
}
