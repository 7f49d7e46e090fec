/* Exercises the shared library through its C header only. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sigma/sigma.h"

static int failures = 0;

#define EXPECT(cond)                                                    \
  do {                                                                  \
    if (!(cond)) {                                                      \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                       \
    }                                                                   \
  } while (0)

#define OK(call) EXPECT((call) == SIGMA_OK)

static int contains(const char* haystack, const char* needle) {
  return haystack && strstr(haystack, needle) != NULL;
}

static sigma_partition* part(const char* json) {
  sigma_partition* p = NULL;
  OK(sigma_partition_from_json(json, &p));
  return p;
}

static void partitions(void) {
  sigma_partition* a = part("{\"n\":4,\"blocks\":[[1,2],[3,4]]}");
  sigma_partition* b = part("{\"n\":4,\"blocks\":[[1,3],[2,4]]}");
  sigma_partition* bp = part("{\"n\":4,\"blocks\":[[1,3,4],[2]]}");
  int commuting = -1, x = 0, z = 0;

  OK(sigma_commute(a, b, &commuting, &x, &z));
  EXPECT(commuting == 1 && x == 0 && z == 0);
  OK(sigma_commute(a, bp, &commuting, &x, &z));
  EXPECT(commuting == 0 && x == 2 && z == 3);

  sigma_partition* j = NULL;
  OK(sigma_join(a, b, &j));
  EXPECT(sigma_partition_atom_count(j) == 4);
  sigma_partition* m = NULL;
  OK(sigma_meet(a, b, &m));
  EXPECT(sigma_partition_atom_count(m) == 1);
  int refines = 0;
  OK(sigma_refines(m, a, &refines));
  EXPECT(refines == 1);
  OK(sigma_refines(a, b, &refines));
  EXPECT(refines == 0);

  char* text = NULL;
  OK(sigma_partition_to_text(j, &text));
  EXPECT(text && strcmp(text, "{1}|{2}|{3}|{4}") == 0);
  sigma_string_free(text);

  int labels[] = {7, 7, 3, 3};
  sigma_partition* fl = NULL;
  OK(sigma_partition_from_labels(labels, 4, &fl));
  EXPECT(sigma_partition_equal(fl, a) == 1);
  EXPECT(sigma_partition_size(fl) == 4);

  char* json = NULL;
  OK(sigma_commute_json(a, bp, &json));
  EXPECT(contains(json, "\"witness\":[2,3]"));
  sigma_string_free(json);

  sigma_partition_free(a);
  sigma_partition_free(b);
  sigma_partition_free(bp);
  sigma_partition_free(j);
  sigma_partition_free(m);
  sigma_partition_free(fl);
}

static void errors(void) {
  sigma_partition* p = NULL;
  EXPECT(sigma_partition_from_json("{\"n\":3,\"blocks\":[[1,2],[2,3]]}", &p) == SIGMA_OVERLAP);
  EXPECT(p == NULL);
  EXPECT(strlen(sigma_last_error()) > 0);
  EXPECT(sigma_partition_from_json("{nope", &p) == SIGMA_PARSE);
  EXPECT(sigma_partition_from_json(NULL, &p) == SIGMA_NULL_ARGUMENT);
  EXPECT(strcmp(sigma_status_name(SIGMA_COMMUTATIVITY_VIOLATION), "CommutativityViolation") == 0);

  sigma_partition* q = NULL;
  OK(sigma_partition_trivial(4, &q));
  EXPECT(strlen(sigma_last_error()) == 0);
  sigma_partition* r = NULL;
  OK(sigma_partition_discrete(3, &r));
  sigma_partition* out = NULL;
  EXPECT(sigma_join(q, r, &out) == SIGMA_GROUND_MISMATCH);
  EXPECT(sigma_set_oracle_bound(11) == SIGMA_INVALID_ARGUMENT);
  sigma_partition_free(q);
  sigma_partition_free(r);
  sigma_partition_free(NULL);
}

static void measures_and_groups(void) {
  sigma_partition* a = part("{\"n\":4,\"blocks\":[[1,2],[3,4]]}");
  sigma_group* aut = NULL;
  OK(sigma_group_automorphisms(a, &aut));
  EXPECT(sigma_group_order(aut) == 8);

  char* inv = NULL;
  OK(sigma_invariant_json(a, NULL, &inv));
  EXPECT(contains(inv, "\"unique\":[\"1/2\",\"1/2\"]"));
  EXPECT(contains(inv, "\"1/2\""));
  sigma_string_free(inv);

  sigma_measure* mu = NULL;
  OK(sigma_measure_from_json("{\"partition\":{\"n\":4,\"blocks\":[[1,2],[3,4]]},\"weights\":[\"1/3\",\"2/3\"]}", &mu));
  int invariant = -1;
  OK(sigma_measure_is_invariant(mu, aut, &invariant));
  EXPECT(invariant == 0);

  sigma_partition* fine = part("{\"n\":4,\"blocks\":[[1],[2],[3],[4]]}");
  sigma_measure* nu = NULL;
  OK(sigma_measure_extend(mu, fine, "[[\"3/4\",\"1/4\"],[\"1/2\",\"1/2\"]]", &nu));
  char* text = NULL;
  OK(sigma_measure_to_json(nu, &text));
  EXPECT(contains(text, "[\"1/4\",\"1/12\",\"1/3\",\"1/3\"]"));
  sigma_string_free(text);
  sigma_measure* back = NULL;
  OK(sigma_measure_restrict(nu, a, &back));
  OK(sigma_measure_to_json(back, &text));
  EXPECT(contains(text, "[\"1/3\",\"2/3\"]"));
  sigma_string_free(text);
  EXPECT(sigma_measure_extend(mu, fine, "[[\"1/2\",\"1/3\"],[\"1/2\",\"1/2\"]]", &nu) == SIGMA_WEIGHT_SUM);

  sigma_group* swap = NULL;
  OK(sigma_group_from_json("{\"n\":4,\"generators\":[[[2,3]]]}", &swap));
  EXPECT(sigma_group_order(swap) == 2);

  sigma_measure_free(mu);
  sigma_measure_free(nu);
  sigma_measure_free(back);
  sigma_group_free(aut);
  sigma_group_free(swap);
  sigma_partition_free(a);
  sigma_partition_free(fine);
}

static void domains(void) {
  sigma_partition* gens[2];
  gens[0] = part("{\"n\":4,\"blocks\":[[1,2],[3,4]]}");
  gens[1] = part("{\"n\":4,\"blocks\":[[1,3],[2,4]]}");
  sigma_domain* d = NULL;
  OK(sigma_domain_build((const sigma_partition* const*)gens, 2, &d));
  EXPECT(sigma_domain_size(d) == 3);

  sigma_group* swap = NULL;
  OK(sigma_group_from_json("{\"n\":4,\"generators\":[[[2,3]]]}", &swap));
  char* out = NULL;
  OK(sigma_endogenous_json(d, swap, &out));
  EXPECT(contains(out, "\"established\":true"));
  EXPECT(contains(out, "\"measure\":[\"1/2\",\"1/2\"]"));
  sigma_string_free(out);

  char* dot = NULL;
  OK(sigma_domain_dot(d, &dot));
  EXPECT(contains(dot, "digraph refinement_poset"));
  sigma_string_free(dot);

  sigma_partition* bad[2];
  bad[0] = gens[0];
  bad[1] = part("{\"n\":4,\"blocks\":[[1,3,4],[2]]}");
  sigma_domain* d2 = NULL;
  EXPECT(sigma_domain_build((const sigma_partition* const*)bad, 2, &d2) == SIGMA_COMMUTATIVITY_VIOLATION);
  EXPECT(contains(sigma_last_error(), "(2,3)"));

  sigma_partition* start = NULL;
  OK(sigma_partition_trivial(4, &start));
  OK(sigma_simulate_json(start, "{\"kind\":\"exhaustive\"}", 64, d, &out));
  EXPECT(contains(out, "\"outcome\":\"stabilized\""));
  sigma_string_free(out);
  EXPECT(sigma_simulate_json(start, "{\"kind\":\"teleport\"}", 64, NULL, &out) == SIGMA_POLICY);

  sigma_partition_free(gens[0]);
  sigma_partition_free(gens[1]);
  sigma_partition_free(bad[1]);
  sigma_partition_free(start);
  sigma_group_free(swap);
  sigma_domain_free(d);
}

static void graphs_and_oracle(void) {
  char* json = NULL;
  char* dot = NULL;
  OK(sigma_event_graph("{\"chains\":[[\"R1\",\"R2\",\"R4\"],[\"R1\",\"R3\",\"R4\"]]}", &json, &dot));
  EXPECT(contains(dot, "\"R2\" -> \"R4\""));
  EXPECT(!contains(dot, "\"R1\" -> \"R4\""));
  sigma_string_free(json);
  sigma_string_free(dot);
  EXPECT(sigma_event_graph("{\"chains\":[[\"a\",\"b\"],[\"b\",\"a\"],[\"a\",\"c\"],[\"c\",\"b\"]]}", NULL, NULL) ==
         SIGMA_OK);
  EXPECT(sigma_event_graph("{\"chains\":[[\"a\",\"b\"],[\"b\",\"c\"],[\"c\",\"a\"]]}", NULL, NULL) ==
         SIGMA_CYCLICITY);

  int all_ok = 0;
  OK(sigma_oracle_json(4, "bell,commute", 1, &json, &all_ok));
  EXPECT(all_ok == 1);
  sigma_string_free(json);
  EXPECT(sigma_oracle_json(4, "bogus", 1, &json, &all_ok) == SIGMA_INVALID_ARGUMENT);

  char* toy = NULL;
  OK(sigma_toy_transcript(&toy));
  EXPECT(contains(toy, "unique up to symmetry"));
  sigma_string_free(toy);
}

int main(void) {
  partitions();
  errors();
  measures_and_groups();
  domains();
  graphs_and_oracle();
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed (library %s)\n", sigma_version());
  return 0;
}
