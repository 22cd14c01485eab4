#include <stdio.h>
#include <string.h>
#include "rees.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    const int64_t square[] = {2, 0, 0, 2};
    ReesIdeal *ideal = NULL;
    CHECK(rees_ideal_new(2, square, 2, &ideal) == REES_STATUS_OK);

    ReesClassification cls;
    CHECK(rees_ideal_classify(ideal, &cls) == REES_STATUS_OK);
    CHECK(cls == REES_CLASSIFICATION_QUASI_IDEAL);

    bool normal = true;
    char *cert = NULL;
    CHECK(rees_ideal_is_normal(ideal, 0, &normal, &cert) == REES_STATUS_OK);
    CHECK(!normal);
    CHECK(strstr(cert, "\"witness\":[1,1,1]") != NULL);
    rees_string_free(cert);
    rees_ideal_free(ideal);

    const size_t u23[] = {1, 2, 1, 3, 2, 3};
    ReesMatroid *m = NULL;
    CHECK(rees_matroid_new(3, u23, 3, 2, &m) == REES_STATUS_OK);
    CHECK(rees_matroid_basis_ideal(m, &ideal) == REES_STATUS_OK);
    CHECK(rees_ideal_is_normal(ideal, 0, &normal, NULL) == REES_STATUS_OK);
    CHECK(normal);
    rees_ideal_free(ideal);
    rees_matroid_free(m);

    const size_t bad[] = {1, 2, 3, 4};
    CHECK(rees_matroid_new(4, bad, 2, 2, &m) == REES_STATUS_EXCHANGE_FAILURE);
    CHECK(rees_last_error() != NULL);

    printf("ok %s\n", rees_version());
    return 0;
}
