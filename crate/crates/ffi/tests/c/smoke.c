/* Calls the library from C through the generated header. */
#include <stdio.h>
#include <string.h>

#include "hecke_lab.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    HlMat2 g = {2, 0, 1, 1}, gamma, upper;
    CHECK(hl_hnf_decompose(g, &gamma, &upper) == HL_STATUS_OK);
    CHECK(upper.a == 1 && upper.b == 1 && upper.c == 0 && upper.d == 2);

    HlIndexTable *t = NULL;
    CHECK(hl_index_table_new(6, &t) == HL_STATUS_OK);
    CHECK(hl_index_table_len(t) == 12);
    hl_index_table_free(t);

    HlPeriodVector *psi = NULL, *image = NULL;
    CHECK(hl_psi_vector_new(1, HL_SEED_INVERSE_Z, 1, &psi) == HL_STATUS_OK);
    CHECK(hl_t_tilde_apply(psi, 4, &image) == HL_STATUS_OK);
    char *lambda = NULL;
    CHECK(hl_detect_eigenvalue(psi, image, &lambda) == HL_STATUS_OK);
    CHECK(lambda != NULL && strcmp(lambda, "6") == 0);
    hl_string_free(lambda);
    hl_period_vector_free(image);
    hl_period_vector_free(psi);

    CHECK(hl_psi_vector_new(0, HL_SEED_CONSTANT, 1, &psi) == HL_STATUS_USAGE);
    char *msg = hl_last_error_message();
    CHECK(msg != NULL);
    hl_string_free(msg);

    char *report = NULL;
    bool passed = false;
    CHECK(hl_run_suite_json("{\"nMax\": 2, \"mMax\": 2, \"eMax\": 1}", &report, &passed) == HL_STATUS_OK);
    CHECK(passed && strstr(report, "\"overall\": \"pass\"") != NULL);
    hl_string_free(report);

    printf("ok %s\n", hl_version());
    return 0;
}
