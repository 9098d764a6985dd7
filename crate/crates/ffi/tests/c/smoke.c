#include <stdio.h>
#include <string.h>

#include "lcrit.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__,    \
                    __LINE__, #cond);                                 \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    LcritVerdict v;
    CHECK(lcrit_vanishing_verdict(32, -371, &v) == LCRIT_STATUS_OK);
    CHECK(v.f_x1 == 4 && v.f_x2 == 4 && v.vanishes);

    CHECK(lcrit_vanishing_verdict(32, -7, &v) == LCRIT_STATUS_PRECONDITION);
    const char *msg = lcrit_last_error_message();
    CHECK(msg != NULL && strstr(msg, "(mod 8)") != NULL);

    LcritFormSet *set = NULL;
    CHECK(lcrit_enumerate_forms(32, 33, 1, 3, &set) == LCRIT_STATUS_OK);
    CHECK(lcrit_formset_len(set) == 1);
    LcritForm f;
    CHECK(lcrit_formset_get(set, 0, &f) == LCRIT_STATUS_OK);
    CHECK(f.b * f.b - 4 * f.a * f.c == 33);
    lcrit_formset_free(set);

    LcritContext *ctx = lcrit_context_new();
    LcritLValue l;
    CHECK(lcrit_l_value(ctx, 27, -31, 0, &l) == LCRIT_STATUS_OK);
    CHECK(l.verdict == LCRIT_L_VERDICT_ZERO);
    lcrit_context_free(ctx);

    CHECK(lcrit_kronecker(-3, 5) == -1);
    printf("ok %s\n", lcrit_version());
    return 0;
}
