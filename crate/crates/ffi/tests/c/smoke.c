#include <math.h>
#include <stdio.h>
#include <string.h>

#include "fracgruss.h"

static int failures = 0;

#define EXPECT(cond)                                                    \
    do {                                                                \
        if (!(cond)) {                                                  \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            failures++;                                                 \
        }                                                               \
    } while (0)

int main(void) {
    FgFunction *f = NULL;
    EXPECT(fg_function_parse("(var t)", &f) == FG_STATUS_OK);

    FgParams p = {1.0, 1.0, 0.0, 0.0, 0.0};
    double value = 0.0;
    EXPECT(fg_left_integral(f, &p, 2.0, 8, &value) == FG_STATUS_OK);
    EXPECT(fabs(value - 2.0) < 1e-14);

    EXPECT(fg_left_integral(f, &p, -1.0, 8, &value) == FG_STATUS_DOMAIN);
    EXPECT(strlen(fg_last_error_message()) > 0);

    FgFunction *bad = NULL;
    EXPECT(fg_function_parse("(add", &bad) == FG_STATUS_PARSE);
    EXPECT(bad == NULL);

    char *report = NULL;
    int holds = 0;
    const char *case_json =
        "{\"v\":{\"v\":\"(var t)\",\"lower\":\"(const 0)\",\"upper\":\"(const 1)\"},"
        "\"u\":{\"v\":\"(var t)\",\"lower\":\"(const 0)\",\"upper\":\"(const 1)\"},"
        "\"first\":{\"rho\":1,\"alpha\":1,\"beta\":0,\"eta\":0,\"k\":0},"
        "\"second\":{\"rho\":1,\"alpha\":1,\"beta\":0,\"eta\":0,\"k\":0},"
        "\"x\":1,\"n\":16}";
    EXPECT(fg_check_json("thm1", case_json, &report, &holds) == FG_STATUS_OK);
    EXPECT(holds == 1);
    EXPECT(report != NULL && strstr(report, "\"theorem_id\":\"thm1\"") != NULL);
    fg_string_free(report);

    EXPECT(fg_check_json("thm9", case_json, &report, &holds) == FG_STATUS_UNKNOWN_THEOREM);

    fg_function_free(f);
    if (failures == 0) {
        printf("ok\n");
    }
    return failures == 0 ? 0 : 1;
}
