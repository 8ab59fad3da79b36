/* Minimal consumer of the C interface.
 *
 * Build the library first, then:
 *   cc demo.c -I../include ../../../target/debug/libmwbound_ffi.a \
 *      -lpthread -ldl -lm -o demo
 */
#include <stdio.h>
#include <string.h>
#include "mwbound.h"

int main(void) {
    MwbGroup g = { MWB_GROUP_KIND_SU, 2, 3, 0 };
    MwbReport *report = NULL;
    if (mwb_report_build(g, "100", 0, 4, 0, &report) != MWB_STATUS_OK) {
        fprintf(stderr, "build failed: %s\n", mwb_last_error_message());
        return 1;
    }

    uint32_t rank = 0;
    uint64_t max_degree = 0;
    char *c_sigma = NULL;
    mwb_report_rank(report, &rank);
    mwb_report_max_degree(report, &max_degree);
    mwb_report_c_sigma(report, &c_sigma);
    printf("rank=%u max_degree=%llu c_sigma=%s\n",
           rank, (unsigned long long)max_degree, c_sigma);
    mwb_string_free(c_sigma);

    char *json = NULL;
    mwb_report_json(report, &json);
    printf("%.120s...\n", json);
    mwb_string_free(json);
    mwb_report_free(report);

    if (mwb_verify(g, 42, 6) != MWB_STATUS_OK) {
        fprintf(stderr, "verify failed: %s\n", mwb_last_error_message());
        return 1;
    }
    puts("verify ok");
    return 0;
}
