#include <stdio.h>
#include "kappa.h"

int main(void) {
    KappaBuilder *b = NULL;
    if (kappa_builder_from_spec("n=2\nmetric=[[0,1],[1,0]]\ndeformation=weyl\nlayer=classical\nsamples=4\n", &b) != KAPPA_STATUS_OK) {
        fprintf(stderr, "%s\n", kappa_last_error());
        return 2;
    }
    KappaReport *r = NULL;
    if (kappa_run(b, &r) != KAPPA_STATUS_OK) {
        fprintf(stderr, "%s\n", kappa_last_error());
        kappa_builder_free(b);
        return 2;
    }
    for (size_t i = 0; i < kappa_report_check_count(r); i++) {
        const char *name;
        int32_t status;
        kappa_report_check(r, i, &name, &status);
        printf("%d %s\n", status, name);
    }
    int code = kappa_report_exit_code(r);
    kappa_report_free(r);
    kappa_builder_free(b);
    return code;
}
