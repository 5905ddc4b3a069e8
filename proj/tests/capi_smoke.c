/* Builds as C99 against the public header: exercises the cache and selection
 * handles end to end and exits nonzero on the first unexpected result. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "schurmi/schurmi.h"

static int fail(const char* what) {
    fprintf(stderr, "capi_smoke: %s (%s)\n", what, smi_last_error());
    return 1;
}

int main(void) {
    const smi_hyperparams p = {1.0, 1.0, 0.0};
    const double v[2] = {0.0, 0.6};
    const size_t a[1] = {0};
    smi_cache* cache = NULL;
    smi_selection* sel = NULL;
    double mi = 0.0;
    double rho = exp(-0.18);
    double grid[16];
    size_t order[3];
    int i;

    if (smi_cache_create(v, 2, 1, &p, NULL, 0, 0, 0.0, &cache) != SMI_OK) return fail("cache_create");
    if (smi_standard_mi(cache, a, 1, 1, &mi) != SMI_OK) return fail("standard_mi");
    smi_cache_destroy(cache);
    if (fabs(mi + 0.5 * log(1.0 - rho * rho)) > 1e-12) return fail("two-point MI");

    for (i = 0; i < 8; ++i) {
        grid[2 * i] = (double)(i % 4);
        grid[2 * i + 1] = (double)(i / 4);
    }
    if (smi_select(grid, 8, 2, &p, "schur_mi", 1, 1, 3, -1.0, 7, 1, &sel) != SMI_OK) return fail("select");
    if (smi_selection_size(sel) != 3) return fail("selection size");
    smi_selection_order(sel, order);
    for (i = 0; i < 3; ++i) {
        if (order[i] >= 8) return fail("selection index");
    }
    smi_selection_destroy(sel);

    if (smi_select(grid, 8, 2, &p, "nonsense", 1, 1, 3, -1.0, 7, 1, &sel) != SMI_ERR_INVALID_INPUT) {
        return fail("bad objective accepted");
    }
    if (sel != NULL || strlen(smi_last_error()) == 0) return fail("error state");
    puts("capi_smoke: ok");
    return 0;
}
