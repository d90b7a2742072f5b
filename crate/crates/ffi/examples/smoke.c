#include <stdio.h>
#include "hcmu.h"

int main(void) {
    HcmuDataSet *d = NULL;
    if (hcmu_build_one_cone(0, 7, 3, &d) != HCMU_STATUS_OK) {
        fprintf(stderr, "%s\n", hcmu_last_error());
        return 1;
    }
    size_t arcs = 0;
    uint64_t dim = 0;
    hcmu_dataset_counts(d, NULL, NULL, &arcs, NULL);
    hcmu_dimension_crosscheck(d, &dim);
    printf("arcs %zu dim %llu\n", arcs, (unsigned long long)dim);
    hcmu_dataset_free(d);
    HcmuExistence e;
    hcmu_check_existence(0, "2,2,2", &e);
    printf("existence %d\n", (int)e);
    return 0;
}
