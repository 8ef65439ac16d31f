"""Timing profile of the nilpotent stratification checks per model."""

import time

from toric_dt.oracle.partitions import (
    SpecialContext,
    T_minus_B,
    enumerate_tuples,
    n_sigma_closed,
    n_sigma_via_partitions,
    pairwise_T_minus_B,
)

for model in ((1, 1), (2, 1), (3, 1)):
    ctx = SpecialContext.of(*model)
    t0 = time.perf_counter()
    tuples = list(enumerate_tuples(ctx, 3, by="boxes"))
    agree = sum(pairwise_T_minus_B(ctx, t, "linear") == T_minus_B(ctx, t) for t in tuples)
    t1 = time.perf_counter()
    same = n_sigma_via_partitions(ctx, 4) == n_sigma_closed(ctx, 4)
    t2 = time.perf_counter()
    print(f"{model}: {agree}/{len(tuples)} tuples agree ({t1 - t0:.2f}s); "
          f"N^sigma series match to degree 4: {same} ({t2 - t1:.2f}s)")
