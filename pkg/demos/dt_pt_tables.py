"""DT, PT and zero-dimensional series for a few models, with the DT/PT check."""

import sys

from toric_dt.quiver import special_sigma
from toric_dt.series import dtpt_series, euler_specialize


def show(model, cap):
    sigma = special_sigma(*model)
    dt, pt, zero = (dtpt_series(sigma, w, cap) for w in ("dt", "pt", "points"))
    print(f"== (N0, N1) = {model}, sigma = {sigma.bits}, y-degree <= {cap}")
    print("Z_PT:")
    print(pt.pretty("L"))
    print(f"DT = 0-dim * PT: {dt == zero * pt}")
    e = euler_specialize(zero)
    print("0-dim at v = 1:", ", ".join(f"{e.monomial_str(k)}: {c}" for k, c in e.sorted_terms()))
    print()


if __name__ == "__main__":
    cap = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    for model in ((1, 1), (2, 1), (2, 0)):
        show(model, cap)
