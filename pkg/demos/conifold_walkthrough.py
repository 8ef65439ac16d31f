"""Conifold walkthrough: quiver, roots, universal series and a point count."""

from toric_dt.motive import eval_even, format_motive
from toric_dt.oracle.pointcount import count_representations
from toric_dt.quiver import build_cut, special_sigma
from toric_dt.roots import enumerate_positive_roots
from toric_dt.series import dtpt_series, universal_series
from toric_dt.verify import theorem_A_coefficient


def main():
    sigma = special_sigma(1, 1)
    Q = build_cut(sigma)
    print(f"sigma = {sigma.bits}, cut = {sorted(a.name for a in Q.cut)}")

    for r in enumerate_positive_roots(sigma, 3):
        print(f"  root {r.coords}: {r.kind.value} ({r.describe()})")

    U = universal_series(sigma, 2)
    print("\nuniversal series to degree 2:")
    print(U.pretty("v"))

    alpha = (1, 1)
    coeff = theorem_A_coefficient(sigma, alpha, Q, U)
    for p in (2, 3, 5):
        count = count_representations(Q, alpha, p, workers=1).count
        print(f"alpha={alpha} p={p}: formula {eval_even(coeff, p)} count {count}")

    print("\nZ_0-dim in s:")
    Z = dtpt_series(sigma, "points", 6)
    for e, c in Z.sorted_terms():
        print(f"  {Z.monomial_str(e)}: {format_motive(c, 'v')}")


if __name__ == "__main__":
    main()
