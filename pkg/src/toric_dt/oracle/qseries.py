"""Direct expansion of the infinite q-products behind the root factors.

Each factor type is a product over j >= 0 of binomials in L^{-j}.  We
multiply the first J + 1 of them with integer Laurent coefficients and
compare with the Exp form expanded in descending powers of v.  For a
coefficient of y^d, factors with j > J only touch powers of v at most
``2d - 2J``, so everything strictly above that bound is exact.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..motive import laurent_expand
from ..roots import RootKind
from ..series import quantum_exp_E, root_coefficient, TruncatedSeries

__all__ = ["ProductCheck", "product_expansion", "exact_bound", "check_factor", "FACTOR_TYPES"]

Laurent = dict[int, int]  # v-exponent -> integer coefficient
FACTOR_TYPES = ("real-odd", "real-even", "imaginary", "E")


def _mul(a: list[Laurent], b: list[Laurent], cap: int) -> list[Laurent]:
    out: list[Laurent] = [defaultdict(int) for _ in range(cap + 1)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j in range(cap + 1 - i):
            for ea, xa in ca.items():
                for eb, xb in b[j].items():
                    out[i + j][ea + eb] += xa * xb
    return [{e: x for e, x in c.items() if x} for c in out]


def _binomial(shift: int, power: int, cap: int) -> list[Laurent]:
    """(1 - v^shift y)^power truncated at y^cap."""
    out: list[Laurent] = []
    for k in range(cap + 1):
        if power >= 0:
            c = comb(power, k) * (-1) ** k
        else:
            c = comb(-power + k - 1, k)
        out.append({shift * k: c} if c else {})
    return out


def _factors(kind: str, n: int, j: int) -> list[tuple[int, int]]:
    """(v-shift, power) of the binomials in the j-th slice of the product."""
    if kind in ("real-odd", "E"):
        return [(-2 * j - 1, 1)]
    if kind == "real-even":
        return [(-2 * j, -1)]
    if kind == "imaginary":
        out = [(2 - 2 * j, -1)]
        if n > 1:
            out.append((-2 * j, 1 - n))
        return out
    raise ValueError(f"unknown factor type {kind!r}")


def product_expansion(kind: str, n: int, cap: int, J: int) -> list[Laurent]:
    """prod_{j=0}^{J} of the binomial slices, as coefficients of y^0..y^cap."""
    out: list[Laurent] = [{0: 1}] + [{} for _ in range(cap)]
    for j in range(J + 1):
        for shift, power in _factors(kind, n, j):
            out = _mul(out, _binomial(shift, power, cap), cap)
    return out


def exact_bound(degree: int, J: int) -> int:
    """Powers of v strictly above this are unaffected by slices j > J."""
    return 2 * degree - 2 * J


def _exp_form(kind: str, n: int, cap: int) -> TruncatedSeries:
    if kind == "E":
        return quantum_exp_E(cap)
    rk = {"real-odd": RootKind.REAL_ODD, "real-even": RootKind.REAL_EVEN,
          "imaginary": RootKind.IMAGINARY}[kind]
    return TruncatedSeries.monomial(1, cap, (1,), root_coefficient(rk, n)).pexp()


@dataclass(frozen=True)
class ProductCheck:
    kind: str
    n: int
    cap: int
    J: int
    ok: bool
    stable: bool
    first_mismatch: tuple | None  # (degree, v-exponent, exp-form value, product value)


def check_factor(kind: str, n: int = 2, cap: int = 8, J: int | None = None) -> ProductCheck:
    """Compare the Exp form with the capped product, and the cap with cap + 1."""
    J = 2 * cap + 4 if J is None else J
    series = _exp_form(kind, n, cap)
    prod = product_expansion(kind, n, cap, J)
    prod_next = product_expansion(kind, n, cap, J + 1)
    mismatch = None
    stable = True
    for d in range(cap + 1):
        low = exact_bound(d, J) + 1
        exact = laurent_expand(series.coeff((d,)), low)
        capped = {e: Fraction(x) for e, x in prod[d].items() if e >= low}
        capped_next = {e: Fraction(x) for e, x in prod_next[d].items() if e >= low}
        if capped != capped_next:
            stable = False
        if exact != capped and mismatch is None:
            for e in sorted(set(exact) | set(capped), reverse=True):
                if exact.get(e, 0) != capped.get(e, 0):
                    mismatch = (d, e, exact.get(e, 0), capped.get(e, 0))
                    break
    return ProductCheck(kind, n, cap, J, mismatch is None and stable, stable, mismatch)
