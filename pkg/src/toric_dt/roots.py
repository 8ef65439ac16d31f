"""Positive roots of the cyclic (affine type A) root system on N vertices."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .quiver import SigmaPartition, loop_set

__all__ = [
    "RootKind",
    "Root",
    "StabilityParam",
    "NonGenericStability",
    "classify_root",
    "enumerate_positive_roots",
    "parity",
    "cartan_matrix",
    "simple_reflection",
    "is_positive_root",
    "curve_class",
    "zeta_dt",
    "zeta_pt",
    "zeta_ncdt",
    "zeta_dt_literal",
    "zeta_pt_literal",
]


class RootKind(enum.Enum):
    REAL_ODD = "real-odd"
    REAL_EVEN = "real-even"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class Root:
    coords: tuple[int, ...]
    kind: RootKind
    # real roots: (a, b, n, sign) meaning sign * alpha_[a,b] + n * delta
    # imaginary roots: (n,)
    decomposition: tuple

    @property
    def degree(self) -> int:
        return sum(self.coords)

    @property
    def is_real(self) -> bool:
        return self.kind is not RootKind.IMAGINARY

    def describe(self) -> str:
        if not self.is_real:
            n = self.decomposition[0]
            return "delta" if n == 1 else f"{n}*delta"
        a, b, n, sign = self.decomposition
        part = f"alpha[{a},{b}]" if sign > 0 else f"-alpha[{a},{b}]"
        return part if n == 0 else f"{part} + {n}*delta"


def _interval(n: int, a: int, b: int) -> list[int]:
    v = [0] * n
    for i in range(a, b + 1):
        v[i] = 1
    return v


def decompose(coords: Sequence[int]) -> tuple | None:
    """Normal form of a positive root, or None if coords is not one."""
    n = len(coords)
    c = [int(x) for x in coords]
    if n == 0 or min(c) < 0 or sum(c) == 0:
        return None
    lo, hi = min(c), max(c)
    if lo == hi:
        return (lo,)
    if hi - lo != 1:
        return None
    # a real root is alpha_[a,b] + n delta (entries n+1 on [a,b], n elsewhere)
    # or -alpha_[a,b] + n delta; in both cases [a,b] avoids vertex 0
    top = [i for i in range(n) if c[i] == hi]
    bottom = [i for i in range(n) if c[i] == lo]
    for idx, sign, n_delta in ((top, 1, lo), (bottom, -1, hi)):
        a, b = idx[0], idx[-1]
        if a >= 1 and idx == list(range(a, b + 1)):
            return (a, b, n_delta, sign)
    return None


def parity(sigma: SigmaPartition, coords: Sequence[int]) -> str:
    """'odd' or 'even': parity of the coordinate sum over loopless vertices."""
    if decompose(coords) is not None and len(decompose(coords)) == 1:
        raise ValueError("parity is defined for real roots only")
    loops = loop_set(sigma)
    s = sum(int(x) for k, x in enumerate(coords) if k not in loops)
    return "odd" if s % 2 else "even"


def classify_root(sigma: SigmaPartition, coords: Sequence[int]) -> Root:
    coords = tuple(int(x) for x in coords)
    if len(coords) != sigma.N:
        raise ValueError(f"root must have {sigma.N} coordinates")
    dec = decompose(coords)
    if dec is None:
        raise ValueError(f"{coords} is not a positive root")
    if len(dec) == 1:
        return Root(coords, RootKind.IMAGINARY, dec)
    kind = RootKind.REAL_ODD if parity(sigma, coords) == "odd" else RootKind.REAL_EVEN
    return Root(coords, kind, dec)


def is_positive_root(coords: Sequence[int]) -> bool:
    return decompose(coords) is not None


def enumerate_positive_roots(sigma: SigmaPartition, degree: int) -> list[Root]:
    """All positive roots of total degree at most ``degree``."""
    n = sigma.N
    out: list[tuple[int, ...]] = []
    for k in range(1, degree // n + 1):
        out.append((k,) * n)
    for a in range(1, n):
        for b in range(a, n):
            width = b - a + 1
            base = _interval(n, a, b)
            m = 0
            while width + m * n <= degree:
                out.append(tuple(x + m for x in base))
                m += 1
            m = 1
            while m * n - width <= degree:
                out.append(tuple(m - x for x in base))
                m += 1
    out.sort(key=lambda c: (sum(c), c))
    return [classify_root(sigma, c) for c in out]


def cartan_matrix(n: int) -> list[list[int]]:
    if n == 1:
        return [[0]]
    if n == 2:
        return [[2, -2], [-2, 2]]
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        C[i][i] = 2
        C[i][(i + 1) % n] = -1
        C[i][(i - 1) % n] = -1
    return C


def simple_reflection(n: int, k: int, alpha: Sequence[int]) -> tuple[int, ...]:
    """Reflection alpha_i -> alpha_i - C_ik alpha_k, applied to a vector.

    Only coordinate k changes: x_k -> x_k - sum_i x_i C_ik.
    """
    if not 0 <= k < n:
        raise ValueError(f"vertex {k} out of range")
    if len(alpha) != n:
        raise ValueError(f"vector must have length {n}")
    C = cartan_matrix(n)
    out = [int(x) for x in alpha]
    out[k] = out[k] - sum(int(alpha[i]) * C[i][k] for i in range(n))
    return tuple(out)


def curve_class(sigma: SigmaPartition, coords: Sequence[int]) -> tuple:
    """``(n, (a, b), c(a,b))`` for real roots, ``(n, None, 0)`` for imaginary."""
    root = classify_root(sigma, coords)
    if not root.is_real:
        return (root.decomposition[0], None, 0)
    a, b, n, _ = root.decomposition
    loops = loop_set(sigma)
    c = sum(1 for i in range(a, b + 1) if i not in loops)
    return (n, (a, b), c)


class NonGenericStability(ValueError):
    def __init__(self, root):
        super().__init__(f"stability parameter is orthogonal to the root {root}")
        self.root = root


@dataclass(frozen=True)
class StabilityParam:
    """``base + eps * epsilon`` for an infinitesimal epsilon > 0."""

    base: tuple[Fraction, ...]
    eps: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(Fraction(x) for x in self.base))
        object.__setattr__(self, "eps", tuple(Fraction(x) for x in self.eps))
        if len(self.base) != len(self.eps):
            raise ValueError("base and eps must have equal length")

    @classmethod
    def plain(cls, base: Sequence) -> "StabilityParam":
        return cls(tuple(base), (0,) * len(base))

    def pair(self, alpha: Sequence[int]) -> tuple[Fraction, Fraction]:
        if len(alpha) != len(self.base):
            raise ValueError("dimension mismatch")
        return (
            sum((b * a for b, a in zip(self.base, alpha)), Fraction(0)),
            sum((e * a for e, a in zip(self.eps, alpha)), Fraction(0)),
        )

    def is_negative(self, alpha: Sequence[int]) -> bool:
        return self.pair(alpha) < (0, 0)

    def check_generic(self, roots: Iterable[Root | Sequence[int]]) -> None:
        for r in roots:
            coords = r.coords if isinstance(r, Root) else tuple(r)
            if self.pair(coords) == (0, 0):
                raise NonGenericStability(coords)

    def is_generic(self, roots: Iterable[Root | Sequence[int]]) -> bool:
        try:
            self.check_generic(roots)
        except NonGenericStability:
            return False
        return True


def zeta_dt(n: int) -> StabilityParam:
    """DT chamber: negative on alpha_[a,b] + n delta and on n delta.

    The vertex-0 entry is N - 1 so that delta pairs to zero at the base level.
    """
    return StabilityParam((n - 1,) + (-1,) * (n - 1), (-1,) + (0,) * (n - 1))


def zeta_pt(n: int) -> StabilityParam:
    """PT chamber: negative on alpha_[a,b] + n delta only."""
    return StabilityParam((n - 1,) + (-1,) * (n - 1), (1,) + (0,) * (n - 1))


def zeta_dt_literal(n: int) -> StabilityParam:
    """(1 - N - eps, 1, ..., 1) as printed; selects -alpha_[a,b] + n delta and n delta."""
    return StabilityParam((1 - n,) + (1,) * (n - 1), (-1,) + (0,) * (n - 1))


def zeta_pt_literal(n: int) -> StabilityParam:
    """(1 - N + eps, 1, ..., 1) as printed."""
    return StabilityParam((1 - n,) + (1,) * (n - 1), (1,) + (0,) * (n - 1))


def zeta_ncdt(n: int) -> StabilityParam:
    """All entries negative: every positive root is selected."""
    return StabilityParam.plain((-1,) * n)
