"""The quivers Q_sigma attached to partitions of the toric polygon.

Vertices are ``0..N-1`` (cyclic).  Half-integer positions ``m + 1/2`` are
stored by the integer ``m``: ``row[m]`` is the row value at ``m + 1/2``,
and the arrows ``h+_{m+1/2}: m -> m+1`` and ``h-_{m+1/2}: m+1 -> m`` are
stored as ``Arrow("h+", m)`` and ``Arrow("h-", m)``.

A path is a tuple of arrows written in composition order: ``(a, b, c)``
means ``a o b o c``, so ``c`` is traversed first.  A relation is a list of
``(sign, path)`` monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "ToricData",
    "SigmaPartition",
    "Arrow",
    "QuiverWithCut",
    "InvalidSigma",
    "CutError",
    "loop_set",
    "build_quiver",
    "relation_for_arrow",
    "build_cut",
    "special_cut",
    "special_sigma",
    "special_subsets",
    "validate_cut",
    "euler_form",
    "d_C",
    "flip",
    "all_sigmas",
]


class InvalidSigma(ValueError):
    pass


class CutError(RuntimeError):
    pass


@dataclass(frozen=True)
class ToricData:
    n0: int
    n1: int

    def __post_init__(self):
        if self.n0 < 1 or self.n1 < 0:
            raise InvalidSigma("need n0 >= 1 and n1 >= 0")
        if self.n0 < self.n1:
            raise InvalidSigma("need n0 >= n1")

    @property
    def N(self) -> int:
        return self.n0 + self.n1


@dataclass(frozen=True)
class SigmaPartition:
    """A partition of the polygon, keyed by its row sequence."""

    toric: ToricData
    row: tuple[int, ...]

    def __post_init__(self):
        row = tuple(int(r) for r in self.row)
        object.__setattr__(self, "row", row)
        if any(r not in (0, 1) for r in row):
            raise InvalidSigma("row entries must be 0 or 1")
        if len(row) != self.toric.N:
            raise InvalidSigma(f"row has length {len(row)}, expected {self.toric.N}")
        if row.count(0) != self.toric.n0:
            raise InvalidSigma(
                f"row has {row.count(0)} zeros and {row.count(1)} ones, "
                f"expected {self.toric.n0} and {self.toric.n1}"
            )

    @classmethod
    def from_bits(cls, bits: str | Sequence[int], n0: int | None = None,
                  n1: int | None = None) -> "SigmaPartition":
        if isinstance(bits, str):
            bits = bits.strip()
            if not bits or any(c not in "01" for c in bits):
                raise InvalidSigma(f"sigma must be a nonempty 0/1 string, got {bits!r}")
            row = tuple(int(c) for c in bits)
        else:
            row = tuple(int(b) for b in bits)
        if n0 is None:
            n0 = row.count(0)
        if n1 is None:
            n1 = row.count(1)
        return cls(ToricData(n0, n1), row)

    @property
    def N(self) -> int:
        return self.toric.N

    @property
    def bits(self) -> str:
        return "".join(str(r) for r in self.row)

    def sigma_x(self) -> tuple[Fraction, ...]:
        """x-coordinates forced by the ordering condition.

        Within each row the positions ``1/2, 3/2, ...`` are handed out in
        decreasing order of the index.
        """
        remaining = {0: self.toric.n0, 1: self.toric.n1}
        xs = []
        for r in self.row:
            xs.append(Fraction(2 * remaining[r] - 1, 2))
            remaining[r] -= 1
        return tuple(xs)

    def points(self) -> tuple[tuple[Fraction, int], ...]:
        return tuple(zip(self.sigma_x(), self.row))

    def __str__(self):
        return self.bits


@dataclass(frozen=True, order=True)
class Arrow:
    kind: str  # "h+", "h-" or "r"
    index: int

    def __post_init__(self):
        if self.kind not in ("h+", "h-", "r"):
            raise ValueError(f"unknown arrow kind {self.kind!r}")

    @property
    def name(self) -> str:
        if self.kind == "r":
            return f"r_{self.index}"
        return f"{self.kind}_{2 * self.index + 1}/2"

    def endpoints(self, n: int) -> tuple[int, int]:
        m = self.index
        if self.kind == "h+":
            return m, (m + 1) % n
        if self.kind == "h-":
            return (m + 1) % n, m
        return m, m

    def __str__(self):
        return self.name


Path = tuple[Arrow, ...]
Relation = list[tuple[int, Path]]


def loop_set(sigma: SigmaPartition) -> frozenset[int]:
    """Vertices k whose two neighbouring triangles lie in the same row."""
    n = sigma.N
    return frozenset(k for k in range(n) if sigma.row[(k - 1) % n] == sigma.row[k])


def _eps(k: int, n: int, loops) -> Path:
    """Left word at k: the loop, or the 2-cycle through k-1."""
    if k in loops:
        return (Arrow("r", k),)
    m = (k - 1) % n
    return (Arrow("h+", m), Arrow("h-", m))


def _eta(k: int, n: int, loops) -> Path:
    """Right word at k: the loop, or the 2-cycle through k+1."""
    if k in loops:
        return (Arrow("r", k),)
    return (Arrow("h-", k), Arrow("h+", k))


def _relation(a: Arrow, n: int, loops) -> Relation:
    m = a.index
    if a.kind == "h-":
        hp = Arrow("h+", m)
        return [(1, (hp,) + _eps(m, n, loops)), (-1, _eta((m + 1) % n, n, loops) + (hp,))]
    if a.kind == "h+":
        hm = Arrow("h-", m)
        return [(1, _eps(m, n, loops) + (hm,)), (-1, (hm,) + _eta((m + 1) % n, n, loops))]
    if m not in loops:
        raise KeyError(f"no loop at vertex {m}")
    p = (m - 1) % n
    return [(1, (Arrow("h+", p), Arrow("h-", p))), (-1, (Arrow("h-", m), Arrow("h+", m)))]


def relation_for_arrow(sigma: SigmaPartition, a: Arrow) -> Relation:
    """The cyclic derivative of the potential with respect to ``a``."""
    n = sigma.N
    if not 0 <= a.index < n:
        raise KeyError(f"unknown arrow {a}")
    return _relation(a, n, loop_set(sigma))


@dataclass(frozen=True)
class QuiverWithCut:
    sigma: SigmaPartition
    n: int
    loops: frozenset[int]
    arrows: tuple[Arrow, ...]
    relations: dict = field(compare=False, hash=False, repr=False)
    cut: frozenset[Arrow] | None = None

    def src(self, a: Arrow) -> int:
        return a.endpoints(self.n)[0]

    def dst(self, a: Arrow) -> int:
        return a.endpoints(self.n)[1]

    def with_cut(self, cut: Iterable[Arrow]) -> "QuiverWithCut":
        cut = frozenset(cut)
        unknown = cut - set(self.arrows)
        if unknown:
            raise KeyError(f"cut contains unknown arrows {sorted(map(str, unknown))}")
        return QuiverWithCut(self.sigma, self.n, self.loops, self.arrows, self.relations, cut)

    @property
    def free_arrows(self) -> tuple[Arrow, ...]:
        """Arrows of the truncated quiver Q_C."""
        if self.cut is None:
            return self.arrows
        return tuple(a for a in self.arrows if a not in self.cut)

    def to_json(self) -> dict:
        cut = self.cut or frozenset()
        return {
            "sigma": self.sigma.bits,
            "n0": self.sigma.toric.n0,
            "n1": self.sigma.toric.n1,
            "vertices": list(range(self.n)),
            "loops": sorted(self.loops),
            "arrows": [
                {"name": a.name, "src": self.src(a), "dst": self.dst(a), "in_cut": a in cut}
                for a in self.arrows
            ],
            "relations": {
                a.name: [[s, [b.name for b in path]] for s, path in self.relations[a]]
                for a in self.arrows
            },
        }


def build_quiver(sigma: SigmaPartition) -> QuiverWithCut:
    n = sigma.N
    loops = loop_set(sigma)
    arrows: list[Arrow] = []
    for k in range(n):
        if k in loops:
            arrows.append(Arrow("r", k))
        arrows.append(Arrow("h+", k))
        arrows.append(Arrow("h-", k))
    rels = {a: _relation(a, n, loops) for a in arrows}
    return QuiverWithCut(sigma, n, loops, tuple(arrows), rels)


def validate_cut(Q: QuiverWithCut, cut: Iterable[Arrow] | None = None) -> bool:
    """Degree-0 relations for cut arrows, degree-1 monomials otherwise."""
    cut = frozenset(Q.cut if cut is None else cut)
    for a in Q.arrows:
        for _, path in Q.relations[a]:
            hits = sum(1 for b in path if b in cut)
            if a in cut and hits != 0:
                return False
            if a not in cut and hits != 1:
                return False
    return True


def build_cut(sigma: SigmaPartition) -> QuiverWithCut:
    """Cut from alternating groups: one arrow from every odd group."""
    Q = build_quiver(sigma)
    groups: list[list[Arrow]] = []
    for k in range(Q.n):
        if k in Q.loops:
            groups.append([Arrow("r", k)])
        groups.append([Arrow("h+", k), Arrow("h-", k)])
    if len(groups) % 2:
        raise CutError("odd number of arrow groups")
    cut = []
    for g in groups[0::2]:
        cut.append(g[0] if len(g) == 1 else g[1])
    Q = Q.with_cut(cut)
    if not validate_cut(Q):
        raise CutError(f"constructed cut is invalid for sigma={sigma.bits}")
    return Q


def special_sigma(n0: int, n1: int) -> SigmaPartition:
    """Loops exactly at the first n0 - n1 vertices."""
    toric = ToricData(n0, n1)
    nprime = n0 - n1
    return SigmaPartition(toric, (0,) * nprime + (1, 0) * n1)


def special_subsets(sigma: SigmaPartition) -> tuple[frozenset, frozenset, frozenset]:
    """(I1, I2, I3) for a special sigma: loop vertices, then alternating."""
    n = sigma.N
    nprime = sigma.toric.n0 - sigma.toric.n1
    if sigma != special_sigma(sigma.toric.n0, sigma.toric.n1):
        raise InvalidSigma(f"{sigma.bits} is not the special partition")
    i1 = frozenset(range(nprime))
    i2 = frozenset(range(nprime, n, 2))
    i3 = frozenset(range(nprime + 1, n, 2))
    return i1, i2, i3


def special_cut(sigma: SigmaPartition) -> QuiverWithCut:
    """Cut {h-_{m+1/2} : m not in I2} of the special partition."""
    _, i2, _ = special_subsets(sigma)
    Q = build_quiver(sigma)
    Q = Q.with_cut(Arrow("h-", m) for m in range(Q.n) if m not in i2)
    if not validate_cut(Q):
        raise CutError(f"special cut is invalid for sigma={sigma.bits}")
    return Q


def euler_form(Q: QuiverWithCut, alpha: Sequence[int], beta: Sequence[int]) -> int:
    if len(alpha) != Q.n or len(beta) != Q.n:
        raise ValueError(f"dimension vectors must have length {Q.n}")
    total = sum(int(a) * int(b) for a, b in zip(alpha, beta))
    for arr in Q.arrows:
        s, t = arr.endpoints(Q.n)
        total -= int(alpha[s]) * int(beta[t])
    return total


def d_C(Q: QuiverWithCut, alpha: Sequence[int]) -> int:
    if Q.cut is None:
        raise CutError("quiver has no cut")
    total = 0
    for arr in Q.cut:
        s, t = arr.endpoints(Q.n)
        total += int(alpha[s]) * int(alpha[t])
    return total


def flip(sigma: SigmaPartition, k: int) -> SigmaPartition:
    """Swap the two triangles adjacent to the loopless vertex k."""
    n = sigma.N
    if not 0 <= k < n:
        raise InvalidSigma(f"vertex {k} out of range")
    if k in loop_set(sigma):
        raise InvalidSigma(f"vertex {k} carries a loop: not a diagonal of a parallelogram")
    row = list(sigma.row)
    row[(k - 1) % n], row[k] = row[k], row[(k - 1) % n]
    return SigmaPartition(sigma.toric, tuple(row))


def all_sigmas(n0: int, n1: int) -> list[SigmaPartition]:
    """Every row sequence with n0 zeros and n1 ones."""
    toric = ToricData(n0, n1)
    n = toric.N
    out = []
    for ones in combinations(range(n), n1):
        row = tuple(1 if i in ones else 0 for i in range(n))
        out.append(SigmaPartition(toric, row))
    return out
