"""Nilpotent stratification of the special partition, checked by linear algebra.

A nilpotent type is a family of integer partitions ``pi[a, b]`` indexed by
ordered vertex pairs.  A part ``l`` of ``pi[a, b]`` stands for one Jordan
chain of the cycle operator H that starts at vertex a and has length
``N*(l - 1) + |b - a| + 1``, so it ends at b.

Partitions are tuples of positive parts in non-increasing order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

import flint
import numpy as np

from ..motive import ONE, MotiveRat, as_motive, gl_order, v_power
from ..quiver import Arrow, SigmaPartition, special_cut, special_subsets
from ..roots import enumerate_positive_roots
from ..series import TruncatedSeries

__all__ = [
    "Partition",
    "SpecialContext",
    "PartitionTuple",
    "partitions_of",
    "partitions_upto",
    "multiplicities",
    "partition_M",
    "partition_prime",
    "cyc_dist",
    "in_interval",
    "chain_length",
    "dim_vector",
    "B_dim",
    "T_dim",
    "lemma_dif",
    "linear_algebra_dims",
    "T_minus_B",
    "pairwise_T_minus_B",
    "f_weight",
    "g_weight",
    "f_series",
    "g_series",
    "f_closed",
    "g_closed",
    "n_sigma_via_partitions",
    "n_sigma_closed",
    "i_sigma_closed",
    "root_product_reformulation",
    "interval_monomial",
    "enumerate_tuples",
    "i_sigma_at_cycle",
]

Partition = tuple[int, ...]


# ---------------------------------------------------------------------------
# partitions


@lru_cache(maxsize=None)
def partitions_of(n: int, largest: int | None = None) -> tuple[Partition, ...]:
    if largest is None:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_upto(n: int) -> list[Partition]:
    return [p for k in range(n + 1) for p in partitions_of(k)]


def multiplicities(pi: Partition) -> dict[int, int]:
    """``{l: b_l}``: the number of parts equal to l."""
    return dict(Counter(pi))


def _conjugate(pi: Partition) -> list[int]:
    if not pi:
        return []
    return [sum(1 for x in pi if x >= i) for i in range(1, max(pi) + 1)]


def partition_M(pi: Partition, rho: Partition) -> int:
    """sum_i (#parts of pi >= i) * (#parts of rho >= i)."""
    a, b = _conjugate(pi), _conjugate(rho)
    return sum(x * y for x, y in zip(a, b))


def partition_prime(pi: Partition) -> Partition:
    """Remove one box from every part (parts equal to 1 disappear)."""
    return tuple(x - 1 for x in pi if x > 1)


# ---------------------------------------------------------------------------
# cyclic intervals and the special partition


def cyc_dist(a: int, b: int, n: int) -> int:
    """|b - a|: steps from a to b in the direction i -> i + 1."""
    return (b - a) % n


def in_interval(i: int, a: int, b: int, n: int) -> bool:
    return cyc_dist(a, i, n) <= cyc_dist(a, b, n)


def chain_length(n: int, a: int, b: int, part: int) -> int:
    return n * (part - 1) + cyc_dist(a, b, n) + 1


@dataclass(frozen=True)
class SpecialContext:
    sigma: SigmaPartition
    n: int
    I1: frozenset
    I2: frozenset
    I3: frozenset

    @classmethod
    def of(cls, sigma_or_n0, n1: int | None = None) -> "SpecialContext":
        from ..quiver import special_sigma

        sigma = sigma_or_n0 if n1 is None else special_sigma(sigma_or_n0, n1)
        i1, i2, i3 = special_subsets(sigma)
        return cls(sigma, sigma.N, i1, i2, i3)

    def dist(self, a: int, b: int) -> int:
        return cyc_dist(a, b, self.n)

    def contains(self, i: int, a: int, b: int) -> bool:
        return in_interval(i % self.n, a, b, self.n)

    def in_S(self, a: int, b: int) -> bool:
        """[a,b] with exactly one of (a in I3, b in I2)."""
        return (a in self.I3) != (b in self.I2)


@dataclass(frozen=True)
class PartitionTuple:
    n: int
    parts: tuple[tuple[tuple[int, int], Partition], ...]  # sorted ((a, b), pi) with pi nonempty

    @classmethod
    def from_mapping(cls, n: int, data: Mapping[tuple[int, int], Sequence[int]]) -> "PartitionTuple":
        items = []
        for (a, b), pi in data.items():
            pi = tuple(sorted((int(x) for x in pi), reverse=True))
            if any(x <= 0 for x in pi):
                raise ValueError("parts must be positive")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"slot {(a, b)} out of range")
            if pi:
                items.append(((a, b), pi))
        return cls(n, tuple(sorted(items)))

    def get(self, a: int, b: int) -> Partition:
        for key, pi in self.parts:
            if key == (a, b):
                return pi
        return ()

    def as_dict(self) -> dict[tuple[int, int], Partition]:
        return dict(self.parts)

    @property
    def boxes(self) -> int:
        return sum(sum(pi) for _, pi in self.parts)


def dim_vector(n: int, t: PartitionTuple) -> tuple[int, ...]:
    """alpha_i = sum |pi| - sum over [a,b] not containing i of l(pi)."""
    total = sum(sum(pi) for _, pi in t.parts)
    out = []
    for i in range(n):
        missing = sum(len(pi) for (a, b), pi in t.parts if not in_interval(i, a, b, n))
        out.append(total - missing)
    return tuple(out)


# ---------------------------------------------------------------------------
# dimension tables


def _four_case(pi: Partition, rho: Partition, inside: bool, small: bool) -> int:
    first = pi if small else partition_prime(pi)
    second = rho if inside else partition_prime(rho)
    return partition_M(first, second)


def B_dim(ctx: SpecialContext, a: int, b: int, c: int, d: int,
          pi: Partition, rho: Partition) -> int:
    """Commutant block dimension from the four-case table."""
    inside = ctx.contains(a, c, d)
    small = ctx.dist(a, d) <= ctx.dist(a, b)
    return _four_case(pi, rho, inside, small)


def T_dim(ctx: SpecialContext, a: int, b: int, c: int, d: int,
          pi: Partition, rho: Partition) -> int:
    """Dimension of the relation-compatible L block from the sixteen-case table."""
    b_in_I2 = b in ctx.I2
    if a in ctx.I3:
        anchor = (a - 1) % ctx.n
        threshold = ctx.dist(a, b) + (0 if b_in_I2 else 1)
    else:
        anchor = a
        threshold = ctx.dist(a, b) - (1 if b_in_I2 else 0)
    inside = ctx.contains(anchor, c, d)
    small = ctx.dist(anchor, d) <= threshold
    return _four_case(pi, rho, inside, small)


def lemma_dif(ctx: SpecialContext, a: int, b: int, c: int, d: int,
              pi: Partition, rho: Partition) -> int:
    """T - B as predicted by the seven-case table (zero outside it)."""
    M, P = partition_M, partition_prime
    n = ctx.n
    am1 = (a - 1) % n
    I2, I3 = ctx.I2, ctx.I3
    dist = ctx.dist
    if a not in I3 and b == d and b in I2:
        if ctx.contains(a, c, b):
            return M(P(pi), rho) - M(pi, rho)
        return M(P(pi), P(rho)) - M(pi, P(rho))
    if a in I3 and b not in I2 and d == am1 and am1 in I2:
        if a == c:
            return M(pi, rho) - M(P(pi), rho)
        return M(pi, rho) - M(P(pi), P(rho))
    if a in I3 and b not in I2 and a == c and d != am1:
        if dist(a, d) <= dist(a, b):
            return M(pi, P(rho)) - M(pi, rho)
        return M(P(pi), P(rho)) - M(P(pi), rho)
    if a in I3 and b in I2 and d == am1:
        if a == c and b != am1:
            return M(pi, rho) - M(P(pi), rho)
        if a != c and b == am1:
            return M(pi, rho) - M(pi, P(rho))
        if a != c and b != am1:
            return M(pi, rho) - M(P(pi), P(rho))
        return 0
    if a in I3 and b in I2 and ctx.contains(am1, c, d) and d != am1 and b == d:
        return M(P(pi), rho) - M(pi, rho)
    if a in I3 and b in I2 and not ctx.contains(am1, c, d):
        if a == c and dist(a, d) < dist(a, b):
            return M(pi, P(rho)) - M(pi, rho)
        if a == c and b == d:
            return M(P(pi), P(pi)) - M(pi, pi)
        if a == c and dist(a, d) > dist(a, b):
            return M(P(pi), P(rho)) - M(P(pi), rho)
        if a != c and b == d:
            return M(P(pi), P(rho)) - M(pi, P(rho))
    return 0


# ---------------------------------------------------------------------------
# explicit linear algebra


@dataclass
class _Module:
    n: int
    vertex: np.ndarray  # vertex of each basis vector
    summand: np.ndarray  # 0 or 1
    H: np.ndarray  # integer matrix of the cycle operator


def _chain_module(n: int, blocks: Sequence[tuple[int, int, Partition]]) -> _Module:
    vertex, summand, nxt = [], [], []
    for s, (a, b, pi) in enumerate(blocks):
        for part in pi:
            length = chain_length(n, a, b, part)
            base = len(vertex)
            for p in range(length):
                vertex.append((a + p) % n)
                summand.append(s)
                nxt.append(base + p + 1 if p + 1 < length else -1)
    dim = len(vertex)
    H = np.zeros((dim, dim), dtype=np.int64)
    for j, i in enumerate(nxt):
        if i >= 0:
            H[i, j] = 1
    return _Module(n, np.array(vertex, dtype=np.int64), np.array(summand, dtype=np.int64), H)


def _rank(rows: np.ndarray) -> int:
    if rows.size == 0:
        return 0
    rows = rows[np.any(rows != 0, axis=1)]
    if rows.shape[0] == 0:
        return 0
    return flint.fmpz_mat(rows.tolist()).rank()


def _solution_dim(equations: list[np.ndarray], unknowns: int) -> int:
    if unknowns == 0:
        return 0
    if not equations:
        return unknowns
    return unknowns - _rank(np.concatenate(equations, axis=0))


def linear_algebra_dims(ctx: SpecialContext, a: int, b: int, c: int, d: int,
                        pi: Partition, rho: Partition, max_boxes: int = 8) -> tuple[int, int]:
    """(T, B) for the block Hom(V^{a,b}, V^{c,d}) by exact rank computation."""
    if (a, b) == (c, d) and pi != rho:
        raise ValueError("a slot carries a single partition")
    if sum(pi) + (0 if (a, b) == (c, d) else sum(rho)) > max_boxes:
        raise ValueError("box cap exceeded")
    if not pi or not rho:
        return 0, 0
    n = ctx.n
    if (a, b) == (c, d):
        mod = _chain_module(n, [(a, b, pi)])
        src_mask = tgt_mask = mod.summand == 0
    else:
        mod = _chain_module(n, [(a, b, pi), (c, d, rho)])
        src_mask, tgt_mask = mod.summand == 0, mod.summand == 1
    dim = len(mod.vertex)
    H = mod.H
    I = np.eye(dim, dtype=np.int64)

    # B: grading-preserving X with X H = H X, supported on tgt <- src
    cols = [(k, l) for k in range(dim) for l in range(dim)
            if tgt_mask[k] and src_mask[l] and mod.vertex[k] == mod.vertex[l]]
    idx = np.array([k * dim + l for k, l in cols], dtype=np.int64)
    # vec(X H - H X) as a linear map of vec(X), row-major vec
    op = np.kron(I, H.T) - np.kron(H, I)
    B = _solution_dim([op[:, idx]], len(cols))

    # T: L-arrows satisfying the cut relations, with h+ blocks taken from H
    Q = special_cut(ctx.sigma)
    hplus = {}
    for m in range(n):
        P = np.diag((mod.vertex == m).astype(np.int64))
        hplus[m] = H @ P
    unknowns: list[tuple[Arrow, int, int]] = []
    for arr in Q.free_arrows:
        if arr.kind == "h+":
            continue
        s, t = arr.endpoints(n)
        for k in range(dim):
            if not (tgt_mask[k] and mod.vertex[k] == t):
                continue
            for l in range(dim):
                if src_mask[l] and mod.vertex[l] == s:
                    unknowns.append((arr, k, l))
    position = {u: i for i, u in enumerate(unknowns)}
    equations = []
    for cut_arrow in sorted(Q.cut):
        E = np.zeros((dim * dim, len(unknowns)), dtype=np.int64)
        for sign, path in Q.relations[cut_arrow]:
            k_pos = [i for i, x in enumerate(path) if x.kind != "h+"]
            if len(k_pos) != 1:
                raise RuntimeError("relation is not linear in the L-arrows")
            j = k_pos[0]
            left, right = I, I
            for x in path[:j]:
                left = left @ hplus[x.index]
            for x in path[j + 1:]:
                right = right @ hplus[x.index]
            # (left X right)[i, j] = sum_{k,l} left[i,k] X[k,l] right[l,j]
            full = np.einsum("ik,lj->ijkl", left, right).reshape(dim * dim, dim * dim)
            arrow = path[j]
            for (arr, k, l), col in position.items():
                if arr == arrow:
                    E[:, col] += sign * full[:, k * dim + l]
        equations.append(E)
    T = _solution_dim(equations, len(unknowns))
    return T, B


# ---------------------------------------------------------------------------
# totals over a nilpotent type


def T_minus_B(ctx: SpecialContext, t: PartitionTuple) -> Fraction:
    """Closed form for the total T - B of a nilpotent type."""
    n = ctx.n
    data = t.as_dict()

    def length(a, b):
        return len(data.get((a, b), ()))

    total = Fraction(0)
    for i in ctx.I2:
        j = (i + 1) % n
        x = sum(length(j, b) for b in range(n) if b != i)
        x -= sum(length(c, i) for c in range(n) if c != j)
        total -= Fraction(x * x, 2)
    for (a, b), pi in data.items():
        if ctx.in_S(a, b):
            total -= Fraction(sum(m * m for m in multiplicities(pi).values()), 2)
    return total


def pairwise_T_minus_B(ctx: SpecialContext, t: PartitionTuple, method: str = "tables") -> int:
    """sum over ordered slot pairs of T - B, by the tables or by linear algebra."""
    data = t.as_dict()
    total = 0
    for (a, b), pi in data.items():
        for (c, d), rho in data.items():
            if method == "tables":
                total += T_dim(ctx, a, b, c, d, pi, rho) - B_dim(ctx, a, b, c, d, pi, rho)
            elif method == "lemma":
                total += lemma_dif(ctx, a, b, c, d, pi, rho)
            elif method == "linear":
                T, B = linear_algebra_dims(ctx, a, b, c, d, pi, rho, max_boxes=10**6)
                total += T - B
            else:
                raise ValueError(f"unknown method {method!r}")
    return total


# ---------------------------------------------------------------------------
# series


def f_weight(pi: Partition) -> MotiveRat:
    """prod_l [End(b_l)] / [GL(b_l)]."""
    out = ONE
    for m in multiplicities(pi).values():
        out = out * v_power(2 * m * m) / as_motive(gl_order(m))
    return out


def g_weight(pi: Partition) -> MotiveRat:
    """f(pi) * prod_l (-v)^(-b_l^2)."""
    out = f_weight(pi)
    for m in multiplicities(pi).values():
        out = out * v_power(-m * m) * (-1 if m % 2 else 1)
    return out


def _partition_series(weight, cap: int) -> TruncatedSeries:
    """sum_pi w(pi) a^l(pi) t^(|pi| - l(pi)), in variables (a, t)."""
    terms = {}
    for pi in partitions_upto(cap):
        e = (len(pi), sum(pi) - len(pi))
        terms[e] = terms.get(e, MotiveRat(0)) + weight(pi)
    return TruncatedSeries(2, cap, terms, names=["a", "t"])


def f_series(cap: int) -> TruncatedSeries:
    return _partition_series(f_weight, cap)


def g_series(cap: int) -> TruncatedSeries:
    return _partition_series(g_weight, cap)


def _a_over_one_minus_t(cap: int, coeff: MotiveRat) -> TruncatedSeries:
    return TruncatedSeries(2, cap, {(1, k): coeff for k in range(cap)}, names=["a", "t"])


def f_closed(cap: int) -> TruncatedSeries:
    """Exp(a / ((1 - L^-1)(1 - t)))."""
    L = v_power(2)
    return _a_over_one_minus_t(cap, L / (L - 1)).pexp()


def g_closed(cap: int) -> TruncatedSeries:
    """Exp((-v)^-1 a / ((1 - L^-1)(1 - t)))."""
    L = v_power(2)
    return _a_over_one_minus_t(cap, -v_power(-1) * L / (L - 1)).pexp()


def interval_monomial(n: int, a: int, b: int) -> tuple[int, ...]:
    """Exponent of y_a y_{a+1} ... y_b (cyclically)."""
    e = [0] * n
    for k in range(cyc_dist(a, b, n) + 1):
        e[(a + k) % n] += 1
    return tuple(e)


def enumerate_tuples(ctx: SpecialContext, cap: int, by: str = "dim") -> Iterator[PartitionTuple]:
    """Nilpotent types with total dimension (``by="dim"``) or box count
    (``by="boxes"``) at most cap."""
    n = ctx.n
    slots = [(a, b) for a in range(n) for b in range(n)]
    if by == "dim":
        def cost(s, pi):
            return sum(chain_length(n, s[0], s[1], x) for x in pi)
    elif by == "boxes":
        def cost(s, pi):
            return sum(pi)
    else:
        raise ValueError(f"unknown measure {by!r}")
    options = {s: [pi for pi in partitions_upto(cap) if cost(s, pi) <= cap] for s in slots}

    def rec(k: int, budget: int, chosen: list):
        if k == len(slots):
            yield PartitionTuple(n, tuple(chosen))
            return
        s = slots[k]
        for pi in options[s]:
            c = cost(s, pi)
            if c > budget:
                continue
            if pi:
                chosen.append((s, pi))
            yield from rec(k + 1, budget - c, chosen)
            if pi:
                chosen.pop()

    yield from rec(0, cap, [])


def n_sigma_via_partitions(ctx: SpecialContext, cap: int,
                           method: str = "closed") -> TruncatedSeries:
    """N^sigma summed over nilpotent types.

    ``method`` selects how T - B is obtained: the closed form ("closed"),
    the dimension tables ("tables") or explicit linear algebra ("linear").
    """
    n = ctx.n
    terms: dict[tuple[int, ...], MotiveRat] = {}
    for t in enumerate_tuples(ctx, cap):
        alpha = dim_vector(n, t)
        x = sum((alpha[(i + 1) % n] - alpha[i]) ** 2 for i in ctx.I2)
        if method == "closed":
            twice = T_minus_B(ctx, t) * 2
            if twice.denominator != 1:
                raise ArithmeticError("T - B is not a half-integer")
            twice = int(twice)
        else:
            twice = 2 * pairwise_T_minus_B(ctx, t, method)
        coeff = v_power(x + twice) * (-1 if x % 2 else 1)
        for _, pi in t.parts:
            coeff = coeff * f_weight(pi)
        terms[alpha] = terms.get(alpha, MotiveRat(0)) + coeff
    return TruncatedSeries(n, cap, terms, names=[f"y{i}" for i in range(n)])


def n_sigma_closed(ctx: SpecialContext, cap: int) -> TruncatedSeries:
    """Exp(L/(L-1) * 1/(1-y') * (sum_{not S} y_[a,b] - L^-1/2 sum_S y_[a,b]))."""
    n = ctx.n
    L = v_power(2)
    base = L / (L - 1)
    terms: dict[tuple[int, ...], MotiveRat] = {}
    for a in range(n):
        for b in range(n):
            e0 = interval_monomial(n, a, b)
            c = base * (-v_power(-1) if ctx.in_S(a, b) else 1)
            k = 0
            while sum(e0) + k * n <= cap:
                e = tuple(x + k for x in e0)
                terms[e] = terms.get(e, MotiveRat(0)) + c
                k += 1
    arg = TruncatedSeries(n, cap, terms, names=[f"y{i}" for i in range(n)])
    return arg.pexp()


def i_sigma_closed(cap: int) -> TruncatedSeries:
    """Exp(L y / (1 - y)) in one variable."""
    L = v_power(2)
    return TruncatedSeries(1, cap, {(k,): L for k in range(1, cap + 1)}, names=["y"]).pexp()


def i_sigma_at_cycle(n: int, cap: int) -> TruncatedSeries:
    """I^sigma evaluated at y' = y_0 ... y_{N-1}."""
    single = i_sigma_closed(cap // n)
    terms = {(k,) * n: c for (k,), c in single.items()}
    return TruncatedSeries(n, cap, terms, names=[f"y{i}" for i in range(n)])


def root_product_reformulation(ctx: SpecialContext, cap: int) -> TruncatedSeries:
    """Exp(1/(1-L^-1) ((L+N-1) sum_im + sum_even - L^-1/2 sum_odd)), parity over I2 u I3."""
    n = ctx.n
    L = v_power(2)
    base = L / (L - 1)
    loopless = ctx.I2 | ctx.I3
    terms = {}
    for r in enumerate_positive_roots(ctx.sigma, cap):
        if not r.is_real:
            terms[r.coords] = base * (L + (n - 1))
        elif sum(r.coords[i] for i in loopless) % 2 == 0:
            terms[r.coords] = base
        else:
            terms[r.coords] = -base * v_power(-1)
    return TruncatedSeries(n, cap, terms, names=[f"y{i}" for i in range(n)]).pexp()
