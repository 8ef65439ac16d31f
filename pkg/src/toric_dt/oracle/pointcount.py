"""Point counts of representation varieties of truncated Jacobian algebras.

For a quiver with cut (Q, C) and a dimension vector alpha, we count tuples of
matrices over F_p, one per arrow of Q_C = Q minus C, on which the relation
of every cut arrow vanishes.

Two modes are available.  ``brute`` enumerates every tuple.  ``fibered``
splits the free arrows into a set S that occurs at most once in each relation
monomial and the rest.  The rest is enumerated; for each choice the
relations are affine-linear in the entries of S, and the fibre is counted as
``p**(dim - rank)`` by Gaussian elimination mod p, vectorized over batches.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from ..quiver import Arrow, QuiverWithCut

__all__ = [
    "RepCountResult",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "count_representations",
    "plan_count",
    "budget_from_env",
]

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "TORIC_DT_BUDGET"


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return default
    return int(float(raw))


class BudgetExceeded(RuntimeError):
    def __init__(self, size: int, budget: int):
        super().__init__(f"search space of {size} tuples exceeds the budget of {budget}")
        self.size = size
        self.budget = budget


@dataclass(frozen=True)
class RepCountResult:
    alpha: tuple[int, ...]
    prime: int
    count: int
    mode: str
    enumerated: int


@dataclass(frozen=True)
class _Plan:
    """Picklable description of the counting problem."""

    p: int
    shapes: tuple[tuple[int, int], ...]  # (rows, cols) per free arrow
    solved: tuple[bool, ...]  # arrow belongs to S
    enum_offsets: tuple[int, ...]  # offset into the enumerated vector (or -1)
    solve_offsets: tuple[int, ...]  # offset into the unknown vector (or -1)
    n_enum: int
    n_solve: int
    # relations: (rows, cols, [(sign, [free arrow ids in composition order])])
    relations: tuple

    @property
    def size(self) -> int:
        return self.p**self.n_enum


def _choose_solved(free: Sequence[Arrow], monomials: list[tuple[Arrow, ...]],
                   sizes: dict[Arrow, int]) -> frozenset[Arrow]:
    """Largest-entry arrow set meeting every monomial at most once."""
    best: frozenset[Arrow] = frozenset()
    best_size = 0
    n = len(free)
    for r in range(1, n + 1):
        for combo in combinations(free, r):
            s = frozenset(combo)
            if all(sum(1 for a in mono if a in s) <= 1 for mono in monomials):
                size = sum(sizes[a] for a in s)
                if size > best_size:
                    best, best_size = s, size
    return best


def plan_count(Q: QuiverWithCut, alpha: Sequence[int], p: int, mode: str = "fibered",
               order: Sequence[Arrow] | None = None) -> _Plan:
    if Q.cut is None:
        raise ValueError("quiver needs a cut")
    if len(alpha) != Q.n:
        raise ValueError(f"dimension vector must have length {Q.n}")
    alpha = tuple(int(x) for x in alpha)
    free = list(order) if order is not None else list(Q.free_arrows)
    if set(free) != set(Q.free_arrows):
        raise ValueError("order must be a permutation of the free arrows")
    index = {a: i for i, a in enumerate(free)}
    shapes = []
    for a in free:
        s, t = a.endpoints(Q.n)
        shapes.append((alpha[t], alpha[s]))
    sizes = {a: r * c for a, (r, c) in zip(free, shapes)}

    relations = []
    monomials = []
    for c in sorted(Q.cut):
        s, t = c.endpoints(Q.n)
        # the relation of c : s -> t is a path t -> s
        rows, cols = alpha[s], alpha[t]
        if rows * cols == 0:
            continue
        monos = []
        for sign, path in Q.relations[c]:
            monos.append((sign, tuple(index[b] for b in path)))
            monomials.append(tuple(path))
        relations.append((rows, cols, tuple(monos)))

    if mode == "brute":
        solved_set: frozenset[Arrow] = frozenset()
    elif mode == "fibered":
        solved_set = _choose_solved(free, monomials, sizes)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    enum_offsets, solve_offsets = [], []
    n_enum = n_solve = 0
    for a, (r, c) in zip(free, shapes):
        if a in solved_set:
            enum_offsets.append(-1)
            solve_offsets.append(n_solve)
            n_solve += r * c
        else:
            enum_offsets.append(n_enum)
            solve_offsets.append(-1)
            n_enum += r * c
    return _Plan(
        p=p,
        shapes=tuple(shapes),
        solved=tuple(a in solved_set for a in free),
        enum_offsets=tuple(enum_offsets),
        solve_offsets=tuple(solve_offsets),
        n_enum=n_enum,
        n_solve=n_solve,
        relations=tuple(relations),
    )


def _decode(start: int, stop: int, n: int, p: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, n), dtype=np.int64)
    for j in range(n):
        out[:, j] = idx % p
        idx //= p
    return out


def _chain(mats: list[np.ndarray], batch: int, dim: int, p: int) -> np.ndarray:
    """Product of a list of batched matrices; identity of size dim if empty."""
    if not mats:
        return np.broadcast_to(np.eye(dim, dtype=np.int64), (batch, dim, dim))
    out = mats[0]
    for m in mats[1:]:
        out = np.matmul(out, m) % p
    return out


def _ranks_mod_p(A: np.ndarray, b: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Batched row reduction of [A | b] over F_p.

    Returns (rank of A, consistent flag) per batch element.
    """
    batch, nrows, ncols = A.shape
    M = np.concatenate([A, b[:, :, None]], axis=2) % p
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    rank = np.zeros(batch, dtype=np.int64)
    rows = np.arange(nrows)
    bidx = np.arange(batch)
    for col in range(ncols):
        cand = (M[:, :, col] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        hb = bidx[has]
        src = piv[has]
        dst = rank[has]
        # swap pivot row into position rank
        tmp = M[hb, src].copy()
        M[hb, src] = M[hb, dst]
        M[hb, dst] = tmp
        pivrow = M[hb, dst] * inv[M[hb, dst, col]][:, None] % p
        M[hb, dst] = pivrow
        factors = M[hb, :, col].copy()
        factors[np.arange(len(hb)), dst] = 0
        M[hb] = (M[hb] - factors[:, :, None] * pivrow[:, None, :]) % p
        rank[has] += 1
    below = rows[None, :] >= rank[:, None]
    consistent = ~((M[:, :, ncols] != 0) & below).any(axis=1)
    return rank, consistent


def _count_chunk(plan: _Plan, start: int, stop: int) -> int:
    p = plan.p
    batch = stop - start
    digits = _decode(start, stop, plan.n_enum, p)
    mats: dict[int, np.ndarray] = {}
    for i, (r, c) in enumerate(plan.shapes):
        if not plan.solved[i]:
            off = plan.enum_offsets[i]
            mats[i] = digits[:, off:off + r * c].reshape(batch, r, c)

    total_rows = sum(r * c for r, c, _ in plan.relations)
    A = np.zeros((batch, total_rows, plan.n_solve), dtype=np.int64)
    rhs = np.zeros((batch, total_rows), dtype=np.int64)
    row0 = 0
    for rows, cols, monos in plan.relations:
        block = slice(row0, row0 + rows * cols)
        for sign, path in monos:
            hit = [k for k, a in enumerate(path) if plan.solved[a]]
            if not hit:
                prod = _chain([mats[a] for a in path], batch, rows, p)
                rhs[:, block] -= sign * prod.reshape(batch, rows * cols)
                continue
            k = hit[0]
            x = path[k]
            xr, xc = plan.shapes[x]
            left = _chain([mats[a] for a in path[:k]], batch, rows, p)
            right = _chain([mats[a] for a in path[k + 1:]], batch, cols, p)
            # vec(P X Q)[i, j] = sum_{k, l} P[i, k] X[k, l] Q[l, j]
            coef = np.einsum("bik,blj->bijkl", left, right).reshape(batch, rows * cols, xr * xc)
            off = plan.solve_offsets[x]
            A[:, block, off:off + xr * xc] += sign * coef
        row0 += rows * cols
    A %= p
    rhs %= p
    if plan.n_solve == 0:
        ok = ~(rhs != 0).any(axis=1)
        return int(ok.sum())
    rank, consistent = _ranks_mod_p(A, rhs, p)
    counts = np.bincount(rank[consistent], minlength=plan.n_solve + 1)
    return sum(int(cnt) * p ** (plan.n_solve - r) for r, cnt in enumerate(counts) if cnt)


def _chunk_size(plan: _Plan) -> int:
    rows = max(1, sum(r * c for r, c, _ in plan.relations))
    per = rows * (plan.n_solve + 1) + plan.n_enum + 1
    return max(1, min(1 << 16, (1 << 23) // per))


def count_representations(Q: QuiverWithCut, alpha: Sequence[int], p: int, *,
                          mode: str = "fibered", budget: int | None = None,
                          workers: int | None = None, chunk: int | None = None,
                          order: Sequence[Arrow] | None = None) -> RepCountResult:
    """Number of F_p points of R(J_C, alpha)."""
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    budget = budget_from_env() if budget is None else budget
    plan = plan_count(Q, alpha, p, mode=mode, order=order)
    size = plan.size
    if size > budget:
        raise BudgetExceeded(size, budget)
    step = chunk or _chunk_size(plan)
    bounds = [(s, min(s + step, size)) for s in range(0, size, step)]
    if workers is None:
        workers = os.cpu_count() or 1
    if workers <= 1 or len(bounds) < 4:
        total = sum(_count_chunk(plan, s, e) for s, e in bounds)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_count_chunk, [plan] * len(bounds),
                                 [s for s, _ in bounds], [e for _, e in bounds]))
    return RepCountResult(tuple(int(x) for x in alpha), p, total, mode, size)
