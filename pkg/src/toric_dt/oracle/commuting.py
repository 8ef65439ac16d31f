"""Brute-force counts of commuting pairs (A, B) with B invertible."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..motive import eval_even
from .pointcount import BudgetExceeded, _decode, budget_from_env

__all__ = ["count_commuting_invertible", "gl_count", "commuting_ratio", "i_sigma_check"]


def gl_count(a: int, p: int) -> int:
    out = 1
    for i in range(a):
        out *= p**a - p**i
    return out


def _det_nonzero_mod_p(M: np.ndarray, p: int) -> np.ndarray:
    """Batched invertibility test over F_p by row reduction."""
    M = M.copy() % p
    batch, n, _ = M.shape
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    ok = np.ones(batch, dtype=bool)
    b = np.arange(batch)
    for col in range(n):
        cand = M[:, col:, col] != 0
        has = cand.any(axis=1)
        ok &= has
        piv = col + np.argmax(cand, axis=1)
        tmp = M[b, piv].copy()
        M[b, piv] = M[b, col]
        M[b, col] = tmp
        pivrow = M[:, col] * inv[M[:, col, col]][:, None] % p
        factors = M[:, :, col].copy()
        factors[:, col] = 0
        M = (M - factors[:, :, None] * pivrow[:, None, :]) % p
        M[:, col] = pivrow
    return ok


def count_commuting_invertible(a: int, p: int, budget: int | None = None) -> int:
    """|{(A, B) in gl_a(F_p) x GL_a(F_p) : AB = BA}|."""
    if a == 0:
        return 1
    budget = budget_from_env() if budget is None else budget
    size = p ** (2 * a * a)
    if size > budget:
        raise BudgetExceeded(size, budget)
    mats = _decode(0, p ** (a * a), a * a, p).reshape(-1, a, a)
    Bs = mats[_det_nonzero_mod_p(mats, p)]
    total = 0
    for A in mats:
        comm = (np.matmul(A, Bs) - np.matmul(Bs, A)) % p
        total += int((~comm.reshape(len(Bs), -1).any(axis=1)).sum())
    return total


def commuting_ratio(a: int, p: int) -> Fraction:
    return Fraction(count_commuting_invertible(a, p), gl_count(a, p))


def i_sigma_check(a: int, p: int) -> tuple[Fraction, Fraction]:
    """(series coefficient at L = p, enumerated ratio) for y^a of Exp(L y / (1 - y))."""
    from .partitions import i_sigma_closed

    coeff = i_sigma_closed(a).coeff((a,))
    return eval_even(coeff, p), commuting_ratio(a, p)

