"""Verification suites: each check returns plain records that the CLI prints as JSON lines."""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass
from typing import Any, Iterable, Sequence

from .motive import as_motive, eval_even, gl_order, vir_normalize
from .quiver import (
    SigmaPartition,
    build_cut,
    d_C,
    euler_form,
    flip,
    loop_set,
    special_cut,
    special_sigma,
)
from .roots import (
    StabilityParam,
    classify_root,
    enumerate_positive_roots,
    is_positive_root,
    simple_reflection,
    zeta_dt,
    zeta_pt,
)
from .series import (
    TruncatedSeries,
    dtpt_series,
    euler_specialize,
    quantum_exp_E,
    root_factor,
    universal_series,
    z_alpha,
    z_alpha_closed,
    z_zeta,
)

__all__ = [
    "CheckRecord",
    "all_passed",
    "cut_for",
    "theorem_A_coefficient",
    "verify_theorem_A",
    "verify_appendix",
    "verify_factorization",
    "verify_dtpt",
    "verify_qseries",
    "verify_reflection",
    "verify_z_alpha",
    "verify_wall_crossing",
    "verify_specialization",
    "verify_E_factorization",
]


@dataclass
class CheckRecord:
    check: str
    model: str
    status: str  # "pass", "fail" or "skipped"
    expected: Any = None
    actual: Any = None
    alpha: Any = None
    prime: int | None = None
    elapsed_ms: float = 0.0
    detail: str = ""

    def to_json(self) -> dict:
        out = asdict(self)
        for k in ("expected", "actual", "alpha"):
            if out[k] is not None and not isinstance(out[k], (int, float, str, list, bool)):
                out[k] = str(out[k])
        return out

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def all_passed(records: Iterable[CheckRecord]) -> bool:
    return all(r.ok for r in records)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = round((time.perf_counter() - self.t0) * 1000, 3)


def _model(sigma: SigmaPartition) -> str:
    return f"({sigma.toric.n0},{sigma.toric.n1}) sigma={sigma.bits}"


def _series_record(check: str, model: str, lhs: TruncatedSeries, rhs: TruncatedSeries,
                   ms: float) -> CheckRecord:
    if lhs == rhs:
        return CheckRecord(check, model, "pass", elapsed_ms=ms, detail=f"equal to degree {min(lhs.cap, rhs.cap)}")
    diff = lhs.first_difference(rhs)
    return CheckRecord(check, model, "fail", elapsed_ms=ms,
                       detail=f"first difference at {diff}")


# ---------------------------------------------------------------------------
# product formula against point counts


def cut_for(sigma: SigmaPartition, cut: str):
    if cut == "special" or (cut == "auto" and sigma == special_sigma(sigma.toric.n0, sigma.toric.n1)):
        return special_cut(sigma)
    return build_cut(sigma)


def theorem_A_coefficient(sigma: SigmaPartition, alpha: Sequence[int], Q, U: TruncatedSeries | None = None):
    """[GL_alpha] * (-v)^(-(chi + 2 d_C)) * A_U[alpha]; a function of L equal to the point count."""
    alpha = tuple(alpha)
    if U is None:
        U = universal_series(sigma, sum(alpha))
    shift = euler_form(Q, alpha, alpha) + 2 * d_C(Q, alpha)
    x = vir_normalize(U[alpha], shift)
    for a in alpha:
        x = x * as_motive(gl_order(a))
    return x


def verify_theorem_A(sigma: SigmaPartition, max_degree: int = 4, primes: Sequence[int] = (2, 3), *,
                     alphas: Iterable[Sequence[int]] | None = None, cut: str = "auto",
                     budget: int | None = None, workers: int | None = 1) -> list[CheckRecord]:
    from .oracle.pointcount import BudgetExceeded, count_representations

    Q = cut_for(sigma, cut)
    if alphas is None:
        alphas = [a for a in itertools.product(range(max_degree + 1), repeat=sigma.N)
                  if 0 < sum(a) <= max_degree]
    alphas = [tuple(int(x) for x in a) for a in alphas]
    top = max((sum(a) for a in alphas), default=0)
    U = universal_series(sigma, top)
    out = []
    for alpha in alphas:
        coeff = theorem_A_coefficient(sigma, alpha, Q, U)
        for p in primes:
            with _Timer() as t:
                expected = eval_even(coeff, p)
                try:
                    res = count_representations(Q, alpha, p, budget=budget, workers=workers)
                except BudgetExceeded as exc:
                    res = exc
            if isinstance(res, BudgetExceeded):
                out.append(CheckRecord("thm-a", _model(sigma), "skipped", str(expected), None,
                                       list(alpha), p, t.ms, str(res)))
                continue
            status = "pass" if expected == res.count else "fail"
            out.append(CheckRecord("thm-a", _model(sigma), status, str(expected), res.count,
                                   list(alpha), p, t.ms, f"enumerated {res.enumerated} ({res.mode})"))
    return out


# ---------------------------------------------------------------------------
# nilpotent stratification


def verify_appendix(models: Sequence[tuple[int, int]] = ((1, 1), (2, 1), (3, 1)),
                    max_boxes: int = 4, tuple_boxes: int = 3) -> list[CheckRecord]:
    """Block dimensions, the case table and the closed T - B, per model."""
    from .oracle import partitions as P

    out = []
    for n0, n1 in models:
        ctx = P.SpecialContext.of(n0, n1)
        model = _model(ctx.sigma)
        n = ctx.n
        pairs = [(pi, rho)
                 for i in range(1, max_boxes) for j in range(1, max_boxes - i + 1)
                 for pi in P.partitions_of(i) for rho in P.partitions_of(j)]
        diag = [(pi, pi) for k in range(1, max_boxes + 1) for pi in P.partitions_of(k)]
        blocks = bad_dims = bad_lemma = 0
        first = ""
        with _Timer() as t:
            for a, b, c, d in itertools.product(range(n), repeat=4):
                for pi, rho in (diag if (a, b) == (c, d) else pairs):
                    blocks += 1
                    T, B = P.linear_algebra_dims(ctx, a, b, c, d, pi, rho, max_boxes)
                    Tt = P.T_dim(ctx, a, b, c, d, pi, rho)
                    Bt = P.B_dim(ctx, a, b, c, d, pi, rho)
                    if (T, B) != (Tt, Bt):
                        bad_dims += 1
                        first = first or f"dims {(a, b, c, d)} {pi} {rho}: {(T, B)} vs {(Tt, Bt)}"
                    if T - B != P.lemma_dif(ctx, a, b, c, d, pi, rho):
                        bad_lemma += 1
                        first = first or f"case table {(a, b, c, d)} {pi} {rho}"
        out.append(CheckRecord("appendix-dims", model, "fail" if bad_dims else "pass", 0, bad_dims,
                               elapsed_ms=t.ms, detail=first or f"{blocks} blocks"))
        out.append(CheckRecord("appendix-case-table", model, "fail" if bad_lemma else "pass", 0,
                               bad_lemma, elapsed_ms=t.ms, detail=first or f"{blocks} blocks"))
        bad = 0
        first = ""
        count = 0
        with _Timer() as t:
            for tup in P.enumerate_tuples(ctx, tuple_boxes, by="boxes"):
                count += 1
                closed = P.T_minus_B(ctx, tup)
                lin = P.pairwise_T_minus_B(ctx, tup, "linear")
                tab = P.pairwise_T_minus_B(ctx, tup, "tables")
                if not (closed == lin == tab):
                    bad += 1
                    first = first or f"{tup.as_dict()}: closed {closed}, linear {lin}, tables {tab}"
        out.append(CheckRecord("appendix-difference", model, "fail" if bad else "pass", 0, bad,
                               elapsed_ms=t.ms, detail=first or f"{count} tuples"))
    return out


def verify_factorization(sigma: SigmaPartition, cap: int = 4) -> list[CheckRecord]:
    from .oracle import partitions as P

    ctx = P.SpecialContext.of(sigma)
    model = _model(sigma)
    out = []
    with _Timer() as t:
        U = universal_series(sigma, cap)
        N = P.n_sigma_closed(ctx, cap)
        rhs = P.i_sigma_at_cycle(ctx.n, cap) * N
    out.append(_series_record("factorization-I-N", model, U, rhs, t.ms))
    with _Timer() as t:
        R = P.root_product_reformulation(ctx, cap)
    out.append(_series_record("factorization-roots", model, U, R, t.ms))
    with _Timer() as t:
        Np = P.n_sigma_via_partitions(ctx, cap)
    out.append(_series_record("n-sigma-partitions", model, Np, N, t.ms))
    return out


# ---------------------------------------------------------------------------
# curve counting


def verify_dtpt(sigma: SigmaPartition, cap: int = 8) -> list[CheckRecord]:
    model = _model(sigma)
    out = []
    with _Timer() as t:
        dt = dtpt_series(sigma, "dt", cap)
        pt = dtpt_series(sigma, "pt", cap)
        zero = dtpt_series(sigma, "points", cap)
    out.append(_series_record("dt=points*pt", model, dt, zero * pt, t.ms))
    for which, ser in (("dt", dt), ("pt", pt)):
        with _Timer() as t:
            other = dtpt_series(sigma, which, cap, route="zeta")
        out.append(_series_record(f"{which}-routes", model, ser, other, t.ms))
    return out


def verify_z_alpha(sigma: SigmaPartition, max_alpha0: int = 3, cap: int = 8) -> list[CheckRecord]:
    """Ratio form of Z_alpha against the finite product, after y0 -> -y0."""
    n = sigma.N
    out = []
    for r in enumerate_positive_roots(sigma, cap):
        if r.coords[0] == 0 or r.coords[0] > max_alpha0:
            continue
        with _Timer() as t:
            ratio = z_alpha(r, r.kind, n, cap).substitute_scale(0, as_motive(-1))
            closed = z_alpha_closed(r, r.kind, n, cap)
        rec = _series_record("z-alpha", _model(sigma), ratio, closed, t.ms)
        rec.alpha = list(r.coords)
        out.append(rec)
        if rec.ok and not all(c.is_laurent_polynomial() for c in ratio.terms.values()):
            out.append(CheckRecord("z-alpha-polynomial", _model(sigma), "fail", alpha=list(r.coords)))
    return out


def _wall_parameters(sigma: SigmaPartition, root, cap: int):
    """Integer base orthogonal to ``root`` only, and eps with eps . root = 1."""
    n = sigma.N
    roots = [r.coords for r in enumerate_positive_roots(sigma, cap)]
    for base in itertools.product(range(-3, 4), repeat=n):
        if sum(b * a for b, a in zip(base, root)) != 0:
            continue
        if all(sum(b * a for b, a in zip(base, r)) != 0 for r in roots if r != tuple(root)):
            k = next(i for i, a in enumerate(root) if a)
            eps = [0] * n
            eps[k] = 1
            scale = root[k]
            return base, [e / scale for e in eps]
    return None


def verify_wall_crossing(sigma: SigmaPartition, cap: int = 6) -> list[CheckRecord]:
    """Crossing the wall of a single real root multiplies Z_zeta by that root's Z_alpha."""
    out = []
    n = sigma.N
    for r in enumerate_positive_roots(sigma, cap):
        if not r.is_real or r.coords[0] == 0:
            continue
        params = _wall_parameters(sigma, r.coords, cap)
        if params is None:
            continue
        base, eps = params
        with _Timer() as t:
            plus = z_zeta(sigma, StabilityParam(base, eps), cap)
            minus = z_zeta(sigma, StabilityParam(base, [-e for e in eps]), cap)
            rhs = plus * z_alpha(r, r.kind, n, cap)
        rec = _series_record("wall-crossing", _model(sigma), minus, rhs, t.ms)
        rec.alpha = list(r.coords)
        rec.detail += f"; base {list(base)}"
        out.append(rec)
    return out


def verify_specialization(n: int, cap: int = 6) -> list[CheckRecord]:
    """Z_0-dim at v = 1 against prod_n (1 - (-s)^n)^(-n N), in the s-degree."""
    sigma = special_sigma(n, 0)
    with _Timer() as t:
        lhs = euler_specialize(dtpt_series(sigma, "points", cap * n))
        s_only = {e[0]: c for e, c in lhs.items() if not any(e[1:])}
        single = TruncatedSeries(1, cap, {(k,): c for k, c in s_only.items()}, names=["s"])
        prod = TruncatedSeries.one(1, cap, names=["s"])
        for m in range(1, cap + 1):
            base = TruncatedSeries(1, cap, {(0,): as_motive(1), (m,): as_motive(-((-1) ** m))}, names=["s"])
            prod = prod * base ** (-m * n)
    return [_series_record("euler-specialization", f"N={n}", single, prod, t.ms)]


def verify_E_factorization(sigma: SigmaPartition, cap: int = 4) -> list[CheckRecord]:
    """A_U = E(y_k) * prod over the other roots, for each loopless k."""
    n = sigma.N
    out = []
    U = universal_series(sigma, cap)
    roots = enumerate_positive_roots(sigma, cap)
    for k in range(n):
        if k in loop_set(sigma):
            continue
        with _Timer() as t:
            e = tuple(1 if i == k else 0 for i in range(n))
            single = quantum_exp_E(cap)
            E = TruncatedSeries(n, cap, {tuple(d * x for x in e): c for (d,), c in single.items()})
            rest = TruncatedSeries.one(n, cap)
            for r in roots:
                if r.coords != e:
                    rest = rest * root_factor(r, r.kind, n, cap)
        rec = _series_record("E-factorization", _model(sigma), U, E * rest, t.ms)
        rec.alpha = list(e)
        out.append(rec)
    return out


# ---------------------------------------------------------------------------
# q-series and root system


def verify_qseries(cap: int = 8, n_values: Sequence[int] = (1, 2, 3), boxes: int = 4) -> list[CheckRecord]:
    from .oracle import partitions as P
    from .oracle.qseries import FACTOR_TYPES, check_factor
    from .motive import V, L

    out = []
    for kind in FACTOR_TYPES:
        for n in (n_values if kind == "imaginary" else n_values[:1]):
            with _Timer() as t:
                res = check_factor(kind, n, cap)
            out.append(CheckRecord("q-product", f"{kind} N={n}", "pass" if res.ok else "fail",
                                   elapsed_ms=t.ms,
                                   detail=f"J={res.J} stable={res.stable} mismatch={res.first_mismatch}"))
    coeff = quantum_exp_E(1).coeff((1,))
    expected = -V / (L - 1)
    out.append(CheckRecord("E-y1", "E(y)", "pass" if coeff == expected else "fail",
                           str(expected), str(coeff)))
    for name, lhs, rhs in (("f-series", P.f_series, P.f_closed), ("g-series", P.g_series, P.g_closed)):
        with _Timer() as t:
            a, b = lhs(boxes), rhs(boxes)
        out.append(_series_record(name, f"{boxes} boxes", a, b, t.ms))
    return out


def verify_reflection(models: Sequence[tuple[int, int]] = ((1, 1), (2, 1), (2, 2), (3, 1)),
                      degree: int = 6, zeta_degree: int = 8) -> list[CheckRecord]:
    from .quiver import all_sigmas

    out = []
    for n0, n1 in models:
        for sigma in all_sigmas(n0, n1):
            n = sigma.N
            model = _model(sigma)
            roots = enumerate_positive_roots(sigma, degree)
            real = [r for r in roots if r.is_real]
            problems = []
            with _Timer() as t:
                for k in range(n):
                    simple = tuple(1 if i == k else 0 for i in range(n))
                    for r in roots:
                        if simple_reflection(n, k, simple_reflection(n, k, r.coords)) != r.coords:
                            problems.append(f"involution k={k} {r.coords}")
                    # s_k permutes positive roots other than alpha_k
                    for r in real:
                        if r.coords == simple:
                            continue
                        image = simple_reflection(n, k, r.coords)
                        if not is_positive_root(image):
                            problems.append(f"bijection k={k} {r.coords}")
                    if k in loop_set(sigma):
                        continue
                    flipped = flip(sigma, k)
                    for r in real:
                        image = simple_reflection(n, k, r.coords)
                        if r.coords != simple and classify_root(flipped, image).kind != r.kind:
                            problems.append(f"parity k={k} {r.coords}")
            out.append(CheckRecord("reflection", model, "fail" if problems else "pass", 0, len(problems),
                                   elapsed_ms=t.ms, detail="; ".join(problems[:3]) or f"{len(roots)} roots"))
        toric_n = n0 + n1
        sigma = all_sigmas(n0, n1)[0]
        zroots = enumerate_positive_roots(sigma, zeta_degree)
        for name, z in (("zeta-dt", zeta_dt(toric_n)), ("zeta-pt", zeta_pt(toric_n))):
            ok = z.is_generic(zroots)
            out.append(CheckRecord("genericity", f"{name} N={toric_n}", "pass" if ok else "fail",
                                   detail=f"{len(zroots)} roots to degree {zeta_degree}"))
    return out
