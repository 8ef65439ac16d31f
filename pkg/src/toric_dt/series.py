"""Truncated multivariate power series with coefficients in Q(v).

Series are truncated by a weighted total degree: the monomial with exponent
vector ``e`` has degree ``sum(w_i * e_i)``.  In the y variables all weights
are 1; after the change to (s, T_1, ..., T_{N-1}) the variable s has weight
N so that the cap still counts y-degree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Mapping, Sequence

from .motive import (
    ONE,
    ZERO,
    MotiveRat,
    PoleError,
    adams,
    as_motive,
    eval_at,
    format_motive,
    gl_order,
    v_power,
)
from .quiver import SigmaPartition, loop_set
from .roots import (
    Root,
    RootKind,
    StabilityParam,
    enumerate_positive_roots,
)

__all__ = [
    "TruncatedSeries",
    "SeriesError",
    "root_coefficient",
    "root_factor",
    "universal_series",
    "quantum_exp_E",
    "z_alpha",
    "z_alpha_closed",
    "z_zeta",
    "to_s_t",
    "to_s_t_laurent",
    "z_interval",
    "z_imaginary",
    "dtpt_series",
    "euler_specialize",
    "mobius",
]


class SeriesError(ValueError):
    pass


Exponent = tuple[int, ...]


@lru_cache(maxsize=None)
def _monomials(weights: tuple[int, ...], cap: int) -> tuple[Exponent, ...]:
    """All exponent vectors of weighted degree <= cap, sorted by degree."""
    ranges = [range(cap // w + 1) for w in weights]
    out = [e for e in product(*ranges) if sum(w * x for w, x in zip(weights, e)) <= cap]
    out.sort(key=lambda e: (sum(w * x for w, x in zip(weights, e)), e))
    return tuple(out)


def mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


class TruncatedSeries:
    """Immutable truncated power series ``{exponent: MotiveRat}``."""

    __slots__ = ("nvars", "cap", "weights", "_terms", "names")

    def __init__(self, nvars: int, cap: int, terms: Mapping[Exponent, object] | None = None,
                 weights: Sequence[int] | None = None, names: Sequence[str] | None = None):
        if nvars < 1:
            raise SeriesError("need at least one variable")
        if cap < 0:
            raise SeriesError("degree cap must be non-negative")
        self.nvars = nvars
        self.cap = cap
        self.weights = tuple(weights) if weights is not None else (1,) * nvars
        if len(self.weights) != nvars or min(self.weights) < 1:
            raise SeriesError("weights must be positive, one per variable")
        self.names = tuple(names) if names is not None else tuple(f"y{i}" for i in range(nvars))
        clean: dict[Exponent, MotiveRat] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars or min(e) < 0:
                    raise SeriesError(f"bad exponent {e}")
                if self.deg(e) > cap:
                    continue
                c = as_motive(c)
                if not c.is_zero():
                    clean[e] = c
        self._terms = clean

    # -- construction ----------------------------------------------------
    def _like(self, terms) -> "TruncatedSeries":
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.nvars, out.cap, out.weights, out.names = self.nvars, self.cap, self.weights, self.names
        out._terms = {e: c for e, c in terms.items() if not c.is_zero()}
        return out

    @classmethod
    def one(cls, nvars: int, cap: int, **kw) -> "TruncatedSeries":
        return cls(nvars, cap, {(0,) * nvars: ONE}, **kw)

    @classmethod
    def monomial(cls, nvars: int, cap: int, exponent: Sequence[int], coeff=1,
                 **kw) -> "TruncatedSeries":
        return cls(nvars, cap, {tuple(exponent): coeff}, **kw)

    def zero_like(self) -> "TruncatedSeries":
        return self._like({})

    def one_like(self) -> "TruncatedSeries":
        return self._like({(0,) * self.nvars: ONE})

    # -- access ----------------------------------------------------------
    def deg(self, e: Exponent) -> int:
        return sum(w * x for w, x in zip(self.weights, e))

    @property
    def terms(self) -> dict[Exponent, MotiveRat]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __getitem__(self, e) -> MotiveRat:
        if isinstance(e, int):
            e = (e,)
        return self._terms.get(tuple(e), ZERO)

    def coeff(self, e) -> MotiveRat:
        return self[e]

    def constant_term(self) -> MotiveRat:
        return self[(0,) * self.nvars]

    def __len__(self):
        return len(self._terms)

    def _check_compatible(self, other: "TruncatedSeries"):
        if self.nvars != other.nvars or self.weights != other.weights:
            raise SeriesError("series live in different rings")

    def truncate(self, cap: int) -> "TruncatedSeries":
        cap = min(cap, self.cap)
        out = self._like({e: c for e, c in self._terms.items() if self.deg(e) <= cap})
        out.cap = cap
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.nvars != other.nvars or self.weights != other.weights:
            return False
        cap = min(self.cap, other.cap)
        a = {e: c for e, c in self._terms.items() if self.deg(e) <= cap}
        b = {e: c for e, c in other._terms.items() if other.deg(e) <= cap}
        return a == b

    __hash__ = None

    def first_difference(self, other: "TruncatedSeries"):
        """Lowest exponent where the two series differ (common cap), or None."""
        self._check_compatible(other)
        cap = min(self.cap, other.cap)
        for e in _monomials(self.weights, cap):
            if self[e] != other[e]:
                return e
        return None

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self.one_like().scale(as_motive(other))
        self._check_compatible(other)
        cap = min(self.cap, other.cap)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out[e] + c if e in out else c
        res = self._like(out).truncate(cap)
        return res

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            other = self.one_like().scale(as_motive(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        c = as_motive(c)
        return self._like({e: x * c for e, x in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check_compatible(other)
        cap = min(self.cap, other.cap)
        out: dict[Exponent, MotiveRat] = {}
        right = sorted(other._terms.items(), key=lambda t: other.deg(t[0]))
        for e1, c1 in self._terms.items():
            d1 = self.deg(e1)
            if d1 > cap:
                continue
            for e2, c2 in right:
                if d1 + other.deg(e2) > cap:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        res = self._like(out)
        res.cap = cap
        return res

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.one_like(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        c0 = self.constant_term()
        if c0.is_zero():
            raise SeriesError("series with zero constant term is not invertible")
        inv0 = c0.inverse()
        rest = [(e, c) for e, c in self._terms.items() if any(e)]
        out: dict[Exponent, MotiveRat] = {}
        for m in _monomials(self.weights, self.cap):
            if not any(m):
                out[m] = inv0
                continue
            acc = ZERO
            for e, c in rest:
                k = tuple(a - b for a, b in zip(m, e))
                if min(k) < 0:
                    continue
                h = out.get(k)
                if h is not None:
                    acc = acc + c * h
            if not acc.is_zero():
                out[m] = -(acc * inv0)
        return self._like(out)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self.scale(as_motive(other).inverse())

    def exp(self) -> "TruncatedSeries":
        """exp(F) for F with zero constant term, via m*E_m = sum k*F_k*E_{m-k}."""
        if not self.constant_term().is_zero():
            raise SeriesError("exp needs a zero constant term")
        F = [(e, c, self.deg(e)) for e, c in self._terms.items()]
        out: dict[Exponent, MotiveRat] = {}
        for m in _monomials(self.weights, self.cap):
            if not any(m):
                out[m] = ONE
                continue
            acc = ZERO
            for e, c, d in F:
                k = tuple(a - b for a, b in zip(m, e))
                if min(k) < 0:
                    continue
                h = out.get(k)
                if h is not None:
                    acc = acc + c * h * d
            if not acc.is_zero():
                out[m] = acc / self.deg(m)
        return self._like(out)

    def log(self) -> "TruncatedSeries":
        """log(F) for F with constant term 1."""
        if self.constant_term() != ONE:
            raise SeriesError("log needs constant term 1")
        G: dict[Exponent, MotiveRat] = {}
        Fterms = self._terms
        for m in _monomials(self.weights, self.cap):
            if not any(m):
                continue
            dm = self.deg(m)
            acc = Fterms.get(m, ZERO) * dm
            for k, g in G.items():
                r = tuple(a - b for a, b in zip(m, k))
                if min(r) < 0 or not any(r):
                    continue
                f = Fterms.get(r)
                if f is not None:
                    acc = acc - g * f * self.deg(k)
            if not acc.is_zero():
                G[m] = acc / dm
        return self._like(G)

    def adams(self, n: int) -> "TruncatedSeries":
        """psi_n: v -> v^n on coefficients and y -> y^n on monomials."""
        out = {}
        for e, c in self._terms.items():
            ne = tuple(n * x for x in e)
            if self.deg(ne) <= self.cap:
                out[ne] = adams(c, n)
        return self._like(out)

    def pexp(self) -> "TruncatedSeries":
        """Plethystic exponential exp(sum_n psi_n(F)/n)."""
        if not self.constant_term().is_zero():
            raise SeriesError("plethystic Exp needs a zero constant term")
        if not self._terms:
            return self.one_like()
        lowest = min(self.deg(e) for e in self._terms)
        acc = self.zero_like()
        n = 1
        while n * lowest <= self.cap:
            acc = acc + self.adams(n).scale(Fraction(1, n))
            n += 1
        return acc.exp()

    def plog(self) -> "TruncatedSeries":
        """Inverse of pexp: sum_n mu(n)/n psi_n(log F)."""
        G = self.log()
        if not G._terms:
            return G
        lowest = min(G.deg(e) for e in G._terms)
        acc = self.zero_like()
        n = 1
        while n * lowest <= self.cap:
            mu = mobius(n)
            if mu:
                acc = acc + G.adams(n).scale(Fraction(mu, n))
            n += 1
        return acc

    def substitute_scale(self, var: int, factor) -> "TruncatedSeries":
        """Replace y_var by factor * y_var."""
        factor = as_motive(factor)
        powers = {0: ONE}
        out = {}
        for e, c in self._terms.items():
            k = e[var]
            if k not in powers:
                powers[k] = factor**k
            out[e] = c * powers[k]
        return self._like(out)

    def map_coefficients(self, fn: Callable[[MotiveRat], object]) -> "TruncatedSeries":
        return self._like({e: as_motive(fn(c)) for e, c in self._terms.items()})

    def embed(self, nvars: int, positions: Sequence[int], weights=None,
              names=None) -> "TruncatedSeries":
        """Re-index variables: old variable i becomes new variable positions[i]."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for i, x in enumerate(e):
                ne[positions[i]] += x
            out[tuple(ne)] = c
        return TruncatedSeries(nvars, self.cap, out, weights=weights, names=names)

    # -- output ----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: (self.deg(t[0]), t[0]))

    def to_json(self) -> dict:
        return {
            "vars": list(self.names),
            "weights": list(self.weights),
            "cap": self.cap,
            "terms": [{"exp": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TruncatedSeries":
        names = data["vars"]
        terms = {tuple(t["exp"]): MotiveRat.from_json(t["coeff"]) for t in data["terms"]}
        return cls(len(names), int(data["cap"]), terms,
                   weights=data.get("weights"), names=names)

    def monomial_str(self, e: Exponent) -> str:
        parts = []
        for name, x in zip(self.names, e):
            if x == 1:
                parts.append(name)
            elif x:
                parts.append(f"{name}^{x}")
        return "*".join(parts) if parts else "1"

    def pretty(self, style: str = "L") -> str:
        if not self._terms:
            return "0"
        lines = []
        for e, c in self.sorted_terms():
            lines.append(f"{self.monomial_str(e)}: {format_motive(c, style)}")
        return "\n".join(lines)

    def __repr__(self):
        return f"TruncatedSeries(nvars={self.nvars}, cap={self.cap}, terms={len(self._terms)})"


# ---------------------------------------------------------------------------
# root factors and the universal series

_V = v_power(1)
_L = v_power(2)


def root_coefficient(kind: RootKind, n: int) -> MotiveRat:
    """The Exp argument attached to a root of the given kind."""
    if kind is RootKind.REAL_ODD:
        return -_V / (_L - 1)
    if kind is RootKind.REAL_EVEN:
        return _L / (_L - 1)
    return _L * (_L + (n - 1)) / (_L - 1)


def _root_coords(alpha) -> tuple[int, ...]:
    return alpha.coords if isinstance(alpha, Root) else tuple(int(x) for x in alpha)


def root_factor(alpha, kind: RootKind, n: int, cap: int) -> TruncatedSeries:
    """A^alpha = Exp(c * y^alpha) in n variables, truncated at ``cap``."""
    coords = _root_coords(alpha)
    if not any(coords):
        raise SeriesError("root factor needs a nonzero root")
    arg = TruncatedSeries.monomial(n, cap, coords, root_coefficient(kind, n))
    return arg.pexp()


def _y_names(n: int) -> list[str]:
    return [f"y{i}" for i in range(n)]


def universal_series(sigma: SigmaPartition, cap: int) -> TruncatedSeries:
    """Product of A^alpha over positive roots of degree <= cap."""
    n = sigma.N
    roots = enumerate_positive_roots(sigma, cap)
    arg = TruncatedSeries(
        n, cap, {r.coords: root_coefficient(r.kind, n) for r in roots}, names=_y_names(n)
    )
    # Exp turns the sum over roots into the product of the factors
    return arg.pexp()


def quantum_exp_E(cap: int) -> TruncatedSeries:
    """E(y) = sum_n (-v)^(n^2) / |GL_n| y^n."""
    terms = {}
    for k in range(cap + 1):
        sign = -1 if (k * k) % 2 else 1
        terms[(k,)] = v_power(k * k) * sign / as_motive(gl_order(k))
    return TruncatedSeries(1, cap, terms, names=["y"])


# ---------------------------------------------------------------------------
# framed series


def z_alpha(alpha, kind: RootKind, n: int, cap: int) -> TruncatedSeries:
    """A^alpha(-v y0, ...) / A^alpha(-v^-1 y0, ...)."""
    coords = _root_coords(alpha)
    if coords[0] == 0:
        return TruncatedSeries.one(n, cap, names=_y_names(n))
    A = root_factor(coords, kind, n, cap)
    num = A.substitute_scale(0, -_V)
    den = A.substitute_scale(0, -_V.inverse())
    out = num * den.inverse()
    return TruncatedSeries(n, cap, out.terms, names=_y_names(n))


def _binomial_power(n: int, cap: int, coords, coeff: MotiveRat, power: int) -> TruncatedSeries:
    """(1 - coeff * y^coords)^power, truncated."""
    base = TruncatedSeries(n, cap, {(0,) * n: ONE, tuple(coords): -coeff})
    return base**power


def z_alpha_closed(alpha, kind: RootKind, n: int, cap: int) -> TruncatedSeries:
    """The finite product giving Z_alpha(-y0, y1, ...).

    Each factor is ``1 - v^e y^alpha`` with e read off from the closed form;
    in the imaginary case the second factor uses the product index.
    """
    coords = _root_coords(alpha)
    m = coords[0]
    out = TruncatedSeries.one(n, cap, names=_y_names(n))
    for i in range(m):
        if kind is RootKind.REAL_ODD:
            out = out * _binomial_power(n, cap, coords, v_power(-m + 1 + 2 * i), 1)
        elif kind is RootKind.REAL_EVEN:
            out = out * _binomial_power(n, cap, coords, v_power(-m + 2 + 2 * i), -1)
        else:
            out = out * _binomial_power(n, cap, coords, v_power(-m + 2 + 2 * i), 1 - n)
            out = out * _binomial_power(n, cap, coords, v_power(-m + 4 + 2 * i), -1)
    return out


def z_zeta(sigma: SigmaPartition, zeta: StabilityParam, cap: int) -> TruncatedSeries:
    """Product of Z_alpha over positive roots alpha with zeta . alpha < 0."""
    n = sigma.N
    roots = enumerate_positive_roots(sigma, cap)
    zeta.check_generic(roots)
    out = TruncatedSeries.one(n, cap, names=_y_names(n))
    for r in roots:
        if r.coords[0] and zeta.is_negative(r.coords):
            out = out * z_alpha(r, r.kind, n, cap)
    return out


# ---------------------------------------------------------------------------
# curve-counting variables


def _st_names(n: int) -> list[str]:
    return ["s"] + [f"T{i}" for i in range(1, n)]


def _st_weights(n: int) -> tuple[int, ...]:
    return (n,) + (1,) * (n - 1)


def to_s_t_laurent(series: TruncatedSeries) -> dict[Exponent, MotiveRat]:
    """y^alpha -> s^alpha_0 * prod T_i^(alpha_i - alpha_0), allowing negative T powers."""
    out = {}
    for e, c in series.items():
        m = e[0]
        out[(m,) + tuple(x - m for x in e[1:])] = c
    return out


def to_s_t(series: TruncatedSeries) -> TruncatedSeries:
    """Rewrite a y-series in s = y0...y_{N-1}, T_i = y_i."""
    n = series.nvars
    terms = to_s_t_laurent(series)
    for e in terms:
        if min(e) < 0:
            raise SeriesError(f"monomial {e} has a negative T exponent")
    return TruncatedSeries(n, series.cap, terms, weights=_st_weights(n), names=_st_names(n))


def _c_value(sigma: SigmaPartition, a: int, b: int) -> int:
    loops = loop_set(sigma)
    return sum(1 for i in range(a, b + 1) if i not in loops)


def z_interval(sigma: SigmaPartition, a: int, b: int, cap: int) -> TruncatedSeries:
    """Z_[a,b](s, T_[a,b]) as an (s, T) series."""
    n = sigma.N
    if not 1 <= a <= b <= n - 1:
        raise SeriesError(f"bad interval [{a},{b}]")
    odd = _c_value(sigma, a, b) % 2 == 1
    out = TruncatedSeries.one(n, cap, weights=_st_weights(n), names=_st_names(n))
    width = b - a + 1
    k = 1
    while k * n + width <= cap:
        e = [k] + [1 if a <= i <= b else 0 for i in range(1, n)]
        sign = -1 if k % 2 else 1
        for i in range(k):
            if odd:
                c = v_power(-k + 1 + 2 * i) * sign
                f = TruncatedSeries(n, cap, {(0,) * n: ONE, tuple(e): -c},
                                    weights=_st_weights(n), names=_st_names(n))
            else:
                c = v_power(-k + 2 + 2 * i) * sign
                f = TruncatedSeries(n, cap, {(0,) * n: ONE, tuple(e): -c},
                                    weights=_st_weights(n), names=_st_names(n)).inverse()
            out = out * f
        k += 1
    return out


def z_imaginary(n: int, cap: int) -> TruncatedSeries:
    """Z_im(s) as an (s, T) series."""
    weights, names = _st_weights(n), _st_names(n)
    out = TruncatedSeries.one(n, cap, weights=weights, names=names)
    k = 1
    while k * n <= cap:
        e = (k,) + (0,) * (n - 1)
        sign = -1 if k % 2 else 1
        for i in range(k):
            f1 = TruncatedSeries(n, cap, {(0,) * n: ONE, e: -(v_power(-k + 2 + 2 * i) * sign)},
                                 weights=weights, names=names)
            f2 = TruncatedSeries(n, cap, {(0,) * n: ONE, e: -(v_power(-k + 4 + 2 * i) * sign)},
                                 weights=weights, names=names)
            out = out * f1 ** (1 - n) * f2.inverse()
        k += 1
    return out


def dtpt_series(sigma: SigmaPartition, which: str, cap: int,
                route: str = "corollary") -> TruncatedSeries:
    """Z_DT, Z_PT or Z_0-dim in the variables (s, T_1, ..., T_{N-1}).

    ``route="corollary"`` multiplies the interval and imaginary products;
    ``route="zeta"`` takes the framed series in the DT or PT chamber and
    changes variables.
    """
    from .roots import zeta_dt, zeta_pt

    which = which.lower()
    if which not in ("dt", "pt", "points", "zerodim", "0-dim"):
        raise SeriesError(f"unknown series {which!r}")
    n = sigma.N
    if route == "zeta":
        if which == "dt":
            return to_s_t(z_zeta(sigma, zeta_dt(n), cap))
        if which == "pt":
            return to_s_t(z_zeta(sigma, zeta_pt(n), cap))
        # the imaginary roots are exactly the ones separating the two chambers
        return to_s_t(z_zeta(sigma, zeta_dt(n), cap)) * to_s_t(z_zeta(sigma, zeta_pt(n), cap)).inverse()
    if route != "corollary":
        raise SeriesError(f"unknown route {route!r}")
    if which in ("points", "zerodim", "0-dim"):
        return z_imaginary(n, cap)
    out = TruncatedSeries.one(n, cap, weights=_st_weights(n), names=_st_names(n))
    for a in range(1, n):
        for b in range(a, n):
            out = out * z_interval(sigma, a, b, cap)
    if which == "dt":
        out = z_imaginary(n, cap) * out
    return out


def euler_specialize(series: TruncatedSeries) -> TruncatedSeries:
    """Substitute v = 1 in every coefficient (result has constant coefficients)."""
    out = {}
    for e, c in series.items():
        try:
            out[e] = as_motive(eval_at(c, 1))
        except PoleError as exc:
            raise PoleError(f"coefficient of {series.monomial_str(e)} has a pole at v=1") from exc
    return series._like(out)
