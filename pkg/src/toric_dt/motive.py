"""Exact coefficient ring: rational functions in v, where v stands for L^(1/2).

Every motivic class the engine produces is a ratio of integer Laurent
polynomials in v.  ``MotiveRat`` keeps such a ratio in a unique canonical
form so that equality is structural.  Polynomial gcds are delegated to FLINT.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

import flint

__all__ = [
    "VPolynomial",
    "MotiveRat",
    "NotAFunctionOfL",
    "PoleError",
    "V",
    "L",
    "ONE",
    "ZERO",
    "adams",
    "gl_order",
    "vir_normalize",
    "eval_even",
    "eval_at",
    "laurent_expand",
    "format_motive",
    "as_motive",
    "v_power",
    "motive_sum",
]


class NotAFunctionOfL(ValueError):
    """Raised when an odd power of v survives canonicalization."""


class PoleError(ZeroDivisionError):
    """Raised when a denominator vanishes at the evaluation point."""


def _split_valuation(poly: flint.fmpz_poly) -> tuple[int, flint.fmpz_poly]:
    """Write ``poly = v**k * rest`` with ``rest(0) != 0``."""
    coeffs = poly.coeffs()
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    if k == 0:
        return 0, poly
    return k, flint.fmpz_poly(coeffs[k:])


class VPolynomial:
    """Integer Laurent polynomial in v, stored as ``{exponent: coefficient}``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = int(c)
                if c:
                    clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "VPolynomial":
        return cls({exponent: coeff})

    @classmethod
    def _from_flint(cls, shift: int, poly: flint.fmpz_poly) -> "VPolynomial":
        return cls({shift + i: int(c) for i, c in enumerate(poly.coeffs()) if c})

    def _to_flint(self) -> tuple[int, flint.fmpz_poly]:
        if not self._terms:
            return 0, flint.fmpz_poly([])
        lo = min(self._terms)
        hi = max(self._terms)
        coeffs = [0] * (hi - lo + 1)
        for e, c in self._terms.items():
            coeffs[e - lo] = c
        return lo, flint.fmpz_poly(coeffs)

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("valuation of the zero polynomial")
        return min(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = VPolynomial({0: other})
        if not isinstance(other, VPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = VPolynomial({0: other})
        if not isinstance(other, VPolynomial):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return VPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return VPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = VPolynomial({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return VPolynomial({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, VPolynomial):
            return NotImplemented
        if not self._terms or not other._terms:
            return VPolynomial()
        s1, p1 = self._to_flint()
        s2, p2 = other._to_flint()
        return VPolynomial._from_flint(s1 + s2, p1 * p2)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial; use MotiveRat")
        s, p = self._to_flint()
        return VPolynomial._from_flint(s * n, p**n)

    def __call__(self, x):
        x = Fraction(x)
        return sum((Fraction(c) * x**e for e, c in self._terms.items()), Fraction(0))

    def adams(self, n: int) -> "VPolynomial":
        return VPolynomial({e * n: c for e, c in self._terms.items()})

    def __repr__(self):
        return f"VPolynomial({self._terms!r})"

    def __str__(self):
        return _format_laurent(self._terms, "v")


Coercible = Union[int, Fraction, VPolynomial, "MotiveRat"]


class MotiveRat:
    """Canonical ratio ``v**val * num / den`` of integer polynomials in v.

    Canonical form: ``num`` and ``den`` are coprime in Z[v], neither is
    divisible by v, ``den`` has positive leading coefficient, and zero is
    ``(0, 0, 1)``.  Instances are immutable.
    """

    __slots__ = ("_val", "_num", "_den", "_hash")

    def __init__(self, numerator: Coercible = 0, denominator: Coercible = 1):
        n = MotiveRat._coerce(numerator)
        d = MotiveRat._coerce(denominator)
        if d._num.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._set(n._val - d._val, n._num * d._den, n._den * d._num)

    @staticmethod
    def _coerce(x: Coercible) -> "MotiveRat":
        if isinstance(x, MotiveRat):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return MotiveRat._raw(0, flint.fmpz_poly([x]), flint.fmpz_poly([1]))
        if isinstance(x, Fraction):
            return MotiveRat._make(
                0, flint.fmpz_poly([x.numerator]), flint.fmpz_poly([x.denominator])
            )
        if isinstance(x, VPolynomial):
            s, p = x._to_flint()
            return MotiveRat._make(s, p, flint.fmpz_poly([1]))
        raise TypeError(f"cannot interpret {type(x).__name__} as a motive")

    @classmethod
    def _raw(cls, val, num, den) -> "MotiveRat":
        obj = cls.__new__(cls)
        obj._val, obj._num, obj._den, obj._hash = val, num, den, None
        return obj

    @classmethod
    def _make(cls, val, num, den) -> "MotiveRat":
        obj = cls.__new__(cls)
        obj._set(val, num, den)
        return obj

    def _set(self, val, num, den):
        self._hash = None
        if num.is_zero():
            self._val, self._num, self._den = 0, flint.fmpz_poly([]), flint.fmpz_poly([1])
            return
        kn, num = _split_valuation(num)
        kd, den = _split_valuation(den)
        val += kn - kd
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num, den = -num, -den
        self._val, self._num, self._den = val, num, den

    # -- views -----------------------------------------------------------
    @property
    def numerator(self) -> VPolynomial:
        return VPolynomial._from_flint(self._val, self._num)

    @property
    def denominator(self) -> VPolynomial:
        return VPolynomial._from_flint(0, self._den)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_laurent_polynomial(self) -> bool:
        return self._den.is_one()

    def is_constant(self) -> bool:
        return self._val == 0 and self._num.degree() <= 0 and self._den.degree() == 0

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            o = MotiveRat._coerce(other)
        except TypeError:
            return NotImplemented
        if o._num.is_zero():
            return self
        if self._num.is_zero():
            return o
        m = min(self._val, o._val)
        a = self._num.left_shift(self._val - m) if self._val > m else self._num
        c = o._num.left_shift(o._val - m) if o._val > m else o._num
        if self._den == o._den:
            return MotiveRat._make(m, a + c, self._den)
        g = self._den.gcd(o._den)
        if g.is_one():
            return MotiveRat._make(m, a * o._den + c * self._den, self._den * o._den)
        b1 = self._den // g
        d1 = o._den // g
        return MotiveRat._make(m, a * d1 + c * b1, b1 * o._den)

    __radd__ = __add__

    def __neg__(self):
        return MotiveRat._raw(self._val, -self._num, self._den)

    def __sub__(self, other):
        try:
            o = MotiveRat._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return ZERO
            num = self._num * other
            if self._den.is_one():
                return MotiveRat._raw(self._val, num, self._den)
            return MotiveRat._make(self._val, num, self._den)
        try:
            o = MotiveRat._coerce(other)
        except TypeError:
            return NotImplemented
        if self._num.is_zero() or o._num.is_zero():
            return ZERO
        a, b, c, d = self._num, self._den, o._num, o._den
        if b.is_one() and d.is_one():
            return MotiveRat._raw(self._val + o._val, a * c, b)
        g1 = a.gcd(d)
        if not g1.is_one():
            a, d = a // g1, d // g1
        g2 = c.gcd(b)
        if not g2.is_one():
            c, b = c // g2, b // g2
        num, den = a * c, b * d
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return MotiveRat._raw(self._val + o._val, num, den)

    __rmul__ = __mul__

    def inverse(self) -> "MotiveRat":
        if self._num.is_zero():
            raise ZeroDivisionError("inverse of zero motive")
        num, den = self._den, self._num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return MotiveRat._raw(-self._val, num, den)

    def __truediv__(self, other):
        try:
            o = MotiveRat._coerce(other)
        except TypeError:
            return NotImplemented
        if o._num.is_zero():
            raise ZeroDivisionError("division by zero motive")
        return self * o.inverse()

    def __rtruediv__(self, other):
        return MotiveRat._coerce(other) / self

    def __pow__(self, n: int):
        if n == 0:
            return ONE
        if n < 0:
            return self.inverse() ** (-n)
        return MotiveRat._raw(self._val * n, self._num**n, self._den**n)

    def __eq__(self, other):
        try:
            o = MotiveRat._coerce(other)
        except TypeError:
            return NotImplemented
        return self._val == o._val and self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self._val, tuple(int(c) for c in self._num.coeffs()),
                 tuple(int(c) for c in self._den.coeffs()))
            )
        return self._hash

    def __bool__(self):
        return not self._num.is_zero()

    def __repr__(self):
        return f"MotiveRat({self})"

    def __str__(self):
        return format_motive(self, "v")

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        def pairs(poly: VPolynomial):
            return [[e, str(c)] for e, c in poly.items()]

        return {"num": pairs(self.numerator), "den": pairs(self.denominator)}

    @classmethod
    def from_json(cls, data: Mapping) -> "MotiveRat":
        num = VPolynomial({int(e): int(c) for e, c in data["num"]})
        den = VPolynomial({int(e): int(c) for e, c in data["den"]})
        return cls(num, den)


V = MotiveRat(VPolynomial({1: 1}))
L = MotiveRat(VPolynomial({2: 1}))
ONE = MotiveRat(1)
ZERO = MotiveRat(0)


def v_power(k: int) -> MotiveRat:
    """``v**k`` for any integer k."""
    return MotiveRat._raw(k, flint.fmpz_poly([1]), flint.fmpz_poly([1]))


def adams(f: MotiveRat, n: int) -> MotiveRat:
    """The n-th Adams operation, ``v -> v**n``."""
    if n < 1:
        raise ValueError("Adams operations are indexed by positive integers")
    f = MotiveRat._coerce(f)
    if n == 1 or f._num.is_zero():
        return f
    # inflation preserves coprimality, leading signs and nonzero constant terms
    return MotiveRat._raw(f._val * n, f._num.inflate(n), f._den.inflate(n))


@lru_cache(maxsize=None)
def gl_order(n: int) -> VPolynomial:
    """Class of GL_n: ``prod_{i<n} (L**n - L**i)`` with L = v**2."""
    if n < 0:
        raise ValueError("negative matrix size")
    out = VPolynomial({0: 1})
    for i in range(n):
        out = out * VPolynomial({2 * n: 1, 2 * i: -1})
    return out


def vir_normalize(x: Coercible, d: int) -> MotiveRat:
    """``(-v)**(-d) * x``."""
    x = MotiveRat._coerce(x)
    sign = -1 if d % 2 else 1
    return x * v_power(-d) * sign


def _even_only(poly: flint.fmpz_poly, shift: int) -> bool:
    if shift % 2:
        return poly.is_zero()
    return all(c == 0 for c in poly.coeffs()[1::2])


def eval_even(f: Coercible, q: int) -> Fraction:
    """Evaluate a function of L = v**2 at L = q."""
    f = MotiveRat._coerce(f)
    if f.is_zero():
        return Fraction(0)
    if not (_even_only(f._num, f._val) and _even_only(f._den, 0)):
        raise NotAFunctionOfL(f"{f} is not a function of L")
    q = Fraction(q)
    num = sum((Fraction(int(c)) * q ** (i // 2) for i, c in enumerate(f._num.coeffs()) if c),
              Fraction(0))
    den = sum((Fraction(int(c)) * q ** (i // 2) for i, c in enumerate(f._den.coeffs()) if c),
              Fraction(0))
    if den == 0:
        raise PoleError(f"denominator of {f} vanishes at L={q}")
    return q ** (f._val // 2) * num / den


def eval_at(f: Coercible, x) -> Fraction:
    """Evaluate at v = x (exact rational)."""
    f = MotiveRat._coerce(f)
    x = Fraction(x)
    den = VPolynomial._from_flint(0, f._den)(x)
    if den == 0:
        raise PoleError(f"denominator of {f} vanishes at v={x}")
    if x == 0 and f._val < 0 and not f.is_zero():
        raise PoleError(f"{f} has a pole at v=0")
    return VPolynomial._from_flint(f._val, f._num)(x) / den


def laurent_expand(f: Coercible, lowest: int) -> dict[int, Fraction]:
    """Expansion of f in descending powers of v, down to ``v**lowest``.

    This is the image of f in the completion in L^{-1}; infinite q-products
    in L^{-j} converge there.
    """
    f = MotiveRat._coerce(f)
    if f.is_zero():
        return {}
    num = [Fraction(int(c)) for c in f._num.coeffs()][::-1]  # in u = 1/v
    den = [Fraction(int(c)) for c in f._den.coeffs()][::-1]
    top = f._val + f._num.degree() - f._den.degree()
    if top < lowest:
        return {}
    length = top - lowest + 1
    quot: list[Fraction] = []
    rem = num + [Fraction(0)] * max(0, length - len(num))
    for k in range(length):
        c = rem[k] / den[0]
        quot.append(c)
        if c:
            for j in range(1, len(den)):
                if k + j < len(rem):
                    rem[k + j] -= c * den[j]
    return {top - k: c for k, c in enumerate(quot) if c}


def _format_laurent(terms: Mapping[int, int], var: str, half: bool = False) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms.items(), reverse=True):
        if half:
            if e == 0:
                mono = ""
            elif e % 2 == 0:
                mono = "L" if e == 2 else f"L^{e // 2}"
            else:
                mono = f"L^({e}/2)"
        else:
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_motive(f: Coercible, style: str = "v") -> str:
    """Human-readable form; ``style="L"`` writes v**k as L^(k/2)."""
    f = MotiveRat._coerce(f)
    half = style == "L"
    num = _format_laurent(f.numerator.coefficients, "v", half)
    if f._den.is_one():
        return num
    den = _format_laurent(f.denominator.coefficients, "v", half)
    if len(f.numerator.coefficients) > 1:
        num = f"({num})"
    return f"{num}/({den})"


def as_motive(x: Coercible) -> MotiveRat:
    return MotiveRat._coerce(x)


def motive_sum(items: Iterable[MotiveRat]) -> MotiveRat:
    total = ZERO
    for x in items:
        total = total + x
    return total
