from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_dt.motive import (
    L,
    ONE,
    V,
    ZERO,
    MotiveRat,
    NotAFunctionOfL,
    PoleError,
    VPolynomial,
    adams,
    eval_at,
    eval_even,
    format_motive,
    gl_order,
    laurent_expand,
    v_power,
    vir_normalize,
)

polys = st.dictionaries(st.integers(-4, 6), st.integers(-5, 5), max_size=4).map(VPolynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
rats = st.builds(MotiveRat, polys, nonzero_polys)


def brute_gl(n, p):
    from itertools import product

    import numpy as np

    count = 0
    for entries in product(range(p), repeat=n * n):
        m = np.array(entries, dtype=np.int64).reshape(n, n)
        if n == 0 or round(np.linalg.det(m)) % p:
            count += 1
    return count


def test_additive_inverse():
    a = V / (L - 1)
    assert a + (-V / (L - 1)) == ZERO


def test_difference_of_squares():
    assert (L - 1) * (L + 1) == v_power(4) - 1


def test_division():
    lhs = v_power(6) / (L - 1) ** 2 / (L / (L - 1))
    assert lhs == v_power(4) / (L - 1)
    assert eval_at(lhs, 3) == Fraction(3**4, 8)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_canonical_form():
    f = (v_power(4) - 1) / (v_power(3) - v_power(1))
    # (v^4-1)/(v(v^2-1)) = (v^2+1)/v
    assert f.denominator == VPolynomial({0: 1})
    assert f.numerator == VPolynomial({1: 1, -1: 1})
    g = MotiveRat(VPolynomial({0: 1}), VPolynomial({0: -1, 2: -1}))
    assert g.denominator.coefficients[2] > 0


def test_adams_examples():
    assert adams(V, 2) == L
    assert adams(-V / (L - 1), 2) == -L / (v_power(4) - 1)
    f = (v_power(3) + 1) / (V - 1)
    assert adams(adams(f, 2), 3) == adams(f, 6)


@settings(max_examples=60, deadline=None)
@given(rats, rats, st.integers(1, 4))
def test_adams_ring_homomorphism(a, b, n):
    assert adams(a * b, n) == adams(a, n) * adams(b, n)
    assert adams(a + b, n) == adams(a, n) + adams(b, n)


@settings(max_examples=60, deadline=None)
@given(rats, rats)
def test_normal_form(a, b):
    assert (a - b == ZERO) == (a == b)
    assert a + b - b == a
    if not b.is_zero():
        assert a * b / b == a


def test_gl_order():
    assert gl_order(0) == VPolynomial({0: 1})
    assert gl_order(1) == VPolynomial({2: 1, 0: -1})
    assert eval_even(MotiveRat(gl_order(2)), 2) == 6


@pytest.mark.parametrize("n,p", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_gl_order_counts(n, p):
    assert eval_even(MotiveRat(gl_order(n)), p) == brute_gl(n, p)


def test_vir_normalize():
    assert vir_normalize(1, 0) == ONE
    assert vir_normalize(L - 1, 1) == -(L - 1) / V
    x = (v_power(4) + V) / (V - 1)
    assert vir_normalize(x, 3) * vir_normalize(1, -3) == x


def test_eval_even():
    assert eval_even(L + 1, 3) == 4
    assert eval_even(v_power(6) / (L - 1) ** 2, 2) == 8
    with pytest.raises(NotAFunctionOfL):
        eval_even(V, 3)
    with pytest.raises(PoleError):
        eval_even(ONE / (L - 1), 1)


def test_laurent_expand():
    # 1/(1 - v^-2) = 1 + v^-2 + v^-4 + ...
    f = L / (L - 1)
    assert laurent_expand(f, -6) == {0: 1, -2: 1, -4: 1, -6: 1}


@settings(max_examples=40, deadline=None)
@given(rats)
def test_json_round_trip(a):
    assert MotiveRat.from_json(a.to_json()) == a


def test_json_schema():
    data = (V / (L - 1)).to_json()
    assert set(data) == {"num", "den"}
    assert all(isinstance(c, str) for _, c in data["num"])
    exps = [e for e, _ in data["den"]]
    assert exps == sorted(exps)


def test_format():
    assert format_motive(v_power(6) / (L - 1) ** 2, "v") == "v^6/(v^4 - 2*v^2 + 1)"
    assert "L^(1/2)" in format_motive(-V / (L - 1), "L")
