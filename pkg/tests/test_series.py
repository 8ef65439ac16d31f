
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toric_dt.motive import L, ONE, V, MotiveRat, PoleError, adams, gl_order, v_power
from toric_dt.quiver import SigmaPartition, special_sigma
from toric_dt.roots import RootKind, StabilityParam, enumerate_positive_roots, zeta_dt
from toric_dt.roots import zeta_dt_literal, zeta_pt_literal
from toric_dt.series import (
    SeriesError,
    TruncatedSeries,
    dtpt_series,
    euler_specialize,
    quantum_exp_E,
    root_coefficient,
    root_factor,
    to_s_t_laurent,
    universal_series,
    z_alpha,
    z_alpha_closed,
    z_zeta,
)

sigma = SigmaPartition.from_bits
coeffs = st.sampled_from([ONE, V, -V, L / (L - 1), -V / (L - 1), v_power(-1) + 2, MotiveRat(3)])


def small_series(draw_terms, nvars=2, cap=4):
    return TruncatedSeries(nvars, cap, draw_terms)


series_terms = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda e: 0 < sum(e) <= 4),
    coeffs, max_size=4)


def test_geometric_inverse():
    one_minus = TruncatedSeries(1, 6, {(0,): 1, (1,): -1})
    inv = one_minus.inverse()
    assert inv == TruncatedSeries(1, 6, {(k,): 1 for k in range(7)})
    assert one_minus * inv == TruncatedSeries.one(1, 6)


def test_exp_log_round_trip():
    F = TruncatedSeries(2, 4, {(1, 0): V, (1, 1): ONE})
    assert F.exp().log() == F
    assert F.pexp().plog() == F


@settings(max_examples=30, deadline=None)
@given(series_terms, series_terms)
def test_pexp_is_exponential(f, g):
    F, G = small_series(f), small_series(g)
    assert (F + G).pexp() == F.pexp() * G.pexp()
    assert F.pexp().plog() == F


def test_unit_violations():
    with pytest.raises(SeriesError):
        TruncatedSeries(1, 3, {(0,): 1}).pexp()
    with pytest.raises(SeriesError):
        TruncatedSeries(1, 3, {(1,): 1}).inverse()


def test_pexp_second_coefficient():
    c = V / (L - 1)
    E = TruncatedSeries.monomial(1, 3, (1,), c).pexp()
    assert E.coeff((1,)) == c
    assert E.coeff((2,)) == (c * c + adams(c, 2)) / 2


def test_pexp_against_direct_composition():
    # Exp(y0 / (1 - y0 y1)) = prod_k (1 - y0^(k+1) y1^k)^(-1)
    cap = 4
    F = TruncatedSeries(2, cap, {(k + 1, k): ONE for k in range(cap)})
    direct = TruncatedSeries.one(2, cap)
    for k in range(cap):
        direct = direct * TruncatedSeries(2, cap, {(0, 0): 1, (k + 1, k): -1}).inverse()
    assert F.pexp() == direct


def test_root_coefficients():
    assert root_coefficient(RootKind.REAL_ODD, 2) == -V / (L - 1)
    assert root_coefficient(RootKind.REAL_EVEN, 2) == L / (L - 1)
    assert root_coefficient(RootKind.IMAGINARY, 2) == L * (L + 1) / (L - 1)
    assert root_coefficient(RootKind.IMAGINARY, 1) == v_power(4) / (L - 1)


def test_universal_series_examples():
    U = universal_series(sigma("01"), 4)
    assert U.coeff((1, 1)) == v_power(6) / (L - 1) ** 2
    assert U.coeff((0, 0)) == ONE
    assert universal_series(sigma("0"), 3).coeff((1,)) == v_power(4) / (L - 1)
    assert universal_series(sigma("01"), 0) == TruncatedSeries.one(2, 0)


def test_quantum_exp_E():
    E = quantum_exp_E(4)
    assert E.coeff((0,)) == ONE
    assert E.coeff((1,)) == -V / (L - 1)
    assert E.coeff((2,)) == v_power(4) / ((v_power(4) - 1) * (v_power(4) - L))
    assert E == root_factor((1,), RootKind.REAL_ODD, 1, 4)
    for n in range(5):
        sign = -1 if n % 2 else 1
        assert E.coeff((n,)) == v_power(n * n) * sign / MotiveRat(gl_order(n))


def test_universal_series_factorizes_through_E():
    for bits in ["01", "010", "0010"]:
        s = sigma(bits)
        n = s.N
        U = universal_series(s, 4)
        single = quantum_exp_E(4)
        for k in range(n):
            e = tuple(int(i == k) for i in range(n))
            root = next(r for r in enumerate_positive_roots(s, 1) if r.coords == e)
            if root.kind is not RootKind.REAL_ODD:
                continue
            E = TruncatedSeries(n, 4, {tuple(d * x for x in e): c for (d,), c in single.items()})
            rest = TruncatedSeries.one(n, 4)
            for r in enumerate_positive_roots(s, 4):
                if r.coords != e:
                    rest = rest * root_factor(r, r.kind, n, 4)
            assert U == E * rest


def test_z_alpha_examples():
    minus = MotiveRat(-1)
    odd = z_alpha((1, 0), RootKind.REAL_ODD, 2, 6).substitute_scale(0, minus)
    assert odd == TruncatedSeries(2, 6, {(0, 0): 1, (1, 0): -1})
    even = z_alpha((1, 0), RootKind.REAL_EVEN, 2, 6).substitute_scale(0, minus)
    assert even == TruncatedSeries(2, 6, {(0, 0): 1, (1, 0): -V}).inverse()
    assert z_alpha((0, 1), RootKind.REAL_ODD, 2, 6) == TruncatedSeries.one(2, 6)


@pytest.mark.parametrize("bits", ["01", "010", "00"])
def test_z_alpha_closed_forms(bits):
    s = sigma(bits)
    for r in enumerate_positive_roots(s, 8):
        if 0 < r.coords[0] <= 3:
            ratio = z_alpha(r, r.kind, s.N, 8)
            assert ratio.substitute_scale(0, MotiveRat(-1)) == z_alpha_closed(r, r.kind, s.N, 8)
            assert all(c.is_laurent_polynomial() for c in ratio.terms.values())


def test_z_zeta_extremes():
    s = sigma("01")
    assert z_zeta(s, StabilityParam.plain((1, 1)), 4) == TruncatedSeries.one(2, 4)
    everything = TruncatedSeries.one(2, 4)
    for r in enumerate_positive_roots(s, 4):
        everything = everything * z_alpha(r, r.kind, 2, 4)
    assert z_zeta(s, StabilityParam.plain((-1, -1)), 4) == everything
    with pytest.raises(ValueError):
        z_zeta(s, StabilityParam.plain((1, -1)), 4)


def test_wall_crossing_single_root():
    s = sigma("01")
    # base (0, 1) is orthogonal to (1, 0) only
    plus = z_zeta(s, StabilityParam((0, 1), (1, 0)), 6)
    minus = z_zeta(s, StabilityParam((0, 1), (-1, 0)), 6)
    assert minus == plus * z_alpha((1, 0), RootKind.REAL_ODD, 2, 6)


def test_points_series():
    Z = dtpt_series(sigma("01"), "points", 4)
    assert Z.coeff((1, 0)) == -(V + v_power(3))
    assert Z.coeff((0, 0)) == ONE


def test_pt_trivial_at_T_zero():
    Z = dtpt_series(special_sigma(2, 1), "pt", 8)
    assert all(any(e[1:]) for e in Z.terms if any(e))


@pytest.mark.parametrize("model", [(1, 1), (2, 1)])
def test_dt_pt_correspondence(model):
    s = special_sigma(*model)
    dt, pt, zero = (dtpt_series(s, w, 8) for w in ("dt", "pt", "points"))
    assert dt == zero * pt
    assert dt == dtpt_series(s, "dt", 8, route="zeta")
    assert pt == dtpt_series(s, "pt", 8, route="zeta")


def test_literal_chamber_is_mirrored():
    # the printed stability vectors select -alpha_[a,b] + n delta, i.e. T -> T^-1
    s = sigma("01")
    raw = to_s_t_laurent(z_zeta(s, zeta_pt_literal(2), 6))
    pt = dtpt_series(s, "pt", 6)
    mirrored = {(e[0],) + tuple(-x for x in e[1:]): c for e, c in raw.items()}
    for e, c in pt.items():
        if 2 * e[0] + e[1] <= 4:
            assert mirrored.get(e) == c
    raw_dt = z_zeta(s, zeta_dt_literal(2), 6)
    assert raw_dt != z_zeta(s, zeta_dt(2), 6)


def test_euler_specialization():
    Z = euler_specialize(dtpt_series(sigma("01"), "points", 12))
    assert Z.coeff((1, 0)) == MotiveRat(-2)
    assert Z.coeff((0, 0)) == ONE
    with pytest.raises(PoleError):
        euler_specialize(universal_series(sigma("01"), 2))


def test_json_round_trip():
    U = universal_series(sigma("010"), 3)
    data = U.to_json()
    assert set(data) >= {"vars", "cap", "terms"}
    assert TruncatedSeries.from_json(data) == U
