from toric_dt.oracle.qseries import FACTOR_TYPES, check_factor, product_expansion


def test_all_factor_types():
    for kind in FACTOR_TYPES:
        for n in (1, 2, 3):
            res = check_factor(kind, n, 8)
            assert res.ok, res


def test_product_expansion_detects_wrong_factor():
    # the odd product compared against the even Exp form must fail
    from toric_dt.oracle import qseries

    original = qseries._factors
    try:
        qseries._factors = lambda kind, n, j: original("real-even", n, j)
        assert not check_factor("real-odd", 2, 4).ok
    finally:
        qseries._factors = original


def test_first_coefficient():
    coeffs = product_expansion("real-odd", 2, 1, 3)
    # -(v^-1 + v^-3 + v^-5 + v^-7)
    assert coeffs[1] == {-1: -1, -3: -1, -5: -1, -7: -1}
