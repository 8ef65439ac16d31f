import random

import pytest

from toric_dt.motive import ONE
from toric_dt.oracle.pointcount import (
    BudgetExceeded,
    count_representations,
    plan_count,
)
from toric_dt.quiver import SigmaPartition, build_cut, special_cut, special_sigma
from toric_dt.verify import theorem_A_coefficient, verify_theorem_A

sigma = SigmaPartition.from_bits


def test_examples():
    Q = build_cut(sigma("01"))
    assert count_representations(Q, (1, 0), 5).count == 1
    assert count_representations(Q, (1, 1), 2).count == 8
    assert count_representations(build_cut(sigma("0")), (1,), 3).count == 9


@pytest.mark.parametrize("bits,alpha,p", [("01", (2, 1), 2), ("0", (2,), 2), ("010", (1, 1, 1), 3),
                                          ("00", (1, 2), 2)])
def test_brute_equals_fibered(bits, alpha, p):
    Q = build_cut(sigma(bits))
    a = count_representations(Q, alpha, p, mode="brute", workers=1)
    b = count_representations(Q, alpha, p, mode="fibered", workers=1)
    assert a.count == b.count
    assert b.enumerated <= a.enumerated


def test_order_and_partition_invariance():
    Q = special_cut(special_sigma(2, 1))
    alpha, p = (1, 2, 1), 2
    ref = count_representations(Q, alpha, p, workers=1).count
    order = list(Q.free_arrows)
    random.Random(7).shuffle(order)
    assert count_representations(Q, alpha, p, workers=1, order=order).count == ref
    assert count_representations(Q, alpha, p, workers=1, chunk=3).count == ref
    assert count_representations(Q, alpha, p, workers=2, chunk=5).count == ref


def test_count_bounded_by_space():
    Q = build_cut(sigma("01"))
    plan = plan_count(Q, (2, 1), 3)
    res = count_representations(Q, (2, 1), 3, workers=1)
    assert 0 < res.count <= 3 ** (plan.n_enum + plan.n_solve)


def test_budget():
    Q = build_cut(sigma("01"))
    with pytest.raises(BudgetExceeded) as info:
        count_representations(Q, (3, 3), 3, budget=1000)
    assert info.value.size > 1000


def test_budget_env(monkeypatch):
    monkeypatch.setenv("TORIC_DT_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        count_representations(build_cut(sigma("01")), (2, 2), 2)


def test_rejects_composite():
    with pytest.raises(ValueError):
        count_representations(build_cut(sigma("01")), (1, 1), 4)


def test_plan_shapes():
    plan = plan_count(build_cut(sigma("01")), (2, 1), 3, mode="brute")
    assert plan.n_solve == 0 and plan.n_enum == 6


def test_theorem_A_worked_identity():
    s = sigma("01")
    Q = build_cut(s)
    coeff = theorem_A_coefficient(s, (1, 1), Q)
    from toric_dt.motive import v_power

    assert coeff == v_power(6)
    assert theorem_A_coefficient(s, (0, 0), Q) == ONE


def test_theorem_A_two_cuts():
    # the product formula does not depend on the chosen cut
    s = special_sigma(1, 1)
    for cut in ("special", "generic"):
        recs = verify_theorem_A(s, 3, (2, 3), cut=cut)
        assert all(r.status == "pass" for r in recs)


def test_theorem_A_budget_skip():
    recs = verify_theorem_A(sigma("01"), alphas=[(2, 2)], primes=(3,), budget=10)
    assert [r.status for r in recs] == ["skipped"]
