from fractions import Fraction
from itertools import product

import pytest

from toric_dt.quiver import (
    Arrow,
    InvalidSigma,
    SigmaPartition,
    ToricData,
    all_sigmas,
    build_cut,
    build_quiver,
    d_C,
    euler_form,
    flip,
    loop_set,
    relation_for_arrow,
    special_cut,
    special_sigma,
    special_subsets,
    validate_cut,
)


sigma = SigmaPartition.from_bits

EXAMPLE = "010010"  # N0 = 4, N1 = 2


def names(rel):
    return [(s, [a.name for a in path]) for s, path in rel]


def test_sigma_validation():
    with pytest.raises(InvalidSigma):
        SigmaPartition.from_bits("012")
    with pytest.raises(InvalidSigma):
        SigmaPartition.from_bits("01", 2, 0)
    with pytest.raises(ValueError):
        ToricData(1, 2)


def test_sigma_x_reconstruction():
    s = sigma(EXAMPLE)
    h = Fraction(1, 2)
    assert s.points() == ((7 * h, 0), (3 * h, 1), (5 * h, 0), (3 * h, 0), (h, 1), (h, 0))


def test_loop_set():
    assert loop_set(sigma("01")) == frozenset()
    assert loop_set(sigma("0")) == {0}
    assert loop_set(sigma(EXAMPLE)) == {0, 3}


def test_build_quiver_sizes():
    assert len(build_quiver(sigma("01")).arrows) == 4
    c3 = build_quiver(sigma("0"))
    assert sorted(a.name for a in c3.arrows) == ["h+_1/2", "h-_1/2", "r_0"]
    ex = build_quiver(sigma(EXAMPLE))
    assert ex.n == 6 and len(ex.arrows) == 14 and len(ex.loops) == 2


def test_arrow_count_all_sigmas():
    for n0 in range(1, 4):
        for n1 in range(0, n0 + 1):
            for s in all_sigmas(n0, n1):
                Q = build_quiver(s)
                assert len(Q.arrows) == 2 * s.N + len(loop_set(s))


def test_relation_both_loops():
    s = sigma("000")  # every vertex has a loop
    rel = relation_for_arrow(s, Arrow("h-", 1))
    assert names(rel) == [(1, ["h+_3/2", "r_1"]), (-1, ["r_2", "h+_3/2"])]


def test_relation_one_loop():
    # vertex 1 has a loop, vertex 2 does not
    s = sigma("0010")
    assert 1 in loop_set(s) and 2 not in loop_set(s)
    rel = relation_for_arrow(s, Arrow("h-", 1))
    assert names(rel) == [(1, ["h+_3/2", "r_1"]), (-1, ["h-_5/2", "h+_5/2", "h+_3/2"])]


def test_relation_loop_arrow():
    rel = relation_for_arrow(sigma("0"), Arrow("r", 0))
    assert names(rel) == [(1, ["h+_1/2", "h-_1/2"]), (-1, ["h-_1/2", "h+_1/2"])]


def test_unknown_arrow():
    with pytest.raises(KeyError):
        relation_for_arrow(sigma("01"), Arrow("r", 0))


def test_build_cut_examples():
    assert {a.name for a in build_cut(sigma("01")).cut} == {"h-_1/2"}
    assert {a.name for a in build_cut(sigma("0")).cut} == {"r_0"}


def test_build_cut_valid_everywhere():
    for n in range(1, 7):
        for row in product((0, 1), repeat=n):
            if row.count(0) < row.count(1):
                continue
            s = SigmaPartition(ToricData(row.count(0), row.count(1)), row)
            Q = build_cut(s)
            assert validate_cut(Q)
            for a in Q.cut:
                for _, path in Q.relations[a]:
                    assert not set(path) & Q.cut


def test_special_sigma():
    assert special_sigma(1, 1).bits == "10"
    assert special_subsets(special_sigma(1, 1)) == (frozenset(), {0}, {1})
    s = special_sigma(2, 0)
    assert s.bits == "00" and loop_set(s) == {0, 1}
    s = special_sigma(3, 1)
    assert loop_set(s) == {0, 1}
    assert special_subsets(s)[1:] == ({2}, {3})
    with pytest.raises(ValueError):
        special_sigma(1, 2)


def test_special_cut():
    Q = special_cut(special_sigma(3, 1))
    assert {a.name for a in Q.cut} == {"h-_1/2", "h-_3/2", "h-_7/2"}


def test_euler_form_and_dC():
    Q = build_cut(sigma("01"))
    assert euler_form(Q, (1, 1), (1, 1)) == -2
    assert euler_form(Q, (0, 0), (3, 1)) == 0
    assert d_C(Q, (1, 1)) == 1
    assert d_C(Q, (0, 0)) == 0
    assert euler_form(build_quiver(sigma("0")), (1,), (1,)) == -2
    with pytest.raises(ValueError):
        euler_form(Q, (1,), (1, 1))


@pytest.mark.parametrize("model", [(1, 1), (2, 0), (2, 1), (3, 1), (2, 2)])
def test_special_shift_identity(model):
    s = special_sigma(*model)
    Q = special_cut(s)
    _, I2, _ = special_subsets(s)
    for alpha in product(range(5), repeat=s.N):
        if sum(alpha) > 4:
            continue
        lhs = euler_form(Q, alpha, alpha) + 2 * d_C(Q, alpha)
        rhs = sum((alpha[(i + 1) % s.N] - alpha[i]) ** 2 for i in I2)
        assert lhs == rhs


def test_flip():
    assert flip(sigma("01"), 0).bits == "10"
    f = flip(sigma(EXAMPLE), 1)
    assert f.bits == "100010"
    assert loop_set(f) == {2, 3}
    with pytest.raises(InvalidSigma):
        flip(sigma(EXAMPLE), 0)


def test_flip_properties():
    for n0, n1 in [(1, 1), (2, 1), (2, 2), (3, 2), (4, 2)]:
        for s in all_sigmas(n0, n1):
            for k in range(s.N):
                if k in loop_set(s):
                    continue
                f = flip(s, k)
                assert flip(f, k) == s
                assert sorted(f.row) == sorted(s.row)
                assert k not in loop_set(f)
                changed = loop_set(f) ^ loop_set(s)
                assert changed <= {(k - 1) % s.N, (k + 1) % s.N}


def test_quiver_json():
    data = build_cut(sigma("01")).to_json()
    assert data["vertices"] == [0, 1]
    assert {a["name"] for a in data["arrows"] if a["in_cut"]} == {"h-_1/2"}
    assert set(data["arrows"][0]) == {"name", "src", "dst", "in_cut"}
