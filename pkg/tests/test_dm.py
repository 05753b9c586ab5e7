import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eigenperiod.dm import (
    Stability,
    WeightError,
    WeightSystem,
    ball_dimension,
    cyclic_cover_genus,
    enumerate_weights,
    failing_pairs,
    git_classify,
    is_int,
    is_sigma_int,
    parse_weights,
    validate_weights,
    weights_from_json,
)

from helpers import brute_force_weights, cached_enumeration

F = Fraction


def test_validate_examples():
    mu = validate_weights([F(1, 3)] * 6)
    assert mu.weight == 2 and mu.d == 3 and mu.m == 6
    mu = validate_weights([F(1, 6)] * 12)
    assert mu.weight == 2 and mu.d == 6
    with pytest.raises(WeightError) as exc:
        validate_weights([F(1, 2)] * 3)
    assert exc.value.condition == "integral_sum"
    with pytest.raises(WeightError) as exc:
        validate_weights([F(3, 2), F(1, 2)])
    assert exc.value.condition == "range"
    with pytest.raises(WeightError):
        validate_weights([0, 1, 1])


def test_canonical_form():
    mu = validate_weights(["1/6", "2/6", "1/2", "4/6", "1/3"])
    assert mu.entries == (F(2, 3), F(1, 2), F(1, 3), F(1, 3), F(1, 6))
    assert mu.to_string() == "4/6,3/6,2/6,2/6,1/6"
    assert parse_weights(mu.to_string()) == mu
    assert weights_from_json(mu.to_json()) == mu
    assert parse_weights("1/3x6") == validate_weights(["1/3"] * 6)
    assert parse_weights("2/6^5, 1/6^2") == validate_weights(["1/3"] * 5 + ["1/6"] * 2)
    with pytest.raises(WeightError) as exc:
        parse_weights("1/3,,1/3")
    assert exc.value.condition == "parse"


def test_int_examples():
    assert is_int(validate_weights([F(1, 3)] * 6))
    assert is_int(validate_weights([F(1, 4)] * 8))
    mu = validate_weights([F(1, 3)] * 5 + [F(1, 6)] * 2)
    assert not is_int(mu)
    assert failing_pairs(mu) == [(F(1, 6), F(1, 6))]
    assert is_sigma_int(mu)
    assert is_sigma_int(validate_weights([F(1, 6)] * 12))
    assert not is_int(validate_weights([F(1, 6)] * 12))


INT_M5 = [
    "10/12,5/12,3/12,3/12,3/12",
    "5/6,2/6,2/6,2/6,1/6",
    "3/4,2/4,1/4,1/4,1/4",
    "6/8,3/8,3/8,3/8,1/8",
    "14/20,11/20,5/20,5/20,5/20",
    "7/10,4/10,4/10,4/10,1/10",
    "8/12,7/12,3/12,3/12,3/12",
    "4/6,3/6,2/6,2/6,1/6",
    "8/12,5/12,5/12,5/12,1/12",
    "8/12,5/12,5/12,3/12,3/12",
    "2/3,1/3,1/3,1/3,1/3",
    "5/8,5/8,2/8,2/8,2/8",
    "11/18,8/18,8/18,8/18,1/18",
    "7/12,7/12,4/12,4/12,2/12",
    "7/12,6/12,5/12,3/12,3/12",
    "7/12,5/12,4/12,4/12,4/12",
    "14/24,9/24,9/24,9/24,7/24",
    "8/15,6/15,6/15,6/15,4/15",
    "3/6,3/6,3/6,2/6,1/6",
    "2/4,2/4,2/4,1/4,1/4",
    "3/6,3/6,2/6,2/6,2/6",
    "6/12,5/12,5/12,5/12,3/12",
    "6/12,5/12,5/12,4/12,4/12",
    "4/8,3/8,3/8,3/8,3/8",
    "4/9,4/9,4/9,4/9,2/9",
    "5/12,5/12,5/12,5/12,4/12",
    "2/5,2/5,2/5,2/5,2/5",
]


def test_int_m5_frozen_list():
    # frozen after agreement with the brute-force search at d_max = 60
    assert [w.to_string() for w in cached_enumeration(5, "INT")] == INT_M5


@pytest.mark.parametrize("m,cond,d_max", [(3, "INT", 12), (3, "SigmaINT", 12), (4, "INT", 20),
                                          (4, "SigmaINT", 20), (5, "INT", 15), (5, "SigmaINT", 15),
                                          (6, "SigmaINT", 12)])
def test_enumeration_matches_brute_force(m, cond, d_max):
    got = {w.entries for w in enumerate_weights(m, cond, d_max)}
    assert got == brute_force_weights(m, cond == "SigmaINT", d_max)


def test_enumeration_results_satisfy_condition():
    for m in (5, 6, 7):
        for cond, check in (("INT", is_int), ("SigmaINT", is_sigma_int)):
            for mu in enumerate_weights(m, cond, 30):
                assert mu.weight == 2 and mu.m == m
                assert all(x.denominator <= 30 for x in mu.entries)
                assert check(mu)


def test_int_implies_sigma_int_over_enumeration():
    for m in range(5, 9):
        ints = cached_enumeration(m, "INT")
        sigmas = set(cached_enumeration(m, "SigmaINT"))
        for mu in ints:
            assert is_sigma_int(mu)
            assert mu in sigmas


def test_enumeration_is_order_independent():
    a = enumerate_weights(6, "SigmaINT", 40, order="ascending")
    b = enumerate_weights(6, "SigmaINT", 40, order="descending")
    assert a == b
    assert a == sorted(a, reverse=True)


def test_enumeration_with_workers():
    assert enumerate_weights(5, "INT", 30, workers=2) == enumerate_weights(5, "INT", 30)


def test_enumeration_arguments():
    with pytest.raises(ValueError):
        enumerate_weights(2, "INT")
    with pytest.raises(ValueError):
        enumerate_weights(5, "INT", 1)
    with pytest.raises(ValueError):
        enumerate_weights(5, "FOO")
    assert enumerate_weights(5, "sigma_int", 12) == enumerate_weights(5, "SigmaINT", 12)


def test_enumeration_examples():
    assert [w.to_string() for w in cached_enumeration(7, "INT")] == ["2/4,1/4,1/4,1/4,1/4,1/4,1/4"]
    assert [w.to_string() for w in cached_enumeration(8, "INT")] == ["1/4,1/4,1/4,1/4,1/4,1/4,1/4,1/4"]
    assert validate_weights([F(1, 6)] * 12) in cached_enumeration(12, "SigmaINT")


def test_git_examples():
    k = [1] * 6
    v = git_classify(k, [[i] for i in range(6)])
    assert v.verdict is Stability.STABLE and v.witnesses == ()
    v = git_classify(k, [[0, 1, 2], [3], [4], [5]])
    assert v.verdict is Stability.STRICTLY_SEMISTABLE and v.witnesses == ((0, 1, 2),)
    v = git_classify(k, [[0, 1, 2, 3], [4], [5]])
    assert v.verdict is Stability.UNSTABLE and v.witnesses == ((0, 1, 2, 3),)
    with pytest.raises(ValueError):
        git_classify(k, [[0, 1]])
    with pytest.raises(ValueError):
        git_classify([1, 0], [[0], [1]])


@given(st.lists(st.integers(1, 6), min_size=2, max_size=8), st.randoms(use_true_random=False))
def test_git_witnesses_iff_not_stable(k, rnd):
    idx = list(range(len(k)))
    rnd.shuffle(idx)
    cuts = sorted(rnd.sample(range(1, len(k)), rnd.randint(0, len(k) - 1)))
    groups = [idx[a:b] for a, b in zip([0] + cuts, cuts + [len(k)])]
    v = git_classify(k, groups)
    assert (v.verdict is Stability.STABLE) == (v.witnesses == ())


def test_genus_examples():
    assert cyclic_cover_genus(3, [1] * 6) == 4
    assert cyclic_cover_genus(2, [1, 1]) == 0
    assert cyclic_cover_genus(2, [1, 1, 1, 1]) == 1
    assert cyclic_cover_genus(2, [1] * 5) == 2
    with pytest.raises(ValueError):
        cyclic_cover_genus(2, [2, 4])
    with pytest.raises(ValueError):
        cyclic_cover_genus(1, [1])


def genus_from_gcds(d, ks):
    return (2 - 2 * d + sum(d - math.gcd(d, k) for k in ks) + d - math.gcd(d, sum(ks))) // 2


@given(st.integers(2, 12), st.lists(st.integers(1, 30), min_size=1, max_size=10), st.randoms(use_true_random=False))
def test_genus_depends_only_on_gcd_data(d, ks, rnd):
    if math.gcd(d, *ks) != 1:
        with pytest.raises(ValueError):
            cyclic_cover_genus(d, ks)
        return
    g = cyclic_cover_genus(d, ks)
    assert g == genus_from_gcds(d, ks) and g >= 0
    shuffled = ks[:]
    rnd.shuffle(shuffled)
    assert cyclic_cover_genus(d, shuffled) == g
    shifted = [k + d * rnd.randint(0, 3) for k in ks]
    if math.gcd(d, sum(shifted)) == math.gcd(d, sum(ks)):
        assert cyclic_cover_genus(d, shifted) == g


def test_ball_dimension():
    assert ball_dimension(6) == 3
    assert ball_dimension(12) == 9
    assert ball_dimension(4) == 1
    with pytest.raises(ValueError):
        ball_dimension(3)
