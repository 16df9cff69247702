import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import grid_tin_feasible, random_channel, single_stream_gdof
from timtin import decomp
from timtin.fixtures import baseline_map, five_user_network, improved_map
from timtin.model import validate_channel
from timtin.tin import single_level_gdof, tin_feasible, tin_symmetric


def tin_component(dmap):
    channel, _ = decomp.split(five_user_network(), dmap)
    return channel


def test_no_cross_links_full_targets_feasible():
    cm = validate_channel([["1", "0"], ["0", "0.7"]])
    sol = tin_feasible(cm, [1, Fraction(7, 10)])
    assert sol.feasible and sol.r == (0, 0)


def test_reference_weak_component_symmetric():
    cm = tin_component(baseline_map())
    d, sol = tin_symmetric(cm)
    assert d == Fraction(3, 5)
    assert sol.r == (0, Fraction(-1, 10), Fraction(-1, 5), Fraction(-3, 10), Fraction(-2, 5))
    assert tin_feasible(cm, [Fraction(3, 5)] * 5).feasible
    assert not tin_feasible(cm, [Fraction(3, 5) + Fraction(1, 10**6)] * 5).feasible


def test_reference_reduced_component_symmetric():
    cm = tin_component(improved_map())
    d, sol = tin_symmetric(cm)
    assert d == Fraction(2, 3)
    assert sol.r == (0, Fraction(-1, 6), 0, Fraction(-1, 6), Fraction(-1, 3))


def test_single_user_symmetric():
    d, sol = tin_symmetric(validate_channel([["1"]]))
    assert d == 1 and sol.r == (0,)


def test_zero_targets_are_always_feasible():
    # strong mutual interference: nothing positive is feasible, zero is
    cm = validate_channel([["1", "2"], ["2", "1"]])
    assert tin_feasible(cm, [0, 0]).feasible
    assert not tin_feasible(cm, [Fraction(1, 100), Fraction(1, 100)]).feasible
    d, _ = tin_symmetric(cm)
    assert d == 0


def test_zero_target_user_imposes_nothing():
    # user 1 suffers overwhelming interference but only user 2 has a target
    cm = validate_channel([["1", "3"], ["0.5", "1"]])
    sol = tin_feasible(cm, [0, 1])
    assert sol.feasible
    achieved = single_level_gdof(cm, sol.r)
    assert achieved[1] >= 1


def test_feasibility_certificate_via_formula():
    rng = random.Random(5)
    for _ in range(50):
        K = rng.randint(1, 4)
        cm = random_channel(rng, K)
        targets = [Fraction(rng.randint(0, 4), 8) for _ in range(K)]
        sol = tin_feasible(cm, targets)
        if sol.feasible:
            achieved = single_stream_gdof(cm, sol.r)
            assert all(a >= t for a, t in zip(achieved, targets))
            assert all(x <= 0 for x in sol.r)


def test_infeasibility_certificate_is_negative_cycle():
    rng = random.Random(6)
    seen = 0
    for _ in range(200):
        K = rng.randint(2, 4)
        cm = random_channel(rng, K, cross_prob=0.8)
        targets = [Fraction(rng.randint(0, 8), 8) for _ in range(K)]
        sol = tin_feasible(cm, targets)
        if not sol.feasible:
            seen += 1
            assert sum((w for _, _, w in sol.negative_cycle), Fraction(0)) < 0
            # the cycle is closed
            assert [u for u, _, _ in sol.negative_cycle] == [
                v for _, v, _ in sol.negative_cycle
            ][-1:] + [v for _, v, _ in sol.negative_cycle][:-1]
    assert seen > 10


def test_symmetric_gap_contract():
    rng = random.Random(7)
    for _ in range(25):
        K = rng.randint(1, 4)
        cm = random_channel(rng, K)
        d, sol = tin_symmetric(cm)
        assert sol.feasible
        assert tin_feasible(cm, [d] * K).feasible
        assert not tin_feasible(cm, [d + Fraction(1, 10**6)] * K).feasible


def test_monotonicity_in_links_and_strengths():
    base = validate_channel([["1", "0", "0.5"], ["0", "1", "0"], ["0", "0.5", "1"]])
    with_link = validate_channel([["1", "0.5", "0.5"], ["0", "1", "0"], ["0", "0.5", "1"]])
    stronger = validate_channel([["1", "0", "0.9"], ["0", "1", "0"], ["0", "0.5", "1"]])
    d0, _ = tin_symmetric(base)
    assert tin_symmetric(with_link)[0] <= d0
    assert tin_symmetric(stronger)[0] <= d0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_agrees_with_grid_search(seed):
    rng = random.Random(seed)
    K = rng.randint(2, 3)
    cm = random_channel(
        rng,
        K,
        diag_choices=[Fraction(n, 20) for n in range(20, 31)],
        cross_choices=[Fraction(n, 20) for n in range(1, 11)],
        cross_prob=0.7,
    )
    eps = Fraction(1, 1000)
    targets = [Fraction(rng.randint(0, 12), 20) - eps for _ in range(K)]
    targets = [max(t, Fraction(0)) for t in targets]
    assert tin_feasible(cm, targets).feasible == grid_tin_feasible(cm, targets)
