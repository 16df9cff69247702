import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rank_of
from timtin.evaluator import user_gdof
from timtin.fixtures import baseline_map, improved_map
from timtin.model import ChannelMatrix, Scheme, Stream
from timtin.tim import TimTopology, build_graphs, tim_solve

BASELINE_LINKS = frozenset(baseline_map().tim_links)
IMPROVED_LINKS = frozenset(improved_map().tim_links)


def binary_channel(topo: TimTopology) -> ChannelMatrix:
    alpha = [
        [Fraction(1) if k == i or (k, i) in topo.links else Fraction(0) for i in range(topo.K)]
        for k in range(topo.K)
    ]
    return ChannelMatrix(topo.K, tuple(tuple(row) for row in alpha))


def realization(topo: TimTopology):
    sol = tim_solve(topo)
    streams = tuple(
        Stream(u, vec, 0) for u in range(topo.K) for vec in sol.directions[u]
    )
    return sol, Scheme(sol.n, streams)


def random_topology(rng: random.Random, K: int, prob=0.3) -> TimTopology:
    links = frozenset(
        (k, i) for k in range(K) for i in range(K) if k != i and rng.random() < prob
    )
    return TimTopology(K, links)


def test_build_graphs_reference_component():
    alignment, conflict = build_graphs(TimTopology(5, BASELINE_LINKS))
    assert alignment == frozenset({(1, 4)})
    assert conflict == frozenset({(0, 1), (0, 3), (1, 2), (2, 4), (3, 4)})


def test_build_graphs_reference_component_with_moved_link():
    alignment, conflict = build_graphs(TimTopology(5, IMPROVED_LINKS))
    assert alignment == frozenset({(0, 2), (1, 4)})
    assert conflict == frozenset({(0, 1), (0, 3), (1, 2), (2, 4), (3, 4)})


def test_build_graphs_empty():
    alignment, conflict = build_graphs(TimTopology(3, frozenset()))
    assert alignment == frozenset() and conflict == frozenset()


def test_build_graphs_fully_connected():
    K = 4
    topo = TimTopology(K, frozenset((k, i) for k in range(K) for i in range(K) if k != i))
    alignment, conflict = build_graphs(topo)
    complete = frozenset((i, j) for i in range(K) for j in range(i + 1, K))
    assert alignment == complete and conflict == complete


def test_reference_component_half_rate():
    sol, scheme = realization(TimTopology(5, BASELINE_LINKS))
    assert sol.fractions == (Fraction(1, 2),) * 5
    assert sol.method == "half_rate" and sol.n == 2
    # aligned pair shares one direction; four distinct directions overall
    assert sol.directions[1] == sol.directions[4]
    assert len({d[0] for d in sol.directions}) == 4
    for k in range(5):
        assert user_gdof(scheme, binary_channel(TimTopology(5, BASELINE_LINKS)), k).gdof == Fraction(1, 2)


def test_reference_component_with_moved_link_still_half_rate():
    sol, _ = realization(TimTopology(5, IMPROVED_LINKS))
    assert sol.fractions == (Fraction(1, 2),) * 5
    assert sol.method == "half_rate" and sol.n == 2
    assert sol.directions[0] == sol.directions[2]
    assert sol.directions[1] == sol.directions[4]
    assert len({d[0] for d in sol.directions}) == 3


def test_fully_connected_three_users_colors():
    topo = TimTopology(3, frozenset((k, i) for k in range(3) for i in range(3) if k != i))
    sol, scheme = realization(topo)
    assert sol.fractions == (Fraction(1, 3),) * 3
    assert sol.method == "coloring"
    for k in range(3):
        assert user_gdof(scheme, binary_channel(topo), k).gdof >= Fraction(1, 3)


def test_no_links_full_rate():
    sol, _ = realization(TimTopology(3, frozenset()))
    assert sol.fractions == (1, 1, 1)
    assert sol.method == "full" and sol.n == 1


def test_isolated_user_next_to_half_rate_pair():
    topo = TimTopology(3, frozenset({(1, 0)}))
    sol, scheme = realization(topo)
    assert sol.fractions == (Fraction(1, 2), Fraction(1, 2), 1)
    assert sol.n == 2 and len(sol.directions[2]) == 2
    cm = binary_channel(topo)
    assert [user_gdof(scheme, cm, k).gdof for k in range(3)] == [
        Fraction(1, 2),
        Fraction(1, 2),
        Fraction(1),
    ]


def test_greedy_path_on_large_component():
    K = 13
    topo = TimTopology(K, frozenset((k, i) for k in range(K) for i in range(K) if k != i))
    sol, _ = realization(topo)
    assert sol.method == "coloring"
    assert sol.fractions == (Fraction(1, 13),) * K


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_assignment_soundness(seed):
    rng = random.Random(seed)
    K = rng.randint(2, 6)
    topo = random_topology(rng, K)
    sol = tim_solve(topo)
    _, conflict = build_graphs(topo)
    for u, v in conflict:
        for du in sol.directions[u]:
            for dv in sol.directions[v]:
                assert rank_of([du, dv]) == 2
    if sol.method == "half_rate":
        alignment, _ = build_graphs(topo)
        for i, j in alignment:
            assert sol.directions[i] == sol.directions[j]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_fractions_certified_by_evaluator(seed):
    rng = random.Random(seed)
    K = rng.randint(2, 5)
    topo = random_topology(rng, K, prob=0.4)
    sol, scheme = realization(topo)
    cm = binary_channel(topo)
    _, conflict = build_graphs(topo)
    involved = {u for e in conflict for u in e}
    for k in range(K):
        achieved = user_gdof(scheme, cm, k).gdof
        if sol.method == "half_rate":
            assert achieved == (Fraction(1, 2) if k in involved else 1)
        else:
            assert achieved >= sol.fractions[k]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_adding_a_link_never_helps(seed):
    rng = random.Random(seed)
    K = rng.randint(2, 6)
    topo = random_topology(rng, K)
    missing = [
        (k, i)
        for k in range(K)
        for i in range(K)
        if k != i and (k, i) not in topo.links
    ]
    if not missing:
        return
    extra = rng.choice(missing)
    before = tim_solve(topo).fractions
    after = tim_solve(TimTopology(K, topo.links | {extra})).fractions
    assert all(b <= a for b, a in zip(after, before))
