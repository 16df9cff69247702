"""Power-level allocation with interference treated as noise.

Feasibility of a target GDoF tuple reduces to a system of difference
constraints on the power exponents: r_k <= 0, r_k >= d_k - a_kk, and
r_k - r_j >= d_k - a_kk + a_kj for every present cross link (k, j) with a
positive target d_k (a zero target imposes nothing, since treating
everything as noise always yields at least zero).  The system is decided
by negative-cycle detection on the constraint graph; shortest-path
potentials from the zero anchor are the componentwise-maximal feasible
exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import ChannelMatrix, to_fraction

# Constraint edges are (u, v, w) meaning r_v - r_u <= w; node K is the
# anchor pinned to 0.
Edge = tuple[int, int, Fraction]

SNAP_DENOMINATOR = 10**4
BISECTION_PRECISION = Fraction(1, 10**9)
OPTIMALITY_GAP = Fraction(1, 10**6)


@dataclass(frozen=True)
class TinSolution:
    """Outcome of a feasibility check.

    When feasible, ``r`` holds the componentwise-maximal power exponents;
    when infeasible, ``negative_cycle`` holds constraint edges whose
    weights sum to a negative value (the infeasibility certificate).
    """

    feasible: bool
    r: tuple[Fraction, ...] | None
    negative_cycle: tuple[Edge, ...] | None


def single_level_gdof(channel: ChannelMatrix, r: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """GDoF tuple of the one-stream-per-user, single-use scheme with power
    exponents r, treating all interference as noise."""
    out = []
    for k in range(channel.K):
        interference = [
            channel.alpha[k][j] + r[j]
            for j in range(channel.K)
            if j != k and channel.alpha[k][j] > 0
        ]
        strongest = max([Fraction(0), *interference])
        out.append(max(Fraction(0), channel.alpha[k][k] + r[k] - strongest))
    return tuple(out)


def _edges(channel: ChannelMatrix, targets: Sequence[Fraction]) -> list[Edge]:
    K = channel.K
    edges: list[Edge] = [(K, k, Fraction(0)) for k in range(K)]  # r_k <= 0
    for k in range(K):
        if targets[k] <= 0:
            continue
        edges.append((k, K, channel.alpha[k][k] - targets[k]))  # r_k >= d_k - a_kk
        for j in range(K):
            if j != k and channel.alpha[k][j] > 0:
                # r_k - r_j >= d_k - a_kk + a_kj
                edges.append((k, j, channel.alpha[k][k] - channel.alpha[k][j] - targets[k]))
    return edges


def _bellman_ford(n_nodes: int, edges: list[Edge], source: int):
    """Shortest paths from source; returns (dist, negative_cycle_or_None)."""
    dist = [None] * n_nodes
    dist[source] = Fraction(0)
    pred = [-1] * n_nodes
    trigger = -1
    for round_ in range(n_nodes):
        changed = False
        for idx, (u, v, w) in enumerate(edges):
            du = dist[u]
            if du is not None and (dist[v] is None or du + w < dist[v]):
                dist[v] = du + w
                pred[v] = idx
                changed = True
                trigger = v
        if not changed:
            return dist, None
    # still relaxing after n_nodes rounds: walk predecessors into the cycle
    x = trigger
    for _ in range(n_nodes):
        x = edges[pred[x]][0]
    cycle = []
    y = x
    while True:
        edge = edges[pred[y]]
        cycle.append(edge)
        y = edge[0]
        if y == x:
            break
    cycle.reverse()
    return dist, tuple(cycle)


def tin_feasible(channel: ChannelMatrix, targets: Sequence) -> TinSolution:
    """Decide whether the target GDoF tuple is achievable by power control
    with interference treated as noise."""
    d = tuple(to_fraction(t) for t in targets)
    if len(d) != channel.K:
        raise ValueError(f"expected {channel.K} targets, got {len(d)}")
    if any(t < 0 for t in d):
        raise ValueError("targets must be nonnegative")
    dist, cycle = _bellman_ford(channel.K + 1, _edges(channel, d), channel.K)
    if cycle is not None:
        return TinSolution(False, None, cycle)
    assert dist[channel.K] == 0  # anchor can only drop via a negative cycle
    return TinSolution(True, tuple(dist[: channel.K]), None)


def _feasible_float(alpha: list[list[float]], K: int, present, t: float) -> bool:
    """Float Bellman-Ford for the symmetric target t; used only to bracket
    the optimum, which is then re-verified exactly."""
    edges = [(K, k, 0.0) for k in range(K)]
    if t > 0:
        for k in range(K):
            edges.append((k, K, alpha[k][k] - t))
            for j in present[k]:
                edges.append((k, j, alpha[k][k] - alpha[k][j] - t))
    dist = [None] * (K + 1)
    dist[K] = 0.0
    for _ in range(K + 1):
        changed = False
        for u, v, w in edges:
            du = dist[u]
            if du is not None and (dist[v] is None or du + w < dist[v] - 1e-15):
                dist[v] = du + w
                changed = True
        if not changed:
            return True
    return False


def tin_symmetric(channel: ChannelMatrix) -> tuple[Fraction, TinSolution]:
    """Maximal t such that the symmetric tuple (t, ..., t) is TIN-feasible.

    Brackets the optimum by bisection (float fast path, exact fallback),
    snaps to the nearest rational with denominator <= 10^4, and exactly
    re-verifies that the snapped value is feasible while snapped + 1e-6 is
    not.
    """
    min_diag = min(channel.alpha[k][k] for k in range(channel.K))
    top = tin_feasible(channel, [min_diag] * channel.K)
    if top.feasible:
        return min_diag, top

    def exact(t: Fraction) -> TinSolution:
        return tin_feasible(channel, [t] * channel.K)

    def verified(t: Fraction) -> TinSolution | None:
        if not 0 <= t <= min_diag:
            return None
        sol = exact(t)
        if sol.feasible and not exact(t + OPTIMALITY_GAP).feasible:
            return sol
        return None

    alpha = [[float(a) for a in row] for row in channel.alpha]
    present = [
        [j for j in range(channel.K) if j != k and channel.alpha[k][j] > 0]
        for k in range(channel.K)
    ]
    lo, hi = 0.0, float(min_diag)
    while hi - lo > 1e-9:
        mid = (lo + hi) / 2
        if _feasible_float(alpha, channel.K, present, mid):
            lo = mid
        else:
            hi = mid
    candidate = Fraction((lo + hi) / 2).limit_denominator(SNAP_DENOMINATOR)
    sol = verified(candidate)
    if sol is not None:
        return candidate, sol

    # Float bracketing failed (degenerate geometry or oversized
    # denominator): redo the bisection in exact arithmetic.
    flo, fhi = Fraction(0), min_diag
    while fhi - flo > BISECTION_PRECISION:
        mid = (flo + fhi) / 2
        if exact(mid).feasible:
            flo = mid
        else:
            fhi = mid
    candidate = ((flo + fhi) / 2).limit_denominator(SNAP_DENOMINATOR)
    sol = verified(candidate)
    if sol is not None:
        return candidate, sol
    return flo, exact(flo)  # flo + 1e-6 > fhi, so the gap contract still holds
