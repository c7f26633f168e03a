"""Monte Carlo oracles: configuration-model sampling and the kinetic growth
process, plus weak-component extraction.

Both samplers are deterministic given a seed.  Streams come from numpy's
PCG64 generator; independent replicas derive from (master seed, replica
index) through ``SeedSequence`` spawn keys.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .degdist import BivariateDegreeDist, UnivariateDegreeDist
from .errors import Exhausted, Unrealizable, ValidationError
from .evolution import BoundDist


def replica_rng(master_seed: int, replica: int = 0) -> np.random.Generator:
    """Independent, reproducible stream for one replica of an experiment."""
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(replica,)))


def _as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass
class DirectedMultigraph:
    """Vertices 0..vertex_count-1 and an array of (source, target) edges.

    Self-loops and parallel edges are legal; the configuration model
    produces both with vanishing density.
    """

    vertex_count: int
    edges: np.ndarray  # shape (E, 2), int64

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self.edges.tolist()]


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, count: int):
        self.parent = list(range(count))
        self.size = [1] * count

    def find(self, v: int) -> int:
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def weak_component_sizes(g: DirectedMultigraph) -> np.ndarray:
    """Multiset of weak-component sizes (directions ignored); sums to the
    vertex count."""
    ds = DisjointSet(g.vertex_count)
    for src, dst in g.edges.tolist():
        ds.union(src, dst)
    counts = Counter(ds.find(v) for v in range(g.vertex_count))
    return np.array(sorted(counts.values()), dtype=np.int64)


def largest_weak_fraction(g: DirectedMultigraph) -> float:
    if g.vertex_count < 1:
        raise ValidationError("graph has no vertices")
    sizes = weak_component_sizes(g)
    return float(sizes.max()) / g.vertex_count


def size_histogram(sizes, vertex_weighted: bool = True) -> UnivariateDegreeDist:
    """Component-size law from a multiset of sizes.

    Vertex-weighted, bin s carries ``s * count(s) / sum(sizes)``: the
    probability that a random vertex lies in a size-s component.  Otherwise
    bins are component-weighted, ``count(s) / len(sizes)``.
    """
    sizes = list(int(s) for s in sizes)
    if not sizes:
        raise ValidationError("no component sizes given")
    counts = Counter(sizes)
    if vertex_weighted:
        total = sum(sizes)
        pairs = [(s, s * c / total) for s, c in sorted(counts.items())]
    else:
        pairs = [(s, c / len(sizes)) for s, c in sorted(counts.items())]
    return UnivariateDegreeDist.from_entries(pairs)


def _sample_keys(entries: dict, n: int, rng: np.random.Generator):
    items = sorted(entries.items())
    probs = np.array([p for _key, p in items], dtype=float)
    probs = probs / probs.sum()
    idx = rng.choice(len(items), size=n, p=probs)
    first = np.array([key[0] for key, _p in items], dtype=np.int64)
    second = np.array([key[1] for key, _p in items], dtype=np.int64)
    return first[idx], second[idx]


def sample_configuration(
    d: BivariateDegreeDist, n_vertices: int, seed
) -> DirectedMultigraph:
    """Directed configuration model: degrees i.i.d. from d, then uniform
    matching of out-stubs to in-stubs.

    The i.i.d. draw leaves a stub imbalance of order sqrt(N); it is repaired
    by deleting that many uniformly random stubs from the surplus side, a
    documented O(sqrt(N))/N bias.
    """
    if n_vertices < 1:
        raise ValidationError(f"need at least 1 vertex, got {n_vertices}")
    rng = _as_rng(seed)
    ns, ks = _sample_keys(d.entries, n_vertices, rng)

    vertex_ids = np.arange(n_vertices, dtype=np.int64)
    in_stubs = np.repeat(vertex_ids, ns)
    out_stubs = np.repeat(vertex_ids, ks)
    if in_stubs.size > out_stubs.size:
        keep = in_stubs.size - (in_stubs.size - out_stubs.size)
        in_stubs = rng.permutation(in_stubs)[:keep]
    elif out_stubs.size > in_stubs.size:
        keep = out_stubs.size - (out_stubs.size - in_stubs.size)
        out_stubs = rng.permutation(out_stubs)[:keep]
    if in_stubs.size != out_stubs.size:
        raise Unrealizable("stub repair failed to balance sides")

    src = rng.permutation(out_stubs)
    edges = np.column_stack([src, in_stubs]).astype(np.int64)
    return DirectedMultigraph(n_vertices, edges)


@dataclass
class KmcState:
    """Final per-vertex state of one kinetic run."""

    n_max: np.ndarray
    k_max: np.ndarray
    vacant_in: np.ndarray
    vacant_out: np.ndarray
    t: float
    events: int
    seed: object

    @property
    def in_degrees(self) -> np.ndarray:
        return self.n_max - self.vacant_in

    @property
    def out_degrees(self) -> np.ndarray:
        return self.k_max - self.vacant_out


@dataclass
class KmcResult:
    graph: DirectedMultigraph
    times: np.ndarray
    mu_hat: np.ndarray
    empirical: BivariateDegreeDist
    state: KmcState


def kmc_simulate(
    P: BoundDist,
    n_vertices: int,
    seed,
    *,
    t_end: float | None = None,
    c_n_target: float | None = None,
    record_trajectory: bool = True,
) -> KmcResult:
    """Exact stochastic simulation of the bounded growth process.

    Each step picks a uniformly random admissible ordered pair (distinct
    vertices, vacant out-spot on the tail, vacant in-spot on the head) and
    waits an exponential time at total rate (#admissible pairs)/N, counting
    spot pairs.  Stop at ``t_end``, or at the in-conversion ``c_n_target``
    (raising :class:`Exhausted` if the target cannot be reached), or, with
    neither given, when no admissible pair remains.
    """
    if n_vertices < 2:
        raise ValidationError(f"need at least 2 vertices, got {n_vertices}")
    if t_end is not None and c_n_target is not None:
        raise ValidationError("give at most one of t_end and c_n_target")
    if t_end is not None and t_end < 0:
        raise ValidationError(f"t_end = {t_end!r} is negative")
    if c_n_target is not None and not 0.0 <= c_n_target <= 1.0:
        raise ValidationError(f"c_n_target = {c_n_target!r} outside [0, 1]")

    rng = _as_rng(seed)
    n_max, k_max = _sample_keys(P.entries, n_vertices, rng)
    vin = n_max.copy()
    vout = k_max.copy()

    total_in = int(vin.sum())
    total_out = int(vout.sum())
    in_spots = np.repeat(np.arange(n_vertices, dtype=np.int64), vin)
    out_spots = np.repeat(np.arange(n_vertices, dtype=np.int64), vout)
    v_in = total_in
    v_out = total_out
    blocked = int((vin * vout).sum())  # same-vertex spot pairs

    target_events = None
    if c_n_target is not None:
        target_events = int(round(c_n_target * total_in))
    capacity = min(total_in, total_out) if target_events is None else target_events
    edges = np.empty((max(capacity, 0), 2), dtype=np.int64)
    times = np.empty(max(capacity, 0), dtype=float)

    # Batched uniforms; refilled on demand.  One stream keeps runs
    # reproducible for a given seed regardless of stop condition.
    buf = rng.random(65536)
    pos = 0

    def next_u() -> float:
        nonlocal buf, pos
        if pos == buf.size:
            buf = rng.random(65536)
            pos = 0
        u = buf[pos]
        pos += 1
        return u

    t = 0.0
    events = 0
    while True:
        if target_events is not None and events >= target_events:
            break
        admissible = v_in * v_out - blocked
        if admissible <= 0:
            if target_events is not None:
                raise Exhausted(
                    f"no admissible pair after {events} events; "
                    f"target was {target_events}"
                )
            break
        rate = admissible / n_vertices
        dt = -math.log(1.0 - next_u()) / rate
        if t_end is not None and t + dt > t_end:
            t = t_end
            break
        t += dt

        while True:
            i = int(next_u() * v_out)
            j = int(next_u() * v_in)
            src = int(out_spots[i])
            dst = int(in_spots[j])
            if src != dst:
                break

        # Swap-remove the chosen vacant spot on each endpoint.
        v_out -= 1
        out_spots[i] = out_spots[v_out]
        v_in -= 1
        in_spots[j] = in_spots[v_in]

        blocked -= int(vin[src])
        vout[src] -= 1
        blocked -= int(vout[dst])
        vin[dst] -= 1
        assert vout[src] >= 0 and vin[dst] >= 0

        edges[events, 0] = src
        edges[events, 1] = dst
        times[events] = t
        events += 1

    graph = DirectedMultigraph(n_vertices, edges[:events].copy())
    traj_t = times[:events].copy() if record_trajectory else np.empty(0)
    mu_hat = (
        (np.arange(1, events + 1, dtype=float) / n_vertices)
        if record_trajectory
        else np.empty(0)
    )
    degs = Counter(zip((n_max - vin).tolist(), (k_max - vout).tolist()))
    empirical = BivariateDegreeDist.from_entries(
        [(n, k, c / n_vertices) for (n, k), c in sorted(degs.items())]
    )
    state = KmcState(
        n_max=n_max,
        k_max=k_max,
        vacant_in=vin,
        vacant_out=vout,
        t=t,
        events=events,
        seed=seed,
    )
    return KmcResult(graph=graph, times=traj_t, mu_hat=mu_hat, empirical=empirical, state=state)
