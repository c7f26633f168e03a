"""Shared oracles and input generators for the test suite.

The oracles here deliberately take independent routes from the library:
RK4 integration instead of closed forms, explicit double loops instead of
vectorized evaluation, dyadic-rational probabilities so grouping identities
hold exactly in floating point.
"""

import contextlib
import io
import json
import math
import sys
from importlib import resources

import numpy as np
from hypothesis import strategies as st

from weakgiant import BivariateDegreeDist, BoundDist

DYADIC_SCALE = 2**20


def tv_distance(p: dict, q: dict) -> float:
    keys = set(p) | set(q)
    return 0.5 * math.fsum(abs(p.get(key, 0.0) - q.get(key, 0.0)) for key in keys)


def tv_size_law(w, hist_entries: dict, order: int) -> float:
    """TV between an analytic size law w(1..order) and an empirical histogram,
    lumping everything above the truncation order into one tail bucket."""
    body = math.fsum(
        abs(w[s - 1] - hist_entries.get(s, 0.0)) for s in range(1, order + 1)
    )
    tail_w = max(0.0, 1.0 - math.fsum(w))
    tail_h = math.fsum(p for s, p in hist_entries.items() if s > order)
    return 0.5 * (body + abs(tail_w - tail_h))


def brute_moment(entries: dict, i: int, j: int) -> float:
    """Moment by an explicit accumulation loop (independent of fsum order)."""
    total = 0.0
    for (n, k), p in sorted(entries.items()):
        total += (n**i) * (k**j) * p
    return total


def rk4_mu(nu10, nu01, t_max: float, steps: int) -> np.ndarray:
    """RK4 integration of mu' = (nu01 - mu)(nu10 - mu), mu(0) = 0.

    Accepts arrays of rate pairs; returns shape (steps + 1, len(pairs)).
    """
    nu10 = np.atleast_1d(np.asarray(nu10, dtype=float))
    nu01 = np.atleast_1d(np.asarray(nu01, dtype=float))
    h = t_max / steps

    def f(m):
        return (nu01 - m) * (nu10 - m)

    mu = np.zeros_like(nu10)
    out = np.empty((steps + 1, nu10.size))
    out[0] = mu
    for step in range(1, steps + 1):
        k1 = f(mu)
        k2 = f(mu + 0.5 * h * k1)
        k3 = f(mu + 0.5 * h * k2)
        k4 = f(mu + h * k3)
        mu = mu + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[step] = mu
    return out


def truncated_double_poisson(lam: float, cutoff: int = 30) -> BivariateDegreeDist:
    """Product-Poisson degree law truncated at `cutoff` in each coordinate."""
    row = [math.exp(-lam)]
    for i in range(1, cutoff + 1):
        row.append(row[-1] * lam / i)
    return BivariateDegreeDist.from_entries(
        [(n, k, row[n] * row[k]) for n in range(cutoff + 1) for k in range(cutoff + 1)]
    )


def random_bound_dist(rng: np.random.Generator, n_atoms: int = 3, max_bound: int = 6) -> BoundDist:
    """Random small bound distribution, guaranteed to admit edges."""
    while True:
        keys = set()
        while len(keys) < n_atoms:
            keys.add((int(rng.integers(0, max_bound + 1)), int(rng.integers(0, max_bound + 1))))
        keys = sorted(keys)
        if not any(nm > 0 for nm, _ in keys) or not any(km > 0 for _, km in keys):
            continue
        weights = rng.integers(1, DYADIC_SCALE, size=n_atoms)
        total = int(weights.sum())
        probs = [int(w) / total for w in weights]
        probs[-1] = 1.0 - math.fsum(probs[:-1])
        try:
            return BoundDist.from_entries(
                [(nm, km, p) for (nm, km), p in zip(keys, probs)]
            )
        except Exception:
            continue


# ---------------------------------------------------------------------------
# hypothesis strategies built on dyadic rationals: every probability is an
# integer multiple of 2**-20, so sums and regroupings are exact in binary64.


@st.composite
def dyadic_weights(draw, min_entries=1, max_entries=6):
    n = draw(st.integers(min_entries, max_entries))
    if n == 1:
        return [1.0]
    cuts = sorted(
        draw(
            st.lists(
                st.integers(1, DYADIC_SCALE - 1), min_size=n - 1, max_size=n - 1, unique=True
            )
        )
    )
    bounds = [0] + cuts + [DYADIC_SCALE]
    return [(b - a) / DYADIC_SCALE for a, b in zip(bounds, bounds[1:])]


@st.composite
def bivariate_dists(draw, max_degree=8, max_entries=6):
    probs = draw(dyadic_weights(max_entries=max_entries))
    keys = draw(
        st.lists(
            st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)),
            min_size=len(probs),
            max_size=len(probs),
            unique=True,
        )
    )
    return BivariateDegreeDist.from_entries(
        [(n, k, p) for (n, k), p in zip(keys, probs)]
    )


@st.composite
def symmetrized_dists(draw, max_degree=6):
    """Transpose-symmetric tables: exactly edge-balanced by construction."""
    d = draw(bivariate_dists(max_degree=max_degree))
    table = {}
    for (n, k), p in d.entries.items():
        table[(n, k)] = table.get((n, k), 0.0) + 0.5 * p
        table[(k, n)] = table.get((k, n), 0.0) + 0.5 * p
    return BivariateDegreeDist.from_entries([(n, k, p) for (n, k), p in sorted(table.items())])


@st.composite
def source_sink_dists(draw):
    """Asymmetric but exactly balanced: sources (j, 0), sinks (0, l), filler
    at the origin, with j * P(source) == l * P(sink) exact in binary64."""
    j = draw(st.integers(1, 6))
    l = draw(st.integers(1, 6))
    w = draw(st.integers(1, DYADIC_SCALE // (2 * (j + l))))
    p_source = l * w / DYADIC_SCALE
    p_sink = j * w / DYADIC_SCALE
    p_origin = (DYADIC_SCALE - l * w - j * w) / DYADIC_SCALE
    entries = [(j, 0, p_source), (0, l, p_sink)]
    if p_origin > 0:
        entries.append((0, 0, p_origin))
    return BivariateDegreeDist.from_entries(entries)


def balanced_dists():
    return st.one_of(symmetrized_dists(), source_sink_dists())


@st.composite
def bound_dists(draw, max_bound=6, max_entries=4):
    probs = draw(dyadic_weights(max_entries=max_entries))
    keys = draw(
        st.lists(
            st.tuples(st.integers(0, max_bound), st.integers(0, max_bound)),
            min_size=len(probs),
            max_size=len(probs),
            unique=True,
        ).filter(
            lambda ks: any(nm > 0 for nm, _ in ks) and any(km > 0 for _, km in ks)
        )
    )
    return BoundDist.from_entries([(nm, km, p) for (nm, km), p in zip(keys, probs)])


# ---------------------------------------------------------------------------
# CLI and schema plumbing


def run_cli(argv, stdin_text=None):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    from weakgiant import cli

    stdout, stderr = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    try:
        if stdin_text is not None:
            sys.stdin = io.StringIO(stdin_text)
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            code = cli.main(list(argv))
    finally:
        sys.stdin = old_stdin
    return code, stdout.getvalue(), stderr.getvalue()


def load_schema(name: str) -> dict:
    text = (resources.files("weakgiant") / "schemas" / f"{name}.schema.json").read_text()
    return json.loads(text)


def validate_schema(name: str, obj) -> None:
    import jsonschema

    jsonschema.validate(obj, load_schema(name))
