"""Bivariate degree distributions for directed graphs.

A directed random graph in the configuration-model sense is specified by the
joint law ``u(n, k)`` of (in-degree, out-degree) of a uniformly random
vertex.  This module holds the sparse table type, its partial moments

    mu_ij = sum_{n,k} n^i k^j u(n, k),

the edge-balance check ``mu_10 == mu_01`` (every edge has one head and one
tail, so a consistent law must give both means the same value), the
undirected projection ``d(l) = sum_{n+k=l} u(n, k)``, and the size-biased
laws obtained by following a uniformly random edge.
"""

from __future__ import annotations

import math
import operator
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from . import tableio
from .errors import (
    DuplicateKey,
    EdgeImbalance,
    NegativeIndex,
    NegativeProbability,
    NotNormalized,
    ZeroMeanDegree,
)

#: Default tolerance on |sum(prob) - 1| at construction.
NORM_TOL = 1e-9
#: Default tolerance on |mu_10 - mu_01| relative to max(mu_10, mu_01, 1).
BALANCE_TOL = 1e-9


@dataclass(frozen=True)
class MomentSet:
    """The six partial moments a connectivity analysis needs."""

    mu00: float
    mu10: float
    mu01: float
    mu20: float
    mu02: float
    mu11: float


def _validated_table(pairs, kind: str, tol: float) -> dict:
    table: dict = {}
    for key, prob in pairs:
        if prob < 0:
            raise NegativeProbability(f"{kind}{key} = {prob!r} is negative")
        if prob == 0:
            # zero entries are omitted, not stored
            continue
        if key in table:
            raise DuplicateKey(f"duplicate key {key}")
        table[key] = float(prob)
    total = math.fsum(table.values())
    if abs(total - 1.0) > tol:
        raise NotNormalized(f"probabilities sum to {total!r}, not 1 within {tol:g}")
    return table


@dataclass(frozen=True)
class UnivariateDegreeDist:
    """Sparse law of a single nonnegative integer degree."""

    entries: dict

    @classmethod
    def from_entries(cls, pairs: Iterable[tuple[int, float]], *, tol: float = NORM_TOL) -> "UnivariateDegreeDist":
        checked = []
        for l, prob in pairs:
            l = operator.index(l)
            if l < 0:
                raise NegativeIndex(f"degree {l} is negative")
            checked.append((l, prob))
        return cls(_validated_table(checked, "d", tol))

    def moment(self, i: int) -> float:
        return math.fsum(l**i * p for l, p in self.entries.items())


@dataclass(frozen=True)
class BivariateDegreeDist:
    """Sparse joint law of (in-degree n, out-degree k).

    Construct through :meth:`from_entries`; instances are never mutated.
    Stored probabilities are strictly positive (zero entries are dropped).
    """

    entries: dict

    @classmethod
    def from_entries(
        cls, triples: Iterable[tuple[int, int, float]], *, tol: float = NORM_TOL
    ) -> "BivariateDegreeDist":
        checked = []
        for n, k, prob in triples:
            n = operator.index(n)
            k = operator.index(k)
            if n < 0 or k < 0:
                raise NegativeIndex(f"degree pair ({n}, {k}) has a negative component")
            checked.append(((n, k), prob))
        return cls(_validated_table(checked, "u", tol))

    @classmethod
    def from_text(cls, text: str, *, tol: float = NORM_TOL) -> "BivariateDegreeDist":
        return cls.from_entries(tableio.parse_records(text), tol=tol)

    @classmethod
    def from_file(cls, path: str | Path, *, tol: float = NORM_TOL) -> "BivariateDegreeDist":
        return cls.from_entries(tableio.load_records(path), tol=tol)

    def records(self) -> list[tuple[int, int, float]]:
        """Entries as sorted ``(n, k, prob)`` triples."""
        return [(n, k, self.entries[(n, k)]) for n, k in sorted(self.entries)]

    def to_text(self) -> str:
        return tableio.format_records(self.records())

    def __iter__(self) -> Iterator[tuple[tuple[int, int], float]]:
        return iter(self.entries.items())

    def moment(self, i: int, j: int) -> float:
        """Partial moment ``sum n^i k^j u(n, k)`` (with ``0**0 == 1``)."""
        return math.fsum(n**i * k**j * p for (n, k), p in self.entries.items())

    def moments(self) -> MomentSet:
        return MomentSet(
            mu00=self.moment(0, 0),
            mu10=self.moment(1, 0),
            mu01=self.moment(0, 1),
            mu20=self.moment(2, 0),
            mu02=self.moment(0, 2),
            mu11=self.moment(1, 1),
        )

    def mean_degree(self) -> float:
        """The common edge density mu; meaningful once edge balance holds."""
        return 0.5 * (self.moment(1, 0) + self.moment(0, 1))

    def is_edge_balanced(self, tol: float = BALANCE_TOL) -> bool:
        mu10 = self.moment(1, 0)
        mu01 = self.moment(0, 1)
        return abs(mu10 - mu01) <= tol * max(1.0, mu10, mu01)

    def undirected_projection(self) -> UnivariateDegreeDist:
        """Law of the total degree l = n + k, ignoring edge directions."""
        groups: dict[int, list[float]] = defaultdict(list)
        for (n, k), p in self.entries.items():
            groups[n + k].append(p)
        return UnivariateDegreeDist.from_entries(
            [(l, math.fsum(ps)) for l, ps in sorted(groups.items())]
        )

    def size_biased_in(self) -> "BivariateDegreeDist":
        """Degree law of the vertex reached by following a random edge forward.

        Reweights by in-degree: ``n * u(n, k) / mu_10``.  The in-degree index
        is not shifted; generating-function work shifts it where needed.
        """
        mu10 = self.moment(1, 0)
        if mu10 <= 0:
            raise ZeroMeanDegree("mean in-degree is zero; size-biased law undefined")
        return BivariateDegreeDist.from_entries(
            [(n, k, n * p / mu10) for (n, k), p in self.entries.items() if n > 0]
        )

    def size_biased_out(self) -> "BivariateDegreeDist":
        """Degree law of the vertex an edge leaves from: ``k * u(n, k) / mu_01``."""
        mu01 = self.moment(0, 1)
        if mu01 <= 0:
            raise ZeroMeanDegree("mean out-degree is zero; size-biased law undefined")
        return BivariateDegreeDist.from_entries(
            [(n, k, k * p / mu01) for (n, k), p in self.entries.items() if k > 0]
        )


def require_edge_balanced(d: BivariateDegreeDist, tol: float = BALANCE_TOL) -> None:
    """Raise :class:`EdgeImbalance` unless mean in- and out-degree agree."""
    if not d.is_edge_balanced(tol):
        raise EdgeImbalance(
            f"mean in-degree {d.moment(1, 0)!r} != mean out-degree {d.moment(0, 1)!r} "
            f"beyond tolerance {tol:g}"
        )
