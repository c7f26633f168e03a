"""Moment criteria for giant components of directed random graphs.

For an edge-balanced law ``u(n, k)`` with common mean ``mu`` the existence
of a giant *weak* component is read off a single determinant of partial
moments,

    D = (mu - mu_11)^2 - (mu_20 - mu)(mu_02 - mu),

which is negative exactly in the supercritical phase.  Two sign conventions
for this quantity circulate; reports carry both ``determinant_D`` (as above)
and its negative ``paper_A``, and the mean-size formula below uses the
convention that keeps the subcritical mean positive.

The other two classical thresholds are special cases of the same moment
algebra: giant in/out components appear when ``mu_11 > mu`` (the
Newman-Strogatz-Watts condition for each direction; either both in- and
out-giants exist or neither does under edge balance), and ignoring edge
directions reduces ``D < 0`` to the Molloy-Reed criterion
``mu_2 - 2 mu_1 > 0`` for the projected total-degree law.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gfsolver
from .degdist import BALANCE_TOL, BivariateDegreeDist, MomentSet, require_edge_balanced
from .errors import Supercritical


@dataclass(frozen=True)
class ConnectivityReport:
    """All connectivity verdicts for one degree distribution."""

    moments: MomentSet
    determinant_D: float
    paper_A: float
    giant_weak: bool
    giant_in_out: bool
    giant_undirected_projection: bool
    mean_weak_size: float | None
    giant_weak_fraction: float | None

    def to_json_dict(self) -> dict:
        m = self.moments
        return {
            "moments": {
                "mu00": m.mu00,
                "mu10": m.mu10,
                "mu01": m.mu01,
                "mu20": m.mu20,
                "mu02": m.mu02,
                "mu11": m.mu11,
            },
            "determinant_D": self.determinant_D,
            "paper_A": self.paper_A,
            "giant_weak": self.giant_weak,
            "giant_in_out": self.giant_in_out,
            "giant_undirected_projection": self.giant_undirected_projection,
            "mean_weak_size": self.mean_weak_size,
            "giant_weak_fraction": self.giant_weak_fraction,
        }


def _mu(m: MomentSet) -> float:
    # Edge balance makes mu10 and mu01 agree to tolerance; use their mean.
    return 0.5 * (m.mu10 + m.mu01)


def criticality_determinant(d: BivariateDegreeDist, *, balance_tol: float = BALANCE_TOL) -> float:
    """The determinant D; D < 0 signals a giant weak component."""
    require_edge_balanced(d, balance_tol)
    m = d.moments()
    mu = _mu(m)
    return (mu - m.mu11) ** 2 - (m.mu20 - mu) * (m.mu02 - mu)


def has_giant_weak(d: BivariateDegreeDist, *, balance_tol: float = BALANCE_TOL) -> bool:
    """True when a giant weak component exists.

    Supercritical means D < 0, or D = 0 reached from the in/out-giant side
    (``mu_11 > mu``), which keeps boundary laws such as the pure (2, 2) atom
    classified as supercritical.
    """
    require_edge_balanced(d, balance_tol)
    m = d.moments()
    mu = _mu(m)
    D = (mu - m.mu11) ** 2 - (m.mu20 - mu) * (m.mu02 - mu)
    return D < 0.0 or m.mu11 - mu > 0.0


def has_giant_in_out(d: BivariateDegreeDist, *, balance_tol: float = BALANCE_TOL) -> bool:
    """True when giant in- and out-components exist (``mu_11 > mu``)."""
    require_edge_balanced(d, balance_tol)
    m = d.moments()
    return m.mu11 - _mu(m) > 0.0


def has_giant_undirected_projection(
    d: BivariateDegreeDist, *, balance_tol: float = BALANCE_TOL
) -> bool:
    """Molloy-Reed test on the total-degree law, written in (n, k) moments:
    ``2 mu_11 + mu_02 + mu_20 - 4 mu > 0``."""
    require_edge_balanced(d, balance_tol)
    m = d.moments()
    return 2.0 * m.mu11 + m.mu02 + m.mu20 - 4.0 * _mu(m) > 0.0


def mean_weak_component_size(
    d: BivariateDegreeDist, *, balance_tol: float = BALANCE_TOL
) -> float:
    """Expected weak-component size of a uniformly random vertex,

        W'(1) = 1 + mu^2 (mu_02 + mu_20 - 2 mu_11) / D,

    finite only while D > 0.  A law with no edges has mean exactly 1.
    """
    require_edge_balanced(d, balance_tol)
    m = d.moments()
    mu = _mu(m)
    if mu == 0.0:
        return 1.0
    D = (mu - m.mu11) ** 2 - (m.mu20 - mu) * (m.mu02 - mu)
    if D <= 0.0:
        raise Supercritical(f"mean weak-component size diverges (D = {D!r} <= 0)")
    return 1.0 + mu * mu * (m.mu02 + m.mu20 - 2.0 * m.mu11) / D


def criteria_report(d: BivariateDegreeDist, *, balance_tol: float = BALANCE_TOL) -> ConnectivityReport:
    """Evaluate every criterion once and bundle the results.

    ``mean_weak_size`` is null in the supercritical phase;
    ``giant_weak_fraction`` is null in the subcritical phase (where it would
    be zero) and otherwise comes from the generating-function fixed point.
    Non-convergence of that fixed point propagates.
    """
    require_edge_balanced(d, balance_tol)
    m = d.moments()
    mu = _mu(m)
    D = (mu - m.mu11) ** 2 - (m.mu20 - mu) * (m.mu02 - mu)
    giant_weak = D < 0.0 or m.mu11 - mu > 0.0
    if mu == 0.0:
        mean: float | None = 1.0
    elif D > 0.0:
        mean = 1.0 + mu * mu * (m.mu02 + m.mu20 - 2.0 * m.mu11) / D
    else:
        mean = None
    fraction = (
        gfsolver.giant_weak_fraction(d, balance_tol=balance_tol) if giant_weak else None
    )
    return ConnectivityReport(
        moments=m,
        determinant_D=D,
        paper_A=-D,
        giant_weak=giant_weak,
        giant_in_out=m.mu11 - mu > 0.0,
        giant_undirected_projection=2.0 * m.mu11 + m.mu02 + m.mu20 - 4.0 * mu > 0.0,
        mean_weak_size=mean,
        giant_weak_fraction=fraction,
    )
