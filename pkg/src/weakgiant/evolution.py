"""Bounded-degree random growth of a directed graph, solved in closed form.

Vertices carry capacities ``(n_max, k_max)`` drawn once from a bound
distribution ``P``.  Edges appear one at a time, each step choosing a
uniformly random ordered pair of distinct vertices with a vacant in-spot on
the head and a vacant out-spot on the tail.  With time scaled so that the
pair-proposal rate per vertex is constant, the edge density mu(t) obeys

    mu'(t) = (nu_01 - mu)(nu_10 - mu),     mu(0) = 0,

where ``nu_ij`` are moments of ``P``.  Everything else follows from mu:
per-vertex in-spots fill independently with probability ``c_n = mu/nu_10``
(and out-spots with ``c_k = mu/nu_01``), so the degree law at time t is a
mixture over capacity classes of products of two binomials.  Substituting
its moments into the giant-weak-component determinant turns the phase
boundary into a quadratic in ``c_n``, giving a closed-form critical
conversion and, through the inverse of mu(t), a critical time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from operator import index as _as_index
from typing import Iterable, Sequence

from . import tableio
from .degdist import BivariateDegreeDist, NORM_TOL
from .errors import (
    ConversionOutOfRange,
    DuplicateKey,
    NegativeIndex,
    NegativeProbability,
    NegativeTime,
    NoReactivePair,
    NotNormalized,
    ValidationError,
)

#: Relative width of the band around the conversion supremum classified as
#: an asymptotic (infinite-time) transition.
ASYMPTOTIC_BAND = 1e-12
#: Relative threshold below which nu_10 and nu_01 are treated as equal and
#: the symmetric closed form of mu(t) is used.
SYMMETRIC_SWITCH = 1e-12


@dataclass(frozen=True)
class NuMoments:
    """Capacity moments ``nu_ij = sum n_max^i k_max^j P(n_max, k_max)``."""

    nu10: float
    nu01: float
    nu20: float
    nu02: float
    nu11: float


@dataclass(frozen=True)
class BoundDist:
    """Distribution of per-vertex capacities ``(n_max, k_max)``.

    Valid tables carry at least one class with in-capacity and one with
    out-capacity; otherwise no edge can ever form and construction fails.
    """

    entries: dict

    @classmethod
    def from_entries(
        cls, triples: Iterable[tuple[int, int, float]], *, tol: float = NORM_TOL
    ) -> "BoundDist":
        table: dict = {}
        for n_max, k_max, prob in triples:
            n_max = _as_index(n_max)
            k_max = _as_index(k_max)
            if n_max < 0 or k_max < 0:
                raise NegativeIndex(f"bound pair ({n_max}, {k_max}) has a negative component")
            if prob < 0:
                raise NegativeProbability(f"P({n_max}, {k_max}) = {prob!r} is negative")
            if prob == 0:
                continue
            if (n_max, k_max) in table:
                raise DuplicateKey(f"duplicate bound pair ({n_max}, {k_max})")
            table[(n_max, k_max)] = float(prob)
        total = math.fsum(table.values())
        if abs(total - 1.0) > tol:
            raise NotNormalized(f"bound probabilities sum to {total!r}, not 1 within {tol:g}")
        if not any(nm > 0 for nm, _km in table):
            raise NoReactivePair("no class has in-capacity; no edge can ever form")
        if not any(km > 0 for _nm, km in table):
            raise NoReactivePair("no class has out-capacity; no edge can ever form")
        return cls(table)

    @classmethod
    def from_text(cls, text: str, *, tol: float = NORM_TOL) -> "BoundDist":
        return cls.from_entries(tableio.parse_records(text), tol=tol)

    @classmethod
    def from_file(cls, path, *, tol: float = NORM_TOL) -> "BoundDist":
        return cls.from_entries(tableio.load_records(path), tol=tol)

    def records(self) -> list[tuple[int, int, float]]:
        return [(n, k, self.entries[(n, k)]) for n, k in sorted(self.entries)]


@dataclass(frozen=True)
class FullDegreeState:
    """Joint law of ``(n, k, n_max, k_max)`` at one instant of the process."""

    entries: dict
    t: float


@dataclass(frozen=True)
class TransitionClass:
    """Verdict on when (if ever) the giant weak component appears.

    ``kind`` is one of ``"finite"`` (crossed at the attached conversions and
    time), ``"asymptotic"`` (reached only as t -> infinity), ``"never"``.
    """

    kind: str
    c_n_crit: float | None = None
    c_k_crit: float | None = None
    t_crit: float | None = None


def nu_moments(P: BoundDist) -> NuMoments:
    items = P.entries.items()
    return NuMoments(
        nu10=math.fsum(nm * p for (nm, km), p in items),
        nu01=math.fsum(km * p for (nm, km), p in items),
        nu20=math.fsum(nm * nm * p for (nm, km), p in items),
        nu02=math.fsum(km * km * p for (nm, km), p in items),
        nu11=math.fsum(nm * km * p for (nm, km), p in items),
    )


def _is_symmetric(nu: NuMoments) -> bool:
    return abs(nu.nu01 - nu.nu10) <= SYMMETRIC_SWITCH * max(nu.nu01, nu.nu10)


def _mu_of_t(nu: NuMoments, t: float) -> float:
    if t < 0:
        raise NegativeTime(f"t = {t!r} is negative")
    if not math.isfinite(t):
        raise ValidationError(f"t = {t!r} must be finite")
    if _is_symmetric(nu):
        v = 0.5 * (nu.nu01 + nu.nu10)
        return v * v * t / (1.0 + v * t)
    a, b = nu.nu01, nu.nu10
    x = (b - a) * t
    # Overflow-free rational forms of  a b (e^x - 1) / (b e^x - a).
    if x >= 0.0:
        em = math.expm1(-x)  # in (-1, 0]
        return a * b * (-em) / ((b - a) - a * em)
    em = math.expm1(x)  # in (-1, 0)
    return a * b * em / ((b - a) + b * em)


def mu_of_t(P: BoundDist, t: float) -> float:
    """Edge density at time t; increasing, with supremum min(nu_01, nu_10)."""
    return _mu_of_t(nu_moments(P), t)


def conversions(P: BoundDist, t: float) -> tuple[float, float]:
    """Filled fractions ``(c_n, c_k)`` of in- and out-spots at time t."""
    nu = nu_moments(P)
    m = _mu_of_t(nu, t)
    return min(m / nu.nu10, 1.0), min(m / nu.nu01, 1.0)


def _sup_conversions(nu: NuMoments) -> tuple[float, float]:
    if nu.nu01 >= nu.nu10:
        return 1.0, nu.nu10 / nu.nu01
    return nu.nu01 / nu.nu10, 1.0


def conversion_sup(P: BoundDist) -> tuple[float, float]:
    """Supremum of (c_n, c_k) as t -> infinity.

    The scarcer spot species fills completely; the other saturates at the
    capacity ratio.
    """
    return _sup_conversions(nu_moments(P))


def _binom_pmf(m: int, j: int, c: float) -> float:
    return math.comb(m, j) * c**j * (1.0 - c) ** (m - j)


def _state_entries(P: BoundDist, c_n: float, c_k: float) -> dict:
    entries: dict = {}
    for (nm, km), p in sorted(P.entries.items()):
        for n in range(nm + 1):
            pn = _binom_pmf(nm, n, c_n)
            if pn == 0.0:
                continue
            for k in range(km + 1):
                q = p * pn * _binom_pmf(km, k, c_k)
                if q > 0.0:
                    entries[(n, k, nm, km)] = q
    return entries


def degree_state_at(P: BoundDist, t: float) -> FullDegreeState:
    """Joint (n, k, n_max, k_max) law at time t: per capacity class, spots
    fill independently, Binomial(n_max, c_n) x Binomial(k_max, c_k)."""
    c_n, c_k = conversions(P, t)
    return FullDegreeState(_state_entries(P, c_n, c_k), t)


def degree_state_at_conversion(P: BoundDist, c_n: float) -> FullDegreeState:
    """Same state indexed by in-conversion; ``t`` is inf at the supremum."""
    nu = nu_moments(P)
    sup_cn, _ = _sup_conversions(nu)
    if not 0.0 <= c_n <= sup_cn * (1.0 + 1e-12):
        raise ConversionOutOfRange(f"c_n = {c_n!r} outside [0, {sup_cn!r}]")
    c_n = min(c_n, sup_cn, 1.0)
    c_k = min(c_n * nu.nu10 / nu.nu01, 1.0)
    if c_n < sup_cn:
        t = _time_of_conversion(nu, c_n)
    else:
        t = math.inf
    return FullDegreeState(_state_entries(P, c_n, c_k), t)


def marginal_degree_dist(state: FullDegreeState) -> BivariateDegreeDist:
    """Degree law u(n, k) obtained by summing the state over capacities."""
    groups: dict[tuple[int, int], list[float]] = {}
    for (n, k, _nm, _km), p in state.entries.items():
        groups.setdefault((n, k), []).append(p)
    return BivariateDegreeDist.from_entries(
        [(n, k, math.fsum(ps)) for (n, k), ps in sorted(groups.items())]
    )


def asymptotic_dist(P: BoundDist) -> BivariateDegreeDist:
    """Degree law in the t -> infinity limit.

    With symmetric capacity means every spot fills: the bound table itself,
    reread as a degree table.  Otherwise the scarcer side saturates and the
    other side stays binomial at the capacity ratio.
    """
    nu = nu_moments(P)
    sup_cn, sup_ck = _sup_conversions(nu)
    if _is_symmetric(nu):
        return BivariateDegreeDist.from_entries([(nm, km, p) for (nm, km), p in sorted(P.entries.items())])
    state = FullDegreeState(_state_entries(P, sup_cn, sup_ck), math.inf)
    return marginal_degree_dist(state)


def mu_moments_at(P: BoundDist, c_n: float) -> tuple[float, float, float]:
    """Closed-form (mu_20, mu_02, mu_11) of the degree law at conversion c_n:

        mu_20 = c_n nu_10 (1 - c_n) + c_n^2 nu_20,
        mu_02 = c_k nu_01 (1 - c_k) + c_k^2 nu_02,
        mu_11 = c_n c_k nu_11.
    """
    nu = nu_moments(P)
    sup_cn, _ = _sup_conversions(nu)
    if not 0.0 <= c_n <= sup_cn * (1.0 + 1e-12):
        raise ConversionOutOfRange(f"c_n = {c_n!r} outside [0, {sup_cn!r}]")
    c_n = min(c_n, sup_cn, 1.0)
    c_k = min(c_n * nu.nu10 / nu.nu01, 1.0)
    mu20 = c_n * nu.nu10 * (1.0 - c_n) + c_n * c_n * nu.nu20
    mu02 = c_k * nu.nu01 * (1.0 - c_k) + c_k * c_k * nu.nu02
    mu11 = c_n * c_k * nu.nu11
    return mu20, mu02, mu11


def _critical_conversion(nu: NuMoments) -> tuple[float, float] | None:
    radicand = (nu.nu02 - nu.nu01) * (nu.nu20 - nu.nu10)
    if radicand < 0.0:
        # Impossible for integer-valued capacities in exact arithmetic;
        # tiny negatives are roundoff.
        if radicand < -1e-12 * max(1.0, nu.nu02 * nu.nu20):
            return None
        radicand = 0.0
    den = nu.nu11 + math.sqrt(radicand)
    if den <= 0.0:
        return None
    return nu.nu01 / den, nu.nu10 / den


def critical_conversion(P: BoundDist) -> tuple[float, float] | None:
    """Conversions ``(c_n_crit, c_k_crit)`` where D hits zero,

        c_n_crit = nu_01 / (nu_11 + sqrt((nu_02 - nu_01)(nu_20 - nu_10))),

    or None when no real positive root exists.  The value may lie at or past
    the reachable supremum; see :func:`transition_class`.
    """
    return _critical_conversion(nu_moments(P))


def _time_of_conversion(nu: NuMoments, c_n: float) -> float:
    if _is_symmetric(nu):
        v = 0.5 * (nu.nu01 + nu.nu10)
        return c_n / (v * (1.0 - c_n))
    a, b = nu.nu01, nu.nu10  # mu(t) -> min(a, b)
    # Inverting mu(t): t = log((1-c) a / (a - c b)) / (b - a), written with
    # log1p to stay accurate when a and b nearly coincide.
    return math.log1p(c_n * (b - a) / (a - c_n * b)) / (b - a)


def time_of_conversion(P: BoundDist, c_n: float) -> float:
    """Time at which the in-conversion reaches ``c_n`` (must be < sup)."""
    nu = nu_moments(P)
    sup_cn, _ = _sup_conversions(nu)
    if not 0.0 <= c_n < sup_cn:
        raise ConversionOutOfRange(f"c_n = {c_n!r} outside [0, {sup_cn!r})")
    return _time_of_conversion(nu, c_n)


def _classify(nu: NuMoments) -> TransitionClass:
    crit = _critical_conversion(nu)
    if crit is None:
        return TransitionClass("never")
    c_n_crit, c_k_crit = crit
    sup_cn, _ = _sup_conversions(nu)
    band = ASYMPTOTIC_BAND * max(1.0, sup_cn)
    if c_n_crit < sup_cn - band:
        return TransitionClass(
            "finite", c_n_crit=c_n_crit, c_k_crit=c_k_crit, t_crit=_time_of_conversion(nu, c_n_crit)
        )
    if c_n_crit <= sup_cn + band:
        return TransitionClass("asymptotic")
    return TransitionClass("never")


def transition_class(P: BoundDist) -> TransitionClass:
    """Classify the process: does the giant weak component appear at a finite
    time, only asymptotically, or never?

    Finite-time means the critical conversion is strictly inside the
    reachable range; landing on the supremum (within a relative band of
    1e-12) is the asymptotic marginal case.  This conversion-based test also
    covers boundary capacity tables, e.g. the pure (2, 2) atom, where the
    quadratic evaluated at full conversion vanishes even though the
    transition happened strictly earlier.
    """
    return _classify(nu_moments(P))


@dataclass(frozen=True)
class BarycentricPoint:
    """One lattice point of a three-atom mixture simplex."""

    f1: float
    f2: float
    f3: float
    transition: TransitionClass


def barycentric_grid(
    atoms: Sequence[tuple[int, int]], resolution: int
) -> list[BarycentricPoint]:
    """Classify every mixture ``f1 A1 + f2 A2 + f3 A3`` on the barycentric
    lattice with spacing 1/resolution, row-major in (j1, j2).

    Lattice points where one capacity species is absent (``nu_10 = 0`` or
    ``nu_01 = 0``) are classified ``never`` directly, since such tables
    admit no edges and never form a giant component.
    """
    if len(atoms) != 3:
        raise ValidationError(f"need exactly 3 atoms, got {len(atoms)}")
    cleaned = []
    for nm, km in atoms:
        nm, km = _as_index(nm), _as_index(km)
        if nm < 0 or km < 0:
            raise NegativeIndex(f"atom ({nm}, {km}) has a negative component")
        cleaned.append((nm, km))
    if resolution < 2:
        raise ValidationError(f"resolution {resolution} too coarse; need >= 2")

    m = resolution
    points = []
    for j1 in range(m + 1):
        for j2 in range(m - j1 + 1):
            j3 = m - j1 - j2
            weights = (j1 / m, j2 / m, j3 / m)
            mix: dict[tuple[int, int], float] = {}
            for atom, w in zip(cleaned, weights):
                if w > 0.0:
                    mix[atom] = mix.get(atom, 0.0) + w
            items = mix.items()
            nu = NuMoments(
                nu10=math.fsum(nm * p for (nm, km), p in items),
                nu01=math.fsum(km * p for (nm, km), p in items),
                nu20=math.fsum(nm * nm * p for (nm, km), p in items),
                nu02=math.fsum(km * km * p for (nm, km), p in items),
                nu11=math.fsum(nm * km * p for (nm, km), p in items),
            )
            if nu.nu10 == 0.0 or nu.nu01 == 0.0:
                cls = TransitionClass("never")
            else:
                cls = _classify(nu)
            points.append(BarycentricPoint(weights[0], weights[1], weights[2], cls))
    return points
