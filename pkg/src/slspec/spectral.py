"""Eigenvalues, the Weyl function m(lam) = y'(L)/y(L), and symmetric doubling.

Eigenvalue localisation works on the rectified endpoint angle from
`shooting.endpoint_angle`, which is continuous and strictly increasing in
lam.  The k-th eigenvalue for a right boundary value b solves

    angle(lam) = k*pi + atan2(1, b)      (finite b)
    angle(lam) = (k + 1)*pi              (b = inf, Dirichlet)

which places it inside the open interval between consecutive Dirichlet
eigenvalues, exactly where m(lam) = b has its unique root: m decreases
strictly from +inf to -inf between consecutive poles.  Root polishing uses
Brent's bisection/secant hybrid on the monotone angle, which stays well
conditioned where m itself blows up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from scipy.optimize import brentq

from . import shooting
from .errors import BracketingError
from .model import (
    DIRICHLET,
    LeftBoundary,
    Potential,
    RationalHerglotz,
    check_right_boundary,
    herglotz_eval,
    symmetric_double,
)

__all__ = [
    "Spectrum",
    "CorrespondencePair",
    "CorrespondenceReport",
    "weyl_m",
    "eigenvalue",
    "spectrum",
    "m_sample",
    "doubled_spectrum",
    "correspondence_check",
]

# |y(L)| below this multiple of the state norm is reported as a pole of m.
_M_POLE_TOL = 1e-13

_BRENTQ_XTOL = 1e-12
_BRENTQ_RTOL = 1e-15
_WINDOW_LIMIT = 1e12


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues lam_0 < lam_1 < ... of one boundary problem."""

    problem: object
    eigenvalues: tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in self.eigenvalues)
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("eigenvalues must be strictly increasing")
        object.__setattr__(self, "eigenvalues", values)

    def items(self) -> list[tuple[int, float]]:
        return list(enumerate(self.eigenvalues))


def weyl_m(q: Potential, left: LeftBoundary, lam: float) -> float:
    """m(lam) = y'(L)/y(L) for the left-boundary solution; +-inf at a pole.

    The sign of an infinite value reflects the side from which the sample
    approaches the pole (m decreases through every pole).
    """
    result = shooting.integrate(q, left, lam)
    y, dy = result.state
    if abs(y) <= _M_POLE_TOL * math.hypot(y, dy):
        frac = result.prufer_angle % math.pi
        return math.inf if frac < 0.5 * math.pi else -math.inf
    return dy / y


def _angle_target(b: float, k: int) -> float:
    if math.isinf(b):
        return (k + 1) * math.pi
    return k * math.pi + math.atan2(1.0, b)


def _solve_increasing(fn, target: float, lo0: float, hi0: float) -> float:
    """Root of fn(lam) = target for continuous strictly increasing fn.

    lo0/hi0 are starting guesses for the bracket; each side is expanded by
    doubling until the sign condition holds.
    """
    lo = lo0
    g_lo = fn(lo) - target
    while g_lo >= 0.0:
        lo = 2.0 * lo if lo < -1.0 else lo - 10.0
        if abs(lo) > _WINDOW_LIMIT:
            raise BracketingError(
                f"no lower bracket for angle target {target:.6g} above lam = {lo:.3g}"
            )
        g_lo = fn(lo) - target
    hi = max(hi0, lo + 1.0)
    g_hi = fn(hi) - target
    while g_hi <= 0.0:
        hi = 2.0 * hi if hi > 1.0 else hi + 10.0
        if hi > _WINDOW_LIMIT:
            raise BracketingError(
                f"no sign change for angle target {target:.6g} in [{lo:.6g}, {hi:.6g}]"
            )
        g_hi = fn(hi) - target
    return brentq(lambda t: fn(t) - target, lo, hi, xtol=_BRENTQ_XTOL, rtol=_BRENTQ_RTOL)


def _default_window(q: Potential, target: float, x_end: float) -> tuple[float, float]:
    bound = q.bound()
    lo = -10.0 * (1.0 + bound)
    hi = bound + ((target + math.pi) / x_end) ** 2 + 1.0
    return lo, hi


def eigenvalue(
    q: Potential,
    left: LeftBoundary,
    b: float,
    k: int,
    *,
    lo_hint: float | None = None,
) -> float:
    """The k-th (k = 0, 1, ...) eigenvalue of the boundary problem (q, left, b).

    For finite b this is the unique root of weyl_m(q, left, .) = b strictly
    between the (k-1)-th and k-th Dirichlet eigenvalues.  `lo_hint` may give
    a known strict lower bound (e.g. the previous eigenvalue) to narrow the
    bracket search.
    """
    b = check_right_boundary(b)
    k = int(k)
    if k < 0:
        raise ValueError("eigenvalue index must be >= 0")
    target = _angle_target(b, k)
    fn = lambda lam: shooting.endpoint_angle(q, left, lam)
    lo0, hi0 = _default_window(q, target, q.length)
    if lo_hint is not None:
        lo0 = lo_hint
    return _solve_increasing(fn, target, lo0, hi0)


def spectrum(q: Potential, left: LeftBoundary, b: float, count_max: int) -> Spectrum:
    """Eigenvalues of index 0..count_max, ascending."""
    if int(count_max) < 0:
        raise ValueError("count_max must be >= 0")
    values = []
    previous = None
    for k in range(int(count_max) + 1):
        values.append(eigenvalue(q, left, b, k, lo_hint=previous))
        previous = values[-1]
    return Spectrum(problem=(q, left, b), eigenvalues=tuple(values))


def m_sample(
    q: Potential, left: LeftBoundary, interval: tuple[float, float], n: int
) -> list[tuple[float, float]]:
    """weyl_m on n equally spaced points covering [lo, hi] inclusive."""
    lo, hi = float(interval[0]), float(interval[1])
    n = int(n)
    if not (lo < hi):
        raise ValueError("interval must satisfy lo < hi")
    if n < 2:
        raise ValueError("need at least 2 sample points")
    step = (hi - lo) / (n - 1)
    samples = []
    for i in range(n):
        lam = hi if i == n - 1 else lo + i * step
        samples.append((lam, weyl_m(q, left, lam)))
    return samples


def _mirror_target_offset(f: RationalHerglotz, lam: float) -> float:
    """Rectified angle level encoding the mirrored condition y'(2pi) = f(lam) y(2pi).

    arccot(f(lam)) decreases from pi to 0 on each branch of f and jumps back
    up at the poles; subtracting pi per pole strictly below lam makes the
    level continuous and strictly decreasing.  At a pole, f = inf means a
    Dirichlet right condition, and atan2(1, inf) = 0 is the right limit.
    """
    acot = math.atan2(1.0, herglotz_eval(f, lam))
    return acot - math.pi * f.poles_strictly_below(lam)


def doubled_spectrum(q: Potential, f: RationalHerglotz, count_max: int) -> Spectrum:
    """Eigenvalues 0..count_max of the reflected problem on (0, 2*pi).

    The potential is extended by q(2*pi - x) and the right condition mirrors
    the left one: y'(2*pi) = f(lam) y(2*pi).  The k-th eigenvalue solves
    angle(lam) - mirror_level(lam) = k*pi, again a strictly increasing
    left-hand side.
    """
    if not isinstance(f, RationalHerglotz):
        raise ValueError("the doubled problem needs a Herglotz left boundary, not Dirichlet")
    if int(count_max) < 0:
        raise ValueError("count_max must be >= 0")
    doubled = symmetric_double(q)
    length = doubled.length

    def fn(lam: float) -> float:
        return shooting.endpoint_angle(doubled, f, lam, length) - _mirror_target_offset(f, lam)

    values = []
    previous = None
    n_poles = len(f.poles)
    for k in range(int(count_max) + 1):
        target = k * math.pi
        lo0 = -10.0 * (1.0 + q.bound()) if previous is None else previous
        hi0 = q.bound() + ((target + math.pi * (2 + 2 * n_poles)) / length) ** 2 + 1.0
        values.append(_solve_increasing(fn, target, lo0, hi0))
        previous = values[-1]
    return Spectrum(problem=(doubled, f, "mirror"), eigenvalues=tuple(values))


@dataclass(frozen=True)
class CorrespondencePair:
    """Doubled eigenvalues of index 2i/2i+1 next to their half-problem partners.

    mu_odd pairs with the i-th Dirichlet (b = inf) eigenvalue, mu_even with
    the i-th b = 0 eigenvalue.  Entries are None where 2i+1 exceeds the
    computed doubled range.
    """

    i: int
    mu_odd: float | None
    lambda_dirichlet: float | None
    mu_even: float
    lambda_neumann: float
    gap_odd: float | None
    gap_even: float


@dataclass(frozen=True)
class CorrespondenceReport:
    pairs: tuple[CorrespondencePair, ...]
    max_gap: float
    tol: float
    passed: bool


def correspondence_check(
    q: Potential, f: RationalHerglotz, count_max: int, tol: float
) -> CorrespondenceReport:
    """Check the doubling correspondence for mu_0..mu_count_max.

    Odd-indexed eigenvalues of the doubled problem must reproduce the
    Dirichlet spectrum of (q, f), even-indexed ones the b = 0 spectrum.
    """
    count_max = int(count_max)
    if count_max < 1:
        raise ValueError("need count_max >= 1 to compare at least one pair")
    tol = float(tol)
    mu = doubled_spectrum(q, f, count_max).eigenvalues
    k_even = count_max // 2
    k_odd = (count_max - 1) // 2
    dirichlet = spectrum(q, f, math.inf, k_odd).eigenvalues
    neumann = spectrum(q, f, 0.0, k_even).eigenvalues
    pairs = []
    gaps = []
    for i in range(k_even + 1):
        mu_even = mu[2 * i]
        gap_even = abs(mu_even - neumann[i])
        gaps.append(gap_even)
        if 2 * i + 1 <= count_max:
            mu_odd = mu[2 * i + 1]
            gap_odd = abs(mu_odd - dirichlet[i])
            gaps.append(gap_odd)
            lam_dir = dirichlet[i]
        else:
            mu_odd = lam_dir = gap_odd = None
        pairs.append(
            CorrespondencePair(i, mu_odd, lam_dir, mu_even, neumann[i], gap_odd, gap_even)
        )
    max_gap = max(gaps)
    return CorrespondenceReport(tuple(pairs), max_gap, tol, max_gap <= tol)
