"""Fixed-step shooting integration with oscillation bookkeeping.

The solver propagates (y, y') of -y'' + q y = lam y from the left endpoint
with a classical fourth-order Runge-Kutta scheme and tracks the continuous
phase angle theta = atan2(y, y') alongside.  The angle is what makes robust
eigenvalue indexing possible: for a fixed boundary problem it increases
strictly with lam, and each eigenvalue corresponds to one crossing of a
target level.

All functions here are pure; concurrent calls over different lam values are
safe and are the intended parallelization axis.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from numba import njit

from .errors import AmbiguousCountError, DomainError, IntegrationError
from .model import (
    DIRICHLET,
    LeftBoundary,
    Potential,
    SolutionState,
    canonical_state,
    check_right_boundary,
    herglotz_pair,
)

__all__ = ["BASE_STEPS", "ShootResult", "integrate", "endpoint_angle", "count_eigenvalues_below"]

# Step count over a length-pi domain at |lam| <= 1; scaled by sqrt(|lam|) so
# oscillatory solutions stay resolved at roughly constant points per period.
BASE_STEPS = 2000

# Renormalization bounds for the propagated state norm.
_NORM_LO = 1e-6
_NORM_HI = 1e6


class ShootResult(NamedTuple):
    state: SolutionState
    prufer_angle: float
    steps: int


@njit(cache=True)
def _q_value(kind, vals, length, x):
    if kind == 0:  # cosine series sum c_m cos(m x)
        total = 0.0
        for m in range(vals.shape[0]):
            total += vals[m] * math.cos(m * x)
        return total
    if kind == 1:  # piecewise-constant cells
        i = int(x * vals.shape[0] / length)
        if i < 0:
            i = 0
        elif i >= vals.shape[0]:
            i = vals.shape[0] - 1
        return vals[i]
    # uniform grid, linear interpolation
    t = x * (vals.shape[0] - 1) / length
    i = int(t)
    if i < 0:
        i = 0
    elif i > vals.shape[0] - 2:
        i = vals.shape[0] - 2
    frac = t - i
    return vals[i] * (1.0 - frac) + vals[i + 1] * frac


@njit(cache=True)
def _shoot(kind, vals, length, lam, x_end, n_steps, y0, dy0):
    h = x_end / n_steps
    y = y0
    dy = dy0
    theta = math.atan2(y0, dy0)
    prev_raw = theta
    for i in range(n_steps):
        x0 = i * h
        xm = x0 + 0.5 * h
        x1 = x0 + h
        a0 = _q_value(kind, vals, length, x0) - lam
        am = _q_value(kind, vals, length, xm) - lam
        a1 = _q_value(kind, vals, length, x1) - lam
        k1y = dy
        k1d = a0 * y
        y2 = y + 0.5 * h * k1y
        d2 = dy + 0.5 * h * k1d
        k2y = d2
        k2d = am * y2
        y3 = y + 0.5 * h * k2y
        d3 = dy + 0.5 * h * k2d
        k3y = d3
        k3d = am * y3
        y4 = y + h * k3y
        d4 = dy + h * k3d
        k4y = d4
        k4d = a1 * y4
        y = y + h * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
        dy = dy + h * (k1d + 2.0 * k2d + 2.0 * k3d + k4d) / 6.0
        norm = math.hypot(y, dy)
        if not (norm > 0.0 and math.isfinite(norm)):
            return y, dy, theta, 1
        raw = math.atan2(y, dy)
        delta = raw - prev_raw
        if delta > math.pi:
            delta -= 2.0 * math.pi
        elif delta <= -math.pi:
            delta += 2.0 * math.pi
        theta += delta
        prev_raw = raw
        if norm < _NORM_LO or norm > _NORM_HI:
            # positive rescaling keeps the angle untouched
            y /= norm
            dy /= norm
    return y, dy, theta, 0


def _step_count(lam: float, x_end: float) -> int:
    steps = BASE_STEPS * (x_end / math.pi) * max(1.0, math.sqrt(abs(lam)))
    return max(8, int(math.ceil(steps)))


def integrate(
    q: Potential,
    left: LeftBoundary,
    lam: float,
    x_end: float | None = None,
    init: SolutionState | None = None,
) -> ShootResult:
    """Propagate the left-boundary solution to x_end (default: the full domain).

    Returns the canonically normalised endpoint state together with the
    continuous phase angle theta(x_end), where theta(0) = atan2(y(0), y'(0))
    lies in [0, pi) for the default initial state.  `init` overrides the
    initial state; any nonzero multiple yields the same normalised endpoint
    state and the same angle modulo pi.
    """
    lam = float(lam)
    if not math.isfinite(lam):
        raise ValueError("lam must be finite")
    if x_end is None:
        x_end = q.length
    x_end = float(x_end)
    if not (0.0 < x_end <= q.length * (1.0 + 1e-12)):
        raise DomainError(f"x_end = {x_end:g} outside (0, {q.length:g}]")
    if init is None:
        init = herglotz_pair(left, lam)
    y0, dy0 = float(init[0]), float(init[1])
    if y0 == 0.0 and dy0 == 0.0:
        raise ValueError("initial state must be nonzero")
    n_steps = _step_count(lam, x_end)
    y, dy, theta, status = _shoot(
        q.kind_code, q.values, q.length, lam, x_end, n_steps, y0, dy0
    )
    if status != 0:
        raise IntegrationError(
            f"state became non-finite at lam = {lam:g} (|q| <= {q.bound():g}); "
            "step size too large for this problem"
        )
    return ShootResult(canonical_state(y, dy), theta, n_steps)


def endpoint_angle(q: Potential, left: LeftBoundary, lam: float, x_end: float | None = None) -> float:
    """Pole-rectified endpoint phase angle, strictly increasing in lam.

    The raw angle theta(x_end, lam) increases in lam except for a downward
    jump of pi whenever lam crosses a pole of f, where the initial state
    wraps from near (0-, -1) back through (0, 1).  Adding pi per pole at or
    below lam removes the jumps and yields a continuous, strictly increasing
    function whose crossings of target levels enumerate the eigenvalues.
    """
    result = integrate(q, left, lam, x_end)
    if left is DIRICHLET:
        return result.prufer_angle
    return result.prufer_angle + math.pi * left.poles_at_or_below(lam)


def _right_angle_offset(b: float) -> float:
    """Angle level in (0, pi] encoding y'(L) = b y(L); pi for Dirichlet."""
    if math.isinf(b):
        return math.pi
    return math.atan2(1.0, b)


def _count_at(q: Potential, left: LeftBoundary, b: float, lam: float) -> int:
    theta = endpoint_angle(q, left, lam)
    if math.isinf(b):
        return max(0, int(math.floor(theta / math.pi)))
    beta = _right_angle_offset(b)
    if theta <= beta:
        return 0
    return int(math.floor((theta - beta) / math.pi)) + 1


def count_eigenvalues_below(q: Potential, left: LeftBoundary, b: float, lam: float) -> int:
    """Number of eigenvalues of (q, left, b) strictly below lam.

    Raises AmbiguousCountError when lam lies within 1e-10 of an eigenvalue,
    where "strictly below" is numerically meaningless.
    """
    b = check_right_boundary(b)
    lam = float(lam)
    delta = 1e-10
    below = _count_at(q, left, b, lam - delta)
    above = _count_at(q, left, b, lam + delta)
    if below != above:
        raise AmbiguousCountError(
            f"lam = {lam!r} is within {delta:g} of eigenvalue #{below}; count is ambiguous"
        )
    return below
