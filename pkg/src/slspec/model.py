"""Domain types for the boundary-value problem -y'' + q(x) y = lam * y.

A problem lives on (0, L) with L = pi (or 2*pi after doubling).  The left
boundary condition is y'(0) = -f(lam) * y(0) where f is a rational
Herglotz-Nevanlinna function, or the Dirichlet condition y(0) = 0.  The
right condition is y'(L) = b * y(L) with b a real number; b = math.inf
encodes the Dirichlet condition y(L) = 0.

Solution states (y, y') carry meaning only up to a nonzero scalar factor.
The canonical representative has unit Euclidean norm and its first nonzero
coordinate positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import DomainError

__all__ = [
    "PI",
    "SolutionState",
    "canonical_state",
    "DIRICHLET",
    "RationalHerglotz",
    "LeftBoundary",
    "Potential",
    "herglotz_eval",
    "herglotz_pair",
    "potential_eval",
    "symmetric_double",
    "check_right_boundary",
]

PI = math.pi

# Relative tolerance for deciding that a lam arriving from root-finding sits
# on a pole of f.  Exact equality alone would miss the last-bit neighbours
# that bisection produces.
POLE_RTOL = 1e-12


class SolutionState(NamedTuple):
    """Value and derivative (y, y') of a solution at a point, up to scale."""

    y: float
    dy: float


def canonical_state(y: float, dy: float) -> SolutionState:
    """Scale (y, dy) to unit norm with the first nonzero coordinate positive."""
    norm = math.hypot(y, dy)
    if norm == 0.0 or not math.isfinite(norm):
        raise ValueError("solution state must be finite and nonzero")
    scale = 1.0 / norm
    if y < 0.0 or (y == 0.0 and dy < 0.0):
        scale = -scale
    out_y = y * scale
    return SolutionState(abs(out_y) if out_y == 0.0 else out_y, dy * scale)


class _Dirichlet:
    """Marker for the left Dirichlet condition y(0) = 0."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DIRICHLET"


DIRICHLET = _Dirichlet()


@dataclass(frozen=True)
class RationalHerglotz:
    """Rational Herglotz-Nevanlinna function slope*lam + const + sum w/(d - lam).

    The slope is nonnegative, every weight w is strictly positive and the pole
    locations d are real and pairwise distinct, which together make the
    imaginary part nonnegative on the upper half-plane.
    """

    slope: float = 0.0
    const: float = 0.0
    poles: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        slope = float(self.slope)
        const = float(self.const)
        poles = tuple((float(w), float(d)) for w, d in self.poles)
        if not (math.isfinite(slope) and slope >= 0.0):
            raise ValueError("slope must be finite and >= 0")
        if not math.isfinite(const):
            raise ValueError("constant term must be finite")
        locations = [d for _, d in poles]
        for w, d in poles:
            if not (math.isfinite(w) and w > 0.0):
                raise ValueError("pole weights must be finite and > 0")
            if not math.isfinite(d):
                raise ValueError("pole locations must be finite")
        if len(set(locations)) != len(locations):
            raise ValueError("pole locations must be pairwise distinct")
        object.__setattr__(self, "slope", slope)
        object.__setattr__(self, "const", const)
        object.__setattr__(self, "poles", poles)

    @property
    def pole_locations(self) -> tuple[float, ...]:
        return tuple(d for _, d in self.poles)

    def pole_near(self, lam: float) -> float | None:
        """Location of the pole that lam sits on, or None."""
        for d in self.pole_locations:
            if lam == d or abs(lam - d) <= POLE_RTOL * max(1.0, abs(lam), abs(d)):
                return d
        return None

    def poles_at_or_below(self, lam: float) -> int:
        """Number of poles d <= lam, counting a pole lam sits on."""
        count = 0
        for d in self.pole_locations:
            if d <= lam or abs(lam - d) <= POLE_RTOL * max(1.0, abs(lam), abs(d)):
                count += 1
        return count

    def poles_strictly_below(self, lam: float) -> int:
        """Number of poles d < lam, excluding a pole lam sits on."""
        count = 0
        for d in self.pole_locations:
            if d < lam and abs(lam - d) > POLE_RTOL * max(1.0, abs(lam), abs(d)):
                count += 1
        return count


LeftBoundary = Union[_Dirichlet, RationalHerglotz]


def herglotz_eval(f: RationalHerglotz, lam):
    """Evaluate f at lam; returns math.inf at a pole.

    Accepts complex lam as well (used for half-plane positivity checks);
    pole snapping applies only on the real axis.
    """
    if not isinstance(lam, complex):
        lam = float(lam)
        if f.pole_near(lam) is not None:
            return math.inf
    value = f.slope * lam + f.const
    for w, d in f.poles:
        value += w / (d - lam)
    return value


def herglotz_pair(left: LeftBoundary, lam: float) -> SolutionState:
    """Initial state (y(0), y'(0)) realising the left boundary condition.

    For f = P/Q in cleared-denominator form the pair is (Q(lam), -P(lam))
    canonically normalised, so it stays finite across poles of f; at a pole
    (and for DIRICHLET) it degenerates to (0, 1).
    """
    if left is DIRICHLET:
        return SolutionState(0.0, 1.0)
    lam = float(lam)
    if left.pole_near(lam) is not None:
        return SolutionState(0.0, 1.0)
    q_val = 1.0
    for _, d in left.poles:
        q_val *= d - lam
    p_val = (left.slope * lam + left.const) * q_val
    for j, (w, _) in enumerate(left.poles):
        term = w
        for i, (_, d) in enumerate(left.poles):
            if i != j:
                term *= d - lam
        p_val += term
    return canonical_state(q_val, -p_val)


def check_right_boundary(b: float) -> float:
    """Validate a right boundary value: a finite real, or math.inf for Dirichlet."""
    b = float(b)
    if math.isnan(b) or b == -math.inf:
        raise ValueError("right boundary value must be a finite real or +inf")
    return b


_KIND_CODES = {"cosine": 0, "cells": 1, "grid": 2}


@dataclass(frozen=True, eq=False)
class Potential:
    """Real potential q on (0, length) in one of three representations.

    cosine: values[m] is the coefficient of cos(m*x).
    cells:  piecewise-constant values on a uniform partition into len(values) cells.
    grid:   samples on a uniform grid spanning [0, length], linearly interpolated.
    """

    kind: str
    values: np.ndarray
    length: float = PI

    def __post_init__(self):
        if self.kind not in _KIND_CODES:
            raise ValueError(f"unknown potential kind {self.kind!r}")
        values = np.ascontiguousarray(self.values, dtype=np.float64).copy()
        if values.ndim != 1 or values.size == 0:
            raise ValueError("potential values must be a nonempty 1-d array")
        if not np.all(np.isfinite(values)):
            raise ValueError("potential values must be finite")
        if self.kind == "grid" and values.size < 2:
            raise ValueError("grid potentials need at least 2 samples")
        length = float(self.length)
        if not (math.isfinite(length) and length > 0.0):
            raise ValueError("domain length must be positive")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "length", length)

    @classmethod
    def cosine(cls, coeffs, length: float = PI) -> "Potential":
        return cls("cosine", np.asarray(coeffs, dtype=np.float64), length)

    @classmethod
    def cells(cls, values, length: float = PI) -> "Potential":
        return cls("cells", np.asarray(values, dtype=np.float64), length)

    @classmethod
    def grid(cls, values, length: float = PI) -> "Potential":
        return cls("grid", np.asarray(values, dtype=np.float64), length)

    @property
    def kind_code(self) -> int:
        return _KIND_CODES[self.kind]

    def bound(self) -> float:
        """An upper bound for sup |q|."""
        if self.kind == "cosine":
            return float(np.sum(np.abs(self.values)))
        return float(np.max(np.abs(self.values)))


def potential_eval(q: Potential, x: float) -> float:
    """Evaluate q at a point of [0, length]; outside raises DomainError."""
    x = float(x)
    tol = 1e-12 * max(1.0, q.length)
    if x < -tol or x > q.length + tol:
        raise DomainError(f"x = {x:g} outside the domain [0, {q.length:g}]")
    x = min(max(x, 0.0), q.length)
    v = q.values
    if q.kind == "cosine":
        total = 0.0
        for m in range(v.size):
            total += v[m] * math.cos(m * x)
        return total
    if q.kind == "cells":
        i = min(int(x * v.size / q.length), v.size - 1)
        return float(v[i])
    t = x * (v.size - 1) / q.length
    i = min(int(t), v.size - 2)
    frac = t - i
    return float(v[i] * (1.0 - frac) + v[i + 1] * frac)


def symmetric_double(q: Potential) -> Potential:
    """Extend q from (0, pi) to (0, 2*pi) by reflection about x = pi.

    The cosine representation is reflection-symmetric already, because
    cos(m*(2*pi - x)) = cos(m*x), so its coefficients carry over unchanged.
    """
    if abs(q.length - PI) > 1e-9 * PI:
        if abs(q.length - 2.0 * PI) <= 1e-9 * PI:
            raise DomainError("potential is already doubled to (0, 2*pi)")
        raise DomainError(f"can only double a potential on (0, pi), got length {q.length:g}")
    if q.kind == "cosine":
        doubled = q.values
    elif q.kind == "cells":
        doubled = np.concatenate([q.values, q.values[::-1]])
    else:
        doubled = np.concatenate([q.values, q.values[-2::-1]])
    return Potential(q.kind, doubled, 2.0 * PI)
