"""Reconstruction of (q, f) from eigenvalue data.

Two data regimes are supported: a fixed index k observed across many right
boundary values b_j, and the classical pair of full spectra at b = 0 and
b = inf.  Both reduce to damped Gauss-Newton least squares over a cosine
parametrisation of q plus an optional parametrisation of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from . import shooting, spectral
from .errors import DataInconsistencyError, SolverError
from .model import (
    DIRICHLET,
    LeftBoundary,
    Potential,
    RationalHerglotz,
    check_right_boundary,
)

__all__ = [
    "FixedIndexDataset",
    "ValidationReport",
    "ModelConfig",
    "ReconstructionResult",
    "validate_fixed_index_data",
    "synth_data",
    "residual_norm",
    "reconstruct_fixed_index",
    "reconstruct_two_spectra",
]

# Relative finite-difference step for Jacobian columns.
_FD_STEP = 1e-6
# Multiplicative damping adjustment, and the rejection run treated as a stall.
_DAMP_FACTOR = 10.0
_MAX_REJECTIONS = 10


@dataclass(frozen=True)
class FixedIndexDataset:
    """Observations (b_j, lam_j) of the eigenvalue with one fixed index k."""

    k: int
    records: tuple[tuple[float, float], ...]
    note: str = ""

    def __post_init__(self):
        k = int(self.k)
        if k < 0:
            raise ValueError("eigenvalue index k must be >= 0")
        records = tuple((check_right_boundary(b), float(lam)) for b, lam in self.records)
        for _, lam in records:
            if not math.isfinite(lam):
                raise ValueError("eigenvalues in a dataset must be finite")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "records", records)


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    violation: str | None = None


def _sort_key_descending_b(b: float) -> float:
    # A Dirichlet (b = inf) record is the b -> -inf limit of the eigenvalue
    # branch, so it sorts below every finite b.
    return -math.inf if math.isinf(b) else b


def validate_fixed_index_data(
    data: FixedIndexDataset,
    ref: tuple[Potential, LeftBoundary] | None = None,
    b_cap: float | None = None,
) -> ValidationReport:
    """Check a fixed-index dataset for internal consistency.

    Checks, in order: at least two records; pairwise distinct b_j; strict
    anti-monotonicity (sorting by b descending must sort lam ascending);
    containment of every lam_j in the open interval between the adjacent
    Dirichlet eigenvalues of `ref` when a reference problem is given; and
    for k = 0 an explicit upper cap on the finite b_j, without which the
    fixed-index problem is not well posed.
    """
    records = data.records
    if len(records) < 2:
        return ValidationReport(False, "fewer than 2 records")
    bs = [b for b, _ in records]
    if len(set(bs)) != len(bs):
        return ValidationReport(False, "duplicate b values")
    ordered = sorted(records, key=lambda r: _sort_key_descending_b(r[0]), reverse=True)
    for (b_hi, lam_lo), (b_lo, lam_hi) in zip(ordered, ordered[1:]):
        if not (lam_lo < lam_hi):
            return ValidationReport(
                False,
                f"anti-monotonicity violated: b = {b_hi:g} pairs with lam = {lam_lo:g} "
                f"but smaller b = {b_lo:g} pairs with lam = {lam_hi:g}",
            )
    if ref is not None:
        q_ref, left_ref = ref
        hi = spectral.eigenvalue(q_ref, left_ref, math.inf, data.k)
        lo = (
            spectral.eigenvalue(q_ref, left_ref, math.inf, data.k - 1)
            if data.k >= 1
            else -math.inf
        )
        edge_tol = 1e-8 * max(1.0, abs(hi))
        for b, lam in records:
            if math.isinf(b):
                if abs(lam - hi) > edge_tol:
                    return ValidationReport(
                        False, f"Dirichlet record lam = {lam:g} does not match lam_k(inf) = {hi:g}"
                    )
            elif not (lo < lam < hi):
                return ValidationReport(
                    False,
                    f"lam = {lam:g} outside the containment interval ({lo:g}, {hi:g})",
                )
    if data.k == 0:
        finite_bs = [b for b in bs if not math.isinf(b)]
        if finite_bs:
            if b_cap is None:
                return ValidationReport(
                    False, "k = 0 data requires an explicit cap on the finite b values"
                )
            if max(finite_bs) > b_cap:
                return ValidationReport(
                    False, f"b = {max(finite_bs):g} exceeds the declared cap {b_cap:g}"
                )
    return ValidationReport(True, None)


def _record_eigenvalues(
    q: Potential, left: LeftBoundary, k: int, bs: Sequence[float]
) -> list[float]:
    """Index-k eigenvalues for several b, sharing one bracketing interval."""
    hi = spectral.eigenvalue(q, left, math.inf, k)
    lo = spectral.eigenvalue(q, left, math.inf, k - 1) if k >= 1 else None
    angle = lambda lam: shooting.endpoint_angle(q, left, lam)
    out = []
    for b in bs:
        if math.isinf(b):
            out.append(hi)
            continue
        target = k * math.pi + math.atan2(1.0, b)
        if lo is None:
            out.append(
                spectral._solve_increasing(
                    angle, target, -10.0 * (1.0 + q.bound()), hi
                )
            )
            continue
        g_lo = angle(lo) - target
        g_hi = angle(hi) - target
        if g_lo < 0.0 < g_hi:
            out.append(
                brentq(
                    lambda t: angle(t) - target,
                    lo,
                    hi,
                    xtol=spectral._BRENTQ_XTOL,
                    rtol=spectral._BRENTQ_RTOL,
                )
            )
        else:  # bracket endpoints too tight numerically; fall back to expansion
            out.append(spectral._solve_increasing(angle, target, lo - 1.0, hi + 1.0))
    return out


def synth_data(
    q: Potential, left: LeftBoundary, k: int, b_list: Sequence[float]
) -> FixedIndexDataset:
    """Forward-generate a fixed-index dataset at the given b values."""
    bs = [check_right_boundary(b) for b in b_list]
    if len(set(bs)) != len(bs):
        raise ValueError("b values must be pairwise distinct")
    lams = _record_eigenvalues(q, left, int(k), bs)
    records = tuple(zip(bs, lams))
    return FixedIndexDataset(int(k), records, note="synthesized by forward solver")


def residual_norm(q: Potential, left: LeftBoundary, data: FixedIndexDataset, k: int) -> float:
    """Root-mean-square misfit of the index-k eigenvalues against the data."""
    bs = [b for b, _ in data.records]
    model = _record_eigenvalues(q, left, int(k), bs)
    errs = [m - lam for m, (_, lam) in zip(model, data.records)]
    return math.sqrt(sum(e * e for e in errs) / len(errs))


@dataclass(frozen=True)
class ModelConfig:
    """Search space and optimizer settings for reconstruction.

    m_coeffs cosine coefficients parametrise q.  f_model selects how the
    left boundary is treated: "fixed" uses f_fixed as given, "constant"
    fits a single constant (starting from f_init_const), "poles" fits
    constant + sum w_j/(d_j - lam) with the pole count fixed by
    f_init_poles, whose weights are optimised on a log scale to stay
    positive.  Regularization weighs the squared cosine coefficients beyond
    the constant one, so the mean of q stays unpenalised.
    """

    m_coeffs: int
    f_model: str = "fixed"
    f_fixed: LeftBoundary = RationalHerglotz()
    f_init_const: float = 0.0
    f_init_poles: RationalHerglotz | None = None
    regularization: float = 1e-8
    max_iter: int = 100
    # gradient tolerance matched to the finite-difference Jacobian accuracy;
    # far below it the computed gradient is dominated by differencing noise
    tol: float = 1e-7

    def __post_init__(self):
        if int(self.m_coeffs) < 1:
            raise ValueError("need at least the constant cosine coefficient")
        if self.f_model not in ("fixed", "constant", "poles"):
            raise ValueError(f"unknown f_model {self.f_model!r}")
        if self.regularization < 0.0:
            raise ValueError("regularization weight must be >= 0")
        if self.f_model == "poles" and self.f_init_poles is None:
            raise ValueError("f_model 'poles' needs f_init_poles for the pole count")
        object.__setattr__(self, "m_coeffs", int(self.m_coeffs))

    def n_parameters(self) -> int:
        extra = {"fixed": 0, "constant": 1}.get(self.f_model)
        if extra is None:
            extra = 1 + 2 * len(self.f_init_poles.poles)
        return self.m_coeffs + extra

    def initial_parameters(self) -> np.ndarray:
        x = np.zeros(self.n_parameters())
        if self.f_model == "constant":
            x[self.m_coeffs] = self.f_init_const
        elif self.f_model == "poles":
            f0 = self.f_init_poles
            x[self.m_coeffs] = f0.const
            for j, (w, d) in enumerate(f0.poles):
                x[self.m_coeffs + 1 + 2 * j] = math.log(w)
                x[self.m_coeffs + 2 + 2 * j] = d
        return x

    def unpack(self, x: np.ndarray) -> tuple[Potential, LeftBoundary]:
        q = Potential.cosine(x[: self.m_coeffs])
        if self.f_model == "fixed":
            return q, self.f_fixed
        if self.f_model == "constant":
            return q, RationalHerglotz(0.0, float(x[self.m_coeffs]), ())
        const = float(x[self.m_coeffs])
        poles = tuple(
            (math.exp(float(x[self.m_coeffs + 1 + 2 * j])), float(x[self.m_coeffs + 2 + 2 * j]))
            for j in range(len(self.f_init_poles.poles))
        )
        return q, RationalHerglotz(0.0, const, poles)


@dataclass(frozen=True)
class ReconstructionResult:
    q_hat: Potential
    f_hat: LeftBoundary
    residual: float
    iterations: int
    converged: bool
    objective_trace: tuple[float, ...] = field(default=(), repr=False)


def _gauss_newton(
    residual_fn: Callable[[np.ndarray], np.ndarray],
    x0: np.ndarray,
    max_iter: int,
    tol: float,
) -> tuple[np.ndarray, int, bool, list[float]]:
    """Levenberg-damped Gauss-Newton on 0.5*||r(x)||^2.

    Converged means either the gradient norm fell below tol or the step was
    rejected _MAX_REJECTIONS times in a row (a stall at the achievable
    accuracy).  The trace holds the objective at the accepted iterates and
    is non-increasing by construction.
    """
    x = np.asarray(x0, dtype=float).copy()
    r = residual_fn(x)
    objective = float(r @ r)
    trace = [objective]
    damping = None
    accepted = 0
    converged = False
    for _ in range(max_iter):
        jac = _fd_jacobian(residual_fn, x, r)
        gradient = 2.0 * jac.T @ r
        if np.linalg.norm(gradient) <= tol:
            converged = True
            break
        jtj = jac.T @ jac
        if damping is None:
            # scale the initial damping to the curvature so the first trial
            # step stays local even when J^T J is ill conditioned
            damping = 1e-3 * max(float(np.max(np.diag(jtj))), 1e-12)
        rejections = 0
        while True:
            lhs = jtj + damping * np.eye(x.size)
            trial_objective = math.inf
            r_trial = None
            try:
                step = np.linalg.solve(lhs, -jac.T @ r)
                r_trial = residual_fn(x + step)
                trial_objective = float(r_trial @ r_trial)
            except (np.linalg.LinAlgError, ValueError, ArithmeticError, SolverError):
                pass  # an invalid trial model counts as a rejected step
            if trial_objective < objective:
                x = x + step
                r = r_trial
                objective = trial_objective
                trace.append(objective)
                accepted += 1
                damping = max(damping / _DAMP_FACTOR, 1e-15)
                break
            damping *= _DAMP_FACTOR
            rejections += 1
            if rejections >= _MAX_REJECTIONS:
                converged = True
                break
        if converged:
            break
    return x, accepted, converged, trace


def _fd_jacobian(
    residual_fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray, r0: np.ndarray
) -> np.ndarray:
    jac = np.empty((r0.size, x.size))
    for i in range(x.size):
        step = _FD_STEP * max(1.0, abs(x[i]))
        x_step = x.copy()
        x_step[i] += step
        jac[:, i] = (residual_fn(x_step) - r0) / step
    return jac


def _regularization_rows(cfg: ModelConfig, x: np.ndarray) -> np.ndarray:
    if cfg.regularization == 0.0 or cfg.m_coeffs < 2:
        return np.empty(0)
    return math.sqrt(cfg.regularization) * x[1 : cfg.m_coeffs]


def reconstruct_fixed_index(
    data: FixedIndexDataset,
    cfg: ModelConfig,
    b_cap: float | None = None,
    allow_underdetermined: bool = False,
) -> ReconstructionResult:
    """Recover (q, f) from fixed-index eigenvalue observations.

    Minimises sum_j (lam_k(q_hat, f_hat, b_j) - lam_j)^2 plus the
    regularization term, starting from q_hat = 0.  Underdetermined fits
    (more parameters than records) are refused unless explicitly allowed;
    they terminate at a data-consistent model that need not be the
    generator.
    """
    report = validate_fixed_index_data(data, ref=None, b_cap=b_cap)
    if not report.passed:
        raise DataInconsistencyError(f"dataset validation failed: {report.violation}")
    if not allow_underdetermined and cfg.n_parameters() > len(data.records):
        raise DataInconsistencyError(
            f"{cfg.n_parameters()} unknown parameters exceed {len(data.records)} records"
        )
    bs = [b for b, _ in data.records]
    observed = np.array([lam for _, lam in data.records])

    def residual_fn(x: np.ndarray) -> np.ndarray:
        q, left = cfg.unpack(x)
        model = np.array(_record_eigenvalues(q, left, data.k, bs))
        return np.concatenate([model - observed, _regularization_rows(cfg, x)])

    x, iterations, converged, trace = _gauss_newton(
        residual_fn, cfg.initial_parameters(), cfg.max_iter, cfg.tol
    )
    q_hat, f_hat = cfg.unpack(x)
    return ReconstructionResult(
        q_hat,
        f_hat,
        residual_norm(q_hat, f_hat, data, data.k),
        iterations,
        converged,
        tuple(trace),
    )


def reconstruct_two_spectra(
    dirichlet_evs: Sequence[float],
    zero_b_evs: Sequence[float],
    cfg: ModelConfig,
) -> ReconstructionResult:
    """Recover (q, f) from the b = inf and b = 0 spectra.

    Both lists must be strictly increasing, of equal length, and interlaced
    as zero_b[k] < dirichlet[k] < zero_b[k+1]; anything else is reported as
    inconsistent data before any optimisation starts.
    """
    d_evs = [float(v) for v in dirichlet_evs]
    z_evs = [float(v) for v in zero_b_evs]
    if len(d_evs) != len(z_evs):
        raise DataInconsistencyError(
            f"spectra lengths differ: {len(d_evs)} Dirichlet vs {len(z_evs)} at b = 0"
        )
    if len(d_evs) < 1:
        raise DataInconsistencyError("spectra are empty")
    for name, evs in (("dirichlet", d_evs), ("zero_b", z_evs)):
        if any(hi <= lo for lo, hi in zip(evs, evs[1:])):
            raise DataInconsistencyError(f"{name} eigenvalues are not strictly increasing")
    for k in range(len(d_evs)):
        if not z_evs[k] < d_evs[k]:
            raise DataInconsistencyError(
                f"interlacing violated: zero_b[{k}] = {z_evs[k]:g} must lie below "
                f"dirichlet[{k}] = {d_evs[k]:g}"
            )
        if k + 1 < len(z_evs) and not d_evs[k] < z_evs[k + 1]:
            raise DataInconsistencyError(
                f"interlacing violated: dirichlet[{k}] = {d_evs[k]:g} must lie below "
                f"zero_b[{k + 1}] = {z_evs[k + 1]:g}"
            )
    n_residuals = 2 * len(d_evs)
    if cfg.n_parameters() > n_residuals:
        raise DataInconsistencyError(
            f"{cfg.n_parameters()} unknown parameters exceed {n_residuals} eigenvalues"
        )
    observed = np.array(d_evs + z_evs)
    count_max = len(d_evs) - 1

    def residual_fn(x: np.ndarray) -> np.ndarray:
        q, left = cfg.unpack(x)
        angle = lambda lam: shooting.endpoint_angle(q, left, lam)
        d_model = []
        previous = None
        for k in range(count_max + 1):
            d_model.append(spectral.eigenvalue(q, left, math.inf, k, lo_hint=previous))
            previous = d_model[-1]
        z_model = []
        for k in range(count_max + 1):
            target = k * math.pi + 0.5 * math.pi
            lo = d_model[k - 1] if k >= 1 else -10.0 * (1.0 + q.bound())
            z_model.append(spectral._solve_increasing(angle, target, lo, d_model[k]))
        model = np.array(d_model + z_model)
        return np.concatenate([model - observed, _regularization_rows(cfg, x)])

    x, iterations, converged, trace = _gauss_newton(
        residual_fn, cfg.initial_parameters(), cfg.max_iter, cfg.tol
    )
    q_hat, f_hat = cfg.unpack(x)
    final = residual_fn(x)
    rms = math.sqrt(float(final[:n_residuals] @ final[:n_residuals]) / n_residuals)
    return ReconstructionResult(q_hat, f_hat, rms, iterations, converged, tuple(trace))
