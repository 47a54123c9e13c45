"""JSON and CSV interchange for problems, datasets, configs, and reports.

Problem files look like

    {"q": {"type": "cosine", "values": [0.5, -0.3]},
     "left": {"slope": 0.0, "const": 1.0, "poles": [{"w": 1.0, "d": -10.0}]},
     "b": "inf"}

with "left": "dirichlet" for the Dirichlet condition and b a number or the
string "inf".  Datasets are {"k": int, "records": [{"b": ..., "lambda": ...}]}.
Floats in CSV output carry 17 significant digits so reruns are byte-identical
and round-trip exactly.
"""

from __future__ import annotations

import math
from typing import Any

from .errors import InputFormatError
from .inverse import FixedIndexDataset, ModelConfig, ReconstructionResult
from .model import DIRICHLET, LeftBoundary, Potential, RationalHerglotz
from .spectral import CorrespondenceReport, Spectrum

__all__ = [
    "parse_b",
    "b_to_json",
    "potential_from_json",
    "potential_to_json",
    "left_from_json",
    "left_to_json",
    "problem_from_json",
    "problem_to_json",
    "dataset_from_json",
    "dataset_to_json",
    "two_spectra_from_json",
    "model_config_from_json",
    "reconstruction_to_json",
    "correspondence_to_json",
    "spectrum_to_csv",
    "m_samples_to_csv",
    "format_float",
]


def _require_mapping(obj: Any, what: str, allowed: set[str]) -> dict:
    if not isinstance(obj, dict):
        raise InputFormatError(f"{what} must be a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        raise InputFormatError(f"{what} has unknown keys {sorted(unknown)}")
    return obj


def _require_number(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputFormatError(f"{what} must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise InputFormatError(f"{what} must be finite")
    return value


def parse_b(value: Any) -> float:
    """Right boundary value: a finite number, or the string "inf" for Dirichlet."""
    if value == "inf":
        return math.inf
    return _require_number(value, '"b"')


def b_to_json(b: float):
    return "inf" if math.isinf(b) else b


def potential_from_json(obj: Any) -> Potential:
    obj = _require_mapping(obj, '"q"', {"type", "values"})
    kind = obj.get("type")
    values = obj.get("values")
    if kind not in ("cosine", "cells", "grid"):
        raise InputFormatError(f'"q.type" must be cosine, cells or grid, got {kind!r}')
    if not isinstance(values, list) or not values:
        raise InputFormatError('"q.values" must be a nonempty array')
    values = [_require_number(v, '"q.values" entry') for v in values]
    try:
        return Potential(kind, values)
    except ValueError as exc:
        raise InputFormatError(f'invalid "q": {exc}') from exc


def potential_to_json(q: Potential) -> dict:
    return {"type": q.kind, "values": [float(v) for v in q.values]}


def left_from_json(obj: Any) -> LeftBoundary:
    if obj == "dirichlet":
        return DIRICHLET
    obj = _require_mapping(obj, '"left"', {"slope", "const", "poles"})
    poles = obj.get("poles", [])
    if not isinstance(poles, list):
        raise InputFormatError('"left.poles" must be an array')
    pairs = []
    for entry in poles:
        entry = _require_mapping(entry, '"left.poles" entry', {"w", "d"})
        pairs.append(
            (_require_number(entry.get("w"), '"w"'), _require_number(entry.get("d"), '"d"'))
        )
    slope = _require_number(obj.get("slope", 0.0), '"left.slope"')
    const = _require_number(obj.get("const", 0.0), '"left.const"')
    try:
        return RationalHerglotz(slope, const, tuple(pairs))
    except ValueError as exc:
        raise InputFormatError(f'invalid "left": {exc}') from exc


def left_to_json(left: LeftBoundary):
    if left is DIRICHLET:
        return "dirichlet"
    return {
        "slope": left.slope,
        "const": left.const,
        "poles": [{"w": w, "d": d} for w, d in left.poles],
    }


def problem_from_json(obj: Any, require_b: bool = True):
    """Parse {"q": ..., "left": ..., "b": ...}; returns (q, left, b or None)."""
    obj = _require_mapping(obj, "problem", {"q", "left", "b"})
    if "q" not in obj or "left" not in obj:
        raise InputFormatError('problem needs both "q" and "left"')
    q = potential_from_json(obj["q"])
    left = left_from_json(obj["left"])
    if "b" not in obj:
        if require_b:
            raise InputFormatError('problem is missing "b"')
        return q, left, None
    return q, left, parse_b(obj["b"])


def problem_to_json(q: Potential, left: LeftBoundary, b: float | None = None) -> dict:
    out = {"q": potential_to_json(q), "left": left_to_json(left)}
    if b is not None:
        out["b"] = b_to_json(b)
    return out


def dataset_from_json(obj: Any) -> FixedIndexDataset:
    obj = _require_mapping(obj, "dataset", {"k", "records", "note"})
    k = obj.get("k")
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise InputFormatError('"k" must be a nonnegative integer')
    records = obj.get("records")
    if not isinstance(records, list):
        raise InputFormatError('"records" must be an array')
    pairs = []
    for entry in records:
        entry = _require_mapping(entry, '"records" entry', {"b", "lambda"})
        if "b" not in entry or "lambda" not in entry:
            raise InputFormatError('each record needs "b" and "lambda"')
        pairs.append((parse_b(entry["b"]), _require_number(entry["lambda"], '"lambda"')))
    note = obj.get("note", "")
    if not isinstance(note, str):
        raise InputFormatError('"note" must be a string')
    try:
        return FixedIndexDataset(k, tuple(pairs), note)
    except ValueError as exc:
        raise InputFormatError(f"invalid dataset: {exc}") from exc


def dataset_to_json(data: FixedIndexDataset) -> dict:
    out = {
        "k": data.k,
        "records": [{"b": b_to_json(b), "lambda": lam} for b, lam in data.records],
    }
    if data.note:
        out["note"] = data.note
    return out


def two_spectra_from_json(obj: Any) -> tuple[list[float], list[float]]:
    obj = _require_mapping(obj, "two-spectra input", {"dirichlet", "zero_b"})
    out = []
    for key in ("dirichlet", "zero_b"):
        values = obj.get(key)
        if not isinstance(values, list) or not values:
            raise InputFormatError(f'"{key}" must be a nonempty array of eigenvalues')
        out.append([_require_number(v, f'"{key}" entry') for v in values])
    return out[0], out[1]


def model_config_from_json(obj: Any) -> tuple[ModelConfig, float | None]:
    """Parse a reconstruction config; returns (config, optional k0 b-cap)."""
    allowed = {
        "M",
        "f_model",
        "f_fixed",
        "f_init_const",
        "f_init_poles",
        "regularization",
        "max_iter",
        "tol",
        "b_cap",
    }
    obj = _require_mapping(obj, "model config", allowed)
    m_coeffs = obj.get("M")
    if isinstance(m_coeffs, bool) or not isinstance(m_coeffs, int) or m_coeffs < 1:
        raise InputFormatError('"M" must be a positive integer')
    kwargs: dict[str, Any] = {"m_coeffs": m_coeffs}
    if "f_model" in obj:
        kwargs["f_model"] = obj["f_model"]
    if "f_fixed" in obj:
        kwargs["f_fixed"] = left_from_json(obj["f_fixed"])
    if "f_init_const" in obj:
        kwargs["f_init_const"] = _require_number(obj["f_init_const"], '"f_init_const"')
    if "f_init_poles" in obj:
        init = left_from_json(obj["f_init_poles"])
        if init is DIRICHLET:
            raise InputFormatError('"f_init_poles" cannot be dirichlet')
        kwargs["f_init_poles"] = init
    if "regularization" in obj:
        kwargs["regularization"] = _require_number(obj["regularization"], '"regularization"')
    if "max_iter" in obj:
        max_iter = obj["max_iter"]
        if isinstance(max_iter, bool) or not isinstance(max_iter, int) or max_iter < 1:
            raise InputFormatError('"max_iter" must be a positive integer')
        kwargs["max_iter"] = max_iter
    if "tol" in obj:
        kwargs["tol"] = _require_number(obj["tol"], '"tol"')
    b_cap = None
    if "b_cap" in obj:
        b_cap = _require_number(obj["b_cap"], '"b_cap"')
    try:
        return ModelConfig(**kwargs), b_cap
    except ValueError as exc:
        raise InputFormatError(f"invalid model config: {exc}") from exc


def reconstruction_to_json(result: ReconstructionResult) -> dict:
    return {
        "q_hat": potential_to_json(result.q_hat),
        "f_hat": left_to_json(result.f_hat),
        "residual": result.residual,
        "iterations": result.iterations,
        "converged": result.converged,
    }


def correspondence_to_json(report: CorrespondenceReport) -> dict:
    return {
        "pairs": [
            {
                "i": p.i,
                "mu_odd": p.mu_odd,
                "lambda_dirichlet": p.lambda_dirichlet,
                "mu_even": p.mu_even,
                "lambda_neumann": p.lambda_neumann,
                "gap_odd": p.gap_odd,
                "gap_even": p.gap_even,
            }
            for p in report.pairs
        ],
        "max_gap": report.max_gap,
        "tol": report.tol,
        "passed": report.passed,
    }


def format_float(value: float) -> str:
    """Fixed 17-significant-digit rendering; 'inf'/'-inf' for infinities."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.17g}"


def spectrum_to_csv(spec: Spectrum) -> str:
    lines = ["k,lambda"]
    for k, lam in spec.items():
        lines.append(f"{k},{format_float(lam)}")
    return "\n".join(lines) + "\n"


def m_samples_to_csv(samples) -> str:
    lines = ["lambda,m"]
    for lam, m in samples:
        lines.append(f"{format_float(lam)},{format_float(m)}")
    return "\n".join(lines) + "\n"
