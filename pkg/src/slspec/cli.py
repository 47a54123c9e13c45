"""Command line front end.

Exit status: 0 on success (including "check passed" / "converged"), 1 for
validation or numerical failures with a single-line diagnostic on stderr,
2 for malformed inputs.  Outputs are deterministic: rerunning a command on
identical inputs produces byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import serialize
from .errors import InputFormatError, SolverError
from .inverse import reconstruct_fixed_index, reconstruct_two_spectra, synth_data
from .model import DIRICHLET, RationalHerglotz
from .spectral import correspondence_check, m_sample, spectrum

__all__ = ["run", "main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slspec",
        description="Forward and inverse spectral computations for -y'' + q y = lam y",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    forward = sub.add_parser("forward", help="eigenvalues 0..K of one problem, as CSV")
    forward.add_argument("--spec", required=True, help="problem JSON (q, left, b)")
    forward.add_argument("--K", type=int, required=True, help="largest eigenvalue index")
    forward.add_argument("--b", help="override the right boundary value (number or 'inf')")
    forward.add_argument("--out", required=True)

    sample = sub.add_parser("weyl-sample", help="sample m(lam) on an interval, as CSV")
    sample.add_argument("--spec", required=True, help="problem JSON (b ignored)")
    sample.add_argument("--interval", required=True, metavar="LO,HI")
    sample.add_argument("--n", type=int, required=True, help="number of sample points")
    sample.add_argument("--out", required=True)

    check = sub.add_parser("double-check", help="verify the doubling correspondence")
    check.add_argument("--spec", required=True, help="problem JSON (b ignored)")
    check.add_argument("--K", type=int, required=True, help="largest doubled index")
    check.add_argument("--tol", type=float, default=1e-6)
    check.add_argument("--out", required=True, help="report JSON")

    synth = sub.add_parser("synth-data", help="forward-generate a fixed-index dataset")
    synth.add_argument("--spec", required=True, help="problem JSON (b ignored)")
    synth.add_argument("--k", type=int, required=True, help="fixed eigenvalue index")
    synth.add_argument("--b", required=True, help="comma-separated b values (numbers or 'inf')")
    synth.add_argument("--out", required=True, help="dataset JSON")

    invert = sub.add_parser("invert", help="reconstruct (q, f) from a fixed-index dataset")
    invert.add_argument("--spec", required=True, help="dataset JSON")
    invert.add_argument("--model", required=True, help="model config JSON")
    invert.add_argument("--out", required=True, help="result JSON")

    two = sub.add_parser("two-spectra", help="reconstruct (q, f) from b=0 and b=inf spectra")
    two.add_argument("--spec", required=True, help='{"dirichlet": [...], "zero_b": [...]} JSON')
    two.add_argument("--model", required=True, help="model config JSON")
    two.add_argument("--out", required=True, help="result JSON")

    return parser


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from exc


def _write_text(path: str, text: str) -> None:
    Path(path).write_text(text)


def _write_json(path: str, obj) -> None:
    _write_text(path, json.dumps(obj, indent=2) + "\n")


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InputFormatError("--interval expects LO,HI")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise InputFormatError(f"--interval expects numbers: {exc}") from exc
    return lo, hi


def _parse_b_list(text: str) -> list[float]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if token == "inf":
            values.append(math.inf)
            continue
        try:
            values.append(float(token))
        except ValueError as exc:
            raise InputFormatError(f"--b expects numbers or 'inf': {token!r}") from exc
    if not values:
        raise InputFormatError("--b expects at least one value")
    return values


def _cmd_forward(args) -> int:
    q, left, b = serialize.problem_from_json(_load_json(args.spec), require_b=args.b is None)
    if args.b is not None:
        b = serialize.parse_b("inf" if args.b == "inf" else _parse_b_list(args.b)[0])
    spec = spectrum(q, left, b, args.K)
    _write_text(args.out, serialize.spectrum_to_csv(spec))
    return 0


def _cmd_weyl_sample(args) -> int:
    q, left, _ = serialize.problem_from_json(_load_json(args.spec), require_b=False)
    samples = m_sample(q, left, _parse_interval(args.interval), args.n)
    _write_text(args.out, serialize.m_samples_to_csv(samples))
    return 0


def _cmd_double_check(args) -> int:
    q, left, _ = serialize.problem_from_json(_load_json(args.spec), require_b=False)
    if not isinstance(left, RationalHerglotz):
        raise SolverError("double-check needs a Herglotz left boundary, not dirichlet")
    report = correspondence_check(q, left, args.K, args.tol)
    _write_json(args.out, serialize.correspondence_to_json(report))
    if not report.passed:
        print(
            f"error: correspondence check failed: max gap {report.max_gap:.3e} "
            f"exceeds tol {report.tol:.3e}",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_synth_data(args) -> int:
    q, left, _ = serialize.problem_from_json(_load_json(args.spec), require_b=False)
    data = synth_data(q, left, args.k, _parse_b_list(args.b))
    _write_json(args.out, serialize.dataset_to_json(data))
    return 0


def _cmd_invert(args) -> int:
    data = serialize.dataset_from_json(_load_json(args.spec))
    cfg, b_cap = serialize.model_config_from_json(_load_json(args.model))
    result = reconstruct_fixed_index(data, cfg, b_cap=b_cap)
    _write_json(args.out, serialize.reconstruction_to_json(result))
    if not result.converged:
        print(
            f"error: reconstruction did not converge after {result.iterations} iterations "
            f"(residual {result.residual:.3e})",
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_two_spectra(args) -> int:
    dirichlet_evs, zero_b_evs = serialize.two_spectra_from_json(_load_json(args.spec))
    cfg, _ = serialize.model_config_from_json(_load_json(args.model))
    result = reconstruct_two_spectra(dirichlet_evs, zero_b_evs, cfg)
    _write_json(args.out, serialize.reconstruction_to_json(result))
    if not result.converged:
        print(
            f"error: reconstruction did not converge after {result.iterations} iterations "
            f"(residual {result.residual:.3e})",
            file=sys.stderr,
        )
        return 1
    return 0


_COMMANDS = {
    "forward": _cmd_forward,
    "weyl-sample": _cmd_weyl_sample,
    "double-check": _cmd_double_check,
    "synth-data": _cmd_synth_data,
    "invert": _cmd_invert,
    "two-spectra": _cmd_two_spectra,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SolverError, ValueError) as exc:
        message = " ".join(str(exc).split())
        print(f"error: {message}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
