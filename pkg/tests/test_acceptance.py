"""Acceptance checks: one printed PASS/FAIL line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines.  Every
criterion is also a plain assertion, so the module doubles as a regular
test file.
"""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from oracles import fd_eigenvalues_richardson
from slspec import (
    DIRICHLET,
    DataInconsistencyError,
    FixedIndexDataset,
    ModelConfig,
    Potential,
    RationalHerglotz,
    correspondence_check,
    eigenvalue,
    reconstruct_fixed_index,
    reconstruct_two_spectra,
    spectrum,
    synth_data,
    validate_fixed_index_data,
    weyl_m,
)

Q0 = Potential.cosine([0.0])
F0 = RationalHerglotz()


def _report(number: int, label: str, ok: bool, detail: str = "") -> bool:
    tail = f" ({detail})" if detail else ""
    print(f"criterion {number} ({label}): {'PASS' if ok else 'FAIL'}{tail}")
    return ok


def test_criterion_1_closed_form_spectra():
    ks = np.arange(10)
    cases = (
        (Q0, F0, math.inf, (ks + 0.5) ** 2),
        (Q0, F0, 0.0, ks.astype(float) ** 2),
        (Q0, DIRICHLET, math.inf, (ks + 1.0) ** 2),
    )
    worst = 0.0
    for q, left, b, expected in cases:
        got = np.array(spectrum(q, left, b, 9).eigenvalues)
        worst = max(worst, float(np.max(np.abs(got - expected))))
    ok = worst <= 1e-8
    assert _report(1, "closed-form spectra k=0..9", ok, f"max err {worst:.2e}")


def test_criterion_2_weyl_m_structure():
    rng = np.random.default_rng(2718)
    ok = True
    worst = 0.0
    for _ in range(5):
        q = Potential.cosine(rng.uniform(-1.0, 1.0, size=4))
        d0 = eigenvalue(q, F0, math.inf, 0)
        d1 = eigenvalue(q, F0, math.inf, 1)
        z0 = eigenvalue(q, F0, 0.0, 0)
        z1 = eigenvalue(q, F0, 0.0, 1)
        z2 = eigenvalue(q, F0, 0.0, 2)
        ok &= z0 < d0 < z1 < d1 < z2
        gap = d1 - d0
        grid = np.linspace(d0 + 0.02 * gap, d1 - 0.02 * gap, 40)
        ms = np.array([weyl_m(q, F0, float(lam)) for lam in grid])
        ok &= bool(np.all(np.isfinite(ms)))
        ok &= bool(np.all(np.diff(ms) < 0.0))
        signs = np.sign(ms)
        ok &= int(np.sum(signs[:-1] != signs[1:])) == 1
        # the sole zero of m between the poles is the b = 0 eigenvalue
        zero = brentq(lambda lam: weyl_m(q, F0, lam), grid[0], grid[-1])
        worst = max(worst, abs(zero - z1))
        # poles of m recovered from 1/m sit on the Dirichlet eigenvalues
        for d, lo_nb, hi_nb in ((d0, z0, z1), (d1, z1, z2)):
            delta = 0.3 * min(d - lo_nb, hi_nb - d)
            inv = lambda lam: 1.0 / weyl_m(q, F0, lam)
            pole = brentq(inv, d - delta, d + delta)
            worst = max(worst, abs(pole - d))
    ok &= worst <= 1e-8
    assert _report(
        2, "weyl m decreasing with matching poles/zero", ok, f"max mismatch {worst:.2e}"
    )


def test_criterion_3_doubling_correspondence():
    qs = (Q0, Potential.cosine([2.0]), Potential.cosine([0.0, 1.0]))
    fs = (F0, RationalHerglotz(0.0, 1.0, ()), RationalHerglotz(0.0, 0.0, ((1.0, -10.0),)))
    ok = True
    worst = 0.0
    for q in qs:
        for f in fs:
            report = correspondence_check(q, f, 4, 1e-6)
            ok &= report.passed
            worst = max(worst, report.max_gap)
    assert _report(3, "doubling correspondence 9 problems", ok, f"max gap {worst:.2e}")


def test_criterion_4_fixed_index_reconstruction():
    gen = Potential.cosine([0.5, -0.3])
    data = synth_data(gen, F0, 1, list(np.linspace(-5, 5, 12)))
    result = reconstruct_fixed_index(data, ModelConfig(m_coeffs=2))
    q_err = float(np.max(np.abs(result.q_hat.values - gen.values)))
    ok = result.converged and q_err <= 1e-3 and result.residual <= 1e-8

    f1 = RationalHerglotz(0.0, 1.0, ())
    bs = [float(b) for b in np.concatenate([np.linspace(-5, -1, 6), np.linspace(1, 5, 6)])]
    data_f = synth_data(Q0, f1, 1, bs)
    result_f = reconstruct_fixed_index(data_f, ModelConfig(m_coeffs=2, f_model="constant"))
    h_err = abs(result_f.f_hat.const - 1.0)
    ok = ok and result_f.converged and h_err <= 1e-3
    ok = ok and float(np.max(np.abs(result_f.q_hat.values))) <= 1e-3
    assert _report(
        4, "fixed-index recovery of q and f", ok, f"q err {q_err:.2e}, f err {h_err:.2e}"
    )


def test_criterion_5_two_spectra_reconstruction():
    gen = Potential.cosine([0.5, -0.3])
    dirichlet = spectrum(gen, F0, math.inf, 7).eigenvalues
    zero_b = spectrum(gen, F0, 0.0, 7).eigenvalues
    interlaced = all(
        zero_b[k] < dirichlet[k] and (k + 1 >= 8 or dirichlet[k] < zero_b[k + 1])
        for k in range(8)
    )
    result = reconstruct_two_spectra(list(dirichlet), list(zero_b), ModelConfig(m_coeffs=2))
    q_err = float(np.max(np.abs(result.q_hat.values - gen.values)))
    ok = interlaced and result.converged and q_err <= 1e-3
    assert _report(5, "two-spectra recovery of q", ok, f"q err {q_err:.2e}")


def test_criterion_6_finite_difference_cross_check():
    rng = np.random.default_rng(31415)
    worst = 0.0
    for _ in range(5):
        coeffs = rng.uniform(-1.0, 1.0, size=4)
        q = Potential.cosine(coeffs)
        q_fn = lambda x: float(sum(c * math.cos(j * x) for j, c in enumerate(coeffs)))
        for b, right in ((math.inf, "dirichlet"), (0.0, 0.0)):
            got = np.array(spectrum(q, F0, b, 6).eigenvalues)
            ref = fd_eigenvalues_richardson(q_fn, math.pi, 0.0, right, 6)
            worst = max(worst, float(np.max(np.abs(got - ref))))
    ok = worst <= 1e-5
    assert _report(
        6, "independent finite-difference spectra", ok, f"max err {worst:.2e}"
    )


def test_criterion_7_underdetermined_witness():
    gen = Potential.cosine([0.5, -0.3])
    data = synth_data(gen, F0, 1, (-4.0, -1.0, 2.0))
    result = reconstruct_fixed_index(
        data, ModelConfig(m_coeffs=5), allow_underdetermined=True
    )
    padded = np.array([0.5, -0.3, 0.0, 0.0, 0.0])
    distance = float(np.linalg.norm(result.q_hat.values - padded))
    ok = result.residual <= 1e-8 and distance >= 1e-2
    assert _report(
        7,
        "non-uniqueness witness from scarce data",
        ok,
        f"residual {result.residual:.2e}, distance {distance:.2e}",
    )


def test_criterion_8_validation_rejections():
    ok = True
    anti = FixedIndexDataset(1, ((1.0, 2.0), (0.0, 1.0)))
    ok &= not validate_fixed_index_data(anti).passed
    ok &= not validate_fixed_index_data(FixedIndexDataset(1, ((0.5, 1.0),))).passed
    no_cap = FixedIndexDataset(0, ((-1.0, 0.1), (-2.0, 0.2)))
    ok &= not validate_fixed_index_data(no_cap).passed
    ok &= validate_fixed_index_data(no_cap, b_cap=0.0).passed
    outside = FixedIndexDataset(1, ((0.0, 1.0), (-1.0, 3.0)))
    ok &= not validate_fixed_index_data(outside, ref=(Q0, F0)).passed
    good = FixedIndexDataset(1, ((0.9635, 0.49), (0.0, 1.0), (-0.8718, 1.44)))
    ok &= validate_fixed_index_data(good, ref=(Q0, F0)).passed
    with pytest.raises(DataInconsistencyError):
        reconstruct_fixed_index(anti, ModelConfig(m_coeffs=1))
    with pytest.raises(DataInconsistencyError):
        reconstruct_two_spectra((0.25, 2.25), (1.0, 4.0), ModelConfig(m_coeffs=1))
    assert _report(8, "inconsistent data rejected", ok)
