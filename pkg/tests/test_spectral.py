"""Weyl function, eigenvalue, spectrum, and doubling-correspondence tests."""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

import slspec.shooting
from slspec import (
    DIRICHLET,
    Potential,
    RationalHerglotz,
    Spectrum,
    correspondence_check,
    doubled_spectrum,
    eigenvalue,
    m_sample,
    spectrum,
    weyl_m,
)

PI = math.pi
Q0 = Potential.cosine([0.0])
QCOS = Potential.cosine([0.0, 1.0])
F0 = RationalHerglotz()

# frozen from tests/oracles.py: finite-difference matrix with Sturm-sequence
# bisection (n = 4000 vs 8000, Richardson) and an independent RK4 integrator
COSX_DIRICHLET_01 = (0.5947999692054139, 2.3425806193726757)
COSX_ZERO_B_K5 = (
    -0.3784892219339713,
    1.2931662819862106,
    4.0353009456742575,
    9.014303904061292,
    16.0079392390024,
    25.005051186032784,
)
COSX_DOUBLED_K5 = (
    -0.37848922148273206,
    0.5947999710235098,
    1.293166284082055,
    2.342580621594483,
    4.035300947356487,
    6.2709444462775545,
)
COSX_M_SAMPLES = (-0.6247870191236905, -1.288510018543358, -3.0627399334091243)


def test_weyl_m_closed_forms():
    assert weyl_m(Q0, F0, 1.0 / 16.0) == pytest.approx(-0.25, abs=1e-10)
    assert weyl_m(Q0, DIRICHLET, 1.0 / 16.0) == pytest.approx(0.25, abs=1e-10)


def test_weyl_m_pole():
    assert math.isinf(weyl_m(Q0, F0, 0.25))


def test_m_sample_closed_form():
    samples = m_sample(Q0, F0, (0.0, 0.2), 3)
    assert [lam for lam, _ in samples] == pytest.approx([0.0, 0.1, 0.2], abs=1e-15)
    for lam, m in samples:
        want = -math.sqrt(lam) * math.tan(math.sqrt(lam) * PI) if lam > 0 else 0.0
        assert m == pytest.approx(want, abs=1e-9)


def test_m_sample_contains_pole_row():
    # 0.25 is hit exactly by the sample grid and is a pole of m
    samples = m_sample(Q0, F0, (0.125, 0.375), 3)
    assert samples[1][0] == 0.25
    assert math.isinf(samples[1][1])
    assert math.isfinite(samples[0][1]) and math.isfinite(samples[2][1])
    assert samples[0][1] < 0.0 < samples[2][1]


def test_m_sample_validation():
    with pytest.raises(ValueError):
        m_sample(Q0, F0, (1.0, 0.0), 3)
    with pytest.raises(ValueError):
        m_sample(Q0, F0, (0.0, 1.0), 1)


def test_closed_form_spectra():
    ks = np.arange(10)
    got = spectrum(Q0, F0, math.inf, 9).eigenvalues
    assert got == pytest.approx((ks + 0.5) ** 2, abs=1e-8)
    got = spectrum(Q0, F0, 0.0, 9).eigenvalues
    assert got == pytest.approx(ks**2, abs=1e-8)
    got = spectrum(Q0, DIRICHLET, math.inf, 9).eigenvalues
    assert got == pytest.approx((ks + 1) ** 2, abs=1e-8)


def test_constant_shift_example():
    q2 = Potential.cosine([2.0])
    assert eigenvalue(q2, F0, math.inf, 0) == pytest.approx(2.25, abs=1e-9)


def test_eigenvalue_validation():
    with pytest.raises(ValueError):
        eigenvalue(Q0, F0, math.inf, -1)
    with pytest.raises(ValueError):
        eigenvalue(Q0, F0, -math.inf, 0)


def test_cos_potential_eigenvalues_match_fd_oracle():
    assert eigenvalue(QCOS, F0, math.inf, 0) == pytest.approx(COSX_DIRICHLET_01[0], abs=1e-6)
    assert eigenvalue(QCOS, F0, math.inf, 1) == pytest.approx(COSX_DIRICHLET_01[1], abs=1e-6)
    got = spectrum(QCOS, F0, 0.0, 5).eigenvalues
    assert got == pytest.approx(COSX_ZERO_B_K5, abs=1e-6)


def test_cos_potential_m_samples_match_independent_integrator():
    samples = m_sample(QCOS, F0, (0.0, 0.4), 3)
    assert [m for _, m in samples] == pytest.approx(COSX_M_SAMPLES, abs=1e-8)


def test_spectrum_type_invariants():
    spec = spectrum(QCOS, F0, 0.0, 3)
    assert spec.items() == list(enumerate(spec.eigenvalues))
    with pytest.raises(ValueError):
        Spectrum(problem=None, eigenvalues=(1.0, 1.0))


def test_interlacing_random_potentials():
    rng = np.random.default_rng(2024)
    for _ in range(3):
        q = Potential.cosine(rng.uniform(-1.0, 1.0, size=4))
        dirichlet = spectrum(q, F0, math.inf, 8).eigenvalues
        neumann = spectrum(q, F0, 0.0, 8).eigenvalues
        assert neumann[0] < dirichlet[0]
        for k in range(1, 9):
            assert dirichlet[k - 1] < neumann[k] < dirichlet[k]


def test_monotonicity_containment_and_root_property():
    rng = np.random.default_rng(11)
    bs = (3.0, 0.5, -1.0, -4.0)  # descending
    for _ in range(2):
        q = Potential.cosine(rng.uniform(-1.0, 1.0, size=4))
        dirichlet = spectrum(q, F0, math.inf, 5).eigenvalues
        for k in range(1, 6):
            lams = [eigenvalue(q, F0, b, k) for b in bs]
            # larger b gives the smaller eigenvalue, all inside the gap
            assert all(x < y for x, y in zip(lams, lams[1:]))
            for b, lam in zip(bs, lams):
                assert dirichlet[k - 1] < lam < dirichlet[k]
                assert abs(weyl_m(q, F0, lam) - b) <= 1e-7 * max(1.0, abs(b))


def test_pole_zero_scan_matches_spectra():
    poles_ref = spectrum(QCOS, F0, math.inf, 2).eigenvalues
    zeros_ref = spectrum(QCOS, F0, 0.0, 2).eigenvalues
    lo, hi = zeros_ref[0] - 0.5, poles_ref[2] + 0.5
    lams = np.linspace(lo, hi, 800)
    ms = [weyl_m(QCOS, F0, float(t)) for t in lams]
    zeros, poles = [], []
    for a, ma, b, mb in zip(lams, ms, lams[1:], ms[1:]):
        if not (math.isfinite(ma) and math.isfinite(mb)):
            continue
        if ma > 0.0 > mb:
            zeros.append(brentq(lambda t: weyl_m(QCOS, F0, t), a, b, xtol=1e-13))
        elif ma < 0.0 < mb:
            # m jumps from -inf to +inf across a pole; 1/m crosses zero there
            poles.append(brentq(lambda t: 1.0 / weyl_m(QCOS, F0, t), a, b, xtol=1e-13))
    assert poles == pytest.approx(poles_ref, abs=1e-8)
    assert zeros == pytest.approx(zeros_ref, abs=1e-8)


def test_constant_shift_invariance():
    base = Potential.cosine([0.4, -0.2])
    f = RationalHerglotz(0.0, 1.0, ())
    for c in (-3.0, 2.0):
        shifted = Potential.cosine([0.4 + c, -0.2])
        for b in (0.7, math.inf):
            got = spectrum(shifted, f, b, 4).eigenvalues
            want = np.array(spectrum(base, f, b, 4).eigenvalues) + c
            assert got == pytest.approx(want, abs=1e-8)


def test_doubled_spectrum_closed_forms():
    got = doubled_spectrum(Q0, F0, 4).eigenvalues
    assert got == pytest.approx((0.0, 0.25, 1.0, 2.25, 4.0), abs=1e-8)
    got = doubled_spectrum(Potential.cosine([2.0]), F0, 2).eigenvalues
    assert got == pytest.approx((2.0, 2.25, 3.0), abs=1e-8)


def test_doubled_spectrum_cos_matches_fd_oracle():
    got = doubled_spectrum(QCOS, F0, 5).eigenvalues
    assert got == pytest.approx(COSX_DOUBLED_K5, abs=1e-6)


def test_doubled_spectrum_rejects_dirichlet():
    with pytest.raises(ValueError):
        doubled_spectrum(Q0, DIRICHLET, 3)


def test_correspondence_closed_form():
    report = correspondence_check(Q0, F0, 4, 1e-8)
    assert report.passed
    assert report.max_gap <= 1e-8
    by_i = {p.i: p for p in report.pairs}
    assert by_i[0].mu_even == pytest.approx(0.0, abs=1e-8)
    assert by_i[0].lambda_neumann == pytest.approx(0.0, abs=1e-8)
    assert by_i[0].mu_odd == pytest.approx(0.25, abs=1e-8)
    assert by_i[0].lambda_dirichlet == pytest.approx(0.25, abs=1e-8)
    assert by_i[1].mu_even == pytest.approx(1.0, abs=1e-8)
    gaps = [g for p in report.pairs for g in (p.gap_odd, p.gap_even) if g is not None]
    assert report.max_gap == max(gaps)


def test_correspondence_with_pole_f_two_resolutions(monkeypatch):
    f = RationalHerglotz(0.0, 0.0, ((1.0, -10.0),))
    report = correspondence_check(QCOS, f, 4, 1e-6)
    assert report.passed
    monkeypatch.setattr(slspec.shooting, "BASE_STEPS", 4000)
    fine = correspondence_check(QCOS, f, 4, 1e-6)
    assert fine.passed
    # the two resolutions agree with each other as well
    assert fine.max_gap <= 1e-6 and report.max_gap <= 1e-6


def test_correspondence_requires_pair():
    with pytest.raises(ValueError):
        correspondence_check(Q0, F0, 0, 1e-6)
