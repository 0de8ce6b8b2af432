"""Concurrence routes A/B/Lambda, the parametrized measure family, and
separability decisions, checked against brute-force loop oracles and the
two-mode Gaussian closed forms."""

import numpy as np
import pytest

import cvconc as cv
from cvconc import (
    Bipartition,
    GaussianPureState,
    GridAxis,
    GridState,
    concurrence_gaussian_numeric,
    concurrence_report,
    concurrence_route_A,
    concurrence_route_B,
    concurrence_route_Lambda,
    decide_separability,
    family_measure,
    gauss_hermite_rule,
)
from cvconc.errors import DegenerateStateError, InputError

import oracles
from conftest import random_grid_state, random_product_state

BP = Bipartition(2, (0,))
E2_C1 = 2.0 - np.sqrt(3.0)


def small_random_state(seed, shape=(5, 6)):
    rng = np.random.default_rng(seed)
    axes = tuple(GridAxis(-2.0, 2.0, p) for p in shape)
    amp = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    return GridState.from_amplitudes(axes, amp)


def gaussian_grid(c, box=6.0, points=48):
    spec = GaussianPureState(np.array([[1.0, c / 2.0], [c / 2.0, 1.0]], dtype=complex))
    return cv.discretize(spec, [GridAxis(-box, box, points)] * 2)


def test_route_A_matches_brute_force():
    for seed in (1, 2, 3):
        state = small_random_state(seed)
        oracle = oracles.direct_concurrence(state, BP)
        assert abs(concurrence_route_A(state, BP) - oracle) < 1e-11


def test_route_A_product_state_vanishes():
    state = random_product_state(np.random.default_rng(7))
    assert concurrence_route_A(state, BP) < 1e-12


def test_route_A_gaussian_closed_form():
    state = gaussian_grid(1.0)
    assert abs(concurrence_route_A(state, BP) - E2_C1) < 2e-3


def test_route_A_bell_state(bell_state):
    # Discrete two-level maximally entangled state: purity 1/2, so every
    # route reports 1 (brute-force pinned).
    oracle = oracles.direct_concurrence(bell_state, BP)
    assert abs(oracle - 1.0) < 1e-12
    assert abs(concurrence_route_A(bell_state, BP) - oracle) < 1e-12


def test_route_B_matches_brute_force():
    for seed in (4, 5):
        state = small_random_state(seed)
        oracle = oracles.overlap_concurrence(state, BP)
        assert abs(concurrence_route_B(state, BP) - oracle) < 1e-12


def test_route_B_agrees_with_route_A():
    for seed in (8, 9, 10):
        state = small_random_state(seed, shape=(7, 7))
        a = concurrence_route_A(state, BP)
        b = concurrence_route_B(state, BP)
        assert abs(a - b) <= 1e-12 * max(a, 1.0)


def test_route_B_gaussian_branches():
    assert concurrence_route_B(gaussian_grid(0.0), BP) < 1e-12
    assert abs(concurrence_route_B(gaussian_grid(1.0), BP) - E2_C1) < 2e-3
    imag = GaussianPureState(np.array([[1.0, 1.0j], [1.0j, 1.0]]))
    state = cv.discretize(imag, [GridAxis(-6.0, 6.0, 48)] * 2)
    assert abs(concurrence_route_B(state, BP) - (2.0 - np.sqrt(2.0))) < 2e-3


def test_route_Lambda_separable_and_bell(bell_state):
    product = random_product_state(np.random.default_rng(13))
    assert abs(concurrence_route_Lambda(product, BP)) < 1e-12
    # Doubled-grid overlap for the two-level Bell state equals the purity 1/2.
    assert abs(concurrence_route_Lambda(bell_state, BP) - 1.0) < 1e-12


def test_route_Lambda_matches_route_A():
    state = gaussian_grid(1.0)
    a = concurrence_route_A(state, BP)
    lam = concurrence_route_Lambda(state, BP)
    assert abs(a - lam) <= 1e-12 * max(a, 1.0)


def test_family_measure_recovers_concurrence():
    for seed in (21, 22):
        state = small_random_state(seed)
        e = family_measure(state, BP, "two_x_squared", 2, 2)
        assert abs(e - np.sqrt(concurrence_route_A(state, BP))) < 1e-12


def test_family_measure_faithful_on_separable():
    state = random_product_state(np.random.default_rng(31))
    # The q-th root turns the ~1e-16 round-off of a vanishing integral into
    # ~1e-8, so "numerically zero" sits at the square root of the noise floor.
    for f, p in [("identity", 1), ("two_x_squared", 2), (("power", 2.0), np.inf)]:
        assert family_measure(state, BP, f, p, 2) < 1e-6


def test_family_measure_positive_on_entangled():
    state = gaussian_grid(1.0, points=24)
    assert family_measure(state, BP, ("power", 2.0), 1, 2) > 0.0


def test_family_measure_validation():
    state = small_random_state(41)
    with pytest.raises(InputError):
        family_measure(state, BP, "identity", 2, 0.0)
    with pytest.raises(InputError):
        family_measure(state, BP, "cube", 2, 2)
    with pytest.raises(InputError):
        family_measure(state, BP, lambda x: x, 2, 2)
    with pytest.raises(InputError):
        family_measure(state, BP, "identity", 3, 2)


def test_decide_separability_product_factors():
    state = random_product_state(np.random.default_rng(53))
    cert = decide_separability(state, BP)
    assert cert.verdict == "separable"
    assert cert.reconstruction_error < 1e-9
    recon = np.outer(cert.factor_m.amplitudes, cert.factor_rest.amplitudes)
    assert np.max(np.abs(recon - state.amplitudes)) < 1e-9


def test_decide_separability_entangled_witness():
    state = gaussian_grid(1.0, points=24)
    cert = decide_separability(state, BP)
    assert cert.verdict == "entangled"
    assert cert.witness.magnitude_sq > cert.threshold
    # The witness indices address an actual non-parallel quadruple.
    (a, b), (x, y) = cert.witness.slice_pair, cert.witness.basis_pair
    amp = state.amplitudes
    w = state.node_weight**2
    d = amp[a + x] * amp[b + y] - amp[a + y] * amp[b + x]
    assert abs(abs(d) ** 2 * w - cert.witness.magnitude_sq) < 1e-12


def test_decide_separability_threshold_sensitivity():
    # Product state plus a 1e-3 orthogonal perturbation: entangled at the
    # default threshold, separable at a loose one.
    rng = np.random.default_rng(61)
    f = rng.normal(size=8)
    g = rng.normal(size=8)
    f2 = rng.normal(size=8)
    g2 = rng.normal(size=8)
    f2 -= f * np.dot(f, f2) / np.dot(f, f)
    g2 -= g * np.dot(g, g2) / np.dot(g, g)
    amp = np.outer(f, g) / np.linalg.norm(np.outer(f, g))
    amp = amp + 1e-3 * np.outer(f2, g2) / np.linalg.norm(np.outer(f2, g2))
    axes = (GridAxis(-2.0, 2.0, 8), GridAxis(-2.0, 2.0, 8))
    state = GridState.from_amplitudes(axes, amp)
    assert decide_separability(state, BP, threshold=1e-8).verdict == "entangled"
    assert decide_separability(state, BP, threshold=1e-2).verdict == "separable"


def test_decide_separability_noncontiguous_bipartition():
    state = random_product_state(np.random.default_rng(71), n_axes=3)
    cert = decide_separability(state, Bipartition(3, (0, 2)))
    assert cert.verdict == "separable"
    assert cert.reconstruction_error < 1e-9


def test_gaussian_numeric_report_separable():
    spec = GaussianPureState(np.eye(2, dtype=complex))
    report = concurrence_gaussian_numeric(spec, BP, gauss_hermite_rule(32, ndim=2))
    for value in report.values().values():
        assert abs(value) < 1e-10
    assert report.verdict == "separable"


def test_gaussian_numeric_report_entangled():
    spec = GaussianPureState(np.array([[1.0, 0.5], [0.5, 1.0]], dtype=complex))
    report = concurrence_gaussian_numeric(spec, BP, gauss_hermite_rule(48, ndim=2))
    for value in report.values().values():
        assert abs(value - E2_C1) < 2e-3
    assert report.max_pairwise_gap < 1e-12
    assert report.verdict == "entangled"


def test_gaussian_numeric_wide_ridge():
    from cvconc.quadrature import midpoint_rule

    spec = GaussianPureState(np.array([[1.0, 0.95], [0.95, 1.0]], dtype=complex))
    rule = midpoint_rule([GridAxis(-10.0, 10.0, 96)] * 2)
    report = concurrence_gaussian_numeric(spec, BP, rule)
    expected = 2.0 * (1.0 - np.sqrt(4.0 - 3.61) / 2.0)
    assert abs(report.route_B_overlap - expected) < 5e-3


def test_report_range_and_symmetry(corpus):
    for state in corpus[:20]:
        report = concurrence_report(state, BP)
        for value in report.values().values():
            assert -1e-9 <= value <= 2.0 + 1e-9
        flipped = cv.concurrence_route_C(state, Bipartition(2, (1,)))
        assert abs(report.route_C_purity - flipped) < 1e-10


def test_local_phase_invariance():
    rng = np.random.default_rng(83)
    state = small_random_state(91, shape=(9, 8))
    theta = rng.uniform(0.0, 2.0 * np.pi, size=9)
    eta = rng.uniform(0.0, 2.0 * np.pi, size=8)
    phase = np.exp(1j * theta)[:, None] * np.exp(1j * eta)[None, :]
    rotated = GridState(state.axes, state.amplitudes * phase)
    before = concurrence_route_A(state, BP)
    after = concurrence_route_A(rotated, BP)
    assert abs(before - after) < 1e-11


def test_faithfulness_on_corpora(corpus, product_corpus):
    for state in corpus[:15]:
        e2 = concurrence_route_B(state, BP)
        verdict = decide_separability(state, BP, threshold=1e-10).verdict
        assert (e2 > 1e-10) == (verdict == "entangled")
    for state in product_corpus:
        assert decide_separability(state, BP, threshold=1e-10).verdict == "separable"
        assert concurrence_route_B(state, BP) < 1e-10


def test_degenerate_input_rejected():
    axes = (GridAxis(0.0, 1.0, 2), GridAxis(0.0, 1.0, 2))
    with pytest.raises(InputError):
        GridState.from_amplitudes(axes, np.zeros((2, 2)))
