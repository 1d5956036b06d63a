"""Smoke tests for the povmlab python module."""

import json
import math

import numpy as np
import pytest

import povmlab as pl


def test_version():
    assert pl.__version__


def test_operator_core_roundtrip():
    rng = np.random.default_rng(7)
    g = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    a = g + g.conj().T
    w, v = pl.spectral_decomp(a)
    assert np.all(np.diff(w) >= 0)
    assert np.allclose(v @ np.diag(w) @ v.conj().T, a, atol=1e-10)
    assert pl.op_norm(a) == pytest.approx(np.max(np.abs(w)))

    psd = g @ g.conj().T
    root = pl.psd_sqrt(psd)
    assert np.allclose(root @ root, psd, atol=1e-9)


def test_trivial_povm_noise_and_commutativity():
    trivial = pl.Povm.trivial(2, 4)
    value, witness = pl.noise_magnitude(trivial)
    assert value == 1.0
    assert abs(witness.sum()) < 1e-15
    nu_q, _, _ = pl.noncommutativity(trivial)
    assert nu_q == 0.0


def test_random_povm_sums_to_identity():
    povm = pl.Povm.random(3, 4, seed=11)
    total = sum(povm.elements())
    assert np.allclose(total, np.eye(3), atol=1e-10)
    for x, y in [((1, -1, 1, -1), (1, 1, -1, -1)), ((0.3, -0.2, 0.9, 0.0), (1, 0, 0, 0))]:
        assert pl.janssens_residual(povm, np.array(x), np.array(y)) >= -1e-9


def test_naimark_dilation_identity():
    povm = pl.Povm.random(2, 3, seed=5)
    isometry, projectors = pl.naimark_dilate(povm)
    assert np.allclose(isometry.conj().T @ isometry, np.eye(2), atol=1e-10)
    for j, p in enumerate(projectors):
        compressed = isometry.conj().T @ p @ isometry
        assert np.allclose(compressed, povm.element(j), atol=1e-9)


def test_smearing_identity():
    source = pl.Povm.random(2, 2, seed=3)
    kernel = pl.MarkovKernel(np.array([[0.5, 0.25, 0.25], [0.1, 0.2, 0.7]]))
    smeared = pl.smear(source, kernel)
    x = np.array([0.4, -0.8, 0.1])
    lhs = pl.contract(smeared, x)
    rhs = pl.contract(source, pl.pushforward(kernel, x))
    assert np.allclose(lhs, rhs, atol=1e-10)


def test_bt1_and_spin_spectrum():
    ctx = pl.ToeplitzContext(8)
    identity = pl.toeplitz(ctx, lambda t, phi: 1.0)
    assert np.allclose(identity, np.eye(9), atol=1e-10)
    q3 = pl.toeplitz_coordinate(ctx, "q3")
    expected = np.array([(8 - 2 * k) / 10 for k in range(9)])
    assert np.allclose(np.sort(np.linalg.eigvalsh(q3)), np.sort(expected), atol=1e-10)


def test_quantized_bands_commute():
    partition = pl.band_partition(3, 0.4)
    ctx = pl.ToeplitzContext(8)
    povm = pl.quantize_partition(ctx, partition)
    for i in range(3):
        for j in range(i + 1, 3):
            assert pl.comm_norm(povm.element(i), povm.element(j)) < 1e-9
    projectors, kernel = pl.unsmear_commutative(povm)
    assert projectors.outcomes <= 9
    assert np.allclose(kernel.gamma.sum(axis=1), 1.0, atol=1e-12)


def test_quantized_caps_are_noisy():
    grid = pl.SphereGrid(24, 48)
    partition = pl.cap_partition("tetrahedron", 1.55, grid)
    ctx = pl.ToeplitzContext(12)
    povm = pl.quantize_partition(ctx, partition)
    nu_q, x, y = pl.noncommutativity(povm)
    assert nu_q > 1e-4
    lower, upper = pl.systematic_noise_bracket(povm)
    assert lower == pytest.approx(nu_q / 2)
    assert lower <= upper + 1e-9


def test_run_scenario_roundtrip():
    config = {"scenario": "janssens-fuzz", "seed": 13, "cases": 40}
    csv, summary, ok = pl.run_scenario(json.dumps(config))
    assert ok
    assert csv.startswith("scenario,m,N,")
    assert json.loads(summary)["verdicts"][0]["pass"]


def test_registration_povm_quarter_bound():
    grid = pl.SphereGrid(16, 4)
    partition = pl.band_partition(2, 0.5)
    povm = pl.classical_registration_povm(partition, grid)
    value, _ = pl.noise_magnitude(povm)
    assert value >= 0.25 - 1e-9


def test_poisson_bracket_calibration():
    q1 = lambda t, phi: math.sqrt(max(0.0, 1 - t * t)) * math.cos(phi)
    q2 = lambda t, phi: math.sqrt(max(0.0, 1 - t * t)) * math.sin(phi)
    for t, phi in [(0.3, 0.5), (-0.6, 2.0)]:
        assert pl.poisson_bracket(q1, q2, t, phi) == pytest.approx(2 * t, abs=1e-6)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(pl.PovmlabError):
        pl.Povm([np.eye(2) * 0.4, np.eye(2) * 0.4])
