import math

import numpy as np
import pytest

from onemode.entropy import g_func
from onemode.fock import (
    NoiseQuadrature,
    apply_b2_numeric,
    default_kernel_points,
    displacement_matrix,
    gaussian_kernel_check,
    kernel_closed_form,
    thermal_state,
    trace_distance,
    von_neumann_entropy,
)


def test_displacement_identity():
    np.testing.assert_allclose(displacement_matrix(0.0, 10), np.eye(10), atol=1e-15)


@pytest.mark.parametrize("z", [0.3, 0.5 - 0.2j, 1j, (1 + 1j) / math.sqrt(2)])
def test_vacuum_overlap(z):
    D = displacement_matrix(z, 40)
    assert D[0, 0] == pytest.approx(math.exp(-abs(z) ** 2 / 2), abs=1e-8)


def test_displacement_inverse_and_unitarity():
    d = 40
    z = 0.7 - 0.4j
    D, Dm = displacement_matrix(z, d), displacement_matrix(-z, d)
    low = slice(0, d // 2)
    np.testing.assert_allclose((D @ Dm)[low, low], np.eye(d // 2), atol=1e-8)
    np.testing.assert_allclose((D.conj().T @ D)[low, low], np.eye(d // 2), atol=1e-8)


def test_displacement_cutoff_check():
    with pytest.raises(ValueError):
        displacement_matrix(0.1, 1)


def test_thermal_state():
    vac = thermal_state(0.0, 5)
    assert vac[0, 0] == 1.0 and np.trace(vac) == 1.0
    rho = thermal_state(1.0, 60)
    val = np.trace(rho @ displacement_matrix(0.5, 60))
    assert val == pytest.approx(math.exp(-1.5 * 0.25), abs=1e-6)
    assert von_neumann_entropy(rho) == pytest.approx(2.0, abs=1e-4)
    with pytest.raises(ValueError):
        thermal_state(5.0, 10)


def test_thermal_characteristic_function_grid():
    N, d = 0.7, 60
    rho = thermal_state(N, d)
    for x in np.linspace(-1, 1, 5):
        for y in np.linspace(-1, 1, 5):
            z = complex(x, y) / math.sqrt(2)
            num = np.trace(rho @ displacement_matrix(z, d))
            assert num == pytest.approx(math.exp(-(N + 0.5) * abs(z) ** 2), abs=1e-6)


def test_quadrature_invariants():
    q = NoiseQuadrature.gauss_laguerre(0.5, 30, 16)
    assert q.weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert q.second_moment() == pytest.approx(0.5, abs=1e-12)
    mc = NoiseQuadrature.monte_carlo(0.5, 20_000, seed=1)
    assert mc.second_moment() == pytest.approx(0.5, rel=0.03)
    with pytest.raises(ValueError):
        NoiseQuadrature(np.zeros(2), np.array([0.5, 0.4]), 1.0)
    with pytest.raises(ValueError):
        NoiseQuadrature.gauss_laguerre(0.0)


def test_vacuum_output():
    out = apply_b2_numeric(thermal_state(0.0, 40), 0.2)
    assert trace_distance(out, thermal_state(0.2, 40)) <= 1e-3


def test_thermal_output_and_entropy():
    out = apply_b2_numeric(thermal_state(0.3, 60), 0.5)
    assert trace_distance(out, thermal_state(0.8, 60)) <= 1e-3
    assert von_neumann_entropy(out) == pytest.approx(g_func(0.8), abs=1e-3)


def test_output_is_a_state():
    rng = np.random.default_rng(0)
    d = 30
    A = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    rho = np.zeros((d, d), dtype=complex)
    rho[:6, :6] = A @ A.conj().T
    rho /= np.trace(rho)
    out = apply_b2_numeric(rho, 0.3)
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-8)
    np.testing.assert_allclose(out, out.conj().T, atol=1e-14)
    assert np.linalg.eigvalsh(out)[0] >= -1e-9


def test_monte_carlo_quadrature_agrees_roughly():
    q = NoiseQuadrature.monte_carlo(0.4, 4000, seed=3)
    out = apply_b2_numeric(thermal_state(0.0, 30), 0.4, q)
    assert trace_distance(out, thermal_state(0.4, 30)) <= 0.05


def test_mismatched_quadrature():
    with pytest.raises(ValueError):
        apply_b2_numeric(thermal_state(0.0, 10), 0.4, NoiseQuadrature.gauss_laguerre(0.5, 5, 5))


def test_kernel_special_points():
    N, d = 0.5, 50
    rho = thermal_state(N, d)
    z = 0.4 + 0.3j
    Dz = displacement_matrix(z, d)
    assert np.trace(Dz @ rho @ Dz.conj().T) == pytest.approx(1.0, abs=1e-10)
    assert kernel_closed_form(z, z, N) == pytest.approx(1.0)
    assert kernel_closed_form(z, 0, N) == pytest.approx(math.exp(-(N + 0.5) * abs(z) ** 2))


def test_kernel_grid():
    pts = default_kernel_points()
    assert len(pts) == 25 and all(abs(a) <= 1 and abs(b) <= 1 for a, b in pts)
    assert gaussian_kernel_check(0.5, pts, 50) <= 1e-6


def test_cutoff_convergence():
    pts = default_kernel_points(n=10)
    errs = [gaussian_kernel_check(0.5, pts, d) for d in (20, 30, 45)]
    assert errs[0] > errs[1] > errs[2] or errs[2] < 1e-14
    dists = [
        trace_distance(apply_b2_numeric(thermal_state(0.3, d), 0.5), thermal_state(0.8, d)) for d in (25, 40)
    ]
    assert dists[1] < dists[0]
