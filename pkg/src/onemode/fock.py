"""Truncated Fock-space model of the additive classical noise channel.

Used as an independent check of the covariance-level results: the channel
``rho -> integral D(z) rho D(z)^* p(z) d^2 z`` with
``p(z) = exp(-|z|^2 / Nc) / (pi Nc)`` is evaluated by quadrature on explicit
density matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import roots_laguerre

from .entropy import BITS, EntropyConfig


def annihilation(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff, dtype=float)), k=1).astype(complex)


def displacement_matrix(z: complex, cutoff: int) -> np.ndarray:
    """Truncation of ``D(z) = exp(z a^dag - conj(z) a)`` to ``cutoff`` levels.

    Only the block with ``n <= cutoff / 2`` is reliable for moderate ``|z|``.
    """
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    a = annihilation(cutoff)
    return expm(z * a.conj().T - np.conj(z) * a)


def thermal_state(N: float, cutoff: int, tail_tol: float = 1e-8) -> np.ndarray:
    """Thermal density matrix with mean photon number ``N``, renormalized after truncation."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    if N == 0:
        rho = np.zeros((cutoff, cutoff), dtype=complex)
        rho[0, 0] = 1.0
        return rho
    ratio = N / (N + 1.0)
    tail = ratio**cutoff
    if tail >= tail_tol:
        raise ValueError(f"cutoff {cutoff} too small for N={N}: tail mass {tail:.2e}")
    p = ratio ** np.arange(cutoff) / (N + 1.0)
    return np.diag(p / p.sum()).astype(complex)


@dataclass(frozen=True)
class NoiseQuadrature:
    """Nodes and weights approximating the complex Gaussian measure of variance Nc."""

    nodes: np.ndarray
    weights: np.ndarray
    Nc: float

    def __post_init__(self):
        w_sum = float(np.sum(self.weights))
        if abs(w_sum - 1.0) > 1e-10:
            raise ValueError(f"quadrature weights sum to {w_sum}, not 1")

    @classmethod
    def gauss_laguerre(cls, Nc: float, n_radial: int = 40, n_angular: int = 64) -> "NoiseQuadrature":
        """Gauss-Laguerre in ``|z|^2 / Nc`` times a uniform angular grid.

        In polar form the measure is ``exp(-u) du dtheta / (2 pi)`` with
        ``u = |z|^2 / Nc``, so the second moment is reproduced exactly.
        """
        if not Nc > 0:
            raise ValueError(f"Nc must be > 0, got {Nc}")
        u, wu = roots_laguerre(n_radial)
        theta = 2 * np.pi * np.arange(n_angular) / n_angular
        r = np.sqrt(Nc * u)
        nodes = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
        weights = (wu[:, None] * np.full(n_angular, 1.0 / n_angular)[None, :]).ravel()
        return cls(nodes, weights / weights.sum(), float(Nc))

    @classmethod
    def monte_carlo(cls, Nc: float, n_samples: int, seed=None) -> "NoiseQuadrature":
        rng = np.random.default_rng(seed)
        z = rng.normal(scale=np.sqrt(Nc / 2), size=(n_samples, 2)) @ np.array([1.0, 1j])
        return cls(z, np.full(n_samples, 1.0 / n_samples), float(Nc))

    def second_moment(self) -> float:
        return float(np.sum(self.weights * np.abs(self.nodes) ** 2))


def apply_b2_numeric(rho: np.ndarray, Nc: float, quad: NoiseQuadrature | None = None) -> np.ndarray:
    """``sum_i w_i D(z_i) rho D(z_i)^dag`` over the quadrature nodes."""
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    if quad is None:
        quad = NoiseQuadrature.gauss_laguerre(Nc, n_angular=2 * d)
    if abs(quad.Nc - Nc) > 1e-12:
        raise ValueError(f"quadrature built for Nc={quad.Nc}, channel has Nc={Nc}")
    n = np.arange(d)
    out = np.zeros_like(rho)
    # D(r e^{i t}) = R(t) D(r) R(t)^dag with R(t) = exp(i t n); reuse D(r) across angles.
    cache: dict[float, np.ndarray] = {}
    for z, w in zip(quad.nodes, quad.weights):
        r = float(abs(z))
        if r not in cache:
            cache[r] = displacement_matrix(r, d)
        phase = np.exp(1j * np.angle(z) * n)
        Dz = phase[:, None] * cache[r] * phase.conj()[None, :]
        out += w * (Dz @ rho @ Dz.conj().T)
    return 0.5 * (out + out.conj().T)


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(rho - sigma))))


def von_neumann_entropy(rho: np.ndarray, cfg: EntropyConfig = BITS) -> float:
    p = np.linalg.eigvalsh(rho)
    p = p[p > 1e-15]
    return float(-np.sum(p * np.log(p)) / cfg.ln_base)


def kernel_closed_form(z: complex, zp: complex, N: float) -> complex:
    """``Tr D(z) rho_N D(z')^*`` for a thermal state."""
    return np.exp(1j * np.imag(np.conj(zp) * z) - (N + 0.5) * abs(z - zp) ** 2)


def default_kernel_points(n: int = 25, radius: float = 1.0, seed: int = 7) -> list[tuple[complex, complex]]:
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0, 1, size=(n, 2)))
    t = rng.uniform(0, 2 * np.pi, size=(n, 2))
    zs = r * np.exp(1j * t)
    return [(complex(a), complex(b)) for a, b in zs]


def gaussian_kernel_check(N: float, points, cutoff: int) -> float:
    """Max error of ``Tr D(z) rho_N D(z')^dag`` against the closed Gaussian form."""
    rho = thermal_state(N, cutoff)
    err = 0.0
    for z, zp in points:
        num = np.trace(displacement_matrix(z, cutoff) @ rho @ displacement_matrix(zp, cutoff).conj().T)
        err = max(err, abs(num - kernel_closed_form(z, zp, N)))
    return float(err)


def oracle_report(N: float = 0.3, Nc: float = 0.5, cutoff: int = 60, cfg: EntropyConfig = BITS) -> dict:
    """Fock-space check of the B2 channel against its Gaussian predictions."""
    from .entropy import g_func

    rho = thermal_state(N, cutoff)
    out = apply_b2_numeric(rho, Nc)
    target = thermal_state(N + Nc, cutoff)
    kernel_N = 0.5
    return {
        "N": N,
        "Nc": Nc,
        "cutoff": cutoff,
        "trace": float(np.real(np.trace(out))),
        "min_eigenvalue": float(np.linalg.eigvalsh(out)[0]),
        "trace_distance_to_thermal": trace_distance(out, target),
        "entropy_numeric": von_neumann_entropy(out, cfg),
        "entropy_predicted": g_func(N + Nc, cfg),
        "kernel_N": kernel_N,
        "kernel_max_error": gaussian_kernel_check(kernel_N, default_kernel_points(), min(cutoff, 50)),
    }
