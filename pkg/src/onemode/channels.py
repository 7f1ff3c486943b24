"""Gaussian channels in the characteristic-function convention.

A channel ``(K, alpha)`` acts on Weyl operators as
``V(z) -> V(K z) exp(-alpha(z, z) / 2)``.  The characteristic function of a
state transforms as ``phi_out(z) = phi_in(K z) f(z)``, hence covariances map as
``cov -> K^T cov K + alpha`` and means as ``m -> K^T m``.

``K`` has shape ``(2 * n_in, 2 * n_out)``: it takes an output phase-space
vector to an input one.  Vacuum covariance is ``I / 2`` per mode.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidChannelError, InvariantError
from .symplectic import DEFAULT_TOL, symplectic_eigenvalues, symplectic_matrix


def _as_matrix(a, name: str) -> np.ndarray:
    arr = np.array(a, dtype=float)
    if arr.ndim != 2:
        raise InvalidChannelError(f"{name} must be a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidChannelError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GaussianChannel:
    """Zero-mean Gaussian channel ``(K, alpha)``.

    ``complementary`` is only set on channels produced from a dilation's
    environment block: ``True`` when the environment state is pure
    (a genuine complementary channel), ``False`` for a weak complementary.
    """

    K: np.ndarray
    alpha: np.ndarray
    complementary: bool | None = field(default=None, compare=False)

    def __post_init__(self):
        K = _as_matrix(self.K, "K")
        alpha = _as_matrix(self.alpha, "alpha")
        if K.shape[0] % 2 or K.shape[1] % 2:
            raise InvalidChannelError(f"K must have even dimensions, got {K.shape}")
        if alpha.shape != (K.shape[1], K.shape[1]):
            raise InvalidChannelError(
                f"alpha must be {K.shape[1]}x{K.shape[1]} to match K {K.shape}, got {alpha.shape}"
            )
        if np.max(np.abs(alpha - alpha.T), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(alpha))):
            raise InvalidChannelError("alpha must be symmetric")
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "alpha", alpha)

    @property
    def n_in(self) -> int:
        return self.K.shape[0] // 2

    @property
    def n_out(self) -> int:
        return self.K.shape[1] // 2

    @classmethod
    def identity(cls, n_modes: int = 1) -> "GaussianChannel":
        d = 2 * n_modes
        return cls(np.eye(d), np.zeros((d, d)))

    @classmethod
    def from_dict(cls, data: dict) -> "GaussianChannel":
        """Build from the literal ``{"K": [[..]], "alpha": [[..]]}`` (row-major)."""
        try:
            return cls(data["K"], data["alpha"])
        except KeyError as exc:
            raise InvalidChannelError(f"channel literal is missing key {exc}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InvalidChannelError):
                raise
            raise InvalidChannelError(f"malformed channel literal: {exc}") from None

    def to_dict(self) -> dict:
        return {"K": self.K.tolist(), "alpha": self.alpha.tolist()}


@dataclass(frozen=True)
class GaussianState:
    """Gaussian state given by quadrature means and covariance matrix."""

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        cov = _as_matrix(self.cov, "cov")
        if cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
            raise InvalidChannelError(f"cov must be square with even size, got {cov.shape}")
        mean = np.array(self.mean, dtype=float).reshape(-1)
        if mean.shape != (cov.shape[0],):
            raise InvalidChannelError(f"mean has length {mean.size}, expected {cov.shape[0]}")
        mean.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "mean", mean)

    @property
    def n_modes(self) -> int:
        return self.cov.shape[0] // 2

    @classmethod
    def from_cov(cls, cov) -> "GaussianState":
        cov = np.asarray(cov, dtype=float)
        return cls(np.zeros(cov.shape[0]), cov)

    @classmethod
    def vacuum(cls, n_modes: int = 1) -> "GaussianState":
        return cls.from_cov(0.5 * np.eye(2 * n_modes))

    @classmethod
    def thermal(cls, N: float, n_modes: int = 1) -> "GaussianState":
        if N < 0:
            raise InvalidChannelError(f"mean photon number must be >= 0, got {N}")
        return cls.from_cov((N + 0.5) * np.eye(2 * n_modes))

    def uncertainty_margin(self) -> float:
        """Smallest eigenvalue of ``cov + (i/2) J``; non-negative for legal states."""
        H = self.cov + 0.5j * symplectic_matrix(self.n_modes)
        return float(np.linalg.eigvalsh(H)[0])

    def is_legal(self, tol: float = DEFAULT_TOL) -> bool:
        return self.uncertainty_margin() >= -tol

    def symplectic_eigenvalues(self) -> np.ndarray:
        return symplectic_eigenvalues(self.cov)


def validity_matrix(ch: GaussianChannel) -> np.ndarray:
    """Hermitian matrix ``alpha + (i/2)(K^T J_in K - J_out)`` of the CP condition."""
    J_in = symplectic_matrix(ch.n_in)
    J_out = symplectic_matrix(ch.n_out)
    return ch.alpha + 0.5j * (ch.K.T @ J_in @ ch.K - J_out)


def _hermitian_margin(ch: GaussianChannel) -> float:
    return float(np.linalg.eigvalsh(validity_matrix(ch))[0])


def scalar_validity(K, alpha, tol: float = DEFAULT_TOL) -> bool:
    """One-mode criterion ``det alpha >= ((det K - 1) / 2)^2`` with ``alpha`` PSD.

    Evaluated for the shifted matrix ``M + tol * I`` so that it coincides
    exactly with ``lambda_min(M) >= -tol`` for the Hermitian test.
    """
    K = np.asarray(K, dtype=float)
    alpha = np.asarray(alpha, dtype=float)
    c = 0.5 * (np.linalg.det(K) - 1.0)
    tr = alpha[0, 0] + alpha[1, 1]
    det_shift = np.linalg.det(alpha) - c * c + tol * tr + tol * tol
    return bool(tr + 2 * tol >= 0 and det_shift >= 0)


def validity_check(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> bool:
    """Complete-positivity test for a Gaussian channel.

    True iff ``alpha + (i/2)(K^T J K - J)`` is positive semidefinite up to
    ``tol``.  For one-mode channels the scalar determinant criterion is also
    computed and must agree.
    """
    margin = _hermitian_margin(ch)
    ok = margin >= -tol
    if ch.n_in == 1 and ch.n_out == 1:
        scalar = scalar_validity(ch.K, ch.alpha, tol)
        scale = max(1.0, float(np.max(np.abs(ch.alpha))), abs(np.linalg.det(ch.K)))
        if scalar != ok and abs(margin + tol) > 1e-12 * scale:
            raise InvariantError(
                f"scalar and Hermitian validity tests disagree (margin {margin:.3e})"
            )
    return bool(ok)


def require_valid(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> GaussianChannel:
    if not validity_check(ch, tol):
        raise InvalidChannelError(
            "channel is not completely positive: alpha + (i/2)(K^T J K - J) has "
            f"eigenvalue {_hermitian_margin(ch):.6g} < 0"
        )
    return ch


def apply_to_state(ch: GaussianChannel, s: GaussianState) -> GaussianState:
    """Output state: ``cov -> K^T cov K + alpha``, ``mean -> K^T mean``."""
    if s.n_modes != ch.n_in:
        raise InvalidChannelError(
            f"channel expects {ch.n_in} input mode(s), state has {s.n_modes}"
        )
    cov = ch.K.T @ s.cov @ ch.K + ch.alpha
    return GaussianState(ch.K.T @ s.mean, 0.5 * (cov + cov.T))


def compose(first: GaussianChannel, second: GaussianChannel) -> GaussianChannel:
    """Channel that applies ``first`` and then ``second``."""
    if first.n_out != second.n_in:
        raise InvalidChannelError(
            f"cannot compose: first has {first.n_out} output mode(s), second takes {second.n_in}"
        )
    K = first.K @ second.K
    alpha = second.K.T @ first.alpha @ second.K + second.alpha
    return GaussianChannel(K, 0.5 * (alpha + alpha.T))
