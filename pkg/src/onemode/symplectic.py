"""Small dense symplectic linear algebra.

Phase-space variables are interleaved per mode as ``(x1, y1, x2, y2, ...)``
and the symplectic form is ``Delta(z, w) = z^T J w`` with ``J`` the
block-diagonal matrix of ``[[0, 1], [-1, 0]]`` blocks, so that
``Delta([1, 0], [0, 1]) = 1``.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import block_diag

DEFAULT_TOL = 1e-9

_J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def symplectic_matrix(n_modes: int) -> np.ndarray:
    """Return the ``2n x 2n`` block-diagonal symplectic form matrix."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be positive, got {n_modes}")
    return np.kron(np.eye(n_modes), _J2)


def symplectic_form(z, w) -> float:
    """Evaluate ``Delta(z, w) = x_z * y_w - y_z * x_w`` for one-mode vectors."""
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    if z.shape != (2,) or w.shape != (2,):
        raise ValueError("symplectic_form expects two phase-space vectors of length 2")
    return float(z[0] * w[1] - z[1] * w[0])


def _check_square_even(M: np.ndarray) -> int:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] % 2:
        raise ValueError(f"expected an even dimension, got {M.shape[0]}")
    return M.shape[0] // 2


def symplectic_residual(M) -> float:
    """Max-norm of ``M^T J M - J``."""
    M = np.asarray(M, dtype=float)
    J = symplectic_matrix(_check_square_even(M))
    return float(np.max(np.abs(M.T @ J @ M - J)))


def is_symplectic(M, tol: float = DEFAULT_TOL) -> bool:
    """Test whether ``M`` preserves the symplectic form to within ``tol``.

    For 2x2 input the determinant test ``|det M - 1| <= tol`` is evaluated as
    well; in one mode ``M^T J M = det(M) J`` so both must agree.
    """
    M = np.asarray(M, dtype=float)
    ok = symplectic_residual(M) <= tol
    if M.shape == (2, 2):
        by_det = abs(np.linalg.det(M) - 1.0) <= tol
        if by_det != ok:
            # Both reduce to |det M - 1|; only rounding right at tol can split them.
            resid = symplectic_residual(M)
            if abs(resid - tol) > 1e-12 * max(1.0, tol):
                from .exceptions import InvariantError

                raise InvariantError("determinant and form-preservation tests disagree")
    return ok


def williamson_one_mode(alpha) -> tuple[np.ndarray, float]:
    """Symplectically diagonalize a 2x2 positive-definite quadratic form.

    Returns ``(S, nu)`` with ``det S = 1`` and ``S.T @ alpha @ S == nu * I``,
    where ``nu = sqrt(det alpha)`` is the symplectic eigenvalue.
    """
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {alpha.shape}")
    if not np.allclose(alpha, alpha.T, atol=1e-12, rtol=0.0):
        raise ValueError("alpha must be symmetric")
    alpha = 0.5 * (alpha + alpha.T)
    evals, O = np.linalg.eigh(alpha)
    if min(evals) <= 0.0:
        raise ValueError(f"alpha must be positive definite, eigenvalues {evals}")
    # Order eigenvectors so O is as close to the identity as possible.
    if abs(O[0, 0]) < abs(O[0, 1]):
        O = O[:, ::-1]
        evals = evals[::-1]
    if O[0, 0] < 0:
        O = -O
    if np.linalg.det(O) < 0:
        O[:, 1] = -O[:, 1]
    nu = float(np.sqrt(evals[0] * evals[1]))
    S = O @ np.diag(np.sqrt(nu / evals))
    return S, nu


def rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def squeeze(lam: float) -> np.ndarray:
    if not lam > 0:
        raise ValueError(f"squeeze parameter must be positive, got {lam}")
    return np.diag([lam, 1.0 / lam])


# Antisymplectic reflection [x, y] -> [x, -y]; only used by the D-class reduction.
FLIP = np.diag([1.0, -1.0])


def random_symplectic(seed=None, max_log_squeeze: float = 1.0) -> np.ndarray:
    """Random one-mode symplectic matrix in Euler form ``R(a) Z(l) R(b)``.

    The squeeze factor is ``exp(u)`` with ``u`` uniform in
    ``[-max_log_squeeze, max_log_squeeze]``.
    """
    rng = np.random.default_rng(seed)
    a, b = rng.uniform(0.0, 2 * np.pi, size=2)
    lam = np.exp(rng.uniform(-max_log_squeeze, max_log_squeeze))
    return rotation(a) @ squeeze(lam) @ rotation(b)


def make_transform(kind: str, param=None) -> np.ndarray:
    """Build a one-mode phase-space transformation.

    ``kind`` is one of ``"rotation"`` (param = angle), ``"squeeze"``
    (param = lambda > 0), ``"flip"`` or ``"random"`` (param = seed).
    """
    if kind == "rotation":
        return rotation(0.0 if param is None else float(param))
    if kind == "squeeze":
        return squeeze(float(param))
    if kind == "flip":
        return FLIP.copy()
    if kind == "random":
        return random_symplectic(param)
    raise ValueError(f"unknown transform kind {kind!r}")


def direct_sum(blocks) -> np.ndarray:
    """Block-diagonal matrix from a non-empty list of square blocks."""
    blocks = [np.asarray(b, dtype=float) for b in blocks]
    if not blocks:
        raise ValueError("direct_sum needs at least one block")
    for b in blocks:
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError(f"all blocks must be square, got shape {b.shape}")
    return block_diag(*blocks)


def symplectic_eigenvalues(cov) -> np.ndarray:
    """Symplectic eigenvalues of a positive-definite ``2n x 2n`` matrix, ascending."""
    cov = np.asarray(cov, dtype=float)
    n = _check_square_even(cov)
    if n == 1:
        return np.array([np.sqrt(max(np.linalg.det(cov), 0.0))])
    ev = np.abs(np.linalg.eigvals(symplectic_matrix(n) @ cov))
    return np.sort(ev)[::2]
