"""Reduction of one-mode Gaussian channels to canonical form.

Every valid one-mode channel ``(K, alpha)`` is brought, by symplectic
``T1`` (output side) and ``T2`` (input side), to

    K' = T1 @ K @ T2,    alpha' = T2.T @ alpha @ T2

with ``(K', alpha')`` one of the six canonical classes.  The class is
decided by ``det K`` (the symplectic area ``Delta(Ke, Kh)``).
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channels import GaussianChannel, require_valid
from .exceptions import InvalidChannelError
from .symplectic import DEFAULT_TOL, FLIP, is_symplectic, rotation, squeeze, williamson_one_mode


class ChannelClass(str, Enum):
    A1 = "A1"
    A2 = "A2"
    B1 = "B1"
    B2 = "B2"
    C = "C"
    D = "D"


_PARAMS = {
    ChannelClass.A1: ("N0",),
    ChannelClass.A2: ("N0",),
    ChannelClass.B1: (),
    ChannelClass.B2: ("Nc",),
    ChannelClass.C: ("k", "N0"),
    ChannelClass.D: ("k", "N0"),
}


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical class tag with its parameters.

    Only the parameters meaningful for ``tag`` may be set: ``N0`` (A1, A2, C, D),
    ``Nc`` (B2), ``k`` (C, D; ``k != 1`` for C).
    """

    tag: ChannelClass
    N0: float | None = None
    Nc: float | None = None
    k: float | None = None

    def __post_init__(self):
        tag = ChannelClass(self.tag)
        object.__setattr__(self, "tag", tag)
        wanted = _PARAMS[tag]
        for name in ("N0", "Nc", "k"):
            value = getattr(self, name)
            if name in wanted:
                if value is None:
                    default = 0.0 if name != "k" else None
                    if default is None:
                        raise InvalidChannelError(f"class {tag.value} requires parameter {name}")
                    object.__setattr__(self, name, default)
                    value = default
                value = float(value)
                object.__setattr__(self, name, value)
                if not np.isfinite(value):
                    raise InvalidChannelError(f"{name} must be finite")
            elif value is not None:
                raise InvalidChannelError(f"class {tag.value} takes no parameter {name}")
        if self.N0 is not None and self.N0 < 0:
            raise InvalidChannelError(f"N0 must be >= 0, got {self.N0}")
        if self.Nc is not None and self.Nc < 0:
            raise InvalidChannelError(f"Nc must be >= 0, got {self.Nc}")
        if self.k is not None:
            if self.k <= 0:
                raise InvalidChannelError(f"k must be > 0, got {self.k}")
            if tag is ChannelClass.C and self.k == 1.0:
                raise InvalidChannelError("class C requires k != 1")

    @property
    def params(self) -> dict:
        return {name: getattr(self, name) for name in _PARAMS[self.tag]}


@dataclass(frozen=True)
class Decomposition:
    T1: np.ndarray
    T2: np.ndarray
    form: CanonicalForm


def build_canonical(form: CanonicalForm) -> GaussianChannel:
    """Canonical ``(K, alpha)`` for a class and its parameters."""
    I = np.eye(2)
    tag = form.tag
    if tag is ChannelClass.A1:
        return GaussianChannel(np.zeros((2, 2)), (form.N0 + 0.5) * I)
    if tag is ChannelClass.A2:
        return GaussianChannel(np.diag([1.0, 0.0]), (form.N0 + 0.5) * I)
    if tag is ChannelClass.B1:
        return GaussianChannel(I, np.diag([0.5, 0.0]))
    if tag is ChannelClass.B2:
        return GaussianChannel(I, form.Nc * I)
    k = form.k
    if tag is ChannelClass.C:
        return GaussianChannel(k * I, abs(k * k - 1.0) * (form.N0 + 0.5) * I)
    return GaussianChannel(k * FLIP, (k * k + 1.0) * (form.N0 + 0.5) * I)


def _noise_number(nu: float, scale: float, tol: float) -> float:
    N0 = nu / scale - 0.5
    if N0 < -tol:
        raise InvalidChannelError(f"inconsistent channel data: N0 = {N0:.3e} < 0")
    return max(N0, 0.0)


def _to_first_axis(u: np.ndarray) -> np.ndarray:
    """Symplectic T with ``T @ u = [1, 0]``."""
    r = np.hypot(*u)
    return squeeze(1.0 / r) @ rotation(-np.arctan2(u[1], u[0]))


def _reduce_rank_one(K: np.ndarray, S: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """A2 branch: ``K @ S`` has rank one and ``S`` makes alpha isotropic."""
    M = K @ S
    U, sv, Vt = np.linalg.svd(M)
    u = U[:, 0] * sv[0]
    v = Vt[0]
    T1 = _to_first_axis(u)
    # Rotation on the input side keeps the isotropic alpha unchanged.
    R = rotation(np.arctan2(v[1], v[0]))
    return T1, S @ R


def _rank_one_form(alpha: np.ndarray) -> np.ndarray:
    """Symplectic T2 with ``T2.T @ alpha @ T2 = diag(1/2, 0)`` for rank-one alpha."""
    evals, vecs = np.linalg.eigh(alpha)
    lam = evals[1]
    w = vecs[:, 1]
    w_perp = np.array([-w[1], w[0]])
    c = np.sqrt(2.0 * lam)
    return np.column_stack([w / c, c * w_perp])


def classify(ch: GaussianChannel, tol: float = DEFAULT_TOL) -> Decomposition:
    """Find the canonical class of a valid one-mode channel and the reducing T1, T2.

    Branching uses absolute tolerance ``tol`` on ``det K`` and on ``|K|``;
    the rank of ``alpha`` in the ``det K = 1`` branch is decided by the
    eigenvalue threshold ``tol * |alpha|``.
    """
    if ch.n_in != 1 or ch.n_out != 1:
        raise InvalidChannelError("classify handles one-mode channels only")
    require_valid(ch, tol)
    K, alpha = ch.K, ch.alpha
    d = float(np.linalg.det(K))

    if abs(d) <= tol:
        S, nu = williamson_one_mode(alpha)
        N0 = _noise_number(nu, 1.0, tol)
        if np.max(np.abs(K)) <= tol:
            return Decomposition(np.eye(2), S, CanonicalForm(ChannelClass.A1, N0=N0))
        T1, T2 = _reduce_rank_one(K, S)
        return Decomposition(T1, T2, CanonicalForm(ChannelClass.A2, N0=N0))

    if d > 0:
        k = np.sqrt(d)
        T = K / k
        if abs(d - 1.0) <= tol:
            evals = np.linalg.eigvalsh(alpha)
            norm = max(abs(evals[0]), abs(evals[1]))
            if norm <= tol:
                T2, form = np.eye(2), CanonicalForm(ChannelClass.B2, Nc=0.0)
            elif evals[0] <= tol * norm:
                T2, form = _rank_one_form(alpha), CanonicalForm(ChannelClass.B1)
            else:
                T2, nu = williamson_one_mode(alpha)
                form = CanonicalForm(ChannelClass.B2, Nc=nu)
            return Decomposition(np.linalg.inv(T @ T2), T2, form)
        T2, nu = williamson_one_mode(alpha)
        N0 = _noise_number(nu, abs(d - 1.0), tol)
        return Decomposition(np.linalg.inv(T @ T2), T2, CanonicalForm(ChannelClass.C, k=k, N0=N0))

    k = np.sqrt(-d)
    T = K / k  # antisymplectic
    T2, nu = williamson_one_mode(alpha)
    N0 = _noise_number(nu, k * k + 1.0, tol)
    T1 = FLIP @ np.linalg.inv(T @ T2)
    return Decomposition(T1, T2, CanonicalForm(ChannelClass.D, k=k, N0=N0))


def decomposition_residuals(ch: GaussianChannel, dec: Decomposition) -> dict:
    """Max-norm residuals of the reduction equalities."""
    can = build_canonical(dec.form)
    return {
        "K": float(np.max(np.abs(dec.T1 @ ch.K @ dec.T2 - can.K))),
        "alpha": float(np.max(np.abs(dec.T2.T @ ch.alpha @ dec.T2 - can.alpha))),
    }


def verify_decomposition(ch: GaussianChannel, dec: Decomposition, tol: float = DEFAULT_TOL) -> bool:
    res = decomposition_residuals(ch, dec)
    return (
        res["K"] <= tol
        and res["alpha"] <= tol
        and is_symplectic(dec.T1, tol)
        and is_symplectic(dec.T2, tol)
    )
