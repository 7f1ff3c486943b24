"""Symplectic dilations of the canonical channels.

A dilation is a linear Heisenberg dynamics ``R -> S @ R`` of the canonical
variables ``R = (Q, P, q1, p1, ...)`` of system plus environment, with the
environment prepared in a Gaussian state.  Restricting the output to the
system rows gives the channel; restricting it to the environment rows gives
the (weak) complementary channel.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .canonical import CanonicalForm, ChannelClass
from .channels import GaussianChannel, GaussianState
from .exceptions import InvalidChannelError
from .symplectic import DEFAULT_TOL, is_symplectic


@dataclass(frozen=True)
class Dilation:
    S: np.ndarray
    env_state: GaussianState

    def __post_init__(self):
        S = np.array(self.S, dtype=float)
        if S.shape != (2 + 2 * self.env_state.n_modes,) * 2:
            raise InvalidChannelError(
                f"S has shape {S.shape}, expected {(2 + 2 * self.env_state.n_modes,) * 2}"
            )
        S.setflags(write=False)
        object.__setattr__(self, "S", S)

    @property
    def n_env(self) -> int:
        return self.env_state.n_modes

    def is_pure(self, tol: float = DEFAULT_TOL) -> bool:
        """True when every symplectic eigenvalue of the environment state is 1/2."""
        return bool(np.all(np.abs(self.env_state.symplectic_eigenvalues() - 0.5) <= tol))


def _thermal(N0: float) -> GaussianState:
    return GaussianState.thermal(N0)


def dilation_of(form: CanonicalForm) -> Dilation:
    """Dilation realizing the canonical channel ``form``.

    Variable order is ``(Q, P, q, p)`` or, for B2, ``(Q, P, q1, p1, q2, p2)``.
    """
    tag = form.tag
    if tag is ChannelClass.A1:
        # Q -> q, P -> p ; q -> Q, p -> P
        S = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=float)
        return Dilation(S, _thermal(form.N0))
    if tag is ChannelClass.A2:
        # Q -> Q + q, P -> p ; q -> Q, p -> P - p
        S = np.array([[1, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, -1]], dtype=float)
        return Dilation(S, _thermal(form.N0))
    if tag is ChannelClass.B1:
        # Noise on Q (alpha = diag(1/2, 0)); environment in vacuum.
        # Q -> Q + q, P -> P ; q -> P - p, p -> q
        S = np.array([[1, 0, 1, 0], [0, 1, 0, 0], [0, 1, 0, -1], [0, 0, 1, 0]], dtype=float)
        return Dilation(S, GaussianState.vacuum())
    if tag is ChannelClass.B2:
        Nc = form.Nc
        if Nc <= 0:
            raise InvalidChannelError("B2 dilation needs Nc > 0 (environment variances 1/(4 Nc))")
        S = np.array(
            [
                [1, 0, 1, 0, 0, 0],  # Q  -> Q + q1
                [0, 1, 0, 0, 1, 0],  # P  -> P + q2
                [0, 0, 1, 0, 0, 0],  # q1 -> q1
                [0, -1, 0, 1, -0.5, 0],  # p1 -> p1 - P - q2/2
                [0, 0, 0, 0, 1, 0],  # q2 -> q2
                [1, 0, 0.5, 0, 0, 1],  # p2 -> p2 + Q + q1/2
            ],
            dtype=float,
        )
        env = GaussianState.from_cov(np.diag([Nc, 0.25 / Nc, Nc, 0.25 / Nc]))
        return Dilation(S, env)

    k = form.k
    if tag is ChannelClass.C and k < 1:
        c = np.sqrt(1 - k * k)
        # Q -> kQ + c q, P -> kP + c p ; q -> cQ - k q, p -> cP - k p
        S = np.array([[k, 0, c, 0], [0, k, 0, c], [c, 0, -k, 0], [0, c, 0, -k]])
    elif tag is ChannelClass.C:
        c = np.sqrt(k * k - 1)
        # Q -> kQ + c q, P -> kP - c p ; q -> cQ + k q, p -> -cP + k p
        S = np.array([[k, 0, c, 0], [0, k, 0, -c], [c, 0, k, 0], [0, -c, 0, k]])
    else:
        c = np.sqrt(k * k + 1)
        # Q -> kQ + c q, P -> -kP + c p ; q -> cQ + k q, p -> cP - k p
        S = np.array([[k, 0, c, 0], [0, -k, 0, c], [c, 0, k, 0], [0, c, 0, -k]])
    return Dilation(S, _thermal(form.N0))


def _block_channel(d: Dilation, rows: slice) -> GaussianChannel:
    S_sys = d.S[rows, :2]
    S_env = d.S[rows, 2:]
    alpha = S_env @ d.env_state.cov @ S_env.T
    return GaussianChannel(S_sys.T, 0.5 * (alpha + alpha.T))


def channel_from_dilation(d: Dilation) -> GaussianChannel:
    """System-to-system channel of the dilation."""
    return _block_channel(d, slice(0, 2))


def environment_channel_from_dilation(d: Dilation, tol: float = DEFAULT_TOL) -> GaussianChannel:
    """System-to-environment channel; flagged complementary iff the environment is pure."""
    ch = _block_channel(d, slice(2, None))
    return GaussianChannel(ch.K, ch.alpha, complementary=d.is_pure(tol))


def check_dilation(d: Dilation, tol: float = 1e-10) -> bool:
    return is_symplectic(d.S, tol) and d.env_state.is_legal(tol)
