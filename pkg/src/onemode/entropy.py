"""Entropies, coherent information and degradability of Gaussian channels."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channels import GaussianChannel, GaussianState, apply_to_state, validity_check
from .exceptions import InvalidChannelError
from .symplectic import DEFAULT_TOL

_CLAMP = 1e-12


@dataclass(frozen=True)
class EntropyConfig:
    """Logarithm base for all entropies: 2 (bits/qubits) or e (nats)."""

    log_base: float = 2.0

    def __post_init__(self):
        base = self.log_base
        if isinstance(base, str):
            base = {"2": 2.0, "e": math.e}.get(base.strip().lower())
        if base not in (2.0, math.e):
            raise ValueError(f"log_base must be 2 or e, got {self.log_base!r}")
        object.__setattr__(self, "log_base", float(base))

    @property
    def ln_base(self) -> float:
        return math.log(self.log_base)

    def log(self, x):
        return np.log(x) / self.ln_base


BITS = EntropyConfig(2.0)
NATS = EntropyConfig(math.e)


@dataclass(frozen=True)
class CoherentInfoPoint:
    N: float
    F: float
    H_out: float
    H_exch: float


def g_func(x: float, cfg: EntropyConfig = BITS) -> float:
    """Entropy ``(x+1) log(x+1) - x log x`` of a thermal state with mean photon number x."""
    if x < -_CLAMP:
        raise ValueError(f"g(x) needs x >= 0, got {x}")
    if x <= 0.0:
        return 0.0
    val = (x + 1.0) * math.log1p(x) - x * math.log(x)
    return val / cfg.ln_base


def gaussian_entropy(s: GaussianState, cfg: EntropyConfig = BITS, tol: float = DEFAULT_TOL) -> float:
    """Von Neumann entropy from the symplectic eigenvalues of the covariance."""
    total = 0.0
    for nu in s.symplectic_eigenvalues():
        if nu < 0.5 - tol:
            raise InvalidChannelError(f"covariance violates the uncertainty relation (nu = {nu})")
        total += g_func(max(nu - 0.5, 0.0), cfg)
    return total


def coherent_information(
    ch: GaussianChannel, comp: GaussianChannel, s: GaussianState, cfg: EntropyConfig = BITS
) -> float:
    """``H(ch[s]) - H(comp[s])`` for a channel and its complementary."""
    return gaussian_entropy(apply_to_state(ch, s), cfg) - gaussian_entropy(apply_to_state(comp, s), cfg)


def b2_coherent_info_F(N: float, Nc: float, cfg: EntropyConfig = BITS) -> CoherentInfoPoint:
    """Closed-form coherent information of the additive classical noise channel
    for a thermal input with mean photon number ``N``."""
    if N < 0 or not Nc > 0:
        raise ValueError(f"need N >= 0 and Nc > 0, got N={N}, Nc={Nc}")
    # delta = D - Nc - 1 with D = sqrt((Nc+1)^2 + 4 Nc N), written without cancellation
    # so that F(0) = 0 exactly.
    x = 4.0 * Nc * N / (Nc + 1.0) ** 2
    delta = (Nc + 1.0) * x / (math.sqrt(1.0 + x) + 1.0)
    H_out = g_func(N + Nc, cfg)
    H_exch = g_func(Nc + delta / 2.0, cfg) + g_func(delta / 2.0, cfg)
    return CoherentInfoPoint(N=float(N), F=H_out - H_exch, H_out=H_out, H_exch=H_exch)


def b2_scan(Nc: float, N_values, cfg: EntropyConfig = BITS) -> list[CoherentInfoPoint]:
    return [b2_coherent_info_F(float(N), Nc, cfg) for N in N_values]


def scan_grid(n_max: float, points: int, n_min: float = 1e-3) -> np.ndarray:
    """``N = 0`` followed by a geometric grid from ``n_min`` to ``n_max``."""
    if points < 2:
        raise ValueError("need at least 2 grid points")
    if not 0 < n_min < n_max:
        raise ValueError(f"need 0 < n_min < n_max, got {n_min}, {n_max}")
    return np.concatenate([[0.0], np.geomspace(n_min, n_max, points - 1)])


def b1_coherent_information(sigQ2: float, sigP2: float, cfg: EntropyConfig = BITS) -> float:
    """Coherent information of the B1 channel for a Gaussian input with
    zero covariance.

    ``sigQ2`` is the variance of the quadrature that passes noiselessly and
    ``sigP2`` that of the quadrature receiving the half-unit of noise.  The
    canonical B1 channel ``alpha = diag(1/2, 0)`` puts the noise on the first
    quadrature, so there the input covariance is ``diag(sigP2, sigQ2)``.
    """
    if not (sigQ2 > 0 and sigP2 > 0) or sigQ2 * sigP2 < 0.25 - _CLAMP:
        raise InvalidChannelError(f"illegal input state: sigQ2*sigP2 = {sigQ2 * sigP2} < 1/4")
    out = math.sqrt(sigQ2 * (sigP2 + 0.5)) - 0.5
    exch = math.sqrt((sigQ2 + 0.5) * 0.5) - 0.5
    return g_func(out, cfg) - g_func(max(exch, 0.0), cfg)


def c_channel_capacity(k: float, cfg: EntropyConfig = BITS) -> float:
    """Quantum capacity ``max{0, log k^2/|k^2-1|}`` of the pure-loss / quantum-limited
    amplifier channel with coefficient ``k``."""
    if not k > 0 or k == 1:
        raise ValueError(f"k must be positive and != 1, got {k}")
    k2 = k * k
    return max(0.0, float(cfg.log(k2 / abs(k2 - 1.0))))


def thermal_sup(ch, comp, N_values, cfg: EntropyConfig = BITS) -> tuple[float, float]:
    """Largest coherent information over thermal inputs; returns ``(sup, argmax N)``."""
    best, arg = -math.inf, math.nan
    for N in N_values:
        J = coherent_information(ch, comp, GaussianState.thermal(float(N)), cfg)
        if J > best:
            best, arg = J, float(N)
    return best, arg


class Verdict(str, Enum):
    DEGRADABLE = "Degradable"
    ANTI_DEGRADABLE = "AntiDegradable"
    BOTH = "Both"
    NEITHER = "Neither"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class WitnessReport:
    verdict: Verdict
    degrading_map: GaussianChannel | None
    antidegrading_map: GaussianChannel | None
    J_min: float
    J_max: float


def _degrading_candidate(ch: GaussianChannel, comp: GaussianChannel, tol: float):
    """Gaussian T with ``compose(ch, T)`` equal to ``comp``, or None."""
    try:
        K_T = np.linalg.solve(ch.K, comp.K)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(K_T)) or np.linalg.cond(ch.K) > 1.0 / tol:
        return None
    alpha_T = comp.alpha - K_T.T @ ch.alpha @ K_T
    return GaussianChannel(K_T, 0.5 * (alpha_T + alpha_T.T))


def _antidegrading_candidate(ch: GaussianChannel, comp: GaussianChannel, tol: float):
    """Gaussian T' with ``compose(comp, T')`` equal to ``ch``, or None."""
    K_T = np.linalg.pinv(comp.K) @ ch.K
    if np.max(np.abs(comp.K @ K_T - ch.K)) > tol * max(1.0, np.max(np.abs(ch.K))):
        return None
    alpha_T = ch.alpha - K_T.T @ comp.alpha @ K_T
    return GaussianChannel(K_T, 0.5 * (alpha_T + alpha_T.T))


def _probe_states():
    yield GaussianState.thermal(0.0)
    for N in np.geomspace(1e-3, 1e6, 91):
        yield GaussianState.thermal(float(N))
    for r in (0.5, 1.0, 2.0, 4.0):
        for N in (0.0, 1.0, 100.0):
            c = N + 0.5
            yield GaussianState.from_cov(np.diag([c * np.exp(-2 * r), c * np.exp(2 * r)]))
            yield GaussianState.from_cov(np.diag([c * np.exp(2 * r), c * np.exp(-2 * r)]))


def degradability_report(
    ch: GaussianChannel, comp: GaussianChannel, tol: float = DEFAULT_TOL, states=None
) -> WitnessReport:
    """Degradability witness.

    Positive claims come from an explicit Gaussian degrading (or
    anti-degrading) map that passes the validity test.  A negative claim
    (``Neither``) is made only when ``comp`` is a genuine complementary channel
    and the coherent information takes both signs over the probe states:
    ``J > 0`` rules out anti-degradability and ``J < 0`` rules out
    degradability.  Anything else is ``Inconclusive``.
    """
    if ch.n_in != 1 or ch.n_out != 1:
        raise InvalidChannelError("degradability witness handles one-mode channels only")
    if comp.n_in != ch.n_in:
        raise InvalidChannelError("channel and complementary must share the input mode")
    T = _degrading_candidate(ch, comp, tol)
    T = T if T is not None and validity_check(T, tol) else None
    Tp = _antidegrading_candidate(ch, comp, tol)
    Tp = Tp if Tp is not None and validity_check(Tp, tol) else None

    Js = [coherent_information(ch, comp, s) for s in (states if states is not None else _probe_states())]
    J_min, J_max = float(min(Js)), float(max(Js))

    if T is not None and Tp is not None:
        verdict = Verdict.BOTH
    elif T is not None:
        verdict = Verdict.DEGRADABLE
    elif Tp is not None:
        verdict = Verdict.ANTI_DEGRADABLE
    elif comp.complementary is not False and J_min < -tol and J_max > tol:
        verdict = Verdict.NEITHER
    else:
        verdict = Verdict.INCONCLUSIVE
    return WitnessReport(verdict, T, Tp, J_min, J_max)


def degradability_witness(ch: GaussianChannel, comp: GaussianChannel, tol: float = DEFAULT_TOL) -> Verdict:
    return degradability_report(ch, comp, tol).verdict
