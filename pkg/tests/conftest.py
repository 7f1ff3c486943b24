import numpy as np
import pytest

from onemode.canonical import CanonicalForm, ChannelClass
from onemode.channels import GaussianChannel, GaussianState
from onemode.symplectic import random_symplectic


def random_form(tag: ChannelClass, rng: np.random.Generator) -> CanonicalForm:
    """Canonical form with parameters drawn from moderate ranges."""
    N0 = float(rng.uniform(0.0, 3.0))
    if tag in (ChannelClass.A1, ChannelClass.A2):
        return CanonicalForm(tag, N0=N0)
    if tag is ChannelClass.B1:
        return CanonicalForm(tag)
    if tag is ChannelClass.B2:
        return CanonicalForm(tag, Nc=float(rng.uniform(0.05, 5.0)))
    if tag is ChannelClass.C:
        k = float(rng.choice([rng.uniform(0.1, 0.95), rng.uniform(1.05, 3.0)]))
        return CanonicalForm(tag, k=k, N0=N0)
    return CanonicalForm(tag, k=float(rng.uniform(0.1, 3.0)), N0=N0)


def conjugate(ch: GaussianChannel, S1: np.ndarray, S2: np.ndarray) -> GaussianChannel:
    """Channel whose reduction by ``T1 = S1``, ``T2 = S2`` is ``ch``."""
    S1i, S2i = np.linalg.inv(S1), np.linalg.inv(S2)
    return GaussianChannel(S1i @ ch.K @ S2i, S2i.T @ ch.alpha @ S2i)


def random_state(rng: np.random.Generator, n_modes: int = 1) -> GaussianState:
    """Random legal state: symplectic image of a thermal product."""
    from onemode.symplectic import direct_sum

    S = direct_sum([random_symplectic(rng) for _ in range(n_modes)])
    nus = rng.uniform(0.5, 4.0, size=n_modes)
    cov = S.T @ np.diag(np.repeat(nus, 2)) @ S
    return GaussianState(rng.normal(size=2 * n_modes), cov)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# Acceptance criteria outcomes, filled by test_acceptance.py and echoed in the summary.
ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num}. {title}: {detail}")
