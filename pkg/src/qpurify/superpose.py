"""Phase-parametrized addition of pure densities and purification of mixtures.

Two pure states combine as ``N (cos(theta) psi1 + exp(i phi) sin(theta) psi2)``
with ``N = (1 + sin(2 theta) Re(exp(i phi) <psi1|psi2>))**-0.5``. ``phi`` is
the bare applied phase; the phase of the overlap enters through
``Re(exp(i phi) <psi1|psi2>) = |<psi1|psi2>| cos(phi + arg <psi1|psi2>)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .density import (
    DensityMatrix,
    StateVector,
    _frozen,
    from_state,
    make_density,
    purity,
    spectral,
    state_from_pure,
)
from .errors import (
    DegenerateSuperposition,
    DimMismatch,
    NotPure,
    PhaseCountMismatch,
    ValidationError,
)

TWO_PI = 2.0 * np.pi
PURE_TOL = 1e-9
# squared norm of the raw combination below which it counts as cancelled;
# 1 + sin(2 theta) Re(...) carries ~1e-16 rounding, so the cut sits well above it
DEGENERATE_NORM2 = 1e-12


@dataclass(frozen=True)
class SuperposeParams:
    """Mixing angle ``theta`` in [0, pi/2] and relative phase ``phi``.

    ``phi`` is reduced into [0, 2 pi) on construction.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta = float(self.theta)
        if not (-1e-15 <= theta <= np.pi / 2 + 1e-15):
            raise ValidationError(f"theta must lie in [0, pi/2], got {theta!r}")
        object.__setattr__(self, "theta", min(max(theta, 0.0), np.pi / 2))
        object.__setattr__(self, "phi", float(np.mod(float(self.phi), TWO_PI)))


def wrap_phases(phases: Sequence[float]) -> np.ndarray:
    """Phase vector reduced into [0, 2 pi)."""
    return np.mod(np.asarray(phases, dtype=float).reshape(-1), TWO_PI)


def normalization_factor(theta: float, phi: float, overlap: complex) -> float:
    """N for the superposition given ``overlap = <psi1|psi2>``."""
    arg = 1.0 + np.sin(2 * theta) * (np.exp(1j * phi) * overlap).real
    if arg <= DEGENERATE_NORM2:
        raise DegenerateSuperposition(
            f"DegenerateSuperposition: squared norm of the combination is {arg:.3e} "
            f"(theta={theta!r}, phi={phi!r})"
        )
    return float(arg ** -0.5)


def combine(a: np.ndarray, b: np.ndarray, params: SuperposeParams, overlap: complex) -> tuple[np.ndarray, float]:
    """Return ``(N (cos a + e^{i phi} sin b), N)`` for raw amplitude arrays.

    ``overlap`` is <a|b> under whatever measure the caller's arrays carry.
    """
    n = normalization_factor(params.theta, params.phi, overlap)
    raw = np.cos(params.theta) * a + np.exp(1j * params.phi) * np.sin(params.theta) * b
    return n * raw, n


def superpose_states(psi1: StateVector, psi2: StateVector, params: SuperposeParams) -> StateVector:
    """Normalized superposition of two state vectors.

    Raises :class:`DegenerateSuperposition` when the combination cancels,
    e.g. ``psi2 == psi1`` with theta = pi/4, phi = pi.
    """
    if psi1.dim != psi2.dim:
        raise DimMismatch(f"DimMismatch: {psi1.dim} vs {psi2.dim}")
    overlap = np.vdot(psi1.amplitudes, psi2.amplitudes)
    vec, _ = combine(psi1.amplitudes, psi2.amplitudes, params, overlap)
    # polish the last ulps so downstream projectors are idempotent
    vec = vec / np.linalg.norm(vec)
    return StateVector(_frozen(vec))


def interference_operator(psi1: StateVector, psi2: StateVector, phi: float) -> np.ndarray:
    """H(phi) = (e^{i phi} |psi2><psi1| + e^{-i phi} |psi1><psi2|) / 2."""
    if psi1.dim != psi2.dim:
        raise DimMismatch(f"DimMismatch: {psi1.dim} vs {psi2.dim}")
    a, b = psi1.amplitudes, psi2.amplitudes
    half = 0.5 * np.exp(1j * phi) * np.outer(b, a.conj())
    return half + half.conj().T


def _require_pure(rho: DensityMatrix, label: str) -> None:
    p = purity(rho)
    if p < 1.0 - PURE_TOL:
        raise NotPure(f"NotPure: {label} has purity {p:.12f} < 1 - {PURE_TOL:g}")


def phi_add(rho1: DensityMatrix, rho2: DensityMatrix, params: SuperposeParams) -> DensityMatrix:
    """Pure density obtained by adding two pure densities with relative phase.

    The state vectors are read off the leading eigenvectors (with the
    deterministic phase convention of :func:`spectral`), superposed, and
    projected back. The result equals
    ``N**2 (cos^2 rho1 + sin^2 rho2 + sin(2 theta) H(phi))``.
    """
    if rho1.dim != rho2.dim:
        raise DimMismatch(f"DimMismatch: {rho1.dim} vs {rho2.dim}")
    _require_pure(rho1, "rho1")
    _require_pure(rho2, "rho2")
    psi = superpose_states(state_from_pure(rho1), state_from_pure(rho2), params)
    return from_state(psi)


def purify_mixture(rho: DensityMatrix, phases: Sequence[float]) -> DensityMatrix:
    """Pure density whose eigenbasis diagonal reproduces the spectrum of ``rho``.

    In the eigenbasis of ``rho`` the (j, k) entry is
    ``sqrt(l_j l_k) exp(i (phi_j - phi_k))`` over the ``R`` eigenvalues above
    ``RANK_TOL``; ``phases`` supplies phi_2..phi_R (phi_1 = 0).
    """
    spec = spectral(rho)
    r = spec.rank()
    phases = wrap_phases(phases)
    if phases.size != r - 1:
        raise PhaseCountMismatch(
            f"PhaseCountMismatch: rank {r} needs {r - 1} phase(s), got {phases.size}"
        )
    lam = spec.eigenvalues[:r]
    lam = lam / lam.sum()
    amps = np.sqrt(lam) * np.exp(1j * np.concatenate([[0.0], phases]))
    vec = spec.eigenvectors[:, :r] @ amps
    return make_density(np.outer(vec, vec.conj()))
