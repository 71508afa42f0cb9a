"""Finite-dimensional density operators: construction, validation, spectra."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    NotHermitian,
    NotNormalized,
    NotPositive,
    NotUnitTrace,
    ValidationError,
)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NORM_TOL = 1e-12
# eigenvalues down to -PSD_FLOOR are clamped to zero; anything lower is rejected
PSD_FLOOR = 1e-10
# eigenvalues above this count towards the rank
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitude vector."""

    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace matrix.

    Build instances with :func:`make_density`; the constructor itself does
    not validate.
    """

    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues sorted descending; column ``j`` of ``eigenvectors`` belongs to ``eigenvalues[j]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def rank(self, tol: float = RANK_TOL) -> int:
        return int(np.count_nonzero(self.eigenvalues > tol))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def make_state(amplitudes) -> StateVector:
    """Validate a state vector (unit norm to 1e-12)."""
    a = np.asarray(amplitudes, dtype=complex)
    if a.ndim != 1 or a.shape[0] < 1:
        raise ValidationError(f"state vector must be 1-D and non-empty, got shape {a.shape}")
    norm2 = float(np.vdot(a, a).real)
    if abs(norm2 - 1.0) > NORM_TOL:
        raise NotNormalized(f"NotNormalized: |<psi|psi> - 1| = {abs(norm2 - 1.0):.3e} > {NORM_TOL:g}")
    return StateVector(_frozen(a))


def normalized_state(amplitudes) -> StateVector:
    """Scale ``amplitudes`` to unit norm and wrap them."""
    a = np.asarray(amplitudes, dtype=complex)
    return make_state(a / np.linalg.norm(a))


def make_density(entries) -> DensityMatrix:
    """Validate a matrix as a density operator.

    Raises :class:`NotHermitian`, :class:`NotUnitTrace` or :class:`NotPositive`
    naming the measured violation. Negative eigenvalues no lower than
    ``-PSD_FLOOR`` are clamped to zero and the trace renormalized.
    """
    m = np.asarray(entries, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValidationError(f"density matrix must be square with dim >= 1, got shape {m.shape}")

    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > HERMITIAN_TOL:
        raise NotHermitian(f"NotHermitian: max |rho - rho^dagger| = {herm:.3e} > {HERMITIAN_TOL:g}")
    m = 0.5 * (m + m.conj().T)

    tr = complex(np.trace(m))
    if abs(tr - 1.0) > TRACE_TOL:
        raise NotUnitTrace(f"NotUnitTrace: |tr rho - 1| = {abs(tr - 1.0):.3e} > {TRACE_TOL:g}")

    w, v = np.linalg.eigh(m)
    if w[0] < -PSD_FLOOR:
        raise NotPositive(f"NotPositive: smallest eigenvalue {w[0]:.6g} < {-PSD_FLOOR:g}")
    if w[0] < 0.0:
        w = np.clip(w, 0.0, None)
        w /= w.sum()
        m = (v * w) @ v.conj().T
        m = 0.5 * (m + m.conj().T)
    return DensityMatrix(_frozen(m))


def purity(rho: DensityMatrix) -> float:
    """Return tr(rho^2)."""
    m = rho.matrix
    return float(np.sum(np.abs(m) ** 2))


def from_state(psi: StateVector) -> DensityMatrix:
    """Rank-one projector psi psi^dagger."""
    a = psi.amplitudes
    return DensityMatrix(_frozen(np.outer(a, a.conj())))


def mix(rho1: DensityMatrix, rho2: DensityMatrix, theta: float) -> DensityMatrix:
    """Convex combination cos^2(theta) rho1 + sin^2(theta) rho2."""
    if rho1.dim != rho2.dim:
        raise DimMismatch(f"DimMismatch: {rho1.dim} vs {rho2.dim}")
    c2 = np.cos(theta) ** 2
    s2 = np.sin(theta) ** 2
    return make_density(c2 * rho1.matrix + s2 * rho2.matrix)


def fix_phases(vectors: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real and >= 0.

    Entries within ``tol`` of the maximum magnitude tie; the lowest index wins.
    """
    out = np.array(vectors, dtype=complex)
    mags = np.abs(out)
    for j in range(out.shape[1]):
        col = mags[:, j]
        k = int(np.flatnonzero(col >= col.max() - tol)[0])
        if col[k] > 0:
            out[:, j] *= np.conj(out[k, j]) / col[k]
            out[k, j] = col[k]
    return out


def spectral(rho: DensityMatrix) -> Spectrum:
    """Eigendecomposition with descending eigenvalues and fixed eigenvector phases."""
    w, v = np.linalg.eigh(rho.matrix)
    order = np.argsort(-w, kind="stable")
    w = w[order]
    v = fix_phases(v[:, order])
    w.setflags(write=False)
    v.setflags(write=False)
    return Spectrum(w, v)


def state_from_pure(rho: DensityMatrix) -> StateVector:
    """Leading eigenvector of a (numerically) rank-one density."""
    vec = spectral(rho).eigenvectors[:, 0]
    return StateVector(_frozen(vec / np.linalg.norm(vec)))
