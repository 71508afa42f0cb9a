"""Bipartite states: tensor products, partial traces, Schmidt form, and the
phase-parametrized multiplication that purifies rho_A (x) rho_B.

Composite index convention throughout: i = a * dim_b + b (``np.kron`` order).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .density import (
    RANK_TOL,
    DensityMatrix,
    StateVector,
    make_density,
    spectral,
    state_from_pure,
)
from .errors import DimFactorMismatch, PhaseCountMismatch, SpectraMismatch
from .superpose import wrap_phases

SPECTRA_TOL = 1e-8
SCHMIDT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class BipartiteDensity:
    rho: DensityMatrix
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1 or self.dim_a * self.dim_b != self.rho.dim:
            raise DimFactorMismatch(
                f"DimFactorMismatch: {self.dim_a} x {self.dim_b} does not factor dim {self.rho.dim}"
            )

    @property
    def matrix(self) -> np.ndarray:
        return self.rho.matrix


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """psi = sum_j coefficients[j] * basis_a[:, j] (x) basis_b[:, j]."""

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def rank(self) -> int:
        return self.coefficients.size

    def state(self) -> np.ndarray:
        return np.einsum("j,aj,bj->ab", self.coefficients, self.basis_a, self.basis_b).reshape(-1)


def bipartite(rho: DensityMatrix, dim_a: int, dim_b: int) -> BipartiteDensity:
    return BipartiteDensity(rho, int(dim_a), int(dim_b))


def tensor_product(rho_a: DensityMatrix, rho_b: DensityMatrix) -> BipartiteDensity:
    """rho_A (x) rho_B."""
    return BipartiteDensity(make_density(np.kron(rho_a.matrix, rho_b.matrix)), rho_a.dim, rho_b.dim)


def partial_trace(rho: BipartiteDensity, keep: Literal["A", "B"] = "A") -> DensityMatrix:
    """Reduced density of subsystem ``keep`` ("A" traces out B and vice versa)."""
    t = rho.matrix.reshape(rho.dim_a, rho.dim_b, rho.dim_a, rho.dim_b)
    key = keep.upper()
    if key == "A":
        return make_density(np.einsum("ibjb->ij", t))
    if key == "B":
        return make_density(np.einsum("aiaj->ij", t))
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def schmidt(psi_ab: StateVector, dim_a: int, dim_b: int, tol: float = SCHMIDT_TOL) -> SchmidtDecomposition:
    """Schmidt decomposition via SVD of the dim_a x dim_b amplitude matrix.

    Coefficients not above ``tol`` are dropped.
    """
    if dim_a * dim_b != psi_ab.dim:
        raise DimFactorMismatch(f"DimFactorMismatch: {dim_a} x {dim_b} does not factor dim {psi_ab.dim}")
    u, sv, vh = np.linalg.svd(psi_ab.amplitudes.reshape(dim_a, dim_b))
    r = max(1, int(np.count_nonzero(sv > tol)))
    return SchmidtDecomposition(sv[:r].copy(), u[:, :r].copy(), vh[:r].T.copy())


def padded_spectrum(rho: DensityMatrix, size: int) -> np.ndarray:
    """Descending eigenvalues, truncated or zero-padded to ``size``."""
    w = spectral(rho).eigenvalues
    out = np.zeros(size)
    k = min(size, w.size)
    out[:k] = w[:k]
    return out


def phi_multiply(rho_a: DensityMatrix, rho_b: DensityMatrix, phases: Sequence[float]) -> BipartiteDensity:
    """Pure composite state whose partial traces are ``rho_a`` and ``rho_b``.

    Builds psi_AB = sum_j sqrt(l_j) exp(i phi_j) |a_j>|b_j>, pairing the
    eigenvectors of both factors in descending eigenvalue order; phi_1 = 0
    and ``phases`` supplies the remaining R - 1 angles. The spectra of the two
    factors must agree to 1e-8.
    """
    sa, sb = spectral(rho_a), spectral(rho_b)
    size = max(rho_a.dim, rho_b.dim)
    la = np.zeros(size)
    lb = np.zeros(size)
    la[: rho_a.dim] = sa.eigenvalues
    lb[: rho_b.dim] = sb.eigenvalues
    gap = np.abs(la - lb)
    if gap.max() > SPECTRA_TOL:
        j = int(np.argmax(gap))
        raise SpectraMismatch(
            f"SpectraMismatch: eigenvalue {j} differs by {gap[j]:.3e} ({la[j]:.12g} vs {lb[j]:.12g})"
        )
    r = sa.rank(RANK_TOL)
    phases = wrap_phases(phases)
    if phases.size != r - 1:
        raise PhaseCountMismatch(
            f"PhaseCountMismatch: rank {r} needs {r - 1} phase(s), got {phases.size}"
        )
    lam = sa.eigenvalues[:r] / sa.eigenvalues[:r].sum()
    amps = np.sqrt(lam) * np.exp(1j * np.concatenate([[0.0], phases]))
    psi = np.einsum("j,aj,bj->ab", amps, sa.eigenvectors[:, :r], sb.eigenvectors[:, :r]).reshape(-1)
    psi /= np.linalg.norm(psi)
    return BipartiteDensity(make_density(np.outer(psi, psi.conj())), rho_a.dim, rho_b.dim)


def product_eigenbasis(rho_a: DensityMatrix, rho_b: DensityMatrix) -> np.ndarray:
    """Unitary whose columns are |a_j>|b_k> in composite index order j * dim_b + k."""
    return np.kron(spectral(rho_a).eigenvectors, spectral(rho_b).eigenvectors)


def entanglement_defect(rho: BipartiteDensity) -> float:
    """Frobenius distance from rho_AB to the product of its own marginals."""
    prod = np.kron(partial_trace(rho, "A").matrix, partial_trace(rho, "B").matrix)
    return float(np.linalg.norm(rho.matrix - prod))


def state_of(rho: BipartiteDensity) -> StateVector:
    """Leading eigenvector of a (numerically) pure composite density."""
    return state_from_pure(rho.rho)


__all__ = [
    "BipartiteDensity",
    "SchmidtDecomposition",
    "bipartite",
    "entanglement_defect",
    "padded_spectrum",
    "partial_trace",
    "phi_multiply",
    "product_eigenbasis",
    "schmidt",
    "state_of",
    "tensor_product",
]
