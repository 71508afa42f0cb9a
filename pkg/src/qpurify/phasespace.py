"""Wigner functions of one-dimensional wavefunctions sampled on uniform grids.

Conventions: hbar = 1 and

    W(q, p) = 1/(2 pi) * integral psi(q + u/2) conj(psi(q - u/2)) exp(-i p u) du,

so that W integrates to one and a pure state has integral of W**2 equal to
1/(2 pi). Off-grid samples of psi come from band-limited (FFT) interpolation
onto a grid refined by ``refine``; the u-integral is a direct discrete
Fourier sum evaluated at the requested momenta.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    BoundaryLeak,
    GridMismatch,
    GridTooCoarse,
    ImaginaryResidue,
    NotNormalized,
    ValidationError,
)
from .superpose import SuperposeParams, combine

WAVE_NORM_TOL = 1e-8
BOUNDARY_DECAY = 1e-6
IMAG_TOL = 1e-10
KERNEL_EIG_TOL = 1e-13
DEFAULT_REFINE = 2


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid of ``n`` points from ``xmin`` to ``xmax`` inclusive."""

    xmin: float
    xmax: float
    n: int

    def __post_init__(self):
        if not self.xmax > self.xmin:
            raise ValidationError(f"grid needs xmax > xmin, got [{self.xmin}, {self.xmax}]")
        if int(self.n) != self.n or self.n < 16:
            raise ValidationError(f"grid needs n >= 16 points, got {self.n}")
        object.__setattr__(self, "xmin", float(self.xmin))
        object.__setattr__(self, "xmax", float(self.xmax))
        object.__setattr__(self, "n", int(self.n))

    @property
    def spacing(self) -> float:
        return (self.xmax - self.xmin) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.n)

    @classmethod
    def symmetric(cls, half_width: float = 8.0, n: int = 256) -> "Grid1D":
        return cls(-half_width, half_width, n)


DEFAULT_GRID = Grid1D(-8.0, 8.0, 256)


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Samples of psi(x) on ``grid`` with discrete norm sum |psi|^2 h = 1."""

    grid: Grid1D
    values: np.ndarray

    def inner(self, other: "WaveFunction") -> complex:
        """<self|other> by the rectangle rule."""
        _same_grid(self.grid, other.grid)
        return complex(np.vdot(self.values, other.values) * self.grid.spacing)


@dataclass(frozen=True, eq=False)
class WignerGrid:
    qgrid: Grid1D
    pgrid: Grid1D
    values: np.ndarray

    @property
    def cell(self) -> float:
        return self.qgrid.spacing * self.pgrid.spacing


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Position-space kernel rho(x_i, x_j) of a (possibly mixed) state."""

    grid: Grid1D
    kernel: np.ndarray

    @classmethod
    def from_ensemble(cls, states: Sequence[WaveFunction], weights: Sequence[float]) -> "GridDensity":
        grid = states[0].grid
        kernel = np.zeros((grid.n, grid.n), dtype=complex)
        for psi, w in zip(states, weights):
            _same_grid(grid, psi.grid)
            kernel += w * np.outer(psi.values, psi.values.conj())
        return cls(grid, kernel)

    def components(self, tol: float = KERNEL_EIG_TOL) -> list[tuple[float, WaveFunction]]:
        """Eigen-ensemble ``[(weight, psi), ...]`` with |weight| > ``tol``."""
        h = self.grid.spacing
        herm = 0.5 * (self.kernel + self.kernel.conj().T) * h
        w, v = np.linalg.eigh(herm)
        keep = np.flatnonzero(np.abs(w) > tol)[::-1]
        return [(float(w[k]), WaveFunction(self.grid, v[:, k] / np.sqrt(h))) for k in keep]


class SuperpositionGrids(NamedTuple):
    total: WignerGrid
    w1: WignerGrid
    w2: WignerGrid
    interference: np.ndarray
    norm_factor: float


def _same_grid(a: Grid1D, b: Grid1D) -> None:
    if a != b:
        raise GridMismatch(f"GridMismatch: {a} vs {b}")


def make_wavefunction(grid: Grid1D, values, normalize: bool = False) -> WaveFunction:
    """Wrap samples, checking the discrete norm to ``WAVE_NORM_TOL``."""
    v = np.array(values, dtype=complex).reshape(-1)
    if v.shape[0] != grid.n:
        raise ValidationError(f"expected {grid.n} samples, got {v.shape[0]}")
    norm2 = float(np.sum(np.abs(v) ** 2) * grid.spacing)
    if normalize:
        v = v / np.sqrt(norm2)
    elif abs(norm2 - 1.0) > WAVE_NORM_TOL:
        raise NotNormalized(f"NotNormalized: discrete norm {norm2:.10f} differs from 1 by more than {WAVE_NORM_TOL:g}")
    v.setflags(write=False)
    return WaveFunction(grid, v)


def fock_wavefunction(n: int, grid: Grid1D = DEFAULT_GRID) -> WaveFunction:
    """Harmonic-oscillator eigenfunction psi_n(x) (unit mass and frequency)."""
    x = grid.points
    # normalized Hermite-function recurrence; avoids overflow of H_n(x)
    prev = np.zeros_like(x)
    cur = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    for k in range(n):
        prev, cur = cur, np.sqrt(2.0 / (k + 1)) * x * cur - np.sqrt(k / (k + 1)) * prev
    return make_wavefunction(grid, cur, normalize=True)


def coherent_wavefunction(alpha: complex, grid: Grid1D = DEFAULT_GRID) -> WaveFunction:
    """Coherent state with alpha = (q0 + i p0) / sqrt(2)."""
    x = grid.points
    q0 = np.sqrt(2.0) * alpha.real
    p0 = np.sqrt(2.0) * alpha.imag
    psi = np.pi ** -0.25 * np.exp(-0.5 * (x - q0) ** 2 + 1j * p0 * x - 0.5j * q0 * p0)
    return make_wavefunction(grid, psi, normalize=True)


def superpose_wavefunctions(psi1: WaveFunction, psi2: WaveFunction, params: SuperposeParams) -> tuple[WaveFunction, float]:
    """Normalized superposition on a shared grid, plus its factor N."""
    vals, n = combine(psi1.values, psi2.values, params, psi1.inner(psi2))
    vals.setflags(write=False)
    return WaveFunction(psi1.grid, vals), n


def check_decay(psi: WaveFunction) -> None:
    """Raise :class:`BoundaryLeak` unless both edge samples are below 1e-6 of the peak."""
    mag = np.abs(psi.values)
    peak = mag.max()
    edge = max(mag[0], mag[-1])
    if edge > BOUNDARY_DECAY * peak:
        raise BoundaryLeak(f"BoundaryLeak: edge amplitude ratio {edge / peak:.3e} > {BOUNDARY_DECAY:g}")


def check_resolution(grid: Grid1D, pgrid: Grid1D, refine: int, strict: bool) -> None:
    h_u = 2.0 * grid.spacing / refine
    p_max = max(abs(pgrid.xmin), abs(pgrid.xmax))
    if p_max > 0 and h_u > np.pi / p_max:
        msg = f"GridTooCoarse: shift step {h_u:.4g} exceeds pi/p_max = {np.pi / p_max:.4g}"
        if strict:
            raise GridTooCoarse(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=3)


def _fine_samples(values: np.ndarray, h: float, refine: int, delta: float, length: int) -> np.ndarray:
    """Band-limited interpolant at x0 + delta + j h/refine, j < length*refine."""
    spec = np.fft.fft(values, length)
    spec *= np.exp(1j * 2 * np.pi * np.fft.fftfreq(length, d=h) * delta)
    if refine == 1:
        return np.fft.ifft(spec)
    half = length // 2
    big = np.zeros(length * refine, dtype=complex)
    big[:half] = spec[:half]
    big[length * refine - half + 1:] = spec[half + 1:]
    big[half] = 0.5 * spec[half]
    big[length * refine - half] += 0.5 * spec[half]
    return np.fft.ifft(big) * refine


def _cross_kernel(a: np.ndarray, b: np.ndarray, grid: Grid1D, q: np.ndarray, refine: int):
    """Rows C[i, m] = a(q_i + m hf) conj(b(q_i - m hf)), with hf = h/refine."""
    n = grid.n
    h = grid.spacing
    hf = h / refine
    length = 1 << int(np.ceil(np.log2(2 * n)))
    last = (n - 1) * refine
    big_m = last
    m = np.arange(-big_m, big_m + 1)

    d = (q - grid.xmin) / hf
    k = np.round(d)
    offgrid = np.abs(d - k) > 1e-9
    k[offgrid] = np.floor(d[offgrid])
    k = k.astype(int)
    delta = np.where(offgrid, (d - k) * hf, 0.0)

    rows = np.zeros((q.size, m.size), dtype=complex)
    # one interpolation per distinct sub-grid offset
    keys = np.round(delta / hf * 1e9).astype(np.int64)
    for key in np.unique(keys):
        sel = np.flatnonzero(keys == key)
        dl = float(delta[sel[0]])
        fa = _fine_samples(a, h, refine, dl, length)
        fb = fa if b is a else _fine_samples(b, h, refine, dl, length)
        plus = k[sel, None] + m[None, :]
        minus = k[sel, None] - m[None, :]
        inside = (plus >= 0) & (plus <= last) & (minus >= 0) & (minus <= last)
        vals = fa[np.clip(plus, 0, last)] * np.conj(fb[np.clip(minus, 0, last)])
        rows[sel] = np.where(inside, vals, 0.0)
    return rows, m, hf


def _wigner_transform(a: np.ndarray, b: np.ndarray, grid: Grid1D, qgrid: Grid1D, pgrid: Grid1D, refine: int) -> np.ndarray:
    """Complex W_ab(q, p) = 1/(2 pi) int a(q+u/2) conj(b(q-u/2)) e^{-ipu} du."""
    rows, m, hf = _cross_kernel(a, b, grid, qgrid.points, refine)
    phase = np.exp(-2j * hf * np.outer(m, pgrid.points))
    return (hf / np.pi) * (rows @ phase)


def _real_part(w: np.ndarray) -> np.ndarray:
    resid = float(np.max(np.abs(w.imag))) if w.size else 0.0
    if resid > IMAG_TOL:
        raise ImaginaryResidue(f"ImaginaryResidue: max |Im W| = {resid:.3e} > {IMAG_TOL:g}")
    return np.ascontiguousarray(w.real)


def wigner(
    psi: WaveFunction,
    qgrid: Grid1D | None = None,
    pgrid: Grid1D | None = None,
    *,
    refine: int = DEFAULT_REFINE,
    strict: bool = False,
) -> WignerGrid:
    """Wigner function of a pure state on the (q, p) grid.

    Defaults to the wavefunction's own grid in q and [-8, 8] with 256 points
    in p. Raises :class:`BoundaryLeak` if psi does not decay at its grid
    edges; a shift step too coarse for the requested momenta warns, or raises
    :class:`GridTooCoarse` when ``strict``.
    """
    qgrid = qgrid or psi.grid
    pgrid = pgrid or DEFAULT_GRID
    check_decay(psi)
    check_resolution(psi.grid, pgrid, refine, strict)
    w = _wigner_transform(psi.values, psi.values, psi.grid, qgrid, pgrid, refine)
    return WignerGrid(qgrid, pgrid, _real_part(w))


def cross_wigner(
    psi1: WaveFunction,
    psi2: WaveFunction,
    qgrid: Grid1D | None = None,
    pgrid: Grid1D | None = None,
    *,
    refine: int = DEFAULT_REFINE,
    strict: bool = False,
) -> np.ndarray:
    """Complex cross-Wigner grid of |psi2><psi1|.

    Its discrete integral over the grid equals <psi1|psi2>.
    """
    _same_grid(psi1.grid, psi2.grid)
    qgrid = qgrid or psi1.grid
    pgrid = pgrid or DEFAULT_GRID
    check_decay(psi1)
    check_decay(psi2)
    check_resolution(psi1.grid, pgrid, refine, strict)
    return _wigner_transform(psi2.values, psi1.values, psi1.grid, qgrid, pgrid, refine)


def wigner_density(
    rho: GridDensity,
    qgrid: Grid1D | None = None,
    pgrid: Grid1D | None = None,
    *,
    refine: int = DEFAULT_REFINE,
    strict: bool = False,
) -> WignerGrid:
    """Wigner function of a position-space density kernel, via its eigen-ensemble."""
    qgrid = qgrid or rho.grid
    pgrid = pgrid or DEFAULT_GRID
    total = np.zeros((qgrid.n, pgrid.n))
    for weight, psi in rho.components():
        total += weight * wigner(psi, qgrid, pgrid, refine=refine, strict=strict).values
    return WignerGrid(qgrid, pgrid, total)


def wigner_superposition(
    psi1: WaveFunction,
    psi2: WaveFunction,
    params: SuperposeParams,
    qgrid: Grid1D | None = None,
    pgrid: Grid1D | None = None,
    *,
    refine: int = DEFAULT_REFINE,
    strict: bool = False,
) -> SuperpositionGrids:
    """Wigner grids of a superposition and of its parts.

    ``interference = Re(exp(i phi) W21)`` so that, pointwise,
    ``total = N**2 (cos^2 w1 + sin^2 w2 + sin(2 theta) interference)``.
    """
    qgrid = qgrid or psi1.grid
    pgrid = pgrid or DEFAULT_GRID
    kw = dict(refine=refine, strict=strict)
    psi, n = superpose_wavefunctions(psi1, psi2, params)
    w1 = wigner(psi1, qgrid, pgrid, **kw)
    w2 = wigner(psi2, qgrid, pgrid, **kw)
    w21 = cross_wigner(psi1, psi2, qgrid, pgrid, **kw)
    interference = (np.exp(1j * params.phi) * w21).real
    total = wigner(psi, qgrid, pgrid, **kw)
    return SuperpositionGrids(total, w1, w2, interference, n)


def purity_integral(w: WignerGrid) -> float:
    """Discrete integral of W**2; 1/(2 pi) for pure states."""
    return float(np.sum(w.values ** 2) * w.cell)


def normalization(w: WignerGrid) -> float:
    return float(np.sum(w.values) * w.cell)


def marginals(w: WignerGrid) -> tuple[np.ndarray, np.ndarray]:
    """Position density on the q grid and momentum density on the p grid."""
    return (
        w.values.sum(axis=1) * w.pgrid.spacing,
        w.values.sum(axis=0) * w.qgrid.spacing,
    )


__all__ = [
    "DEFAULT_GRID",
    "Grid1D",
    "GridDensity",
    "SuperpositionGrids",
    "WaveFunction",
    "WignerGrid",
    "check_decay",
    "coherent_wavefunction",
    "cross_wigner",
    "fock_wavefunction",
    "make_wavefunction",
    "marginals",
    "normalization",
    "purity_integral",
    "superpose_wavefunctions",
    "wigner",
    "wigner_density",
    "wigner_superposition",
]
