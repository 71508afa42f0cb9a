"""Symplectic tomograms: probability densities of the quadrature x = lam*q + mu*p.

Two independent routes are provided. :func:`tomogram_direct` works on the
wavefunction through the chirped Fourier integral

    Phi(lam, mu; x) = |int psi(y) exp(i lam y^2/(2 mu) - i x y/mu) dy|^2 / (2 pi |mu|),

and :func:`tomogram_radon` integrates a Wigner grid along the lines
lam*q + mu*p = x. Both reduce (lam, mu, x) to a unit direction first, which
makes the homogeneity Phi(s lam, s mu; s x) = Phi(lam, mu; x)/|s| hold by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import ndimage

from .errors import InvalidDirection, SupportClipped
from .phasespace import (
    Grid1D,
    GridDensity,
    WaveFunction,
    WignerGrid,
    _same_grid,
    check_decay,
    superpose_wavefunctions,
)
from .superpose import SuperposeParams

# |mu| below this fraction of |lam| is treated as mu = 0
MU_CROSSOVER = 1e-6
SUPPORT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class TomogramSlice:
    lam: float
    mu: float
    xgrid: Grid1D
    values: np.ndarray

    def normalization(self) -> float:
        return float(np.sum(self.values) * self.xgrid.spacing)


class TomogramSuperposition(NamedTuple):
    total: TomogramSlice
    phi1: TomogramSlice
    phi2: TomogramSlice
    interference: TomogramSlice
    norm_factor: float


def default_xgrid(lam: float, mu: float, n: int = 257, half_width: float = 8.0) -> Grid1D:
    r = float(np.hypot(lam, mu))
    return Grid1D(-half_width * r, half_width * r, n)


def _direction(lam: float, mu: float, x: np.ndarray):
    """Canonical unit direction (c, s) with angle in [0, pi), scaled x, and radius."""
    lam, mu = float(lam), float(mu)
    r2 = lam * lam + mu * mu
    if r2 < 1e-12:
        raise InvalidDirection(f"InvalidDirection: (lambda, mu) = ({lam}, {mu}) is too close to (0, 0)")
    r = np.sqrt(r2)
    sign = -1.0 if (mu < 0 or (mu == 0 and lam < 0)) else 1.0
    return sign * lam / r, sign * mu / r, sign * np.asarray(x, dtype=float) / r, r


def _sinc_interp(psi: WaveFunction, y: np.ndarray) -> np.ndarray:
    g = psi.grid
    t = (y[:, None] - g.points[None, :]) / g.spacing
    return np.sinc(t) @ psi.values


def _momentum_samples(psi: WaveFunction):
    """Unitary Fourier transform of psi sampled on a fine k grid."""
    g = psi.grid
    h = g.spacing
    length = 1 << int(np.ceil(np.log2(8 * g.n)))
    k = np.fft.fftshift(2 * np.pi * np.fft.fftfreq(length, d=h))
    spec = np.fft.fftshift(np.fft.fft(psi.values, length))
    phi = h / np.sqrt(2 * np.pi) * np.exp(-1j * k * g.xmin) * spec
    keep = np.abs(phi) > 1e-18 * np.abs(phi).max()
    lo, hi = np.flatnonzero(keep)[[0, -1]]
    return k[lo:hi + 1], phi[lo:hi + 1], k[1] - k[0]


def _chirp_amplitude(y, f, dy, c, s, xs):
    """int f(y) exp(i c y^2/(2 s) - i x y/s) dy / sqrt(2 pi |s|)."""
    chirped = f * np.exp(0.5j * (c / s) * y * y)
    kern = np.exp(-1j * np.outer(xs / s, y))
    return (kern @ chirped) * dy / np.sqrt(2 * np.pi * abs(s))


def _amplitudes(states: list[WaveFunction], c: float, s: float, xs: np.ndarray) -> list[np.ndarray]:
    """Complex amplitudes G with Phi = |G|^2 along the unit direction (c, s).

    The phase of G depends on the route but is shared by every state, so
    products G2 conj(G1) are route independent.
    """
    if abs(s) < MU_CROSSOVER * abs(c):
        return [_sinc_interp(psi, xs / c) / np.sqrt(abs(c)) for psi in states]
    if abs(s) >= abs(c):
        out = []
        for psi in states:
            g = psi.grid
            out.append(_chirp_amplitude(g.points, psi.values, g.spacing, c, s, xs))
        return out
    # near the position quadrature the chirp is too fast to sample; rotate by
    # a quarter turn into the momentum representation, where (lam, mu) -> (mu, -lam)
    out = []
    for psi in states:
        k, phi, dk = _momentum_samples(psi)
        out.append(_chirp_amplitude(k, phi, dk, s, -c, xs))
    return out


def tomogram_direct(psi: WaveFunction, lam: float, mu: float, xgrid: Grid1D | None = None) -> TomogramSlice:
    """Tomogram slice computed from the wavefunction.

    Raises :class:`InvalidDirection` for (lam, mu) = (0, 0) and
    :class:`BoundaryLeak` when psi does not decay at its grid edges.
    """
    xgrid = xgrid or default_xgrid(lam, mu)
    c, s, xs, r = _direction(lam, mu, xgrid.points)
    check_decay(psi)
    (g,) = _amplitudes([psi], c, s, xs)
    return TomogramSlice(float(lam), float(mu), xgrid, np.abs(g) ** 2 / r)


def tomogram_density(rho: GridDensity, lam: float, mu: float, xgrid: Grid1D | None = None) -> TomogramSlice:
    """Tomogram of a position-space density kernel (mixed states)."""
    xgrid = xgrid or default_xgrid(lam, mu)
    c, s, xs, r = _direction(lam, mu, xgrid.points)
    comps = rho.components()
    for _, psi in comps:
        check_decay(psi)
    amps = _amplitudes([psi for _, psi in comps], c, s, xs)
    total = sum(w * np.abs(g) ** 2 for (w, _), g in zip(comps, amps))
    return TomogramSlice(float(lam), float(mu), xgrid, np.asarray(total) / r)


def tomogram_superposition(
    psi1: WaveFunction,
    psi2: WaveFunction,
    params: SuperposeParams,
    lam: float,
    mu: float,
    xgrid: Grid1D | None = None,
) -> TomogramSuperposition:
    """Tomograms of a superposition, its two parts, and the interference slice.

    The interference slice is the tomogram of the Hermitian cross operator
    (e^{i phi}|psi2><psi1| + h.c.)/2, so that
    ``total = N**2 (cos^2 phi1 + sin^2 phi2 + sin(2 theta) interference)``.
    It integrates to Re(e^{i phi} <psi1|psi2>).
    """
    _same_grid(psi1.grid, psi2.grid)
    xgrid = xgrid or default_xgrid(lam, mu)
    c, s, xs, r = _direction(lam, mu, xgrid.points)
    check_decay(psi1)
    check_decay(psi2)
    psi, n = superpose_wavefunctions(psi1, psi2, params)
    g1, g2, g = _amplitudes([psi1, psi2, psi], c, s, xs)
    cross = (np.exp(1j * params.phi) * g2 * np.conj(g1)).real / r

    def make(vals):
        return TomogramSlice(float(lam), float(mu), xgrid, vals)

    return TomogramSuperposition(
        make(np.abs(g) ** 2 / r),
        make(np.abs(g1) ** 2 / r),
        make(np.abs(g2) ** 2 / r),
        make(cross),
        n,
    )


def tomogram_radon(w: WignerGrid, lam: float, mu: float, xgrid: Grid1D | None = None, *, order: int = 3) -> TomogramSlice:
    """Tomogram slice by line integrals of a Wigner grid.

    Lines are sampled with step min(h_q, h_p) and W is interpolated with a
    spline of the given ``order`` (1 is bilinear). Raises
    :class:`SupportClipped` when a line leaves the grid where |W| > 1e-8.
    """
    xgrid = xgrid or default_xgrid(lam, mu)
    c, s, xs, r = _direction(lam, mu, xgrid.points)
    qg, pg = w.qgrid, w.pgrid
    hq, hp = qg.spacing, pg.spacing
    ds = min(hq, hp)

    # line family: (q, p) = x (c, s) + t (-s, c); t steps pass through the corner
    corners = np.array([[qg.xmin, pg.xmin], [qg.xmin, pg.xmax], [qg.xmax, pg.xmin], [qg.xmax, pg.xmax]])
    tproj = corners @ np.array([-s, c])
    t0 = tproj[0]
    kmin = int(np.floor((tproj.min() - t0) / ds)) - 1
    kmax = int(np.ceil((tproj.max() - t0) / ds)) + 1
    t = t0 + ds * np.arange(kmin, kmax + 1)

    q = xs[:, None] * c - t[None, :] * s
    p = xs[:, None] * s + t[None, :] * c
    iq = (q - qg.xmin) / hq
    ip = (p - pg.xmin) / hp
    eps = 1e-9
    inside = (iq >= -eps) & (iq <= qg.n - 1 + eps) & (ip >= -eps) & (ip <= pg.n - 1 + eps)

    coeffs = ndimage.spline_filter(w.values, order=order, mode="mirror") if order > 1 else w.values
    vals = ndimage.map_coordinates(
        coeffs,
        [np.clip(iq, 0, qg.n - 1).ravel(), np.clip(ip, 0, pg.n - 1).ravel()],
        order=order,
        mode="mirror",
        prefilter=False,
    ).reshape(q.shape)
    vals = np.where(inside, vals, 0.0)

    # values where each line enters and leaves the grid
    any_in = inside.any(axis=1)
    first = np.argmax(inside, axis=1)
    last = inside.shape[1] - 1 - np.argmax(inside[:, ::-1], axis=1)
    rows = np.arange(len(xs))
    edge = np.maximum(np.abs(vals[rows, first]), np.abs(vals[rows, last]))
    edge = np.where(any_in, edge, 0.0)
    if edge.size and edge.max() > SUPPORT_TOL:
        i = int(np.argmax(edge))
        raise SupportClipped(
            f"SupportClipped: line x={xgrid.points[i]:.6g} exits the Wigner grid where |W| = {edge[i]:.3e}"
        )
    return TomogramSlice(float(lam), float(mu), xgrid, vals.sum(axis=1) * ds / r)
