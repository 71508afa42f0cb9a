import math

import numpy as np
import pytest
from scipy.special import eval_hermite

from qpurify import SuperposeParams
from qpurify.errors import BoundaryLeak, InvalidDirection, SupportClipped
from qpurify.phasespace import (
    DEFAULT_GRID,
    Grid1D,
    GridDensity,
    coherent_wavefunction,
    fock_wavefunction,
    make_wavefunction,
    wigner,
)
from qpurify.tomography import (
    default_xgrid,
    tomogram_density,
    tomogram_direct,
    tomogram_radon,
    tomogram_superposition,
)

from conftest import CATALOG


def density_n(n, x):
    """|psi_n(x)|^2 from Hermite polynomials."""
    psi = eval_hermite(n, x) * np.exp(-x * x / 2) / math.sqrt(2.0 ** n * math.factorial(n) * math.sqrt(math.pi))
    return psi * psi


def directions():
    out = []
    for k in range(12):
        th = 2 * np.pi * k / 12
        for r in (1.0, 0.5, 2.0):
            out.append((r * np.cos(th), r * np.sin(th)))
    return out


def test_position_and_momentum_quadratures():
    psi = fock_wavefunction(2)
    x = DEFAULT_GRID
    t = tomogram_direct(psi, 1.0, 0.0, x)
    assert np.max(np.abs(t.values - np.abs(psi.values) ** 2)) <= 1e-12
    # Hermite functions are Fourier eigenfunctions: momentum density = |psi_n(p)|^2
    t = tomogram_direct(psi, 0.0, 1.0, x)
    assert np.max(np.abs(t.values - density_n(2, x.points))) <= 1e-10
    c = coherent_wavefunction(0.5 + 1.0j)
    t = tomogram_direct(c, 0.0, 1.0)
    p0 = np.sqrt(2) * 1.0
    assert np.max(np.abs(t.values - np.exp(-(t.xgrid.points - p0) ** 2) / np.sqrt(np.pi))) <= 1e-10


@pytest.mark.parametrize("lam, mu", directions() + [(1.0, 1e-3), (0.3, -1e-4), (-1.0, 1e-7), (1e-4, 1.0)])
def test_ground_state_gaussian_oracle(lam, mu):
    t = tomogram_direct(fock_wavefunction(0), lam, mu)
    r2 = lam * lam + mu * mu
    x = t.xgrid.points
    assert np.max(np.abs(t.values - np.exp(-x * x / r2) / np.sqrt(np.pi * r2))) <= 1e-5


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("lam, mu", [(0.9, 0.1), (np.cos(1.0), np.sin(1.0)), (-2.0, 0.7), (0.02, -0.5)])
def test_fock_rotation_invariance(n, lam, mu):
    t = tomogram_direct(fock_wavefunction(n), lam, mu)
    r = math.hypot(lam, mu)
    assert np.max(np.abs(t.values - density_n(n, t.xgrid.points / r) / r)) <= 1e-8


def test_coherent_state_oracle():
    alpha = np.sqrt(2) * (1 + 1j)
    q0 = p0 = 2.0
    psi = coherent_wavefunction(alpha)
    for lam, mu in directions():
        t = tomogram_direct(psi, lam, mu)
        r2 = lam * lam + mu * mu
        x = t.xgrid.points
        ref = np.exp(-(x - lam * q0 - mu * p0) ** 2 / r2) / np.sqrt(np.pi * r2)
        assert np.max(np.abs(t.values - ref)) <= 1e-8


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_normalization_and_nonnegativity(name):
    psi = CATALOG[name]()
    for lam, mu in directions():
        t = tomogram_direct(psi, lam, mu)
        assert abs(t.normalization() - 1.0) <= 1e-6
        assert t.values.min() >= -1e-8


def test_default_xgrid():
    g = default_xgrid(1.0, 1.0)
    assert g.n == 257
    assert g.xmax == pytest.approx(8 * np.sqrt(2))


@pytest.mark.parametrize("s", [-2.0, 0.5, 2.0, 3.0])
def test_homogeneity(s):
    psi = fock_wavefunction(3)
    w = wigner(psi)
    lam, mu = 0.6, -0.45
    base_grid = Grid1D(-5.0, 5.0, 129)
    xs = s * base_grid.points
    scaled_grid = Grid1D(xs.min(), xs.max(), 129)
    order = slice(None) if s > 0 else slice(None, None, -1)
    for fn, src in ((tomogram_direct, psi), (tomogram_radon, w)):
        a = fn(src, lam, mu, base_grid).values
        b = fn(src, s * lam, s * mu, scaled_grid).values[order]
        assert np.max(np.abs(abs(s) * b - a)) <= 1e-6


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_direct_vs_radon(n):
    psi = fock_wavefunction(n)
    w = wigner(psi)
    for k in range(12):
        th = 2 * np.pi * k / 12
        lam, mu = np.cos(th), np.sin(th)
        d = tomogram_direct(psi, lam, mu)
        r = tomogram_radon(w, lam, mu)
        assert np.max(np.abs(d.values - r.values)) <= 1e-4


def test_radon_bilinear_is_coarser():
    # bilinear interpolation carries an O(h^2/12 Phi'') bias along each line
    psi = fock_wavefunction(0)
    w = wigner(psi)
    d = tomogram_direct(psi, np.cos(0.5), np.sin(0.5))
    err1 = np.max(np.abs(tomogram_radon(w, np.cos(0.5), np.sin(0.5), order=1).values - d.values))
    err3 = np.max(np.abs(tomogram_radon(w, np.cos(0.5), np.sin(0.5)).values - d.values))
    assert err3 < err1 / 20


def test_radon_ground_diagonal():
    w = wigner(fock_wavefunction(0))
    t = tomogram_radon(w, 1.0, 1.0)
    x = t.xgrid.points
    assert np.max(np.abs(t.values - np.exp(-x * x / 2) / np.sqrt(2 * np.pi))) <= 1e-5


def test_radon_position_direction_is_column_sum():
    w = wigner(fock_wavefunction(1))
    t = tomogram_radon(w, 1.0, 0.0, w.qgrid)
    assert np.max(np.abs(t.values - w.values.sum(axis=1) * w.pgrid.spacing)) <= 1e-12


def test_radon_support_clipped():
    psi = fock_wavefunction(0)
    w = wigner(psi, Grid1D(-2, 2, 64), Grid1D(-2, 2, 64))
    with pytest.raises(SupportClipped):
        tomogram_radon(w, 1.0, 0.5)


def test_invalid_direction_and_leak():
    psi = fock_wavefunction(0)
    with pytest.raises(InvalidDirection):
        tomogram_direct(psi, 0.0, 0.0, DEFAULT_GRID)
    with pytest.raises(InvalidDirection):
        tomogram_radon(wigner(psi), 1e-7, 0.0, DEFAULT_GRID)
    g = Grid1D(-2, 2, 64)
    leaky = make_wavefunction(g, np.exp(-g.points ** 2 / 2), normalize=True)
    with pytest.raises(BoundaryLeak):
        tomogram_direct(leaky, 1.0, 1.0)


def test_mu_crossover_is_continuous():
    psi = fock_wavefunction(3)
    x = DEFAULT_GRID
    exact = tomogram_direct(psi, 1.0, 0.0, x).values
    for mu in (1e-9, 1e-7, 1e-5, 1e-3):
        assert np.max(np.abs(tomogram_direct(psi, 1.0, mu, x).values - exact)) <= 10 * mu + 1e-10


def test_density_linearity():
    states = [fock_wavefunction(0), coherent_wavefunction(1.0 - 0.5j), fock_wavefunction(2)]
    weights = [0.2, 0.5, 0.3]
    rho = GridDensity.from_ensemble(states, weights)
    for lam, mu in [(1.0, 0.0), (0.3, 0.9), (1.0, 0.2)]:
        mixed = tomogram_density(rho, lam, mu)
        combo = sum(w * tomogram_direct(s, lam, mu).values for w, s in zip(weights, states))
        assert np.max(np.abs(mixed.values - combo)) <= 1e-10


def test_superposition_theta_zero():
    a, b = fock_wavefunction(0), fock_wavefunction(1)
    parts = tomogram_superposition(a, b, SuperposeParams(0.0, 0.7), 0.4, 0.8)
    assert np.max(np.abs(parts.total.values - parts.phi1.values)) <= 1e-14


def test_superposition_position_quadrature():
    a, b = fock_wavefunction(0), fock_wavefunction(1)
    parts = tomogram_superposition(a, b, SuperposeParams(np.pi / 4, 0.0), 1.0, 0.0, DEFAULT_GRID)
    # direct wavefunction arithmetic
    ref = 0.5 * np.abs(a.values + b.values) ** 2
    assert np.max(np.abs(parts.total.values - ref)) <= 1e-12
    recon = parts.norm_factor ** 2 * (0.5 * parts.phi1.values + 0.5 * parts.phi2.values + parts.interference.values)
    assert np.max(np.abs(recon - parts.total.values)) <= 1e-6


def test_superposition_residual_and_interference_integral():
    pairs = [
        (fock_wavefunction(0), fock_wavefunction(1)),
        (fock_wavefunction(1), fock_wavefunction(3)),
        (coherent_wavefunction(0.5), coherent_wavefunction(0.2 + 0.4j)),
    ]
    for a, b in pairs:
        for theta, phi in [(0.3, 0.0), (np.pi / 4, 1.3), (1.2, 4.0)]:
            params = SuperposeParams(theta, phi)
            for lam, mu in [(1.0, 0.0), (0.0, 1.0), (0.8, 0.6), (0.9, -0.15), (-1.5, 2.0)]:
                parts = tomogram_superposition(a, b, params, lam, mu)
                recon = parts.norm_factor ** 2 * (
                    np.cos(theta) ** 2 * parts.phi1.values
                    + np.sin(theta) ** 2 * parts.phi2.values
                    + np.sin(2 * theta) * parts.interference.values
                )
                assert np.max(np.abs(recon - parts.total.values)) <= 1e-6
                expected = (np.exp(1j * phi) * a.inner(b)).real
                assert abs(parts.interference.normalization() - expected) <= 1e-6
                assert abs(parts.total.normalization() - 1) <= 1e-6
