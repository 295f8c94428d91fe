import math

import numpy as np
import pytest

from qbrown import (DensityField, Grid1D, ImaginaryTimeConfig, PhysicalParams,
                    PotentialSpec, eigen_density, imaginary_time_density,
                    moments, quantum_entropy, semiclassical_density)
from qbrown.equilibrium import GridMismatchError
from qbrown.numerics import coth


def _harmonic_setup(bho, n=257, half_width=None):
    p = PhysicalParams.natural(omega0=1.0, temperature=1.0 / bho)
    exact = 0.5 * coth(bho / 2.0)
    if half_width is None:
        half_width = max(8.0 * math.sqrt(exact), 6.0)
    g = Grid1D(-half_width, half_width, n)
    return p, g, exact


# ---------------------------------------------------------------------------
# route equivalence


def test_harmonic_routes_agree():
    p, g, exact = _harmonic_setup(2.0)
    U = PotentialSpec.harmonic(1.0)
    cfg = ImaginaryTimeConfig(beta_final=2.0, grid=g, n_beta_steps=256)
    rho_it, z_it = imaginary_time_density(U, p, cfg)
    rho_e, z_e, spec = eigen_density(U, p, 2.0, g)
    assert np.max(np.abs(rho_it.rho - rho_e.rho)) <= 1e-6
    assert abs(z_it - z_e) / z_e <= 1e-3
    # discrete spectrum approximates (n + 1/2) omega0
    np.testing.assert_allclose(spec.energies[:4], [0.5, 1.5, 2.5, 3.5],
                               rtol=1e-3)
    assert moments(rho_it).dispersion == pytest.approx(exact, rel=1e-3)


def test_quartic_routes_agree():
    p = PhysicalParams.natural()
    g = Grid1D(-4.0, 4.0, 257)
    U = PotentialSpec.quartic(1.0)
    cfg = ImaginaryTimeConfig(beta_final=1.0, grid=g, n_beta_steps=256)
    rho_it, z_it = imaginary_time_density(U, p, cfg)
    rho_e, z_e, _ = eigen_density(U, p, 1.0, g)
    assert np.max(np.abs(rho_it.rho - rho_e.rho)) <= 1e-6
    assert abs(z_it - z_e) / z_e <= 1e-3


def test_high_temperature_is_boltzmann():
    beta = 0.01
    p = PhysicalParams.natural(omega0=1.0, temperature=1.0 / beta)
    g = Grid1D(-40.0, 40.0, 513)
    U = PotentialSpec.harmonic(1.0)
    rho_e, _, _ = eigen_density(U, p, beta, g)
    boltz = DensityField(grid=g, rho=np.exp(-beta * U.energy(g, p)))
    assert np.max(np.abs(rho_e.rho - boltz.rho)) <= 1e-4 * np.max(boltz.rho)


def test_eigen_density_positive_and_truncation_warning():
    p, g, _ = _harmonic_setup(1.0)
    U = PotentialSpec.harmonic(1.0)
    rho, _, spec = eigen_density(U, p, 1.0, g)
    assert np.all(rho.rho >= 0)
    with pytest.warns(UserWarning):
        eigen_density(U, p, 1.0, g, n_states=2)


# ---------------------------------------------------------------------------
# semiclassical closed form


def test_semiclassical_harmonic_dispersion():
    # exact O(hbar^2) result for the harmonic well:
    # sigma^2 = (k_B T / m omega0^2) / (1 - (beta hbar omega0)^2 / 12)
    bho = 0.3
    p, g, _ = _harmonic_setup(bho, n=385, half_width=12.0)
    rho = semiclassical_density(PotentialSpec.harmonic(1.0), p, bho, g)
    pred = (1.0 / bho) / (1.0 - bho ** 2 / 12.0)
    assert moments(rho).dispersion == pytest.approx(pred, rel=2e-3)


def test_semiclassical_quartic_vs_eigen():
    p = PhysicalParams.natural()
    U = PotentialSpec.quartic(1.0)
    # the O(hbar^2) correction grows as x^6: stay on the core domain
    g = Grid1D(-1.5, 1.5, 301)
    s_sc = moments(semiclassical_density(U, p, 1.0, g)).dispersion
    g_wide = Grid1D(-4.0, 4.0, 513)
    rho_e, _, _ = eigen_density(U, p, 1.0, g_wide)
    s_e = moments(rho_e).dispersion
    assert abs(s_sc - s_e) / s_e <= 0.03


def test_semiclassical_hbar_zero_is_classical():
    p = PhysicalParams.natural(omega0=1.0, hbar=1e-14)
    g = Grid1D(-6.0, 6.0, 201)
    U = PotentialSpec.harmonic(1.0)
    rho = semiclassical_density(U, p, 1.0, g)
    boltz = DensityField(grid=g, rho=np.exp(-U.energy(g, p)))
    np.testing.assert_allclose(rho.rho, boltz.rho, rtol=1e-12)


# ---------------------------------------------------------------------------
# configuration guards


def test_imaginary_time_config_validation():
    g = Grid1D(-5.0, 5.0, 65)
    with pytest.raises(ValueError):
        ImaginaryTimeConfig(beta_final=0.0, grid=g)
    with pytest.raises(ValueError):
        ImaginaryTimeConfig(beta_final=1.0, grid=g, n_beta_steps=4)
    with pytest.raises(ValueError):
        ImaginaryTimeConfig(beta_final=1.0, grid=g, boundary="open")
    # params temperature must agree with beta_final
    p = PhysicalParams.natural(temperature=2.0)
    cfg = ImaginaryTimeConfig(beta_final=1.0, grid=g)
    with pytest.raises(ValueError):
        imaginary_time_density(PotentialSpec.free(), p, cfg)


def test_periodic_free_particle_is_uniform():
    p = PhysicalParams.natural()
    g = Grid1D(0.0, 10.0, 64)
    cfg = ImaginaryTimeConfig(beta_final=1.0, grid=g, n_beta_steps=64,
                              boundary="periodic")
    rho, _ = imaginary_time_density(PotentialSpec.free(), p, cfg)
    np.testing.assert_allclose(rho.rho, 0.1, atol=1e-12)


# ---------------------------------------------------------------------------
# quantum entropy


def test_quantum_entropy_uniform_is_zero():
    g = Grid1D(-5.0, 5.0, 101)
    fields = [DensityField.uniform(g) for _ in range(5)]
    s = quantum_entropy(fields, PhysicalParams.natural(), 1.0)
    np.testing.assert_allclose(s, 0.0, atol=1e-10)


def test_quantum_entropy_grid_mismatch():
    fields = [DensityField.uniform(Grid1D(-5.0, 5.0, 101)),
              DensityField.uniform(Grid1D(-4.0, 4.0, 101))]
    with pytest.raises(GridMismatchError):
        quantum_entropy(fields, PhysicalParams.natural(), 1.0)


def test_quantum_entropy_vanishes_classically():
    # coth-Gaussian harmonic family: the density-weighted mean entropy
    # shrinks with beta hbar omega0
    p = PhysicalParams.natural(omega0=1.0)
    g = Grid1D(-15.0, 15.0, 601)

    def mean_entropy(beta):
        nodes = np.linspace(0.0, beta, 17)
        fields = [DensityField.uniform(g)]
        for b in nodes[1:]:
            s2 = 0.5 * coth(b / 2.0)
            fields.append(DensityField.gaussian(g, 0.0, s2))
        s = quantum_entropy(fields, p, beta, beta_nodes=nodes)
        rho = fields[-1].rho
        trapz = getattr(np, "trapezoid", None) or np.trapz
        return abs(float(trapz(s * rho, g.x)))

    assert mean_entropy(0.05) < 1e-3
    assert mean_entropy(0.05) < mean_entropy(2.0)
