import math

import numpy as np
import pytest

from qbrown import (DensityField, Grid1D, PdeModel, PhysicalParams,
                    PotentialSpec, derived_scales, effective_potential,
                    evolve, moments, quantum_potential)

NAT = PhysicalParams.natural()


# ---------------------------------------------------------------------------
# grid / field plumbing


def test_grid_validation():
    g = Grid1D(-2.0, 2.0, 17)
    assert g.h == pytest.approx(0.25)
    assert g.x[0] == -2.0 and g.x[-1] == 2.0
    with pytest.raises(ValueError):
        Grid1D(1.0, -1.0, 32)
    with pytest.raises(ValueError):
        Grid1D(-1.0, 1.0, 8)


def test_density_field_normalizes():
    g = Grid1D(-5.0, 5.0, 101)
    f = DensityField(grid=g, rho=np.ones(101) * 7.0)
    assert f.mass == pytest.approx(1.0)
    with pytest.raises(ValueError):
        DensityField(grid=g, rho=-np.ones(101))
    with pytest.raises(ValueError):
        DensityField(grid=g, rho=np.ones(50))


def test_uniform_density_moments():
    g = Grid1D(0.0, 6.0, 601)
    m = moments(DensityField.uniform(g))
    assert m.mean == pytest.approx(3.0)
    # trapezoid sees the box edges at O(h^2)
    assert m.dispersion == pytest.approx(36.0 / 12.0, rel=1e-4)


def test_gaussian_density_moments():
    g = Grid1D(-10.0, 10.0, 801)
    m = moments(DensityField.gaussian(g, 0.7, 0.9))
    assert m.mean == pytest.approx(0.7, abs=1e-9)
    assert m.dispersion == pytest.approx(0.9, rel=1e-9)


def test_moments_warns_off_norm():
    g = Grid1D(-1.0, 1.0, 21)
    f = DensityField.uniform(g)
    f.rho = f.rho * 1.01  # bypass normalization
    with pytest.warns(UserWarning):
        moments(f)


# ---------------------------------------------------------------------------
# potentials


def test_potential_variants():
    g = Grid1D(-2.0, 2.0, 41)
    p = NAT
    x = g.x
    np.testing.assert_allclose(PotentialSpec.linear(2.0).energy(g, p), -2.0 * x)
    np.testing.assert_allclose(PotentialSpec.quartic(3.0).grad(g, p),
                               12.0 * x ** 3)
    np.testing.assert_allclose(PotentialSpec.quartic(3.0).laplacian(g, p),
                               36.0 * x ** 2)
    with pytest.raises(ValueError):
        PotentialSpec.harmonic(0.0)
    with pytest.raises(ValueError):
        PotentialSpec(variant="cubic")


def test_tabulated_potential_derivatives():
    g = Grid1D(-2.0, 2.0, 401)
    tab = PotentialSpec.tabulated(0.5 * g.x ** 2)
    np.testing.assert_allclose(tab.grad(g, NAT)[1:-1], g.x[1:-1], atol=1e-3)
    np.testing.assert_allclose(tab.laplacian(g, NAT)[1:-1], 1.0, atol=1e-6)
    with pytest.raises(ValueError):
        PotentialSpec.tabulated([1.0, math.nan])


def test_harmonic_consistency_check():
    g = Grid1D(-1.0, 1.0, 21)
    p = PhysicalParams.natural(omega0=2.0)
    with pytest.raises(ValueError):
        PotentialSpec.harmonic(1.0).energy(g, p)


# ---------------------------------------------------------------------------
# quantum and effective potentials


def test_quantum_potential_of_gaussian():
    g = Grid1D(-6.0, 6.0, 601)
    s2 = 0.8
    q = quantum_potential(DensityField.gaussian(g, 0.0, s2), NAT)
    x = g.x
    exact = 1.0 / (4.0 * s2) - x ** 2 / (8.0 * s2 ** 2)
    core = np.abs(x) < 3.0
    np.testing.assert_allclose(q[core], exact[core], atol=2e-4)


def test_quantum_potential_diagnostics():
    g = Grid1D(-20.0, 20.0, 801)
    q, diag = quantum_potential(DensityField.gaussian(g, 0.0, 0.25), NAT,
                                return_diagnostics=True)
    assert 0.0 < diag["floored_fraction"] < 1.0


def test_effective_potential_harmonic():
    g = Grid1D(-2.0, 2.0, 41)
    p = PhysicalParams.natural(omega0=1.0)
    beta = 0.5
    U = PotentialSpec.harmonic(1.0)
    exact = (0.5 * g.x ** 2
             + beta * (3.0 - beta * g.x ** 2) / 24.0)
    np.testing.assert_allclose(effective_potential(U, beta, p, g), exact,
                               rtol=1e-12)
    # hbar -> 0 removes the correction entirely
    p0 = PhysicalParams.natural(omega0=1.0, hbar=1e-12)
    np.testing.assert_allclose(effective_potential(U, beta, p0, g),
                               0.5 * g.x ** 2, atol=1e-20)


# ---------------------------------------------------------------------------
# evolution


def test_classical_smoluchowski_free_diffusion():
    g = Grid1D(-25.0, 25.0, 1001)
    res = evolve(DensityField.gaussian(g, 0.0, 1.0),
                 PdeModel.CLASSICAL_SMOLUCHOWSKI, PotentialSpec.free(), NAT,
                 5.0, n_records=21)
    D = derived_scales(NAT).D
    np.testing.assert_allclose(res.sigma2, 1.0 + 2.0 * D * res.times,
                               rtol=1e-4)
    np.testing.assert_allclose(res.mass, 1.0, atol=1e-12)


def test_classical_telegraph_moments():
    g = Grid1D(-25.0, 25.0, 1601)
    s0 = 0.01
    res = evolve(DensityField.gaussian(g, 0.0, s0),
                 PdeModel.CLASSICAL_TELEGRAPH, PotentialSpec.free(), NAT,
                 8.0, n_records=41)
    tau = NAT.tau_m
    exact = s0 + 2.0 * (res.times - tau * (1.0 - np.exp(-res.times / tau)))
    m = res.times >= 1.0
    np.testing.assert_allclose(res.sigma2[m], exact[m], rtol=1e-2)


def test_linear_force_drift():
    p = PhysicalParams.natural(force=0.5, friction=4.0)
    g = Grid1D(-5.0, 7.0, 301)
    res = evolve(DensityField.gaussian(g, 0.0, 0.25),
                 PdeModel.CLASSICAL_SMOLUCHOWSKI, PotentialSpec.linear(0.5),
                 p, 8.0, n_records=21)
    np.testing.assert_allclose(res.mu, 0.5 / 4.0 * res.times, atol=2e-3)


def test_quantum_zero_T_quartic_root_law():
    p = PhysicalParams.natural(friction=100.0, temperature=0.0)
    g = Grid1D(-8.0, 8.0, 321)
    res = evolve(DensityField.gaussian(g, 0.0, 0.04),
                 PdeModel.QUANTUM_ZERO_T_SMOLUCHOWSKI, PotentialSpec.free(),
                 p, 10.0, n_records=41)
    law = res.times / 100.0
    m = res.times >= 0.1
    meas = res.sigma2[m] ** 2 - res.sigma2[0] ** 2
    np.testing.assert_allclose(meas, law[m], rtol=1e-2)


def test_periodic_uniform_is_stationary():
    g = Grid1D(0.0, 2.0 * math.pi, 65)
    res = evolve(DensityField.uniform(g), PdeModel.CLASSICAL_SMOLUCHOWSKI,
                 PotentialSpec.free(), NAT, 1.0, boundary="periodic",
                 n_records=5)
    np.testing.assert_allclose(res.density.rho, 1.0 / (2.0 * math.pi),
                               atol=1e-13)


def test_detailed_balance_stationarity():
    # the semiclassical equilibrium density is a fixed point of the
    # semiclassical Smoluchowski flux: moments must not drift
    from qbrown import semiclassical_density
    p = PhysicalParams.natural(omega0=1.0, temperature=1.0)
    g = Grid1D(-6.0, 6.0, 201)
    U = PotentialSpec.harmonic(1.0)
    rho_eq = semiclassical_density(U, p, 1.0, g)
    m0 = moments(rho_eq)
    dt_budget = 1000
    res = evolve(rho_eq, PdeModel.SEMICLASSICAL_SMOLUCHOWSKI, U, p,
                 t_final=dt_budget * 0.4 * g.h ** 2 / 2.0, n_records=5)
    m1 = moments(res.density)
    assert abs(m1.dispersion - m0.dispersion) / m0.dispersion <= 1e-3
    assert abs(m1.mean - m0.mean) <= 1e-3


def test_split_correction_flux_variant():
    p = PhysicalParams.natural(omega0=1.0, temperature=1.0)
    g = Grid1D(-6.0, 6.0, 201)
    U = PotentialSpec.harmonic(1.0)
    rho0 = DensityField.gaussian(g, 0.5, 0.3)
    a = evolve(rho0, PdeModel.SEMICLASSICAL_SMOLUCHOWSKI, U, p, 2.0)
    b = evolve(rho0, PdeModel.SEMICLASSICAL_SMOLUCHOWSKI, U, p, 2.0,
               split_correction_flux=True)
    np.testing.assert_allclose(a.sigma2[-1], b.sigma2[-1], rtol=5e-3)
    with pytest.raises(ValueError):
        evolve(rho0, PdeModel.CLASSICAL_SMOLUCHOWSKI, U, p, 1.0,
               split_correction_flux=True)


def test_evolve_guards():
    g = Grid1D(-4.0, 4.0, 101)
    rho0 = DensityField.gaussian(g, 0.0, 0.5)
    with pytest.raises(ValueError):
        evolve(rho0, PdeModel.QUANTUM_ZERO_T_SMOLUCHOWSKI,
               PotentialSpec.free(), NAT, 1.0)  # T != 0
    cold = PhysicalParams.natural(temperature=0.0)
    with pytest.raises(ValueError):
        evolve(rho0, PdeModel.CLASSICAL_SMOLUCHOWSKI, PotentialSpec.free(),
               cold, 1.0)
    with pytest.raises(ValueError):
        evolve(rho0, PdeModel.CLASSICAL_SMOLUCHOWSKI, PotentialSpec.free(),
               NAT, 1.0, dt=10.0)  # beyond the stability bound
    with pytest.raises(ValueError):
        evolve(rho0, PdeModel.CLASSICAL_SMOLUCHOWSKI, PotentialSpec.free(),
               NAT, 1.0, boundary="absorbing")


def test_translation_invariance():
    # shifting the initial condition shifts the solution exactly
    g1 = Grid1D(-8.0, 8.0, 401)
    g2 = Grid1D(-7.0, 9.0, 401)
    r1 = evolve(DensityField.gaussian(g1, 0.0, 0.5),
                PdeModel.CLASSICAL_SMOLUCHOWSKI, PotentialSpec.free(), NAT,
                1.0, n_records=3)
    r2 = evolve(DensityField.gaussian(g2, 1.0, 0.5),
                PdeModel.CLASSICAL_SMOLUCHOWSKI, PotentialSpec.free(), NAT,
                1.0, n_records=3)
    np.testing.assert_allclose(r2.density.rho, r1.density.rho, atol=1e-12)
    assert r2.mu[-1] - r1.mu[-1] == pytest.approx(1.0, abs=1e-10)
