import math

import numpy as np
import pytest

import fkwave


def test_dispersion_identity():
    p = fkwave.Params(1.0)
    d, dp = fkwave.dispersion(math.pi / 2, p)
    assert abs(d) < 1e-13
    assert p.alpha == pytest.approx(math.pi**2 / 4 - 2, abs=1e-14)
    roots = fkwave.kernel_roots(p)
    assert roots[2] is True
    c1, bf = fkwave.inversion_constants(p)
    assert bf == pytest.approx(34.39, abs=0.05)


def test_params_validation():
    with pytest.raises(fkwave.FkwaveError):
        fkwave.Params(0.5)


def test_profiles_vectorized():
    x = np.linspace(-3, 3, 101)
    u = fkwave.front_profile(x, 0.9)
    assert u.shape == x.shape
    assert np.allclose(u, -u[::-1], atol=1e-15)
    assert fkwave.odd_carrier(2.0) == pytest.approx(-1.0)
    assert fkwave.even_carrier(0.0) == pytest.approx(1 - math.pi**2 / 32)


def test_stage1_and_stage2_solve():
    p = fkwave.Params(0.9, 0.02)
    g = fkwave.Grid(64, 64)
    cfg = fkwave.SolverConfig()
    s1 = fkwave.solve_stage1(p, g, cfg)
    assert s1.residual <= 1e-8
    assert math.sqrt(math.pi / 2) * s1.sup_r <= 0.339
    assert s1.rho0 > 0

    sol = fkwave.solve_stage2(p, g, cfg, s1)
    assert sol.residual <= 1e-8
    u = sol.u()
    assert u.shape == (g.n,)
    x = g.x()
    # odd heteroclinic wave: negative left tail, positive right tail
    assert u[np.argmin(np.abs(x + 40))] < 0
    assert u[np.argmin(np.abs(x - 40))] > 0


def test_two_transition():
    p = fkwave.Params(0.9)
    g = fkwave.Grid(64, 64)
    s1 = fkwave.solve_stage1(p, g, fkwave.SolverConfig())
    sol = fkwave.solve_two_transition(12, p, g, s1)
    assert sol.sign_changes == 2
    assert sol.residual <= 1e-8


def test_lattice_roundtrip():
    p = fkwave.Params(0.9, 0.02)
    g = fkwave.Grid(64, 128)  # resolve the mollification window off-grid
    cfg = fkwave.SolverConfig()
    s1 = fkwave.solve_stage1(p, g, cfg)
    sol = fkwave.solve_stage2(p, g, cfg, s1)
    max_err, _ = fkwave.simulate(sol, K=32, T=2.0, dt=0.01)
    assert max_err <= 1e-3
