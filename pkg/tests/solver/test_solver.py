#!/usr/bin/env python3
"""Test the Shortley-Weller discretization, Newton, eigen and shooting solvers"""

import math

import numpy as np
import pytest

from caplab.core.errors import ArgumentError, BracketError, GeometryError, PositivityError
from caplab.core.models import GridFunction
from caplab.core.solver import (NewtonTrace, assemble_laplacian, bessel_j0_first_zero,
                                critical_points, discretize, poisson_error_study,
                                principal_eigenpair, sample_radial, solve_radial,
                                solve_semilinear, solve_with_amplitude_ladder)
from caplab.domains import get_domain
from caplab.nonlinearities import get_nonlinearity

H = 1.0 / 32


def test_discretize_arms():
    disk = get_domain("disk", grid_h=H)
    disc = discretize(disk)
    assert disc.n == int(disk.interior().count)
    assert disc.arms.min() >= 1e-3
    assert disc.arms.max() <= 1.0
    # grid-aligned square has no cut arms
    square = get_domain("square", grid_h=H)
    assert np.allclose(discretize(square).arms, 1.0)


def test_laplacian_is_m_matrix():
    disk = get_domain("disk", grid_h=1.0 / 16)
    L = assemble_laplacian(discretize(disk)).toarray()
    assert np.all(np.diag(L) > 0)
    off = L - np.diag(np.diag(L))
    assert np.all(off <= 0)
    # weakly diagonally dominant rows
    assert np.all(L.sum(axis=1) >= -1e-9)


def test_laplacian_exact_on_quadratics():
    """Shortley-Weller reproduces −Δ of a quadratic away from the boundary"""
    square = get_domain("square", grid_h=H)
    disc = discretize(square)
    L = assemble_laplacian(disc)
    pts = disc.grid.points()[disc.mask]
    u = pts[:, 0] * (1 - pts[:, 0])
    # u vanishes on x = 0, 1 but not on y = 0, 1; test rows away from those edges
    rows = (pts[:, 1] > 1.5 * H) & (pts[:, 1] < 1 - 1.5 * H)
    assert np.allclose((L @ u)[rows], 2.0, atol=1e-9)


def test_bessel_zero():
    assert bessel_j0_first_zero() == pytest.approx(2.404825557695773, abs=1e-12)


def test_square_eigenvalue():
    square = get_domain("square", grid_h=H)
    pair = principal_eigenpair(square)
    assert pair.lambda1 == pytest.approx(2 * math.pi ** 2, rel=5e-3)
    assert pair.phi.max() == pytest.approx(1.0)
    assert np.all(pair.phi.values[pair.phi.mask] > 0)
    assert pair.to_dict()["iterations"] == pair.iterations


def test_disk_eigenvalue_matches_bessel():
    disk = get_domain("disk", grid_h=1.0 / 64)
    pair = principal_eigenpair(disk)
    assert pair.lambda1 == pytest.approx(bessel_j0_first_zero() ** 2, rel=5e-3)
    assert np.linalg.norm(pair.phi.argmax()) <= 2.0 / 64


def test_eigenvector_with_nonpositive_entry_raises(monkeypatch):
    class SignChangingLU:
        def solve(self, b):
            y = np.ones(len(b))
            y[0] = -0.5
            return y

    monkeypatch.setattr("caplab.core.solver.splu", lambda matrix: SignChangingLU())
    square = get_domain("square", grid_h=1.0 / 16)
    with pytest.raises(PositivityError) as excinfo:
        principal_eigenpair(square)
    assert excinfo.value.details["nonpositive"] == 1
    assert excinfo.value.to_dict()["error"] == "positivity"


def test_poisson_disk_exact_and_convergent():
    disk = get_domain("disk", grid_h=H)
    study = poisson_error_study(disk, [1.0 / 16, 1.0 / 32, 1.0 / 64],
                                lambda p: (1.0 - np.sum(p * p, axis=-1)) / 4.0)
    errors = study["errors"]
    assert errors[-1] < 1e-3
    assert errors[0] > errors[-1]
    assert len(study["ratios"]) == 2


def test_poisson_square_positive():
    square = get_domain("square", grid_h=H)
    f = get_nonlinearity("power", p=0.0, N=2)
    trace = NewtonTrace()
    u = solve_semilinear(square, f, trace=trace)
    assert u.max() > 0
    # −Δu = 1 on the unit square peaks at ≈ 0.07367
    assert u.max() == pytest.approx(0.07367, abs=2e-3)
    assert trace.residuals[-1] < 1e-8


def test_amplitude_ladder_cubic_disk():
    disk = get_domain("disk", grid_h=H)
    f = get_nonlinearity("power", p=3.0, N=2)
    u, amplitude = solve_with_amplitude_ladder(disk, f, tol=1e-8)
    assert amplitude in (1.0, 2.0, 4.0, 8.0, 16.0)
    assert np.all(u.values[u.mask] > 0)
    assert np.linalg.norm(u.argmax()) <= 2 * H

    disc = discretize(disk)
    residual = assemble_laplacian(disc) @ u.values[u.mask] - f(u.values[u.mask])
    assert np.abs(residual).max() < 1e-6


def test_init_must_be_positive():
    disk = get_domain("disk", grid_h=H)
    f = get_nonlinearity("power", p=3.0, N=2)
    mask = disk.interior().inside
    zero = GridFunction(disk.interior().grid, np.zeros(mask.shape), mask)
    with pytest.raises(ArgumentError):
        solve_semilinear(disk, f, init=zero)


def test_radial_constant_source():
    """f ≡ 1 in the unit 3-ball: u = (1 − r²)/6"""
    f = get_nonlinearity("power", p=0.0, N=3)
    sol = solve_radial(3, f)
    assert sol.shooting_parameter == pytest.approx(1.0 / 6.0, abs=1e-8)
    r = np.linspace(0.0, 1.0, 11)
    assert np.allclose(sol.profile(r), (1 - r ** 2) / 6.0, atol=1e-8)
    assert sol.profile(np.array([1.5]))[0] == 0.0


def test_radial_lane_emden():
    f = get_nonlinearity("power", p=3.0, N=3)
    sol = solve_radial(3, f)
    assert sol.shooting_parameter == pytest.approx(6.8968, abs=1e-3)
    assert sol.u[-1] == pytest.approx(0.0, abs=1e-6)
    assert sol.r_max == 0.0
    assert np.all(np.diff(sol.u) < 0)
    rows = sol.to_rows()
    assert rows[0] == (0.0, sol.shooting_parameter, 0.0)


def test_radial_annulus():
    f = get_nonlinearity("power", p=3.0, N=3)
    sol = solve_radial(3, f, geometry="annulus", r_in=1.0, r_out=2.0)
    assert sol.shooting_parameter > 0
    assert sol.u[0] == 0.0
    assert sol.u[-1] == pytest.approx(0.0, abs=1e-6)
    assert np.all(sol.u[1:-1] > 0)
    assert 1.0 < sol.r_max < 2.0
    assert sol.to_dict()["geometry"] == "annulus"


def test_radial_without_positive_solution():
    """−Δu = u has no positive solution in the unit 3-ball (λ₁ = π²)"""
    f = get_nonlinearity("power", p=1.0, N=3)
    with pytest.raises(BracketError):
        solve_radial(3, f)


def test_radial_bad_arguments():
    f = get_nonlinearity("power", p=3.0, N=3)
    with pytest.raises(ArgumentError):
        solve_radial(3, f, geometry="torus")
    with pytest.raises(ArgumentError):
        solve_radial(1, f)
    with pytest.raises(ArgumentError):
        solve_radial(3, f, geometry="annulus", r_in=2.0, r_out=1.0)


def test_sample_radial_on_disk():
    f = get_nonlinearity("power", p=0.0, N=3)
    sol = solve_radial(3, f)
    disk = get_domain("disk", grid_h=H)
    u = sample_radial(sol, disk)
    assert u.max() == pytest.approx(1.0 / 6.0, abs=1e-8)


def test_critical_points_of_cosines():
    """cos(πx)cos(πy) on (−1, 1)² has five interior critical points"""
    square = get_domain("square", origin=[-1.0, -1.0], side=2.0, grid_h=H)
    region = square.interior()
    u = GridFunction.from_callable(region.grid, region.inside,
                                   lambda p: np.cos(np.pi * p[:, 0]) * np.cos(np.pi * p[:, 1]))
    report = critical_points(u, region, theta=0.05)
    assert len(report.clusters) == 5
    centres = np.array(report.clusters)
    assert np.min(np.linalg.norm(centres, axis=1)) < 1e-12
    assert report.min_grad == pytest.approx(0.0, abs=1e-12)
    assert not report.empty


def test_critical_points_empty_region():
    square = get_domain("square", grid_h=H)
    region = square.interior()
    u = GridFunction.from_callable(region.grid, region.inside, lambda p: p[:, 0])
    empty = region.difference(region)
    with pytest.raises(GeometryError):
        critical_points(u, empty)
    report = critical_points(u, region)
    assert report.empty


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
