#!/usr/bin/env python3
"""Test Kelvin frames, the transform, its inverse and the transformed equation"""

import numpy as np
import pytest

from caplab.core.errors import ArgumentError, DomainError, FrameError
from caplab.core.geometry import compute_lambda_star
from caplab.core.kelvin import (build_frame, check_kelvin_pde, frame_from_normal,
                                kelvin_pullback, kelvin_transform, transformed_nonlinearity)
from caplab.core.models import Field, GridFunction, PresetTag
from caplab.core.solver import solve_radial
from caplab.domains import get_domain
from caplab.nonlinearities import get_nonlinearity

H = 1.0 / 32


def disk_frame(h=H):
    disk = get_domain("disk", grid_h=h)
    return disk, build_frame(disk, [1.0, 0.0], rho=1.0)


def inverse_distance(frame):
    """u(x) = 1/|T(x)|, whose Kelvin image in N = 3 is identically one"""
    return lambda p: 1.0 / np.linalg.norm(frame.apply(p), axis=-1)


def test_frame_normalizes_base_point():
    disk, frame = disk_frame()
    assert np.allclose(frame.apply(np.array([[1.0, 0.0]])), [[1.0, 0.0]])
    # the exterior ball B_1((2, 0)) goes to the unit ball
    assert np.allclose(frame.apply(np.array([[2.0, 0.0]])), [[0.0, 0.0]])
    assert frame.R == pytest.approx(3.0, abs=1e-4)

    pts = np.array([[0.3, -0.2], [-0.7, 0.1]])
    assert np.allclose(frame.inverse(frame.apply(pts)), pts)
    assert frame.to_dict()["rho"] == 1.0


def test_frame_for_translated_disk():
    """Disk of radius 1 about (3, 0) with x0 = (2, 0): the exterior ball sits at (1, 0)"""
    disk = get_domain("disk", center=[3.0, 0.0], radius=1.0, grid_h=H)
    frame = build_frame(disk, [2.0, 0.0], rho=1.0)
    assert np.allclose(frame.apply(np.array([[2.0, 0.0], [1.0, 0.0]])), [[1.0, 0.0], [0.0, 0.0]])
    assert np.allclose(frame.center, [1.0, 0.0])
    assert frame.scale == pytest.approx(1.0)
    # farthest point (4, 0) lands at distance 3 from the ball centre
    assert np.allclose(frame.apply(np.array([[4.0, 0.0]])), [[3.0, 0.0]])
    assert frame.R == pytest.approx(3.0, abs=1e-4)


def test_frame_from_normal_scales_by_rho():
    frame = frame_from_normal([0.0, 1.0], [0.0, 1.0], 0.5)
    assert frame.scale == pytest.approx(2.0)
    assert np.allclose(frame.apply(np.array([[0.0, 1.0]])), [[1.0, 0.0]])
    assert np.allclose(frame.apply(np.array([[0.0, 1.5]])), [[0.0, 0.0]])


def test_frame_rejects_bad_inputs():
    disk = get_domain("disk", grid_h=H)
    with pytest.raises(ArgumentError):
        build_frame(disk, [0.5, 0.0])
    with pytest.raises(ArgumentError):
        build_frame(disk, [1.0, 0.0], rho=-1.0)

    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    # the hole only fits balls of radius up to 1/2 at the inner boundary
    with pytest.raises(FrameError):
        build_frame(annulus, [1.0, 0.0], rho=2.0)
    frame = build_frame(annulus, [1.0, 0.0], rho=0.5)
    assert frame.R == pytest.approx(5.0, abs=1e-3)


def test_transformed_nonlinearity_critical_power():
    """s^{N*} is invariant: g(y, s) = s^5 for N = 3"""
    f = get_nonlinearity("power", p=5.0, N=3)
    g = transformed_nonlinearity(f, 3)
    y = np.array([[0.5, 0.2, 0.0], [0.1, -0.3, 0.4], [0.9, 0.0, 0.0]])
    s = np.array([0.7, 2.0, 1.3])
    assert np.allclose(g(y, s), s ** 5, rtol=1e-13)
    assert "N=3" in g.label


def test_transformed_nonlinearity_domain():
    f = get_nonlinearity("power", p=3.0, N=3)
    g = transformed_nonlinearity(f, 3)
    with pytest.raises(DomainError):
        g(np.zeros((1, 3)), np.ones(1))
    with pytest.raises(ArgumentError):
        transformed_nonlinearity(f, 2)


def test_kelvin_of_field_is_exact():
    disk, frame = disk_frame()
    u = Field(lambda p: 1.0 / np.linalg.norm(frame.apply_nd(p), axis=-1), 3)
    transformed = kelvin_transform(u, frame, 3, disk)
    v = transformed.v
    assert v.mask.sum() > 100
    assert transformed.invalid == 0
    assert np.allclose(v.values[v.mask], 1.0, atol=1e-12)
    assert transformed.analytic is not None


def test_kelvin_of_grid_function_converges():
    errors = []
    for h in (1.0 / 16, 1.0 / 32):
        disk, frame = disk_frame(h)
        region = disk.interior(h)
        u = GridFunction.from_callable(region.grid, region.inside, inverse_distance(frame))
        transformed = kelvin_transform(u, frame, 3, disk)
        v = transformed.v
        assert v.mask.any()
        assert transformed.invalid > 0
        assert transformed.notes
        error = np.abs(v.values[v.mask] - 1.0).max()
        assert error <= 5 * h ** 2
        errors.append(error)
    assert 3.2 <= errors[0] / errors[1] <= 4.8


def test_kelvin_needs_three_dimensions():
    disk, frame = disk_frame()
    region = disk.interior(H)
    u = GridFunction.from_callable(region.grid, region.inside, inverse_distance(frame))
    with pytest.raises(ArgumentError):
        kelvin_transform(u, frame, 2, disk)
    with pytest.raises(ArgumentError):
        kelvin_transform(Field(lambda p: p[..., 0], 2), frame, 3, disk)


def test_image_of_disk_is_a_disk():
    """Unit disk with x0 = e1, rho = 1 goes to the disk of radius 1/3 about (2/3, 0)"""
    disk, frame = disk_frame()
    region = disk.interior(H)
    u = GridFunction.from_callable(region.grid, region.inside, inverse_distance(frame))
    image = kelvin_transform(u, frame, 3, disk).domain
    assert image.preset == PresetTag.INVERTED
    assert image.inner_radius == pytest.approx(1.0 / 3.0, abs=1e-4)

    sd = image.signed_distance(np.array([[2.0 / 3.0, 0.0], [0.9, 0.0],
                                         [0.2, 0.0], [0.5, 0.3]]))
    assert sd[0] < 0 and sd[1] < 0
    assert sd[2] > 0 and sd[3] > 0
    expected = np.hypot([0.0, 0.9 - 2.0 / 3.0, 0.2 - 2.0 / 3.0, 0.5 - 2.0 / 3.0],
                        [0.0, 0.0, 0.0, 0.3]) - 1.0 / 3.0
    assert np.allclose(sd, expected, atol=1e-3)

    cap = compute_lambda_star(image, [-1.0, 0.0])
    assert cap.lambda0 == pytest.approx(-1.0, abs=1e-3)
    assert cap.lambda_star == pytest.approx(-2.0 / 3.0, abs=2 * image.grid_h)


def test_pullback_inverts_transform():
    disk, frame = disk_frame()
    region = disk.interior(H)
    u = GridFunction.from_callable(region.grid, region.inside, inverse_distance(frame))
    back = kelvin_pullback(kelvin_transform(u, frame, 3, disk), u)
    assert back.mask.sum() > 0.5 * u.mask.sum()
    assert np.abs(back.values[back.mask] - u.values[back.mask]).max() <= 5 * H ** 2


def test_pde_residual_constant_source():
    """−Δu = 1 in the unit 3-ball; v solves the transformed equation"""
    f = get_nonlinearity("power", p=0.0, N=3)
    u = solve_radial(3, f).as_field(dim=3)
    disk, frame = disk_frame()
    report = check_kelvin_pde(u, f, frame, 3, disk, image_h=1.0 / 128)
    assert report.passed
    assert report.relative_residual < 1e-2
    assert report.n_nodes >= 100
    assert report.to_dict()["pass"] is True

    # the cubic source does not match this u
    wrong = get_nonlinearity("power", p=3.0, N=3)
    assert not check_kelvin_pde(u, wrong, frame, 3, disk, image_h=1.0 / 128).passed


def test_pde_residual_refines_for_lane_emden():
    f = get_nonlinearity("power", p=3.0, N=3)
    u = solve_radial(3, f).as_field(dim=3)
    disk, frame = disk_frame()
    coarse = check_kelvin_pde(u, f, frame, 3, disk, image_h=1.0 / 64)
    fine = check_kelvin_pde(u, f, frame, 3, disk, image_h=1.0 / 128)
    assert fine.max_residual < coarse.max_residual
    assert 3.2 <= coarse.max_residual / fine.max_residual <= 4.8
    assert fine.passed


def test_pde_residual_harmonic():
    """Kelvin transforms of harmonic functions stay harmonic"""
    f = get_nonlinearity("power", p=0.0, coefficient=0.0, N=3)
    u = Field(lambda p: p[..., 0] + 2.0, 3)
    disk, frame = disk_frame()
    coarse = check_kelvin_pde(u, f, frame, 3, disk, image_h=1.0 / 128)
    fine = check_kelvin_pde(u, f, frame, 3, disk, image_h=1.0 / 256)
    assert fine.max_residual < coarse.max_residual
    assert fine.max_residual < 1.0


def test_pde_residual_flags_noise():
    f = get_nonlinearity("power", p=0.0, N=3)
    clean = solve_radial(3, f).as_field(dim=3)
    noisy = Field(lambda p: clean(p) + np.sin(997.0 * p[..., 0]) * np.cos(991.0 * p[..., 1]), 3)
    disk, frame = disk_frame()
    assert not check_kelvin_pde(noisy, f, frame, 3, disk, image_h=1.0 / 128).passed


def test_pde_residual_needs_field():
    disk, frame = disk_frame()
    region = disk.interior(H)
    u = GridFunction.from_callable(region.grid, region.inside, inverse_distance(frame))
    f = get_nonlinearity("power", p=3.0, N=3)
    with pytest.raises(ArgumentError):
        check_kelvin_pde(u, f, frame, 3, disk)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
