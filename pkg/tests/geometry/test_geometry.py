#!/usr/bin/env python3
"""Test moving-plane geometry on the analytic presets"""

import numpy as np
import pytest

from caplab.core.errors import ArgumentError, DomainError, GeometryError
from caplab.core.geometry import (cap_region, compute_lambda_star, direction_samples,
                                  interior_region, invert_point, invert_points,
                                  largest_inscribed_radius, maximal_caps, optimal_cap_set,
                                  reflect_point, reflect_points, validate_exterior_sphere)
from caplab.core.kelvin import build_frame, image_domain
from caplab.domains import get_domain

H = 1.0 / 32


def test_invert_point_basics():
    """Inversion maps (2, 0) to (1/2, 0) and is an involution"""
    assert np.allclose(invert_point([2.0, 0.0]), [0.5, 0.0])
    x = np.array([0.3, -1.7])
    assert np.allclose(invert_point(invert_point(x)), x)
    # unit sphere is fixed
    assert np.allclose(invert_point([0.6, 0.8]), [0.6, 0.8])

    pts = np.array([[1.0, 1.0], [0.0, 3.0]])
    assert np.allclose(invert_points(pts), [[0.5, 0.5], [0.0, 1.0 / 3.0]])


def test_invert_origin_raises():
    with pytest.raises(DomainError):
        invert_point([0.0, 0.0])
    with pytest.raises(DomainError):
        invert_points(np.array([[1.0, 0.0], [0.0, 0.0]]))


def test_reflect_point():
    assert np.allclose(reflect_point([0.2, 0.3], [1.0, 0.0], 0.5), [0.8, 0.3])
    # reflection is an involution and fixes the plane
    x = np.array([-0.4, 0.9])
    nu = np.array([0.6, 0.8])
    assert np.allclose(reflect_point(reflect_point(x, nu, 0.1), nu, 0.1), x)
    on_plane = 0.25 * nu + np.array([-0.8, 0.6])
    assert np.allclose(reflect_point(on_plane, nu, 0.25), on_plane)

    pts = np.array([[0.0, 0.0], [1.0, 2.0]])
    assert np.allclose(reflect_points(pts, [0.0, 1.0], 1.0), [[0.0, 2.0], [1.0, 0.0]])


def test_reflect_needs_unit_direction():
    with pytest.raises(ArgumentError):
        reflect_point([0.0, 0.0], [2.0, 0.0], 0.0)


def test_direction_samples_are_unit():
    for dim, n in ((2, 64), (3, 50)):
        dirs = direction_samples(n, dim)
        assert dirs.shape == (n, dim)
        assert np.allclose(np.linalg.norm(dirs, axis=1), 1.0)
    with pytest.raises(ArgumentError):
        direction_samples(8, 4)


def test_lambda_star_disk():
    disk = get_domain("disk", grid_h=H)
    cap = compute_lambda_star(disk, [1.0, 0.0], h=H)
    assert cap.lambda_star == pytest.approx(0.0, abs=2 * H)
    assert cap.lambda0 == pytest.approx(-1.0, abs=1e-12)
    assert not cap.degenerate

    diagonal = np.array([1.0, 1.0]) / np.sqrt(2.0)
    cap = compute_lambda_star(disk, diagonal, h=H)
    assert cap.lambda_star == pytest.approx(0.0, abs=2 * H)


def test_lambda_star_annulus():
    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    cap = compute_lambda_star(annulus, [1.0, 0.0], h=H)
    assert cap.lambda_star == pytest.approx(-1.5, abs=2 * H)


def test_lambda_star_square_and_dilation():
    square = get_domain("square", side=1.0, grid_h=H)
    cap = compute_lambda_star(square, [1.0, 0.0], h=H)
    assert cap.lambda_star == pytest.approx(0.5, abs=2 * H)

    bigger = square.scaled(2.0)
    scaled_cap = compute_lambda_star(bigger, [1.0, 0.0])
    assert scaled_cap.lambda_star == pytest.approx(2.0 * cap.lambda_star, abs=4 * H)


def test_lambda_star_rejects_bad_tolerance():
    disk = get_domain("disk", grid_h=H)
    with pytest.raises(ArgumentError):
        compute_lambda_star(disk, [1.0, 0.0], tol=0.0)


def test_cap_region_lies_below_plane():
    disk = get_domain("disk", grid_h=H)
    cap = compute_lambda_star(disk, [0.0, 1.0], h=H)
    region = cap_region(disk, cap)
    assert region.count > 0
    assert np.all(region.points() @ cap.direction < cap.lambda_star)

    partial = cap_region(disk, cap, lam=-0.5)
    assert partial.count < region.count


def test_optimal_cap_set_annulus_complement():
    """Ω∖Ω★ of 1<|x|<2 is the inner half-annulus 1<|x|≤1.5"""
    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    omega_star = optimal_cap_set(annulus, 32, h=H)
    interior = annulus.interior(H)
    complement = interior.difference(omega_star)
    radius = np.linalg.norm(complement.points(), axis=1)
    assert radius.max() <= 1.5 + 2 * H

    inner = interior.inside & (np.linalg.norm(interior.grid.points(), axis=-1) < 1.5 - 2 * H)
    assert np.all(complement.inside[inner])


def test_optimal_cap_set_disk_keeps_centre():
    disk = get_domain("disk", grid_h=H)
    caps = maximal_caps(disk, 16, h=H)
    assert len(caps) == 16
    omega_star = optimal_cap_set(disk, 16, h=H, caps=caps)
    complement = disk.interior(H).difference(omega_star)
    assert complement.count > 0
    assert np.linalg.norm(complement.points(), axis=1).max() < 0.25


def test_optimal_cap_set_needs_four_directions():
    disk = get_domain("disk", grid_h=H)
    with pytest.raises(ArgumentError):
        optimal_cap_set(disk, 3, h=H)


def test_threaded_caps_match_serial():
    square = get_domain("square", grid_h=H)
    serial = maximal_caps(square, 8, h=H)
    threaded = maximal_caps(square, 8, h=H, threads=4)
    assert [c.lambda_star for c in serial] == [c.lambda_star for c in threaded]


def test_interior_region():
    disk = get_domain("disk", grid_h=H)
    region = interior_region(disk, 0.5)
    assert region.count > 0
    assert np.linalg.norm(region.points(), axis=1).max() < 0.5

    empty = interior_region(disk, 1.5)
    assert empty.is_empty
    assert "empty" in empty.flags

    with pytest.raises(ArgumentError):
        interior_region(disk, -0.1)


def test_largest_inscribed_radius():
    disk = get_domain("disk", grid_h=H)
    assert largest_inscribed_radius(disk) == pytest.approx(1.0, abs=1e-12)


def test_exterior_sphere_validation():
    disk = get_domain("disk", grid_h=H)
    report = validate_exterior_sphere(disk, rho=1.0)
    assert report.passed
    assert report.to_dict()["pass"] is True

    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    assert validate_exterior_sphere(annulus, rho=0.5).passed
    too_big = validate_exterior_sphere(annulus, rho=2.0)
    assert not too_big.passed
    assert too_big.notes

    with pytest.raises(ArgumentError):
        validate_exterior_sphere(disk, rho=0.0)


def test_polygon_matches_square():
    polygon = get_domain("custom", vertices=[[0, 0], [1, 0], [1, 1], [0, 1]], grid_h=H)
    square = get_domain("square", grid_h=H)
    pts = np.array([[0.5, 0.5], [0.1, 0.2], [1.5, 0.5], [0.5, -0.25]])
    assert np.allclose(polygon.signed_distance(pts), square.signed_distance(pts))

    cap = compute_lambda_star(polygon, [1.0, 0.0], h=H)
    assert cap.lambda_star == pytest.approx(0.5, abs=2 * H)


def test_empty_mask_raises():
    disk = get_domain("disk", center=[0.1, 0.1], radius=0.01, grid_h=0.25)
    with pytest.raises(GeometryError):
        compute_lambda_star(disk, [1.0, 0.0])


def test_unknown_preset():
    from caplab.core.errors import ConfigError
    with pytest.raises(ConfigError):
        get_domain("hexagon")


def test_reflection_and_inversion_are_involutions():
    rng = np.random.default_rng(0)
    pts = rng.uniform(-5.0, 5.0, size=(10000, 2))
    angles = rng.uniform(0.0, 2 * np.pi, size=100)
    levels = rng.uniform(-3.0, 3.0, size=100)
    for k, (theta, lam) in enumerate(zip(angles, levels)):
        nu = np.array([np.cos(theta), np.sin(theta)])
        chunk = pts[100 * k:100 * (k + 1)]
        back = reflect_points(reflect_points(chunk, nu, lam), nu, lam)
        assert np.abs(back - chunk).max() <= 1e-13

    nonzero = pts[np.linalg.norm(pts, axis=1) > 1e-3]
    back = invert_points(invert_points(nonzero))
    relative = np.linalg.norm(back - nonzero, axis=1) / np.linalg.norm(nonzero, axis=1)
    assert relative.max() <= 1e-12


def test_lambda_star_l_shape():
    """Reflecting the upper arm of the L past x = 1/2 leaves the domain"""
    l_shape = get_domain("custom", vertices=[[0, 0], [2, 0], [2, 1], [1, 1], [1, 2], [0, 2]],
                         grid_h=H)
    cap = compute_lambda_star(l_shape, [1.0, 0.0], h=H)
    assert cap.lambda0 == pytest.approx(0.0, abs=1e-12)
    assert cap.lambda_star == pytest.approx(0.5, abs=H)
    assert not cap.degenerate

    cap = compute_lambda_star(l_shape, [0.0, 1.0], h=H)
    assert cap.lambda_star == pytest.approx(0.5, abs=H)


def test_optimal_cap_set_monotone_in_directions():
    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    coarse = optimal_cap_set(annulus, 8, h=H)
    fine = optimal_cap_set(annulus, 16, h=H)
    assert not np.any(coarse.inside & ~fine.inside)
    assert fine.count >= coarse.count


def test_optimal_cap_set_annulus_rotation():
    """The annulus complement is unchanged by a quarter turn away from its rim"""
    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    omega_star = optimal_cap_set(annulus, 32, h=H)
    complement = annulus.interior(H).difference(omega_star)
    mask = complement.inside
    assert mask.shape[0] == mask.shape[1]
    assert complement.count > 0

    mismatch = np.rot90(mask) ^ mask
    radius = np.linalg.norm(complement.grid.points(), axis=-1)
    assert np.all(np.abs(radius[mismatch] - 1.5) <= 3 * H)


def test_interior_region_area_and_offsets():
    h = 1.0 / 128
    disk = get_domain("disk", grid_h=h)
    region = interior_region(disk, 0.5)
    assert region.count * h ** 2 == pytest.approx(np.pi * 0.25, rel=0.05)
    assert interior_region(disk, 0.0).count == disk.interior().count

    h = 1.0 / 64
    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=h)
    band = interior_region(annulus, 0.4)
    radius = np.linalg.norm(band.points(), axis=1)
    assert radius.min() > 1.4 and radius.max() < 1.6

    node_radius = np.linalg.norm(band.grid.points(), axis=-1)
    core = (node_radius > 1.4 + h) & (node_radius < 1.6 - h)
    assert np.all(band.inside[core])


def test_exterior_sphere_oracles():
    disk = get_domain("disk", grid_h=H)
    assert validate_exterior_sphere(disk, rho=10.0).passed

    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    report = validate_exterior_sphere(annulus, rho=1.5)
    assert not report.passed
    assert np.linalg.norm(report.worst_point) == pytest.approx(1.0, abs=1e-9)
    assert report.worst_penetration > report.tolerance


def _inverted_disk():
    disk = get_domain("disk", grid_h=H)
    return image_domain(build_frame(disk, [1.0, 0.0], rho=1.0), disk)


def _inverted_annulus():
    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    return image_domain(build_frame(annulus, [1.0, 0.0], rho=0.5), annulus)


# name -> (factory, slack on the Lipschitz ratio)
DOMAIN_CASES = {
    "disk": (lambda: get_domain("disk", grid_h=H), 1e-9),
    "annulus": (lambda: get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H), 1e-9),
    "square": (lambda: get_domain("square", grid_h=H), 1e-9),
    "graph_boundary": (lambda: get_domain("graph_boundary", grid_h=H), 1e-9),
    "custom": (lambda: get_domain("custom", vertices=[[0, 0], [2, 0], [2, 1], [1, 1],
                                                      [1, 2], [0, 2]], grid_h=H), 1e-9),
    # polylines through the image boundary are off the true arcs by the sagitta
    "inverted_disk": (_inverted_disk, 5e-3),
    "inverted_annulus": (_inverted_annulus, 5e-3),
}


@pytest.mark.parametrize("name", sorted(DOMAIN_CASES))
def test_signed_distance_contract(name):
    factory, slack = DOMAIN_CASES[name]
    domain = factory()
    xmin, xmax, ymin, ymax = domain.bbox()
    lo, hi = np.array([xmin, ymin]), np.array([xmax, ymax])
    pad = 0.25 * (hi - lo)
    rng = np.random.default_rng(7)
    a = rng.uniform(lo - pad, hi + pad, size=(20000, 2))
    b = rng.uniform(lo - pad, hi + pad, size=(20000, 2))
    gap = np.linalg.norm(a - b, axis=1)
    keep = gap >= domain.grid_h
    ratio = np.abs(domain.signed_distance(a) - domain.signed_distance(b))[keep] / gap[keep]
    assert ratio.max() <= 1.0 + slack

    inside = domain.signed_distance(a) < 0
    assert inside.any() and not inside.all()

    boundary, _ = domain.boundary_samples()
    assert np.abs(domain.signed_distance(boundary)).max() <= 1e-6


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
