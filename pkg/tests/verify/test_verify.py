#!/usr/bin/env python3
"""Test the moving-plane, bound, Kelvin and boundedness checks"""

import numpy as np
import pytest

from caplab.core.errors import CheckError
from caplab.core.geometry import compute_lambda_star, maximal_caps, optimal_cap_set
from caplab.core.kelvin import build_frame, kelvin_transform
from caplab.core.models import GridFunction
from caplab.core.solver import solve_radial
from caplab.core.verify import (CheckReport, VerificationRun, bound_constant,
                                boundedness_experiment, check_cap_monotonicity, check_caps,
                                check_g_reflection, check_global_bound, check_kelvin_no_critical,
                                check_max_location, check_transformed_cap, default_family,
                                plant_critical_point, transformed_cap)
from caplab.domains import get_domain
from caplab.nonlinearities import get_nonlinearity

H = 1.0 / 32


@pytest.fixture(scope="module")
def lane_emden():
    return solve_radial(3, get_nonlinearity("power", p=3.0, N=3))


@pytest.fixture(scope="module")
def disk():
    return get_domain("disk", grid_h=H)


def off_centre_bump(domain):
    region = domain.interior(H)
    return GridFunction.from_callable(
        region.grid, region.inside,
        lambda p: np.exp(-10.0 * np.sum((p - np.array([0.5, 0.0])) ** 2, axis=-1)))


def test_caps_hold_for_radial_solution(lane_emden, disk):
    caps = maximal_caps(disk, 8, h=H)
    reports = check_caps(lane_emden, disk, caps, h=H)
    assert len(reports) == 8
    assert [r.parameters["direction_index"] for r in reports] == list(range(8))
    for report in reports:
        assert report.passed, report.get_summary()
        assert report.violation_count == 0


def test_caps_threaded_match(lane_emden, disk):
    caps = maximal_caps(disk, 4, h=H)
    serial = check_caps(lane_emden, disk, caps, h=H)
    threaded = check_caps(lane_emden, disk, caps, h=H, threads=2)
    assert [r.margin for r in serial] == [r.margin for r in threaded]


def test_cap_monotonicity_flags_off_centre_bump(disk):
    u = off_centre_bump(disk)
    cap = compute_lambda_star(disk, [-1.0, 0.0], h=H)
    report = check_cap_monotonicity(u, disk, cap, tol=1e-3, h=H)
    assert not report.passed
    assert report.violation_count > 0
    assert report.violations[0]["kind"] in ("reflection", "derivative")
    assert len(report.violations) <= 20


def test_cap_monotonicity_degenerate_cap(lane_emden, disk):
    cap = compute_lambda_star(disk, [1.0, 0.0], h=H)
    cap.degenerate = True
    with pytest.raises(CheckError):
        check_cap_monotonicity(lane_emden, disk, cap, h=H)


def test_max_location(lane_emden, disk):
    omega_star = optimal_cap_set(disk, 16, h=H)
    report = check_max_location(lane_emden, disk, omega_star, h=H)
    assert report.passed
    assert report.details["argmax_in_complement"]
    assert report.margin == pytest.approx(0.0)

    bump = check_max_location(off_centre_bump(disk), disk, omega_star, tol=1e-3, h=H)
    assert not bump.passed
    assert bump.details["excess"] > 0
    assert bump.violations[0]["kind"] == "max_in_caps"


def test_max_location_preconditions(lane_emden, disk):
    full = disk.interior(H)
    with pytest.raises(CheckError):
        check_max_location(lane_emden, disk, full, h=H)

    other = get_domain("disk", grid_h=1.0 / 16).interior()
    with pytest.raises(CheckError):
        check_max_location(lane_emden, disk, other, h=H)


def test_bound_constant():
    annulus = get_domain("annulus", r_in=1.0, r_out=2.0, grid_h=H)
    frame = build_frame(annulus, [1.0, 0.0], rho=0.5)
    assert bound_constant(frame, 3) == pytest.approx(10.0, abs=1e-2)
    assert bound_constant(frame, 4) == pytest.approx(100.0, abs=0.5)


def test_global_bound(lane_emden, disk):
    frame = build_frame(disk, [1.0, 0.0], rho=1.0)
    report = check_global_bound(lane_emden, disk, 0.1, N=3, frame=frame, h=H)
    assert report.passed
    assert report.parameters["C"] == pytest.approx(3.0, abs=1e-3)
    assert report.details["ratio"] == pytest.approx(1.0)
    assert report.details["largest_passing_delta"] == pytest.approx(1.0 - H)
    assert report.details["frame_local_constant"] == pytest.approx(3.0, abs=1e-3)

    tight = check_global_bound(lane_emden, disk, 0.1, C=0.5, h=H)
    assert not tight.passed
    assert tight.margin == pytest.approx(-0.5)


def test_global_bound_preconditions(lane_emden, disk):
    with pytest.raises(CheckError):
        check_global_bound(lane_emden, disk, 0.1, h=H)
    with pytest.raises(CheckError):
        check_global_bound(lane_emden, disk, 1.5, C=3.0, h=H)


def test_kelvin_no_critical_points(lane_emden, disk):
    report = check_kelvin_no_critical(lane_emden, disk, [1.0, 0.0], N=3, h=H,
                                      image_h=1.0 / 64)
    assert report.passed, report.get_summary()
    assert report.details["cap_nodes"] > 0
    assert report.parameters["x0"] == [1.0, 0.0]


def test_planted_critical_point_is_found(lane_emden, disk):
    frame = build_frame(disk, [1.0, 0.0], rho=1.0)
    transformed = kelvin_transform(lane_emden.as_field(dim=3), frame, 3, disk, 1.0 / 64)
    assert check_transformed_cap(transformed).passed

    planted = plant_critical_point(transformed)
    report = check_transformed_cap(planted)
    assert not report.passed
    assert report.violation_count > 0
    assert report.violations[0]["kind"] == "critical_point"
    assert any("planted" in note for note in planted.notes)


def test_g_reflection(lane_emden, disk):
    frame = build_frame(disk, [1.0, 0.0], rho=1.0)
    transformed = kelvin_transform(lane_emden.as_field(dim=3), frame, 3, disk, 1.0 / 64)
    cap, region = transformed_cap(transformed)
    assert cap.lambda_star == pytest.approx(-2.0 / 3.0, abs=2.0 / 64)
    assert not region.is_empty

    cubic = get_nonlinearity("power", p=3.0, N=3)
    report = check_g_reflection(cubic, frame, cap, 3, transformed.domain, n_samples=500)
    assert report.passed
    assert report.details["radius_ordering_holds"]

    # g(y, s) = |y|²s⁷ grows with |y| for a supercritical power
    septic = get_nonlinearity("power", p=7.0, N=3)
    assert not check_g_reflection(septic, frame, cap, 3, transformed.domain,
                                  n_samples=500).passed


def test_boundedness_experiment():
    family = [get_nonlinearity("power", p=p, N=3) for p in (2.0, 3.0, 5.0)]
    table = boundedness_experiment(family, N=3, delta=0.1)
    assert len(table.rows) == 3
    assert table.in_hypothesis_bounded
    assert table.flagged == ["s^5"]
    critical = table.rows[-1]
    assert not critical.in_hypothesis
    assert critical.status != "ok"
    for row in table.rows[:2]:
        assert row.status == "ok"
        assert row.ratio >= 1.0
    assert table.to_dict()["notes"]

    with pytest.raises(CheckError):
        boundedness_experiment(family[-1:], N=3)


def test_default_family():
    labels = [f.label for f in default_family(3)]
    assert labels[:4] == ["s^2", "s^2.5", "s^3", "s^4"]
    assert labels[-1] == "s^5"
    assert labels[4].startswith("staircase")


def test_verification_run():
    run = VerificationRun()
    run.add(CheckReport(name="a", margin=0.5, tolerance=0.0))
    run.add(CheckReport(name="b", margin=-0.1, tolerance=0.2))
    assert run.all_passed
    assert run.worst_margin == pytest.approx(0.1)
    run.errors.append({"check": "c", "error": "check"})
    assert not run.all_passed
    assert "1 errors" in run.get_summary()
    assert run.to_rows()[0]["check"] == "a"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
