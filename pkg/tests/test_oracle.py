"""Boundary-sampling oracles: modulus, quadratic quotients, containment radii."""

import math

import numpy as np
import pytest

from conftest import (
    make_body,
    quadric_body,
    quadric_boundary_point,
    rel_close,
    sphere_body,
    tangent_direction,
)

from dircurv import (
    gamma_directional,
    gamma_estimate,
    kappa_directional,
    modulus_bruteforce,
    radius_containment,
    validate_point,
)
from dircurv.errors import InputError, NoBoundaryIntersectionError, NotTangentError


# ---------------------------------------------------------------- modulus


def test_disk_modulus_is_half_chord_squared(disk_point):
    # unit circle: drop = 1 - cos(phi) with chord r^2 = 2 - 2 cos(phi)
    sample = modulus_bruteforce(disk_point, [0.0, 1.0], 0.1)
    assert sample.r == 0.1
    assert abs(sample.value - 0.005) <= 1e-9


def test_sphere_modulus(sphere3_point):
    # radius-R sphere: drop = r^2 / (2 R^2) at chord radius r
    sample = modulus_bruteforce(sphere3_point, [1.0, 0.0, 0.0], 0.1)
    assert abs(sample.value - 0.1**2 / 8.0) <= 1e-9


def test_modulus_witnesses_lie_on_circle_and_boundary(disk_point):
    sample = modulus_bruteforce(disk_point, [0.0, 1.0], 0.2)
    assert len(sample.witnesses) == 2   # symmetric pair
    for eta in sample.witnesses:
        assert abs(np.linalg.norm(eta - disk_point.point) - 0.2) <= 1e-9
        assert abs(disk_point.body.value(eta)) <= 1e-9
        drop = float((disk_point.point - eta) @ disk_point.dual)
        assert abs(drop - sample.value) <= max(1e-12, 1e-6 * abs(sample.value))


def test_cylinder_axis_modulus_vanishes(cylinder_point):
    sample = modulus_bruteforce(cylinder_point, [0.0, 1.0, 0.0], 0.1)
    assert abs(sample.value) <= 1e-12


def test_halfplane_modulus_vanishes():
    b = make_body({"n": 2, "f": "x2 - 1", "delta": 0.5})
    p = validate_point(b, [0.0, 1.0])
    sample = modulus_bruteforce(p, [1.0, 0.0], 0.25)
    assert abs(sample.value) <= 1e-12


def test_modulus_is_nonnegative_on_convex_bodies(disk_point, sphere3_point):
    for p, u in ((disk_point, [0.0, 1.0]), (sphere3_point, [0.0, 1.0, 0.0])):
        for r in (0.05, 0.1, 0.3):
            assert modulus_bruteforce(p, u, r).value >= -1e-12


def test_modulus_rejects_bad_radius(disk_point):
    with pytest.raises(InputError):
        modulus_bruteforce(disk_point, [0.0, 1.0], 0.0)
    with pytest.raises(InputError):
        modulus_bruteforce(disk_point, [0.0, 1.0], 0.5)   # r == delta
    with pytest.raises(InputError):
        modulus_bruteforce(disk_point, [0.0, 1.0], -0.1)


def test_modulus_rejects_coarse_scan(disk_point):
    with pytest.raises(InputError):
        modulus_bruteforce(disk_point, [0.0, 1.0], 0.1, m=32)


def test_modulus_rejects_non_tangent(disk_point):
    with pytest.raises(NotTangentError):
        modulus_bruteforce(disk_point, [1.0, 0.0], 0.1)


def test_modulus_no_intersection_raises():
    # a circle of radius 3 around (1, 0) stays strictly outside the unit disk
    b = make_body({"n": 2, "f": "x1^2 + x2^2 - 1", "delta": 4.0})
    p = validate_point(b, [1.0, 0.0])
    with pytest.raises(NoBoundaryIntersectionError):
        modulus_bruteforce(p, [0.0, 1.0], 3.0)


# ---------------------------------------------------------------- gamma


def test_gamma_estimate_disk(disk_point):
    est = gamma_estimate(disk_point, [0.0, 1.0])
    assert len(est.quotients) == 7
    assert est.estimate == est.quotients[-1]
    assert abs(est.estimate - 0.5) <= 1e-4
    assert abs(est.estimate - gamma_directional(disk_point, [0.0, 1.0])) <= 1e-4


def test_gamma_estimate_quartic(quartic_point):
    u = [-2.0, 1.0]
    est = gamma_estimate(quartic_point, u)
    truth = gamma_directional(quartic_point, u)
    assert abs(est.estimate - truth) <= max(1e-4, 0.02 * abs(truth))


def test_gamma_estimate_flat_apex():
    b = make_body({"n": 2, "f": "x2 - 1 + x1^4", "delta": 0.5})
    p = validate_point(b, [0.0, 1.0])
    est = gamma_estimate(p, [1.0, 0.0])
    assert gamma_directional(p, [1.0, 0.0]) == 0.0
    assert 0.0 <= est.estimate <= 1e-4


def test_gamma_estimate_quotients_settle(disk_point, sphere3_point):
    # the last two dyadic quotients agree once the quadratic term dominates
    for p, u in ((disk_point, [0.0, 1.0]), (sphere3_point, [1.0, 0.0, 0.0])):
        est = gamma_estimate(p, u)
        q5, q6 = est.quotients[-2], est.quotients[-1]
        assert abs(q6 - q5) <= 0.05 * max(abs(q5), abs(q6)) + 1e-12


def test_gamma_estimate_random_quadric():
    rng = np.random.default_rng(18)
    body, a = quadric_body(rng, 3)
    p = validate_point(body, quadric_boundary_point(rng, a))
    u = tangent_direction(rng, p)
    truth = gamma_directional(p, u)
    est = gamma_estimate(p, u)
    assert abs(est.estimate - truth) <= max(1e-4, 0.02 * abs(truth))


# ---------------------------------------------------------------- containment


def test_disk_containment_radius(disk_point):
    # osculating disk of the unit circle is the disk itself
    r = radius_containment(disk_point, [0.0, 1.0], 0.2)
    assert rel_close(r, 1.0, 0.005)


def test_sphere_containment_radius(sphere3_point):
    # dual-weighted radius: radius_hat / |dual| = 2 / 0.5
    r = radius_containment(sphere3_point, [1.0, 0.0, 0.0], 0.2)
    assert rel_close(r, 4.0, 0.005)
    dc = kappa_directional(sphere3_point, [1.0, 0.0, 0.0])
    dual_norm = float(np.linalg.norm(sphere3_point.dual))
    assert rel_close(r, dc.radius_hat / dual_norm, 0.005)


def test_cylinder_axis_containment_is_infinite(cylinder_point):
    assert radius_containment(cylinder_point, [0.0, 1.0, 0.0], 0.2) == math.inf


def test_halfplane_containment_is_infinite():
    b = make_body({"n": 2, "f": "x2 - 1", "delta": 0.5})
    p = validate_point(b, [0.0, 1.0])
    assert radius_containment(p, [1.0, 0.0], 0.2) == math.inf


def test_containment_rejects_bad_eps(disk_point):
    with pytest.raises(InputError):
        radius_containment(disk_point, [0.0, 1.0], 0.0)
    with pytest.raises(InputError):
        radius_containment(disk_point, [0.0, 1.0], 0.25)   # eps == delta / 2
