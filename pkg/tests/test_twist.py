#!/usr/bin/python
# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from SaddleCenterLoops.annulus.hunt import alpha_window
from SaddleCenterLoops.annulus.twist import (AREA_POLAR,
                                             TRAP_BAND,
                                             TRAP_CIRCLE,
                                             band_oracle,
                                             check_kam_hypotheses,
                                             continued_fraction,
                                             find_invariant_circle,
                                             from_twist_coordinates,
                                             noble_number,
                                             nu_bar,
                                             record_lift,
                                             sample_twist_band,
                                             sample_twist_profile,
                                             to_twist_coordinates,
                                             trapping_region,
                                             twist_band,
                                             twist_coordinates,
                                             unwrap_angles)
from SaddleCenterLoops.base.model import PhasePoint, ReturnRecord
from SaddleCenterLoops.base.utils import rotate_clockwise
from SaddleCenterLoops.constants import DEFAULT_DELTA
from SaddleCenterLoops.dynamics.graphs import RestrictedReturnMap
from SaddleCenterLoops.errors import (ConfinementError,
                                      CoordinateSingularityError)

_GOLDEN_MEAN = 0.5 * (math.sqrt(5.0) - 1.0)


def test_scales():
    assert nu_bar(0.35) == 0.125
    assert 0.35 ** 2 <= nu_bar(0.35) < 0.35 ** 2 / (1 - 0.35 ** 2)
    low, high = twist_band(0.35, 0.02)
    assert_allclose([low, high], [0.007 / math.sqrt(32.0), 0.007 / 4.0])


def test_twist_coordinates_turn_clockwise():
    q, rho = twist_coordinates([0.0], [-2.0], 0.25)
    assert_allclose(q, [0.25 * 0.5 * math.pi])
    assert_allclose(rho, [4.0])
    q2, p2 = from_twist_coordinates(q, rho, 0.25)
    assert_allclose([q2[0], p2[0]], [0.0, -2.0], atol=1e-15)
    with pytest.raises(CoordinateSingularityError):
        twist_coordinates([0.0, 1.0], [0.0, 0.0], 0.25)
    with pytest.raises(CoordinateSingularityError):
        twist_coordinates([0.1], [0.0], 0.25, min_radius=0.5)


def test_unwrap_and_lift():
    theta = np.mod(0.9 * np.arange(20), 2.0 * math.pi)
    assert_allclose(np.diff(unwrap_angles(theta)), 0.9)
    start = PhasePoint([0.02, 1.0, 0.0, 0.0])
    q2, p2 = rotate_clockwise(1.0, 0.0, 0.3)
    image = PhasePoint([0.02, q2, 0.0, p2])
    record = ReturnRecord(start, image, 1.0, 6.0 * math.pi + 0.3)
    assert_allclose(record_lift(record), 6.0 * math.pi + 0.3)


def test_continued_fractions():
    assert continued_fraction(0.75) == [0, 1, 3]
    assert_allclose(noble_number(0.6), _GOLDEN_MEAN)
    assert_allclose(noble_number(1.6), 1.0 + _GOLDEN_MEAN)


def _records_of_rotation(scale, radii, q_count, turns=3):
    records = []
    q = 2.0 * math.pi * scale * np.arange(q_count) / q_count
    for rho in radii:
        q2, p2 = from_twist_coordinates(q, np.full(q_count, rho), scale)
        twist = 0.1 * rho
        for a, b in zip(q2, p2):
            c, d = rotate_clockwise(a, b, twist)
            records.append(ReturnRecord(PhasePoint([0.02, a, 0.0, b]),
                                        PhasePoint([0.02, c, 0.0, d]), 1.0,
                                        2.0 * math.pi * turns + twist))
    return records


def test_profile_of_return_records():
    scale, radii = 0.125, [1.0, 1.5, 2.0]
    records = _records_of_rotation(scale, radii, 8)
    tp = to_twist_coordinates(records, scale, (3, 8))
    assert tp.area_form == AREA_POLAR
    assert_allclose(tp.rho_grid, radii)
    assert_allclose(tp.alpha_values,
                    scale * (6.0 * math.pi + 0.1 * np.array(radii)))
    assert tp.sup_F <= 1e-12
    assert tp.sup_G <= 1e-12
    assert_allclose(tp.twist, 0.1 * scale)
    report = check_kam_hypotheses(tp)
    assert report['twist']['positive']
    assert report['exactness']['exact']
    assert report['exactness']['flux_defect'] <= 1e-10
    with pytest.raises(CoordinateSingularityError):
        to_twist_coordinates(records, scale, (3, 8), min_radius=0.5)


def test_hypotheses_of_standard_maps(standard_map, integrable_twist_map):
    q_grid = np.arange(16) / 16.0
    rho_grid = np.linspace(0.3, 0.8, 6)
    sweep = [(K, sample_twist_profile(standard_map(K), q_grid, rho_grid,
                                      period=1.0))
             for K in (1e-3, 1e-2, 1e-1)]
    report = check_kam_hypotheses(sweep[-1][1], sweep)
    assert report['passed']
    assert_allclose(report['twist']['min'], 1.0)
    assert_allclose(report['smallness']['sup_G'], 0.1 / (2.0 * math.pi),
                    rtol=1e-12)
    assert_allclose(report['smallness']['mu_slope_F'], 1.0, rtol=1e-9)
    assert_allclose(report['smallness']['mu_slope_G'], 1.0, rtol=1e-9)

    reversed_twist = sample_twist_profile(
        integrable_twist_map(lambda rho: -rho), q_grid, rho_grid, period=1.0)
    report = check_kam_hypotheses(reversed_twist)
    assert report['twist']['negative']
    assert report['passed']


def test_interpolated_annulus_map(standard_map):
    q_grid = np.arange(16) / 16.0
    rho_grid = np.linspace(0.3, 0.8, 6)
    tp = sample_twist_profile(standard_map(0.2), q_grid, rho_grid, period=1.0)
    mapping = tp.annulus_map()
    points = np.array([[q_grid[3], rho_grid[2]], [q_grid[10], rho_grid[4]]])
    assert_allclose(mapping(points), standard_map(0.2)(points), atol=1e-12)


def test_pure_twist_circle(integrable_twist_map):
    circle = find_invariant_circle(integrable_twist_map(lambda rho: rho),
                                   (0.3, 0.8), nodes=16)
    assert circle is not None
    assert_allclose(circle.omega, _GOLDEN_MEAN)
    assert_allclose(circle.rho_range, [_GOLDEN_MEAN, _GOLDEN_MEAN], atol=1e-12)
    assert circle.residual <= 1e-12
    assert len(circle.curve()) == 16


def test_standard_map_circles(standard_map):
    circle = find_invariant_circle(standard_map(0.5), (0.3, 0.8))
    assert circle is not None
    assert circle.residual <= 1e-8
    low, high = circle.rho_range
    assert 0.3 <= low < high <= 0.8
    assert find_invariant_circle(standard_map(1.5), (0.3, 0.8)) is None
    # the rotation is not reached inside the band
    assert find_invariant_circle(standard_map(0.5), (0.1, 0.2),
                                 omega=_GOLDEN_MEAN) is None


def test_band_oracle(integrable_twist_map):
    twist = integrable_twist_map(lambda rho: rho)
    stays = band_oracle(twist, [[0.0, 0.5]], (0.3, 0.8), iterates=100)
    assert not stays['escaped']
    assert stays['first_escape'] is None

    def drift(points):
        points = np.atleast_2d(points)
        return points + np.array([0.0, 0.03])

    leaves = band_oracle(drift, [[0.0, 0.5]], (0.0, 1.0), iterates=100)
    assert leaves['escaped']
    assert leaves['first_escape'] == 17


# === TRAPPING REGIONS ===

TRAP_Q_GRID = 2.0 * math.pi * np.arange(16) / 16.0
TRAP_RHO_GRID = np.linspace(0.3, 0.8, 6)


def test_trap_from_invariant_circle(integrable_twist_map):
    tp = sample_twist_profile(integrable_twist_map(lambda rho: 0.1 * rho),
                              TRAP_Q_GRID, TRAP_RHO_GRID)
    trap = trapping_region(tp, (0.3, 0.8), iterates=100)
    assert trap.kind == TRAP_CIRCLE
    low, high = trap.to_dict['radius_range']
    assert 0.3 <= low <= high <= 0.8
    assert_allclose(high - low, 0.0, atol=1e-10)
    assert trap.contains([[0.0, 0.0], [0.2, -0.1]]).all()
    assert not trap.contains([[0.9, 0.0]]).any()


def test_trap_from_band_oracle(integrable_twist_map):
    # no twist: the rotation of the circle finder is never reached
    tp = sample_twist_profile(integrable_twist_map(lambda rho: 0.3 + 0 * rho),
                              TRAP_Q_GRID, TRAP_RHO_GRID)
    trap = trapping_region(tp, (0.3, 0.8), iterates=1000)
    assert trap.kind == TRAP_BAND
    assert trap.report['iterates'] == 1000
    assert not trap.report['escaped']
    assert trap.contains([[0.79, 0.0]]).all()
    assert not trap.contains([[0.0, 0.81]]).any()


def test_leaking_band_has_no_trap():
    def drift(points):
        points = np.atleast_2d(points)
        return points + np.array([0.3, 0.03])

    tp = sample_twist_profile(drift, TRAP_Q_GRID, TRAP_RHO_GRID)
    with pytest.raises(ConfinementError):
        trapping_region(tp, (0.3, 0.8), iterates=100)


# === RESTRICTED RETURN MAP ===

@pytest.fixture(scope='module')
def desk_band(desk_model, desk_local):
    alpha = alpha_window(desk_model.epsilon, DEFAULT_DELTA)[0]
    restricted = RestrictedReturnMap(desk_model, desk_local, alpha,
                                     DEFAULT_DELTA)
    return sample_twist_band(restricted, desk_model.epsilon, DEFAULT_DELTA)


def test_hamiltonian_twist_is_negative(desk_band):
    profile, (low, high) = desk_band
    assert profile.twist.shape == (4, 16)
    assert_allclose([low, high], np.array(twist_band(0.35, DEFAULT_DELTA))
                    / math.sqrt(nu_bar(0.35)))
    report = check_kam_hypotheses(profile)
    assert report['twist']['negative']
    # without the remainder the action I2 is kept
    assert profile.sup_G <= 1e-3 * (high - low)


def test_return_map_band_holds_for_long_orbits(desk_band):
    profile, (low, high) = desk_band
    q = profile.period * np.arange(8) / 8.0
    ring = np.column_stack([q, np.full(8, 0.5 * (low + high))])
    report = band_oracle(profile.annulus_map(), ring, (low, high),
                         iterates=100000)
    assert not report['escaped']
    assert low <= report['rho_min'] <= report['rho_max'] <= high
