#!/usr/bin/python
# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import solve_ivp

from SaddleCenterLoops.annulus.hunt import alpha_window
from SaddleCenterLoops.annulus.twist import twist_band
from SaddleCenterLoops.base.model import PhasePoint
from SaddleCenterLoops.base.utils import random_ball
from SaddleCenterLoops.constants import CHART_JORDAN, DEFAULT_C3
from SaddleCenterLoops.dynamics.graphs import (RestrictedReturnMap,
                                               energy_level_curve,
                                               energy_offset,
                                               graph_cs,
                                               graph_energy_level,
                                               is_outside_center_stable,
                                               periodic_orbit_energy,
                                               return_times,
                                               stable_intersection_curve)
from SaddleCenterLoops.dynamics.homoclinic import (_planar_field,
                                                   analytic_homoclinic,
                                                   classify_level,
                                                   homoclinic_point,
                                                   homoclinic_transit_time,
                                                   jordan_to_underlined,
                                                   portrait,
                                                   transit_time_bounds,
                                                   truncated_energy,
                                                   underlined_to_jordan)
from SaddleCenterLoops.dynamics.integrator import (GaussIntegrator,
                                                   I2_drift,
                                                   I2_drift_slope,
                                                   integrate,
                                                   integrate_batch,
                                                   integrate_split,
                                                   rotation_split,
                                                   trajectory)
from SaddleCenterLoops.dynamics.sections import (first_return,
                                                 global_map_ret2,
                                                 local_map,
                                                 point_on_sigma_l,
                                                 section_map_jacobian)
from SaddleCenterLoops.errors import (CenterStableError,
                                      DegenerateHypothesisError,
                                      DomainError,
                                      NoCrossingError,
                                      StiffnessError)

#: small area parameter inside the admissible window at eps = 0.35
ALPHA = 2e-7


# === HOMOCLINIC LOOP ===

def test_homoclinic_solves_truncation():
    c3 = DEFAULT_C3
    t = np.linspace(-12.0, 12.0, 241)
    q, p = analytic_homoclinic(t, c3)
    assert_allclose(truncated_energy(q, p, c3), 0.0, atol=1e-15)
    h = 1e-4
    _, p_plus = analytic_homoclinic(t + h, c3)
    _, p_minus = analytic_homoclinic(t - h, c3)
    assert_allclose((p_plus - p_minus) / (2 * h), q - 3 * c3 * q ** 2,
                    atol=1e-7)
    assert_allclose(q.max(), 0.5 / c3, rtol=1e-12)


def test_homoclinic_matches_planar_flow():
    c3 = DEFAULT_C3
    start = homoclinic_point(-2.0, c3)
    sol = solve_ivp(_planar_field(c3), (0.0, 3.0), [start[0], start[2]],
                    method='DOP853', rtol=1e-12, atol=1e-14)
    end = homoclinic_point(1.0, c3)
    assert_allclose(sol.y[:, -1], [end[0], end[2]], atol=1e-9)


def test_homoclinic_far_tail_is_finite():
    q, p = analytic_homoclinic(np.array([-2000.0, 2000.0]), DEFAULT_C3)
    assert np.all(np.isfinite(q)) and np.all(np.isfinite(p))
    assert np.max(np.abs(q)) < 1e-300
    with pytest.raises(DegenerateHypothesisError):
        analytic_homoclinic(0.0, -1.0)


def test_underlined_coordinates_invert():
    q1, p1 = underlined_to_jordan(0.3, -0.1)
    assert_allclose(jordan_to_underlined(q1, p1), (0.3, -0.1), atol=1e-15)
    assert_allclose(truncated_energy(0.3, -0.1, 1.0),
                    0.5 * 0.01 - 0.5 * 0.09 + 0.027)


def test_classify_levels():
    c3 = 1.0
    center = -1.0 / 27.0
    assert classify_level(0.0, c3) == 'homoclinic'
    assert classify_level(center, c3) == 'center'
    assert classify_level(0.5 * center, c3) == 'periodic'
    assert classify_level(2.0 * center, c3) == 'open'
    assert classify_level(0.01, c3) == 'open'


def test_portrait_levels():
    curves = portrait([-0.01, 0.0, 0.01], 1.0, points=101)
    assert [c['kind'] for c in curves] == ['periodic', 'homoclinic', 'open']
    for curve in curves:
        upper, lower = curve['p_upper'], curve['p_lower']
        finite = np.isfinite(upper)
        assert np.all(upper[finite] >= 0)
        assert_allclose(lower[finite], -upper[finite])
    # right of the loop tip the homoclinic level does not exist
    assert np.isnan(curves[1]['p_upper'][-1])


def test_transit_times():
    c3, delta = DEFAULT_C3, 0.02
    T = homoclinic_transit_time(delta, c3)
    assert_allclose(homoclinic_point(-0.5 * T, c3)[2], delta, atol=1e-12)
    assert_allclose(homoclinic_point(0.5 * T, c3)[0], delta, atol=1e-12)
    low, high = transit_time_bounds(delta, c3, samples=3)
    assert 0.0 < low <= high
    with pytest.raises(NoCrossingError):
        homoclinic_transit_time(1.0, c3)


# === INTEGRATOR ===

def test_gauss_integrator_oscillator():
    def field(t, x):
        return np.stack([x[..., 1], -x[..., 0]], axis=-1)

    def energy(t, x):
        return 0.5 * np.sum(np.asarray(x) ** 2, axis=-1)

    integrator = GaussIntegrator(field, energy, step=0.01)
    x, times, states = integrator.run([1.0, 0.0], 2.0 * math.pi, record=True)
    assert_allclose(x, [1.0, 0.0], atol=1e-8)
    assert times[-1] == pytest.approx(2.0 * math.pi)
    assert states.shape == (len(times), 2)
    with pytest.raises(StiffnessError):
        GaussIntegrator(field, step=0.0)


def test_integrator_shadows_homoclinic_loop():
    c3 = DEFAULT_C3
    planar = _planar_field(c3)
    integrator = GaussIntegrator(lambda t, z: np.asarray(planar(t, z)),
                                 step=0.01, stages=4)
    start = homoclinic_point(-8.0, c3)
    _, times, states = integrator.run([start[0], start[2]], 8.0, t0=-8.0,
                                      record=True)
    expected = homoclinic_point(times, c3)[:, [0, 2]]
    assert times[-1] == pytest.approx(8.0)
    assert np.max(np.abs(states - expected)) <= 1e-6


def test_full_and_split_flows_agree(desk_model):
    x0 = np.array([0.01, 0.004, 0.002, -0.003])
    full = integrate(desk_model, x0, 0.5)
    split = integrate_split(desk_model, x0, 0.5)
    assert_allclose(full, split, atol=1e-8)
    E0 = desk_model.energy(x0)
    assert abs(desk_model.energy(split) - E0) <= 1e-10
    angle, _ = rotation_split(desk_model, x0, 0.5)
    assert_allclose(angle, desk_model.Omega, rtol=1e-12)


def test_integrate_keeps_phase_points(desk_model):
    x0 = PhasePoint([0.01, 0.004, 0.002, -0.003], CHART_JORDAN)
    image = integrate_split(desk_model, x0, 0.2)
    assert isinstance(image, PhasePoint)
    batch = integrate_batch(desk_model, [x0.coordinates, x0.coordinates], 0.2)
    assert_allclose(batch[0], image.coordinates, atol=1e-14)
    assert_allclose(batch[1], image.coordinates, atol=1e-14)


def test_trajectory_conserves_I2(desk_model):
    orbit = trajectory(desk_model, [0.01, 0.004, 0.002, -0.003], 1.0)
    assert set(orbit) == {'t', 'q1', 'p1', 'q2', 'p2', 'H', 'I2'}
    # without the remainder the normal form is a function of I2
    assert_allclose(orbit['I2'], orbit['I2'][0], rtol=1e-12)
    assert np.ptp(orbit['H']) <= 1e-10


def test_I2_rate_vanishes_without_remainder(desk_model):
    rng = np.random.default_rng(0)
    x = 0.02 * rng.uniform(-1, 1, (20, 4))
    assert_allclose(desk_model.dI2_dt(x), 0.0, atol=1e-14)


def test_I2_drift_is_linear_in_mu(desk_model):
    points = random_ball(np.random.default_rng(2), 6, 0.3)
    assert I2_drift(desk_model, points, 1.0) <= 1e-12
    slope, drifts = I2_drift_slope(desk_model, points, 1.0)
    assert drifts[0] < drifts[1] < drifts[2]
    assert abs(slope - 1.0) <= 0.1


# === CUTOFF ===

def test_cutoff_switches_off_whole_hamiltonian(desk_model):
    far = np.array([3.0, 0.0, 3.0, 0.0])
    assert desk_model.cutoff(far)[0] == 0.0
    assert desk_model.energy(far) == 0.0
    assert_allclose(desk_model.gradient(far), 0.0, atol=0.0)
    near = 0.05 * np.random.default_rng(3).uniform(-1, 1, (10, 4))
    assert_allclose(desk_model.energy(near), desk_model.polynomial()(near),
                    atol=1e-14)


def test_cutoff_gradient_in_transition(desk_model):
    x = np.array([0.6, 0.3, 0.1, 0.5])
    chi, _ = desk_model.cutoff(x)
    assert 0.0 < chi < 1.0
    h = 1e-6
    steps = h * np.eye(4)
    numeric = (desk_model.energy(x + steps) - desk_model.energy(x - steps)) \
        / (2.0 * h)
    assert_allclose(desk_model.gradient(x), numeric, rtol=1e-6, atol=1e-7)


# === SECTIONS ===

@pytest.fixture
def sigma_l_point(desk_local, delta):
    return point_on_sigma_l(desk_local, delta / 50.0, 0.003, 0.001, delta)


def test_point_on_sigma_l(desk_local, sigma_l_point, delta):
    assert sigma_l_point[0] == delta
    y = desk_local.to_local(sigma_l_point)
    assert_allclose(y[1:], [0.003, delta / 50.0, 0.001], atol=1e-10)


def test_local_map_reaches_sigma_0(desk_model, desk_local, sigma_l_point,
                                   delta):
    record = local_map(desk_model, desk_local, sigma_l_point, delta)
    y0 = desk_local.to_local(sigma_l_point)
    y1 = desk_local.to_local(record.image.coordinates)
    assert_allclose(y1[2], delta, atol=1e-12)
    assert_allclose(y1[0] * y1[2], y0[0] * y0[2], rtol=1e-8)
    assert_allclose(record.T, math.log(50.0) / -record.diagnostics['rate_a'],
                    rtol=1e-12)
    assert record.diagnostics['chart_roundtrip'] <= 1e-12


def test_local_map_domain(desk_model, desk_local, delta):
    inside = point_on_sigma_l(desk_local, -delta / 50.0, 0.003, 0.0, delta)
    with pytest.raises(CenterStableError):
        local_map(desk_model, desk_local, inside, delta)
    far = point_on_sigma_l(desk_local, delta / 10.0, 0.003, 0.0, delta)
    with pytest.raises(DomainError):
        local_map(desk_model, desk_local, far, delta)
    with pytest.raises(DomainError):
        local_map(desk_model, desk_local, [0.5 * delta, 0, 0, 0], delta)


def test_first_return(desk_model, desk_local, sigma_l_point, delta):
    record = first_return(desk_model, desk_local, sigma_l_point, delta)
    diagnostics = record.diagnostics
    assert_allclose(record.image.q1, delta, atol=1e-9)
    assert abs(diagnostics['section_residual']) <= 1e-9
    assert_allclose(record.T, diagnostics['T_local'] + diagnostics['T_global'])
    assert record.T > diagnostics['T_local'] > 0
    assert diagnostics['drift_bound'] == 0.0

    outer = global_map_ret2(desk_model, desk_local,
                            local_map(desk_model, desk_local, sigma_l_point,
                                      delta).image, delta)
    assert outer.diagnostics['delta_I2'] <= 1e-12
    assert_allclose(outer.rotation_angle, 2.0 * desk_model.Omega * outer.T)


def test_return_map_flux_identity(desk_model, desk_local, delta):
    x0 = point_on_sigma_l(desk_local, delta / 30.0, 0.002, 0.0, delta)
    det, left, right = section_map_jacobian(desk_model, desk_local, x0, delta)
    assert det != 0.0
    assert_allclose(left, right, rtol=0.05)


# === GRAPHS ===

def test_center_stable_graph(desk_local, delta):
    p1 = graph_cs(desk_local, 0.002, -0.001, delta)
    y = desk_local.to_local([delta, 0.002, p1, -0.001])
    assert abs(y[2]) <= 1e-13


def test_energy_level_graph(desk_model, desk_local, delta):
    r = 1.5 * math.sqrt(ALPHA)
    p1 = graph_energy_level(desk_model, desk_local, ALPHA, r, 0.0, delta)
    assert_allclose(desk_model.energy(np.array([delta, r, p1, 0.0])),
                    periodic_orbit_energy(desk_local, ALPHA), atol=1e-15)


def test_stable_curve_on_energy_level(desk_model, desk_local, delta):
    stable = stable_intersection_curve(desk_local, ALPHA, delta, samples=8)
    assert stable.shape == (8, 2)
    level = energy_level_curve(desk_model, desk_local, ALPHA, delta,
                               samples=8)
    for q2, p2 in level:
        p1 = graph_cs(desk_local, q2, p2, delta)
        y = desk_local.to_local([delta, q2, p1, p2])
        assert_allclose(y[1] ** 2 + y[3] ** 2, ALPHA, rtol=1e-2)


def test_restricted_return_map_keeps_energy(desk_model, desk_local, delta):
    restricted = RestrictedReturnMap(desk_model, desk_local, ALPHA, delta)
    start = np.array([1.5 * math.sqrt(ALPHA), 0.0])
    record = restricted.record(*start)
    assert_allclose(desk_model.energy(record.image.coordinates),
                    restricted.energy, atol=1e-8)
    image = restricted(start)
    assert image.shape == (2,)
    assert_allclose(image, [record.image.q2, record.image.p2])


def test_restricted_return_map_preserves_area(desk_model, desk_local, delta):
    alpha = alpha_window(desk_model.epsilon, delta)[0]
    restricted = RestrictedReturnMap(desk_model, desk_local, alpha, delta)
    r_min, r_max = twist_band(desk_model.epsilon, delta)
    radii = np.repeat(np.linspace(r_min, r_max, 5), 10)
    angles = np.tile(0.1 + 2.0 * math.pi * np.arange(10) / 10.0, 5)
    points = np.column_stack([radii * np.cos(angles), radii * np.sin(angles)])
    dets = restricted.jacobian_determinant(points)
    assert dets.shape == (50,)
    assert_allclose(dets, 1.0, atol=1e-6)


def test_center_stable_side(desk_local, sigma_l_point, delta):
    assert is_outside_center_stable(desk_local, sigma_l_point)
    inside = point_on_sigma_l(desk_local, -delta / 50.0, 0.003, 0.0, delta)
    assert not is_outside_center_stable(desk_local, inside)


def test_energy_offset_vanishes_on_periodic_orbit(desk_model, desk_local):
    assert abs(energy_offset(desk_model, desk_local, 0.0, 0.0, 0.0)) <= 1e-15
    r = math.sqrt(ALPHA)
    assert abs(energy_offset(desk_model, desk_local, ALPHA, r, 0.0)) <= 1e-10
    assert energy_offset(desk_model, desk_local, ALPHA, 2.0 * r, 0.0) > 0.0


def test_return_times(desk_model, desk_local, delta):
    outside = point_on_sigma_l(desk_local, delta / 50.0, 0.0, 0.0, delta)
    inside = point_on_sigma_l(desk_local, -delta / 50.0, 0.0, 0.0, delta)
    times = return_times(desk_model, desk_local, [outside[2], inside[2]],
                         delta)
    assert times.shape == (2,)
    assert np.isfinite(times[0]) and times[0] > 0.0
    assert np.isnan(times[1])
