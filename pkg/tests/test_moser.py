#!/usr/bin/python
# -*- coding: utf-8 -*-
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.integrate import solve_ivp

from SaddleCenterLoops.base.commands import build_system
from SaddleCenterLoops.base.model import RunConfig
from SaddleCenterLoops.base.poly import PolySeries
from SaddleCenterLoops.base.utils import random_ball, random_series
from SaddleCenterLoops.constants import MODE_FLOAT
from SaddleCenterLoops.errors import PolyContractError, ResonanceError
from SaddleCenterLoops.moser import (build_local_normalization,
                                     complexify,
                                     conjugacy_defect,
                                     criterion_residual,
                                     diagonal_brackets,
                                     enforce_criterion_Q,
                                     moser_type_normalization,
                                     normalizing_chart,
                                     realify,
                                     solve_generating_function,
                                     verify_uniform_estimates)
from SaddleCenterLoops.normal_form import build_model


SHIPPED_CONFIG = os.path.join(os.path.dirname(os.path.dirname(__file__)),
                              'config', 'default_config.json')


@pytest.fixture
def local_points(desk_local):
    rng = np.random.default_rng(5)
    return random_ball(rng, 50, 0.25 * desk_local.radius)


def test_complexify_diagonalizes_rotation():
    q1, q2, p1, p2 = PolySeries.variables(4, 2)
    H = -q1 * p1 + (q2 * q2 + p2 * p2) * 3.0
    Hc = complexify(H)
    assert_allclose(complex(Hc.coefficient((0, 1, 0, 1))), 6.0j, atol=1e-14)
    assert_allclose(complex(Hc.coefficient((1, 0, 1, 0))), -1.0, atol=1e-14)
    assert abs(complex(Hc.coefficient((0, 2, 0, 0)))) <= 1e-14


def test_realify_inverts_complexify():
    H = random_series(np.random.default_rng(2), low=2, high=4, scale=0.5)
    assert realify(complexify(H)).allclose(H, atol=1e-12)


def test_generating_function_solves_conjugacy(desk_model):
    Hc = complexify(desk_model.polynomial().with_degree(6))
    W, K = solve_generating_function(Hc, 6)
    assert max(W.residuals) <= 1e-10
    assert conjugacy_defect(Hc, W.w, K, 6).norm() <= 1e-10
    F = enforce_criterion_Q(W.chart())
    assert criterion_residual(F).norm() <= 1e-9


def test_moser_type_normalization_unit_brackets(desk_model):
    Hc = complexify(desk_model.polynomial().with_degree(6))
    W, _ = solve_generating_function(Hc, 6)
    F = moser_type_normalization(W.chart())
    assert F.name == 'moser-type'
    for bracket in diagonal_brackets(F):
        one = PolySeries.constant(1, 2, bracket.max_degree, bracket.mode)
        assert (bracket - one).norm() <= 1e-9


def test_generating_function_rejects_resonance():
    q1, q2, p1, p2 = PolySeries.variables(4, 4)
    # equal saddle and elliptic rates
    H = q1 * p1 * 2.0 + q2 * p2 * 2.0
    with pytest.raises(ResonanceError):
        solve_generating_function(H, 4)
    with pytest.raises(PolyContractError):
        solve_generating_function(complexify(q1 + q1 * p1), 4)


def test_chart_linear_part(desk_model, desk_local):
    w1, I2 = desk_local.linear_coefficients
    assert_allclose(w1, -1.0, atol=1e-10)
    assert_allclose(I2, desk_model.Omega, rtol=1e-10)
    assert desk_local.radius > 0.0
    assert desk_local.params == (desk_model.epsilon, desk_model.nu_hat,
                                 desk_model.mu)


def test_chart_conjugates_energy(desk_local, local_points):
    assert np.max(desk_local.conjugacy_residual(local_points)) <= 1e-10


def test_chart_inverse(desk_local, local_points):
    x = desk_local.to_jordan(local_points)
    assert_allclose(desk_local.to_local(x), local_points, atol=1e-12)


def test_local_flow_matches_field(desk_local, local_points):
    y0 = local_points[0]
    sol = solve_ivp(desk_local.local_field, (0.0, 0.5), y0, rtol=1e-11,
                    atol=1e-14)
    assert_allclose(desk_local.local_flow(y0, 0.5), sol.y[:, -1], atol=1e-10)
    moved = desk_local.local_flow(local_points, 0.7)
    assert_allclose(desk_local.invariants(moved),
                    desk_local.invariants(local_points), atol=1e-14)


def test_uniform_estimates_report(desk_local):
    report = verify_uniform_estimates([desk_local], samples=40)
    assert report['zero_slice'] == 0.0
    assert report['degrees'] == [desk_local.max_degree]
    sup = report['estimates']['sup_difference']
    assert len(sup['constants']) == 1
    assert sup['constants'][0] > 0.0
    assert sup['bounded']


def test_uniform_estimates_over_epsilon(desk_family):
    charts = []
    for epsilon in (0.5, 0.35, 0.25):
        model, _, _ = build_model(desk_family, epsilon, n=5, N0=5, mu=0.0)
        charts.append(build_local_normalization(model, 10))
    report = verify_uniform_estimates(charts, samples=40)
    sup = report['estimates']['sup_difference']
    assert len(sup['constants']) == 3
    assert min(sup['constants']) > 0.0
    assert sup['spread'] < 2.0
    assert sup['bounded']


def test_chart_serializes(desk_local):
    data = desk_local.to_dict
    assert data['max_degree'] == 10
    assert set(desk_local.texts) == {'F', 'F_inverse', 'K'}
    assert PolySeries.from_dict(data['K']).allclose(desk_local.K, atol=1e-15)


def test_chart_needs_one_extra_degree(desk_model):
    Hc = complexify(desk_model.polynomial().with_degree(6))
    W, _ = solve_generating_function(Hc, 6)
    with pytest.raises(PolyContractError):
        normalizing_chart(W, 6)
    F = normalizing_chart(W, 5)
    assert F.max_degree == 5


def test_default_config_chart_is_real():
    config = RunConfig.from_file(SHIPPED_CONFIG)
    epsilon = config['numerics.epsilons'][0]
    model, local, _, _ = build_system(config, epsilon, 0.0)
    assert local.max_degree == config['pipeline.moser_degree']
    assert local.F.mode == MODE_FLOAT
    assert local.F_inverse.mode == MODE_FLOAT
    assert local.K.mode == MODE_FLOAT
    assert local.radius > 0.0
    points = random_ball(np.random.default_rng(11), 20, 0.25 * local.radius)
    assert np.max(local.conjugacy_residual(points)) <= 1e-10
