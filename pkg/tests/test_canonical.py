#!/usr/bin/python
# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.linalg import expm

from SaddleCenterLoops.base.canonical import (CanonicalMap,
                                              HamiltonianVectorField,
                                              flow_matrix,
                                              lie_series,
                                              lie_transform_flow,
                                              quadratic_matrix)
from SaddleCenterLoops.base.collocation import collocation_step, gauss_tableau
from SaddleCenterLoops.base.poly import PolySeries
from SaddleCenterLoops.base.utils import random_series
from SaddleCenterLoops.errors import PolyContractError


@pytest.fixture
def phase():
    return PolySeries.variables(4, 5)


@pytest.fixture
def cubic_generator():
    return random_series(np.random.default_rng(3), low=3, high=3,
                         max_degree=5, scale=0.5)


def test_gauss_tableau():
    tableau = gauss_tableau(4)
    assert tableau.order == 8
    assert_allclose(tableau.b.sum(), 1.0)
    assert_allclose(tableau.c, 1.0 - tableau.c[::-1])
    assert gauss_tableau(4) is tableau


def test_collocation_step_on_linear_growth():
    x, ok, _ = collocation_step(lambda t, y: y, 0.0, np.array([1.0]), 0.1,
                                gauss_tableau(4))
    assert ok
    assert_allclose(x, [math.exp(0.1)], rtol=1e-13)


def test_lie_series_rotates(phase):
    q1, q2, p1, p2 = phase
    S = (q1 * q1 + p1 * p1) / 2
    image = lie_series(q1, S)
    assert_allclose(image.coefficient((1, 0, 0, 0)), math.cos(1.0), atol=1e-14)
    assert_allclose(image.coefficient((0, 0, 1, 0)), math.sin(1.0), atol=1e-14)
    assert_allclose(flow_matrix(S)[0, :], [math.cos(1.0), 0.0, math.sin(1.0),
                                           0.0], atol=1e-14)


def test_series_and_flow_agree(phase):
    q1, q2, p1, p2 = phase
    S = (q1 * q1 + p1 * p1) / 2 + 0.3 * (q2 * q2 + p2 * p2)
    lie_map = CanonicalMap.from_generators([S], 3)
    x = np.array([[0.1, 0.2, -0.1, 0.05], [0.0, -0.3, 0.2, 0.1]])
    assert_allclose(lie_map(x), lie_map(x, 'flow'), atol=1e-10)


def test_vector_field():
    q1, q2, p1, p2 = PolySeries.variables(4, 2)
    field = HamiltonianVectorField((p1 * p1 - q1 * q1) / 2)
    assert_allclose(field(0.0, np.array([1.0, 0.0, 0.0, 0.0])),
                    [0.0, 0.0, 1.0, 0.0])
    assert_allclose(field(0.0, np.array([0.0, 0.0, 2.0, 0.0])),
                    [2.0, 0.0, 0.0, 0.0])


def test_quadratic_matrix_spectrum(phase):
    q1, q2, p1, p2 = phase
    H2 = p1 * p1 / 2 + 1.5 * (q2 * q2 + p2 * p2) / 2
    eigenvalues = np.linalg.eigvals(quadratic_matrix(H2))
    assert_allclose(eigenvalues.real, 0.0, atol=1e-7)
    assert_allclose(np.sort(eigenvalues.imag), [-1.5, 0.0, 0.0, 1.5],
                    atol=1e-7)


def test_quadratic_flow_matches_matrix_exponential(phase):
    q1, q2, p1, p2 = phase
    S = 0.7 * q1 * p1 + 0.4 * (q2 * q2 + p2 * p2) + 0.2 * q1 * q2
    x = np.random.default_rng(7).uniform(-0.3, 0.3, (6, 4))
    image, jacobians = lie_transform_flow(S, x, t=1.5, jacobian=True)
    M = expm(1.5 * quadratic_matrix(S))
    assert_allclose(image, x.dot(M.T), atol=1e-10)
    for jacobian in jacobians:
        assert_allclose(jacobian, M, atol=1e-9)
    assert_allclose(flow_matrix(S, 1.5), M, atol=1e-14)


def test_flow_is_symplectic(cubic_generator):
    lie_map = CanonicalMap.from_generators([cubic_generator], 5)
    points = np.random.default_rng(0).uniform(-0.05, 0.05, (10, 4))
    assert np.max(lie_map.symplecticity_defect(points, 'flow')) <= 1e-10


def test_inverse_of_lie_map(phase, cubic_generator):
    lie_map = CanonicalMap.from_generators([cubic_generator], 5)
    identity = lie_map.compose(lie_map.inverse())
    for component, variable in zip(identity.components, phase):
        assert component.allclose(variable, atol=1e-9)


def test_series_inverse(phase):
    q1, q2, p1, p2 = phase
    bent = CanonicalMap([q1 + q1 * q1, q2, p1 + q2 * p2, p2])
    identity = bent.compose(bent.inverse())
    for component, variable in zip(identity.components, phase):
        assert component.allclose(variable, atol=1e-12)


def test_transform_hamiltonian_paths_agree(phase, cubic_generator):
    q1, q2, p1, p2 = phase
    H = q1 * p1 + q2 * q2 + q1 * q2 * p2
    lie_map = CanonicalMap.from_generators([cubic_generator], 5)
    plain = CanonicalMap(lie_map.components)
    assert lie_map.transform_hamiltonian(H, 4).allclose(
        plain.transform_hamiltonian(H, 4), atol=1e-10)


def test_flow_without_generators(phase):
    with pytest.raises(PolyContractError):
        CanonicalMap(phase)(np.zeros(4), 'flow')
    assert_allclose(lie_transform_flow(PolySeries.zero(4, 3), np.ones(4)),
                    np.ones(4))
