#!/usr/bin/python
# -*- coding: utf-8 -*-
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from SaddleCenterLoops.annulus.curves import circle
from SaddleCenterLoops.annulus.hunt import (STATUS_CONNECTED,
                                           STATUS_OVERLAP,
                                           alpha_window,
                                           hunt_curves,
                                           hunt_homoclinic,
                                           stable_curve,
                                           unstable_intersection_curve)
from SaddleCenterLoops.annulus.twist import TRAP_BAND, TRAP_CIRCLE
from SaddleCenterLoops.constants import CHART_JORDAN
from SaddleCenterLoops.errors import ConfinementError, GeometryError

RADIUS = 0.1


def _rotation(angle):
    c, s = math.cos(angle), math.sin(angle)

    def mapping(points):
        points = np.atleast_2d(points)
        return np.column_stack([c * points[:, 0] - s * points[:, 1],
                                s * points[:, 0] + c * points[:, 1]])
    return mapping


def _unstable(s):
    theta = 2.0 * math.pi * np.asarray(s)
    return np.column_stack([1.0 + RADIUS * np.cos(theta),
                            RADIUS * np.sin(theta)])


@pytest.fixture
def stable():
    # half a turn away from the first curve, shifted to cross it
    return circle((-1.0, 0.05), RADIUS, samples=64)


def test_alpha_window():
    alphas = alpha_window(0.35, 0.02, count=5)
    top = 0.02 ** 2 * 0.35 ** 2 / 128.0
    assert len(alphas) == 5
    assert_allclose(alphas[-1], top)
    assert_allclose(alphas[0], top / 5.0)
    assert all(a > 0 for a in alphas)


def test_hunt_counts_loops(stable):
    result = hunt_curves(_unstable, stable, _rotation(math.pi / 4), 8,
                         params=np.arange(16) / 16.0, alpha=1e-7)
    assert result.connected
    assert result.loop_count == 5
    assert result.status == 'connected'
    assert len(result.curves) == 5
    assert len(result.intersections) >= 2
    assert_allclose(result.areas, math.pi * RADIUS ** 2, rtol=1e-2)
    assert_allclose(result.residuals, 0.0, atol=1e-2)


def test_hunt_gives_up(stable):
    result = hunt_curves(_unstable, stable, _rotation(math.pi / 4), 3)
    assert not result.connected
    assert result.loop_count is None
    assert result.status == 'max_loops'
    assert len(result.curves) == 3
    assert result.cumulative_area == pytest.approx(
        sum(result.areas))


def test_hunt_confinement(stable):
    def confinement(points):
        return np.hypot(points[:, 0], points[:, 1]) <= 1.05

    with pytest.raises(ConfinementError):
        hunt_curves(_unstable, stable, _rotation(math.pi / 4), 8,
                    confinement=confinement)


def test_hunt_stops_when_iterates_meet(stable):
    def shift(points):
        return np.atleast_2d(points) + np.array([0.05, 0.0])

    result = hunt_curves(_unstable, stable, shift, 4)
    assert result.status == STATUS_OVERLAP
    assert not result.connected
    assert result.params['overlapping_iterates'] == [1, 2]
    assert len(result.curves) == 2
    assert len(result.intersections) >= 2


def test_hunt_rejects_nested_curves():
    outer = circle((1.0, 0.0), 3.0 * RADIUS, samples=64)
    with pytest.raises(GeometryError):
        hunt_curves(_unstable, outer, _rotation(0.0), 4)


def test_hunt_result_files(stable, tmp_path):
    result = hunt_curves(_unstable, stable, _rotation(math.pi / 4), 8,
                         params=np.arange(16) / 16.0)
    result.params.update({'epsilon': 0.35})
    paths = result.save(str(tmp_path / 'hunt.json'),
                        str(tmp_path / 'curve'))
    assert len(paths) == 1 + result.loop_count
    with open(paths[0]) as json_file:
        data = json.load(json_file)
    assert data['loop_count'] == 5
    assert data['epsilon'] == 0.35
    assert len(data['intersections']) == len(result.intersections)


def test_hamiltonian_curves(desk_model, desk_local, delta):
    alpha = 2e-7
    unstable = unstable_intersection_curve(desk_model, desk_local, alpha,
                                           delta, samples=8)
    assert unstable.samples.shape == (8, 2)
    assert unstable.chart == CHART_JORDAN
    assert_allclose(unstable.params, np.arange(8) / 8.0)
    radii = np.sum(unstable.samples ** 2, axis=1)
    assert_allclose(radii, alpha, rtol=0.1)

    stable = stable_curve(desk_local, alpha, delta, samples=8)
    assert stable.samples.shape == (8, 2)
    assert_allclose(np.sum(stable.samples ** 2, axis=1), alpha, rtol=0.1)


def test_hunt_homoclinic_window(desk_model, desk_local, delta):
    for alpha in alpha_window(desk_model.epsilon, delta):
        result = hunt_homoclinic(desk_model, desk_local, alpha, delta,
                                 max_loops=2, samples=16)
        assert result.status == STATUS_CONNECTED
        assert result.loop_count == 1
        assert max(result.residuals) <= 1e-6
        assert result.trap.kind in (TRAP_CIRCLE, TRAP_BAND)
        data = result.to_dict
        assert data['trap']['kind'] == result.trap.kind
        assert data['epsilon'] == desk_model.epsilon
