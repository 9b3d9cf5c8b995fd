#!/usr/bin/python
# -*- coding: utf-8 -*-
import csv
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from SaddleCenterLoops.annulus.curves import (ClosedCurve,
                                              circle,
                                              curve_area,
                                              encloses,
                                              hausdorff_distance,
                                              intersections,
                                              is_simple,
                                              refine,
                                              spectral_area,
                                              turning_angles,
                                              winding_number,
                                              write_curve_csv)
from SaddleCenterLoops.errors import GeometryError


def _figure_eight(samples=64):
    t = 2.0 * math.pi * (np.arange(samples) + 0.5) / samples
    return ClosedCurve(np.column_stack([np.sin(t), np.sin(t) * np.cos(t)]))


def test_curve_construction():
    with pytest.raises(GeometryError):
        ClosedCurve([[0, 0], [1, 0]])
    with pytest.raises(GeometryError):
        ClosedCurve(np.zeros((5, 3)))
    closed = ClosedCurve([[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]])
    assert len(closed) == 4
    assert closed.perimeter == pytest.approx(4.0)


def test_areas():
    disc = circle((0.5, -0.2), 0.1, samples=64)
    m = len(disc)
    polygon = 0.5 * m * 0.01 * math.sin(2.0 * math.pi / m)
    assert_allclose(curve_area(disc), polygon, rtol=1e-12)
    assert_allclose(spectral_area(disc), math.pi * 0.01, rtol=1e-12)
    clockwise = ClosedCurve(disc.samples[::-1])
    assert curve_area(clockwise) < 0


def test_self_intersection_is_rejected():
    eight = _figure_eight()
    assert not is_simple(eight)
    with pytest.raises(GeometryError):
        curve_area(eight)
    assert curve_area(eight, check=False) == pytest.approx(0.0, abs=1e-12)


def test_intersections_of_circles():
    a = circle((0.0, 0.0), 1.0, samples=128)
    b = circle((1.0, 0.0), 1.0, samples=128)
    points = intersections(a, b)
    assert len(points) == 2
    expected = np.array([[0.5, math.sqrt(3) / 2], [0.5, -math.sqrt(3) / 2]])
    points = points[np.argsort(-points[:, 1])]
    assert_allclose(points, expected, atol=1e-3)
    far = circle((5.0, 0.0), 1.0)
    assert intersections(a, far).shape == (0, 2)


def test_winding_and_enclosure():
    outer = circle((0.0, 0.0), 1.0)
    inner = circle((0.1, 0.0), 0.2)
    assert winding_number(outer, (0.0, 0.0)) == 1
    assert winding_number(outer, (2.0, 0.0)) == 0
    assert winding_number(ClosedCurve(outer.samples[::-1]), (0.0, 0.0)) == -1
    assert encloses(outer, inner)
    assert not encloses(inner, outer)


def test_hausdorff_distance():
    a = circle((0.0, 0.0), 1.0, samples=256)
    b = circle((0.0, 0.0), 1.1, samples=256)
    assert_allclose(hausdorff_distance(a, b), 0.1, rtol=1e-3)


def test_refine_meets_turning_angle():
    def func(s):
        theta = 2.0 * math.pi * np.asarray(s)
        return np.column_stack([np.cos(theta), np.sin(theta)])

    curve = refine(func, samples=4, max_angle=0.1)
    assert np.max(turning_angles(curve.samples)) <= 0.1
    assert np.all(np.diff(curve.params) > 0)
    assert_allclose(curve.samples, func(curve.params))
    capped = refine(func, samples=4, max_angle=1e-6, max_samples=50)
    assert len(capped) == 50


def test_write_curve_csv(tmp_path):
    curve = circle((0.0, 0.0), 1.0, samples=8)
    path = write_curve_csv(str(tmp_path / 'curve.csv'), curve)
    with open(path) as csv_file:
        rows = list(csv.reader(csv_file))
    assert rows[0] == ['index', 'q2', 'p2', 'chart']
    assert len(rows) == 9
    assert float(rows[1][1]) == pytest.approx(1.0)
