#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Sampled closed curves of a 2-plane: signed area, adaptive refinement,
segment intersections, winding numbers and distances.
"""
import csv
import math

import numpy as np

from ..constants import (CHART_JORDAN,
                         INTERSECTION_TOL,
                         REFINE_TURNING_ANGLE)
from ..errors import GeometryError

#: Upper bound on the samples of an adaptively refined curve.
MAX_CURVE_SAMPLES = 4096


class ClosedCurve(object):
    """
    Closed polygon given by ordered samples; the last sample connects back
    to the first.

    Args:
        samples (numpy.ndarray): points of shape (m, 2), m >= 3.
        chart (str): chart tag of the plane coordinates.
        params (numpy.ndarray): optional curve parameters in [0, 1) of the
            samples, used by :func:`refine`.
    """

    def __init__(self, samples, chart=CHART_JORDAN, params=None):
        samples = np.array(samples, dtype=float)
        if samples.ndim != 2 or samples.shape[1] != 2:
            raise GeometryError('curve samples must have shape (m, 2), '
                                'got {}'.format(samples.shape))
        if len(samples) > 3 and np.allclose(samples[0], samples[-1],
                                            rtol=0.0, atol=1e-15):
            samples = samples[:-1]
            params = None if params is None else np.asarray(params)[:-1]
        if len(samples) < 3:
            raise GeometryError('a closed curve needs 3 samples at least')
        self._samples = samples
        self._chart = chart
        self._params = None if params is None else np.asarray(params, float)

    def __repr__(self):
        return '<{}(samples={}, chart={}) object at {}>'.format(
            self.__class__.__name__, len(self), self._chart, hex(id(self)))

    def __len__(self):
        return len(self._samples)

    @property
    def samples(self):
        return self._samples

    @property
    def chart(self):
        return self._chart

    @property
    def params(self):
        return self._params

    @property
    def closed_samples(self):
        """
        Samples with the first point repeated at the end.
        """
        return np.vstack([self._samples, self._samples[:1]])

    def segments(self):
        """
        Returns:
            tuple: (starts, ends) arrays of shape (m, 2).
        """
        return self._samples, np.roll(self._samples, -1, axis=0)

    @property
    def perimeter(self):
        starts, ends = self.segments()
        return float(np.sum(np.linalg.norm(ends - starts, axis=1)))

    @property
    def signed_area(self):
        """
        Shoelace area, positive for counterclockwise curves.
        """
        x, y = self._samples[:, 0], self._samples[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def centroid(self):
        return self._samples.mean(axis=0)

    def map(self, func, chart=None):
        """
        Image curve under a point map acting on (m, 2) arrays.
        """
        return ClosedCurve(func(self._samples), chart or self._chart,
                           self._params)

    def to_rows(self):
        return [(i, float(x), float(y), self._chart)
                for i, (x, y) in enumerate(self._samples)]

    @property
    def to_dict(self):
        return {'chart': self._chart,
                'samples': self._samples.tolist()}


def circle(center, radius, samples=64, chart=CHART_JORDAN):
    """
    Counterclockwise circle sampled at equal angles.
    """
    params = np.arange(samples) / float(samples)
    theta = 2.0 * math.pi * params
    points = np.column_stack([center[0] + radius * np.cos(theta),
                              center[1] + radius * np.sin(theta)])
    return ClosedCurve(points, chart, params)


# === PREDICATES ===

def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def orientation(a, b, c):
    """
    Twice the signed area of the triangle (a, b, c); broadcasts.
    """
    return _cross(b - a, c - a)


def segment_crossings(p0, p1, q0, q1, skip_adjacent=False):
    """
    Proper crossings between every segment ``p0[i] p1[i]`` and every
    segment ``q0[j] q1[j]``.

    Returns:
        tuple: indices ``(i, j)`` and crossing points of shape (k, 2).
    """
    P0, P1 = p0[:, None, :], p1[:, None, :]
    Q0, Q1 = q0[None, :, :], q1[None, :, :]
    d1 = orientation(Q0, Q1, P0)
    d2 = orientation(Q0, Q1, P1)
    d3 = orientation(P0, P1, Q0)
    d4 = orientation(P0, P1, Q1)
    hit = (d1 * d2 < 0) & (d3 * d4 < 0)
    if skip_adjacent:
        m = len(p0)
        i, j = np.indices(hit.shape)
        near = (np.abs(i - j) <= 1) | (np.abs(i - j) == m - 1)
        hit &= ~near
    i, j = np.nonzero(hit)
    t = d1[i, j] / (d1[i, j] - d2[i, j])
    points = p0[i] + t[:, None] * (p1[i] - p0[i])
    return i, j, points


def point_segment_distances(points, starts, ends):
    """
    Distances of shape (k, n) from k points to n segments.
    """
    points = np.atleast_2d(points)
    d = ends - starts
    length2 = np.sum(d * d, axis=1)
    rel = points[:, None, :] - starts[None, :, :]
    with np.errstate(invalid='ignore', divide='ignore'):
        t = np.where(length2 > 0, np.sum(rel * d[None], axis=2) / length2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    nearest = starts[None] + t[..., None] * d[None]
    return np.linalg.norm(points[:, None, :] - nearest, axis=2)


def distance_to_curve(points, curve):
    """
    Distance from each point to the polygon of a curve.
    """
    starts, ends = curve.segments()
    return point_segment_distances(points, starts, ends).min(axis=1)


def self_intersections(curve):
    starts, ends = curve.segments()
    i, j, points = segment_crossings(starts, ends, starts, ends,
                                     skip_adjacent=True)
    # each crossing is found from both segments
    return points[i < j]


def is_simple(curve):
    return len(self_intersections(curve)) == 0


def curve_area(curve, check=True):
    """
    Signed symplectic area enclosed by a closed curve (polygonal
    quadrature).

    Raises:
        GeometryError: when the polygon intersects itself.
    """
    if check:
        crossings = self_intersections(curve)
        if len(crossings):
            raise GeometryError('curve intersects itself at {}'.format(
                np.round(crossings[0], 12).tolist()))
    return curve.signed_area


def spectral_area(curve):
    """
    Area ``pi sum k |c_k|^2`` from the Fourier coefficients of
    ``x + i y``; spectrally accurate for curves sampled at equal parameter
    steps.
    """
    z = curve.samples[:, 0] + 1j * curve.samples[:, 1]
    m = len(z)
    c = np.fft.fft(z) / m
    k = np.fft.fftfreq(m, 1.0 / m)
    return float(math.pi * np.sum(k * np.abs(c) ** 2))


def intersections(a, b, tol=INTERSECTION_TOL):
    """
    Points where two curves meet: proper segment crossings plus samples of
    one curve closer than ``tol`` to the other.

    Returns:
        numpy.ndarray: shape (k, 2), empty when the curves are disjoint.
    """
    a0, a1 = a.segments()
    b0, b1 = b.segments()
    _, _, points = segment_crossings(a0, a1, b0, b1)
    touching = [a.samples[distance_to_curve(a.samples, b) <= tol],
                b.samples[distance_to_curve(b.samples, a) <= tol]]
    found = np.vstack([points.reshape(-1, 2)] + touching)
    if not len(found):
        return found
    unique = [found[0]]
    for p in found[1:]:
        if np.min(np.linalg.norm(np.array(unique) - p, axis=1)) > tol:
            unique.append(p)
    return np.array(unique)


def winding_number(curve, point):
    """
    Number of counterclockwise turns of a curve around a point.
    """
    rel = curve.closed_samples - np.asarray(point, dtype=float)
    angles = np.arctan2(rel[:, 1], rel[:, 0])
    turns = np.diff(angles)
    turns = (turns + math.pi) % (2.0 * math.pi) - math.pi
    return int(round(float(np.sum(turns)) / (2.0 * math.pi)))


def encloses(outer, curve):
    """
    True when a sample of ``curve`` lies inside ``outer``. For disjoint
    simple curves this decides containment.
    """
    return winding_number(outer, curve.samples[0]) != 0


def hausdorff_distance(a, b):
    """
    Hausdorff distance between the polygons of two curves, measured from
    the samples of each to the segments of the other.
    """
    return float(max(distance_to_curve(a.samples, b).max(),
                     distance_to_curve(b.samples, a).max()))


# === REFINEMENT ===

def turning_angles(points):
    """
    Angle between consecutive segments at each sample of a closed polygon.
    """
    incoming = points - np.roll(points, 1, axis=0)
    outgoing = np.roll(points, -1, axis=0) - points
    return np.abs(np.arctan2(_cross(incoming, outgoing),
                             np.sum(incoming * outgoing, axis=1)))


def refine(func, params=None, samples=16, points=None,
           max_angle=REFINE_TURNING_ANGLE, max_samples=MAX_CURVE_SAMPLES,
           chart=CHART_JORDAN):
    """
    Sample the closed curve ``s -> func(s)``, ``s`` in [0, 1), inserting
    parameter midpoints around every sample where the turning angle exceeds
    ``max_angle``.

    Args:
        func (callable): maps an array of parameters to points (k, 2).
        params (numpy.ndarray): initial parameters (equally spaced if None).
        samples (int): initial sample count when ``params`` is None.
        points (numpy.ndarray): values of ``func`` at ``params`` if known.
        max_angle (float): turning angle threshold in radians.
        max_samples (int): sample budget.
        chart (str): chart tag of the result.

    Returns:
        ClosedCurve: curve carrying its parameters.
    """
    if params is None:
        params = np.arange(samples) / float(samples)
    params = np.mod(np.asarray(params, dtype=float), 1.0)
    if points is None:
        points = func(params)
    points = np.asarray(points, dtype=float)
    order = np.argsort(params)
    params, points = params[order], points[order]
    while len(params) < max_samples:
        bad = np.nonzero(turning_angles(points) > max_angle)[0]
        if not len(bad):
            break
        nxt = np.append(params[1:], params[0] + 1.0)
        prv = np.insert(params[:-1], 0, params[-1] - 1.0)
        new = np.unique(np.mod(np.concatenate(
            [0.5 * (prv[bad] + params[bad]), 0.5 * (params[bad] + nxt[bad])]),
            1.0))
        new = new[:max_samples - len(params)]
        params = np.concatenate([params, new])
        points = np.vstack([points, np.asarray(func(new), dtype=float)])
        order = np.argsort(params)
        params, points = params[order], points[order]
    return ClosedCurve(points, chart, params)


def write_curve_csv(file_path, curve):
    """
    Dump ``index, q2, p2, chart`` rows.
    """
    with open(file_path, 'w') as csv_file:
        writer = csv.writer(csv_file, lineterminator='\n')
        writer.writerow(['index', 'q2', 'p2', 'chart'])
        for row in curve.to_rows():
            writer.writerow(row)
    return file_path
