#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Search of homoclinic connections with several loops: iterate the curve
``C_u`` where the unstable manifold of a periodic orbit meets the section
under the restricted return map until it meets the curve ``C_s`` of the
stable manifold.
"""
import json
import math

import numpy as np

from .curves import (ClosedCurve,
                     curve_area,
                     distance_to_curve,
                     encloses,
                     intersections,
                     refine,
                     write_curve_csv)
from .twist import find_trapping_region
from ..constants import (CHART_JORDAN,
                         DEFAULT_BAND_C1,
                         DEFAULT_BAND_C2,
                         INTERSECTION_TOL,
                         REFINE_TURNING_ANGLE)
from ..dynamics.graphs import (RestrictedReturnMap,
                               graph_cs,
                               graph_energy_level,
                               stable_intersection_curve)
from ..dynamics.integrator import DEFAULT_TOL
from ..dynamics.sections import global_map_ret2, point_on_sigma_0
from ..errors import ConfinementError, DomainError, GeometryError
from ..log_config import logger

#: Sample budget of a hunted curve.
HUNT_MAX_SAMPLES = 1024

#: Hunt outcomes.
STATUS_CONNECTED = 'connected'
STATUS_MAX_LOOPS = 'max_loops'
STATUS_OVERLAP = 'overlap'


class HuntResult(object):
    """
    Outcome of a hunt for one area parameter.

    Args:
        alpha (float): area parameter of the periodic orbit.
        loop_count (int): loops of the connection found, None if none.
        intersections (numpy.ndarray): meeting points of the last curve
            with ``C_s``.
        curves (list[ClosedCurve]): ``C_u`` and its iterates.
        areas (list[float]): enclosed area of every curve.
        residuals (list[float]): residual at every intersection point.
        status (str): ``'connected'``, ``'max_loops'`` or ``'overlap'`` when
            two iterates met before the stable curve was reached.
        params (dict): run parameters copied into the manifest.
        trap (TrappingRegion): region the iterates were confined to.
    """

    def __init__(self, alpha, loop_count, intersections, curves, areas,
                 residuals, status, params=None, trap=None):
        self.alpha = float(alpha)
        self.loop_count = loop_count
        self.intersections = np.asarray(intersections, dtype=float).reshape(-1, 2)
        self.curves = curves
        self.areas = [float(a) for a in areas]
        self.residuals = [float(r) for r in residuals]
        self.status = status
        self.params = dict(params or {})
        self.trap = trap

    def __repr__(self):
        return '<{}(alpha={:.4g}, loop_count={}) object at {}>'.format(
            self.__class__.__name__, self.alpha, self.loop_count, hex(id(self)))

    @property
    def connected(self):
        return self.loop_count is not None

    @property
    def cumulative_area(self):
        return float(sum(self.areas))

    @property
    def to_dict(self):
        data = dict(self.params)
        data.update({'alpha': self.alpha,
                     'loop_count': self.loop_count,
                     'status': self.status,
                     'areas': self.areas,
                     'intersections': self.intersections.tolist(),
                     'residuals': self.residuals,
                     'trap': None if self.trap is None else self.trap.to_dict})
        return data

    @property
    def serial(self):
        return json.dumps(self.to_dict, indent=2, separators=(',', ':'))

    def save(self, file_path, curve_prefix=None):
        """
        Write the JSON manifest, and one CSV per curve when a prefix is
        given.

        Returns:
            list[str]: written paths.
        """
        with open(file_path, 'w') as file_out:
            file_out.write(self.serial)
        paths = [file_path]
        if curve_prefix:
            for i, curve in enumerate(self.curves):
                paths.append(write_curve_csv(
                    '{}_{:02d}.csv'.format(curve_prefix, i + 1), curve))
        return paths


def _iterate(mapping, points, count):
    for _ in range(count):
        points = mapping(points)
    return points


def hunt_curves(unstable, stable, mapping, max_loops, tol=INTERSECTION_TOL,
                params=None, residual=None, confinement=None,
                max_angle=REFINE_TURNING_ANGLE, max_samples=HUNT_MAX_SAMPLES,
                alpha=0.0, chart=CHART_JORDAN):
    """
    Iterate a parametrized closed curve under an area-preserving planar map
    until it meets a fixed closed curve.

    Args:
        unstable (callable): ``s -> points (k, 2)`` for ``s`` in [0, 1);
            the first curve, counted as one loop.
        stable (ClosedCurve): target curve.
        mapping (callable): planar map on ``(k, 2)`` arrays.
        max_loops (int): largest loop count tried.
        tol (float): intersection tolerance.
        params (numpy.ndarray): initial curve parameters.
        residual (callable): residual of an intersection point, the
            distance to ``stable`` when None.
        confinement (callable): predicate on ``(k, 2)`` arrays, False for
            samples that left the trapping region.
        max_angle (float): refinement turning angle.
        max_samples (int): sample budget per curve.
        alpha (float): area label of the result.
        chart (str): chart tag of the curves.

    Returns:
        HuntResult: connection found, ``'max_loops'`` or ``'overlap'``.

    Raises:
        ConfinementError: an iterate leaves the trapping region.
        GeometryError: an iterate self-intersects or is enclosed by
            ``stable`` without meeting it.
    """
    if residual is None:
        def residual(points):
            return distance_to_curve(points, stable)

    curves, areas = [], []
    points = None
    for n in range(max_loops):
        def sampled(s, n=n):
            return _iterate(mapping, unstable(s), n)

        if curves:
            points = mapping(curves[-1].samples)
        curve = refine(sampled, params=params, points=points,
                       max_angle=max_angle, max_samples=max_samples,
                       chart=chart)
        params = curve.params
        if confinement is not None:
            trapped = np.asarray(confinement(curve.samples), dtype=bool)
            if not np.all(trapped):
                bad = curve.samples[np.argmin(trapped)]
                raise ConfinementError(
                    'iterate {} leaves the trapping region at {}'.format(
                        n + 1, np.round(bad, 12).tolist()))
        areas.append(abs(curve_area(curve)))
        curves.append(curve)
        for k, previous in enumerate(curves[:-1]):
            overlap = intersections(previous, curve, tol)
            if len(overlap):
                logger.warning('hunt alpha=%.4g: iterates %d and %d meet',
                               alpha, k + 1, n + 1)
                return HuntResult(alpha, None, overlap, curves, areas, [],
                                  STATUS_OVERLAP,
                                  {'overlapping_iterates': [k + 1, n + 1]})
        meeting = intersections(curve, stable, tol)
        logger.info('hunt alpha=%.4g loop %d: %d samples, area %.6g, '
                    '%d meeting points', alpha, n + 1, len(curve), areas[-1],
                    len(meeting))
        if len(meeting):
            return HuntResult(alpha, n + 1, meeting, curves, areas,
                              np.atleast_1d(residual(meeting)), STATUS_CONNECTED)
        if encloses(stable, curve):
            raise GeometryError(
                'iterate {} lies inside the stable curve without meeting '
                'it'.format(n + 1))
    return HuntResult(alpha, None, np.zeros((0, 2)), curves, areas, [],
                      STATUS_MAX_LOOPS)


# === HAMILTONIAN CURVES ===

def alpha_window(epsilon, delta, count=5, c1=DEFAULT_BAND_C1):
    """
    ``count`` area parameters equally spaced in ``(0, c1 delta^2 eps^2 / 4]``.
    """
    top = c1 * delta ** 2 * epsilon ** 2 / 4.0
    return list(np.linspace(top / count, top, count))


def _unstable_points(model, local, alpha, delta, angles, tol, step):
    r = math.sqrt(alpha)
    points = []
    for a in np.atleast_1d(angles):
        x = point_on_sigma_0(local, 0.0, r * math.cos(a), r * math.sin(a),
                             delta)
        record = global_map_ret2(model, local, x, delta, tol=tol, step=step)
        if not record.diagnostics['in_ball']:
            raise DomainError('unstable sample lands outside the delta ball',
                              sample=record.image.coordinates)
        points.append([record.image.q2, record.image.p2])
    return np.array(points).reshape(-1, 2)


def unstable_intersection_curve(model, local, alpha, delta, samples=64,
                                tol=DEFAULT_TOL, step=None):
    """
    ``C_u``: the circle ``{xi1 = 0, xi2^2 + eta2^2 = alpha}`` of ``sigma_0``
    transported to ``sigma_l`` by the global map, in (q2, p2).

    Raises:
        DomainError: a sample outside the domain of the global map.
    """
    params = np.arange(samples) / float(samples)
    points = _unstable_points(model, local, alpha, delta,
                              2.0 * math.pi * params, tol, step)
    return ClosedCurve(points, CHART_JORDAN, params)


def stable_curve(local, alpha, delta, samples=64):
    """
    ``C_s`` as a :class:`ClosedCurve`.
    """
    params = np.arange(samples) / float(samples)
    points = stable_intersection_curve(local, alpha, delta,
                                       angles=2.0 * math.pi * params)
    return ClosedCurve(points, CHART_JORDAN, params)


def hunt_homoclinic(model, local, alpha, delta, max_loops=4, samples=64,
                    tol=INTERSECTION_TOL, trap=None,
                    integrator_tol=DEFAULT_TOL, step=None,
                    band=(DEFAULT_BAND_C1, DEFAULT_BAND_C2)):
    """
    Hunt a homoclinic connection to the periodic orbit of area parameter
    ``alpha``.

    Args:
        model (HamiltonianModel): system.
        local (LocalNormalization): chart.
        alpha (float): area parameter.
        delta (float): section offset.
        max_loops (int): largest loop count tried.
        samples (int): initial samples of the curves.
        tol (float): intersection tolerance.
        trap (TrappingRegion): region confining the iterates; found on the
            twist band of the restricted map when None.
        band (tuple): ``(c1, c2)`` of the twist band.

    Returns:
        HuntResult: with residuals ``|p1_H - g_cs|`` at the meeting points.

    Raises:
        ConfinementError: no trap on the band, or an iterate leaves it.
    """
    restricted = RestrictedReturnMap(model, local, alpha, delta,
                                     tol=integrator_tol, step=step)
    if trap is None:
        trap = find_trapping_region(restricted, model.epsilon, delta, *band)

    def unstable(s):
        return _unstable_points(model, local, alpha, delta,
                                2.0 * math.pi * np.asarray(s), integrator_tol,
                                step)

    def residual(points):
        return [abs(graph_energy_level(model, local, alpha, q2, p2, delta)
                    - graph_cs(local, q2, p2, delta)) for q2, p2 in points]

    result = hunt_curves(unstable, stable_curve(local, alpha, delta, samples),
                         restricted, max_loops, tol=tol,
                         params=np.arange(samples) / float(samples),
                         residual=residual, confinement=trap.contains,
                         alpha=alpha)
    result.trap = trap
    result.params.update({'epsilon': model.epsilon, 'delta': delta,
                          'mu': model.mu, 'nu_hat': model.nu_hat})
    return result
