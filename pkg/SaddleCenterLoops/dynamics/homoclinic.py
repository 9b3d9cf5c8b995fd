#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
The integrable saddle truncation ``p^2/2 - q^2/2 + c3 q^3`` in the
(underlined) coordinates where the saddle block is split into position and
momentum: its homoclinic loop, phase portrait and transit times.

Relation with the Jordan chart: ``q = (q1 + p1)/sqrt 2`` and
``p = (p1 - q1)/sqrt 2``.
"""
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from ..constants import NVARS
from ..errors import DegenerateHypothesisError, NoCrossingError

_SQRT2 = math.sqrt(2.0)


def _check_c3(c3):
    if not c3 > 0:
        raise DegenerateHypothesisError(
            'the cubic coefficient must be positive, got {}'.format(c3))


def homoclinic_amplitude(c3):
    """
    ``A = 1 / c3``: the loop is ``q = A / (1 + cosh t)`` and reaches ``A/2``.
    """
    _check_c3(c3)
    return 1.0 / c3


def analytic_homoclinic(t, c3):
    """
    Homoclinic solution of ``q'' = q - 3 c3 q^2``.

    Args:
        t (float or numpy.ndarray): times.
        c3 (float): positive cubic coefficient.

    Returns:
        tuple: ``(q, p)`` with ``p = q'``.
    """
    A = homoclinic_amplitude(c3)
    t = np.asarray(t, dtype=float)
    # sech^2 form avoids overflow of cosh for large |t|
    s = 1.0 / np.cosh(0.5 * t)
    q = 0.5 * A * s ** 2
    p = -0.5 * A * s ** 2 * np.tanh(0.5 * t)
    return q, p


def underlined_to_jordan(q, p):
    """
    Returns:
        tuple: ``(q1, p1)`` in the Jordan chart.
    """
    return (q - p) / _SQRT2, (q + p) / _SQRT2


def jordan_to_underlined(q1, p1):
    return (q1 + p1) / _SQRT2, (p1 - q1) / _SQRT2


def homoclinic_point(t, c3):
    """
    Points of the loop in the Jordan chart with the elliptic block at rest.

    Returns:
        numpy.ndarray: shape (..., 4).
    """
    q, p = analytic_homoclinic(t, c3)
    q1, p1 = underlined_to_jordan(q, p)
    x = np.zeros(np.shape(q) + (NVARS,))
    x[..., 0] = q1
    x[..., 2] = p1
    return x


def truncated_energy(q, p, c3):
    return 0.5 * p ** 2 - 0.5 * q ** 2 + c3 * q ** 3


# === PHASE PORTRAIT ===

def portrait_discriminant(alpha, c3):
    """
    Discriminant of the cubic ``q^2 - 2 c3 q^3 + alpha``; positive exactly
    when the level ``p^2 = q^2 - 2 c3 q^3 + alpha`` has a closed component.
    """
    return -4.0 * alpha * (1.0 + 27.0 * c3 ** 2 * alpha)


def classify_level(alpha, c3, tol=1e-14):
    """
    Returns:
        str: ``'center'``, ``'periodic'``, ``'homoclinic'`` or ``'open'``.
    """
    _check_c3(c3)
    center = -1.0 / (27.0 * c3 ** 2)
    if abs(alpha) <= tol:
        return 'homoclinic'
    if abs(alpha - center) <= tol:
        return 'center'
    if portrait_discriminant(alpha, c3) > 0:
        return 'periodic'
    return 'open'


def level_set(alpha, c3, q):
    """
    Upper and lower branches ``p = +-sqrt(q^2 - 2 c3 q^3 + alpha)`` of the
    level with energy ``alpha / 2``, NaN where the level does not exist.
    """
    q = np.asarray(q, dtype=float)
    radicand = q ** 2 - 2.0 * c3 * q ** 3 + alpha
    root = np.sqrt(np.where(radicand >= 0, radicand, np.nan))
    return root, -root


def portrait(alphas, c3, points=401, q_range=None):
    """
    Level sets of the degree-3 portrait for a list of levels.

    Returns:
        list[dict]: one entry per level with ``alpha``, ``kind``, ``q``,
        ``p_upper`` and ``p_lower``.
    """
    _check_c3(c3)
    low, high = q_range or (-0.5 / c3, 0.75 / c3)
    q = np.linspace(low, high, points)
    curves = []
    for alpha in alphas:
        upper, lower = level_set(alpha, c3, q)
        curves.append({'alpha': float(alpha),
                       'kind': classify_level(alpha, c3),
                       'discriminant': portrait_discriminant(alpha, c3),
                       'q': q, 'p_upper': upper, 'p_lower': lower})
    return curves


# === TRANSIT TIMES ===

def homoclinic_transit_time(delta, c3):
    """
    Time the loop spends between leaving ``{p1 = delta}`` and reaching
    ``{q1 = delta}``; by the symmetry ``q1(t) = p1(-t)`` it is twice the
    arrival time.
    """
    A = homoclinic_amplitude(c3)
    if not 0 < delta < A / (2.0 * _SQRT2):
        raise NoCrossingError('the loop does not reach q1 = {}'.format(delta))

    def offset(t):
        q, p = analytic_homoclinic(t, c3)
        return (q - p) / _SQRT2 - delta

    t_in = brentq(offset, 0.0, 50.0, xtol=1e-15)
    return 2.0 * t_in


def _planar_field(c3):
    def field(t, z):
        q1, p1 = z
        s = 3.0 * c3 / (2.0 * _SQRT2) * (q1 + p1) ** 2
        return [-q1 + s, p1 - s]
    return field


def transit_time(q1, delta, c3, t_max=100.0):
    """
    Time from ``(q1, delta)`` on ``{p1 = delta}`` to the next downward
    crossing of ``{q1 = delta}`` for the planar truncation
    ``-q1 p1 + c3/(2 sqrt 2) (q1 + p1)^3``.
    """
    def event(t, z):
        return z[0] - delta
    event.direction = -1
    event.terminal = True
    sol = solve_ivp(_planar_field(c3), (0.0, t_max), [q1, delta],
                    method='DOP853', rtol=1e-12, atol=1e-14, events=event)
    times = [t for t in sol.t_events[0] if t > 1e-9]
    if not times:
        raise NoCrossingError('no return to q1 = {} from q1 = {}'.format(
            delta, q1))
    return float(times[0])


def transit_time_bounds(delta, c3, samples=9):
    """
    Empirical ``[T-(delta), T+(delta)]`` over starting points
    ``0 <= q1 <= delta / 16`` on ``{p1 = delta}``.
    """
    times = [transit_time(q1, delta, c3)
             for q1 in np.linspace(0.0, delta / 16.0, samples)]
    return min(times), max(times)
