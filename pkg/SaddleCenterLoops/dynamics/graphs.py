#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Graph descriptions of invariant sets on ``sigma_l = {q1 = delta}`` over the
elliptic coordinates (q2, p2): the center-stable manifold, the energy level
of a periodic orbit and the stable manifold of that orbit.
"""
import math

import numpy as np
from scipy.optimize import brentq

from .integrator import DEFAULT_TOL
from .sections import first_return, point_on_sigma_l
from ..base.utils import wrap_angle
from ..errors import (CenterStableError,
                      NoCrossingError,
                      OutOfWindowError,
                      RadiusTooLargeError)


def _sign_change(func, low, high):
    f_low, f_high = func(low), func(high)
    return f_low * f_high <= 0, f_low, f_high


def graph_cs(local, q2, p2, delta):
    """
    ``p1 = g_cs(q2, p2)``: the center-stable manifold ``{eta1 = 0}`` seen on
    ``sigma_l``. The local ``eta1`` of ``(delta, q2, p1, p2)`` increases with
    ``p1``, so the root in ``[-delta, delta]`` is unique.

    Raises:
        RadiusTooLargeError: when there is no root in ``[-delta, delta]``.
    """
    def eta1(p1):
        return float(local.to_local([delta, q2, p1, p2])[2])

    ok, low, high = _sign_change(eta1, -delta, delta)
    if not ok:
        raise RadiusTooLargeError(
            'no center-stable crossing for (q2, p2) = ({:.4g}, {:.4g}): '
            'eta1 in [{:.3e}, {:.3e}]'.format(q2, p2, low, high))
    return brentq(eta1, -delta, delta, xtol=1e-15)


def is_outside_center_stable(local, x):
    """
    ``p1 > g_cs(q2, p2)`` for points of ``sigma_l``, tested through ``eta1``.
    """
    return local.to_local(x)[..., 2] > 0


def periodic_orbit_energy(local, alpha):
    """
    ``K(0, alpha)``: energy of the periodic orbit ``xi1 = eta1 = 0``,
    ``xi2^2 + eta2^2 = alpha``.
    """
    return float(local.energy([0.0, math.sqrt(max(alpha, 0.0)), 0.0, 0.0]))


def energy_offset(model, local, alpha, q2, p2):
    """
    ``h = Omega (q2^2 + p2^2) - K(0, alpha)``.
    """
    return model.Omega * (q2 ** 2 + p2 ** 2) - periodic_orbit_energy(local,
                                                                     alpha)


def graph_energy_level(model, local, alpha, q2, p2, delta):
    """
    ``p1 = p1_H(q2, p2, alpha)``: the point of ``sigma_l`` over (q2, p2) on
    the energy level of the periodic orbit of area parameter ``alpha``.

    Raises:
        OutOfWindowError: ``|h| > delta^2`` or no root in ``[-delta, delta]``.
    """
    energy = periodic_orbit_energy(local, alpha)
    h = model.Omega * (q2 ** 2 + p2 ** 2) - energy
    if abs(h) > delta ** 2:
        raise OutOfWindowError(
            'energy offset {:.3e} outside the window delta^2 = {:.3e}'.format(
                h, delta ** 2), sample=(q2, p2, alpha))

    def level(p1):
        return float(model.energy(np.array([delta, q2, p1, p2]))) - energy

    ok, low, high = _sign_change(level, -delta, delta)
    if not ok:
        raise OutOfWindowError('energy level does not cross sigma_l over '
                               '({:.4g}, {:.4g})'.format(q2, p2),
                               sample=(q2, p2, alpha))
    return brentq(level, -delta, delta, xtol=1e-15)


def _circle(samples):
    theta = 2.0 * math.pi * np.arange(samples) / samples
    return theta, np.cos(theta), np.sin(theta)


def stable_intersection_curve(local, alpha, delta, samples=64, angles=None):
    """
    Image on ``sigma_l`` of the local stable manifold ``{eta1 = 0,
    xi2^2 + eta2^2 = alpha}`` of the periodic orbit, as (q2, p2) points.

    Args:
        angles (numpy.ndarray): angles on the local circle; ``samples``
            equal steps when None.
    """
    r = math.sqrt(alpha)
    if angles is None:
        angles = _circle(samples)[0]
    points = [point_on_sigma_l(local, 0.0, r * math.cos(a), r * math.sin(a),
                               delta)
              for a in np.asarray(angles, dtype=float)]
    return np.array([[x[1], x[3]] for x in points]).reshape(-1, 2)


def energy_level_curve(model, local, alpha, delta, samples=64, spread=0.5):
    """
    The curve ``{p1_H(., alpha) = g_cs}`` in the (q2, p2) plane, found along
    rays; it coincides with :func:`stable_intersection_curve`.
    """
    r0 = math.sqrt(alpha)
    _, c, s = _circle(samples)
    points = []
    for ct, st in zip(c, s):
        def gap(r):
            q2, p2 = r * ct, r * st
            return (graph_energy_level(model, local, alpha, q2, p2, delta)
                    - graph_cs(local, q2, p2, delta))
        r = brentq(gap, (1.0 - spread) * r0, (1.0 + spread) * r0, xtol=1e-15)
        points.append([r * ct, r * st])
    return np.array(points)


class RestrictedReturnMap(object):
    """
    First return map restricted to the energy level of the periodic orbit
    of parameter ``alpha``, written in the (q2, p2) coordinates of
    ``sigma_l``.

    Args:
        model (HamiltonianModel): system.
        local (LocalNormalization): chart.
        alpha (float): area parameter of the periodic orbit.
        delta (float): section offset.
    """

    def __init__(self, model, local, alpha, delta, tol=DEFAULT_TOL, step=None):
        self.model = model
        self.local = local
        self.alpha = float(alpha)
        self.delta = float(delta)
        self.tol = tol
        self.step = step
        self.energy = periodic_orbit_energy(local, alpha)

    def __repr__(self):
        return '<{}(alpha={:.4g}, delta={:.4g}) object at {}>'.format(
            self.__class__.__name__, self.alpha, self.delta, hex(id(self)))

    def lift(self, q2, p2):
        """
        Jordan-chart point of ``sigma_l`` on the energy level over (q2, p2).
        """
        p1 = graph_energy_level(self.model, self.local, self.alpha, q2, p2,
                                self.delta)
        return np.array([self.delta, q2, p1, p2])

    def record(self, q2, p2):
        return first_return(self.model, self.local, self.lift(q2, p2),
                            self.delta, tol=self.tol, step=self.step)

    def __call__(self, points):
        """
        Args:
            points (numpy.ndarray): (q2, p2) points of shape (m, 2) or (2,).

        Returns:
            numpy.ndarray: images with the shape of ``points``.
        """
        points = np.asarray(points, dtype=float)
        flat = np.atleast_2d(points)
        images = np.empty_like(flat)
        for i, (q2, p2) in enumerate(flat):
            image = self.record(q2, p2).image
            images[i] = image.q2, image.p2
        return images.reshape(points.shape)

    def _polar_image(self, angle, action):
        r = math.sqrt(2.0 * action)
        image = self.record(r * math.cos(angle), r * math.sin(angle)).image
        return (math.atan2(image.p2, image.q2),
                0.5 * (image.q2 ** 2 + image.p2 ** 2))

    def jacobian_determinant(self, points, angle_step=1e-3, action_step=1e-6):
        """
        Central-difference Jacobian determinant of the map at (q2, p2)
        points, differenced in ``(theta, r^2 / 2)`` which carry the same
        area form; the twist shear then sits off the diagonal.

        Args:
            points (numpy.ndarray): (q2, p2) points of shape (m, 2).
            angle_step (float): step in the polar angle.
            action_step (float): step in ``r^2 / 2``, relative.

        Returns:
            numpy.ndarray: determinants of shape (m,).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        dets = np.empty(len(points))
        for i, (q2, p2) in enumerate(points):
            angle = math.atan2(p2, q2)
            action = 0.5 * (q2 ** 2 + p2 ** 2)
            h = action_step * action
            a_plus, i_plus = self._polar_image(angle + angle_step, action)
            a_minus, i_minus = self._polar_image(angle - angle_step, action)
            b_plus, j_plus = self._polar_image(angle, action + h)
            b_minus, j_minus = self._polar_image(angle, action - h)
            d_angle = (float(wrap_angle(a_plus - a_minus)) / (2.0 * angle_step),
                       float(wrap_angle(b_plus - b_minus)) / (2.0 * h))
            d_action = ((i_plus - i_minus) / (2.0 * angle_step),
                        (j_plus - j_minus) / (2.0 * h))
            dets[i] = d_angle[0] * d_action[1] - d_angle[1] * d_action[0]
        return dets


def return_times(model, local, p1_values, delta, q2=0.0, p2=0.0, **kwargs):
    """
    First return times from ``(delta, q2, p1, p2)`` for a grid of ``p1``.
    Points inside the center-stable manifold are reported as NaN.
    """
    times = []
    for p1 in p1_values:
        try:
            times.append(first_return(model, local,
                                      np.array([delta, q2, p1, p2]), delta,
                                      **kwargs).T)
        except (CenterStableError, NoCrossingError):
            times.append(float('nan'))
    return np.array(times)
