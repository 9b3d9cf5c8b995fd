#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Fixed-step Gauss collocation for the three-parameter model, on the full
field or on the co-rotating (slow) field where the fast rotation of the
elliptic block is removed analytically.
"""
import math

import numpy as np

from ..base.collocation import collocation_step, gauss_tableau
from ..base.model import PhasePoint
from ..base.utils import fit_loglog_slope
from ..constants import (CHART_JORDAN,
                         MAX_SLOW_STEP,
                         MAX_STEP,
                         MIN_STEP)
from ..errors import StiffnessError
from ..log_config import logger

#: Stages of the phase-space integrator (order 4).
INTEGRATOR_STAGES = 2
#: Default relative energy drift allowed per unit time.
DEFAULT_TOL = 1e-10


def default_step(model):
    """
    Full-field step resolving the fast rotation: ``min(1e-3, eps^2 / 20)``.
    """
    return min(MAX_STEP, model.epsilon ** 2 / 20.0)


def default_slow_step(model):
    return min(MAX_SLOW_STEP, 0.05 / max(abs(model.Omega), 1e-12))


class GaussIntegrator(object):
    """
    Symplectic one-step integrator with step halving on collocation failure
    or energy drift.

    Args:
        field (callable): vector field ``field(t, x)`` on batches (..., 4).
        energy (callable): ``energy(t, x)`` conserved by the exact flow, or
            None to skip the drift check.
        step (float): nominal step.
        tol (float): energy drift allowed per unit time (relative to
            ``max(1, |E|)``).
        stages (int): Gauss stages.
        name (str): label used in log messages.
    """

    def __init__(self, field, energy=None, step=MAX_STEP, tol=DEFAULT_TOL,
                 stages=INTEGRATOR_STAGES, name='flow'):
        if not step > 0:
            raise StiffnessError('integrator step must be positive')
        self.field = field
        self.energy = energy
        self.step = float(step)
        self.tol = float(tol)
        self.tableau = gauss_tableau(stages)
        self.name = name

    def __repr__(self):
        return '<{}("{}" h={:.3g} order={}) object at {}>'.format(
            self.__class__.__name__, self.name, self.step, self.tableau.order,
            hex(id(self)))

    def _drift_ok(self, t0, x0, t1, x1, h):
        if self.energy is None:
            return True
        e0 = np.asarray(self.energy(t0, x0))
        e1 = np.asarray(self.energy(t1, x1))
        scale = max(1.0, float(np.max(np.abs(e0))) if e0.size else 1.0)
        drift = float(np.max(np.abs(e1 - e0))) if e0.size else 0.0
        return drift <= self.tol * abs(h) * scale

    def advance(self, t, x, h):
        """
        One step of size ``h``, split into halves until the collocation
        converges and the energy drift is acceptable.

        Raises:
            StiffnessError: when the substep falls below the minimal step.
        """
        sub = 1
        while True:
            hs = h / sub
            y = x
            ok = True
            for k in range(sub):
                y, converged, _ = collocation_step(self.field, t + k * hs, y,
                                                   hs, self.tableau)
                if not converged or not np.all(np.isfinite(y)):
                    ok = False
                    break
            if ok and self._drift_ok(t, x, t + h, y, h):
                return y
            sub *= 2
            if abs(h) / sub < MIN_STEP:
                raise StiffnessError(
                    '{}: step underflow at t={:.6g} (substep {:.3g})'.format(
                        self.name, t, abs(h) / sub))
            logger.debug('%s: halving step at t=%.6g', self.name, t)

    def run(self, x0, t1, t0=0.0, record=False):
        """
        Integrate from ``t0`` to ``t1`` with equal steps not longer than the
        nominal one.

        Args:
            x0 (numpy.ndarray): start points (..., 4).
            t1 (float): final time.
            t0 (float): start time.
            record (bool): also return the times and states of every step.

        Returns:
            numpy.ndarray or tuple: final points, or (final points, times,
            states).
        """
        x = np.asarray(x0, dtype=float)
        span = float(t1) - float(t0)
        count = max(1, int(math.ceil(abs(span) / self.step - 1e-12)))
        h = span / count
        times = [float(t0)]
        states = [x]
        t = float(t0)
        if span == 0:
            return (x, np.array(times), np.array(states)) if record else x
        for k in range(count):
            x = self.advance(t, x, h)
            t = float(t0) + (k + 1) * h
            if record:
                times.append(t)
                states.append(x)
        if record:
            return x, np.array(times), np.array(states)
        return x


def full_integrator(model, step=None, tol=DEFAULT_TOL):
    return GaussIntegrator(model.vector_field,
                           lambda t, x: model.energy(x),
                           step or default_step(model), tol, name='full')


def slow_integrator(model, step=None, tol=DEFAULT_TOL):
    """
    Integrator of the co-rotating system; the checked energy is the full
    energy of the corotated point.
    """
    return GaussIntegrator(model.slow_field,
                           lambda t, y: model.energy(model.corotate(y, t)),
                           step or default_slow_step(model), tol, name='slow')


def _coordinates(x0):
    if isinstance(x0, PhasePoint):
        return x0.coordinates
    return np.asarray(x0, dtype=float)


def integrate(model, x0, t, tol=DEFAULT_TOL, step=None):
    """
    Flow of the full model by Gauss collocation.

    Args:
        model (HamiltonianModel): system.
        x0 (PhasePoint or numpy.ndarray): start point(s) in the Jordan chart.
        t (float): time.
        tol (float): energy drift allowed per unit time.
        step (float): override of :func:`default_step`.

    Returns:
        PhasePoint or numpy.ndarray: matches the type of ``x0``.
    """
    x = full_integrator(model, step, tol).run(_coordinates(x0), t)
    return PhasePoint(x, CHART_JORDAN) if isinstance(x0, PhasePoint) else x


def rotation_split(model, x0, t, tol=DEFAULT_TOL, step=None):
    """
    Integrate the co-rotating system and return the fast angle separately:
    the flow equals ``corotate(slow, t)``.

    Returns:
        tuple: (clockwise rotation angle, slow point).
    """
    y = slow_integrator(model, step, tol).run(_coordinates(x0), t)
    angle = float(model.rotation_angle(t))
    if isinstance(x0, PhasePoint):
        y = PhasePoint(y, CHART_JORDAN)
    return angle, y


def integrate_split(model, x0, t, tol=DEFAULT_TOL, step=None):
    """
    Flow of the model through :func:`rotation_split`, the default path for
    small epsilon.
    """
    _, y = rotation_split(model, _coordinates(x0), t, tol, step)
    x = model.corotate(y, t)
    return PhasePoint(x, CHART_JORDAN) if isinstance(x0, PhasePoint) else x


def integrate_batch(model, points, t, tol=DEFAULT_TOL, step=None, slow=True):
    """
    Vectorized flow of many initial conditions (all for the same time).

    Returns:
        numpy.ndarray: images of shape (m, 4).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if slow:
        return integrate_split(model, points, t, tol, step)
    return integrate(model, points, t, tol, step)


def trajectory(model, x0, t, tol=DEFAULT_TOL, step=None):
    """
    Sampled orbit with the columns of an orbit dump.

    Returns:
        dict: ``t``, ``q1``, ``p1``, ``q2``, ``p2``, ``H`` and ``I2`` arrays.
    """
    integrator = slow_integrator(model, step, tol)
    _, times, states = integrator.run(_coordinates(x0), t, record=True)
    x = model.corotate(states, times)
    return {'t': times, 'q1': x[:, 0], 'p1': x[:, 2], 'q2': x[:, 1],
            'p2': x[:, 3], 'H': model.energy(x), 'I2': model.I2(x)}


# === I2 DRIFT ===

def I2_drift(model, points, t, tol=DEFAULT_TOL, step=None):
    """
    ``sup |I2(x(t)) - I2(x(0))|`` over a batch of start points.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    images = integrate_batch(model, points, t, tol, step)
    return float(np.max(np.abs(model.I2(images) - model.I2(points))))


def I2_drift_slope(model, points, t, mus=(1e-2, 1e-1, 1.0), tol=DEFAULT_TOL,
                   step=None):
    """
    Log-log slope of the I2 drift against the remainder weight ``mu``;
    the drift is linear in ``mu`` so the slope is close to 1.

    Args:
        model (HamiltonianModel): system carrying the remainder ``R``.
        points (numpy.ndarray): start points of shape (m, 4).
        t (float): flow time.
        mus (tuple): positive remainder weights spanning the fit.

    Returns:
        tuple: (slope, list of drifts per mu).
    """
    drifts = [I2_drift(model.with_parameters(mu=mu), points, t, tol, step)
              for mu in mus]
    if min(drifts) <= 0:
        logger.warning('no I2 drift at mu=%s, the remainder commutes with I2',
                       list(mus))
        return float('nan'), drifts
    return fit_loglog_slope(mus, drifts), drifts
