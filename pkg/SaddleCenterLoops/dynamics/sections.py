#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Poincare sections ``sigma_l = {q1 = delta}`` and
``sigma_0 = F({eta1 = delta})`` and the maps between them: the local map
through the integrable chart, the global map along the homoclinic loop and
their composition, the first return map.
"""
import math

import numpy as np
from scipy.optimize import brentq

from .integrator import DEFAULT_TOL, slow_integrator
from ..base.collocation import collocation_step
from ..base.model import PhasePoint, ReturnRecord, SectionSpec
from ..base.utils import finite_difference_jacobian
from ..constants import (CHART_JORDAN,
                         CROSSING_XTOL,
                         MAX_RETURN_TIME,
                         SECTION_SIGMA_0,
                         SECTION_SIGMA_L,
                         SECTION_TOL)
from ..errors import (CenterStableError,
                      DomainError,
                      NoCrossingError,
                      TangencyError)
from ..log_config import logger

#: Relative slack accepted on the section domain edges.
_EDGE_SLACK = 1e-9
#: A crossing derivative below this is treated as a tangency.
_TANGENCY_TOL = 1e-12


def _point(x):
    if isinstance(x, PhasePoint):
        return x.coordinates.astype(float)
    return np.asarray(x, dtype=float).reshape(-1)


def sigma_l(delta):
    return SectionSpec(SECTION_SIGMA_L, delta, CHART_JORDAN)


def sigma_0(delta):
    return SectionSpec(SECTION_SIGMA_0, delta, CHART_JORDAN)


def _section_residual(section, y, t, model, local):
    x = model.corotate(y, t)
    return float(section.residual(x, local))


def return_time(model, x0, section, bracket=None, local=None,
                tol=DEFAULT_TOL, step=None, t_max=MAX_RETURN_TIME):
    """
    First time the orbit of ``x0`` crosses the section downwards.

    The crossing is searched on the co-rotating system (the fast rotation
    leaves q1 unchanged), bracketed between two integrator steps, refined by
    Brent's method on partial collocation steps and polished by Newton with
    the time derivative ``dq1/dt = dH/dp1``.

    Args:
        model (HamiltonianModel): system.
        x0 (PhasePoint or numpy.ndarray): start point, Jordan chart.
        section (SectionSpec): target section.
        bracket (tuple): optional ``(t_low, t_high)`` search window.
        local (LocalNormalization): chart, needed for ``sigma_0``.
        tol (float): integrator energy tolerance.
        step (float): slow step override.
        t_max (float): search horizon when no bracket is given.

    Returns:
        tuple: (T, slow point at T).

    Raises:
        NoCrossingError: no sign change in the window.
        TangencyError: the crossing derivative vanishes.
    """
    x0 = _point(x0)
    integrator = slow_integrator(model, step, tol)
    t_low, t_high = bracket if bracket is not None else (0.0, t_max)
    y = x0
    t = 0.0
    if t_low > 0:
        y = integrator.run(x0, t_low)
        t = float(t_low)
    r = _section_residual(section, y, t, model, local)
    armed = r > 0
    while t < t_high:
        h = min(integrator.step, t_high - t)
        y_new = integrator.advance(t, y, h)
        r_new = _section_residual(section, y_new, t + h, model, local)
        if armed and r_new <= 0:
            return _refine_crossing(model, section, integrator, t, y, h,
                                    local)
        if r_new > 0:
            armed = True
        t, y, r = t + h, y_new, r_new
    raise NoCrossingError('no crossing of {} before t={:.6g}'.format(
        section.kind, t_high))


def _refine_crossing(model, section, integrator, t, y, h, local):
    def partial(tau):
        if tau == 0:
            return y
        return collocation_step(integrator.field, t, y, tau,
                                integrator.tableau)[0]

    def residual(tau):
        return _section_residual(section, partial(tau), t + tau, model, local)

    tau = brentq(residual, 0.0, h, xtol=CROSSING_XTOL)
    for _ in range(3):
        y_star = partial(tau)
        r = residual(tau)
        if abs(r) <= SECTION_TOL:
            break
        rate = _crossing_rate(model, section, y_star, t + tau, local)
        if abs(rate) < _TANGENCY_TOL:
            raise TangencyError('tangential crossing of {} at t={:.6g}'.format(
                section.kind, t + tau))
        tau = tau - r / rate
    y_star = partial(tau)
    rate = _crossing_rate(model, section, y_star, t + tau, local)
    if abs(rate) < _TANGENCY_TOL:
        raise TangencyError('tangential crossing of {} at t={:.6g}'.format(
            section.kind, t + tau))
    return t + tau, y_star


def _crossing_rate(model, section, y, t, local):
    x = model.corotate(y, t)
    field = model.vector_field(t, x)
    if section.kind == SECTION_SIGMA_L:
        return float(field[0])
    grad = finite_difference_jacobian(lambda z: section.residual(z, local), x)
    return float(np.dot(grad, field))


def section_coordinates(x):
    """
    ``(p1, q2, p2)`` of points of ``sigma_l``.
    """
    x = np.asarray(x, dtype=float)
    return np.stack([x[..., 2], x[..., 1], x[..., 3]], axis=-1)


def from_section_coordinates(z, delta):
    z = np.asarray(z, dtype=float)
    return np.stack([np.full(z.shape[:-1], delta), z[..., 1], z[..., 0],
                     z[..., 2]], axis=-1)


# === SECTION MAPS ===

def _check_local_chart(local, x, y):
    roundtrip = float(np.max(np.abs(local.to_jordan(y) - x)))
    return roundtrip


def local_map(model, local, x0, delta):
    """
    Transport a point of ``sigma_l`` to ``sigma_0`` along the integrable
    flow of the local chart: ``xi1 -> xi1 eta1 / delta``, ``eta1 -> delta``,
    the elliptic pair turned by the chart rate times the transit time
    ``T = ln(delta / eta1) / |a|``.

    Args:
        model (HamiltonianModel): system (for the record only).
        local (LocalNormalization): chart.
        x0 (PhasePoint or numpy.ndarray): point of ``sigma_l``.
        delta (float): section offset.

    Returns:
        ReturnRecord: record with the image on ``sigma_0``.

    Raises:
        CenterStableError: ``eta1 <= 0``; the orbit never leaves.
        DomainError: ``eta1 > delta / 24`` or ``xi2^2 + eta2^2 > delta^2``.
    """
    x = _point(x0)
    if abs(x[0] - delta) > 1e-8 * max(1.0, delta):
        raise DomainError('point is not on sigma_l (q1 = {:.8g})'.format(x[0]),
                          sample=x)
    y = local.to_local(x)
    eta1 = y[2]
    if eta1 <= 0:
        raise CenterStableError(
            'eta1 = {:.3e}: the point is on or beyond the center-stable '
            'manifold'.format(eta1), sample=x)
    if eta1 > delta / 24.0 * (1.0 + _EDGE_SLACK):
        raise DomainError('eta1 = {:.6g} exceeds delta/24 = {:.6g}'.format(
            eta1, delta / 24.0), sample=x)
    if math.hypot(y[1], y[3]) > delta * (1.0 + _EDGE_SLACK):
        raise DomainError('elliptic radius exceeds delta', sample=x)
    a, b = local.rates(y)
    T = math.log(delta / eta1) / (-float(a))
    image = np.asarray(local.local_flow(y, T), dtype=float)
    image[0] = y[0] * eta1 / delta
    image[2] = delta
    x_image = local.to_jordan(image)
    diagnostics = {'eta1': float(eta1), 'xi1': float(y[0]),
                   'w1': float(y[0] * y[2]),
                   'I2_local': float(y[1] ** 2 + y[3] ** 2),
                   'chart_roundtrip': _check_local_chart(local, x, y),
                   'rate_a': float(a), 'rate_b': float(b)}
    return ReturnRecord(PhasePoint(x, CHART_JORDAN),
                        PhasePoint(x_image, CHART_JORDAN), T,
                        float(b) * T, diagnostics)


def check_sigma0_domain(local, x, delta):
    """
    Raises:
        DomainError: unless ``0 <= xi1 <= delta/16`` and
            ``sqrt(xi2^2 + eta2^2) <= delta/2`` on ``{eta1 = delta}``.
    """
    y = local.to_local(_point(x))
    if abs(y[2] - delta) > 1e-8 * max(1.0, delta):
        raise DomainError('point is not on sigma_0 (eta1 = {:.8g})'.format(
            y[2]), sample=x)
    if y[0] < -_EDGE_SLACK * delta or y[0] > delta / 16.0 * (1 + _EDGE_SLACK):
        raise DomainError('xi1 = {:.6g} outside [0, delta/16]'.format(y[0]),
                          sample=x)
    if math.hypot(y[1], y[3]) > 0.5 * delta * (1 + _EDGE_SLACK):
        raise DomainError('elliptic radius exceeds delta/2', sample=x)
    return y


def global_map_ret2(model, local, x0, delta, check_domain=True,
                    tol=DEFAULT_TOL, step=None):
    """
    Follow the flow from ``sigma_0`` around the loop to ``sigma_l``.

    Returns:
        ReturnRecord: record with ``delta_I2`` and the drift bound
        ``mu nu_hat eps^N0 M T`` in its diagnostics.
    """
    x = _point(x0)
    if check_domain:
        check_sigma0_domain(local, x, delta)
    T, y = return_time(model, x, sigma_l(delta), tol=tol, step=step)
    image = model.corotate(y, T)
    drift = abs(float(model.I2(image) - model.I2(x)))
    bound = model.remainder_weight * model.I2_drift_bound() * T
    diagnostics = {'section_residual': float(image[0] - delta),
                   'in_ball': bool(math.sqrt(image[1] ** 2 + image[2] ** 2
                                             + image[3] ** 2) <= delta),
                   'delta_I2': drift,
                   'drift_bound': bound}
    logger.debug('global map: T=%.6g dI2=%.3e bound=%.3e', T, drift, bound)
    return ReturnRecord(PhasePoint(x, CHART_JORDAN),
                        PhasePoint(image, CHART_JORDAN), T,
                        float(model.rotation_angle(T)), diagnostics)


def first_return(model, local, x0, delta, tol=DEFAULT_TOL, step=None):
    """
    First return to ``sigma_l``: the local map followed by the global map.
    """
    inner = local_map(model, local, x0, delta)
    outer = global_map_ret2(model, local, inner.image, delta,
                            check_domain=False, tol=tol, step=step)
    diagnostics = dict(outer.diagnostics)
    diagnostics.update({'T_local': inner.T, 'T_global': outer.T,
                        'chart_roundtrip': inner.diagnostics['chart_roundtrip'],
                        'delta_I2': float(outer.image.I2 - inner.start.I2)})
    return ReturnRecord(inner.start, outer.image, inner.T + outer.T,
                        inner.rotation_angle + outer.rotation_angle,
                        diagnostics)


def section_map_jacobian(model, local, x0, delta, fd_step=1e-6, **kwargs):
    """
    Check of the flux identity of a section map:
    ``det D Ret * dH/dp1(image) = dH/dp1(start)``.

    Returns:
        tuple: (determinant, left side, right side).
    """
    x = _point(x0)

    def in_section(z):
        z = np.atleast_2d(z)
        out = [section_coordinates(first_return(
            model, local, from_section_coordinates(row, delta), delta,
            **kwargs).image.coordinates) for row in z]
        return np.array(out).reshape(np.shape(z))

    z0 = section_coordinates(x)
    D = finite_difference_jacobian(in_section, z0[None], fd_step)[0]
    det = float(np.linalg.det(D))
    image = first_return(model, local, x, delta, **kwargs).image.coordinates
    rate_start = float(model.gradient(x)[2])
    rate_image = float(model.gradient(image)[2])
    return det, det * rate_image, rate_start


# === SECTION POINTS ===

def point_on_sigma_l(local, eta1, xi2, eta2, delta):
    """
    Jordan-chart point of ``sigma_l`` with prescribed local coordinates
    ``(eta1, xi2, eta2)``; ``xi1`` solves ``q1(F(xi1, xi2, eta1, eta2)) =
    delta``.
    """
    def offset(xi1):
        return float(local.to_jordan([xi1, xi2, eta1, eta2])[0]) - delta

    xi1 = brentq(offset, 0.5 * delta, 2.0 * delta, xtol=1e-15)
    x = np.asarray(local.to_jordan([xi1, xi2, eta1, eta2]), dtype=float)
    x[0] = delta
    return x


def point_on_sigma_0(local, xi1, xi2, eta2, delta):
    """
    ``F(xi1, xi2, delta, eta2)``, a point of ``sigma_0`` by definition.
    """
    return np.asarray(local.to_jordan([xi1, xi2, delta, eta2]), dtype=float)
