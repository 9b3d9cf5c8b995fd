#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Twist-map view of the restricted return map: annulus coordinates
``(q, rho) = (nu_bar theta, r / sqrt(nu_bar))``, the decomposition
``(q, rho) -> (q + alpha(rho) + F, rho + G)``, diagnostics of the twist
hypotheses and a numerical invariant circle finder.

``theta`` is measured clockwise in the (q2, p2) plane so that the fast
rotation of the elliptic block increases it.
"""
import math

import numpy as np
from scipy.interpolate import CubicSpline, RectBivariateSpline
from scipy.optimize import brentq, least_squares

from ..base.utils import fit_loglog_slope, wrap_angle
from ..constants import (CHART_JORDAN,
                         CIRCLE_NODES,
                         CIRCLE_RESIDUAL_TOL,
                         DEFAULT_BAND_C1,
                         DEFAULT_BAND_C2)
from ..errors import ConfinementError, CoordinateSingularityError
from ..log_config import logger
from .curves import ClosedCurve, circle, winding_number

#: Area form ``dq ^ drho`` (standard-map style test maps).
AREA_CARTESIAN = 'cartesian'
#: Area form ``rho drho ^ dq`` inherited from the (q2, p2) plane.
AREA_POLAR = 'polar'

_GOLDEN = 0.5 * (1.0 + math.sqrt(5.0))


def nu_bar(epsilon):
    """
    Rounded scale ``1 / floor(1 / eps^2)``, in ``[eps^2, eps^2 / (1 - eps^2))``.
    """
    return 1.0 / math.floor(1.0 / epsilon ** 2)


def twist_band(epsilon, delta, c1=DEFAULT_BAND_C1, c2=DEFAULT_BAND_C2):
    """
    Radii ``(r_min, r_max)`` of the annulus ``c1 delta^2 eps^2 <= I2 <=
    c2 delta^2 eps^2``.
    """
    scale = delta * epsilon
    return math.sqrt(c1) * scale, math.sqrt(c2) * scale


def twist_coordinates(q2, p2, scale, min_radius=0.0):
    """
    Returns:
        tuple: ``(q, rho)`` with ``q`` in ``[0, 2 pi scale)``.

    Raises:
        CoordinateSingularityError: a radius at or below ``min_radius``.
    """
    q2 = np.asarray(q2, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    r = np.hypot(q2, p2)
    if np.any(r <= min_radius) or np.any(r == 0):
        raise CoordinateSingularityError(
            'radius {:.3e} inside the forbidden disc {:.3e}'.format(
                float(np.min(r)), min_radius))
    theta = np.mod(np.arctan2(-p2, q2), 2.0 * math.pi)
    return scale * theta, r / math.sqrt(scale)


def from_twist_coordinates(q, rho, scale):
    """
    Returns:
        tuple: ``(q2, p2)``.
    """
    theta = np.asarray(q, dtype=float) / scale
    r = math.sqrt(scale) * np.asarray(rho, dtype=float)
    return r * np.cos(theta), -r * np.sin(theta)


def unwrap_angles(theta):
    """
    Continuous lift of a sequence of angles.
    """
    return np.unwrap(np.asarray(theta, dtype=float))


def record_lift(record):
    """
    Total clockwise angle swept by the elliptic block during a return: the
    accumulated fast angle corrected by the wrapped residual angle.
    """
    start, image = record.start, record.image
    theta0 = math.atan2(-start.p2, start.q2)
    theta1 = math.atan2(-image.p2, image.q2)
    rotation = record.rotation_angle
    return rotation + float(wrap_angle(theta1 - theta0 - rotation))


# === TWIST PROFILE ===

class TwistProfile(object):
    """
    Annulus map sampled on a grid, split as
    ``(q, rho) -> (q + alpha(rho) + F(q, rho), rho + G(q, rho))``.

    Args:
        q_grid (numpy.ndarray): angles, shape (n_q,).
        rho_grid (numpy.ndarray): increasing radii, shape (n_rho,).
        alpha_values (numpy.ndarray): rotation increments, shape (n_rho,).
        F_samples (numpy.ndarray): angular perturbation, (n_rho, n_q).
        G_samples (numpy.ndarray): radial perturbation, (n_rho, n_q).
        scale (float): ``nu_bar`` of the coordinates.
        period (float): period in ``q`` (``2 pi nu_bar`` by default).
        area_form (str): :data:`AREA_POLAR` or :data:`AREA_CARTESIAN`.
    """

    def __init__(self, q_grid, rho_grid, alpha_values, F_samples, G_samples,
                 scale=1.0, period=None, area_form=AREA_POLAR):
        self.q_grid = np.asarray(q_grid, dtype=float)
        self.rho_grid = np.asarray(rho_grid, dtype=float)
        self.alpha_values = np.asarray(alpha_values, dtype=float)
        self.F_samples = np.asarray(F_samples, dtype=float)
        self.G_samples = np.asarray(G_samples, dtype=float)
        self.nu_bar = float(scale)
        self.period = float(period or 2.0 * math.pi * scale)
        self.area_form = area_form

    def __repr__(self):
        return '<{}(rho={}x q={}, nu_bar={:.4g}) object at {}>'.format(
            self.__class__.__name__, len(self.rho_grid), len(self.q_grid),
            self.nu_bar, hex(id(self)))

    @property
    def twist(self):
        """
        Finite-difference ``d alpha / d rho`` on the radial grid.
        """
        if len(self.rho_grid) < 2:
            return np.zeros_like(self.alpha_values)
        return np.gradient(self.alpha_values, self.rho_grid)

    @property
    def sup_F(self):
        return float(np.max(np.abs(self.F_samples)))

    @property
    def sup_G(self):
        return float(np.max(np.abs(self.G_samples)))

    def images(self):
        """
        Lifted images ``(q', rho')`` of the grid, each (n_rho, n_q).
        """
        q = self.q_grid[None, :] + self.alpha_values[:, None] + self.F_samples
        rho = self.rho_grid[:, None] + self.G_samples
        return q, rho

    def annulus_map(self):
        """
        Interpolated map on ``(m, 2)`` arrays of ``(q, rho)``; ``q`` is
        reduced modulo the period for the perturbation lookup only.
        """
        alpha = CubicSpline(self.rho_grid, self.alpha_values)
        q_ext = np.concatenate([self.q_grid - self.period, self.q_grid,
                                self.q_grid + self.period])
        kx = min(3, len(self.rho_grid) - 1)
        F = RectBivariateSpline(self.rho_grid, q_ext,
                                np.tile(self.F_samples, 3), kx=kx, ky=3)
        G = RectBivariateSpline(self.rho_grid, q_ext,
                                np.tile(self.G_samples, 3), kx=kx, ky=3)
        q0 = float(self.q_grid[0])

        def mapping(points):
            points = np.atleast_2d(np.asarray(points, dtype=float))
            q, rho = points[:, 0], points[:, 1]
            qr = q0 + np.mod(q - q0, self.period)
            return np.column_stack([q + alpha(rho) + F.ev(rho, qr),
                                    rho + G.ev(rho, qr)])
        return mapping

    @property
    def to_dict(self):
        return {'q_grid': self.q_grid.tolist(),
                'rho_grid': self.rho_grid.tolist(),
                'alpha': self.alpha_values.tolist(),
                'twist': self.twist.tolist(),
                'sup_F': self.sup_F,
                'sup_G': self.sup_G,
                'nu_bar': self.nu_bar,
                'period': self.period,
                'area_form': self.area_form}


def _profile(q, rho, q_image, rho_image, scale, period, area_form,
             reference=None):
    increments = q_image - q
    if reference is None:
        alpha = increments.mean(axis=1)
    else:
        alpha = (reference[0] - reference[1]).mean(axis=1)
    return TwistProfile(q[0], rho.mean(axis=1), alpha,
                        increments - alpha[:, None], rho_image - rho,
                        scale, period, area_form)


def sample_twist_profile(annulus_map, q_grid, rho_grid, scale=1.0,
                         period=None, reference_map=None,
                         area_form=AREA_CARTESIAN):
    """
    Profile of an annulus map on ``(m, 2)`` arrays evaluated on a grid.
    ``alpha`` is the angular mean of the reference map (of the map itself
    when no reference is given).
    """
    q, rho = np.meshgrid(np.asarray(q_grid, float), np.asarray(rho_grid, float))
    points = np.column_stack([q.ravel(), rho.ravel()])
    image = np.asarray(annulus_map(points)).reshape(q.shape + (2,))
    reference = None
    if reference_map is not None:
        ref = np.asarray(reference_map(points)).reshape(q.shape + (2,))
        reference = (ref[..., 0], q)
    return _profile(q, rho, image[..., 0], image[..., 1], scale, period,
                    area_form, reference)


def to_twist_coordinates(records, scale, shape, reference=None,
                         min_radius=0.0):
    """
    Twist profile of return records sampled on a ``(n_rho, n_q)`` grid in
    row-major order, all on the same energy level.

    Args:
        records (list[ReturnRecord]): returns to ``sigma_l``.
        scale (float): ``nu_bar``.
        shape (tuple): grid shape ``(n_rho, n_q)``.
        reference (list[ReturnRecord]): records of the integrable (mu = 0)
            system on the same grid, defining ``alpha``.
        min_radius (float): radius of the forbidden disc around the
            periodic orbit.

    Raises:
        CoordinateSingularityError: a sample inside the forbidden disc.
    """
    def arrays(recs):
        starts = np.array([[r.start.q2, r.start.p2] for r in recs])
        images = np.array([[r.image.q2, r.image.p2] for r in recs])
        q, rho = twist_coordinates(starts[:, 0], starts[:, 1], scale,
                                   min_radius)
        _, rho_image = twist_coordinates(images[:, 0], images[:, 1], scale,
                                         min_radius)
        lifts = np.array([record_lift(r) for r in recs])
        q_image = q + scale * lifts
        return [a.reshape(shape) for a in (q, rho, q_image, rho_image)]

    q, rho, q_image, rho_image = arrays(records)
    ref = None
    if reference is not None:
        rq, _, rq_image, _ = arrays(reference)
        ref = (rq_image, rq)
    return _profile(q, rho, q_image, rho_image, scale, None, AREA_POLAR, ref)


# === HYPOTHESES ===

def _row_flux(q_image, rho_image, period, area_form):
    weight = 0.5 * rho_image ** 2 if area_form == AREA_POLAR else rho_image
    q_next = np.append(q_image[1:], q_image[0] + period)
    w_next = np.append(weight[1:], weight[0])
    return float(np.sum(0.5 * (weight + w_next) * (q_next - q_image)))


def check_kam_hypotheses(tp, sweep=None, tol=1e-9):
    """
    Report on the twist, smallness and exactness hypotheses of a profile.
    Never raises for failed checks.

    Args:
        tp (TwistProfile): profile to check.
        sweep (list[tuple]): optional ``(mu, TwistProfile)`` pairs; the
            log-log slopes of ``sup |F|`` and ``sup |G|`` against ``mu`` are
            reported.
        tol (float): absolute tolerance of the exactness proxies.

    Returns:
        dict: ``twist``, ``smallness``, ``exactness`` and ``passed``.
    """
    twist = tp.twist
    twist_report = {
        'min': float(np.min(twist)), 'max': float(np.max(twist)),
        'negative': bool(np.all(twist < 0)),
        'positive': bool(np.all(twist > 0)),
    }
    twist_report['strict'] = twist_report['negative'] or twist_report['positive']
    magnitude = np.abs(twist)
    twist_report['m0'] = (float(max(magnitude.max(), 1.0 / magnitude.min()))
                          if twist_report['strict'] else float('inf'))

    smallness = {'sup_F': tp.sup_F, 'sup_G': tp.sup_G}
    if sweep:
        mus = [mu for mu, _ in sweep if mu > 0]
        profiles = [p for mu, p in sweep if mu > 0]
        if len(mus) >= 2:
            for name in ('F', 'G'):
                sups = [getattr(p, 'sup_' + name) for p in profiles]
                if min(sups) > 0:
                    smallness['mu_slope_' + name] = fit_loglog_slope(mus, sups)

    q_image, rho_image = tp.images()
    flux_defects, crossing_rows = [], 0
    for i, rho in enumerate(tp.rho_grid):
        flux = _row_flux(q_image[i], rho_image[i], tp.period, tp.area_form)
        base = (0.5 * rho ** 2 if tp.area_form == AREA_POLAR else rho)
        flux_defects.append(abs(flux - base * tp.period))
        G = tp.G_samples[i]
        if G.min() <= tol and G.max() >= -tol:
            crossing_rows += 1
    exactness = {
        'flux_defect': float(max(flux_defects)),
        'rows_meeting_image': crossing_rows,
        'rows': len(tp.rho_grid),
    }
    exactness['exact'] = crossing_rows == len(tp.rho_grid)
    report = {'twist': twist_report, 'smallness': smallness,
              'exactness': exactness,
              'passed': twist_report['strict'] and exactness['exact']}
    logger.info('twist hypotheses: twist in [%.4g, %.4g], sup F %.3e, '
                'sup G %.3e, exact rows %d/%d', twist_report['min'],
                twist_report['max'], smallness['sup_F'], smallness['sup_G'],
                crossing_rows, len(tp.rho_grid))
    return report


# === ROTATION NUMBERS ===

def continued_fraction(x, terms=8):
    """
    Leading partial quotients of ``x``.
    """
    quotients = []
    for _ in range(terms):
        a = math.floor(x)
        quotients.append(int(a))
        frac = x - a
        if frac < 1e-12:
            break
        x = 1.0 / frac
    return quotients


def _evaluate_tail(quotients, tail):
    value = tail
    for a in reversed(quotients[1:]):
        value = a + 1.0 / value
    return quotients[0] + 1.0 / value


def noble_number(x, depth=2):
    """
    Number with continued fraction ``[a0; a1, .., ak, 1, 1, ...]`` closest to
    ``x`` among the truncations ``k <= depth`` of the expansion of ``x``.
    """
    quotients = continued_fraction(x, depth + 1)
    candidates = [_evaluate_tail(quotients[:k + 1], _GOLDEN)
                  for k in range(len(quotients))]
    return min(candidates, key=lambda c: abs(c - x))


# === INVARIANT CIRCLES ===

def mean_increment(annulus_map, rho, period, samples=32):
    q = period * np.arange(samples) / float(samples)
    image = annulus_map(np.column_stack([q, np.full(samples, rho)]))
    return float(np.mean(image[:, 0] - q))


def _fourier_shift(values, shift, period):
    n = len(values)
    k = np.fft.fftfreq(n, 1.0 / n)
    phase = np.exp(2j * math.pi * k * shift / period)
    if n % 2 == 0:
        phase[n // 2] = math.cos(math.pi * n * shift / period)
    return np.fft.ifft(np.fft.fft(values) * phase).real


class InvariantCircle(object):
    """
    Invariant graph ``{(theta + f(theta), rho0 + g(theta))}`` of an annulus
    map, conjugating the map to the rotation by ``omega``.
    """

    def __init__(self, theta, f, g, rho0, omega, period, residual,
                 chart=CHART_JORDAN):
        self.theta = theta
        self.f = f
        self.g = g
        self.rho0 = float(rho0)
        self.omega = float(omega)
        self.period = float(period)
        self.residual = float(residual)
        self.chart = chart

    def __repr__(self):
        return '<{}(rho0={:.6g}, omega={:.6g}, residual={:.2e}) object at {}>'.format(
            self.__class__.__name__, self.rho0, self.omega, self.residual,
            hex(id(self)))

    @property
    def points(self):
        return np.column_stack([self.theta + self.f, self.rho0 + self.g])

    @property
    def rho_range(self):
        rho = self.rho0 + self.g
        return float(rho.min()), float(rho.max())

    def curve(self, scale=None):
        """
        The circle as a :class:`ClosedCurve`, in (q2, p2) when the twist
        ``scale`` is given, else in (q, rho).
        """
        q, rho = self.points[:, 0], self.points[:, 1]
        if scale is None:
            return ClosedCurve(self.points, self.chart)
        q2, p2 = from_twist_coordinates(q, rho, scale)
        return ClosedCurve(np.column_stack([q2, p2]), self.chart)

    @property
    def to_dict(self):
        return {'rho0': self.rho0, 'omega': self.omega,
                'period': self.period, 'residual': self.residual,
                'rho_range': list(self.rho_range)}


def _invariance_residual(annulus_map, theta, f, g, rho0, omega, period):
    q = theta + f
    rho = rho0 + g
    image = annulus_map(np.column_stack([q, rho]))
    f_shift = _fourier_shift(f, omega, period)
    g_shift = _fourier_shift(g, omega, period)
    return np.concatenate([image[:, 0] - (theta + omega + f_shift),
                           image[:, 1] - (rho0 + g_shift)])


def find_invariant_circle(annulus_map, rho_band, period=1.0,
                          nodes=CIRCLE_NODES, omega=None,
                          tol=CIRCLE_RESIDUAL_TOL, depth=2, max_nfev=5000):
    """
    Solve the invariance equation of a graph over the angle by least
    squares on Fourier nodes.

    Args:
        annulus_map (callable): lifted map on ``(m, 2)`` arrays ``(q, rho)``.
        rho_band (tuple): ``(rho_min, rho_max)``.
        period (float): period of ``q``.
        nodes (int): Fourier nodes.
        omega (float): rotation per iterate; the noble number closest to
            the mid-band rotation when None.
        tol (float): accepted invariance residual.
        depth (int): continued fraction depth of the noble selection.
        max_nfev (int): evaluation budget of the solver.

    Returns:
        InvariantCircle or None: None when no circle meets the tolerance.
    """
    low, high = rho_band
    if omega is None:
        mid = mean_increment(annulus_map, 0.5 * (low + high), period) / period
        turns = math.floor(mid)
        omega = (turns + noble_number(mid - turns, depth)) * period

    def offset(rho):
        return mean_increment(annulus_map, rho, period) - omega

    try:
        rho0 = brentq(offset, low, high, xtol=1e-14)
    except ValueError:
        logger.info('rotation %.6g is not reached on the band [%.4g, %.4g]',
                    omega, low, high)
        return None

    theta = period * np.arange(nodes) / float(nodes)

    def residual(z):
        f = z[:nodes] - z[:nodes].mean()
        return np.append(_invariance_residual(annulus_map, theta, f,
                                              z[nodes:2 * nodes], z[-1],
                                              omega, period),
                         z[:nodes].mean())

    z0 = np.zeros(2 * nodes + 1)
    z0[-1] = rho0
    solution = least_squares(residual, z0, method='lm', xtol=1e-15,
                             ftol=1e-15, gtol=1e-15, max_nfev=max_nfev)
    f = solution.x[:nodes] - solution.x[:nodes].mean()
    g = solution.x[nodes:2 * nodes]
    rho0 = solution.x[-1]
    res = float(np.max(np.abs(_invariance_residual(annulus_map, theta, f, g,
                                                   rho0, omega, period))))
    angle = theta + f
    monotone = bool(np.all(np.diff(np.append(angle, angle[0] + period)) > 0))
    inside = bool(np.all((rho0 + g >= low) & (rho0 + g <= high)))
    logger.info('invariant circle at rotation %.8g: residual %.3e, '
                'graph %s, inside band %s', omega, res, monotone, inside)
    if res > tol or not monotone or not inside:
        return None
    return InvariantCircle(theta, f, g, rho0, omega, period, res)


# === ORACLES ===

def band_oracle(annulus_map, points, rho_band, iterates=100000):
    """
    Iterate points and report whether any leaves the band.

    Returns:
        dict: ``escaped``, ``first_escape`` (iterate index or None),
        ``rho_min`` and ``rho_max`` over the orbit.
    """
    low, high = rho_band
    x = np.atleast_2d(np.asarray(points, dtype=float))
    rho_min, rho_max = float(x[:, 1].min()), float(x[:, 1].max())
    for n in range(1, iterates + 1):
        x = annulus_map(x)
        rho_min = min(rho_min, float(x[:, 1].min()))
        rho_max = max(rho_max, float(x[:, 1].max()))
        if rho_min < low or rho_max > high:
            return {'escaped': True, 'first_escape': n,
                    'rho_min': rho_min, 'rho_max': rho_max}
    return {'escaped': False, 'first_escape': None,
            'rho_min': rho_min, 'rho_max': rho_max}


def sample_restricted_map(restricted_map, rho_grid, q_count, scale):
    """
    Return records of the restricted map over a ``(rho, q)`` grid of the
    twist band, row-major, ready for :func:`to_twist_coordinates`.
    """
    q = 2.0 * math.pi * scale * np.arange(q_count) / float(q_count)
    records = []
    for rho in rho_grid:
        q2, p2 = from_twist_coordinates(q, np.full(q_count, rho), scale)
        for a, b in zip(q2, p2):
            records.append(restricted_map.record(a, b))
    return records


# === TRAPPING REGIONS ===

#: Trap bounded by an invariant circle of the sampled map.
TRAP_CIRCLE = 'invariant_circle'
#: Disc of the outer band radius, after the band oracle held.
TRAP_BAND = 'band_oracle'
#: Oracle iterates behind a :data:`TRAP_BAND` trap.
TRAP_ORACLE_ITERATES = 10000


class TrappingRegion(object):
    """
    Region of the (q2, p2) plane that iterates of the restricted map do not
    leave.

    Args:
        kind (str): :data:`TRAP_CIRCLE` or :data:`TRAP_BAND`.
        boundary (ClosedCurve): boundary curve in (q2, p2).
        report (dict): circle or oracle report behind the trap.
    """

    def __init__(self, kind, boundary, report=None):
        self.kind = kind
        self.boundary = boundary
        self.report = dict(report or {})

    def __repr__(self):
        return '<{}("{}", samples={}) object at {}>'.format(
            self.__class__.__name__, self.kind, len(self.boundary),
            hex(id(self)))

    def contains(self, points):
        """
        Returns:
            numpy.ndarray: bool per row of ``points``, True inside.
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return np.array([winding_number(self.boundary, p) != 0
                         for p in points], dtype=bool)

    @property
    def to_dict(self):
        radii = np.hypot(self.boundary.samples[:, 0],
                         self.boundary.samples[:, 1])
        return {'kind': self.kind,
                'radius_range': [float(radii.min()), float(radii.max())],
                'report': self.report}


def trapping_region(profile, rho_band, iterates=TRAP_ORACLE_ITERATES,
                    samples=CIRCLE_NODES):
    """
    Trap of a sampled return map: the interior of an invariant circle of
    the interpolated map when one is found, else the disc of the outer
    band radius once the band oracle kept a ring of mid-band points inside
    the band for ``iterates`` iterates.

    Args:
        profile (TwistProfile): sampled map in twist coordinates.
        rho_band (tuple): ``(rho_min, rho_max)``.
        iterates (int): oracle iterates.
        samples (int): boundary samples of the disc trap.

    Returns:
        TrappingRegion: the trap.

    Raises:
        ConfinementError: no circle and the band leaks.
    """
    annulus_map = profile.annulus_map()
    scale = profile.nu_bar
    found = find_invariant_circle(annulus_map, rho_band, period=profile.period)
    if found is not None:
        return TrappingRegion(TRAP_CIRCLE, found.curve(scale), found.to_dict)

    low, high = rho_band
    q = profile.period * np.arange(len(profile.q_grid)) / float(
        len(profile.q_grid))
    ring = np.column_stack([q, np.full(len(q), 0.5 * (low + high))])
    oracle = band_oracle(annulus_map, ring, rho_band, iterates)
    oracle['iterates'] = iterates
    if oracle['escaped']:
        raise ConfinementError(
            'no invariant circle on the band [{:.4g}, {:.4g}] and the band '
            'leaks after {} iterates'.format(low, high,
                                             oracle['first_escape']))
    boundary = circle((0.0, 0.0), math.sqrt(scale) * high, samples, CHART_JORDAN)
    return TrappingRegion(TRAP_BAND, boundary, oracle)


def sample_twist_band(restricted_map, epsilon, delta, c1=DEFAULT_BAND_C1,
                      c2=DEFAULT_BAND_C2, rows=4, cols=16):
    """
    Twist profile of the restricted return map on a ``(rows, cols)`` grid
    of the twist band.

    Returns:
        tuple: (TwistProfile, ``(rho_min, rho_max)``).
    """
    r_min, r_max = twist_band(epsilon, delta, c1, c2)
    scale = nu_bar(epsilon)
    rho_grid = np.linspace(r_min, r_max, rows) / math.sqrt(scale)
    records = sample_restricted_map(restricted_map, rho_grid, cols, scale)
    profile = to_twist_coordinates(records, scale, (rows, cols),
                                   min_radius=0.5 * r_min)
    return profile, (rho_grid[0], rho_grid[-1])


def find_trapping_region(restricted_map, epsilon, delta, c1=DEFAULT_BAND_C1,
                         c2=DEFAULT_BAND_C2, rows=4, cols=16,
                         iterates=TRAP_ORACLE_ITERATES):
    """
    Sample the restricted return map on the twist band and build its
    :func:`trapping_region`.
    """
    profile, rho_band = sample_twist_band(restricted_map, epsilon, delta, c1,
                                          c2, rows, cols)
    trap = trapping_region(profile, rho_band, iterates)
    logger.info('trap at eps=%.4g: %s', epsilon, trap.kind)
    return trap
