#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Data model shared by the pipeline: phase points, sections, return records,
the run configuration and the three-parameter Hamiltonian family.
"""
import copy
import json
import math

import numpy as np

from .majorant import majorant_norm
from .poly import PolySeries, SeriesEvaluator, poisson_bracket
from .utils import hamiltonian_field, rotate_clockwise
from ..constants import (NVARS,
                         CHARTS,
                         CHART_JORDAN,
                         DEFAULT_C3,
                         DEFAULT_DELTA,
                         DEFAULT_EPSILON,
                         DEFAULT_K0,
                         DEFAULT_MOSER_DEGREE,
                         DEFAULT_RHO0,
                         DEFAULT_BAND_C1,
                         DEFAULT_BAND_C2,
                         INTERSECTION_TOL,
                         MODES,
                         MODE_FLOAT,
                         SECTION_SIGMA_L,
                         SECTION_SIGMA_0)
from ..errors import ConfigError, PolyStructureError
from ..log_config import logger


class PhasePoint(object):
    """
    Point of the four dimensional phase space, stored as (q1, q2, p1, p2)
    (or (xi1, xi2, eta1, eta2) in the local chart) with the chart it lives in.

    Args:
        coordinates (list[float]): the four coordinates.
        chart (str): chart tag.
    """

    def __init__(self, coordinates, chart=CHART_JORDAN):
        coordinates = np.array(coordinates, dtype=float).reshape(-1)
        if coordinates.shape != (NVARS,):
            raise PolyStructureError(
                'a phase point has {} coordinates, got {}'.format(
                    NVARS, len(coordinates)))
        if chart not in CHARTS:
            raise PolyStructureError('unknown chart "{}"'.format(chart))
        coordinates.setflags(write=False)
        self._coordinates = coordinates
        self._chart = chart

    def __repr__(self):
        return '<{}({}, chart={}) object at {}>'.format(
            self.__class__.__name__,
            ', '.join('{:.6g}'.format(c) for c in self._coordinates),
            self._chart, hex(id(self)))

    def __array__(self, dtype=None):
        return self._coordinates.astype(dtype or float)

    @property
    def coordinates(self):
        return self._coordinates

    @property
    def chart(self):
        return self._chart

    @property
    def q1(self):
        return float(self._coordinates[0])

    @property
    def q2(self):
        return float(self._coordinates[1])

    @property
    def p1(self):
        return float(self._coordinates[2])

    @property
    def p2(self):
        return float(self._coordinates[3])

    @property
    def I2(self):
        return self.q2 ** 2 + self.p2 ** 2

    @property
    def to_dict(self):
        return {'chart': self._chart,
                'coordinates': [float(c) for c in self._coordinates]}

    @classmethod
    def from_dict(cls, data):
        return cls(data['coordinates'], data['chart'])


class SectionSpec(object):
    """
    Poincare section description.

    ``sigma_l`` is the hyperplane ``{q1 = delta}`` of the Jordan chart;
    ``sigma_0`` is the image under the local chart map of ``{eta1 = delta}``.

    Args:
        kind (str): ``'sigma_l'`` or ``'sigma_0'``.
        delta (float): offset, positive.
        chart (str): chart the section equation is written in.
    """

    def __init__(self, kind=SECTION_SIGMA_L, delta=DEFAULT_DELTA,
                 chart=CHART_JORDAN):
        if kind not in (SECTION_SIGMA_L, SECTION_SIGMA_0):
            raise PolyStructureError('unknown section kind "{}"'.format(kind))
        if not delta > 0:
            raise PolyStructureError(
                'section offset must be positive, got {}'.format(delta))
        self.kind = kind
        self.delta = float(delta)
        self.chart = chart

    def __repr__(self):
        return '<{}({}, delta={}) object at {}>'.format(
            self.__class__.__name__, self.kind, self.delta, hex(id(self)))

    def residual(self, x, local=None):
        """
        Signed distance-like residual, zero on the section.

        Args:
            x (numpy.ndarray): points (..., 4) in the Jordan chart.
            local (LocalNormalization): needed for ``sigma_0``.
        """
        x = np.asarray(x, dtype=float)
        if self.kind == SECTION_SIGMA_L:
            return x[..., 0] - self.delta
        if local is None:
            raise PolyStructureError('sigma_0 needs the local chart')
        return local.to_local(x)[..., 2] - self.delta

    @property
    def to_dict(self):
        return {'kind': self.kind, 'delta': self.delta, 'chart': self.chart}


class ReturnRecord(object):
    """
    Result of one section-to-section map evaluation.

    Args:
        start (PhasePoint): start point.
        image (PhasePoint): image point.
        T (float): elapsed time.
        rotation_angle (float): accumulated fast angle.
        diagnostics (dict): residuals and bookkeeping.
    """

    #: CSV column names of :attr:`row`.
    columns = ('start_q1', 'start_q2', 'start_p1', 'start_p2',
               'image_q1', 'image_q2', 'image_p1', 'image_p2',
               'T', 'rotation_angle', 'chart')

    def __init__(self, start, image, T, rotation_angle=0.0, diagnostics=None):
        self.start = start
        self.image = image
        self.T = float(T)
        self.rotation_angle = float(rotation_angle)
        self.diagnostics = dict(diagnostics or {})

    def __repr__(self):
        return '<{}(T={:.6g}, angle={:.6g}) object at {}>'.format(
            self.__class__.__name__, self.T, self.rotation_angle, hex(id(self)))

    @property
    def delta_I2(self):
        return self.image.I2 - self.start.I2

    @property
    def row(self):
        return ([float(c) for c in self.start.coordinates]
                + [float(c) for c in self.image.coordinates]
                + [self.T, self.rotation_angle, self.image.chart])

    @property
    def to_dict(self):
        return {'start': self.start.to_dict,
                'image': self.image.to_dict,
                'T': self.T,
                'rotation_angle': self.rotation_angle,
                'diagnostics': {k: (float(v) if isinstance(v, (float, np.floating))
                                    else v)
                                for k, v in self.diagnostics.items()}}


# === CUTOFF ===

def _glue(u):
    u = np.asarray(u, dtype=float)
    safe = np.where(u > 0, u, 1.0)
    return np.where(u > 0, np.exp(-1.0 / safe), 0.0)


def smooth_step(s, low, high):
    """
    C-infinity step equal to 1 for ``s <= low`` and 0 for ``s >= high``,
    glued from ``exp(-1/u)``.

    Returns:
        tuple: (value, derivative) arrays.
    """
    s = np.asarray(s, dtype=float)
    u = high - s
    v = s - low
    gu = _glue(u)
    gv = _glue(v)
    total = gu + gv
    value = gu / total
    du = np.where(u > 0, gu / np.where(u > 0, u, 1.0) ** 2, 0.0)
    dv = np.where(v > 0, gv / np.where(v > 0, v, 1.0) ** 2, 0.0)
    derivative = -(du * gv + gu * dv) / total ** 2
    return value, derivative


class HamiltonianModel(object):
    """
    Three-parameter family in the Jordan chart

    ``H = chi(x) (-q1 p1 + c3/(2 sqrt 2) (q1 + p1)^3 + Omega I2
    + nu_hat Q + mu nu_hat eps^N0 R)``

    with ``Omega = omega / (2 eps^2)``, ``I2 = q2^2 + p2^2`` and ``chi`` the
    cutoff equal to 1 on the ball of radius ``rho0 / 2``.

    Args:
        epsilon (float): scaled parameter.
        omega (float): value of omega(epsilon).
        Q (PolySeries): normal-form tail in the Jordan chart.
        R (PolySeries): scaled remainder in the Jordan chart.
        nu_hat (float): weight of the normal-form tail.
        mu (float): weight of the remainder.
        N0 (int): remainder order.
        c3 (float): cubic coefficient of the scaled saddle Hamiltonian.
        rho0 (float): cutoff radius.
    """

    def __init__(self, epsilon, omega, Q=None, R=None, nu_hat=0.0, mu=0.0,
                 N0=4 * DEFAULT_K0 + 1, c3=DEFAULT_C3, rho0=DEFAULT_RHO0):
        if not epsilon > 0:
            raise PolyStructureError('epsilon must be positive')
        self.epsilon = float(epsilon)
        self.omega = float(omega)
        self.nu_hat = float(nu_hat)
        self.mu = float(mu)
        self.N0 = int(N0)
        self.c3 = float(c3)
        self.rho0 = float(rho0)
        self.Q = Q if Q is not None else PolySeries.zero(NVARS, 3)
        self.R = R if R is not None else PolySeries.zero(NVARS, 3)
        q1, q2, p1, p2 = PolySeries.variables(NVARS, 3)
        self.core = (-q1 * p1 + (q1 + p1) ** 3 * (self.c3 / (2.0 * math.sqrt(2.0)))
                     + (q2 * q2 + p2 * p2) * self.Omega)
        H = self.polynomial()
        self._H = SeriesEvaluator([H])
        self._H_gradient = SeriesEvaluator(H.gradient_series())

    def __repr__(self):
        return '<{}(eps={:.4g}, nu_hat={:.4g}, mu={:.4g}) object at {}>'.format(
            self.__class__.__name__, self.epsilon, self.nu_hat, self.mu,
            hex(id(self)))

    # === PARAMETERS ===

    @property
    def Omega(self):
        """
        Coefficient ``omega / (2 eps^2)`` of I2.
        """
        return self.omega / (2.0 * self.epsilon ** 2)

    @property
    def remainder_weight(self):
        return self.mu * self.nu_hat * self.epsilon ** self.N0

    @property
    def perturbation(self):
        degree = max(self.Q.max_degree, self.R.max_degree, 3)
        return (self.Q.with_degree(degree) * self.nu_hat
                + self.R.with_degree(degree) * self.remainder_weight)

    def with_parameters(self, **kwargs):
        """
        Copy with some of epsilon, omega, nu_hat, mu, N0, c3, rho0, Q, R
        replaced.
        """
        values = {'epsilon': self.epsilon, 'omega': self.omega, 'Q': self.Q,
                  'R': self.R, 'nu_hat': self.nu_hat, 'mu': self.mu,
                  'N0': self.N0, 'c3': self.c3, 'rho0': self.rho0}
        unknown = set(kwargs) - set(values)
        if unknown:
            raise PolyStructureError('unknown model parameters {}'.format(
                sorted(unknown)))
        values.update(kwargs)
        return HamiltonianModel(**values)

    def polynomial(self):
        """
        Returns:
            PolySeries: the Hamiltonian without cutoff (valid where chi = 1).
        """
        degree = max(self.perturbation.max_degree, 3)
        return self.core.with_degree(degree) + self.perturbation

    def rest_polynomial(self):
        """
        Returns:
            PolySeries: :meth:`polynomial` minus ``Omega I2``.
        """
        q2 = PolySeries.variable(1, NVARS, 2)
        p2 = PolySeries.variable(3, NVARS, 2)
        return self.polynomial() - (q2 * q2 + p2 * p2) * self.Omega

    # === EVALUATION ===

    def cutoff(self, x):
        """
        ``chi = T(q1^2) T(p1^2) T(I2)`` and its gradient.

        Returns:
            tuple: (values, gradients).
        """
        x = np.asarray(x, dtype=float)
        low = (0.5 * self.rho0) ** 2
        high = self.rho0 ** 2
        tq, dq = smooth_step(x[..., 0] ** 2, low, high)
        tp, dp = smooth_step(x[..., 2] ** 2, low, high)
        I2 = x[..., 1] ** 2 + x[..., 3] ** 2
        ti, di = smooth_step(I2, low, high)
        value = tq * tp * ti
        grad = np.stack([2 * x[..., 0] * dq * tp * ti,
                         2 * x[..., 1] * di * tq * tp,
                         2 * x[..., 2] * dp * tq * ti,
                         2 * x[..., 3] * di * tq * tp], axis=-1)
        return value, grad

    def energy(self, x):
        """
        ``chi H``: the whole Hamiltonian is cut off.
        """
        x = np.asarray(x, dtype=float)
        chi, _ = self.cutoff(x)
        return chi * self._H(x)[..., 0]

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        chi, dchi = self.cutoff(x)
        H = self._H(x)[..., 0]
        return chi[..., None] * self._H_gradient(x) + H[..., None] * dchi

    def vector_field(self, t, x):
        return hamiltonian_field(self.gradient(x))

    def rest_gradient(self, x):
        g = self.gradient(x)
        g[..., 1] -= 2.0 * self.Omega * x[..., 1]
        g[..., 3] -= 2.0 * self.Omega * x[..., 3]
        return g

    def rotation_angle(self, t):
        """
        Clockwise angle swept by the (q2, p2) rotation in time t.
        """
        return 2.0 * self.Omega * np.asarray(t, dtype=float)

    def corotate(self, y, t):
        """
        Rotate the elliptic block of slow points into the lab frame.
        """
        y = np.asarray(y, dtype=float)
        x = y.copy()
        x[..., 1], x[..., 3] = rotate_clockwise(y[..., 1], y[..., 3],
                                                self.rotation_angle(t))
        return x

    def slow_field(self, t, y):
        """
        Vector field of the co-rotating system ``y = Rot(-2 Omega t) x``, the
        full flow with the fast rotation of the elliptic block removed.
        """
        y = np.asarray(y, dtype=float)
        angle = self.rotation_angle(t)
        x = self.corotate(y, t)
        f = hamiltonian_field(self.rest_gradient(x))
        f[..., 1], f[..., 3] = rotate_clockwise(f[..., 1], f[..., 3], -angle)
        return f

    def I2(self, x):
        x = np.asarray(x, dtype=float)
        return x[..., 1] ** 2 + x[..., 3] ** 2

    def dI2_dt(self, x):
        x = np.asarray(x, dtype=float)
        g = self.gradient(x)
        return 2.0 * x[..., 1] * g[..., 3] - 2.0 * x[..., 3] * g[..., 1]

    def I2_drift_bound(self):
        """
        ``M`` with ``|dI2/dt| <= mu nu_hat eps^N0 M`` on the cutoff support.
        """
        q2 = PolySeries.variable(1, NVARS, 2)
        p2 = PolySeries.variable(3, NVARS, 2)
        bracket = poisson_bracket(q2 * q2 + p2 * p2, self.R)
        return majorant_norm(bracket, self.rho0)

    @property
    def to_dict(self):
        return {'epsilon': self.epsilon, 'omega': self.omega,
                'Omega': self.Omega, 'nu_hat': self.nu_hat, 'mu': self.mu,
                'N0': self.N0, 'c3': self.c3, 'rho0': self.rho0,
                'Q': self.Q.to_dict, 'R': self.R.to_dict}


# === RUN CONFIGURATION ===

DEFAULT_CONFIG = {
    'model': {
        'omega0': 1.0,
        'c10': 1.0,
        'c20': 1.0,
        'c3': DEFAULT_C3,
        'lambda': None,
        'extra_coefficients': [],
        'remainder_coefficients': [],
        'mode': MODE_FLOAT,
    },
    'pipeline': {
        'k0': DEFAULT_K0,
        'n': None,
        'N0': None,
        'moser_degree': DEFAULT_MOSER_DEGREE,
        'rho0': DEFAULT_RHO0,
    },
    'numerics': {
        'delta': DEFAULT_DELTA,
        'epsilons': [DEFAULT_EPSILON],
        'mus': [0.0],
        'nu_hat': None,
        'alphas': None,
        'n_alphas': 5,
        'band': [DEFAULT_BAND_C1, DEFAULT_BAND_C2],
        'samples': 64,
        'max_loops': 4,
        'portrait_alphas': [-0.01, -0.005, 0.0, 0.005, 0.01],
        'tolerances': {'integrator': 1e-10, 'intersection': INTERSECTION_TOL},
        'step': None,
        'slow_step': None,
    },
    'output': 'runs',
    'seed': 0,
}


def _number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _positive(value):
    return _number(value) and value > 0


def _non_negative(value):
    return _number(value) and value >= 0


def _count(value):
    return isinstance(value, int) and not isinstance(value, bool) and value >= 1


def _optional(check):
    return lambda value: value is None or check(value)


def _list_of(check, allow_empty=True):
    return lambda value: (isinstance(value, list)
                          and (allow_empty or len(value) > 0)
                          and all(check(v) for v in value))


def _coefficient_entry(value):
    return (isinstance(value, dict)
            and set(value) == {'exponents', 'value'}
            and isinstance(value['exponents'], list)
            and len(value['exponents']) == NVARS
            and all(isinstance(e, int) and e >= 0 for e in value['exponents'])
            and _number(value['value']))


#: dotted key -> (check, expectation) for every configurable value.
CONFIG_SCHEMA = {
    'model.omega0': (_number, 'a number'),
    'model.c10': (_number, 'a number'),
    'model.c20': (_number, 'a number'),
    'model.c3': (_positive, 'a positive number'),
    'model.lambda': (_optional(_number), 'a number or null'),
    'model.extra_coefficients': (_list_of(_coefficient_entry),
                                 'a list of {"exponents": [4 ints], "value": x}'),
    'model.remainder_coefficients': (_list_of(_coefficient_entry),
                                     'a list of {"exponents": [4 ints], "value": x}'),
    'model.mode': (lambda v: v in MODES, 'one of {}'.format(', '.join(MODES))),
    'pipeline.k0': (_count, 'a positive integer'),
    'pipeline.n': (_optional(lambda v: _count(v) and v >= 3), 'an integer >= 3 or null'),
    'pipeline.N0': (_optional(_count), 'a positive integer or null'),
    'pipeline.moser_degree': (lambda v: _count(v) and v >= 4, 'an integer >= 4'),
    'pipeline.rho0': (_positive, 'a positive number'),
    'numerics.delta': (_positive, 'a positive number'),
    'numerics.epsilons': (_list_of(_positive, allow_empty=False),
                          'a non-empty list of positive numbers'),
    'numerics.mus': (_list_of(_non_negative, allow_empty=False),
                     'a non-empty list of non-negative numbers'),
    'numerics.nu_hat': (_optional(_non_negative), 'a non-negative number or null'),
    'numerics.alphas': (_optional(_list_of(_positive)),
                        'a list of positive numbers or null'),
    'numerics.n_alphas': (_count, 'a positive integer'),
    'numerics.band': (lambda v: (_list_of(_positive)(v) and len(v) == 2
                                 and v[0] < v[1]),
                      'two increasing positive numbers'),
    'numerics.samples': (lambda v: _count(v) and v >= 8, 'an integer >= 8'),
    'numerics.max_loops': (_count, 'a positive integer'),
    'numerics.portrait_alphas': (_list_of(_number), 'a list of numbers'),
    'numerics.tolerances.integrator': (_positive, 'a positive number'),
    'numerics.tolerances.intersection': (_positive, 'a positive number'),
    'numerics.step': (_optional(_positive), 'a positive number or null'),
    'numerics.slow_step': (_optional(_positive), 'a positive number or null'),
    'output': (lambda v: isinstance(v, str) and len(v) > 0, 'a directory path'),
    'seed': (lambda v: isinstance(v, int) and not isinstance(v, bool), 'an integer'),
}


def _merge(defaults, data, prefix=''):
    merged = copy.deepcopy(defaults)
    for key, value in data.items():
        dotted = prefix + key
        if key not in defaults:
            raise ConfigError('{}: unknown key'.format(dotted), dotted)
        if isinstance(defaults[key], dict):
            if not isinstance(value, dict):
                raise ConfigError('{}: expected an object'.format(dotted), dotted)
            merged[key] = _merge(defaults[key], value, dotted + '.')
        else:
            merged[key] = value
    return merged


class RunConfig(object):
    """
    Validated run configuration.

    Values are looked up with dotted keys, e.g. ``config['numerics.delta']``.
    ``pipeline.n`` and ``pipeline.N0`` default to ``2 k0 + 3`` and
    ``4 k0 + 1``.

    Args:
        data (dict): user values overriding :data:`DEFAULT_CONFIG`.
    """

    def __init__(self, data=None):
        data = data or {}
        if not isinstance(data, dict):
            raise ConfigError('configuration must be a JSON object')
        self._data = _merge(DEFAULT_CONFIG, data)
        for key, (check, expected) in sorted(CONFIG_SCHEMA.items()):
            value = self[key]
            if not check(value):
                raise ConfigError('{}: expected {}, got {!r}'.format(
                    key, expected, value), key)
        k0 = self['pipeline.k0']
        if self['pipeline.n'] is None:
            self._data['pipeline']['n'] = 2 * k0 + 3
        if self['pipeline.N0'] is None:
            self._data['pipeline']['N0'] = 4 * k0 + 1

    def __repr__(self):
        return '<{}(epsilons={}, mus={}) object at {}>'.format(
            self.__class__.__name__, self['numerics.epsilons'],
            self['numerics.mus'], hex(id(self)))

    def __getitem__(self, key):
        node = self._data
        for part in key.split('.'):
            if not isinstance(node, dict) or part not in node:
                raise ConfigError('{}: unknown key'.format(key), key)
            node = node[part]
        return node

    def get(self, key, default=None):
        try:
            return self[key]
        except ConfigError:
            return default

    @classmethod
    def from_file(cls, file_path):
        """
        Load a JSON configuration file.

        Raises:
            ConfigError: unreadable file, malformed JSON or invalid values.
        """
        try:
            with open(file_path) as data_file:
                data = json.load(data_file)
        except IOError as e:
            raise ConfigError('cannot read config "{}": {}'.format(file_path, e))
        except ValueError as e:
            raise ConfigError('malformed JSON in "{}": {}'.format(file_path, e))
        return cls(data)

    @property
    def to_dict(self):
        return copy.deepcopy(self._data)

    @property
    def serial(self):
        return json.dumps(self._data, indent=2, separators=(',', ':'),
                          sort_keys=True)

    def smallness_report(self):
        """
        Evaluate the smallness conditions the dynamics rely on and log them.

        Returns:
            dict: condition name -> bool.
        """
        delta = self['numerics.delta']
        rho0 = self['pipeline.rho0']
        c1, c2 = self['numerics.band']
        report = {
            'delta <= rho0 / 4': delta <= rho0 / 4.0,
            'band within local map domain': c2 <= 1.0 / 16.0,
            'epsilon < 1': all(e < 1.0 for e in self['numerics.epsilons']),
            'alpha window inside band': all(
                a <= c1 * delta ** 2 * e ** 2 / 4.0
                for a in (self['numerics.alphas'] or [])
                for e in self['numerics.epsilons']),
        }
        for name, ok in sorted(report.items()):
            if ok:
                logger.info('smallness condition holds: {}'.format(name))
            else:
                logger.warning('smallness condition fails: {}'.format(name))
        return report
