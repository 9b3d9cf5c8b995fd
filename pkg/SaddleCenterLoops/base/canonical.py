#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Near-identity canonical maps of the phase space.

A :class:`CanonicalMap` keeps its polynomial components and, when it was
built from Lie generators, the generators themselves so that it can also be
evaluated exactly through the time-one flows.
"""
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .collocation import collocation_step, gauss_tableau
from .majorant import majorant_norm
from .poly import (PolySeries,
                   SeriesEvaluator,
                   STANDARD_SYMPLECTIC,
                   coerce_array,
                   common_mode,
                   compose_all,
                   poisson_bracket)
from .utils import hamiltonian_field
from ..constants import (NVARS,
                         CHART_ORIGINAL,
                         MODE_FLOAT,
                         MODE_RATIONAL,
                         MODE_COMPLEX,
                         LIE_FLOW_MAX_ITER,
                         LIE_FLOW_TOL,
                         LIE_FLOW_STAGES,
                         LIE_FLOW_STEP_BOUND,
                         LIE_FLOW_MAX_SUBSTEPS,
                         LIE_SERIES_MAX_TERMS)
from ..errors import PolyStructureError, PolyContractError, RadiusTooLargeError
from ..log_config import logger


def lie_series(f, S, max_degree=None, tol=0.0, max_terms=LIE_SERIES_MAX_TERMS):
    """
    Formal ``exp(ad_S) f = f + {f, S} + {{f, S}, S}/2 + ...``, which equals
    ``f`` composed with the time-one flow of ``S``.

    Args:
        f (PolySeries): transformed series.
        S (PolySeries): generator.
        max_degree (int): truncation degree (largest of the inputs by default).
        tol (float): stop once a term's largest coefficient drops below it.
        max_terms (int): bound on the number of brackets (reached only by
            generators with a quadratic part).

    Returns:
        PolySeries: the transformed series.
    """
    if max_degree is None:
        max_degree = max(f.max_degree, S.max_degree)
    f = f.with_degree(max_degree)
    S = S.with_degree(max_degree)
    result = f
    if S.is_zero():
        return result
    term = f
    exact = common_mode(f.mode, S.mode) == MODE_RATIONAL
    for k in range(1, max_terms + 1):
        term = poisson_bracket(term, S) / k
        if term.is_zero():
            break
        result = result + term
        if not exact:
            size = term.norm()
            if size <= tol or size <= 1e-17 * max(1.0, result.norm()):
                break
    return result


class HamiltonianVectorField(object):
    """
    Vectorized ``J grad S`` of a polynomial Hamiltonian, with its Jacobian
    ``J Hess S`` for variational equations.

    Args:
        S (PolySeries): Hamiltonian in the four phase variables.
    """

    def __init__(self, S):
        if S.nvars != NVARS:
            raise PolyStructureError('vector field needs a phase-space series')
        self.S = S
        self._gradient = SeriesEvaluator(S.gradient_series())
        second = [S.diff(i).diff(j) for i in range(NVARS) for j in range(NVARS)]
        self._hessian = SeriesEvaluator(second)
        self._second = second

    def __repr__(self):
        return '<{}(degree={}) object at {}>'.format(
            self.__class__.__name__, self.S.degree, hex(id(self)))

    def __call__(self, t, x):
        return hamiltonian_field(self._gradient(x))

    def jacobian(self, x):
        hess = self._hessian(x).reshape(x.shape[:-1] + (NVARS, NVARS))
        return np.einsum('ij,...jk->...ik', STANDARD_SYMPLECTIC.matrix, hess)

    def variational(self, t, y):
        x = y[..., :NVARS]
        phi = y[..., NVARS:].reshape(y.shape[:-1] + (NVARS, NVARS))
        dphi = np.einsum('...ij,...jk->...ik', self.jacobian(x), phi)
        return np.concatenate(
            [self(t, x), dphi.reshape(y.shape[:-1] + (NVARS * NVARS,))],
            axis=-1)

    def lipschitz_bound(self, radius):
        """
        Majorant bound of the Hessian entries on the polydisc of a radius.
        """
        return max([majorant_norm(s, radius) for s in self._second] + [0.0])


def lie_transform_flow(S, x, t=1.0, jacobian=False, field=None):
    """
    Time-``t`` Hamiltonian flow of a generator, by fixed-step Gauss
    collocation (order 8) with the substep count set from a majorant of the
    Hessian of ``S`` on the polydisc of radius ``2 |x|``.

    Args:
        S (PolySeries): generator.
        x (numpy.ndarray): points of shape (..., 4).
        t (float): flow time, ``1`` gives the Lie transform.
        jacobian (bool): also return the flow Jacobians.
        field (HamiltonianVectorField): cached field of ``S``.

    Returns:
        numpy.ndarray or tuple: the image points, and the Jacobians of shape
        (..., 4, 4) when requested.
    """
    x = np.asarray(x, dtype=float)
    shape = x.shape
    points = x.reshape(-1, NVARS)
    eye = np.broadcast_to(np.eye(NVARS), (len(points), NVARS, NVARS))
    if S.is_zero() or t == 0 or not len(points):
        if jacobian:
            return x.copy(), eye.reshape(shape[:-1] + (NVARS, NVARS)).copy()
        return x.copy()
    field = field or HamiltonianVectorField(S)
    radius = 2.0 * float(np.max(np.abs(points))) + 1e-12
    lipschitz = field.lipschitz_bound(radius)
    substeps = max(1, int(math.ceil(abs(t) * lipschitz / LIE_FLOW_STEP_BOUND)))
    if substeps > LIE_FLOW_MAX_SUBSTEPS:
        raise RadiusTooLargeError(
            'Lie flow needs {} substeps at radius {:.3g}'.format(
                substeps, radius))
    if jacobian:
        state = np.concatenate([points, eye.reshape(-1, NVARS * NVARS)], axis=1)
        rhs = field.variational
    else:
        state = points.copy()
        rhs = field
    h = t / substeps
    tableau = gauss_tableau(LIE_FLOW_STAGES)
    converged = True
    for step in range(substeps):
        state, ok, _ = collocation_step(rhs, step * h, state, h, tableau,
                                        max_iter=LIE_FLOW_MAX_ITER,
                                        tol=LIE_FLOW_TOL)
        if not ok:
            converged = False
            break
    if not converged:
        logger.debug('collocation did not converge, falling back to DOP853')
        start = (np.concatenate([points, eye.reshape(-1, NVARS * NVARS)], axis=1)
                 if jacobian else points)
        state = np.array([
            solve_ivp(lambda s, y: rhs(s, y[None])[0], (0.0, t), y0,
                      method='DOP853', rtol=1e-13, atol=1e-15).y[:, -1]
            for y0 in start])
    image = state[:, :NVARS].reshape(shape)
    if jacobian:
        return image, state[:, NVARS:].reshape(shape[:-1] + (NVARS, NVARS))
    return image


def linear_part(components):
    """
    Returns:
        numpy.ndarray: matrix of the degree-one coefficients of a map.
    """
    n = len(components)
    mode = common_mode(*[c.mode for c in components])
    matrix = np.zeros((n, components[0].nvars),
                      dtype=complex if mode == MODE_COMPLEX else float)
    for i, comp in enumerate(components):
        for j in range(comp.nvars):
            exps = [0] * comp.nvars
            exps[j] = 1
            matrix[i, j] = complex(comp.coefficient(exps)) \
                if mode == MODE_COMPLEX else float(comp.coefficient(exps))
    return matrix


def series_inverse(components, max_degree=None):
    """
    Compositional inverse of a polynomial map with invertible linear part,
    by the fixed point ``G = A^-1 (y - N(G(y)))`` which gains one degree per
    sweep.

    Args:
        components (list[PolySeries]): map ``x -> A x + N(x)`` with no
            constant terms.
        max_degree (int): truncation degree.

    Returns:
        list[PolySeries]: components of the inverse.
    """
    components = list(components)
    n = len(components)
    if any(c.nvars != n for c in components):
        raise PolyStructureError('only square maps can be inverted')
    if max_degree is None:
        max_degree = max(c.max_degree for c in components)
    mode = common_mode(*[c.mode for c in components])
    if mode == MODE_RATIONAL:
        mode = MODE_FLOAT
    comps = [c.with_degree(max_degree).astype(mode) for c in components]
    if any(c.coefficients[0] != 0 for c in comps):
        raise PolyContractError('series inverse needs a map fixing the origin')
    A = linear_part(comps)
    A_inv = np.linalg.inv(A)
    nonlinear = [c.grade_range(2, max_degree) for c in comps]
    ys = PolySeries.variables(n, max_degree, mode)
    guess = [sum((ys[j] * A_inv[i, j] for j in range(n) if A_inv[i, j] != 0),
                 PolySeries.zero(n, max_degree, mode)) for i in range(n)]
    for _ in range(max_degree - 1):
        pushed = compose_all(nonlinear, guess, max_degree)
        rhs = [ys[i] - pushed[i] for i in range(n)]
        guess = [sum((rhs[j] * A_inv[i, j] for j in range(n)
                      if A_inv[i, j] != 0),
                     PolySeries.zero(n, max_degree, mode)) for i in range(n)]
    return guess


class CanonicalMap(object):
    """
    Polynomial map of the phase space together with the Lie generators it
    was built from, if any. With ``generators = [S_1, S_2, ...]`` the map is
    ``phi_S1 o phi_S2 o ...`` where ``phi_S`` is the time-one flow of ``S``.

    Args:
        components (list[PolySeries]): the four component series.
        generators (list[PolySeries]): Lie generators or None.
        source (str): chart tag of the arguments.
        target (str): chart tag of the values.
        name (str): label used in manifests.
    """

    def __init__(self, components, generators=None, source=CHART_ORIGINAL,
                 target=CHART_ORIGINAL, name='map'):
        components = list(components)
        if len(components) != NVARS or any(c.nvars != NVARS for c in components):
            raise PolyStructureError('a canonical map has four components in '
                                     'four variables')
        degree = max(c.max_degree for c in components)
        self._components = [c.with_degree(degree) for c in components]
        self._generators = None if generators is None else list(generators)
        self._fields = None
        self._evaluator = None
        self._jacobian = None
        self.source = source
        self.target = target
        self.name = name

    def __repr__(self):
        return '<{}("{}" {}->{} degree={}) object at {}>'.format(
            self.__class__.__name__, self.name, self.source, self.target,
            self.max_degree, hex(id(self)))

    # === CONSTRUCTORS ===

    @classmethod
    def identity(cls, max_degree=1, mode=MODE_FLOAT, chart=CHART_ORIGINAL):
        return cls(PolySeries.variables(NVARS, max_degree, mode), [],
                   source=chart, target=chart, name='identity')

    @classmethod
    def from_generators(cls, generators, max_degree, source=CHART_ORIGINAL,
                        target=CHART_ORIGINAL, name='lie'):
        """
        Build ``phi_S1 o phi_S2 o ...`` with components truncated at
        ``max_degree``.
        """
        generators = [S.with_degree(max_degree) for S in generators]
        mode = common_mode(*[S.mode for S in generators]) \
            if generators else MODE_FLOAT
        comps = PolySeries.variables(NVARS, max_degree, mode)
        for S in generators:
            comps = [lie_series(c, S, max_degree) for c in comps]
        return cls(comps, generators, source, target, name)

    @classmethod
    def linear(cls, matrix, max_degree=1, source=CHART_ORIGINAL,
               target=CHART_ORIGINAL, name='linear'):
        """
        The linear map ``x -> matrix x``.
        """
        matrix = np.asarray(matrix)
        mode = MODE_COMPLEX if np.iscomplexobj(matrix) else MODE_FLOAT
        xs = PolySeries.variables(NVARS, max_degree, mode)
        comps = [sum((xs[j] * matrix[i, j] for j in range(NVARS)
                      if matrix[i, j] != 0),
                     PolySeries.zero(NVARS, max_degree, mode))
                 for i in range(NVARS)]
        return cls(comps, None, source, target, name)

    # === PROPERTIES ===

    @property
    def components(self):
        return list(self._components)

    @property
    def generators(self):
        return None if self._generators is None else list(self._generators)

    @property
    def max_degree(self):
        return self._components[0].max_degree

    @property
    def mode(self):
        return common_mode(*[c.mode for c in self._components])

    @property
    def linear_part(self):
        return linear_part(self._components)

    # === EVALUATION ===

    def _check_method(self, method):
        if method not in ('series', 'flow'):
            raise PolyContractError('unknown evaluation method "{}"'.format(method))
        if method == 'flow' and self._generators is None:
            raise PolyContractError(
                'map "{}" has no generators to flow'.format(self.name))

    def _flow_fields(self):
        if self._fields is None:
            self._fields = [HamiltonianVectorField(S.astype(MODE_FLOAT))
                            for S in self._generators]
        return self._fields

    def __call__(self, x, method='series'):
        """
        Evaluate at points of shape (..., 4).

        Args:
            x (numpy.ndarray): points.
            method (str): ``'series'`` evaluates the truncated components,
                ``'flow'`` applies the generator flows (innermost first).
        """
        self._check_method(method)
        x = np.asarray(x)
        if method == 'flow':
            y = np.asarray(x, dtype=float)
            for S, field in reversed(list(zip(self._generators,
                                              self._flow_fields()))):
                y = lie_transform_flow(S, y, 1.0, field=field)
            return y
        if self._evaluator is None:
            self._evaluator = SeriesEvaluator(self._components)
        return self._evaluator(x)

    def jacobian(self, x, method='series'):
        """
        Returns:
            numpy.ndarray: Jacobians of shape (..., 4, 4).
        """
        self._check_method(method)
        x = np.asarray(x)
        if method == 'flow':
            y = np.asarray(x, dtype=float)
            total = np.broadcast_to(np.eye(NVARS), x.shape[:-1] + (NVARS, NVARS))
            for S, field in reversed(list(zip(self._generators,
                                              self._flow_fields()))):
                y, D = lie_transform_flow(S, y, 1.0, jacobian=True, field=field)
                total = np.einsum('...ij,...jk->...ik', D, total)
            return total
        if self._jacobian is None:
            self._jacobian = SeriesEvaluator(
                [c.diff(j) for c in self._components for j in range(NVARS)])
        return self._jacobian(x).reshape(x.shape[:-1] + (NVARS, NVARS))

    def symplecticity_defect(self, x, method='series'):
        """
        Returns:
            numpy.ndarray: max-norm of ``D^T J D - J`` at each point.
        """
        D = self.jacobian(x, method)
        if np.iscomplexobj(D):
            J = STANDARD_SYMPLECTIC.matrix
            gap = np.einsum('...ji,jk,...kl->...il', D, J, D) - J
            return np.max(np.abs(gap), axis=(-2, -1))
        return STANDARD_SYMPLECTIC.defect(D)

    # === ALGEBRA ===

    def compose(self, other, max_degree=None):
        """
        Returns:
            CanonicalMap: ``self o other``.
        """
        degree = max_degree or max(self.max_degree, other.max_degree)
        comps = compose_all(self._components,
                            [c.with_degree(degree) for c in other.components],
                            degree)
        generators = None
        if self._generators is not None and other._generators is not None:
            generators = self._generators + other._generators
        return CanonicalMap(comps, generators, other.source, self.target,
                            '{}*{}'.format(self.name, other.name))

    def inverse(self, max_degree=None):
        degree = max_degree or self.max_degree
        name = '{}^-1'.format(self.name)
        if self._generators is not None:
            inverse = CanonicalMap.from_generators(
                [-S for S in reversed(self._generators)], degree,
                self.target, self.source, name)
            return inverse
        comps = series_inverse(self._components, degree)
        return CanonicalMap(comps, None, self.target, self.source, name)

    def transform_hamiltonian(self, H, max_degree=None):
        """
        Returns:
            PolySeries: ``H o self`` truncated at ``max_degree``.
        """
        degree = max_degree or max(H.max_degree, self.max_degree)
        if self._generators is not None:
            result = H.with_degree(degree)
            for S in self._generators:
                result = lie_series(result, S, degree)
            return result
        return H.compose([c.with_degree(degree) for c in self._components],
                         degree)

    def truncate(self, degree):
        comps = [c.with_degree(degree) for c in self._components]
        generators = None if self._generators is None else \
            [S.with_degree(degree) for S in self._generators]
        return CanonicalMap(comps, generators, self.source, self.target,
                            self.name)

    def astype(self, mode):
        comps = [c.astype(mode) for c in self._components]
        generators = None if self._generators is None else \
            [S.astype(mode) for S in self._generators]
        return CanonicalMap(comps, generators, self.source, self.target,
                            self.name)

    # === SERIALIZATION ===

    def to_text(self):
        """
        Components in the canonical series text form, one block each.
        """
        return ''.join(c.to_text() for c in self._components)

    @property
    def to_dict(self):
        return {
            'name': self.name,
            'source': self.source,
            'target': self.target,
            'max_degree': self.max_degree,
            'components': [c.to_dict for c in self._components],
            'generators': (None if self._generators is None
                           else [S.to_dict for S in self._generators]),
        }

    @classmethod
    def from_dict(cls, data):
        generators = data.get('generators')
        return cls([PolySeries.from_dict(c) for c in data['components']],
                   None if generators is None
                   else [PolySeries.from_dict(g) for g in generators],
                   data['source'], data['target'], data['name'])


def flow_matrix(S, t=1.0):
    """
    Matrix ``exp(t J Hess S)`` of the flow of a quadratic generator.
    """
    quadratic = S.homogeneous_part(2).astype(MODE_FLOAT)
    hess = np.array([[float(quadratic.diff(i).diff(j).coefficient((0,) * NVARS))
                      for j in range(NVARS)] for i in range(NVARS)])
    return expm(t * STANDARD_SYMPLECTIC.matrix.dot(hess))


def quadratic_matrix(H2):
    """
    ``L0`` with ``L0 x = J grad H2(x)`` for a quadratic Hamiltonian.
    """
    quadratic = H2.homogeneous_part(2)
    mode = MODE_COMPLEX if quadratic.mode == MODE_COMPLEX else MODE_FLOAT
    hess = np.array([[coerce_array([quadratic.diff(i).diff(j).coefficient(
        (0,) * NVARS)], mode)[0] for j in range(NVARS)] for i in range(NVARS)])
    return STANDARD_SYMPLECTIC.matrix.dot(hess)
