#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Local normalization near the saddle-center: a polynomial canonical chart
``F`` with ``H o F = K(xi1 eta1, xi2^2 + eta2^2)`` through a fixed degree.

The construction complexifies the elliptic block, solves the conjugacy for a
mixed-variable generating function degree by degree, fixes the remaining
action-dependent freedom with a bracket criterion on the diagonal terms and
realifies the result.
"""
import math

import numpy as np

from .base.canonical import CanonicalMap
from .base.majorant import majorant_norm
from .base.poly import PolySeries, SeriesEvaluator, compose_all, monomial_basis
from .base.utils import (random_ball,
                         random_directions,
                         series_exp,
                         series_reciprocal)
from .constants import (NVARS,
                        CHART_JORDAN,
                        CHART_LOCAL,
                        CHART_RADIUS_TOL,
                        DEFAULT_MOSER_DEGREE,
                        MODE_COMPLEX,
                        MODE_FLOAT,
                        REALNESS_TOL)
from .errors import PolyContractError, RealnessError, ResonanceError
from .log_config import logger

_SQRT_HALF = 1.0 / math.sqrt(2.0)

#: (x1, x2, y1, y2) -> (q1, q2, p1, p2) with q2 = (x2 + i y2)/sqrt 2 and
#: p2 = (i x2 + y2)/sqrt 2, so that q2^2 + p2^2 = 2 i x2 y2.
COMPLEXIFY_MATRIX = np.array([[1, 0, 0, 0],
                              [0, _SQRT_HALF, 0, 1j * _SQRT_HALF],
                              [0, 0, 1, 0],
                              [0, 1j * _SQRT_HALF, 0, _SQRT_HALF]])
REALIFY_MATRIX = np.linalg.inv(COMPLEXIFY_MATRIX)

#: Coarsest and finest radii tried by the a-posteriori radius rule.
_RADIUS_GRID = (1e-4, 2.0, 161)
_QUADRATIC_TOL = 1e-12
_RESONANCE_TOL = 1e-12


def _linear_components(matrix, max_degree):
    return CanonicalMap.linear(matrix, max_degree).components


def _real_series(f, what, tol=REALNESS_TOL):
    if f.mode != MODE_COMPLEX:
        return f.astype(MODE_FLOAT)
    c = f.coefficients
    # imaginary parts are measured against the largest term of their grade.
    scale = np.ones(len(c))
    for degree in range(f.max_degree + 1):
        grade = f.basis.grade(degree)
        if grade.stop > grade.start:
            scale[grade] = max(1.0, float(np.abs(c[grade]).max()))
    residue = np.abs(c.imag)
    bad = residue > tol * scale
    if np.any(bad):
        raise RealnessError('{}: imaginary residue {:.3e} after '
                            'realification'.format(what, float(residue.max())))
    return f.real


def complexify(H):
    """
    Write a real Hamiltonian in the coordinates (x1, x2, y1, y2) where the
    elliptic block is diagonal.

    Returns:
        PolySeries: complex series; ``Omega (q2^2 + p2^2)`` becomes
        ``2 i Omega x2 y2`` and the saddle block is untouched.
    """
    return H.compose(_linear_components(COMPLEXIFY_MATRIX, H.max_degree),
                     H.max_degree)


def realify(H_complex, tol=REALNESS_TOL):
    """
    Inverse of :func:`complexify`.

    Raises:
        RealnessError: when the result has non-negligible imaginary parts.
    """
    degree = H_complex.max_degree
    real = H_complex.compose(_linear_components(REALIFY_MATRIX, degree), degree)
    return _real_series(real, 'hamiltonian', tol)


def realify_invariants(K_star, tol=REALNESS_TOL):
    """
    ``K(w1, I2) = K*(w1, -i I2 / 2)``: the complex invariant
    ``xi2 eta2`` equals ``-i/2 (xi2^2 + eta2^2)`` in the real chart.
    """
    K = K_star.map_terms(lambda exps, c: c * (-0.5j) ** exps[1], MODE_COMPLEX)
    return _real_series(K, 'K', tol)


# === GENERATING FUNCTION ===

def _quadratic_rates(H):
    """
    Returns:
        tuple: ``(a1, a2)`` with quadratic part ``a1 x1 y1 + a2 x2 y2``.
    """
    low = H.truncate(2)
    a1 = complex(H.coefficient((1, 0, 1, 0)))
    a2 = complex(H.coefficient((0, 1, 0, 1)))
    x1, x2, y1, y2 = PolySeries.variables(NVARS, 2, MODE_COMPLEX)
    rest = low - x1 * y1 * a1 - x2 * y2 * a2
    scale = max(1.0, abs(a1), abs(a2))
    if rest.norm() > _QUADRATIC_TOL * scale:
        raise PolyContractError('quadratic part is not a1 x1 y1 + a2 x2 y2 '
                                '(residue {:.3e})'.format(rest.norm()))
    if a1 == 0 or a2 == 0:
        raise PolyContractError('both quadratic rates must be non-zero')
    return a1, a2


def conjugacy_defect(H_complex, w, K, degree):
    """
    ``H(x, eta + w_x) - K((x1 + w_eta1) eta1, (x2 + w_eta2) eta2)`` truncated
    at ``degree``; zero through ``degree`` when ``W = x.eta + w`` generates a
    conjugacy.
    """
    xs = PolySeries.variables(NVARS, degree, MODE_COMPLEX)
    w = w.with_degree(degree)
    lhs = H_complex.compose([xs[0], xs[1], xs[2] + w.diff(0),
                             xs[3] + w.diff(1)], degree)
    invariants = [(xs[0] + w.diff(2)) * xs[2], (xs[1] + w.diff(3)) * xs[3]]
    return lhs - K.compose(invariants, degree)


class GeneratingFunction(object):
    """
    Mixed-variable generating function ``W(x, eta) = x1 eta1 + x2 eta2 + w``
    of the complex chart: ``y = W_x`` and ``xi = W_eta``.

    Args:
        w (PolySeries): part of degree >= 3, variables stored as
            (x1, x2, eta1, eta2).
        a1 (complex): saddle rate of the quadratic part.
        a2 (complex): elliptic rate of the quadratic part.
        residuals (list[float]): conjugacy defect norm per degree.
    """

    def __init__(self, w, a1, a2, residuals=None):
        self.w = w
        self.a1 = a1
        self.a2 = a2
        self.residuals = list(residuals or [])

    def __repr__(self):
        return '<{}(degree={}, terms={}) object at {}>'.format(
            self.__class__.__name__, self.max_degree, len(self.w.terms),
            hex(id(self)))

    @property
    def max_degree(self):
        return self.w.max_degree

    @property
    def W(self):
        x1, x2, eta1, eta2 = PolySeries.variables(NVARS, self.max_degree,
                                                  MODE_COMPLEX)
        return x1 * eta1 + x2 * eta2 + self.w

    def chart(self):
        """
        The canonical map ``(xi, eta) -> (x, y)`` defined by ``W``, by series
        reversion of ``xi = x + w_eta(x, eta)``.

        Returns:
            CanonicalMap: complex chart map.
        """
        degree = self.max_degree
        xi1, xi2, eta1, eta2 = PolySeries.variables(NVARS, degree, MODE_COMPLEX)
        w_x = [self.w.diff(0), self.w.diff(1)]
        w_eta = [self.w.diff(2), self.w.diff(3)]
        X = [xi1, xi2]
        for _ in range(degree - 1):
            shift = compose_all(w_eta, [X[0], X[1], eta1, eta2], degree)
            X = [xi1 - shift[0], xi2 - shift[1]]
        Y = compose_all(w_x, [X[0], X[1], eta1, eta2], degree)
        return CanonicalMap([X[0], X[1], eta1 + Y[0], eta2 + Y[1]], None,
                            CHART_LOCAL, CHART_JORDAN, 'generating')

    @property
    def to_dict(self):
        return {'w': self.w.to_dict, 'a1': [self.a1.real, self.a1.imag],
                'a2': [self.a2.real, self.a2.imag],
                'residuals': self.residuals}


def solve_generating_function(H_complex, max_degree=DEFAULT_MOSER_DEGREE):
    """
    Solve ``H(x, W_x) = K(W_eta1 eta1, W_eta2 eta2)`` degree by degree.

    At degree N the new part of ``w`` enters through the diagonal operator
    with eigenvalue ``a1 (m1 - n1) + a2 (m2 - n2)`` on ``x^m eta^n``. Monomials
    with ``m = n`` go into ``K``; all others are divided out.

    Args:
        H_complex (PolySeries): complexified Hamiltonian.
        max_degree (int): truncation degree.

    Returns:
        tuple: (GeneratingFunction, K*) with ``K*`` a series in
        ``(xi1 eta1, xi2 eta2)``.
    """
    H = H_complex.with_degree(max_degree).astype(MODE_COMPLEX)
    if H.truncate(1).norm() > 0:
        raise PolyContractError('the Hamiltonian must start at degree 2')
    a1, a2 = _quadratic_rates(H)
    basis = monomial_basis(NVARS, max_degree)
    exps = basis.exponents
    eigen = a1 * (exps[:, 0] - exps[:, 2]) + a2 * (exps[:, 1] - exps[:, 3])
    resonant = (exps[:, 0] == exps[:, 2]) & (exps[:, 1] == exps[:, 3])
    scale = max(abs(a1), abs(a2))
    if np.any(~resonant & (np.abs(eigen) <= _RESONANCE_TOL * scale)):
        raise ResonanceError('zero eigenvalue on a non-resonant monomial '
                             '(a1={}, a2={})'.format(a1, a2))

    w_values = np.zeros(basis.size, dtype=complex)
    K_terms = {(1, 0): a1, (0, 1): a2}
    for degree in range(3, max_degree + 1):
        w = PolySeries(w_values, NVARS, max_degree, MODE_COMPLEX)
        K = PolySeries(K_terms, 2, max_degree // 2, MODE_COMPLEX)
        defect = conjugacy_defect(H, w, K, degree)
        grade = basis.grade(degree)
        f = defect.coefficients[defect.basis.grade(degree)]
        res = resonant[grade]
        values = np.zeros(f.shape, dtype=complex)
        values[~res] = -f[~res] / eigen[grade][~res]
        w_values[grade] = values
        for e, c in zip(exps[grade][res], f[res]):
            if c != 0:
                K_terms[(int(e[0]), int(e[1]))] = c
    w = PolySeries(w_values, NVARS, max_degree, MODE_COMPLEX)
    K = PolySeries(K_terms, 2, max_degree // 2, MODE_COMPLEX)
    final = conjugacy_defect(H, w, K, max_degree)
    residuals = [final.homogeneous_part(d).norm()
                 for d in range(3, max_degree + 1)]
    logger.debug('generating function solved through degree %d, final '
                 'defect %.3e', max_degree, final.norm())
    return GeneratingFunction(w, a1, a2, residuals), K


def normalizing_chart(W, max_degree):
    """
    Chart of ``W`` truncated at ``max_degree``.

    Chart terms of degree d are fixed by the conjugacy through degree d + 1,
    so ``W`` must be solved at least one degree beyond ``max_degree``. The
    unsolved top part of ``w`` is zero, which does not commute with the real
    structure, and the terms it feeds are dropped here.

    Raises:
        PolyContractError: when ``W`` is not solved far enough.
    """
    if W.max_degree <= max_degree:
        raise PolyContractError(
            'a degree {} chart needs W through degree {} (got {})'.format(
                max_degree, max_degree + 1, W.max_degree))
    return W.chart().truncate(max_degree)


# === DIAGONAL NORMALIZATION ===

def _diagonal_ratio(f, var):
    """
    ``[f / z]`` for the local variable ``z`` number ``var``: the terms
    ``z * (xi1 eta1)^a (xi2 eta2)^b`` of ``f`` as a series in (w1, w2).
    """
    exps = f.basis.exponents.astype(int)
    values = f.coefficients
    shifted = exps.copy()
    shifted[:, var] -= 1
    keep = np.nonzero((exps[:, var] >= 1)
                      & (shifted[:, 0] == shifted[:, 2])
                      & (shifted[:, 1] == shifted[:, 3])
                      & (values != 0))[0]
    terms = {(int(shifted[i, 0]), int(shifted[i, 1])): values[i] for i in keep}
    return PolySeries(terms, 2, (f.max_degree - 1) // 2, f.mode)


def diagonal_brackets(F):
    """
    Returns:
        tuple: ``([phi1/xi1], [phi2/xi2], [psi1/eta1], [psi2/eta2])``.
    """
    comps = F.components
    return tuple(_diagonal_ratio(comps[v], v) for v in range(NVARS))


def criterion_residual(F):
    """
    ``w1 ([phi1/xi1] - [psi1/eta1]) + w2 ([phi2/xi2] - [psi2/eta2])``.

    The weight of the elliptic block is real in this complexification, which
    keeps the criterion invariant under the real structure.
    """
    A1, A2, B1, B2 = diagonal_brackets(F)
    degree = (F.max_degree + 1) // 2
    w1, w2 = PolySeries.variables(2, degree, F.mode)
    return w1 * (A1 - B1) + w2 * (A2 - B2)


def action_reparametrization(S, max_degree):
    """
    The time-one flow of ``S(xi1 eta1, xi2 eta2)``:
    ``xi_i -> xi_i exp(s_i)``, ``eta_i -> eta_i exp(-s_i)`` with
    ``s_i = dS/dw_i``.
    """
    xs = PolySeries.variables(NVARS, max_degree, S.mode)
    invariants = [xs[0] * xs[2], xs[1] * xs[3]]
    s = compose_all([S.diff(0), S.diff(1)], invariants, max_degree)
    comps = [xs[0] * series_exp(s[0]), xs[1] * series_exp(s[1]),
             xs[2] * series_exp(-s[0]), xs[3] * series_exp(-s[1])]
    return CanonicalMap(comps, None, CHART_LOCAL, CHART_LOCAL, 'action')


def criterion_generator(F_tilde):
    """
    The action function ``S`` (no constant term) for which
    ``F_tilde o action_reparametrization(S)`` satisfies the criterion.

    At degree d a change ``dS`` moves the residual by ``2 d dS`` in the lowest
    order, so one sweep over the degrees solves it.
    """
    degree = F_tilde.max_degree
    top = (degree + 1) // 2
    S = PolySeries.zero(2, top, F_tilde.mode)
    for d in range(1, top + 1):
        F = F_tilde if S.is_zero() else \
            F_tilde.compose(action_reparametrization(S, degree))
        residual = criterion_residual(F).with_degree(top)
        S = S - residual.homogeneous_part(d) / (2.0 * d)
    return S


def enforce_criterion_Q(F_tilde):
    """
    Returns:
        CanonicalMap: ``F_tilde`` composed with the action reparametrization
        that makes the diagonal brackets satisfy the criterion.
    """
    S = criterion_generator(F_tilde)
    if S.is_zero():
        return F_tilde
    F = F_tilde.compose(action_reparametrization(S, F_tilde.max_degree))
    F.name = 'criterion'
    logger.debug('criterion residual after reparametrization %.3e',
                 criterion_residual(F).norm())
    return F


def moser_type_normalization(F_tilde):
    """
    Reparametrize so that every diagonal bracket equals 1.

    The result ``F_tilde(xi u(w), eta v(w))`` is not canonical in general; it
    differs from the criterion chart only by an action-dependent scaling.
    """
    degree = F_tilde.max_degree
    top = (degree + 1) // 2
    mode = F_tilde.mode
    A = [b.with_degree(top) for b in diagonal_brackets(F_tilde)]
    w = PolySeries.variables(2, top, mode)
    one = PolySeries.constant(1, 2, top, mode)
    u = [one, one]
    v = [one, one]
    for _ in range(top + 1):
        actions = [u[i] * v[i] * w[i] for i in range(2)]
        images = compose_all(A, actions, top)
        u = [series_reciprocal(images[0]), series_reciprocal(images[1])]
        v = [series_reciprocal(images[2]), series_reciprocal(images[3])]
    xs = PolySeries.variables(NVARS, degree, mode)
    scales = compose_all(u + v, [xs[0] * xs[2], xs[1] * xs[3]], degree)
    R = CanonicalMap([xs[i] * scales[i] for i in range(NVARS)], None,
                     CHART_LOCAL, CHART_LOCAL, 'moser-scaling')
    F = F_tilde.compose(R)
    F.name = 'moser-type'
    return F


# === REAL CHART ===

def chart_radius(F, samples=64, seed=0, tol=CHART_RADIUS_TOL):
    """
    Largest radius where the degree-d and degree-(d-2) truncations of ``F``
    differ by less than ``tol`` along random directions.
    """
    degree = F.max_degree
    tails = [c.grade_range(degree - 1, degree).astype(MODE_FLOAT)
             for c in F.components]
    if all(t.is_zero() for t in tails):
        return _RADIUS_GRID[1]
    directions = random_directions(np.random.default_rng(seed), samples)
    radii = np.geomspace(*_RADIUS_GRID)
    gaps = np.abs(SeriesEvaluator(tails)(radii[:, None, None]
                                         * directions[None]))
    gaps = gaps.max(axis=(1, 2))
    bad = np.nonzero(gaps >= tol)[0]
    if not len(bad):
        return float(radii[-1])
    if bad[0] == 0:
        return 0.0
    return float(radii[bad[0] - 1])


class LocalNormalization(object):
    """
    Real local chart ``F`` (local -> Jordan coordinates) with
    ``H o F = K(xi1 eta1, xi2^2 + eta2^2)`` through the truncation degree.

    Args:
        F (CanonicalMap): chart map.
        F_inverse (CanonicalMap): inverse chart, series reversion of ``F``.
        K (PolySeries): real series in ``(w1, I2)``.
        model (HamiltonianModel): model the chart normalizes.
        radius (float): validity radius; computed by :func:`chart_radius`
            when omitted.
        residuals (list[float]): generating function residual per degree.
    """

    def __init__(self, F, F_inverse, K, model=None, radius=None,
                 residuals=None):
        self.F = F
        self.F_inverse = F_inverse
        self.K = K
        self.model = model
        self.radius = chart_radius(F) if radius is None else float(radius)
        self.residuals = list(residuals or [])
        self._K = SeriesEvaluator([K])
        self._K_gradient = SeriesEvaluator(K.gradient_series())

    def __repr__(self):
        return '<{}(degree={}, radius={:.4g}) object at {}>'.format(
            self.__class__.__name__, self.max_degree, self.radius,
            hex(id(self)))

    @property
    def max_degree(self):
        return self.F.max_degree

    @property
    def params(self):
        """
        Returns:
            tuple: (epsilon, nu_hat, mu) of the model, or None.
        """
        if self.model is None:
            return None
        return self.model.epsilon, self.model.nu_hat, self.model.mu

    @property
    def linear_coefficients(self):
        """
        Coefficients of ``w1`` and ``I2`` in ``K``.
        """
        return (float(self.K.coefficient((1, 0))),
                float(self.K.coefficient((0, 1))))

    # === CHART MAPS ===

    def to_jordan(self, y):
        return self.F(np.asarray(y, dtype=float))

    def to_local(self, x, polish=2):
        """
        Series inverse followed by ``polish`` Newton steps on ``F(y) = x``.
        """
        x = np.asarray(x, dtype=float)
        y = np.asarray(self.F_inverse(x), dtype=float)
        for _ in range(polish):
            r = self.F(y) - x
            D = self.F.jacobian(y)
            y = y - np.linalg.solve(D, r[..., None])[..., 0]
        return y

    @staticmethod
    def invariants(y):
        """
        Returns:
            numpy.ndarray: ``(xi1 eta1, xi2^2 + eta2^2)`` stacked last.
        """
        y = np.asarray(y, dtype=float)
        return np.stack([y[..., 0] * y[..., 2],
                         y[..., 1] ** 2 + y[..., 3] ** 2], axis=-1)

    def energy(self, y):
        return self._K(self.invariants(y))[..., 0]

    def rates(self, y):
        """
        Returns:
            tuple: ``(a, b)`` with ``a = dK/dw1`` (hyperbolic rate) and
            ``b = 2 dK/dI2`` (clockwise angular rate of (xi2, eta2)).
        """
        g = self._K_gradient(self.invariants(y))
        return g[..., 0], 2.0 * g[..., 1]

    def local_field(self, t, y):
        """
        Hamiltonian field of ``K`` in the local chart.
        """
        y = np.asarray(y, dtype=float)
        a, b = self.rates(y)
        return np.stack([a * y[..., 0], b * y[..., 3],
                         -a * y[..., 2], -b * y[..., 1]], axis=-1)

    def local_flow(self, y, t):
        """
        Exact time-t flow of ``K``: both invariants are conserved so the rates
        are constant along orbits.
        """
        y = np.asarray(y, dtype=float)
        t = np.asarray(t, dtype=float)
        a, b = self.rates(y)
        angle = b * t
        c, s = np.cos(angle), np.sin(angle)
        return np.stack([y[..., 0] * np.exp(a * t),
                         y[..., 1] * c + y[..., 3] * s,
                         y[..., 2] * np.exp(-a * t),
                         -y[..., 1] * s + y[..., 3] * c], axis=-1)

    def conjugacy_residual(self, y, H=None):
        """
        ``|H(F(y)) - K(invariants(y))|`` at local points.
        """
        if H is None:
            H = self.model.polynomial()
        return np.abs(H(self.to_jordan(y)) - self.energy(y))

    # === SERIALIZATION ===

    @property
    def texts(self):
        return {'F': self.F.to_text(), 'F_inverse': self.F_inverse.to_text(),
                'K': self.K.to_text()}

    @property
    def to_dict(self):
        return {
            'max_degree': self.max_degree,
            'radius': self.radius,
            'radius_rule': 'gap between degree {} and {} below {}'.format(
                self.max_degree, self.max_degree - 2, CHART_RADIUS_TOL),
            'params': self.params,
            'K_linear': self.linear_coefficients,
            'residuals': self.residuals,
            'F': self.F.to_dict,
            'F_inverse': self.F_inverse.to_dict,
            'K': self.K.to_dict,
        }


def realify_and_package(F_star, K_star, model=None, residuals=None):
    """
    Conjugate the complex chart back to real coordinates and bundle it.

    Raises:
        RealnessError: when the chart or ``K`` keeps imaginary parts.
    """
    degree = F_star.max_degree
    P = CanonicalMap.linear(COMPLEXIFY_MATRIX, degree)
    P_inv = CanonicalMap.linear(REALIFY_MATRIX, degree)
    complex_chart = P.compose(F_star).compose(P_inv)
    comps = [_real_series(c, 'chart component {}'.format(i))
             for i, c in enumerate(complex_chart.components)]
    F = CanonicalMap(comps, None, CHART_LOCAL, CHART_JORDAN, 'moser')
    F_inverse = F.inverse()
    K = realify_invariants(K_star)
    return LocalNormalization(F, F_inverse, K, model, residuals=residuals)


def build_local_normalization(model, max_degree=DEFAULT_MOSER_DEGREE):
    """
    Full local chart construction for a Jordan-chart model. The generating
    function is solved at ``max_degree + 1`` and the chart is cut back to
    ``max_degree`` before the criterion and the realification.

    Args:
        model (HamiltonianModel): model; its polynomial is used where the
            cutoff equals 1.
        max_degree (int): truncation degree.

    Returns:
        LocalNormalization: the chart.
    """
    W, K_star = solve_generating_function(
        complexify(model.polynomial().with_degree(max_degree + 1)),
        max_degree + 1)
    F_star = enforce_criterion_Q(normalizing_chart(W, max_degree))
    local = realify_and_package(F_star, K_star.with_degree(max_degree // 2),
                                model, W.residuals)
    logger.info('local chart eps=%.4g nu_hat=%.4g: degree %d, radius %.4g',
                model.epsilon, model.nu_hat, max_degree, local.radius)
    return local


# === UNIFORMITY REPORT ===

def verify_uniform_estimates(charts, reference=None, samples=200, seed=0):
    """
    Fit the constants of the uniform chart estimates over a family.

    For every chart with ``nu_hat > 0``:

    * ``sup_difference``: ``max |F - F0| / nu_hat`` on the common ball;
    * ``majorant_difference``: ``max_i |F_i - F0_i|(r) / nu_hat``;
    * ``elliptic_drift``: ``max |phi2 - xi2|, |psi2 - eta2|`` over
      ``nu_hat |y|^2``.

    Failures are reported, never raised.

    Args:
        charts (list[LocalNormalization]): family sharing the degree.
        reference (LocalNormalization): chart at ``nu_hat = mu = 0``; built
            from the first member's model when omitted.
        samples (int): sample points in the common ball.
        seed (int): sampling seed.

    Returns:
        dict: report with per-estimate constants and spreads.
    """
    charts = list(charts)
    degrees = set(c.max_degree for c in charts)
    if reference is None:
        model = charts[0].model.with_parameters(nu_hat=0.0, mu=0.0)
        reference = build_local_normalization(model, charts[0].max_degree)
    radius = 0.5 * min([c.radius for c in charts] + [reference.radius])
    points = random_ball(np.random.default_rng(seed), samples, radius)
    points = points[np.linalg.norm(points, axis=1) > 0]
    base = reference.to_jordan(points)
    sq = np.sum(points ** 2, axis=1)

    estimates = {'sup_difference': [], 'majorant_difference': [],
                 'elliptic_drift': []}
    zero_slice = 0.0
    for chart in charts:
        nu_hat = chart.model.nu_hat if chart.model is not None else 0.0
        values = chart.to_jordan(points)
        diff = np.abs(values - base)
        if nu_hat == 0:
            zero_slice = max(zero_slice, float(diff.max()))
            continue
        estimates['sup_difference'].append(float(diff.max()) / nu_hat)
        estimates['majorant_difference'].append(max(
            majorant_norm(c - c0, radius)
            for c, c0 in zip(chart.F.components, reference.F.components))
            / nu_hat)
        drift = np.maximum(np.abs(values[:, 1] - points[:, 1]),
                           np.abs(values[:, 3] - points[:, 3]))
        estimates['elliptic_drift'].append(float(np.max(drift / sq)) / nu_hat)

    report = {'radius': radius, 'degrees': sorted(degrees),
              'zero_slice': zero_slice, 'estimates': {}}
    for name, constants in estimates.items():
        spread = None
        if constants and min(constants) > 0:
            spread = max(constants) / min(constants)
        report['estimates'][name] = {
            'constants': constants,
            'spread': spread,
            'bounded': spread is not None and spread < 2.0,
        }
        logger.info('estimate %s: constants %s, spread %s', name,
                    ['{:.3g}'.format(c) for c in constants], spread)
    return report
