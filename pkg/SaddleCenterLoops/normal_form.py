#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Hamiltonian normal forms near an equilibrium and the reduction of the
0^2 i omega family to its three-parameter scaled model.

The homological operator of a quadratic part ``H2`` is ``A S = {H2, S}``. At
every degree the part ``P`` to normalize is split as ``N = P + A S`` with
``N`` orthogonal to the range of ``A`` for the inner product
``<S, T> = sum a! s_a t_a``; the generator ``S`` is then applied as a Lie
transform.
"""
import math
from fractions import Fraction

import numpy as np
import sympy
from scipy.linalg import expm
from scipy.optimize import brentq

from .base.canonical import CanonicalMap, lie_series, quadratic_matrix
from .base.model import HamiltonianModel
from .base.poly import (PolySeries,
                        STANDARD_SYMPLECTIC,
                        coerce_array,
                        monomial_basis,
                        poisson_bracket)
from .base.utils import random_directions
from .constants import (NVARS,
                        CHART_ORIGINAL,
                        CHART_SCALED,
                        CHART_JORDAN,
                        DEFAULT_C3,
                        DEFAULT_K0,
                        DEFAULT_RHO0,
                        GRADE_TOL,
                        MAX_GRADE_ITERATIONS,
                        MODE_FLOAT,
                        MODE_RATIONAL,
                        SVD_RANK_TOL)
from .errors import (DegenerateHypothesisError,
                     HomologicalSolveError,
                     NormalFormError,
                     PolyContractError,
                     PolyStructureError,
                     ScalingError,
                     WrongHalfBifurcationError)
from .log_config import logger

#: Relative bound on the orthogonality residual of a float solve.
_ORTHOGONALITY_TOL = 1e-9
#: |c2| below this is treated as a vanishing cubic coefficient.
_CUBIC_TOL = 1e-12


def _fraction(value):
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def _sympy(value):
    value = Fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


class QuadraticPart(object):
    """
    Quadratic Hamiltonian ``H2`` with its linear field ``L0 x = J grad H2``
    and the matrices of the homological operator on each degree.

    Args:
        H2 (PolySeries): homogeneous quadratic Hamiltonian.
    """

    def __init__(self, H2):
        if H2.nvars != NVARS:
            raise PolyStructureError('quadratic part needs four variables')
        if not H2.is_zero() and not (H2.is_homogeneous() and H2.degree == 2):
            raise PolyContractError('quadratic part must be homogeneous of '
                                    'degree 2')
        self.H2 = H2.with_degree(2)
        self.L0 = quadratic_matrix(self.H2)
        self._matrices = {}

    def __repr__(self):
        return '<{}(terms={}) object at {}>'.format(
            self.__class__.__name__, len(self.H2.terms), hex(id(self)))

    @classmethod
    def resonant(cls, omega0=1.0, mode=MODE_FLOAT):
        """
        The 0^2 i omega quadratic part ``p1^2 / 2 + omega0 / 2 (q2^2 + p2^2)``.
        """
        half = Fraction(1, 2) if mode == MODE_RATIONAL else 0.5
        if mode == MODE_RATIONAL:
            omega0 = _fraction(omega0)
        q1, q2, p1, p2 = PolySeries.variables(NVARS, 2, mode)
        return cls(p1 * p1 * half + (q2 * q2 + p2 * p2) * (omega0 * half))

    @classmethod
    def elliptic(cls, omega1, omega2, mode=MODE_FLOAT):
        q1, q2, p1, p2 = PolySeries.variables(NVARS, 2, mode)
        return cls((q1 * q1 + p1 * p1) * (omega1 / 2.0)
                   + (q2 * q2 + p2 * p2) * (omega2 / 2.0))

    @property
    def eigenvalues(self):
        return np.linalg.eigvals(self.L0)

    @property
    def adjoint_hamiltonian(self):
        """
        ``H2 o (-J)``, whose bracket annihilates exactly the normal forms.
        """
        minus_j = -STANDARD_SYMPLECTIC.matrix
        xs = PolySeries.variables(NVARS, 2, self.H2.mode)
        subs = [sum((xs[j] * float(minus_j[i, j]) for j in range(NVARS)
                     if minus_j[i, j] != 0),
                    PolySeries.zero(NVARS, 2, self.H2.mode))
                for i in range(NVARS)]
        if self.H2.mode == MODE_RATIONAL:
            subs = [s.astype(MODE_RATIONAL) for s in subs]
        return self.H2.compose(subs, 2)

    def operator_matrix(self, degree, mode=None):
        """
        Matrix of ``S -> {H2, S}`` on the degree-``degree`` monomials.

        Returns:
            numpy.ndarray: square matrix, column j is the image of monomial j.
        """
        mode = mode or (MODE_RATIONAL if self.H2.mode == MODE_RATIONAL
                        else MODE_FLOAT)
        key = (degree, mode)
        if key not in self._matrices:
            basis = monomial_basis(NVARS, degree)
            grade = basis.grade(degree)
            H2 = self.H2.with_degree(degree).astype(mode)
            columns = []
            for exps in basis.exponents[grade]:
                image = poisson_bracket(
                    H2, PolySeries.monomial(exps, 1, degree, mode))
                columns.append(image.coefficients[grade])
            matrix = np.stack(columns, axis=1) if columns else \
                np.zeros((0, 0))
            self._matrices[key] = coerce_array(matrix, mode)
        return self._matrices[key]


def _grade_series(values, degree, mode):
    basis = monomial_basis(NVARS, degree)
    full = coerce_array(np.zeros(basis.size), mode)
    full[basis.grade(degree)] = values
    return PolySeries(full, NVARS, degree, mode)


def _decompose_float(A, g, p):
    w = np.sqrt(g)
    B = A * w[:, None] / w[None, :]
    U, s, Vt = np.linalg.svd(B)
    if not len(s) or s[0] == 0:
        return np.zeros_like(p), p
    keep = s > SVD_RANK_TOL * s[0]
    coords = U[:, keep].T.dot(w * p) / s[keep]
    S = -Vt[keep].T.dot(coords) / w
    N = p + A.dot(S)
    return S, N


def _decompose_rational(A, g, p):
    m = len(p)
    A = sympy.Matrix(m, m, lambda i, j: _sympy(A[i, j]))
    G = sympy.diag(*[int(v) for v in g])
    P = sympy.Matrix([_sympy(v) for v in p])
    normal = A.T * G * A
    rhs = -A.T * G * P
    S, params = normal.gauss_jordan_solve(rhs)
    if len(params):
        S = S.subs({t: 0 for t in params})
    kernel = A.nullspace()
    if kernel:
        K = sympy.Matrix.hstack(*kernel)
        S = S - K * (K.T * G * K).inv() * (K.T * G * S)
    N = P + A * S
    return (np.array([_fraction(v) for v in S], dtype=object),
            np.array([_fraction(v) for v in N], dtype=object))


def homological_decompose(P, quadratic, mode=None):
    """
    Split a homogeneous part into normal form and generator.

    Args:
        P (PolySeries): homogeneous part of degree >= 2.
        quadratic (QuadraticPart): quadratic part defining the operator.
        mode (str): ``'float'`` (SVD with a relative threshold) or
            ``'rational'`` (exact solve); follows ``P`` by default.

    Returns:
        tuple: (N, S) with ``N - {H2, S} = P``, ``N`` orthogonal to the range
        of the operator and ``S`` orthogonal to its kernel.

    Raises:
        HomologicalSolveError: the orthogonality residual is not small.
    """
    if P.nvars != NVARS:
        raise PolyStructureError('homological equation needs four variables')
    if not P.is_homogeneous():
        raise PolyContractError('homological equation needs a homogeneous part')
    degree = P.degree if not P.is_zero() else P.max_degree
    if degree < 2:
        raise PolyContractError('homological equation starts at degree 2')
    mode = mode or (MODE_RATIONAL if P.mode == MODE_RATIONAL else MODE_FLOAT)
    basis = monomial_basis(NVARS, degree)
    grade = basis.grade(degree)
    p = coerce_array(P.with_degree(degree).coefficients[grade], mode)
    A = quadratic.operator_matrix(degree, mode)
    g = basis.factorials[grade]
    if mode == MODE_RATIONAL:
        S, N = _decompose_rational(A, g, p)
        residual = A.T.dot(np.array([int(v) for v in g], dtype=object) * N)
        if any(v != 0 for v in residual):
            raise HomologicalSolveError(
                'exact solve left a non-orthogonal normal form at degree {}'
                .format(degree), residual=float(max(abs(v) for v in residual)))
    else:
        g = g.astype(float)
        S, N = _decompose_float(A, g, p)
        residual = float(np.max(np.abs(A.T.dot(g * N)))) if len(N) else 0.0
        scale = max(1.0, float(np.max(np.abs(p))) if len(p) else 0.0,
                    float(np.max(np.abs(A))) if A.size else 0.0)
        if residual > _ORTHOGONALITY_TOL * scale ** 2 * float(np.max(g)):
            raise HomologicalSolveError(
                'normal form at degree {} is not orthogonal to the range '
                '(residual {:.3g})'.format(degree, residual), residual=residual)
    return _grade_series(N, degree, mode), _grade_series(S, degree, mode)


class NormalFormResult(object):
    """
    Output of :func:`normal_form_pipeline`.

    Args:
        N (PolySeries): normal form through degree n, without the reference
            quadratic part.
        S_list (list[PolySeries]): generators in application order.
        transform (CanonicalMap): the normalizing map.
        remainder (PolySeries): degree n+1 part of the transformed
            Hamiltonian.
        quadratic (QuadraticPart): reference quadratic part.
        residuals (dict): degree -> largest coefficient of
            ``N_l - {H2, S_l} - P_l`` over the solves of that degree.
        iterations (dict): degree -> number of solves.
    """

    def __init__(self, N, S_list, transform, remainder, quadratic,
                 residuals=None, iterations=None):
        self.N = N
        self.S_list = list(S_list)
        self.transform = transform
        self.remainder = remainder
        self.quadratic = quadratic
        self.residuals = dict(residuals or {})
        self.iterations = dict(iterations or {})

    def __repr__(self):
        return '<{}(degree={}, generators={}) object at {}>'.format(
            self.__class__.__name__, self.degree, len(self.S_list),
            hex(id(self)))

    @property
    def degree(self):
        return self.remainder_degree - 1

    @property
    def remainder_degree(self):
        return self.remainder.max_degree

    @property
    def hamiltonian(self):
        """
        ``H2 + N + remainder``, the transformed Hamiltonian through degree
        n + 1.
        """
        return (self.quadratic.H2.with_degree(self.remainder_degree)
                + self.N.with_degree(self.remainder_degree) + self.remainder)

    def commutator_residual(self):
        """
        Largest coefficient of ``{H2 o (-J), N}``.
        """
        return poisson_bracket(self.quadratic.adjoint_hamiltonian, self.N).norm()

    def symplecticity(self, count=100, radius=0.1, seed=0):
        rng = np.random.default_rng(seed)
        points = radius * rng.random(count)[:, None] * random_directions(
            rng, count)
        return float(np.max(self.transform.symplecticity_defect(points,
                                                                'flow')))

    @property
    def to_dict(self):
        return {
            'degree': self.degree,
            'remainder_degree': self.remainder_degree,
            'mode': self.N.mode,
            'residuals': {str(k): float(v) for k, v in self.residuals.items()},
            'iterations': {str(k): int(v) for k, v in self.iterations.items()},
            'commutator_residual': float(self.commutator_residual()),
            'remainder_norm': float(self.remainder.norm()),
        }


def normal_form_pipeline(H, n, quadratic=None, mode=None):
    """
    Normalize a Hamiltonian through degree ``n``.

    When the quadratic part of ``H`` differs from the reference one (a
    parameter-dependent family) every degree is solved repeatedly until its
    generator vanishes.

    Args:
        H (PolySeries): Hamiltonian with H(0) = 0 and grad H(0) = 0.
        n (int): normalization degree (>= 2).
        quadratic (QuadraticPart): reference quadratic part, the quadratic
            part of ``H`` by default.
        mode (str): coefficient mode of the solves.

    Returns:
        NormalFormResult: the normal form.
    """
    if n < 2:
        raise PolyContractError('normalization degree must be at least 2')
    mode = mode or (MODE_RATIONAL if H.mode == MODE_RATIONAL else MODE_FLOAT)
    H = H.with_degree(n + 1).astype(mode)
    if H.grade_range(0, 1).norm() != 0:
        raise PolyContractError('Hamiltonian must vanish to second order at 0')
    if quadratic is None:
        quadratic = QuadraticPart(H.homogeneous_part(2))
    H2 = quadratic.H2.with_degree(n + 1).astype(mode)
    if mode == MODE_RATIONAL and not H.homogeneous_part(2).allclose(H2, 0):
        raise PolyContractError('rational normalization needs the reference '
                                'quadratic part')
    generators = []
    residuals = {}
    iterations = {}
    scale = max(1.0, H.norm())
    for degree in range(2, n + 1):
        residuals[degree] = 0.0
        for it in range(1, MAX_GRADE_ITERATIONS + 1):
            part = H.homogeneous_part(degree)
            if degree == 2:
                part = part - H2
            N, S = homological_decompose(part.with_degree(degree), quadratic,
                                         mode)
            check = (N - poisson_bracket(quadratic.H2.with_degree(degree)
                                         .astype(mode), S) - part
                     .with_degree(degree)).norm()
            residuals[degree] = max(residuals[degree], check)
            iterations[degree] = it
            if S.is_zero() or S.norm() <= GRADE_TOL * scale:
                break
            S = S.with_degree(n + 1)
            H = lie_series(H, S, n + 1)
            generators.append(S)
        else:
            raise NormalFormError(
                'degree {} did not settle after {} solves'.format(
                    degree, MAX_GRADE_ITERATIONS))
        logger.debug('degree {} normalized in {} solve(s), residual {:.3g}'
                     .format(degree, iterations[degree], residuals[degree]))
    N = (H - H2).truncate(n)
    remainder = H.homogeneous_part(n + 1)
    transform = CanonicalMap.from_generators(
        [S.with_degree(n) for S in generators], n,
        CHART_ORIGINAL, CHART_ORIGINAL, name='normal_form')
    return NormalFormResult(N, generators, transform, remainder, quadratic,
                            residuals, iterations)


def rotational_symmetrize_check(N, quadratic=None, samples=16, tol=1e-10,
                                seed=0):
    """
    Whether ``N`` is invariant under the adjoint linear flow ``exp(t L0^T)``.

    Checked algebraically with ``{H2 o (-J), N} = 0`` and by sampling
    ``N(exp(t L0^T) x) = N(x)``.

    Args:
        N (PolySeries): candidate normal form.
        quadratic (QuadraticPart): defaults to the resonant quadratic part
            with omega0 = 1.
        samples (int): number of sampled points and times.
        tol (float): tolerance of both checks.
    """
    quadratic = quadratic or QuadraticPart.resonant(1.0)
    if N.is_zero():
        return True
    if poisson_bracket(quadratic.adjoint_hamiltonian, N).norm() > tol:
        return False
    rng = np.random.default_rng(seed)
    points = random_directions(rng, samples) * 0.5
    scale = max(1.0, float(np.max(np.abs(N(points)))))
    N = N.astype(MODE_FLOAT)
    for t in rng.uniform(-2.0, 2.0, samples):
        moved = points.dot(expm(t * quadratic.L0.T).T)
        if np.max(np.abs(N(moved) - N(points))) > tol * scale:
            return False
    return True


def reduced_normal_form(N, tol=1e-10):
    """
    Rewrite a normal form of the resonant family as a series in (q1, I2).

    Returns:
        PolySeries: two-variable series with ``N = f(q1, q2^2 + p2^2)``.

    Raises:
        NormalFormError: ``N`` depends on p1 or on (q2, p2) other than
            through I2.
    """
    terms = {}
    for (a, c, b, d), value in N.terms.items():
        if c % 2 == 0 and b == 0 and d == 0:
            terms[(a, c // 2)] = value
    reduced = PolySeries(terms, 2, N.max_degree, N.mode)
    rebuilt = expand_reduced(reduced, N.max_degree)
    if (rebuilt.astype(MODE_FLOAT) - N.astype(MODE_FLOAT)).norm() > \
            tol * max(1.0, N.norm()):
        raise NormalFormError('normal form is not a function of (q1, I2)')
    return reduced


def expand_reduced(reduced, max_degree):
    """
    Substitute ``I2 = q2^2 + p2^2`` in a (q1, I2) series.
    """
    q1, q2, p1, p2 = PolySeries.variables(NVARS, max_degree, reduced.mode)
    return reduced.compose([q1, q2 * q2 + p2 * p2], max_degree)


# === RESONANT FAMILY ===

def _terms_from_entries(entries):
    return {tuple(e['exponents']): e['value'] for e in entries}


class ResonantFamily(object):
    """
    The unfolding of a 0^2 i omega equilibrium

    ``H = p1^2 / 2 + omega0 / 2 (q2^2 + p2^2) - c10 lam / 2 q1^2 + c20 q1^3
    + extra terms``

    Args:
        omega0 (float): frequency of the elliptic pair, positive.
        c10 (float): linear unfolding coefficient.
        c20 (float): cubic coefficient.
        extra (dict): ``{exponents: value}`` extra terms of degree >= 3.
        remainder (dict): ``{exponents: value}`` terms kept beyond the
            normalization degree.
        mode (str): coefficient mode.
    """

    def __init__(self, omega0=1.0, c10=1.0, c20=1.0, extra=None,
                 remainder=None, mode=MODE_FLOAT):
        self.omega0 = omega0
        self.c10 = c10
        self.c20 = c20
        self.extra = dict(extra or {})
        self.remainder = dict(remainder or {})
        self.mode = mode
        for exps in list(self.extra) + list(self.remainder):
            if len(exps) != NVARS or sum(exps) < 3:
                raise PolyStructureError(
                    'extra term {} must have degree >= 3'.format(exps))

    def __repr__(self):
        return '<{}(omega0={}, c10={}, c20={}) object at {}>'.format(
            self.__class__.__name__, self.omega0, self.c10, self.c20,
            hex(id(self)))

    @classmethod
    def from_config(cls, config):
        return cls(config['model.omega0'], config['model.c10'],
                   config['model.c20'],
                   _terms_from_entries(config['model.extra_coefficients']),
                   _terms_from_entries(config['model.remainder_coefficients']),
                   config['model.mode'])

    def quadratic(self):
        return QuadraticPart.resonant(self.omega0, self.mode)

    def hamiltonian(self, lam, max_degree):
        """
        Returns:
            PolySeries: the family at parameter ``lam``.
        """
        mode = self.mode
        half = Fraction(1, 2) if mode == MODE_RATIONAL else 0.5
        q1, q2, p1, p2 = PolySeries.variables(NVARS, max_degree, mode)
        H = (p1 * p1 * half + (q2 * q2 + p2 * p2) * (self.omega0 * half)
             - q1 * q1 * (self.c10 * lam * half) + q1 * q1 * q1 * self.c20)
        terms = dict(self.extra)
        for exps, value in self.remainder.items():
            terms[exps] = terms.get(exps, 0) + value
        return (H + PolySeries(terms, NVARS, max_degree, mode)).astype(mode)

    def normal_form(self, lam, n):
        return normal_form_pipeline(self.hamiltonian(lam, n + 1), n,
                                    self.quadratic(), self.mode)

    def unfolding_coefficient(self, lam, n):
        """
        ``c1(lam) = -2 [q1^2]`` of the normal form, the value of eps^4. Only
        the quadratic normal form is needed.
        """
        return -2.0 * float(self.normal_form(lam, min(n, 2)).N.coefficient(
            (2, 0, 0, 0)))


def parameter_for_epsilon(family, epsilon, n):
    """
    Invert the parameter change ``eps^4 = c1(lam)``.

    Returns:
        float: lam with ``c1(lam) = eps^4``.
    """
    if family.c10 == 0:
        raise DegenerateHypothesisError('c10 vanishes, lambda cannot unfold')
    target = epsilon ** 4
    guess = target / family.c10
    low, high = sorted((0.5 * guess, 2.0 * guess))
    func = lambda lam: family.unfolding_coefficient(lam, n) - target
    for _ in range(20):
        if func(low) * func(high) <= 0:
            break
        low, high = sorted((low * 0.5, high * 2.0)) if guess > 0 else \
            sorted((low * 2.0, high * 0.5))
    return brentq(func, low, high, xtol=1e-15 * abs(guess), rtol=1e-14)


def jordan_matrix():
    """
    Linear symplectic change from the Jordan chart to the scaled chart:
    ``q1 = (Q + P) / sqrt 2``, ``p1 = (P - Q) / sqrt 2``.
    """
    r = 1.0 / math.sqrt(2.0)
    L = np.eye(NVARS)
    L[0, 0], L[0, 2] = r, r
    L[2, 0], L[2, 2] = -r, r
    return L


class ScaledModel(object):
    """
    Rescaled normal form

    ``(p1^2 - q1^2) / 2 + c3 q1^3 + omega / (2 eps^2) I2 + eps^2 Q
    + eps^(4n - 8) R``

    in the scaled chart.

    Args:
        epsilon (float): scaled parameter.
        lam (float): original parameter.
        omega (float): omega(eps), twice the I2 coefficient of the normal form.
        c2 (float): q1^3 coefficient of the normal form.
        c3 (float): cubic coefficient after scaling.
        N_poly (PolySeries): scaled normal form (four variables).
        tail (PolySeries): ``Q``, the scaled normal-form terms beyond the
            cubic skeleton divided by eps^2.
        remainder (PolySeries): ``R``, the scaled degree n+1 remainder
            divided by eps^(4n - 8).
        n (int): normalization degree.
        rho0 (float): cutoff radius.
    """

    def __init__(self, epsilon, lam, omega, c2, c3, N_poly, tail, remainder, n,
                 rho0=DEFAULT_RHO0):
        self.epsilon = epsilon
        self.lam = lam
        self.omega = omega
        self.c2 = c2
        self.c3 = c3
        self.N_poly = N_poly
        self.tail = tail
        self.remainder = remainder
        self.n = n
        self.rho0 = rho0

    def __repr__(self):
        return '<{}(eps={:.4g}, omega={:.6g}) object at {}>'.format(
            self.__class__.__name__, self.epsilon, self.omega, hex(id(self)))

    @property
    def a(self):
        return self.c3 / self.c2

    @property
    def reduced(self):
        """
        ``N_poly`` as a series in (q1, I2).
        """
        return reduced_normal_form(self.N_poly)

    def jordan(self, series):
        """
        Express a scaled-chart series in the Jordan chart.
        """
        L = jordan_matrix()
        xs = PolySeries.variables(NVARS, series.max_degree)
        subs = [sum((xs[j] * L[i, j] for j in range(NVARS) if L[i, j] != 0),
                    PolySeries.zero(NVARS, series.max_degree))
                for i in range(NVARS)]
        return series.astype(MODE_FLOAT).compose(subs, series.max_degree)

    def jordan_map(self):
        return CanonicalMap.linear(jordan_matrix(), 1, CHART_JORDAN,
                                   CHART_SCALED, name='jordan')

    @property
    def to_dict(self):
        return {'epsilon': self.epsilon, 'lambda': self.lam,
                'omega': self.omega, 'c2': self.c2, 'c3': self.c3,
                'n': self.n, 'rho0': self.rho0,
                'tail_norm': self.tail.norm(),
                'remainder_norm': self.remainder.norm()}


def scale_and_reparametrize(nf, lam, c3=DEFAULT_C3, rho0=DEFAULT_RHO0):
    """
    Rescale the normal form of the resonant family at parameter ``lam``.

    With ``eps^4 = c1`` and ``a = c3 / c2`` the substitution
    ``q1 = a eps^4 Q1``, ``p1 = a eps^6 P1``, ``(q2, p2) = a eps^5 (Q2, P2)``
    and the division of the Hamiltonian by ``a^2 eps^12`` give the scaled
    skeleton.

    Raises:
        ScalingError: lam = 0.
        WrongHalfBifurcationError: c1 lam < 0 side of the bifurcation.
        DegenerateHypothesisError: c1 = 0 or c2 = 0.
    """
    if lam == 0:
        raise ScalingError('lambda = 0 gives epsilon = 0; scaling divides by '
                           'epsilon')
    N = nf.N.astype(MODE_FLOAT)
    n = nf.degree
    c1 = -2.0 * float(N.coefficient((2, 0, 0, 0)))
    c2 = float(N.coefficient((3, 0, 0, 0)))
    if c1 < 0:
        raise WrongHalfBifurcationError(
            'c1(lambda) = {:.6g} < 0: no saddle-center on this side'.format(c1))
    if c1 == 0 or abs(c2) < _CUBIC_TOL:
        raise DegenerateHypothesisError(
            'degenerate unfolding: c1 = {:.3g}, c2 = {:.3g}'.format(c1, c2))
    reduced_normal_form(N)
    eps = c1 ** 0.25
    a = c3 / c2
    omega = 2.0 * float(N.coefficient((0, 0, 0, 2)))
    p_half = float(nf.quadratic.H2.coefficient((0, 0, 2, 0)))
    omega += 2.0 * float(nf.quadratic.H2.coefficient((0, 0, 0, 2)))

    def scaled(series, shift):
        def factor(exps, value):
            j, c, b, d = exps
            power = 4 * j + 6 * b + 5 * (c + d) - 12 - shift
            return value * a ** (sum(exps) - 2) * eps ** power
        return series.map_terms(factor)

    full = nf.quadratic.H2.astype(MODE_FLOAT).with_degree(n) + N
    N_poly = scaled(full, 0)
    skeleton = {(2, 0, 0, 0), (3, 0, 0, 0), (0, 2, 0, 0), (0, 0, 0, 2),
                (0, 0, 2, 0)}
    tail = scaled(N.map_terms(
        lambda e, v: 0.0 if e in skeleton or sum(e) < 3 else v), 2)
    remainder = scaled(nf.remainder.astype(MODE_FLOAT), 4 * n - 8)
    if abs(p_half - 0.5) > 1e-12:
        logger.warning('p1^2 coefficient {} differs from 1/2'.format(p_half))
    logger.info('scaled model: lambda={:.6g} eps={:.6g} omega={:.6g} a={:.6g}'
                .format(lam, eps, omega, a))
    return ScaledModel(eps, lam, omega, c2, c3, N_poly, tail, remainder, n,
                       rho0)


def three_parameter_model(scaled, nu_hat, mu, N0=4 * DEFAULT_K0 + 1):
    """
    The family ``H(x, eps, nu_hat, mu)`` in the Jordan chart.

    ``nu_hat = 0`` keeps the cubic normal form, ``mu = 0`` the degree-n
    normal form and ``(nu_hat, mu) = (eps^2, eps^(4n - 8 - N0 - 2))`` the
    full system.
    """
    if N0 < 1:
        raise PolyContractError('N0 must be at least 1')
    if scaled.n < 3:
        raise PolyContractError('the family needs n >= 3')
    return HamiltonianModel(scaled.epsilon, scaled.omega,
                            Q=scaled.jordan(scaled.tail),
                            R=scaled.jordan(scaled.remainder),
                            nu_hat=nu_hat, mu=mu, N0=N0, c3=scaled.c3,
                            rho0=scaled.rho0)


def full_system_parameters(epsilon, n, N0):
    """
    Returns:
        tuple: (nu_hat, mu) of the full system.
    """
    return epsilon ** 2, epsilon ** (4 * n - 8 - N0 - 2)


def build_model(family, epsilon, n=2 * DEFAULT_K0 + 3, N0=4 * DEFAULT_K0 + 1,
                nu_hat=None, mu=None, c3=DEFAULT_C3, rho0=DEFAULT_RHO0):
    """
    Normalize, scale and package the family at a given epsilon.

    ``nu_hat`` and ``mu`` default to the full system values.

    Returns:
        tuple: (HamiltonianModel, ScaledModel, NormalFormResult).
    """
    lam = parameter_for_epsilon(family, epsilon, n)
    nf = family.normal_form(lam, n)
    scaled = scale_and_reparametrize(nf, lam, c3, rho0)
    full_nu, full_mu = full_system_parameters(scaled.epsilon, n, N0)
    model = three_parameter_model(scaled,
                                  full_nu if nu_hat is None else nu_hat,
                                  full_mu if mu is None else mu, N0)
    return model, scaled, nf
