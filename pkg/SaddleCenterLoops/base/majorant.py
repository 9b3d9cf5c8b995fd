#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Majorant toolkit for truncated series.

``f ≺ g`` holds when every coefficient of ``g`` is a non-negative real that
dominates the modulus of the matching coefficient of ``f``. The helpers
below build the majorant series used to bound the normalizing charts
uniformly in the parameters.
"""
from fractions import Fraction

import numpy as np

from .poly import (PolySeries,
                   coerce_array,
                   common_mode,
                   monomial_basis)
from ..constants import MODE_FLOAT, MODE_RATIONAL, MODE_COMPLEX
from ..errors import PolyContractError, PolyStructureError


def _abs_mode(mode):
    return MODE_RATIONAL if mode == MODE_RATIONAL else MODE_FLOAT


def majorant(f):
    """
    Coefficient-wise modulus ``|f|``.

    Args:
        f (PolySeries): any series.

    Returns:
        PolySeries: real series with non-negative coefficients.
    """
    if f.mode == MODE_RATIONAL:
        values = np.array([abs(c) for c in f.coefficients], dtype=object)
    else:
        values = np.abs(f.coefficients)
    return PolySeries(values, f.nvars, f.max_degree, _abs_mode(f.mode))


def _common(f, g):
    if f.nvars != g.nvars:
        raise PolyStructureError('majorant comparison across {} and {} '
                                 'variables'.format(f.nvars, g.nvars))
    degree = max(f.max_degree, g.max_degree)
    return f.with_degree(degree), g.with_degree(degree)


def prec(f, g):
    """
    Returns:
        bool: True when ``f ≺ g``.
    """
    f, g = _common(f, g)
    a = majorant(f).coefficients
    b = g.coefficients
    if g.mode == MODE_COMPLEX:
        if np.any(b.imag != 0):
            return False
        b = b.real
    if g.mode == MODE_RATIONAL or f.mode == MODE_RATIONAL:
        return all(y >= 0 and x <= y for x, y in zip(a, b))
    return bool(np.all(b >= 0) and np.all(a <= b))


def max_prec(f, g):
    """
    Coefficient-wise ``max(|a_n|, |b_n|)``, a common majorant of f and g.
    """
    f, g = _common(f, g)
    mode = _abs_mode(common_mode(f.mode, g.mode))
    a = coerce_array(majorant(f).coefficients, mode)
    b = coerce_array(majorant(g).coefficients, mode)
    if mode == MODE_RATIONAL:
        values = np.array([max(x, y) for x, y in zip(a, b)], dtype=object)
    else:
        values = np.maximum(a, b)
    return PolySeries(values, f.nvars, f.max_degree, mode)


def collapse_to_one_variable(f):
    """
    Substitute a single variable ``w`` for every variable of ``f``.

    Returns:
        PolySeries: one-variable series whose degree-k coefficient is the sum
        of the degree-k coefficients of ``f``.
    """
    basis = f.basis
    values = []
    for d in range(f.max_degree + 1):
        grade = f.coefficients[basis.grade(d)]
        values.append(sum(grade, Fraction(0)) if f.mode == MODE_RATIONAL
                      else grade.sum())
    return PolySeries(np.array(values, dtype=f.coefficients.dtype), 1,
                      f.max_degree, f.mode)


def diagonal_bracket(f):
    """
    Keep the terms of ``f(xi1, xi2, eta1, eta2)`` in which every ``xi_i``
    carries the power of its ``eta_i``, re-expressed in
    ``(w1, w2) = (xi1 eta1, xi2 eta2)``.

    Returns:
        PolySeries: two-variable series of max_degree ``f.max_degree // 2``.
    """
    if f.nvars != 4:
        raise PolyStructureError('diagonal bracket needs a local-chart series')
    exps = f.basis.exponents
    values = f.coefficients
    keep = np.nonzero((exps[:, 0] == exps[:, 2]) & (exps[:, 1] == exps[:, 3])
                      & (values != 0))[0]
    terms = {(int(exps[i, 0]), int(exps[i, 1])): values[i] for i in keep}
    return PolySeries(terms, 2, f.max_degree // 2, f.mode)


def expand_diagonal(g, max_degree=None):
    """
    Inverse of :func:`diagonal_bracket` on diagonal series: substitute
    ``w1 = xi1 eta1`` and ``w2 = xi2 eta2``.
    """
    if g.nvars != 2:
        raise PolyStructureError('expand_diagonal needs a (w1, w2) series')
    degree = 2 * g.max_degree if max_degree is None else max_degree
    terms = {(a, b, a, b): c for (a, b), c in g.terms.items()}
    return PolySeries(terms, 4, degree, g.mode)


def mean_value_majorant(F, Phi, Psi):
    """
    Right-hand side of the mean value bound
    ``F(Phi + Psi) - F(Phi) ≺ sum_i |d_i F|(|Phi| + |Psi|) |Psi_i|``.

    Args:
        F (PolySeries): scalar series in d variables.
        Phi (list[PolySeries]): d series.
        Psi (list[PolySeries]): d series.

    Returns:
        PolySeries: the majorant.
    """
    if len(Phi) != F.nvars or len(Psi) != F.nvars:
        raise PolyStructureError('mean value bound needs {} components'.format(
            F.nvars))
    degree = max([p.max_degree for p in Phi] + [p.max_degree for p in Psi])
    point = [majorant(a) + majorant(b) for a, b in zip(Phi, Psi)]
    total = PolySeries.zero(Phi[0].nvars, degree, _abs_mode(
        common_mode(F.mode, *[p.mode for p in Phi + Psi])))
    for i in range(F.nvars):
        slope = majorant(F.diff(i)).compose(point, degree)
        total = total + slope * majorant(Psi[i])
    return total


def geometric_majorant(f, gamma=None):
    """
    One-variable bound ``f ≺ c w^n0 / (1 - gamma w)`` where n0 is the order
    of ``f``.

    Args:
        f (PolySeries): one-variable series, not identically zero.
        gamma (float): growth rate; fitted from the coefficients when None.

    Returns:
        tuple: (c, gamma, truncated majorant series).
    """
    if f.nvars != 1:
        raise PolyStructureError('geometric majorant of a one-variable series')
    if f.is_zero():
        raise PolyContractError('geometric majorant of the zero series')
    a = np.abs(coerce_array(f.coefficients, MODE_COMPLEX))
    order = f.valuation
    c = float(a[order])
    if gamma is None:
        gamma = 0.0
        for k in range(order + 1, f.max_degree + 1):
            if a[k] > 0:
                gamma = max(gamma, (a[k] / c) ** (1.0 / (k - order)))
        # the ratio root may undershoot by rounding
        gamma *= 1.0 + 1e-12
    values = np.zeros(f.max_degree + 1)
    for k in range(order, f.max_degree + 1):
        values[k] = c * gamma ** (k - order)
    return c, gamma, PolySeries(values, 1, f.max_degree, MODE_FLOAT)


def inverse_one_minus(f):
    """
    Truncated ``1 / (1 - f)`` for a series without constant term.
    """
    if f.coefficients[0] != 0:
        raise PolyContractError('1/(1 - f) needs f(0) = 0')
    one = PolySeries.constant(1, f.nvars, f.max_degree, f.mode)
    result = one
    power = one
    for _ in range(f.max_degree):
        power = power * f
        if power.is_zero():
            break
        result = result + power
    return result


def majorant_norm(f, radius):
    """
    ``|f|(r, ..., r)``, an upper bound of ``sup |f|`` on the polydisc of
    radius ``r``.
    """
    point = np.full(f.nvars, float(radius))
    return float(majorant(f).astype(MODE_FLOAT)(point))


def sum_variables(nvars, max_degree, mode=MODE_FLOAT):
    """
    The series ``x_1 + ... + x_d``.
    """
    basis = monomial_basis(nvars, max_degree)
    terms = {tuple(e): 1 for e in basis.exponents[basis.grade(1)]}
    return PolySeries(terms, nvars, max_degree, mode)
