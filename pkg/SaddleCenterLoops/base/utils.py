#!/usr/bin/python
# -*- coding: utf-8 -*-
import math
from fractions import Fraction

import numpy as np

from .poly import PolySeries, monomial_basis
from ..constants import MODE_COMPLEX, MODE_FLOAT, MODE_RATIONAL


def hamiltonian_field(gradient):
    """
    ``J grad H`` for gradients stored as (d_q..., d_p...).
    """
    g = np.asarray(gradient)
    half = g.shape[-1] // 2
    return np.concatenate([g[..., half:], -g[..., :half]], axis=-1)


def finite_difference_jacobian(func, x, step=1e-6):
    """
    Central-difference Jacobian of a vectorized map.

    Args:
        func (callable): map acting on arrays of shape (..., n).
        x (numpy.ndarray): base points of shape (..., n).
        step (float): difference step.

    Returns:
        numpy.ndarray: Jacobians of shape (..., m, n).
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    columns = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = step
        columns.append((np.asarray(func(x + e)) - np.asarray(func(x - e)))
                       / (2.0 * step))
    return np.stack(columns, axis=-1)


def random_series(rng, nvars=4, low=2, high=4, max_degree=None, scale=1.0,
                  mode=MODE_FLOAT, density=1.0):
    """
    Random polynomial with terms of degree ``low`` through ``high``.

    In rational mode coefficients are small integers over small denominators.
    """
    max_degree = high if max_degree is None else max_degree
    basis = monomial_basis(nvars, max_degree)
    terms = {}
    for d in range(low, high + 1):
        for e in basis.exponents[basis.grade(d)]:
            if rng.random() > density:
                continue
            if mode == MODE_RATIONAL:
                terms[tuple(e)] = Fraction(int(rng.integers(-5, 6)),
                                           int(rng.integers(1, 5)))
            else:
                terms[tuple(e)] = scale * rng.uniform(-1.0, 1.0)
    return PolySeries(terms, nvars, max_degree, mode)


def wrap_angle(angle):
    """
    Reduce angles to (-pi, pi].
    """
    a = np.asarray(angle, dtype=float)
    return math.pi - np.mod(math.pi - a, 2.0 * math.pi)


def rotate_clockwise(q, p, angle):
    """
    Rotate (q, p) clockwise by ``angle``: the time-angle/(2 Omega) flow of
    ``Omega (q^2 + p^2)``.
    """
    c = np.cos(angle)
    s = np.sin(angle)
    return q * c + p * s, -q * s + p * c


def random_directions(rng, count, dim=4):
    v = rng.normal(size=(count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def random_ball(rng, count, radius, dim=4):
    """
    Uniform samples in the Euclidean ball of a radius.
    """
    u = rng.random(count) ** (1.0 / dim)
    return radius * u[:, None] * random_directions(rng, count, dim)


def series_exp(f):
    """
    Truncated ``exp(f)`` of a series (a constant term is allowed).
    """
    c0 = f.coefficients[0]
    g = f - c0
    result = PolySeries.constant(1, f.nvars, f.max_degree, f.mode)
    term = result
    for k in range(1, f.max_degree + 1):
        term = term * g / k
        if term.is_zero():
            break
        result = result + term
    if c0 == 0:
        return result
    return result * (np.exp(complex(c0)) if f.mode == MODE_COMPLEX
                     else math.exp(float(c0)))


def series_reciprocal(f):
    """
    Truncated ``1 / f`` for a series with non-zero constant term.
    """
    c0 = f.coefficients[0]
    if c0 == 0:
        raise ZeroDivisionError('reciprocal of a series vanishing at 0')
    g = 1 - f / c0
    result = PolySeries.constant(1, f.nvars, f.max_degree, f.mode)
    term = result
    for _ in range(f.max_degree):
        term = term * g
        if term.is_zero():
            break
        result = result + term
    return result / c0


def fit_loglog_slope(xs, ys):
    """
    Returns:
        float: least-squares slope of log(ys) against log(xs).
    """
    xs = np.log(np.asarray(xs, dtype=float))
    ys = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])
