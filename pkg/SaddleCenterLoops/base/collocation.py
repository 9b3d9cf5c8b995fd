#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Gauss-Legendre collocation: the symplectic one-step scheme shared by the Lie
flows and the phase-space integrators.
"""
from functools import lru_cache

import numpy as np

from ..constants import COLLOCATION_MAX_ITER, COLLOCATION_TOL


class GaussTableau(object):
    """
    Butcher tableau of the s-stage Gauss collocation method (order 2s).

    Args:
        stages (int): number of stages.
    """

    def __init__(self, stages):
        nodes, weights = np.polynomial.legendre.leggauss(stages)
        c = 0.5 * (1.0 + nodes)
        powers = np.arange(stages)
        M = c[None, :] ** powers[:, None]
        R = c[None, :] ** (powers[:, None] + 1) / (powers[:, None] + 1)
        self.stages = stages
        self.c = c
        self.b = 0.5 * weights
        self.A = np.linalg.solve(M, R).T

    def __repr__(self):
        return '<{}(stages={}) object at {}>'.format(
            self.__class__.__name__, self.stages, hex(id(self)))

    @property
    def order(self):
        return 2 * self.stages


@lru_cache(maxsize=None)
def gauss_tableau(stages):
    return GaussTableau(stages)


def collocation_step(field, t, x, h, tableau, max_iter=COLLOCATION_MAX_ITER,
                     tol=COLLOCATION_TOL):
    """
    One collocation step of ``x' = field(t, x)`` solved by fixed-point
    iteration on the stage derivatives.

    Args:
        field (callable): vector field ``field(t, x)`` acting on a batch
            ``x`` of shape (..., n).
        t (float): start time.
        x (numpy.ndarray): start points.
        h (float or numpy.ndarray): step (scalar or one per batch row).
        tableau (GaussTableau): method.
        max_iter (int): fixed-point iterations allowed.
        tol (float): relative stopping tolerance on the stage derivatives.

    Returns:
        tuple: (new points, converged flag, iterations used).
    """
    x = np.asarray(x, dtype=float)
    h = np.asarray(h, dtype=float)
    hb = h[..., None] if h.ndim else h
    s = tableau.stages
    k = np.stack([field(t + tableau.c[i] * h, x) for i in range(s)])
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        stages = x[None] + hb[None] * np.einsum('ij,j...->i...', tableau.A, k)
        new = np.stack([field(t + tableau.c[i] * h, stages[i])
                        for i in range(s)])
        delta = np.max(np.abs(new - k)) if new.size else 0.0
        k = new
        if delta <= tol * max(1.0, np.max(np.abs(k)) if k.size else 1.0):
            converged = True
            break
    return x + hb * np.einsum('i,i...->...', tableau.b, k), converged, it
