#!/usr/bin/python
# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

from SaddleCenterLoops.constants import DEFAULT_DELTA
from SaddleCenterLoops.moser import build_local_normalization
from SaddleCenterLoops.normal_form import ResonantFamily, build_model

#: epsilon of the shared test system.
DESK_EPSILON = 0.35


@pytest.fixture(scope='session')
def desk_family():
    return ResonantFamily(omega0=1.0, c10=1.0, c20=1.0,
                          extra={(1, 2, 0, 0): 0.2})


@pytest.fixture(scope='session')
def desk_system(desk_family):
    """
    (model, local chart, scaled model, normal form) at eps = 0.35 with the
    remainder switched off.
    """
    model, scaled, nf = build_model(desk_family, DESK_EPSILON, n=5, N0=5,
                                    mu=0.0)
    local = build_local_normalization(model, 10)
    return model, local, scaled, nf


@pytest.fixture(scope='session')
def desk_model(desk_system):
    return desk_system[0]


@pytest.fixture(scope='session')
def desk_local(desk_system):
    return desk_system[1]


@pytest.fixture
def delta():
    return DEFAULT_DELTA


# === ANNULUS MAPS ===

@pytest.fixture
def standard_map():
    """
    Builder of the lifted standard map ``rho' = rho - K sin(2 pi q) / (2 pi)``,
    ``q' = q + rho'`` of period 1.
    """
    def build(coupling):
        def mapping(points):
            points = np.atleast_2d(np.asarray(points, dtype=float))
            rho = points[:, 1] - coupling * np.sin(
                2.0 * math.pi * points[:, 0]) / (2.0 * math.pi)
            return np.column_stack([points[:, 0] + rho, rho])
        return mapping
    return build


@pytest.fixture
def integrable_twist_map():
    """
    Builder of ``(q, rho) -> (q + alpha(rho), rho)``.
    """
    def build(alpha):
        def mapping(points):
            points = np.atleast_2d(np.asarray(points, dtype=float))
            return np.column_stack([points[:, 0] + alpha(points[:, 1]),
                                    points[:, 1]])
        return mapping
    return build
