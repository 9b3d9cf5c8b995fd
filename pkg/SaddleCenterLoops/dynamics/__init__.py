#!/usr/bin/python
# -*- coding: utf-8 -*-
from .graphs import (RestrictedReturnMap,
                     energy_level_curve,
                     graph_cs,
                     graph_energy_level,
                     periodic_orbit_energy,
                     stable_intersection_curve)
from .homoclinic import (analytic_homoclinic,
                         classify_level,
                         homoclinic_transit_time,
                         portrait,
                         transit_time_bounds)
from .integrator import (GaussIntegrator,
                         I2_drift,
                         I2_drift_slope,
                         integrate,
                         integrate_batch,
                         integrate_split,
                         rotation_split,
                         trajectory)
from .sections import (first_return,
                       global_map_ret2,
                       local_map,
                       point_on_sigma_0,
                       point_on_sigma_l,
                       return_time,
                       sigma_0,
                       sigma_l)

__all__ = [
    'GaussIntegrator',
    'I2_drift',
    'I2_drift_slope',
    'RestrictedReturnMap',
    'analytic_homoclinic',
    'classify_level',
    'energy_level_curve',
    'first_return',
    'global_map_ret2',
    'graph_cs',
    'graph_energy_level',
    'homoclinic_transit_time',
    'integrate',
    'integrate_batch',
    'integrate_split',
    'local_map',
    'periodic_orbit_energy',
    'point_on_sigma_0',
    'point_on_sigma_l',
    'portrait',
    'return_time',
    'rotation_split',
    'sigma_0',
    'sigma_l',
    'stable_intersection_curve',
    'trajectory',
    'transit_time_bounds',
]
