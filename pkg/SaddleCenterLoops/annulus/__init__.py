#!/usr/bin/python
# -*- coding: utf-8 -*-
from .curves import (ClosedCurve,
                     circle,
                     curve_area,
                     hausdorff_distance,
                     intersections,
                     refine,
                     spectral_area,
                     winding_number)
from .hunt import (HuntResult,
                   alpha_window,
                   hunt_curves,
                   hunt_homoclinic,
                   stable_curve,
                   unstable_intersection_curve)
from .twist import (InvariantCircle,
                    TrappingRegion,
                    TwistProfile,
                    band_oracle,
                    check_kam_hypotheses,
                    find_invariant_circle,
                    find_trapping_region,
                    nu_bar,
                    sample_restricted_map,
                    sample_twist_band,
                    sample_twist_profile,
                    to_twist_coordinates,
                    trapping_region,
                    twist_band)

__all__ = [
    'ClosedCurve',
    'HuntResult',
    'InvariantCircle',
    'TrappingRegion',
    'TwistProfile',
    'alpha_window',
    'band_oracle',
    'check_kam_hypotheses',
    'circle',
    'curve_area',
    'find_invariant_circle',
    'find_trapping_region',
    'hausdorff_distance',
    'hunt_curves',
    'hunt_homoclinic',
    'intersections',
    'nu_bar',
    'refine',
    'sample_restricted_map',
    'sample_twist_band',
    'sample_twist_profile',
    'spectral_area',
    'stable_curve',
    'to_twist_coordinates',
    'trapping_region',
    'twist_band',
    'unstable_intersection_curve',
    'winding_number',
]
