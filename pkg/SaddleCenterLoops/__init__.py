#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
**SaddleCenterLoops** computes normal forms, local linearizing charts,
Poincaré return maps and multi-loop homoclinic connections near a
saddle-center (0²iω) resonance of a two degree of freedom Hamiltonian.

example code:

.. code-block:: python
    :linenos:

    from SaddleCenterLoops import (ResonantFamily, build_model,
                                   build_local_normalization,
                                   hunt_homoclinic, alpha_window)

    family = ResonantFamily(omega0=1.0, c10=1.0, c20=1.0)
    model, scaled, nf = build_model(family, epsilon=0.35, n=5, N0=5)
    local = build_local_normalization(model, max_degree=10)

    delta = 0.02
    for alpha in alpha_window(model.epsilon, delta):
        result = hunt_homoclinic(model, local, alpha, delta)
        print(alpha, result.loop_count)
"""
from . import constants
from .annulus.curves import ClosedCurve, curve_area, intersections
from .annulus.hunt import (HuntResult,
                           alpha_window,
                           hunt_curves,
                           hunt_homoclinic)
from .annulus.twist import (InvariantCircle,
                            TwistProfile,
                            check_kam_hypotheses,
                            find_invariant_circle,
                            sample_twist_profile)
from .base.canonical import CanonicalMap, lie_series
from .base.commands import PipelineCommand, default_factory
from .base.factory import CommandFactory
from .base.majorant import majorant, majorant_norm, prec
from .base.model import (HamiltonianModel,
                         PhasePoint,
                         ReturnRecord,
                         RunConfig,
                         SectionSpec)
from .base.poly import (MonomialBasis,
                        MultiIndex,
                        PolySeries,
                        SymplecticStructure,
                        poisson_bracket)
from .dynamics.graphs import RestrictedReturnMap
from .dynamics.homoclinic import analytic_homoclinic, portrait
from .dynamics.integrator import integrate
from .dynamics.sections import first_return, global_map_ret2, local_map
from .moser import LocalNormalization, build_local_normalization
from .normal_form import (NormalFormResult,
                          ResonantFamily,
                          build_model,
                          normal_form_pipeline,
                          scale_and_reparametrize)
from .pkg_info import __version__ as VERSION
from .pkg_info import __license__ as LICENSE

__version__ = VERSION
__all__ = [
    'CanonicalMap',
    'ClosedCurve',
    'CommandFactory',
    'HamiltonianModel',
    'HuntResult',
    'InvariantCircle',
    'LICENSE',
    'LocalNormalization',
    'MonomialBasis',
    'MultiIndex',
    'NormalFormResult',
    'PhasePoint',
    'PipelineCommand',
    'PolySeries',
    'ResonantFamily',
    'RestrictedReturnMap',
    'ReturnRecord',
    'RunConfig',
    'SectionSpec',
    'SymplecticStructure',
    'TwistProfile',
    'VERSION',
    'alpha_window',
    'analytic_homoclinic',
    'build_local_normalization',
    'build_model',
    'check_kam_hypotheses',
    'constants',
    'curve_area',
    'default_factory',
    'find_invariant_circle',
    'first_return',
    'global_map_ret2',
    'hunt_curves',
    'hunt_homoclinic',
    'integrate',
    'intersections',
    'lie_series',
    'local_map',
    'majorant',
    'majorant_norm',
    'normal_form_pipeline',
    'poisson_bracket',
    'portrait',
    'prec',
    'sample_twist_profile',
    'scale_and_reparametrize',
]
