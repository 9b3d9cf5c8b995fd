#!/usr/bin/python
# -*- coding: utf-8 -*-
import math

from .pkg_info import __version__

#: Current version of the SaddleCenterLoops toolkit.
VERSION = __version__

# === PHASE SPACE ===

#: Number of phase-space variables (two degrees of freedom).
NVARS = 4
#: Variable names in storage order.
VARIABLE_NAMES = ('q1', 'q2', 'p1', 'p2')
#: Variable names used in the local Moser chart.
LOCAL_VARIABLE_NAMES = ('xi1', 'xi2', 'eta1', 'eta2')

#: Chart tag for the coordinates the input Hamiltonian is written in.
CHART_ORIGINAL = 'original'
#: Chart tag for the rescaled (underlined) coordinates.
CHART_SCALED = 'scaled'
#: Chart tag for the chart where the saddle block reads -q1 p1.
CHART_JORDAN = 'jordan'
#: Chart tag for the Moser local chart.
CHART_LOCAL = 'local'
CHARTS = (CHART_ORIGINAL, CHART_SCALED, CHART_JORDAN, CHART_LOCAL)

# === COEFFICIENT MODES ===

#: Double precision real coefficients.
MODE_FLOAT = 'float'
#: Exact rational coefficients (golden tests of low degree).
MODE_RATIONAL = 'rational'
#: Complex coefficients (complexified local charts).
MODE_COMPLEX = 'complex'
MODES = (MODE_FLOAT, MODE_RATIONAL, MODE_COMPLEX)

# === NORMAL FORM ===

#: Relative singular value threshold for kernels of the homological operator.
SVD_RANK_TOL = 1e-10
#: Maximum number of solves per degree while the quadratic part differs
#: from the reference one.
MAX_GRADE_ITERATIONS = 40
#: A degree is considered normalized when its generator drops below this.
GRADE_TOL = 1e-14
#: Fixed-point iterations allowed for a Lie flow collocation step.
LIE_FLOW_MAX_ITER = 50
#: Fixed-point tolerance of a Lie flow collocation step.
LIE_FLOW_TOL = 1e-13
#: Stages of the Gauss collocation used for Lie flows (order 8).
LIE_FLOW_STAGES = 4
#: Bound on (step x local Lipschitz constant) of a Lie flow substep.
LIE_FLOW_STEP_BOUND = 0.2
#: Substeps beyond this mean the point is outside the usable radius.
LIE_FLOW_MAX_SUBSTEPS = 20000
#: Maximum number of terms of a formal Lie series.
LIE_SERIES_MAX_TERMS = 100
#: Default cubic coefficient of the scaled saddle Hamiltonian.
DEFAULT_C3 = 2.0 * math.sqrt(2.0)
#: Default cutoff radius.
DEFAULT_RHO0 = 1.0
#: Default k0 (n = 2 k0 + 3, N0 = 4 k0 + 1).
DEFAULT_K0 = 1

# === LOCAL CHART ===

#: Default truncation degree of the Moser chart.
DEFAULT_MOSER_DEGREE = 10
#: Gap between the degree-d and degree-(d-2) charts defining the radius.
CHART_RADIUS_TOL = 1e-6
#: Imaginary parts below this (relative to their grade) are discarded after
#: realification.
REALNESS_TOL = 1e-10
#: Iterations of the criterion fixed-point solve.
CRITERION_MAX_ITER = 60

# === DYNAMICS ===

#: Default section offset in scaled units.
DEFAULT_DELTA = 0.02
#: Default scaled parameter.
DEFAULT_EPSILON = 0.35
#: Upper bound of the full-flow step.
MAX_STEP = 1e-3
#: Upper bound of the co-rotating (slow) flow step.
MAX_SLOW_STEP = 1e-2
#: Smallest step before a stiffness error is raised.
MIN_STEP = 1e-7
#: Collocation fixed-point iterations per step.
COLLOCATION_MAX_ITER = 50
#: Collocation fixed-point tolerance.
COLLOCATION_TOL = 1e-15
#: Crossing refinement tolerance in time.
CROSSING_XTOL = 1e-15
#: Section residual tolerance after Newton polish.
SECTION_TOL = 1e-12
#: Bound on the time spent searching for a crossing.
MAX_RETURN_TIME = 200.0
#: Section kind {q1 = delta} in the Jordan chart.
SECTION_SIGMA_L = 'sigma_l'
#: Section kind given by {eta1 = delta} in the local chart.
SECTION_SIGMA_0 = 'sigma_0'

# === ANNULUS ===

#: Lower band constant c1 of the annulus I2 in [c1 delta^2 eps^2, c2 delta^2 eps^2].
DEFAULT_BAND_C1 = 1.0 / 32.0
#: Upper band constant c2.
DEFAULT_BAND_C2 = 1.0 / 16.0
#: Maximum turning angle between consecutive curve segments before refinement.
REFINE_TURNING_ANGLE = 0.2
#: Curve-to-curve distance treated as an intersection.
INTERSECTION_TOL = 1e-6
#: Invariance residual accepted by the invariant circle finder.
CIRCLE_RESIDUAL_TOL = 1e-8
#: Fourier nodes of the invariant circle finder.
CIRCLE_NODES = 64

# === CLI ===

#: Exit status on success.
EXIT_OK = 0
#: Exit status on configuration errors, including families that violate the
#: resonance hypotheses.
EXIT_CONFIG_ERROR = 2
#: Exit status when an invariant check or a numerical construction fails.
EXIT_INVARIANT_FAILURE = 3
