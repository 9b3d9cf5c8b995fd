#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Walk through the pipeline at desk parameters: normal form, scaled model,
local chart, one return to the section and a short homoclinic hunt.
"""
import os

from SaddleCenterLoops import (ResonantFamily,
                               alpha_window,
                               build_local_normalization,
                               build_model,
                               first_return,
                               hunt_homoclinic)
from SaddleCenterLoops.dynamics.homoclinic import (homoclinic_amplitude,
                                                   transit_time_bounds)
from SaddleCenterLoops.dynamics.sections import point_on_sigma_l
from SaddleCenterLoops.log_config import logger

EPSILON = 0.35
DELTA = 0.02


def main(out_dir='runs/example'):
    family = ResonantFamily(omega0=1.0, c10=1.0, c20=1.0,
                            extra={(1, 2, 0, 0): 0.2})

    # normal form, scaling and cutoff in the Jordan chart.
    model, scaled, nf = build_model(family, EPSILON, n=5, N0=5, mu=0.0)
    logger.info('normal form degree %d, commutator residual %.2e',
                nf.degree, nf.commutator_residual())
    logger.info('Omega = %.4f, c3 = %.4f, homoclinic amplitude %.4f',
                model.Omega, model.c3, homoclinic_amplitude(model.c3))
    logger.info('transit time bounds %s', transit_time_bounds(DELTA, model.c3))

    # local chart linearizing the saddle.
    local = build_local_normalization(model, max_degree=10)
    logger.info('local chart radius %.4g', local.radius)

    # one first return from the section.
    start = point_on_sigma_l(local, DELTA / 48.0, 0.001, 0.001, DELTA)
    record = first_return(model, local, start, DELTA)
    logger.info('first return after T=%.4f, delta I2 = %.2e',
                record.T, record.delta_I2)

    # homoclinic hunt at the smallest area of the window.
    alpha = alpha_window(model.epsilon, DELTA)[0]
    result = hunt_homoclinic(model, local, alpha, DELTA, max_loops=3)
    logger.info('alpha=%.3e: %s after %s loop(s)', alpha, result.status,
                result.loop_count)

    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)
    paths = result.save(os.path.join(out_dir, 'hunt.json'),
                        curve_prefix=os.path.join(out_dir, 'curve'))
    for path in paths:
        logger.info('wrote %s', path)


if __name__ == '__main__':
    main()
