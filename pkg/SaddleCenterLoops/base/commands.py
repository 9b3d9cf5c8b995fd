#!/usr/bin/python
# -*- coding: utf-8 -*-
"""
Pipeline commands run by the command line front-end. Every command writes
its artifacts into one flat output directory indexed by ``manifest.json``.
"""
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

import numpy as np
from tqdm import tqdm

from .factory import CommandFactory
from .model import ReturnRecord, RunConfig
from .utils import random_ball
from ..annulus.hunt import alpha_window, hunt_homoclinic
from ..annulus.twist import (check_kam_hypotheses,
                             nu_bar,
                             sample_restricted_map,
                             sample_twist_band,
                             to_twist_coordinates,
                             trapping_region,
                             twist_band)
from ..dynamics.graphs import RestrictedReturnMap
from ..dynamics.homoclinic import analytic_homoclinic, level_set, portrait
from ..dynamics.integrator import I2_drift_slope
from ..dynamics.sections import (first_return,
                                 point_on_sigma_l,
                                 section_map_jacobian)
from ..errors import InvariantFailure, SaddleCenterLoopsError
from ..log_config import logger
from ..moser import build_local_normalization, verify_uniform_estimates
from ..normal_form import ResonantFamily, build_model
from ..pkg_info import __version__

#: Manifest file name of a run directory.
MANIFEST_NAME = 'manifest.json'
#: Remainder weights of the I2 drift slope check.
DRIFT_MUS = (1e-2, 1e-1, 1.0)
#: Epsilons of the uniform chart estimates check.
UNIFORMITY_EPSILONS = (0.5, 0.35, 0.25)


def _json_dump(data):
    return json.dumps(data, indent=2, separators=(',', ':'), sort_keys=True,
                      default=_json_default)


def _json_default(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError('cannot serialize {!r}'.format(value))


@lru_cache(maxsize=8)
def _system(config_serial, epsilon, mu):
    config = RunConfig(json.loads(config_serial))
    family = ResonantFamily.from_config(config)
    model, scaled, nf = build_model(family, epsilon,
                                    config['pipeline.n'],
                                    config['pipeline.N0'],
                                    nu_hat=config['numerics.nu_hat'],
                                    mu=mu,
                                    c3=config['model.c3'],
                                    rho0=config['pipeline.rho0'])
    local = build_local_normalization(model, config['pipeline.moser_degree'])
    return model, local, scaled, nf


def build_system(config, epsilon, mu):
    """
    Normalized model and local chart at ``(epsilon, mu)``, cached per
    process.

    Returns:
        tuple: (HamiltonianModel, LocalNormalization, ScaledModel,
        NormalFormResult).
    """
    return _system(config.serial, float(epsilon), float(mu))


def _alphas(config, epsilon):
    if config['numerics.alphas']:
        return list(config['numerics.alphas'])
    return alpha_window(epsilon, config['numerics.delta'],
                        config['numerics.n_alphas'], config['numerics.band'][0])


class PipelineCommand(object):
    """
    Base class of the pipeline commands.

    Args:
        config (RunConfig): run configuration.
        out_dir (str): output directory, ``config['output']`` by default.
        jobs (int): worker processes for sweeps.
        seed (int): seed of the sampled checks, ``config['seed']`` by
            default.
    """

    #: Name used on the command line and in the registry.
    COMMAND_NAME = None

    def __init__(self, config, out_dir=None, jobs=1, seed=None):
        self.config = config
        self.out_dir = out_dir or config['output']
        self.jobs = max(1, int(jobs))
        self.seed = config['seed'] if seed is None else int(seed)
        self.files = []
        self.elapsed = None
        self.error = None

    def __repr__(self):
        return '<{}("{}") object at {}>'.format(
            self.__class__.__name__, self.COMMAND_NAME, hex(id(self)))

    # === ARTIFACTS ===

    def path(self, name):
        return os.path.join(self.out_dir, name)

    def write_text(self, name, text):
        file_path = self.path(name)
        with open(file_path, 'w') as file_out:
            file_out.write(text)
        self.files.append(name)
        logger.info('wrote {}'.format(file_path))
        return file_path

    def write_json(self, name, data):
        return self.write_text(name, _json_dump(data))

    def write_csv(self, name, header, rows):
        file_path = self.path(name)
        with open(file_path, 'w') as csv_file:
            writer = csv.writer(csv_file, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow(row)
        self.files.append(name)
        logger.info('wrote {}'.format(file_path))
        return file_path

    def map_tasks(self, func, tasks, desc=None):
        """
        Run ``func`` over tasks in order, with a process pool when more
        than one job is requested.
        """
        tasks = list(tasks)
        bar = tqdm(total=len(tasks), desc=desc or self.COMMAND_NAME,
                   disable=not sys.stderr.isatty())
        results = []
        try:
            if self.jobs > 1 and len(tasks) > 1:
                with ProcessPoolExecutor(max_workers=self.jobs) as pool:
                    for result in pool.map(func, tasks):
                        results.append(result)
                        bar.update(1)
            else:
                for task in tasks:
                    results.append(func(task))
                    bar.update(1)
        finally:
            bar.close()
        return results

    # === RUN ===

    @property
    def manifest(self):
        return {'command': self.COMMAND_NAME,
                'version': __version__,
                'seed': self.seed,
                'jobs': self.jobs,
                'elapsed': self.elapsed,
                'status': 'failed' if self.error else 'ok',
                'error': self.error,
                'files': sorted(self.files),
                'config': self.config.to_dict}

    def execute(self):
        raise NotImplementedError

    def run(self):
        """
        Execute the command and write the manifest, also on failure.

        Returns:
            dict: the manifest.
        """
        if not os.path.isdir(self.out_dir):
            os.makedirs(self.out_dir)
        start = time.time()
        try:
            self.execute()
        except SaddleCenterLoopsError as e:
            self.error = '{}: {}'.format(e.__class__.__name__, e)
            raise
        finally:
            self.elapsed = time.time() - start
            with open(self.path(MANIFEST_NAME), 'w') as file_out:
                file_out.write(_json_dump(self.manifest))
            logger.info('{} finished in {:.2f}s ({})'.format(
                self.COMMAND_NAME, self.elapsed,
                'failed' if self.error else 'ok'))
        return self.manifest


# === COMMANDS ===

class NormalizeCmd(PipelineCommand):
    """
    Normal form, scaled model and local chart for every epsilon; with
    ``model.lambda`` set, only the normal form at that parameter.
    """

    COMMAND_NAME = 'normalize'

    def execute(self):
        config = self.config
        n = config['pipeline.n']
        lam = config['model.lambda']
        if lam is not None:
            nf = ResonantFamily.from_config(config).normal_form(lam, n)
            self.write_json('normal_form.json', self._nf_bundle(nf))
            return
        for i, epsilon in enumerate(config['numerics.epsilons']):
            model, local, scaled, nf = build_system(
                config, epsilon, config['numerics.mus'][0])
            bundle = self._nf_bundle(nf)
            bundle.update({'epsilon': epsilon, 'scaled': scaled.to_dict,
                           'model': model.to_dict})
            self.write_json('normal_form_eps{:02d}.json'.format(i), bundle)
            self.write_json('local_chart_eps{:02d}.json'.format(i),
                            local.to_dict)

    def _nf_bundle(self, nf):
        bundle = nf.to_dict
        bundle.update({
            'N': nf.N.to_text(),
            'generators': [S.to_text() for S in nf.S_list],
            'symplecticity': nf.symplecticity(seed=self.seed),
        })
        return bundle


class PortraitCmd(PipelineCommand):
    """
    Level sets of the degree-3 saddle truncation and its homoclinic loop.
    """

    COMMAND_NAME = 'portrait'

    def execute(self):
        c3 = self.config['model.c3']
        rows = []
        for curve in portrait(self.config['numerics.portrait_alphas'], c3):
            for q, up, low in zip(curve['q'], curve['p_upper'],
                                  curve['p_lower']):
                rows.append([curve['alpha'], curve['kind'], q, up, low])
        self.write_csv('portrait.csv', ['alpha', 'kind', 'q', 'p_upper',
                                        'p_lower'], rows)
        t = np.linspace(-20.0, 20.0, 401)
        q, p = analytic_homoclinic(t, c3)
        self.write_csv('homoclinic.csv', ['t', 'q', 'p'], zip(t, q, p))


def _return_map_task(args):
    data, epsilon, mu, alpha = args
    config = RunConfig(data)
    delta = config['numerics.delta']
    c1, c2 = config['numerics.band']
    tol = config['numerics.tolerances.integrator']
    step = config['numerics.slow_step']
    rows = 4
    cols = max(8, config['numerics.samples'] // 8)

    def records_for(mu_value):
        model, local, _, _ = build_system(config, epsilon, mu_value)
        r_min, r_max = twist_band(model.epsilon, delta, c1, c2)
        scale = nu_bar(model.epsilon)
        rho = np.linspace(r_min, r_max, rows) / math.sqrt(scale)
        restricted = RestrictedReturnMap(model, local, alpha, delta, tol, step)
        return model, sample_restricted_map(restricted, rho, cols, scale)

    model, records = records_for(mu)
    reference = records_for(0.0)[1] if mu > 0 else None
    scale = nu_bar(model.epsilon)
    r_min = twist_band(model.epsilon, delta, c1, c2)[0]
    profile = to_twist_coordinates(records, scale, (rows, cols), reference,
                                   min_radius=0.5 * r_min)
    return records, profile


class ReturnMapCmd(PipelineCommand):
    """
    Restricted return map samples on the twist band and the twist
    hypotheses report for every (epsilon, mu).
    """

    COMMAND_NAME = 'return-map'

    def execute(self):
        config = self.config
        tasks, names = [], []
        for i, epsilon in enumerate(config['numerics.epsilons']):
            alphas = _alphas(config, epsilon)
            alpha = alphas[len(alphas) // 2]
            for j, mu in enumerate(config['numerics.mus']):
                tasks.append((config.to_dict, epsilon, mu, alpha))
                names.append((i, j))
        results = self.map_tasks(_return_map_task, tasks)
        profiles = {}
        for (i, j), task, (records, profile) in zip(names, tasks, results):
            profiles.setdefault(i, []).append((task[2], profile))
            self.write_csv('return_map_eps{:02d}_mu{:02d}.csv'.format(i, j),
                           ReturnRecord.columns, [r.row for r in records])
        for (i, j), task, (_, profile) in zip(names, tasks, results):
            report = check_kam_hypotheses(profile, sweep=profiles[i])
            report.update({'epsilon': task[1], 'mu': task[2],
                           'alpha': task[3], 'profile': profile.to_dict})
            self.write_json('twist_eps{:02d}_mu{:02d}.json'.format(i, j),
                            report)


def _hunt_task(args):
    data, epsilon, mu, alpha = args
    config = RunConfig(data)
    model, local, _, _ = build_system(config, epsilon, mu)
    return hunt_homoclinic(
        model, local, alpha, config['numerics.delta'],
        max_loops=config['numerics.max_loops'],
        samples=config['numerics.samples'],
        tol=config['numerics.tolerances.intersection'],
        integrator_tol=config['numerics.tolerances.integrator'],
        step=config['numerics.slow_step'],
        band=tuple(config['numerics.band']))


class HuntCmd(PipelineCommand):
    """
    Homoclinic hunt for every (epsilon, mu, alpha).
    """

    COMMAND_NAME = 'hunt'

    def execute(self):
        config = self.config
        tasks, names = [], []
        for i, epsilon in enumerate(config['numerics.epsilons']):
            for j, mu in enumerate(config['numerics.mus']):
                for k, alpha in enumerate(_alphas(config, epsilon)):
                    tasks.append((config.to_dict, epsilon, mu, alpha))
                    names.append('eps{:02d}_mu{:02d}_alpha{:02d}'.format(
                        i, j, k))
        results = self.map_tasks(_hunt_task, tasks)
        for name, result in zip(names, results):
            self.write_json('hunt_{}.json'.format(name), result.to_dict)
            for n, curve in enumerate(result.curves):
                self.write_csv('hunt_{}_curve{:02d}.csv'.format(name, n + 1),
                               ['index', 'q2', 'p2', 'chart'], curve.to_rows())


class CheckCmd(PipelineCommand):
    """
    Invariant suite on the first epsilon of the configuration; raises
    :class:`InvariantFailure` when any check fails.
    """

    COMMAND_NAME = 'check'

    def _checks(self):
        config = self.config
        epsilon = config['numerics.epsilons'][0]
        delta = config['numerics.delta']
        c1, c2 = config['numerics.band']
        tol = config['numerics.tolerances.integrator']
        step = config['numerics.slow_step']
        model, local, _, nf = build_system(config, epsilon, 0.0)
        rng = np.random.default_rng(self.seed)
        checks = {}

        checks['normal_form_commutator'] = (
            float(nf.commutator_residual()), 1e-10)

        c3 = config['model.c3']
        q, p = analytic_homoclinic(np.linspace(-10.0, 10.0, 201), c3)
        upper, lower = level_set(0.0, c3, q)
        gap = np.minimum(np.abs(p - upper), np.abs(p - lower))
        checks['portrait_homoclinic'] = (float(np.nanmax(gap)), 1e-10)

        points = random_ball(rng, 1000, 0.5 * local.radius)
        checks['chart_conjugacy'] = (
            float(np.max(local.conjugacy_residual(points))), 1e-8)

        r2 = delta * model.epsilon / 8.0
        start = point_on_sigma_l(local, delta / 48.0, r2, r2, delta)
        det, lhs, rhs = section_map_jacobian(model, local, start, delta,
                                             tol=tol, step=step)
        checks['section_flux'] = (abs(lhs - rhs) / abs(rhs), 1e-5)

        record = first_return(model, local, start, delta, tol=tol, step=step)
        checks['I2_conservation'] = (abs(record.delta_I2), 1e-8)

        slope, _ = I2_drift_slope(
            model, random_ball(rng, 8, 0.3 * model.rho0), 1.0, DRIFT_MUS,
            tol=tol, step=step)
        checks['I2_drift_slope'] = (abs(slope - 1.0), 0.1)

        alpha = _alphas(config, epsilon)[0]
        restricted = RestrictedReturnMap(model, local, alpha, delta, tol, step)
        r_min, r_max = twist_band(model.epsilon, delta, c1, c2)
        radii = np.repeat(np.linspace(r_min, r_max, 5), 10)
        angles = 2.0 * math.pi * rng.random(len(radii))
        dets = restricted.jacobian_determinant(
            np.column_stack([radii * np.cos(angles), radii * np.sin(angles)]))
        checks['return_map_jacobian'] = (float(np.max(np.abs(dets - 1.0))),
                                         1e-6)

        profile, rho_band = sample_twist_band(restricted, model.epsilon, delta,
                                              c1, c2)
        twist = check_kam_hypotheses(profile)['twist']
        checks['twist_negativity'] = (0.0 if twist['negative'] else 1.0, 0.5)

        charts = [build_system(config, e, 0.0)[1] for e in UNIFORMITY_EPSILONS]
        uniform = verify_uniform_estimates(charts, seed=self.seed)
        spread = uniform['estimates']['sup_difference']['spread']
        checks['uniform_estimates'] = (
            float('inf') if spread is None else spread, 2.0)

        result = hunt_homoclinic(model, local, alpha, delta, max_loops=1,
                                 samples=config['numerics.samples'],
                                 tol=config['numerics.tolerances.intersection'],
                                 trap=trapping_region(profile, rho_band),
                                 integrator_tol=tol, step=step)
        checks['one_loop_connection'] = (
            0.0 if result.loop_count == 1 else 1.0, 0.5)
        return checks

    def execute(self):
        report = {}
        for name, (value, threshold) in sorted(self._checks().items()):
            passed = bool(value <= threshold)
            report[name] = {'value': value, 'threshold': threshold,
                            'passed': passed}
            log = logger.info if passed else logger.error
            log('check {}: {:.3e} (threshold {:.1e})'.format(name, value,
                                                               threshold))
        self.write_json('check.json', report)
        failed = sorted(k for k, v in report.items() if not v['passed'])
        if failed:
            raise InvariantFailure('failed checks: {}'.format(', '.join(failed)))


#: Commands registered by :func:`default_factory`.
PIPELINE_COMMANDS = (NormalizeCmd, PortraitCmd, ReturnMapCmd, HuntCmd,
                     CheckCmd)


def default_factory():
    """
    Command factory with the pipeline commands registered.

    Returns:
        CommandFactory: a factory emptied of earlier registrations.
    """
    factory = CommandFactory()
    factory.clear_registered_commands()
    for command in PIPELINE_COMMANDS:
        factory.register_command(command)
    return factory
