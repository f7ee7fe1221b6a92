#!/usr/bin/env python
# -*- coding: utf-8 -*-

#
# Copyright (C) 2026 The wbasnsim Developers
# All Rights Reserved.
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along
# with this program; if not, write to the Free Software Foundation, Inc.,
# 51 Franklin Street, Fifth Floor, Boston, MA 02110-1301 USA.

"""
The `run` command: one simulation per (protocol, seed), a metrics CSV for
each, a summary CSV across seeds and a manifest from which every run can
be reproduced.
"""

from multiprocessing import Pool
import logging
import os
import re

from yaclifw.framework import Command, Stop

from .config import parse_config, parse_override
from .engine import run_scenario
from .env import ALL, OutputParser, ScenarioParser
from .fileutils import FileException, ensure_dir, write_atomic
from .fileutils import write_metrics_csv, write_summary_csv
from .model import PROTOCOLS, ConfigException
from .version import artifact_version

log = logging.getLogger("wbasnsim.sweep")

SUMMARY = 'summary.csv'
MANIFEST = 'manifest.txt'


def parse_seeds(text):
    """
    Parse `N` or the inclusive range `N..M`
    """
    m = re.match(r'^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$', text)
    if not m:
        raise ConfigException('Invalid seed range %r' % text, 'seeds',
                              'N or N..M with 0 <= N <= M')
    first = int(m.group(1))
    last = int(m.group(2)) if m.group(2) is not None else first
    if last < first:
        raise ConfigException('Empty seed range %r' % text, 'seeds',
                              'N or N..M with 0 <= N <= M')
    return list(range(first, last + 1))


def run_filename(protocol, seed):
    return '%s-seed%d.csv' % (protocol, seed)


class RunManifest(object):
    """
    Everything needed to repeat a sweep. The body is a valid configuration
    file for the first run, the other runs differ only in the protocol
    and seed listed in the header.
    """

    def __init__(self, config, version, seeds, protocols, outputs):
        self.config = config
        self.version = version
        self.seeds = list(seeds)
        self.protocols = list(protocols)
        self.outputs = list(outputs)

    def text(self):
        lines = [
            '# wbasnsim run manifest',
            '# version: %s' % self.version,
            '# protocols: %s' % ','.join(self.protocols),
            '# seeds: %s' % ','.join(str(s) for s in self.seeds),
        ]
        lines.extend('# output: %s' % o for o in self.outputs)
        lines.extend('%s = %s' % pair for pair in self.config.echo())
        return '\n'.join(lines) + '\n'

    def write(self, path):
        return write_atomic(path, self.text())


def run_one(task):
    """
    Run a single scenario and write its CSV, called in worker processes
    task: (ScenarioConfig, output path)
    """
    config, path = task
    result = run_scenario(config)
    write_metrics_csv(result.metrics, path)
    return result.summary


def run_sweep(config, protocols, seeds, out, jobs=1):
    """
    Run every (protocol, seed) combination of a base configuration
    return: the RunManifest that was written
    """
    ensure_dir(out)
    tasks = []
    for protocol in protocols:
        for seed in seeds:
            path = os.path.join(out, run_filename(protocol, seed))
            tasks.append((config.replace(protocol=protocol, seed=seed)
                          .validate(), path))

    if jobs > 1 and len(tasks) > 1:
        log.info('Running %d simulations on %d processes', len(tasks), jobs)
        with Pool(jobs) as p:
            summaries = p.map(run_one, tasks)
    else:
        summaries = [run_one(task) for task in tasks]

    by_protocol = []
    for protocol in protocols:
        by_protocol.append((protocol, [s for s in summaries
                                       if s.protocol == protocol]))
    summary_path = os.path.join(out, SUMMARY)
    write_summary_csv(by_protocol, summary_path)

    outputs = [path for c, path in tasks] + [summary_path]
    manifest = RunManifest(
        config.replace(protocol=protocols[0], seed=seeds[0]),
        artifact_version(), seeds, protocols, outputs)
    manifest.write(os.path.join(out, MANIFEST))
    log.info('Wrote %d runs to %s', len(tasks), out)
    return manifest


class RunCommand(Command):
    """
    Simulate one or more protocols over one or more seeds
    """

    NAME = "run"

    def __init__(self, sub_parsers):
        super(RunCommand, self).__init__(sub_parsers)
        self.parser = ScenarioParser(self.parser)
        self.parser = OutputParser(self.parser)

    def __call__(self, args):
        super(RunCommand, self).__call__(args)
        self.configure_logging(args)
        if args.jobs < 1:
            raise Stop(2, 'Invalid --jobs: %d' % args.jobs)

        try:
            config, protocols, seeds = self.resolve(args)
        except ConfigException as e:
            raise Stop(20, 'Invalid configuration: %s' % e)
        except FileException as e:
            raise Stop(30, str(e))

        try:
            run_sweep(config, protocols, seeds, args.out, args.jobs)
        except FileException as e:
            raise Stop(40, str(e))

    def resolve(self, args):
        overrides = [parse_override(s) for s in args.set]
        if args.rounds is not None:
            overrides.append(('rounds', str(args.rounds)))
        if args.protocol and args.protocol != ALL:
            overrides.append(('protocol', args.protocol))
        if args.seed is not None:
            overrides.append(('seed', str(args.seed)))
        config = parse_config(args.config, overrides, args.preset)

        if args.protocol == ALL:
            protocols = list(PROTOCOLS)
        else:
            protocols = [config.protocol]
        if args.seeds:
            seeds = parse_seeds(args.seeds)
        else:
            seeds = [config.seed]
        return config, protocols, seeds
