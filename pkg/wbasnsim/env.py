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

import argparse
import os

from .model import PRESETS, PROTOCOLS, PAPER_SIMULATION

OUT_ENVVAR = 'WBASN_SIM_OUT'
ALL = 'all'


###########################################################################
# ArgParse classes
###########################################################################


class EnvDefault(argparse.Action):
    """
    argparse Action which takes its default from an environment variable
    when that variable is set

    Usage:

    parser.add_argument(
        "--out", action=EnvDefault, envvar='WBASN_SIM_OUT',
        help="...")
    """

    def __init__(self, envvar, required=False, default=None, **kwargs):
        if envvar and os.environ.get(envvar):
            default = os.environ[envvar]
        if required and default:
            required = False
        super(EnvDefault, self).__init__(default=default,
                                         required=required,
                                         **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        setattr(namespace, self.dest, values)

    @classmethod
    def add(kls, parser, name, default, envvar=None, **kwargs):
        parser.add_argument("--%s" % name, action=kls,
                            envvar=envvar or name.upper(),
                            default=default, **kwargs)


class ScenarioParser(argparse.ArgumentParser):

    def __init__(self, parser):
        self.parser = parser
        group = self.parser.add_argument_group(
            'Scenario arguments',
            'Later arguments override the preset and configuration file')

        group.add_argument(
            "--protocol", choices=list(PROTOCOLS) + [ALL],
            help="Protocol to simulate, 'all' runs every protocol "
            "(default from the configuration)")
        group.add_argument(
            "--preset", default=PAPER_SIMULATION, choices=sorted(PRESETS),
            help="Scenario preset supplying the defaults")
        group.add_argument(
            "--config", help="File of key = value scenario settings")
        group.add_argument("--seed", type=int, help="Master random seed")
        group.add_argument(
            "--seeds", help="Inclusive seed range N..M, overrides --seed")
        group.add_argument("--rounds", type=int, help="Rounds per run")
        group.add_argument(
            "--set", action="append", default=[], metavar="KEY=VALUE",
            help="Override any scenario setting, may be repeated")

    def __getattr__(self, key):
        return getattr(self.parser, key)


class OutputParser(argparse.ArgumentParser):

    def __init__(self, parser):
        self.parser = parser
        group = self.parser.add_argument_group(
            'Output arguments', 'Where and how the runs are written')

        EnvDefault.add(group, "out", "wbasn-out", envvar=OUT_ENVVAR,
                       help="Output directory (env: %s)" % OUT_ENVVAR)
        group.add_argument(
            "--jobs", type=int, default=1,
            help="Number of runs to execute in parallel")

    def __getattr__(self, key):
        return getattr(self.parser, key)
