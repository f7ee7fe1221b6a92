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
Primary launching functions for wbasnsim. All Commands listed in ITEMS
are presented to the user.
"""

import sys

from yaclifw.framework import main, Stop

from .energy import EnergyCommand
from .sweep import RunCommand
from .version import Version

ITEMS = [
    (RunCommand.NAME, RunCommand),
    (EnergyCommand.NAME, EnergyCommand),
    (Version.NAME, Version)]


def run_cli(args=None):
    """
    Run one command line
    args: list of arguments, default sys.argv
    return: the exit status, non-zero after printing a diagnostic
    """
    try:
        main("wbasnsim", args=args, items=ITEMS)
    except Stop as stop:
        if stop.rc != 0:
            print("ERROR: %s" % stop, file=sys.stderr)
        else:
            print(stop)
        return stop.rc
    except SystemExit as e:
        # argparse exits on --help and on invalid flags
        return e.code or 0
    return 0


def entry_point():
    """
    External entry point which calls run_cli() and exits with its status
    """
    sys.exit(run_cli())


if __name__ == "__main__":
    entry_point()
