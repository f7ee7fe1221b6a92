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
Scenario configuration files and overrides.

A configuration file holds one `key = value` pair per line; blank lines
and anything after a `#` are ignored. Values are layered: preset defaults,
then the file, then command-line overrides.
"""

import logging

from .fileutils import FileException
from .model import KNOB_NAMES, KNOB_TABLE, PAPER_SIMULATION
from .model import ConfigException, make_scenario, parse_value

log = logging.getLogger("wbasnsim.config")


def parse_pairs(lines, source='<overrides>'):
    """
    Parse `key = value` lines into an ordered list of (key, text) pairs
    """
    pairs = []
    for n, line in enumerate(lines, 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigException(
                'Expected key = value at %s line %d' % (source, n),
                line, ', '.join(KNOB_NAMES))
        key, text = line.split('=', 1)
        pairs.append((key.strip(), text.strip()))
    return pairs


def parse_override(text):
    """
    Split a KEY=VALUE command-line override
    """
    if '=' not in text:
        raise ConfigException('Expected KEY=VALUE', text,
                              ', '.join(KNOB_NAMES))
    key, value = text.split('=', 1)
    return key.strip(), value.strip()


def read_config_file(path):
    try:
        with open(path) as f:
            return parse_pairs(f.readlines(), path)
    except (IOError, OSError) as e:
        raise FileException('Unable to read configuration: %s' % e, path)


def convert(pairs):
    values = {}
    for key, text in pairs:
        if key not in KNOB_TABLE:
            raise ConfigException('Unknown configuration key', key,
                                  ', '.join(KNOB_NAMES))
        values[key] = parse_value(KNOB_TABLE[key], text)
    return values


def parse_config(path=None, overrides=None, preset=PAPER_SIMULATION,
                 seed=None):
    """
    Resolve a scenario configuration
    path: optional `key = value` file
    overrides: optional list of (key, text) pairs or {key: value}, applied
      last
    preset: name of the preset supplying the defaults
    seed: optional seed, applied before the file
    """
    config = make_scenario(preset, 1 if seed is None else seed)
    layers = []
    if path:
        log.debug('Reading configuration %s', path)
        layers.append(convert(read_config_file(path)))
    if overrides:
        if isinstance(overrides, dict):
            for key in overrides:
                if key not in KNOB_TABLE:
                    raise ConfigException('Unknown configuration key', key,
                                          ', '.join(KNOB_NAMES))
            layers.append(dict(overrides))
        else:
            layers.append(convert(overrides))
    for values in layers:
        config = config.replace(**values)
    return config.validate()
