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
Domain types shared by the whole simulator: nodes, node classes, packets,
radio parameters and the scenario configuration with its presets.

Every scenario knob is declared once in KNOBS. The same table is used to
validate a ScenarioConfig, to parse `key = value` files and overrides, and
to echo a resolved configuration into a run manifest.
"""

from collections import namedtuple
import logging
import math

import numpy

log = logging.getLogger("wbasnsim.model")


SINK = 0

# Node classes, in descending order of data rate
SINK_CLASS = 'sink'
PARENT = 'parent'
FIRST_CHILD = 'first_child'
SECOND_CHILD = 'second_child'
SENSOR_CLASSES = (PARENT, FIRST_CHILD, SECOND_CHILD)
CHILD_CLASSES = (FIRST_CHILD, SECOND_CHILD)

# Traffic classes
NORMAL = 'normal'
CRITICAL = 'critical'
ON_DEMAND = 'on_demand'
PACKET_KINDS = (NORMAL, CRITICAL, ON_DEMAND)

# Protocols
MULTIHOP = 'multihop'
ATTEMPT = 'attempt'
MATTEMPT = 'mattempt'
PROTOCOLS = (MULTIHOP, ATTEMPT, MATTEMPT)

PAPER_SIMULATION = 'paper-simulation'
PROTOTYPE = 'prototype'

UNIFORM = 'uniform'
PER_CLASS = 'per_class'


class ConfigException(Exception):

    def __init__(self, msg, key, accepted=None):
        super(ConfigException, self).__init__(msg)
        self.key = key
        self.accepted = accepted

    def __str__(self):
        s = '%s\nkey: %s' % (super(ConfigException, self).__str__(), self.key)
        if self.accepted is not None:
            s += '\naccepted: %s' % self.accepted
        return s


ProtocolFeatures = namedtuple('ProtocolFeatures', [
    'emergency',          # critical/on-demand traffic by full-power hop
    'thermal',            # hot-spot detection and re-routing
    'mobility_support',   # invitation phase, local route refresh
    'escalation',         # full-power hop when no route is left
])

FEATURES = {
    MULTIHOP: ProtocolFeatures(False, False, False, False),
    ATTEMPT: ProtocolFeatures(True, True, False, False),
    MATTEMPT: ProtocolFeatures(True, True, True, True),
}


NodeClass = namedtuple('NodeClass', [
    'name', 'initial_energy', 'payload_size', 'mobility_amplitude',
    'normal_range'])


class RadioParams(namedtuple('RadioParams', ['e_elec', 'e_amp'])):
    """
    First-order radio model coefficients
    e_elec: J/bit spent by the transmit/receive electronics
    e_amp: J/bit/m^2 spent by the transmit amplifier (path-loss exponent 2)
    """

    def __new__(cls, e_elec=50e-9, e_amp=100e-12):
        if not e_elec > 0:
            raise ConfigException('Must be strictly positive', 'e_elec',
                                  '(0, inf)')
        if not e_amp > 0:
            raise ConfigException('Must be strictly positive', 'e_amp',
                                  '(0, inf)')
        return super(RadioParams, cls).__new__(cls, e_elec, e_amp)


class Node(object):

    def __init__(self, id, nodeclass, position, energy):
        self.id = id
        self.nodeclass = nodeclass
        self.base_position = position
        self.position = position
        self.energy = energy
        self.temperature = 0.0
        self.parent = None
        self.children = set()
        self.died_round = None

    @property
    def is_sink(self):
        return self.id == SINK

    @property
    def alive(self):
        return self.is_sink or self.energy > 0

    @property
    def normal_range(self):
        return self.nodeclass.normal_range

    def distance_to(self, other):
        return distance(self.position, other.position)

    def __repr__(self):
        return 'Node(%d, %s, (%.3f, %.3f), %.6g J)' % (
            self.id, self.nodeclass.name, self.position[0],
            self.position[1], self.energy)


class Packet(object):

    def __init__(self, id, kind, size, source, created_round):
        self.id = id
        self.kind = kind
        self.size = size
        self.source = source
        self.created_round = created_round
        self.hop_trace = [source]

    def __repr__(self):
        return 'Packet(%d, %s, %d bits, from %d)' % (
            self.id, self.kind, self.size, self.source)


def distance(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


###########################################################################
# Configuration
###########################################################################

Knob = namedtuple('Knob', 'name kind lower upper strict help')

INT = 'int'
FLOAT = 'float'
BOOL = 'bool'
CHOICE = 'choice'
INF = float('inf')


def _knob(name, kind, help, lower=None, upper=None, strict=False):
    return Knob(name, kind, lower, upper, strict, help)


def _positive(name, help):
    return _knob(name, FLOAT, help, 0, INF, strict=True)


def _non_negative(name, help):
    return _knob(name, FLOAT, help, 0, INF)


def _probability(name, help):
    return _knob(name, FLOAT, help, 0, 1)


KNOBS = (
    _knob('protocol', CHOICE, 'Routing protocol', PROTOCOLS),
    _knob('seed', INT, 'Master random seed', 0),
    _knob('rounds', INT, 'Number of rounds to simulate', 0),
    _positive('area_side', 'Side of the square body area (m)'),
    _knob('node_count', INT, 'Nodes including the sink', 2),
    _knob('parents', INT, 'Number of parent-class nodes', 0),
    _knob('first_children', INT,
          'Number of first-level child nodes, the rest are second-level', 0),
    _positive('e_elec', 'Electronics energy (J/bit)'),
    _positive('e_amp', 'Amplifier energy (J/bit/m^2)'),
    _positive('range_parent', 'Parent normal range (m)'),
    _positive('range_first_child', 'First-level child normal range (m)'),
    _positive('range_second_child', 'Second-level child normal range (m)'),
    _positive('full_power_range', 'Full-power range (m)'),
    _knob('energy_mode', CHOICE,
          'Initial energy: uniform value or per-class values',
          (UNIFORM, PER_CLASS)),
    _positive('initial_energy', 'Uniform initial energy (J)'),
    _positive('energy_parent', 'Parent initial energy (J)'),
    _positive('energy_first_child', 'First-level child initial energy (J)'),
    _positive('energy_second_child',
              'Second-level child initial energy (J)'),
    _knob('payload_parent', INT, 'Parent payload (bits)', 0),
    _knob('payload_first_child', INT, 'First-level child payload (bits)', 0),
    _knob('payload_second_child', INT, 'Second-level child payload (bits)',
          0),
    _non_negative('amplitude_parent', 'Parent mobility amplitude (m)'),
    _non_negative('amplitude_first_child',
                  'First-level child mobility amplitude (m)'),
    _non_negative('amplitude_second_child',
                  'Second-level child mobility amplitude (m)'),
    _knob('mobility_period', INT, 'Limb oscillation period (rounds)', 1),
    _knob('hello_size', INT, 'Hello/join message size (bits)', 0),
    _knob('ch_rotation', BOOL, 'Enable cluster-head rotation'),
    _probability('ch_probability', 'Cluster-head probability'),
    _positive('temp_threshold', 'Temperature threshold'),
    _non_negative('temp_delta_per_packet',
                  'Temperature rise per packet handled'),
    _non_negative('cooling_per_round', 'Cooling per round'),
    _knob('hotspot_cooldown', INT, 'Rounds a hot-spot link stays marked', 1),
    _knob('child_cap', INT, 'Maximum children per parent', 1),
    _probability('p_critical', 'Critical packet probability per round'),
    _probability('p_on_demand', 'Sink poll probability per round'),
)

KNOB_NAMES = tuple(k.name for k in KNOBS)
KNOB_TABLE = dict((k.name, k) for k in KNOBS)

DEFAULTS = {
    'protocol': MATTEMPT,
    'seed': 1,
    'rounds': 5000,
    'area_side': 5.0,
    'node_count': 10,
    'parents': 3,
    'first_children': 3,
    'e_elec': 50e-9,
    'e_amp': 100e-12,
    'range_parent': 3.5,
    'range_first_child': 2.5,
    'range_second_child': 1.5,
    'full_power_range': 10.0,
    'energy_mode': UNIFORM,
    'initial_energy': 0.5,
    'energy_parent': 10.0,
    'energy_first_child': 5.0,
    'energy_second_child': 1.0,
    'payload_parent': 4000,
    'payload_first_child': 4000,
    'payload_second_child': 4000,
    'amplitude_parent': 0.0,
    'amplitude_first_child': 0.5,
    'amplitude_second_child': 1.0,
    'mobility_period': 50,
    'hello_size': 200,
    'ch_rotation': True,
    'ch_probability': 0.10,
    'temp_threshold': 1.0,
    'temp_delta_per_packet': 0.1,
    'cooling_per_round': 0.05,
    'hotspot_cooldown': 5,
    'child_cap': 3,
    'p_critical': 0.01,
    'p_on_demand': 0.01,
}

PRESETS = {
    PAPER_SIMULATION: {},
    PROTOTYPE: {
        'node_count': 11,
        'parents': 3,
        'first_children': 4,
        'energy_mode': PER_CLASS,
        'payload_parent': 80000,
        'payload_first_child': 8000,
        'payload_second_child': 400,
        'ch_rotation': False,
    },
}


def describe_range(knob):
    if knob.kind == CHOICE:
        return '{%s}' % ','.join(knob.lower)
    if knob.kind == BOOL:
        return '{true,false}'
    if knob.kind == INT:
        upper = 'inf' if knob.upper is None else knob.upper
        return 'integer in [%s, %s]' % (knob.lower, upper)
    upper = 'inf' if knob.upper == INF else knob.upper
    return 'number in %s%s, %s]' % (
        '(' if knob.strict else '[', knob.lower, upper)


def in_range(knob, value):
    if knob.kind == CHOICE:
        return value in knob.lower
    if knob.kind == BOOL:
        return isinstance(value, bool)
    if isinstance(value, bool):
        return False
    if knob.kind == INT:
        return (isinstance(value, int) and value >= knob.lower and
                (knob.upper is None or value <= knob.upper))
    if not isinstance(value, (int, float)) or math.isnan(value):
        return False
    if knob.strict and not value > knob.lower:
        return False
    return knob.lower <= value <= knob.upper


def parse_value(knob, text):
    """
    Convert the text form of a knob value, raises ConfigException if the
    text cannot be parsed. Range checks are left to ScenarioConfig.validate
    """
    text = text.strip()
    try:
        if knob.kind == CHOICE:
            if text not in knob.lower:
                raise ValueError(text)
            return text
        if knob.kind == BOOL:
            lowered = text.lower()
            if lowered in ('1', 'true', 'yes', 'on'):
                return True
            if lowered in ('0', 'false', 'no', 'off'):
                return False
            raise ValueError(text)
        if knob.kind == INT:
            return int(text)
        return float(text)
    except ValueError:
        raise ConfigException('Unparsable value %r' % text, knob.name,
                              describe_range(knob))


def format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return repr(value)
    return str(value)


class ScenarioConfig(object):
    """
    A fully resolved scenario. Attribute names are the knob names
    """

    def __init__(self, **values):
        for name in values:
            if name not in DEFAULTS:
                raise ConfigException('Unknown configuration key', name,
                                      ', '.join(KNOB_NAMES))
        for name in KNOB_NAMES:
            setattr(self, name, values.get(name, DEFAULTS[name]))

    def replace(self, **values):
        merged = self.as_dict()
        merged.update(values)
        return ScenarioConfig(**merged)

    def as_dict(self):
        return dict((name, getattr(self, name)) for name in KNOB_NAMES)

    def echo(self):
        """
        The resolved knobs as ordered (name, text) pairs
        """
        return [(name, format_value(getattr(self, name)))
                for name in KNOB_NAMES]

    def __eq__(self, other):
        return (isinstance(other, ScenarioConfig) and
                self.as_dict() == other.as_dict())

    def __ne__(self, other):
        return not self == other

    def validate(self):
        for knob in KNOBS:
            value = getattr(self, knob.name)
            if not in_range(knob, value):
                raise ConfigException(
                    'Value out of range: %r' % (value,), knob.name,
                    describe_range(knob))

        if self.parents + self.first_children > self.node_count - 1:
            raise ConfigException(
                'More parent and first-level child nodes than sensors',
                'first_children',
                'integer in [0, %d]' % (self.node_count - 1 - self.parents))
        if not (self.amplitude_parent <= self.amplitude_first_child <=
                self.amplitude_second_child):
            raise ConfigException(
                'Mobility amplitude must not decrease with falling data rate',
                'amplitude_first_child',
                'amplitude_parent <= amplitude_first_child <= '
                'amplitude_second_child')
        return self

    @property
    def radio(self):
        return RadioParams(self.e_elec, self.e_amp)

    @property
    def features(self):
        return FEATURES[self.protocol]

    def node_class(self, name):
        if name == SINK_CLASS:
            return NodeClass(SINK_CLASS, INF, 0, 0.0, INF)
        if self.energy_mode == UNIFORM:
            energy = self.initial_energy
        else:
            energy = getattr(self, 'energy_%s' % name)
        return NodeClass(name, energy,
                         getattr(self, 'payload_%s' % name),
                         getattr(self, 'amplitude_%s' % name),
                         getattr(self, 'range_%s' % name))


def make_scenario(preset, seed):
    """
    Build the configuration of a named preset
    preset: 'paper-simulation' (5m x 5m, 10 nodes, 0.5 J each) or
      'prototype' (heterogeneous 10/5/1 J body prototype)
    """
    try:
        values = dict(PRESETS[preset])
    except KeyError:
        raise ConfigException('Unknown preset %r' % preset, 'preset',
                              ', '.join(sorted(PRESETS)))
    values['seed'] = seed
    return ScenarioConfig(**values).validate()


class RandomStreams(object):
    """
    Independent generators derived from one master seed, so that changing
    how one concern draws numbers never perturbs another
    """

    NAMES = ('placement', 'traffic', 'mobility', 'election')

    def __init__(self, seed):
        children = numpy.random.SeedSequence(seed).spawn(len(self.NAMES))
        for name, child in zip(self.NAMES, children):
            setattr(self, name, numpy.random.default_rng(child))


def place_nodes(config, rng):
    """
    Sink in the centre of the area, the other nodes uniformly over the
    square. Classes are handed out by distance to the sink in descending
    data-rate order: nearest nodes become parents, then first-level
    children, the rest second-level children
    """
    if config.node_count < 2:
        raise ConfigException('At least one sensor node is required',
                              'node_count',
                              describe_range(KNOB_TABLE['node_count']))
    centre = (config.area_side / 2.0, config.area_side / 2.0)
    nodes = [Node(SINK, config.node_class(SINK_CLASS), centre, INF)]

    xy = rng.uniform(0.0, config.area_side, size=(config.node_count - 1, 2))
    positions = [(float(x), float(y)) for x, y in xy]
    ranked = sorted(range(len(positions)),
                    key=lambda i: (distance(positions[i], centre), i))
    classes = {}
    for rank, i in enumerate(ranked):
        if rank < config.parents:
            classes[i] = PARENT
        elif rank < config.parents + config.first_children:
            classes[i] = FIRST_CHILD
        else:
            classes[i] = SECOND_CHILD

    for i, position in enumerate(positions):
        nodeclass = config.node_class(classes[i])
        nodes.append(Node(i + 1, nodeclass, position,
                          nodeclass.initial_energy))
        log.debug('Placed %r', nodes[-1])
    return nodes
