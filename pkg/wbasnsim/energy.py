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
First-order radio model. Transmitting b bits over d metres costs
b * (e_elec + e_amp * d^2), receiving them costs b * e_elec. The closed
forms for a chain of equidistant hops are kept next to an explicit
summation so that each can be checked against the other.
"""

from collections import defaultdict, namedtuple
import logging

from yaclifw.framework import Command, Stop

from .model import ConfigException, RadioParams

log = logging.getLogger("wbasnsim.energy")

DEFAULT_RADIO = RadioParams()

# Ledger purposes
TRANSMIT = 'transmit'
RECEIVE = 'receive'
HELLO = 'hello'
JOIN = 'join'
PURPOSES = (TRANSMIT, RECEIVE, HELLO, JOIN)


class EnergyException(Exception):

    def __init__(self, msg, name, value):
        super(EnergyException, self).__init__(msg)
        self.name = name
        self.value = value

    def __str__(self):
        return '%s\n%s: %r' % (
            super(EnergyException, self).__str__(), self.name, self.value)


EnergyBreakdown = namedtuple('EnergyBreakdown', 'transmit receive total')


def _check_bits(b):
    if b < 0:
        raise EnergyException('Payload must not be negative', 'bits', b)


def _check_distance(d):
    if d < 0:
        raise EnergyException('Distance must not be negative', 'distance', d)


def _check_hops(n):
    if n < 1:
        raise EnergyException('At least one hop is required', 'hops', n)


def transmit_energy(b, d, p=DEFAULT_RADIO):
    _check_bits(b)
    _check_distance(d)
    return b * (p.e_elec + p.e_amp * d * d)


def receive_energy(b, p=DEFAULT_RADIO):
    _check_bits(b)
    return b * p.e_elec


def single_hop_energy(b, d, p=DEFAULT_RADIO):
    return transmit_energy(b, d, p)


def multi_hop_energy(n, b, d, p=DEFAULT_RADIO):
    """
    Closed form for n equidistant hops of d metres each: n transmissions
    and n - 1 relay receptions, the sink's reception being free
    """
    _check_hops(n)
    _check_bits(b)
    _check_distance(d)
    if n == 1:
        # Exactly the single hop value, no rounding from the subtraction
        return single_hop_energy(b, d, p)
    return 2 * n * b * p.e_elec + n * b * p.e_amp * d * d - b * p.e_elec


def multi_hop_energy_by_summation(n, b, d, p=DEFAULT_RADIO):
    _check_hops(n)
    total = 0.0
    for i in range(n):
        total += transmit_energy(b, d, p)
    for i in range(n - 1):
        total += receive_energy(b, p)
    return total


def route_energy(distances, b, p=DEFAULT_RADIO):
    """
    Energy of a route given its hop distances, the last hop ending at the
    sink. Every hop is transmitted, every receiver but the sink pays
    """
    distances = list(distances)
    if not distances:
        return EnergyBreakdown(0.0, 0.0, 0.0)
    transmit = 0.0
    for d in distances:
        transmit += transmit_energy(b, d, p)
    receive = 0.0
    for i in range(len(distances) - 1):
        receive += receive_energy(b, p)
    return EnergyBreakdown(transmit, receive, transmit + receive)


def per_node_load(n, b, span, p=DEFAULT_RADIO):
    """
    The largest debit a single transmitter takes when a span is covered
    by n equal hops
    """
    _check_hops(n)
    return transmit_energy(b, float(span) / n, p)


class EnergyLedger(object):
    """
    Applies and records every energy debit of a run. The sink has an
    unbounded supply, debits against it are free and never recorded.
    """

    def __init__(self):
        self.by_purpose = defaultdict(float)
        self.by_node = defaultdict(float)
        self.total = 0.0
        self.deaths = []

    def debit(self, node, joules, purpose, round):
        """
        Take up to `joules` from a node, clamping at zero. A node that
        reaches zero is marked dead in this round.
        return: the amount actually taken, a transmission succeeded only
          if this equals its cost
        """
        if purpose not in PURPOSES:
            raise EnergyException('Unknown debit purpose', 'purpose', purpose)
        if node.is_sink:
            return joules
        if not node.alive:
            return 0.0
        taken = min(joules, node.energy)
        node.energy -= taken
        if node.energy <= 0:
            node.energy = 0.0
            node.died_round = round
            self.deaths.append((node.id, round))
            log.info('Node %d died in round %d (%s)', node.id, round, purpose)
        self.by_purpose[purpose] += taken
        self.by_node[node.id] += taken
        self.total += taken
        return taken


def energy_table(max_hops, b, span, p=DEFAULT_RADIO):
    """
    Rows of (hops, single hop, closed form, summation, per-node load)
    comparing one long hop over `span` metres with equal multi-hop chains
    """
    _check_hops(max_hops)
    rows = []
    single = single_hop_energy(b, span, p)
    for n in range(1, max_hops + 1):
        d = float(span) / n
        rows.append((n, single, multi_hop_energy(n, b, d, p),
                     multi_hop_energy_by_summation(n, b, d, p),
                     per_node_load(n, b, span, p)))
    return rows


class EnergyCommand(Command):
    """
    Compare single-hop and multi-hop energy over a fixed span
    """

    NAME = "energy"

    def __init__(self, sub_parsers):
        super(EnergyCommand, self).__init__(sub_parsers)

        self.parser.add_argument("--hops", type=int, default=10,
                                 help="largest hop count to tabulate")
        self.parser.add_argument("--bits", type=int, default=4000,
                                 help="payload size in bits")
        self.parser.add_argument("--span", type=float, default=10.0,
                                 help="distance to the sink in metres")
        self.parser.add_argument("--e-elec", type=float,
                                 default=DEFAULT_RADIO.e_elec,
                                 help="electronics energy (J/bit)")
        self.parser.add_argument("--e-amp", type=float,
                                 default=DEFAULT_RADIO.e_amp,
                                 help="amplifier energy (J/bit/m^2)")

    def __call__(self, args):
        super(EnergyCommand, self).__call__(args)
        self.configure_logging(args)
        try:
            radio = RadioParams(args.e_elec, args.e_amp)
            rows = energy_table(args.hops, args.bits, args.span, radio)
        except (ConfigException, EnergyException) as e:
            raise Stop(10, str(e))
        print('%4s %14s %14s %14s %14s' % (
            'hops', 'single_hop_j', 'multi_hop_j', 'summation_j',
            'node_load_j'))
        for row in rows:
            print('%4d %14.6e %14.6e %14.6e %14.6e' % row)
