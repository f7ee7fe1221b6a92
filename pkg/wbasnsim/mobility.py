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
Body movement and the invitation phase that repairs the parent/child tree.

Each sensor oscillates along a fixed axis around the position it was
placed at. A child whose parent drifts out of its range, or dies, loses
the link and asks the nearest parent-class nodes to adopt it.
"""

from collections import namedtuple
import logging
import math

from .energy import JOIN, receive_energy, transmit_energy
from .model import CHILD_CLASSES, PARENT

log = logging.getLogger("wbasnsim.mobility")

JOINED = 'joined'
REJECTED = 'rejected'

JoinResult = namedtuple('JoinResult', 'status parent')

INF = float('inf')


class MobilityModel(object):
    """
    axes: {NodeId: (ux, uy)} unit vectors
    phases: {NodeId: radians}
    amplitudes: {NodeId: metres}
    """

    def __init__(self, axes, phases, amplitudes, period, side):
        self.axes = axes
        self.phases = phases
        self.amplitudes = amplitudes
        self.period = period
        self.side = side

    @classmethod
    def from_rng(cls, nodes, config, rng):
        """
        Draw an axis angle and a phase for every sensor in NodeId order
        """
        axes = {}
        phases = {}
        amplitudes = {}
        for node in sorted(nodes, key=lambda n: n.id):
            if node.is_sink:
                continue
            angle = rng.uniform(0.0, 2 * math.pi)
            phases[node.id] = float(rng.uniform(0.0, 2 * math.pi))
            axes[node.id] = (math.cos(angle), math.sin(angle))
            amplitudes[node.id] = node.nodeclass.mobility_amplitude
        return cls(axes, phases, amplitudes, config.mobility_period,
                   config.area_side)

    def position(self, node, t):
        amplitude = self.amplitudes.get(node.id, 0.0)
        if not amplitude:
            return node.base_position
        ux, uy = self.axes[node.id]
        angle = 2 * math.pi * (t % self.period) / self.period
        offset = amplitude * math.sin(angle + self.phases[node.id])
        x = node.base_position[0] + ux * offset
        y = node.base_position[1] + uy * offset
        return (min(max(x, 0.0), self.side), min(max(y, 0.0), self.side))


def detach(nodes, child):
    if child.parent is not None:
        nodes[child.parent].children.discard(child.id)
    child.parent = None


def step_positions(nodes, model, round):
    """
    Move every node to its position for this round. Dead children are
    pruned from the tree, links that broke are detached.
    return: list of broken (parent, child) links
    """
    for node in nodes:
        node.position = model.position(node, round)

    broken = []
    for child in nodes:
        if child.parent is None:
            continue
        parent = nodes[child.parent]
        if not child.alive:
            detach(nodes, child)
        elif (not parent.alive or
              child.distance_to(parent) > child.normal_range):
            broken.append((parent.id, child.id))
            detach(nodes, child)
            log.debug('Round %d: link %d -> %d broken', round, parent.id,
                      child.id)
    return broken


def join_candidates(child, nodes, table):
    found = []
    for node in nodes:
        if (node.nodeclass.name != PARENT or not node.alive or
                node.id == child.id):
            continue
        d = child.distance_to(node)
        if d > min(child.normal_range, node.normal_range):
            continue
        hops = table.hops_to_sink(node.id)
        found.append((INF if hops is None else hops, d, node.id))
    return [nodes[i] for h, d, i in sorted(found)]


def join_request(child, nodes, table, child_cap, hello_size, ledger, round):
    """
    Ask in-range parents, fewest hops to the sink first then nearest, to
    adopt a child. Each request costs the child a transmission and the
    parent a reception, an acceptance costs the reverse.
    """
    if child.nodeclass.name not in CHILD_CLASSES:
        raise ValueError('Node %d is not a child node' % child.id)
    detach(nodes, child)
    radio = table.radio
    request = transmit_energy(hello_size, child.normal_range, radio)
    heard = receive_energy(hello_size, radio)

    for parent in join_candidates(child, nodes, table):
        if ledger.debit(child, request, JOIN, round) != request:
            break
        ledger.debit(parent, heard, JOIN, round)
        if not parent.alive or len(parent.children) >= child_cap:
            continue
        accept = transmit_energy(hello_size, parent.normal_range, radio)
        if (ledger.debit(parent, accept, JOIN, round) != accept or
                not parent.alive):
            continue
        if ledger.debit(child, heard, JOIN, round) != heard:
            break
        parent.children.add(child.id)
        child.parent = parent.id
        log.debug('Round %d: %d joined %d', round, child.id, parent.id)
        return JoinResult(JOINED, parent.id)

    log.debug('Round %d: %d not adopted', round, child.id)
    return JoinResult(REJECTED, None)
