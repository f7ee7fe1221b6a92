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
Hop-count discovery, route selection and packet forwarding.

The route table is rebuilt from the current geometry, restricted to the
links learnt by the last hello flood, whenever a link is marked or a node
dies. A node's candidate routes are one per next-hop neighbour that is
strictly nearer the sink in hops, each continuing along that neighbour's
own best route.
"""

from collections import namedtuple
import logging

import networkx

from .energy import RECEIVE, TRANSMIT, HELLO
from .energy import receive_energy, route_energy, transmit_energy
from .model import CRITICAL, ON_DEMAND, CHILD_CLASSES, SINK, distance
from . import thermal

log = logging.getLogger("wbasnsim.routing")

# Lost reasons
SOURCE_DEAD = 'source_dead'
ENERGY_EXHAUSTED = 'energy_exhausted'
NODE_DEATH = 'node_death'
NO_ROUTE = 'no_route'
HOTSPOT = 'hotspot'
LOST_REASONS = (SOURCE_DEAD, ENERGY_EXHAUSTED, NODE_DEATH, NO_ROUTE, HOTSPOT)


class NoRoute(Exception):

    def __init__(self, node):
        super(NoRoute, self).__init__('No route to the sink')
        self.node = node

    def __str__(self):
        return '%s\nnode: %s' % (super(NoRoute, self).__str__(), self.node)


class RoutingException(Exception):

    def __init__(self, msg, node):
        super(RoutingException, self).__init__(msg)
        self.node = node

    def __str__(self):
        return '%s\nnode: %s' % (
            super(RoutingException, self).__str__(), self.node)


Route = namedtuple('Route', 'path hop_count energy_cost')

TransmissionPlan = namedtuple('TransmissionPlan', [
    'packet',
    'path',          # NodeIds from the source to the sink, None if dropped
    'full_power',    # single hop at full power
    'lost_reason',   # set when the packet is dropped at dispatch
])

DeliveryOutcome = namedtuple('DeliveryOutcome', [
    'packet', 'delivered', 'reason', 'escalated'])


def make_route(path, nodes, bits, radio):
    distances = [distance(nodes[a].position, nodes[b].position)
                 for a, b in zip(path, path[1:])]
    cost = route_energy(distances, bits, radio).total
    return Route(tuple(path), len(path) - 1, cost)


def select_route(candidates):
    """
    Fewest hops first, then least energy, then the lowest path in NodeId
    order
    """
    if not candidates:
        raise NoRoute(None)
    return min(candidates,
               key=lambda r: (r.hop_count, r.energy_cost, r.path))


def link_in_range(a, b):
    return distance(a.position, b.position) <= min(
        a.normal_range, b.normal_range)


def geometric_graph(nodes):
    """
    Undirected graph of the alive nodes with an edge between every pair
    in range of each other
    """
    graph = networkx.Graph()
    alive = [n for n in nodes if n.alive]
    graph.add_nodes_from(n.id for n in alive)
    for i, a in enumerate(alive):
        for b in alive[i + 1:]:
            if link_in_range(a, b):
                graph.add_edge(a.id, b.id)
    return graph


def edge_set(nodes):
    return frozenset(tuple(sorted(e)) for e in geometric_graph(nodes).edges())


class RouteTable(object):
    """
    nodes: list of Node indexed by NodeId
    radio: RadioParams used for route energy costs
    thermal_state: optional ThermalState whose marked links are unusable
    known_links: optional edge_set of the last hello flood. Links outside
      it are unknown to the nodes and unused, known links drop out once
      they break.
    """

    def __init__(self, nodes, radio, thermal_state=None, cluster_heads=(),
                 known_links=None):
        self.nodes = nodes
        self.radio = radio
        self.thermal = thermal_state
        self.cluster_heads = frozenset(cluster_heads)
        self.known_links = known_links
        self.refresh()

    def set_cluster_heads(self, cluster_heads):
        self.cluster_heads = frozenset(cluster_heads)
        self.refresh()

    def refresh(self):
        self.graph = geometric_graph(self.nodes)
        if self.known_links is not None:
            self.graph.remove_edges_from(
                [e for e in self.graph.edges()
                 if tuple(sorted(e)) not in self.known_links])
        usable = networkx.DiGraph()
        usable.add_nodes_from(self.graph.nodes())
        for a, b in self.graph.edges():
            for u, v in ((a, b), (b, a)):
                if u != SINK and not self._marked(u, v):
                    usable.add_edge(u, v)
        for ch in self.cluster_heads:
            if ch in usable and not self._marked(ch, SINK):
                usable.add_edge(ch, SINK)
        self.usable = usable
        self.hops = networkx.single_source_shortest_path_length(
            usable.reverse(copy=False), SINK)
        self._best = {SINK: (SINK,)}

    def _marked(self, u, v):
        return self.thermal is not None and self.thermal.is_marked(u, v)

    def neighbors(self, node_id):
        if node_id not in self.graph:
            return []
        return sorted(self.graph.neighbors(node_id))

    def hops_to_sink(self, node_id):
        """
        return: the hop count, or None if the sink cannot be reached
        """
        return self.hops.get(node_id)

    def _best_path(self, node_id):
        if node_id not in self._best:
            # Costs scale linearly with the payload so one bit ranks them
            routes = self._candidates(node_id, 1)
            self._best[node_id] = select_route(routes).path
        return self._best[node_id]

    def _candidates(self, node_id, bits):
        hops = self.hops.get(node_id)
        if hops is None or node_id == SINK:
            return []
        routes = []
        for v in sorted(self.usable.successors(node_id)):
            if self.hops.get(v) == hops - 1:
                path = (node_id,) + self._best_path(v)
                routes.append(make_route(path, self.nodes, bits, self.radio))
        return routes

    def candidate_routes(self, node_id, bits=None):
        """
        One route per usable next hop that is one hop nearer the sink.
        bits: payload used for energy costs, default the node's payload
        """
        if bits is None:
            bits = self.nodes[node_id].nodeclass.payload_size
        return self._candidates(node_id, bits)

    def best_route(self, node_id, bits=None):
        try:
            return select_route(self.candidate_routes(node_id, bits))
        except NoRoute:
            raise NoRoute(node_id)


def hello_flood(nodes, radio, hello_size, ledger, round, thermal_state=None,
                cluster_heads=()):
    """
    Every alive sensor broadcasts a hello at its normal range and hears
    one hello from each neighbour. The sink's hellos are free.
    return: the RouteTable built from the flooded topology
    """
    table = RouteTable(nodes, radio, thermal_state, cluster_heads)
    deaths = 0
    for node in nodes:
        if node.is_sink or not node.alive:
            continue
        cost = transmit_energy(hello_size, node.normal_range, radio)
        ledger.debit(node, cost, HELLO, round)
        for neighbor in table.neighbors(node.id):
            if not node.alive:
                break
            ledger.debit(node, receive_energy(hello_size, radio), HELLO,
                         round)
        if not node.alive:
            deaths += 1
    log.debug('Hello flood in round %d, %d reachable', round,
              len(table.hops) - 1)
    if deaths:
        table.refresh()
    return table


def dispatch(packet, node, table, features, full_power_range):
    """
    Plan the delivery of a packet held by an alive node.
    features: ProtocolFeatures of the running protocol
    """
    if not node.alive:
        raise RoutingException('Dispatch for a dead node', node.id)
    if packet.kind in (CRITICAL, ON_DEMAND):
        return _full_power_plan(packet, node, table, full_power_range)
    if (features.mobility_support and node.nodeclass.name in CHILD_CLASSES
            and node.parent is None):
        # Orphans talk straight to the sink until a join succeeds
        return _full_power_plan(packet, node, table, full_power_range)
    try:
        route = table.best_route(node.id, packet.size)
        return TransmissionPlan(packet, route.path, False, None)
    except NoRoute:
        if features.escalation:
            log.debug('No route from %d, escalating %r', node.id, packet)
            return _full_power_plan(packet, node, table, full_power_range)
        log.debug('No route from %d, dropping %r', node.id, packet)
        return TransmissionPlan(packet, None, False, NO_ROUTE)


def _full_power_plan(packet, node, table, full_power_range):
    sink = table.nodes[SINK]
    if node.distance_to(sink) > full_power_range:
        log.warning('Node %d is beyond full-power range of the sink',
                    node.id)
        return TransmissionPlan(packet, None, True, NO_ROUTE)
    return TransmissionPlan(packet, (node.id, SINK), True, None)


class _Forwarder(object):
    """
    Walks one packet along its plan, debiting energy and consulting the
    thermal state hop by hop
    """

    def __init__(self, plan, table, thermal_state, ledger, features,
                 full_power_range, round):
        self.packet = plan.packet
        self.plan = plan
        self.table = table
        self.nodes = table.nodes
        self.radio = table.radio
        self.thermal = thermal_state
        self.ledger = ledger
        self.features = features
        self.full_power_range = full_power_range
        self.round = round
        self.escalated = False

    def outcome(self, delivered, reason=None):
        return DeliveryOutcome(self.packet, delivered, reason, self.escalated)

    def transmit(self, sender, receiver):
        """
        Every transmission heats the sender. A relay's forward was budgeted
        when it accepted the packet, the heat of a node's own packet and of
        an escalation cannot be refused and saturates.
        return: True if the sender paid the whole cost
        """
        d = sender.distance_to(receiver)
        cost = transmit_energy(self.packet.size, d, self.radio)
        taken = self.ledger.debit(sender, cost, TRANSMIT, self.round)
        if taken == cost:
            own = sender.id == self.packet.source or self.escalated
            self.thermal.accrue(sender, thermal.TRANSMIT, self.packet.size,
                                saturate=own)
        if not sender.alive:
            self.table.refresh()
        return taken == cost

    def receive(self, receiver):
        if receiver.is_sink:
            return True
        cost = receive_energy(self.packet.size, self.radio)
        taken = self.ledger.debit(receiver, cost, RECEIVE, self.round)
        if not receiver.alive:
            self.table.refresh()
        return taken == cost

    def last_alive_holder(self):
        for node_id in reversed(self.packet.hop_trace):
            if self.nodes[node_id].alive:
                return self.nodes[node_id]
        return None

    def escalate(self, holder):
        """
        Full-power single hop from the holder straight to the sink. The
        hop trace is cut back to the holder, hops past it never reached
        the sink.
        """
        sink = self.nodes[SINK]
        if holder is None:
            return self.outcome(False, NODE_DEATH)
        if holder.distance_to(sink) > self.full_power_range:
            return self.outcome(False, NO_ROUTE)
        self.escalated = True
        log.debug('Escalating %r from %d', self.packet, holder.id)
        if not self.transmit(holder, sink):
            return self.outcome(False, ENERGY_EXHAUSTED)
        trace = self.packet.hop_trace
        last = len(trace) - 1 - trace[::-1].index(holder.id)
        del trace[last + 1:]
        trace.append(SINK)
        return self.outcome(True)

    def stranded(self):
        if self.features.escalation:
            return self.escalate(self.last_alive_holder())
        return self.outcome(False, NODE_DEATH)

    def reroute(self, sender):
        try:
            return self.table.best_route(sender.id, self.packet.size).path
        except NoRoute:
            return None

    def run(self):
        path = list(self.plan.path)
        i = 0
        while path[i] != SINK:
            sender = self.nodes[path[i]]
            receiver = self.nodes[path[i + 1]]
            if not receiver.alive:
                self.table.refresh()
                alternative = self.reroute(sender)
                if alternative is None:
                    return self.no_alternative(sender, NODE_DEATH)
                path = path[:i] + list(alternative)
                continue
            answer = thermal.ACCEPTED
            if not receiver.is_sink:
                answer = self.thermal.try_forward(sender, receiver,
                                                  self.packet)
            if answer == thermal.RETURNED:
                self.table.refresh()
                alternative = self.reroute(sender)
                if alternative is None:
                    return self.no_alternative(sender, HOTSPOT)
                path = path[:i] + list(alternative)
                continue
            if not self.transmit(sender, receiver):
                if sender.id == self.packet.source:
                    return self.outcome(False, ENERGY_EXHAUSTED)
                return self.stranded()
            if not self.receive(receiver):
                return self.stranded()
            self.packet.hop_trace.append(receiver.id)
            i += 1
        return self.outcome(True)

    def no_alternative(self, sender, reason):
        if self.features.escalation:
            return self.escalate(sender)
        return self.outcome(False, reason)


def execute_plan(plan, table, thermal_state, ledger, features,
                 full_power_range, round):
    """
    Carry out a TransmissionPlan.
    return: DeliveryOutcome, the packet's hop_trace extended with the
      nodes that carried it towards the sink
    """
    if plan.path is None:
        return DeliveryOutcome(plan.packet, False, plan.lost_reason, False)
    forwarder = _Forwarder(plan, table, thermal_state, ledger, features,
                           full_power_range, round)
    return forwarder.run()
