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


import itertools

import networkx
import numpy
import pytest

from wbasnsim import energy, routing
from wbasnsim.energy import EnergyLedger
from wbasnsim.model import FEATURES, MATTEMPT, MULTIHOP, ATTEMPT
from wbasnsim.model import CRITICAL, NORMAL, ON_DEMAND, SINK
from wbasnsim.model import Node, NodeClass, Packet, RadioParams
from wbasnsim.routing import Route, RouteTable, NoRoute
from wbasnsim.thermal import ThermalState

approx = pytest.approx
INF = float('inf')
RADIO = RadioParams()


def make_nodes(positions, ranges=1.2, energies=0.5, name='parent'):
    """
    Sink first, then one sensor per remaining position
    """
    sink = Node(SINK, NodeClass('sink', INF, 0, 0.0, INF), positions[0],
                INF)
    nodes = [sink]
    for i, position in enumerate(positions[1:], 1):
        r = ranges[i - 1] if isinstance(ranges, list) else ranges
        e = energies[i - 1] if isinstance(energies, list) else energies
        nodes.append(Node(i, NodeClass(name, e, 4000, 0.0, r), position, e))
    return nodes


def chain(energies=0.5):
    # sink - 1 - 2, only adjacent pairs in range
    return make_nodes([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)],
                      energies=energies)


def diamond(b=(1.0, -0.5)):
    # 3 reaches the sink through 1 or 2
    return make_nodes([(0.0, 0.0), (1.0, 0.5), b, (2.0, 0.0)])


class TestRouteTable(object):

    def test_chain_hops(self):
        table = RouteTable(chain(), RADIO)
        assert [table.hops_to_sink(i) for i in range(3)] == [0, 1, 2]
        assert table.neighbors(1) == [0, 2]

    def test_fully_connected(self):
        nodes = make_nodes([(0, 0), (1, 0), (0, 1), (1, 1)], ranges=5.0)
        table = RouteTable(nodes, RADIO)
        assert [table.hops_to_sink(i) for i in (1, 2, 3)] == [1, 1, 1]

    def test_unreachable(self):
        nodes = make_nodes([(0, 0), (1, 0), (4, 4)])
        table = RouteTable(nodes, RADIO)
        assert table.hops_to_sink(2) is None
        assert table.candidate_routes(2) == []
        with pytest.raises(NoRoute) as exc:
            table.best_route(2)
        assert exc.value.node == 2

    def test_range_is_minimum_of_endpoints(self):
        nodes = make_nodes([(0, 0), (1, 0), (2.5, 0)], ranges=[3.0, 1.0])
        table = RouteTable(nodes, RADIO)
        assert table.hops_to_sink(2) is None

    def test_dead_nodes_excluded(self):
        nodes = chain()
        nodes[1].energy = 0.0
        table = RouteTable(nodes, RADIO)
        assert table.hops_to_sink(1) is None
        assert table.hops_to_sink(2) is None

    def test_candidates_tie_break(self):
        table = RouteTable(diamond(), RADIO)
        routes = table.candidate_routes(3)
        assert [r.path for r in routes] == [(3, 1, 0), (3, 2, 0)]
        assert routes[0].energy_cost == approx(routes[1].energy_cost)
        assert table.best_route(3).path == (3, 1, 0)

    def test_cheaper_route(self):
        table = RouteTable(diamond(b=(0.9, -0.3)), RADIO)
        routes = table.candidate_routes(3)
        assert len(routes) == 2
        assert table.best_route(3).path == (3, 2, 0)
        assert table.best_route(3).hop_count == 2

    def test_route_energy_cost(self):
        nodes = chain()
        route = RouteTable(nodes, RADIO).best_route(2)
        expected = (energy.transmit_energy(4000, 1.0) +
                    energy.receive_energy(4000) +
                    energy.transmit_energy(4000, 1.0))
        assert route == Route((2, 1, 0), 2, approx(expected))

    def test_marked_link_unusable(self):
        state = ThermalState()
        state.mark(3, 1)
        table = RouteTable(diamond(), RADIO, state)
        assert [r.path for r in table.candidate_routes(3)] == [(3, 2, 0)]

    def test_cluster_head_shortcut(self):
        nodes = chain()
        table = RouteTable(nodes, RADIO, cluster_heads=[2])
        assert table.hops_to_sink(2) == 1
        assert table.best_route(2).path == (2, 0)
        table.set_cluster_heads([])
        assert table.hops_to_sink(2) == 2

    def test_edge_set(self):
        assert routing.edge_set(chain()) == frozenset([(0, 1), (1, 2)])

    def test_known_links(self):
        nodes = diamond()
        known = routing.edge_set(nodes) - frozenset([(0, 1)])
        table = RouteTable(nodes, RADIO, known_links=known)
        assert table.neighbors(1) == [2, 3]
        assert table.best_route(3).path == (3, 2, 0)
        # A known link that breaks is dropped, unknown ones stay unused
        nodes[2].position = (5.0, 5.0)
        table.refresh()
        assert table.hops_to_sink(3) is None


class TestSelectRoute(object):

    def test_fewest_hops(self):
        short = Route((3, 0), 1, 9e-4)
        long = Route((3, 1, 0), 2, 1e-4)
        assert routing.select_route([long, short]) == short

    def test_least_energy(self):
        a = Route((3, 1, 0), 2, 3.0e-4)
        b = Route((3, 2, 0), 2, 2.5e-4)
        assert routing.select_route([a, b]) == b

    def test_single(self):
        a = Route((3, 1, 0), 2, 3.0e-4)
        assert routing.select_route([a]) == a

    def test_empty(self):
        with pytest.raises(NoRoute):
            routing.select_route([])

    def test_permutation_invariant(self):
        routes = [Route((4, 1, 0), 2, 2e-4), Route((4, 2, 0), 2, 2e-4),
                  Route((4, 3, 1, 0), 3, 1e-4), Route((4, 0), 1, 5e-4)]
        results = set(routing.select_route(list(p))
                      for p in itertools.permutations(routes))
        assert results == set([Route((4, 0), 1, 5e-4)])

    def test_lexicographic(self):
        routes = [Route((4, 2, 0), 2, 2e-4), Route((4, 1, 0), 2, 2e-4)]
        assert routing.select_route(routes).path == (4, 1, 0)


class TestBruteForce(object):

    def brute_force(self, table, nodes, source):
        best = None
        for path in networkx.all_simple_paths(table.usable, source, SINK):
            route = routing.make_route(path, nodes, 4000, RADIO)
            key = (route.hop_count, route.energy_cost, route.path)
            if best is None or key < best:
                best = key
        return best

    def test_small_graphs(self):
        checked = 0
        for seed in range(500):
            rng = numpy.random.default_rng(seed)
            count = int(rng.integers(2, 6))
            positions = [(1.5, 1.5)] + [
                (float(x), float(y))
                for x, y in rng.uniform(0, 3, (count - 1, 2))]
            ranges = [float(r) for r in
                      rng.choice([1.0, 1.5, 2.5], size=count - 1)]
            nodes = make_nodes(positions, ranges=ranges)
            table = RouteTable(nodes, RADIO)
            for node in nodes[1:]:
                expected = self.brute_force(table, nodes, node.id)
                if expected is None:
                    assert table.hops_to_sink(node.id) is None
                    continue
                route = table.best_route(node.id)
                assert route.hop_count == expected[0]
                assert route.energy_cost == approx(expected[1], rel=1e-12)
                assert route.path == expected[2]
                checked += 1
        assert checked > 300


class TestHelloFlood(object):

    def test_debits(self):
        nodes = chain()
        ledger = EnergyLedger()
        table = routing.hello_flood(nodes, RADIO, 200, ledger, 1)
        tx = energy.transmit_energy(200, 1.2)
        rx = energy.receive_energy(200)
        assert 0.5 - nodes[1].energy == approx(tx + 2 * rx)
        assert 0.5 - nodes[2].energy == approx(tx + rx)
        assert ledger.by_purpose[energy.HELLO] == approx(2 * tx + 3 * rx)
        assert table.hops_to_sink(2) == 2

    def test_death_during_flood(self):
        nodes = chain(energies=[0.5, 1e-6])
        ledger = EnergyLedger()
        table = routing.hello_flood(nodes, RADIO, 200, ledger, 1)
        assert not nodes[2].alive
        assert nodes[2].died_round == 1
        assert table.hops_to_sink(2) is None


class TestDispatch(object):

    def packet(self, kind, source):
        return Packet(1, kind, 4000, source, 1)

    @pytest.mark.parametrize('kind', [CRITICAL, ON_DEMAND])
    def test_emergency_single_hop(self, kind):
        nodes = chain()
        table = RouteTable(nodes, RADIO)
        plan = routing.dispatch(self.packet(kind, 2), nodes[2], table,
                                FEATURES[ATTEMPT], 10.0)
        assert plan.path == (2, 0)
        assert plan.full_power

    def test_normal_multi_hop(self):
        nodes = chain()
        table = RouteTable(nodes, RADIO)
        plan = routing.dispatch(self.packet(NORMAL, 2), nodes[2], table,
                                FEATURES[ATTEMPT], 10.0)
        assert plan.path == (2, 1, 0)
        assert not plan.full_power

    @pytest.mark.parametrize('protocol,path,reason', [
        (MATTEMPT, (2, 0), None),
        (ATTEMPT, None, routing.NO_ROUTE),
        (MULTIHOP, None, routing.NO_ROUTE),
    ])
    def test_no_route(self, protocol, path, reason):
        nodes = make_nodes([(0, 0), (1, 0), (3, 0)])
        table = RouteTable(nodes, RADIO)
        nodes[2].parent = 1
        plan = routing.dispatch(self.packet(NORMAL, 2), nodes[2], table,
                                FEATURES[protocol], 10.0)
        assert plan.path == path
        assert plan.lost_reason == reason

    def test_beyond_full_power(self):
        nodes = make_nodes([(0, 0), (1, 0), (3, 0)])
        table = RouteTable(nodes, RADIO)
        plan = routing.dispatch(self.packet(CRITICAL, 2), nodes[2], table,
                                FEATURES[MATTEMPT], 2.0)
        assert plan.path is None
        assert plan.lost_reason == routing.NO_ROUTE

    def test_orphan_child(self):
        nodes = make_nodes([(0, 0), (1, 0), (2, 0)], name='first_child')
        table = RouteTable(nodes, RADIO)
        plan = routing.dispatch(self.packet(NORMAL, 2), nodes[2], table,
                                FEATURES[MATTEMPT], 10.0)
        assert plan.path == (2, 0)
        nodes[2].parent = 1
        plan = routing.dispatch(self.packet(NORMAL, 2), nodes[2], table,
                                FEATURES[MATTEMPT], 10.0)
        assert plan.path == (2, 1, 0)

    def test_dead_node(self):
        nodes = chain()
        table = RouteTable(nodes, RADIO)
        nodes[2].energy = 0.0
        with pytest.raises(routing.RoutingException):
            routing.dispatch(self.packet(NORMAL, 2), nodes[2], table,
                             FEATURES[ATTEMPT], 10.0)


class TestExecutePlan(object):

    def setup_method(self, method):
        self.ledger = EnergyLedger()
        self.state = ThermalState()

    def execute(self, nodes, source, protocol, kind=NORMAL, refuse=True):
        self.state.refuse = refuse
        table = RouteTable(nodes, RADIO, self.state)
        packet = Packet(1, kind, 4000, source, 1)
        features = FEATURES[protocol]
        plan = routing.dispatch(packet, nodes[source], table, features, 10.0)
        return routing.execute_plan(plan, table, self.state, self.ledger,
                                    features, 10.0, 1)

    def test_single_hop(self):
        nodes = chain()
        outcome = self.execute(nodes, 1, ATTEMPT)
        assert outcome.delivered
        assert outcome.packet.hop_trace == [1, 0]
        assert 0.5 - nodes[1].energy == approx(
            energy.transmit_energy(4000, 1.0))
        assert nodes[0].energy == INF

    def test_conservation(self):
        nodes = make_nodes([(0, 0), (1.1, 0), (1.6, 0.9)])
        outcome = self.execute(nodes, 2, ATTEMPT)
        assert outcome.delivered
        assert outcome.packet.hop_trace == [2, 1, 0]
        d1 = nodes[2].distance_to(nodes[1])
        d2 = nodes[1].distance_to(nodes[0])
        expected = (energy.transmit_energy(4000, d1) +
                    energy.receive_energy(4000) +
                    energy.transmit_energy(4000, d2))
        assert self.ledger.total == approx(expected, rel=1e-12)
        assert self.ledger.total == approx(
            energy.route_energy([d1, d2], 4000).total, rel=1e-12)

    def test_every_hop_heats(self):
        nodes = chain()
        self.execute(nodes, 2, ATTEMPT)
        # Source transmits, relay receives and transmits
        assert nodes[2].temperature == approx(0.1)
        assert nodes[1].temperature == approx(0.2)
        assert nodes[0].temperature == 0.0

    def test_relay_without_room_returns(self):
        nodes = diamond()
        nodes[1].temperature = 0.95
        outcome = self.execute(nodes, 3, ATTEMPT)
        assert outcome.delivered
        assert outcome.packet.hop_trace == [3, 2, 0]
        assert self.state.is_marked(3, 1)
        assert nodes[1].temperature == 0.95
        assert self.state.peak_temperature <= 1.1 + 1e-12

    def test_full_power_heats(self):
        nodes = chain()
        self.execute(nodes, 2, ATTEMPT, kind=CRITICAL)
        assert nodes[2].temperature == approx(0.1)
        assert nodes[1].temperature == 0.0

    def test_returned_without_alternative(self):
        nodes = chain()
        nodes[1].temperature = 1.0
        outcome = self.execute(nodes, 2, ATTEMPT)
        assert not outcome.delivered
        assert outcome.reason == routing.HOTSPOT
        assert self.state.is_marked(2, 1)
        # Refusal precedes the transmission
        assert self.ledger.total == 0.0

    def test_returned_escalates(self):
        nodes = chain()
        nodes[1].temperature = 1.0
        outcome = self.execute(nodes, 2, MATTEMPT)
        assert outcome.delivered
        assert outcome.escalated
        assert outcome.packet.hop_trace == [2, 0]
        assert self.ledger.total == approx(energy.transmit_energy(4000, 2.0))

    def test_returned_reroutes(self):
        nodes = diamond()
        nodes[1].temperature = 1.0
        outcome = self.execute(nodes, 3, ATTEMPT)
        assert outcome.delivered
        assert not outcome.escalated
        assert outcome.packet.hop_trace == [3, 2, 0]
        assert self.state.is_marked(3, 1)

    def test_multihop_never_returns(self):
        nodes = chain()
        nodes[1].temperature = 1.0
        outcome = self.execute(nodes, 2, MULTIHOP, refuse=False)
        assert outcome.delivered
        assert self.state.hotspot_links == {}

    @pytest.mark.parametrize('protocol,delivered,reason', [
        (MULTIHOP, False, routing.NODE_DEATH),
        (ATTEMPT, False, routing.NODE_DEATH),
        (MATTEMPT, True, None),
    ])
    def test_relay_dies(self, protocol, delivered, reason):
        # Enough for the reception, not for the forward
        relay = energy.receive_energy(4000) + 1e-5
        nodes = chain(energies=[relay, 0.5])
        outcome = self.execute(nodes, 2, protocol,
                               refuse=FEATURES[protocol].thermal)
        assert not nodes[1].alive
        assert outcome.delivered == delivered
        assert outcome.reason == reason
        if delivered:
            # Resent at full power by the source, the dead relay never
            # reached the sink
            assert outcome.escalated
            assert outcome.packet.hop_trace == [2, SINK]
            assert self.ledger.by_node[2] == approx(
                energy.transmit_energy(4000, 1.0) +
                energy.transmit_energy(4000, 2.0))
        else:
            assert outcome.packet.hop_trace == [2, 1]
        assert self.ledger.by_node[1] == approx(relay)

    def test_source_exhausted(self):
        nodes = chain(energies=[0.5, 1e-5])
        outcome = self.execute(nodes, 2, MATTEMPT)
        assert not outcome.delivered
        assert outcome.reason == routing.ENERGY_EXHAUSTED
        assert not nodes[2].alive

    def test_dropped_plan(self):
        nodes = make_nodes([(0, 0), (1, 0), (3, 0)])
        nodes[2].parent = 1
        outcome = self.execute(nodes, 2, ATTEMPT)
        assert not outcome.delivered
        assert outcome.reason == routing.NO_ROUTE
        assert self.ledger.total == 0.0
