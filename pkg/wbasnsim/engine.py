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
The round loop. Every round runs the same phases in order: movement,
re-joins (M-ATTEMPT) and route maintenance, cluster-head election, TDMA
scheduling, traffic generation, delivery with critical and on-demand
traffic ahead of normal data, cooling and a metrics snapshot.
"""

from collections import namedtuple
import logging
import math

from .energy import EnergyLedger
from .mobility import JOINED, MobilityModel, join_request, step_positions
from .model import CHILD_CLASSES, CRITICAL, NORMAL, ON_DEMAND, PACKET_KINDS
from .model import Packet, RandomStreams, place_nodes
from .routing import LOST_REASONS, SOURCE_DEAD, DeliveryOutcome
from .routing import RouteTable, dispatch, edge_set, execute_plan
from .routing import hello_flood
from .thermal import ThermalState

log = logging.getLogger("wbasnsim.engine")


TdmaSchedule = namedtuple('TdmaSchedule', 'round slots')


def build_tdma(eligible, round=0):
    """
    One slot per sender in ascending NodeId order
    """
    return TdmaSchedule(round, sorted(set(eligible)))


class ClusterHeadRotation(object):
    """
    Epoch based self-election: within an epoch of ceil(1/p) rounds a node
    that has not yet served becomes cluster head when its draw falls
    below p / (1 - p * (r mod epoch)). A draw is taken for every sensor
    every round, alive or not.
    """

    def __init__(self, probability, rng):
        self.probability = probability
        self.rng = rng
        self.epoch = int(math.ceil(1.0 / probability)) if probability else 0
        self.served = set()

    def threshold(self, round):
        p = self.probability
        return p / (1 - p * ((round - 1) % self.epoch))

    def elect(self, nodes, round):
        sensors = sorted((n for n in nodes if not n.is_sink),
                         key=lambda n: n.id)
        draws = self.rng.random(len(sensors))
        if not self.probability:
            return set()
        if (round - 1) % self.epoch == 0:
            self.served.clear()
        threshold = self.threshold(round)
        elected = set(n.id for n, x in zip(sensors, draws)
                      if n.alive and n.id not in self.served and
                      x < threshold)
        self.served |= elected
        return elected


RoundMetrics = namedtuple('RoundMetrics', [
    'round',
    'dead_count',
    'generated',
    # this round
    'delivered_normal', 'delivered_critical', 'delivered_on_demand', 'lost',
    # since round 1
    'total_normal', 'total_critical', 'total_on_demand', 'total_lost',
    'total_residual_energy',
    'ch_count',
    'hotspot_events',
])

RunSummary = namedtuple('RunSummary', [
    'protocol', 'seed', 'rounds', 'first_death_round', 'last_death_round',
    'generated', 'delivered', 'lost', 'lost_by_reason', 'initial_energy',
    'residual_energy', 'energy_spent', 'hotspot_events', 'escalations',
    'floods', 'joins', 'peak_temperature'])

ScenarioResult = namedtuple('ScenarioResult', 'metrics summary')


class Simulation(object):

    def __init__(self, config):
        self.config = config.validate()
        self.features = config.features
        self.radio = config.radio
        self.streams = RandomStreams(config.seed)
        self.nodes = place_nodes(config, self.streams.placement)
        self.sensors = [n for n in self.nodes if not n.is_sink]
        self.mobility = MobilityModel.from_rng(
            self.nodes, config, self.streams.mobility)
        self.ledger = EnergyLedger()
        self.thermal = ThermalState.from_config(config)
        self.rotation = ClusterHeadRotation(
            config.ch_probability, self.streams.election)
        self.initial_energy = self.residual_energy()

        self.table = None
        self.flooded_edges = None
        self.packet_count = 0
        self.totals = dict((kind, 0) for kind in PACKET_KINDS)
        self.lost_by_reason = dict((reason, 0) for reason in LOST_REASONS)
        self.generated = 0
        self.escalations = 0
        self.floods = 0
        self.joins = 0
        self.outcomes = []
        self.broken = []

    def residual_energy(self):
        return sum(n.energy for n in self.sensors)

    def dead_count(self):
        return sum(1 for n in self.sensors if not n.alive)

    def run_round(self, round):
        self.outcomes = []
        self.broken = []
        if not any(n.alive for n in self.sensors):
            return self._snapshot(round, 0, 0, self.thermal.events)
        hotspots = self.thermal.events

        self.broken = step_positions(self.nodes, self.mobility, round)
        self._maintain_routes(round)

        cluster_heads = set()
        if self.config.ch_rotation:
            cluster_heads = self.rotation.elect(self.nodes, round)
        self.table.set_cluster_heads(cluster_heads)

        schedule = build_tdma([n.id for n in self.sensors if n.alive], round)
        packets = self._generate(round, schedule)
        for packet in packets:
            self.outcomes.append(self._deliver(packet, round))

        self.thermal.cool_all(self.nodes)
        return self._snapshot(round, len(packets), len(cluster_heads),
                              hotspots)

    def _maintain_routes(self, round):
        """
        Hello flood in the first round and again whenever the topology
        changed. Without mobility support any change of the connectivity
        graph counts, with it a broken parent link or a join. Between
        floods nodes only know the links of the last flood.
        """
        if self.table is None:
            self._flood(round)
            if self.features.mobility_support:
                self._invite(round)
        elif self.features.mobility_support:
            self.table = self._known_table()
            joins = self._invite(round)
            if self.broken or joins:
                self._flood(round)
        elif edge_set(self.nodes) != self.flooded_edges:
            self._flood(round)
        else:
            self.table = self._known_table()

    def _flood(self, round):
        self.table = hello_flood(self.nodes, self.radio,
                                 self.config.hello_size, self.ledger,
                                 round, self.thermal)
        self.flooded_edges = edge_set(self.nodes)
        self.floods += 1

    def _known_table(self):
        return RouteTable(self.nodes, self.radio, self.thermal,
                          known_links=self.flooded_edges)

    def _invite(self, round):
        """
        Orphaned children ask for a parent
        return: the number of joins
        """
        just_broken = set(child for parent, child in self.broken)
        joins = 0
        for child in self.sensors:
            if (child.nodeclass.name not in CHILD_CLASSES or
                    not child.alive or child.parent is not None):
                continue
            result = join_request(child, self.nodes, self.table,
                                  self.config.child_cap,
                                  self.config.hello_size, self.ledger, round)
            if result.status == JOINED:
                joins += 1
            elif child.id in just_broken:
                log.warning('Round %d: node %d lost its parent and could '
                            'not re-join', round, child.id)
        self.joins += joins
        self.table.refresh()
        return joins

    def _packet(self, kind, node, round):
        self.packet_count += 1
        return Packet(self.packet_count, kind, node.nodeclass.payload_size,
                      node.id, round)

    def _generate(self, round, schedule):
        traffic = self.streams.traffic
        emergency = []
        for node in self.sensors:
            critical = traffic.random()
            polled = traffic.random()
            if not (self.features.emergency and node.alive):
                continue
            if critical < self.config.p_critical:
                emergency.append(self._packet(CRITICAL, node, round))
            if polled < self.config.p_on_demand:
                emergency.append(self._packet(ON_DEMAND, node, round))
        normal = [self._packet(NORMAL, self.nodes[i], round)
                  for i in schedule.slots]
        return emergency + normal

    def _deliver(self, packet, round):
        source = self.nodes[packet.source]
        if not source.alive:
            outcome = DeliveryOutcome(packet, False, SOURCE_DEAD, False)
        else:
            plan = dispatch(packet, source, self.table, self.features,
                            self.config.full_power_range)
            outcome = execute_plan(plan, self.table, self.thermal,
                                   self.ledger, self.features,
                                   self.config.full_power_range, round)
        self.generated += 1
        if outcome.delivered:
            self.totals[packet.kind] += 1
        else:
            self.lost_by_reason[outcome.reason] += 1
        if outcome.escalated:
            self.escalations += 1
        return outcome

    def _snapshot(self, round, generated, ch_count, hotspots_before):
        delivered = dict((kind, 0) for kind in PACKET_KINDS)
        lost = 0
        for outcome in self.outcomes:
            if outcome.delivered:
                delivered[outcome.packet.kind] += 1
            else:
                lost += 1
        return RoundMetrics(
            round, self.dead_count(), generated,
            delivered[NORMAL], delivered[CRITICAL], delivered[ON_DEMAND],
            lost,
            self.totals[NORMAL], self.totals[CRITICAL],
            self.totals[ON_DEMAND], sum(self.lost_by_reason.values()),
            self.residual_energy(), ch_count,
            self.thermal.events - hotspots_before)

    def summary(self, rounds):
        deaths = [n.died_round for n in self.sensors
                  if n.died_round is not None]
        last = max(deaths) if len(deaths) == len(self.sensors) else None
        return RunSummary(
            self.config.protocol, self.config.seed, rounds,
            min(deaths) if deaths else None, last, self.generated,
            dict(self.totals), sum(self.lost_by_reason.values()),
            dict(self.lost_by_reason), self.initial_energy,
            self.residual_energy(), self.ledger.total, self.thermal.events,
            self.escalations, self.floods, self.joins,
            self.thermal.peak_temperature)


def run_scenario(config):
    """
    Run rounds 1..config.rounds of one scenario
    return: ScenarioResult(list of RoundMetrics, RunSummary)
    """
    sim = Simulation(config)
    log.info('Running %s, seed %d, %d rounds', config.protocol, config.seed,
             config.rounds)
    metrics = []
    for round in range(1, config.rounds + 1):
        metrics.append(sim.run_round(round))
    summary = sim.summary(config.rounds)
    log.info('%s seed %d: first death %s, delivered %d of %d',
             config.protocol, config.seed, summary.first_death_round,
             sum(summary.delivered.values()), summary.generated)
    return ScenarioResult(metrics, summary)
