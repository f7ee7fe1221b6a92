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
Abstract node temperature and hot-spot links.

Every packet a node handles raises its temperature by a fixed delta, and
every round cools it by a fixed amount. A relay that cannot take a packet
in and send it on without passing threshold + delta returns the packet to
the previous node, which marks the directed link as a hot-spot for a
number of rounds.
"""

import logging

log = logging.getLogger("wbasnsim.thermal")

TRANSMIT = 'transmit'
RECEIVE = 'receive'

ACCEPTED = 'accepted'
RETURNED = 'returned'


class ThermalException(Exception):

    def __init__(self, msg, link):
        super(ThermalException, self).__init__(msg)
        self.link = link

    def __str__(self):
        return '%s\nlink: %s -> %s' % (
            super(ThermalException, self).__str__(), self.link[0],
            self.link[1])


class ThermalState(object):
    """
    threshold, delta, cooling: temperature units
    cooldown: rounds a returned link stays marked
    refuse: if False temperatures are tracked but packets are never
      returned
    """

    def __init__(self, threshold=1.0, delta=0.1, cooling=0.05, cooldown=5,
                 refuse=True):
        self.threshold = threshold
        self.delta = delta
        self.cooling = cooling
        self.cooldown = cooldown
        self.refuse = refuse
        self.hotspot_links = {}
        self.events = 0
        self.peak_temperature = 0.0

    @classmethod
    def from_config(cls, config):
        return cls(config.temp_threshold, config.temp_delta_per_packet,
                   config.cooling_per_round, config.hotspot_cooldown,
                   refuse=config.features.thermal)

    @property
    def ceiling(self):
        return self.threshold + self.delta

    def accrue(self, node, event, bits=None, saturate=False):
        """
        Add one packet's worth of heat, independent of the packet size.
        saturate: cap at the ceiling, for heat a node cannot refuse such
          as its own transmissions. Without refusal every event is capped.
        """
        if event not in (TRANSMIT, RECEIVE):
            raise ValueError('Unknown thermal event: %s' % event)
        if node.is_sink:
            return node.temperature
        node.temperature += self.delta
        if saturate or not self.refuse:
            node.temperature = min(node.temperature, self.ceiling)
        self.peak_temperature = max(self.peak_temperature, node.temperature)
        return node.temperature

    def is_hot(self, node):
        return not node.is_sink and node.temperature >= self.threshold

    def can_relay(self, node):
        """
        Whether a node has room for the receive and the forward of one
        more packet
        """
        return (not self.is_hot(node) and
                node.temperature + 2 * self.delta <= self.ceiling)

    def is_marked(self, sender, receiver):
        return (sender, receiver) in self.hotspot_links

    def mark(self, sender, receiver):
        self.hotspot_links[(sender, receiver)] = self.cooldown
        self.events += 1
        log.debug('Hot-spot %d -> %d marked for %d rounds',
                  sender, receiver, self.cooldown)

    def try_forward(self, sender, receiver, packet):
        """
        Offer a packet to the next node. An accepting receiver heats up, a
        receiver without room to relay returns the packet and the link is
        marked.
        sender, receiver: Node
        """
        link = (sender.id, receiver.id)
        if link in self.hotspot_links:
            raise ThermalException('Forwarding over a hot-spot link', link)
        if self.refuse and not self.can_relay(receiver):
            self.mark(sender.id, receiver.id)
            return RETURNED
        self.accrue(receiver, RECEIVE, packet.size)
        return ACCEPTED

    def cool_all(self, nodes):
        for node in nodes:
            node.temperature = max(node.temperature - self.cooling, 0.0)
        expired = []
        for link in sorted(self.hotspot_links):
            self.hotspot_links[link] -= 1
            if self.hotspot_links[link] <= 0:
                expired.append(link)
        for link in expired:
            del self.hotspot_links[link]
            log.debug('Hot-spot %d -> %d expired', link[0], link[1])
