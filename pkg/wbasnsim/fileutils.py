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

import csv
import io
import logging
import os
import tempfile

import numpy

from .model import CRITICAL, NORMAL, ON_DEMAND

log = logging.getLogger("wbasnsim.fileutils")

METRICS_HEADER = [
    'round', 'dead', 'delivered_normal', 'delivered_critical',
    'delivered_on_demand', 'lost', 'residual_energy_j', 'ch_count',
    'hotspot_events']

SUMMARY_HEADER = [
    'protocol', 'runs', 'median_first_death_round',
    'median_last_death_round', 'delivered_normal', 'delivered_critical',
    'delivered_on_demand', 'lost', 'energy_spent_j']


class FileException(Exception):

    def __init__(self, msg, path):
        super(FileException, self).__init__(msg)
        self.path = path

    def __str__(self):
        return '%s\npath: %s' % (
            super(FileException, self).__str__(), self.path)


def ensure_dir(path):
    """
    Create an output directory if necessary, raises FileException if it
    cannot be created or written to
    """
    try:
        if not os.path.isdir(path):
            log.debug('Creating %s', path)
            os.makedirs(path)
    except OSError as e:
        raise FileException('Unable to create directory: %s' % e, path)
    if not os.access(path, os.W_OK):
        raise FileException('Directory is not writable', path)
    return path


def _file_mode():
    # Temporary files are private, results get the usual umask mode
    umask = os.umask(0)
    os.umask(umask)
    return 0o666 & ~umask


def write_atomic(path, text):
    """
    Write to a temporary file in the destination directory and rename it
    into place, readers never see a partial file
    """
    output = None
    try:
        with tempfile.NamedTemporaryFile(
                mode='w', newline='', prefix=os.path.basename(path) + '.',
                dir=os.path.dirname(path) or '.', delete=False) as output:
            output.write(text)
        os.chmod(output.name, _file_mode())
        os.replace(output.name, path)
        output = None
    except (IOError, OSError) as e:
        raise FileException('Unable to write: %s' % e, path)
    finally:
        if output:
            os.unlink(output.name)
    log.debug('Wrote %s', path)
    return path


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def format_energy(joules):
    return '%.9f' % joules


def metrics_rows(metrics):
    for m in metrics:
        yield [m.round, m.dead_count, m.total_normal, m.total_critical,
               m.total_on_demand, m.total_lost,
               format_energy(m.total_residual_energy), m.ch_count,
               m.hotspot_events]


def write_metrics_csv(metrics, path):
    """
    One row per round, delivered and lost counts accumulated since the
    first round
    """
    return write_atomic(path, _csv_text(METRICS_HEADER, metrics_rows(metrics)))


def median_or_blank(values):
    values = [v for v in values if v is not None]
    if not values:
        return ''
    return '%g' % numpy.median(values)


def summary_rows(summaries_by_protocol):
    """
    summaries_by_protocol: ordered list of (protocol, [RunSummary])
    """
    for protocol, summaries in summaries_by_protocol:
        yield [
            protocol, len(summaries),
            median_or_blank(s.first_death_round for s in summaries),
            median_or_blank(s.last_death_round for s in summaries),
            sum(s.delivered[NORMAL] for s in summaries),
            sum(s.delivered[CRITICAL] for s in summaries),
            sum(s.delivered[ON_DEMAND] for s in summaries),
            sum(s.lost for s in summaries),
            format_energy(sum(s.energy_spent for s in summaries)),
        ]


def write_summary_csv(summaries_by_protocol, path):
    return write_atomic(path, _csv_text(
        SUMMARY_HEADER, summary_rows(summaries_by_protocol)))
