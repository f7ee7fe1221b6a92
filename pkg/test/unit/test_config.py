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


import pytest

from wbasnsim import config, model
from wbasnsim.fileutils import FileException
from wbasnsim.model import ConfigException


class TestConfig(object):

    def write(self, tmpdir, text):
        f = tmpdir.join('scenario.cfg')
        f.write(text)
        return str(f)

    def test_defaults(self):
        assert config.parse_config() == model.make_scenario(
            model.PAPER_SIMULATION, 1)

    def test_empty_file(self, tmpdir):
        path = self.write(tmpdir, '')
        assert config.parse_config(path) == model.make_scenario(
            model.PAPER_SIMULATION, 1)

    def test_rounds(self, tmpdir):
        path = self.write(tmpdir, 'rounds = 2000\n')
        c = config.parse_config(path)
        assert c.rounds == 2000
        assert c.initial_energy == 0.5

    def test_comments(self, tmpdir):
        path = self.write(tmpdir, '\n'.join([
            '# a scenario',
            '',
            'protocol = attempt   # trailing',
            '  ch_rotation = false',
        ]))
        c = config.parse_config(path)
        assert c.protocol == 'attempt'
        assert c.ch_rotation is False

    def test_out_of_range(self, tmpdir):
        path = self.write(tmpdir, 'ch_probability = 1.5\n')
        with pytest.raises(ConfigException) as exc:
            config.parse_config(path)
        assert exc.value.key == 'ch_probability'
        assert str(exc.value) == (
            'Value out of range: 1.5\nkey: ch_probability\n'
            'accepted: number in [0, 1]')

    def test_unknown_key(self, tmpdir):
        path = self.write(tmpdir, 'bogus = 1\n')
        with pytest.raises(ConfigException) as exc:
            config.parse_config(path)
        assert exc.value.key == 'bogus'
        assert 'initial_energy' in exc.value.accepted

    def test_missing_equals(self, tmpdir):
        path = self.write(tmpdir, 'rounds 10\n')
        with pytest.raises(ConfigException) as exc:
            config.parse_config(path)
        assert 'line 1' in str(exc.value)

    @pytest.mark.parametrize('line,key', [
        ('rounds = ten', 'rounds'),
        ('protocol = leach', 'protocol'),
        ('ch_rotation = maybe', 'ch_rotation'),
        ('initial_energy = 0.5J', 'initial_energy'),
    ])
    def test_unparsable(self, tmpdir, line, key):
        path = self.write(tmpdir, line)
        with pytest.raises(ConfigException) as exc:
            config.parse_config(path)
        assert exc.value.key == key

    def test_missing_file(self, tmpdir):
        path = str(tmpdir.join('missing.cfg'))
        with pytest.raises(FileException) as exc:
            config.parse_config(path)
        assert exc.value.path == path

    def test_layering(self, tmpdir):
        path = self.write(tmpdir, 'rounds = 100\nseed = 3\nchild_cap = 2\n')
        c = config.parse_config(path, [('rounds', '7')], seed=9)
        # The file overrides the seed argument, overrides win over both
        assert c.rounds == 7
        assert c.seed == 3
        assert c.child_cap == 2

    def test_dict_overrides(self):
        c = config.parse_config(
            overrides={'rounds': 12, 'protocol': 'multihop'})
        assert c.rounds == 12
        assert c.protocol == 'multihop'
        with pytest.raises(ConfigException):
            config.parse_config(overrides={'bogus': 1})

    def test_prototype(self):
        c = config.parse_config(preset=model.PROTOTYPE)
        assert c.node_count == 11
        assert c.energy_mode == model.PER_CLASS

    @pytest.mark.parametrize('text,pair', [
        ('rounds=10', ('rounds', '10')),
        (' seed = 4 ', ('seed', '4')),
        ('protocol=attempt', ('protocol', 'attempt')),
    ])
    def test_parse_override(self, text, pair):
        assert config.parse_override(text) == pair

    def test_parse_override_invalid(self):
        with pytest.raises(ConfigException):
            config.parse_override('rounds')

    def test_echo_reloads(self, tmpdir):
        original = config.parse_config(overrides=[
            ('protocol', 'attempt'), ('seed', '17'), ('p_critical', '0.05'),
            ('ch_rotation', 'false')])
        text = ''.join('%s = %s\n' % pair for pair in original.echo())
        assert config.parse_config(self.write(tmpdir, text)) == original
