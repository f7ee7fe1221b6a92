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
Wireless body area sensor network simulator
"""

from setuptools import setup


try:
    from yaclifw.version import get_git_version
    from wbasnsim import __file__ as module_file
    VERSION = get_git_version(module_file)
except (ImportError, ValueError):
    VERSION = "UNKNOWN"
if VERSION == "UNKNOWN":
    # setuptools rejects non-PEP 440 versions; use a valid placeholder
    VERSION = "0.0.0"
ZIP_SAFE = False


LONG_DESCRIPTION = open("README.rst", "r").read()

CLASSIFIERS = ["Development Status :: 4 - Beta",
               "Environment :: Console",
               "Intended Audience :: Science/Research",
               "License :: OSI Approved :: GNU General Public License v2"
               " (GPLv2)",
               "Operating System :: OS Independent",
               "Programming Language :: Python :: 3",
               "Topic :: Scientific/Engineering",
               "Topic :: System :: Networking"]

setup(name='wbasnsim',

      # Simple strings
      author='The wbasnsim Developers',
      description='Round-based simulator of body area sensor network '
      'routing protocols',
      license='GPLv2',

      # More complex variables
      packages=['wbasnsim'],
      include_package_data=True,
      entry_points={
          'console_scripts': ['wbasnsim = wbasnsim.main:entry_point']},
      zip_safe=ZIP_SAFE,
      python_requires='>=3.6',
      # REQUIREMENTS:
      # These should be kept in sync with requirements.txt
      install_requires=['yaclifw>=0.2.0', 'numpy>=1.17', 'networkx>=2.0'],

      # Using global variables
      long_description=LONG_DESCRIPTION,
      classifiers=CLASSIFIERS,
      version=VERSION,

      extras_require={'test': ['pytest', 'mox3']},
      )
