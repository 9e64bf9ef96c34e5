# -*- coding: utf-8 -*-
# Copyright 2026 The monodromy-formality Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

from __future__ import absolute_import
from __future__ import print_function

import re
import sys

# NOTE: setup.py imports this module before any dependency is installed, so only the standard
# library is available here.

GET_PIP = 'python -m ensurepip --upgrade'

VERSION_RE = re.compile(r"^__version__ = ['\"]([^'\"]*)['\"]", re.M)

__all__ = [
    'check_pip_version',
    'fetch_requirements',
    'parse_version_string'
]


def _version_tuple(value):
    return tuple(int(part) for part in re.findall(r'\d+', value)[:3])


def check_pip_version(min_version='19.0.0'):
    """
    Ensure that a minimum supported version of pip is installed.
    """
    try:
        import pip
    except ImportError as e:
        print('Failed to import pip: %s' % (e))
        print('Install pip:\n%s' % (GET_PIP))
        sys.exit(1)

    if _version_tuple(pip.__version__) < _version_tuple(min_version):
        print("Upgrade pip, your version '%s' is outdated. Minimum required version is '%s':\n"
              "%s" % (pip.__version__, min_version, GET_PIP))
        sys.exit(1)

    return True


def fetch_requirements(requirements_file_path):
    """
    Return a list of requirements and links by parsing the provided requirements file.
    """
    links = []
    reqs = []

    with open(requirements_file_path, 'r') as fp:
        for line in fp.readlines():
            line = line.strip()

            if line.startswith('#') or not line:
                continue

            if line.startswith('-e ') or '#egg=' in line:
                names = re.findall(r'#egg=([^&|@]+)', line)
                if not names:
                    raise ValueError('Line "%s" is missing "#egg=<package name>"' % (line))
                links.append(line.replace('-e ', '').strip())
                reqs.append(names[0])
                continue

            reqs.append(line.split(';')[0].strip())

    return (reqs, links)


def parse_version_string(init_file):
    """
    Read __version__ string for an init file.
    """
    with open(init_file, 'r') as fp:
        match = VERSION_RE.search(fp.read())

    if match:
        return match.group(1)

    raise RuntimeError('Unable to find version string in %s.' % (init_file))
