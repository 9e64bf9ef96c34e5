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

"""
Line oriented input format shared by the command line and the bundled corpus.

    # comment
    gens: a b
    rels: a b a^-1 b^-1
    nu: a=1 b=0
    field: Q

or, for an externally supplied monodromy,

    matrix: 1 1; 0 1
    lambda: 1
    scenario: base-localization

Indented lines continue the previous key. Corpus files hold several documents, each opened
by an ``[entry <name>]`` header.
"""

from __future__ import absolute_import

import logging
import re
from collections import OrderedDict

from monodromy_formality.exceptions import DocumentParseError
from monodromy_formality.groups import Presentation
from monodromy_formality.groups import ZMap
from monodromy_formality.groups import validate_zmap
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import FieldSpec
from monodromy_formality.lambda_algebra import LambdaMatrix
from monodromy_formality.lambda_algebra import LaurentPoly

__all__ = [
    'SCENARIOS',
    'FLAGS',
    'InputDocument',
    'parse_document',
    'parse_corpus',
    'render_presentation'
]

LOG = logging.getLogger(__name__)

SCENARIOS = [
    'mapping-torus',
    'fibered-link',
    'closed-3-manifold',
    'composite',
    'base-localization',
    'milnor-fibration',
    'fibration'
]

FLAGS = [
    'closed',
    'orientable',
    'fibersOverCircle'
]

# key -> may appear more than once
KEYS = OrderedDict([
    ('gens', False),
    ('rels', True),
    ('nu', False),
    ('field', False),
    ('matrix', False),
    ('lambda', False),
    ('scenario', False),
    ('attest', True),
    ('flags', True),
    ('b1M', False),
    ('space', False),
    ('aut', True),
    ('h1N', False),
    ('eta', False),
    ('expect', True),
    ('provenance', True)
])

KEY_LINE_RE = re.compile(r'^([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*)$')
ENTRY_HEADER_RE = re.compile(r'^\[\s*entry\s+([A-Za-z_][A-Za-z0-9_\-]*)\s*\]$')


class InputDocument(object):
    """
    Parsed document. Values stay textual until asked for, so every conversion error can still
    point at its line.
    """

    def __init__(self, source=None, name=None):
        self.source = source
        self.name = name
        self._values = OrderedDict()

    def _add(self, key, line, text):
        self._values.setdefault(key, []).append((line, text))

    def _error(self, key, message):
        line = self._values[key][0][0] if key in self._values else None
        return DocumentParseError(message, line=line, source=self.source)

    def has(self, key):
        return key in self._values

    def line_of(self, key):
        return self._values[key][0][0] if key in self._values else None

    def text(self, key, default=None):
        if key not in self._values:
            return default
        return ' '.join(text for _, text in self._values[key]).strip()

    def lines(self, key):
        return list(self._values.get(key, []))

    @property
    def has_presentation(self):
        return self.has('gens')

    @property
    def has_matrix(self):
        return self.has('matrix')

    @property
    def field(self):
        try:
            return FieldSpec.parse(self.text('field', 'Q'))
        except ValueError as e:
            raise self._error('field', str(e))

    def presentation(self):
        if not self.has('gens'):
            raise DocumentParseError('Missing "gens:" line.', source=self.source)

        relators = []
        for _, text in self.lines('rels'):
            relators.extend(part.strip() for part in re.split(r'[,;]', text) if part.strip())

        try:
            return Presentation.parse(self.text('gens'), relators)
        except ValueError as e:
            raise self._error('rels' if self.has('rels') else 'gens', str(e))

    def zmap(self, presentation=None):
        presentation = presentation or self.presentation()
        if not self.has('nu'):
            raise DocumentParseError('Missing "nu:" line.', source=self.source)
        try:
            return validate_zmap(presentation, ZMap.parse(self.text('nu'), presentation))
        except ValueError as e:
            raise self._error('nu', str(e))

    def matrix(self):
        """
        Rational matrix from "matrix:", rows separated by ";" or continuation lines.
        """
        rows = []
        for _, text in self.lines('matrix'):
            for part in text.split(';'):
                part = part.replace(',', ' ').strip()
                if part:
                    rows.append(part.split())

        if not rows:
            raise self._error('matrix', 'Empty matrix.')

        size = len(rows[0])
        for row in rows:
            if len(row) != size:
                raise self._error('matrix', 'Matrix rows have different lengths: %s.' %
                                  (', '.join(str(len(r)) for r in rows)))

        try:
            return [[RATIONALS.to_sympy(value) for value in row] for row in rows]
        except ValueError as e:
            raise self._error('matrix', str(e))

    def integer_matrix(self):
        rows = self.matrix()
        for row in rows:
            for value in row:
                if not value.is_Integer:
                    raise self._error('matrix', 'Entry %s is not an integer.' % (value))
        return [[int(value) for value in row] for row in rows]

    @property
    def eigenvalue(self):
        try:
            return RATIONALS.to_sympy(self.text('lambda', '1'))
        except ValueError as e:
            raise self._error('lambda', str(e))

    @property
    def scenario(self):
        value = self.text('scenario')
        if value is not None and value not in SCENARIOS:
            raise self._error('scenario', 'Invalid value "%s" for scenario. Valid values are: '
                                          '%s' % (value, ', '.join(SCENARIOS)))
        return value

    @property
    def attestations(self):
        """
        name -> justification text ("" when none given).
        """
        result = OrderedDict()
        for _, text in self.lines('attest'):
            parts = text.split(None, 1)
            if not parts:
                continue
            result[parts[0]] = parts[1].strip() if len(parts) > 1 else ''
        return result

    @property
    def flags(self):
        result = set()
        for _, text in self.lines('flags'):
            for flag in text.replace(',', ' ').split():
                if flag not in FLAGS:
                    raise self._error('flags', 'Invalid value "%s" for flags. Valid values '
                                               'are: %s' % (flag, ', '.join(FLAGS)))
                result.add(flag)
        return result

    @property
    def b1M(self):
        value = self.text('b1M')
        if value is None:
            return None
        try:
            return int(value)
        except ValueError:
            raise self._error('b1M', 'b1M must be an integer, got "%s".' % (value))

    @property
    def space(self):
        return self.text('space')

    @property
    def automorphism_text(self):
        return '; '.join(text for _, text in self.lines('aut'))

    def lambda_matrix(self, key, field=None):
        """
        Matrix over the Laurent ring: rows separated by ";", entries by ",".
        """
        field = field or self.field
        rows = []
        for _, text in self.lines(key):
            for part in text.split(';'):
                if part.strip():
                    rows.append([entry.strip() for entry in part.split(',')])

        if not rows:
            raise self._error(key, 'Empty matrix for "%s".' % (key))

        try:
            entries = [[LaurentPoly.parse(entry, field) for entry in row] for row in rows]
            return LambdaMatrix(entries, field=field)
        except ValueError as e:
            raise self._error(key, str(e))

    def _pairs(self, key):
        result = OrderedDict()
        for line, text in self.lines(key):
            for token in text.split():
                if '=' not in token:
                    raise DocumentParseError('Expected key=value, got "%s".' % (token),
                                             line=line, source=self.source)
                name, value = token.split('=', 1)
                result[name] = value
        return result

    @property
    def expect(self):
        return self._pairs('expect')

    @property
    def provenance(self):
        return self._pairs('provenance')

    def validate(self):
        """
        Exactly one of the presentation form and the matrix form must be present.
        """
        if self.has_presentation == self.has_matrix:
            raise DocumentParseError('A document needs exactly one of "gens:" (presentation '
                                     'form) or "matrix:" (matrix form).', source=self.source)

        if self.has_presentation:
            self.zmap(self.presentation())
        else:
            self.matrix()

        for attribute in ('field', 'eigenvalue', 'scenario', 'flags', 'b1M'):
            getattr(self, attribute)
        return self


def _parse_lines(lines, document, first_line):
    current = None
    for offset, raw in enumerate(lines):
        number = first_line + offset
        line = raw.split('#', 1)[0].rstrip()
        if not line.strip():
            continue

        if line[0] in ' \t':
            if current is None:
                raise DocumentParseError('Continuation line without a preceding key.',
                                         line=number, source=document.source)
            document._add(current, number, line.strip())
            continue

        match = KEY_LINE_RE.match(line)
        if not match:
            raise DocumentParseError('Expected "key: value", got "%s".' % (line.strip()),
                                     line=number, source=document.source)

        key, value = match.group(1), match.group(2).strip()
        if key not in KEYS:
            raise DocumentParseError('Unknown key "%s". Valid keys are: %s' %
                                     (key, ', '.join(KEYS)), line=number,
                                     source=document.source)

        if document.has(key) and not KEYS[key]:
            raise DocumentParseError('Duplicate key "%s" (first given on line %s).' %
                                     (key, document.line_of(key)), line=number,
                                     source=document.source)

        document._add(key, number, value)
        current = key
    return document


def parse_document(text, source=None):
    """
    :rtype: :class:`InputDocument`
    """
    return _parse_lines(text.splitlines(), InputDocument(source=source), 1)


def parse_corpus(text, source=None):
    """
    :rtype: ``list`` of :class:`InputDocument`
    """
    documents = []
    name = None
    start = None
    body = []
    lines = text.splitlines()

    def flush():
        if name is not None:
            documents.append(_parse_lines(body, InputDocument(source=source, name=name), start))

    for number, raw in enumerate(lines, 1):
        stripped = raw.split('#', 1)[0].strip()
        match = ENTRY_HEADER_RE.match(stripped)
        if match:
            flush()
            name = match.group(1)
            start = number + 1
            body = []
            continue
        if name is None:
            if stripped:
                raise DocumentParseError('Content before the first [entry <name>] header.',
                                         line=number, source=source)
            continue
        body.append(raw)

    flush()

    seen = set()
    for document in documents:
        if document.name in seen:
            raise DocumentParseError('Duplicate corpus entry "%s".' % (document.name),
                                     source=source)
        seen.add(document.name)

    LOG.debug('Parsed %s corpus entries from %s' % (len(documents), source))
    return documents


def render_presentation(presentation, zmap, field=None, scenario=None, comment=None):
    """
    Text of a document for (presentation, nu) that parse_document reads back.
    """
    lines = []
    if comment:
        lines.extend('# %s' % (line) for line in comment.splitlines())
    lines.append('gens: %s' % (' '.join(presentation.generator_names)))
    names = presentation.generator_names
    relators = [word.format(names) for word in presentation.relators]
    if relators:
        lines.append('rels: %s' % (relators[0]))
        lines.extend('      %s' % (relator) for relator in relators[1:])
    lines.append('nu: %s' % (zmap.format(names)))
    if field is not None:
        lines.append('field: %s' % (field.name))
    if scenario:
        lines.append('scenario: %s' % (scenario))
    return '\n'.join(lines) + '\n'
