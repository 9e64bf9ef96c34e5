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
Finite presentations, words in the free group, homomorphisms to Z and Fox calculus.
"""

from __future__ import absolute_import

import logging
import re
from functools import reduce
from math import gcd

from monodromy_formality.exceptions import NotAHomomorphism
from monodromy_formality.exceptions import NotSurjective
from monodromy_formality.exceptions import PresentationError
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import LambdaMatrix
from monodromy_formality.lambda_algebra import LaurentPoly
from monodromy_formality.lambda_algebra import field_rank

__all__ = [
    'Word',
    'Presentation',
    'ZMap',
    'validate_zmap',
    'fox_derivative',
    'specialize',
    'fox_matrix',
    'exponent_matrix',
    'betti_1'
]

LOG = logging.getLogger(__name__)

GENERATOR_NAME_RE = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')
LETTER_RE = re.compile(r'^([A-Za-z_][A-Za-z0-9_]*)(?:\^\{?(-?\d+)\}?)?$')
IDENTITY_TOKENS = ['1', 'e']


class Word(object):
    """
    Freely reduced word: a tuple of (generator index, nonzero exponent) with distinct adjacent
    indices.
    """

    __slots__ = ('_letters',)

    def __init__(self, letters=()):
        stack = []
        for index, exponent in letters:
            index, exponent = int(index), int(exponent)
            if index < 0:
                raise PresentationError('Negative generator index %s.' % (index))
            if exponent == 0:
                continue
            if stack and stack[-1][0] == index:
                merged = stack[-1][1] + exponent
                stack.pop()
                if merged:
                    stack.append((index, merged))
            else:
                stack.append((index, exponent))
        self._letters = tuple(stack)

    @classmethod
    def parse(cls, text, generator_names):
        """
        Parse whitespace separated tokens ``g``, ``g^-1``, ``g^3``; "1" is the empty word.
        """
        lookup = dict((name, index) for index, name in enumerate(generator_names))
        letters = []
        for token in str(text).replace('*', ' ').split():
            if token in IDENTITY_TOKENS and token not in lookup:
                continue
            match = LETTER_RE.match(token)
            if not match:
                raise PresentationError('Invalid word token "%s" in "%s".' % (token, text))
            name, exponent = match.group(1), match.group(2)
            if name not in lookup:
                raise PresentationError('Unknown generator "%s" in "%s". Valid generators '
                                        'are: %s' % (name, text, ', '.join(generator_names)))
            letters.append((lookup[name], int(exponent) if exponent is not None else 1))
        return cls(letters)

    @classmethod
    def generator(cls, index, exponent=1):
        return cls([(index, exponent)])

    @property
    def letters(self):
        return self._letters

    @property
    def is_empty(self):
        return not self._letters

    @property
    def length(self):
        return sum(abs(exponent) for _, exponent in self._letters)

    def max_index(self):
        return max(index for index, _ in self._letters) if self._letters else -1

    def expanded(self):
        """
        Letters with unit exponents, e.g. a^3 b^-2 -> a a a b^-1 b^-1.
        """
        result = []
        for index, exponent in self._letters:
            step = 1 if exponent > 0 else -1
            result.extend([(index, step)] * abs(exponent))
        return result

    def inverse(self):
        return Word([(index, -exponent) for index, exponent in reversed(self._letters)])

    def __mul__(self, other):
        return Word(self._letters + other._letters)

    def __pow__(self, exponent):
        base = self if exponent >= 0 else self.inverse()
        return Word(base._letters * abs(exponent))

    def exponent_vector(self, num_generators):
        vector = [0] * num_generators
        for index, exponent in self._letters:
            vector[index] += exponent
        return vector

    def exponent_sum(self, values):
        return sum(values[index] * exponent for index, exponent in self._letters)

    def substitute(self, images):
        """
        Image under the endomorphism x_i -> images[i] of the free group.
        """
        letters = []
        for index, exponent in self._letters:
            image = images[index] if exponent > 0 else images[index].inverse()
            letters.extend(image._letters * abs(exponent))
        return Word(letters)

    def format(self, generator_names):
        if not self._letters:
            return '1'
        tokens = []
        for index, exponent in self._letters:
            name = generator_names[index]
            tokens.append(name if exponent == 1 else '%s^%s' % (name, exponent))
        return ' '.join(tokens)

    def __eq__(self, other):
        return isinstance(other, Word) and other._letters == self._letters

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self._letters)

    def __len__(self):
        return len(self._letters)

    def __iter__(self):
        return iter(self._letters)

    def __repr__(self):
        return 'Word(%s)' % (list(self._letters),)


class Presentation(object):
    """
    <x_1, ..., x_n | r_1, ..., r_m>, the 2-complex with one 0-cell, n 1-cells and m 2-cells.
    """

    def __init__(self, generator_names, relators=()):
        generator_names = [str(name).strip() for name in generator_names]

        if not generator_names:
            raise PresentationError('A presentation needs at least one generator.')

        for name in generator_names:
            if not GENERATOR_NAME_RE.match(name):
                raise PresentationError('Invalid generator name "%s".' % (name))

        if len(set(generator_names)) != len(generator_names):
            raise PresentationError('Duplicate generator names in %s.' % (generator_names))

        words = []
        for position, relator in enumerate(relators):
            if not isinstance(relator, Word):
                relator = Word.parse(relator, generator_names)
            if relator.is_empty:
                LOG.warning('Dropping empty relator #%s.' % (position))
                continue
            if relator.max_index() >= len(generator_names):
                raise PresentationError('Relator #%s uses generator index %s but only %s '
                                        'generators exist.' % (position, relator.max_index(),
                                                               len(generator_names)))
            words.append(relator)

        self._generator_names = tuple(generator_names)
        self._relators = tuple(words)

    @classmethod
    def parse(cls, generators_text, relator_texts):
        names = str(generators_text).replace(',', ' ').split()
        return cls(names, relator_texts)

    @property
    def generator_names(self):
        return self._generator_names

    @property
    def relators(self):
        return self._relators

    @property
    def num_generators(self):
        return len(self._generator_names)

    @property
    def num_relators(self):
        return len(self._relators)

    def index_of(self, name):
        try:
            return self._generator_names.index(name)
        except ValueError:
            raise PresentationError('Unknown generator "%s". Valid generators are: %s' %
                                    (name, ', '.join(self._generator_names)))

    def word(self, text):
        return Word.parse(text, self._generator_names)

    def key(self):
        return (self._generator_names, tuple(word.letters for word in self._relators))

    def format(self):
        relators = ', '.join(word.format(self._generator_names) for word in self._relators)
        return '<%s | %s>' % (', '.join(self._generator_names), relators)

    def __eq__(self, other):
        return isinstance(other, Presentation) and other.key() == self.key()

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return 'Presentation(%s)' % (self.format())


class ZMap(object):
    """
    Homomorphism nu: G -> Z given by its values on the generators.
    """

    def __init__(self, values):
        self._values = tuple(int(value) for value in values)

    @classmethod
    def parse(cls, text, presentation):
        """
        Parse "a=1 b=0"; generators that are not named map to 0.
        """
        values = [0] * presentation.num_generators
        seen = set()
        for token in str(text).replace(',', ' ').split():
            if '=' not in token:
                raise PresentationError('Invalid map assignment "%s", expected name=value.' %
                                        (token))
            name, value = token.split('=', 1)
            index = presentation.index_of(name.strip())
            if index in seen:
                raise PresentationError('Generator "%s" is assigned twice.' % (name))
            seen.add(index)
            try:
                values[index] = int(value)
            except ValueError:
                raise PresentationError('Map value "%s" for "%s" is not an integer.' %
                                        (value, name))
        return cls(values)

    @property
    def values(self):
        return self._values

    def __len__(self):
        return len(self._values)

    def __getitem__(self, index):
        return self._values[index]

    def __iter__(self):
        return iter(self._values)

    def gcd(self):
        return reduce(gcd, (abs(value) for value in self._values), 0)

    def __call__(self, word):
        return word.exponent_sum(self._values)

    def format(self, generator_names):
        return ' '.join('%s=%s' % (name, value)
                        for name, value in zip(generator_names, self._values))

    def __eq__(self, other):
        return isinstance(other, ZMap) and other._values == self._values

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self._values)

    def __repr__(self):
        return 'ZMap(%s)' % (list(self._values),)


def validate_zmap(presentation, zmap):
    """
    Check that nu kills every relator and that its values have gcd 1.

    :rtype: :class:`ZMap`
    """
    if not isinstance(zmap, ZMap):
        zmap = ZMap(zmap)

    if len(zmap) != presentation.num_generators:
        raise PresentationError('Map has %s values but the presentation has %s generators.' %
                                (len(zmap), presentation.num_generators))

    for index, relator in enumerate(presentation.relators):
        value = zmap(relator)
        if value:
            raise NotAHomomorphism(index, value)

    divisor = zmap.gcd()
    if divisor != 1:
        raise NotSurjective(divisor)

    return zmap


def fox_derivative(word, index):
    """
    Formal Fox derivative d(word)/dx_index as a group ring element of the free group.

    :return: mapping prefix word -> integer coefficient (zero terms omitted)
    :rtype: ``dict``
    """
    result = {}
    prefix = Word()
    for letter, sign in word.expanded():
        if sign > 0:
            if letter == index:
                result[prefix] = result.get(prefix, 0) + 1
            prefix = prefix * Word.generator(letter)
        else:
            prefix = prefix * Word.generator(letter, -1)
            if letter == index:
                result[prefix] = result.get(prefix, 0) - 1
    return dict((key, value) for key, value in result.items() if value)


def specialize(group_ring_element, zmap, field=RATIONALS):
    """
    Image of a free group ring element under g -> t^nu(g).
    """
    counts = {}
    for word, coefficient in group_ring_element.items():
        exponent = zmap(word)
        counts[exponent] = counts.get(exponent, 0) + coefficient
    return LaurentPoly.from_exponent_counts(counts, field)


def _fox_row(relator, zmap, num_generators, field):
    counts = [dict() for _ in range(num_generators)]
    running = 0
    for letter, sign in relator.expanded():
        if sign > 0:
            counts[letter][running] = counts[letter].get(running, 0) + 1
            running += zmap[letter]
        else:
            running -= zmap[letter]
            counts[letter][running] = counts[letter].get(running, 0) - 1
    return [LaurentPoly.from_exponent_counts(entry, field) for entry in counts]


def fox_matrix(presentation, zmap, field=RATIONALS):
    """
    m x n matrix whose (j, i) entry is d(r_j)/dx_i specialized under g -> t^nu(g).

    Each row is checked against the fundamental identity
    sum_i (dr/dx_i) (t^nu(x_i) - 1) = 0.

    :rtype: :class:`LambdaMatrix`
    """
    zmap = validate_zmap(presentation, zmap)
    n = presentation.num_generators
    boundary = [LaurentPoly.t_power_minus_one(value, field) for value in zmap]

    rows = []
    for index, relator in enumerate(presentation.relators):
        row = _fox_row(relator, zmap, n, field)
        total = LaurentPoly.zero(field)
        for derivative, edge in zip(row, boundary):
            total = total + derivative * edge
        if not total.is_zero:
            raise AssertionError('Fox fundamental identity fails on relator #%s: %s' %
                                 (index, total))
        rows.append(row)

    LOG.debug('Fox matrix of %s over %s: %sx%s' % (presentation.format(), field,
                                                   len(rows), n))
    return LambdaMatrix(rows, len(rows), n, field)


def exponent_matrix(presentation):
    """
    Integer m x n matrix of total exponents of x_i in r_j.
    """
    return [relator.exponent_vector(presentation.num_generators)
            for relator in presentation.relators]


def betti_1(presentation, field=RATIONALS):
    matrix = exponent_matrix(presentation)
    if not matrix:
        return presentation.num_generators
    return presentation.num_generators - field_rank(matrix, field)
