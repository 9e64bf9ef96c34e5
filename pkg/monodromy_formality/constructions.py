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
Builders for extensions by Z: mapping tori, composite scenarios and the bundled corpus.
"""

from __future__ import absolute_import

import io
import logging
import os
from collections import OrderedDict
from functools import reduce
from math import gcd

from sympy import Matrix

from monodromy_formality.document import parse_corpus
from monodromy_formality.exceptions import CorpusError
from monodromy_formality.exceptions import DocumentParseError
from monodromy_formality.exceptions import NotInvertibleError
from monodromy_formality.exceptions import PresentationError
from monodromy_formality.groups import Presentation
from monodromy_formality.groups import Word
from monodromy_formality.groups import ZMap
from monodromy_formality.groups import validate_zmap
from monodromy_formality.lambda_algebra import LambdaModule
from monodromy_formality.lambda_algebra import module_from_presentation

__all__ = [
    'ATTESTATIONS',
    'REQUIRED_CORPUS_ENTRIES',
    'Automorphism',
    'CompositeScenario',
    'CorpusEntry',
    'free_abelian_presentation',
    'free_presentation',
    'mapping_torus_presentation',
    'tietze_add_generator',
    'compose_to_Z',
    'load_corpus',
    'random_presentation',
    'random_gl_matrix'
]

LOG = logging.getLogger(__name__)

CORPUS_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'corpus.txt')

ATTESTATIONS = [
    'b1N_finite',
    'b1K_finite',
    'finitely_presented',
    'one_formal'
]

REQUIRED_CORPUS_ENTRIES = [
    'heisenberg',
    'torus3',
    'trefoil',
    'freeF2',
    'genus2',
    'enLink',
    'dimcaNode',
    'identity3'
]

RANDOM_GENERATOR_NAMES = ['a', 'b', 'c']


def free_presentation(num_generators, names=None):
    names = names or ['x%s' % (i + 1) for i in range(num_generators)]
    return Presentation(names, [])


def free_abelian_presentation(num_generators, names=None):
    """
    Z^n as <x_1, ..., x_n | [x_i, x_j] for i < j>.
    """
    names = names or ['x%s' % (i + 1) for i in range(num_generators)]
    relators = []
    for i in range(num_generators):
        for j in range(i + 1, num_generators):
            relators.append(Word([(i, 1), (j, 1), (i, -1), (j, -1)]))
    return Presentation(names, relators)


class Automorphism(object):
    """
    Endomorphism of a presented group given by the words images[i] = phi(x_i).

    Only the abelianized necessary condition is verified; ``attested`` records that the
    relator-preservation part is taken on trust.
    """

    def __init__(self, base, images, attested=True):
        if len(images) != base.num_generators:
            raise PresentationError('Automorphism has %s images but the base has %s '
                                    'generators.' % (len(images), base.num_generators))

        words = []
        for image in images:
            if not isinstance(image, Word):
                image = Word.parse(image, base.generator_names)
            if image.max_index() >= base.num_generators:
                raise PresentationError('Image word %r uses an unknown generator.' % (image))
            words.append(image)

        self.base = base
        self.images = tuple(words)
        self.attested = attested

        determinant = self.determinant()
        if determinant not in (1, -1):
            raise NotInvertibleError('Abelianized automorphism has determinant %s; it is not '
                                     'invertible over Z.' % (determinant))

    @classmethod
    def from_matrix(cls, base, matrix):
        """
        x_i -> prod_j x_j^A[j][i], so column i of A is the image of x_i.
        """
        n = base.num_generators
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise NotInvertibleError('Matrix must be %sx%s for a base with %s generators.' %
                                     (n, n, n))
        images = [Word([(j, int(matrix[j][i])) for j in range(n)]) for i in range(n)]
        return cls(base, images)

    @classmethod
    def parse(cls, base, text):
        """
        Parse "y -> y z; z -> z" (``=`` works as well as ``->``). Unlisted generators are
        fixed.
        """
        images = [Word.generator(i) for i in range(base.num_generators)]
        seen = set()
        for part in text.replace('\n', ';').split(';'):
            part = part.strip()
            if not part:
                continue
            separator = '->' if '->' in part else '='
            if separator not in part:
                raise PresentationError('Invalid image "%s", expected "x -> word".' % (part))
            name, word = part.split(separator, 1)
            index = base.index_of(name.strip())
            if index in seen:
                raise PresentationError('Generator "%s" has two images.' % (name.strip()))
            seen.add(index)
            images[index] = Word.parse(word, base.generator_names)
        return cls(base, images)

    def abelianized_matrix(self):
        """
        A[j][i] = exponent sum of x_j in phi(x_i).
        """
        n = self.base.num_generators
        columns = [image.exponent_vector(n) for image in self.images]
        return [[columns[i][j] for i in range(n)] for j in range(n)]

    def determinant(self):
        return int(Matrix(self.abelianized_matrix()).det())

    def format(self):
        names = self.base.generator_names
        return '; '.join('%s -> %s' % (names[i], image.format(names))
                         for i, image in enumerate(self.images))

    def __repr__(self):
        return 'Automorphism(%s)' % (self.format())


def _fresh_name(names, preferred='s'):
    if preferred not in names:
        return preferred
    counter = 1
    while '%s%s' % (preferred, counter) in names:
        counter += 1
    return '%s%s' % (preferred, counter)


def mapping_torus_presentation(base, automorphism, stable_letter='s'):
    """
    <x_1, ..., x_n, s | base relators, s x_i s^-1 phi(x_i)^-1> with nu = (0, ..., 0, 1).

    :rtype: ``tuple`` of (:class:`Presentation`, :class:`ZMap`)
    """
    names = list(base.generator_names)
    letter = _fresh_name(names, stable_letter)
    s = len(names)

    relators = list(base.relators)
    for i, image in enumerate(automorphism.images):
        relators.append(Word([(s, 1), (i, 1), (s, -1)]) * image.inverse())

    presentation = Presentation(names + [letter], relators)
    zmap = validate_zmap(presentation, ZMap([0] * s + [1]))

    LOG.debug('Mapping torus of %s by %s: %s' % (base.format(), automorphism.format(),
                                                 presentation.format()))
    return presentation, zmap


def tietze_add_generator(presentation, name, word, zmap=None):
    """
    Add a generator g with the relator g w^-1. The extended nu (if given) sends g to nu(w).
    """
    names = list(presentation.generator_names)
    if name in names:
        raise PresentationError('Generator "%s" already exists.' % (name))
    if not isinstance(word, Word):
        word = Word.parse(word, names)

    index = len(names)
    relators = list(presentation.relators) + [Word.generator(index) * word.inverse()]
    extended = Presentation(names + [name], relators)

    if zmap is None:
        return extended
    return extended, ZMap(list(zmap) + [zmap(word)])


class CompositeScenario(object):
    """
    pi -> Z through the composite mu = nu o chi, with the hypotheses the machine cannot decide
    supplied as attestations (name -> justification).
    """

    def __init__(self, presentation, zmap, attestations, eta=None, target=None):
        self.presentation = presentation
        self.zmap = zmap
        self.attestations = OrderedDict(attestations)
        self.eta = eta
        self.target = target

    def is_attested(self, name):
        return name in self.attestations

    def missing(self, names):
        return [name for name in names if name not in self.attestations]


def compose_to_Z(presentation, zmap, attestations=None, eta=None, target=None):
    """
    :param eta: optional matrix over the Laurent ring of eta_*: H_1(Gamma) -> H_1(N).
    :param target: optional presentation matrix (or module) of H_1(N).

    :rtype: :class:`CompositeScenario`
    """
    zmap = validate_zmap(presentation, zmap)
    attestations = OrderedDict(attestations or {})

    for name in attestations:
        if name not in ATTESTATIONS:
            raise ValueError('Invalid value "%s" for attestation. Valid values are: %s' %
                             (name, ', '.join(ATTESTATIONS)))

    if (eta is None) != (target is None):
        raise ValueError('The eta map and the presentation of H_1(N) must be given together.')

    if target is not None and not isinstance(target, LambdaModule):
        target = module_from_presentation(target)

    return CompositeScenario(presentation, zmap, attestations, eta=eta, target=target)


class CorpusEntry(object):

    def __init__(self, document):
        self.document = document
        self.name = document.name
        self.expected = document.expect
        self.provenance = document.provenance

    @property
    def is_matrix(self):
        return self.document.has_matrix

    @property
    def scenario(self):
        return self.document.scenario

    def presentation(self):
        return self.document.presentation()

    def zmap(self):
        return self.document.zmap()

    def matrix(self):
        return self.document.matrix()

    @property
    def eigenvalue(self):
        return self.document.eigenvalue

    def expected_blocks(self):
        value = self.expected.get('blocks')
        if value is None:
            return None
        if value == '-':
            return ()
        return tuple(sorted((int(part) for part in value.split(',')), reverse=True))

    def expected_factors(self):
        value = self.expected.get('factors')
        if value is None:
            return None
        if value == '-':
            return []
        return [[int(part) for part in factor.split(',')] for factor in value.split('|')]

    def expected_int(self, key):
        value = self.expected.get(key)
        return int(value) if value is not None else None

    def __repr__(self):
        return 'CorpusEntry(%s)' % (self.name)


def load_corpus(path=None):
    """
    :rtype: ``list`` of :class:`CorpusEntry`
    """
    path = path or CORPUS_PATH
    try:
        with io.open(path, 'r', encoding='utf-8') as fp:
            text = fp.read()
    except (IOError, OSError) as e:
        raise CorpusError('Unable to read corpus "%s": %s' % (path, e))

    try:
        documents = parse_corpus(text, source=path)
        for document in documents:
            document.validate()
    except DocumentParseError as e:
        raise CorpusError('Malformed corpus: %s' % (e))

    entries = [CorpusEntry(document) for document in documents]

    names = [entry.name for entry in entries]
    if path == CORPUS_PATH:
        missing = [name for name in REQUIRED_CORPUS_ENTRIES if name not in names]
        if missing:
            raise CorpusError('Corpus is missing entries: %s' % (', '.join(missing)))

    return entries


def _random_zmap_values(rng, num_generators):
    while True:
        values = [rng.randint(-2, 2) for _ in range(num_generators)]
        if reduce(gcd, (abs(value) for value in values), 0) == 1:
            return values


def random_presentation(rng, max_generators=3, max_relators=3, max_length=8,
                        max_attempts=200):
    """
    Random presentation on generators a, b, c with a valid nu. Relators are sampled by
    rejection among words of length <= max_length on which nu vanishes; a relator that is
    not found within max_attempts draws is skipped.

    :rtype: ``tuple`` of (:class:`Presentation`, :class:`ZMap`)
    """
    n = rng.randint(1, max_generators)
    values = _random_zmap_values(rng, n)
    zmap = ZMap(values)

    relators = []
    for _ in range(rng.randint(0, max_relators)):
        for _ in range(max_attempts):
            length = rng.randint(1, max_length)
            word = Word([(rng.randrange(n), rng.choice((1, -1))) for _ in range(length)])
            if not word.is_empty and zmap(word) == 0:
                relators.append(word)
                break
        else:
            LOG.debug('No relator in ker nu found after %s attempts' % (max_attempts))

    presentation = Presentation(RANDOM_GENERATOR_NAMES[:n], relators)
    return presentation, validate_zmap(presentation, zmap)


def random_gl_matrix(rng, size, steps=None):
    """
    Random element of GL_n(Z) as a product of elementary, sign and permutation matrices.
    """
    matrix = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    if size == 0:
        return matrix

    steps = steps if steps is not None else 2 * size
    for _ in range(steps):
        if size > 1:
            i, j = rng.sample(range(size), 2)
            factor = rng.choice((1, -1))
            matrix[i] = [a + factor * b for a, b in zip(matrix[i], matrix[j])]

    for i in range(size):
        if rng.random() < 0.25:
            matrix[i] = [-value for value in matrix[i]]

    rng.shuffle(matrix)
    return matrix
