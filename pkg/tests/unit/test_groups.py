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

import unittest
from unittest import mock

from monodromy_formality import groups
from monodromy_formality.exceptions import NotAHomomorphism
from monodromy_formality.exceptions import NotSurjective
from monodromy_formality.exceptions import PresentationError
from monodromy_formality.groups import Presentation
from monodromy_formality.groups import Word
from monodromy_formality.groups import ZMap
from monodromy_formality.groups import betti_1
from monodromy_formality.groups import exponent_matrix
from monodromy_formality.groups import fox_derivative
from monodromy_formality.groups import fox_matrix
from monodromy_formality.groups import specialize
from monodromy_formality.groups import validate_zmap
from monodromy_formality.lambda_algebra import FieldSpec
from monodromy_formality.lambda_algebra import LaurentPoly

NAMES = ['a', 'b']
TORUS = Presentation(NAMES, ['a b a^-1 b^-1'])
TREFOIL = Presentation(NAMES, ['a b a b^-1 a^-1 b^-1'])
FREE = Presentation(NAMES, [])


def poly(text):
    return LaurentPoly.parse(text)


class WordTest(unittest.TestCase):

    def test_parse(self):
        word = Word.parse('a b a^-1 b^-1', NAMES)
        self.assertEqual(word.letters, ((0, 1), (1, 1), (0, -1), (1, -1)))
        self.assertEqual(word.length, 4)

    def test_parse_exponent_forms(self):
        self.assertEqual(Word.parse('a^3 b^{-2}', NAMES).letters, ((0, 3), (1, -2)))
        self.assertEqual(Word.parse('a*b', NAMES).letters, ((0, 1), (1, 1)))

    def test_free_reduction(self):
        self.assertEqual(Word.parse('a a^-1 b', NAMES), Word.generator(1))
        self.assertEqual(Word.parse('a^2 a^-1', NAMES).letters, ((0, 1),))
        self.assertTrue(Word.parse('b a a^-1 b^-1', NAMES).is_empty)
        self.assertTrue(Word.parse('1', NAMES).is_empty)

    def test_parse_invalid(self):
        self.assertRaisesRegex(PresentationError, 'Unknown generator "c"', Word.parse,
                               'a c', NAMES)
        self.assertRaises(PresentationError, Word.parse, 'a^x', NAMES)

    def test_inverse_and_powers(self):
        word = Word.parse('a^2 b^-1', NAMES)
        self.assertEqual(word.inverse().format(NAMES), 'b a^-2')
        self.assertTrue((word * word.inverse()).is_empty)
        self.assertEqual((word ** 2).format(NAMES), 'a^2 b^-1 a^2 b^-1')
        self.assertEqual(word ** -1, word.inverse())

    def test_expanded(self):
        self.assertEqual(Word.parse('a^2 b^-1', NAMES).expanded(), [(0, 1), (0, 1), (1, -1)])

    def test_exponent_vector(self):
        self.assertEqual(TREFOIL.relators[0].exponent_vector(2), [1, -1])

    def test_substitute(self):
        images = [Word.parse('b', NAMES), Word.parse('a b', NAMES)]
        word = Word.parse('a b^-1', NAMES)
        self.assertEqual(word.substitute(images).format(NAMES), 'a^-1')

    def test_format(self):
        self.assertEqual(Word().format(NAMES), '1')


class PresentationTest(unittest.TestCase):

    def test_parse(self):
        presentation = Presentation.parse('a, b', ['a b a^-1 b^-1'])
        self.assertEqual(presentation, TORUS)
        self.assertEqual(presentation.format(), '<a, b | a b a^-1 b^-1>')

    def test_invalid_generators(self):
        self.assertRaises(PresentationError, Presentation, [], [])
        self.assertRaises(PresentationError, Presentation, ['a', 'a'], [])
        self.assertRaises(PresentationError, Presentation, ['1a'], [])

    @mock.patch.object(groups.LOG, 'warning', mock.MagicMock())
    def test_empty_relator_is_dropped(self):
        presentation = Presentation(NAMES, ['a a^-1', 'a b a^-1 b^-1'])
        self.assertEqual(presentation.num_relators, 1)
        groups.LOG.warning.assert_called_once_with('Dropping empty relator #0.')

    def test_relator_index_out_of_range(self):
        self.assertRaises(PresentationError, Presentation, NAMES, [Word.generator(5)])

    def test_index_of(self):
        self.assertEqual(TORUS.index_of('b'), 1)
        self.assertRaises(PresentationError, TORUS.index_of, 'c')


class ZMapTest(unittest.TestCase):

    def test_parse(self):
        zmap = ZMap.parse('b=-1', TORUS)
        self.assertEqual(list(zmap), [0, -1])
        self.assertEqual(zmap.format(NAMES), 'a=0 b=-1')

    def test_parse_invalid(self):
        self.assertRaises(PresentationError, ZMap.parse, 'a', TORUS)
        self.assertRaises(PresentationError, ZMap.parse, 'a=x', TORUS)
        self.assertRaises(PresentationError, ZMap.parse, 'a=1 a=0', TORUS)
        self.assertRaises(PresentationError, ZMap.parse, 'c=1', TORUS)

    def test_evaluate(self):
        self.assertEqual(ZMap([2, 3])(Word.parse('a b^-2', NAMES)), -4)

    def test_validate(self):
        self.assertEqual(validate_zmap(TREFOIL, [1, 1]), ZMap([1, 1]))

    def test_not_a_homomorphism(self):
        with self.assertRaises(NotAHomomorphism) as context:
            validate_zmap(TREFOIL, ZMap([1, 0]))
        self.assertEqual(context.exception.relator_index, 0)
        self.assertEqual(str(context.exception),
                         'NotAHomomorphism: relator 0 has exponent-sum value 1 under nu')

    def test_not_surjective(self):
        with self.assertRaises(NotSurjective) as context:
            validate_zmap(TORUS, ZMap([2, 0]))
        self.assertEqual(str(context.exception), 'NotSurjective: gcd=2')
        self.assertRaisesRegex(NotSurjective, 'gcd=0', validate_zmap, TORUS, [0, 0])

    def test_wrong_length(self):
        self.assertRaises(PresentationError, validate_zmap, TORUS, [1])


class FoxCalculusTest(unittest.TestCase):

    def test_fox_derivative(self):
        word = Word.parse('a b a^-1', NAMES)
        self.assertEqual(fox_derivative(word, 0), {Word(): 1, word: -1})
        self.assertEqual(fox_derivative(word, 1), {Word.generator(0): 1})

    def test_specialize(self):
        element = fox_derivative(Word.parse('a b a^-1', NAMES), 0)
        self.assertTrue(specialize(element, ZMap([1, 0])).is_zero)
        self.assertEqual(specialize(element, ZMap([1, 1])), poly('1 - t'))

    def test_torus_row(self):
        matrix = fox_matrix(TORUS, ZMap([1, 0]))
        self.assertEqual(matrix.shape, (1, 2))
        self.assertTrue(matrix[0, 0].is_zero)
        self.assertEqual(matrix[0, 1], poly('t - 1'))

    def test_trefoil_row(self):
        matrix = fox_matrix(TREFOIL, ZMap([1, 1]))
        self.assertEqual(matrix[0, 0], poly('t^2 - t + 1'))
        self.assertEqual(matrix[0, 1], poly('-t^2 + t - 1'))

    def test_fox_matrix_over_prime_field(self):
        field = FieldSpec(2)
        matrix = fox_matrix(TREFOIL, ZMap([1, 1]), field)
        self.assertEqual(matrix.field, field)
        self.assertEqual(matrix[0, 0], matrix[0, 1])

    def test_free_group_has_no_rows(self):
        self.assertEqual(fox_matrix(FREE, ZMap([1, 0])).shape, (0, 2))

    def test_fox_matrix_validates_map(self):
        self.assertRaises(NotAHomomorphism, fox_matrix, TREFOIL, ZMap([0, 1]))


class BettiTest(unittest.TestCase):

    def test_exponent_matrix(self):
        self.assertEqual(exponent_matrix(TREFOIL), [[1, -1]])

    def test_betti_1(self):
        self.assertEqual(betti_1(TORUS), 2)
        self.assertEqual(betti_1(TREFOIL), 1)
        self.assertEqual(betti_1(FREE), 2)

    def test_betti_1_depends_on_field(self):
        presentation = Presentation(['a'], ['a^2'])
        self.assertEqual(betti_1(presentation), 0)
        self.assertEqual(betti_1(presentation, FieldSpec(2)), 1)
