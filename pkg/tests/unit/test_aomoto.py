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

from monodromy_formality.aomoto import aomoto_complex
from monodromy_formality.aomoto import cohomology_basis
from monodromy_formality.aomoto import cup_class
from monodromy_formality.aomoto import cup_evaluate
from monodromy_formality.aomoto import resonance_membership
from monodromy_formality.exceptions import NotACocycleError
from monodromy_formality.exceptions import NotSurjective
from monodromy_formality.groups import Presentation
from monodromy_formality.groups import ZMap
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import FieldSpec

TORUS = Presentation(['a', 'b'], ['a b a^-1 b^-1'])
TREFOIL = Presentation(['a', 'b'], ['a b a b^-1 a^-1 b^-1'])
FREE = Presentation(['a', 'b'], [])
HEISENBERG = Presentation(['y', 'z', 's'], ['y z y^-1 z^-1', 's y s^-1 z^-1 y^-1',
                                            's z s^-1 z^-1'])
GENUS_2 = Presentation(['a1', 'b1', 'a2', 'b2'], ['a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1'])


def as_json(values, field=RATIONALS):
    return [field.to_json(value) for value in values]


class CupProductTest(unittest.TestCase):

    def test_commutator(self):
        self.assertEqual(as_json(cup_evaluate(TORUS, [1, 0], [0, 1])), [1])
        self.assertEqual(as_json(cup_evaluate(TORUS, [0, 1], [1, 0])), [-1])

    def test_square_of_class_vanishes(self):
        self.assertEqual(as_json(cup_evaluate(TORUS, [1, 0], [1, 0])), [0])
        self.assertEqual(as_json(cup_class(HEISENBERG, [0, 0, 1], [0, 0, 1])), [0])

    def test_antisymmetric_in_cohomology(self):
        for left, right in (([1, 0, 0], [0, 0, 1]), ([0, 0, 1], [1, 0, 0])):
            forward = cup_class(HEISENBERG, left, right)
            backward = cup_class(HEISENBERG, right, left)
            self.assertEqual(as_json([x + y for x, y in zip(forward, backward)]),
                             [0] * len(forward))

    def test_bilinear(self):
        total = cup_evaluate(GENUS_2, [1, 1, 0, 0], [0, 1, 0, 1])
        first = cup_evaluate(GENUS_2, [1, 0, 0, 0], [0, 1, 0, 1])
        second = cup_evaluate(GENUS_2, [0, 1, 0, 0], [0, 1, 0, 1])
        self.assertEqual(as_json(total), as_json([x + y for x, y in zip(first, second)]))

    def test_rejects_non_cocycles(self):
        self.assertRaises(NotACocycleError, cup_evaluate, TREFOIL, [1, 0], [1, 1])
        self.assertRaises(NotACocycleError, cup_evaluate, TORUS, [1, 0, 0], [1, 0])

    def test_cohomology_basis(self):
        basis = cohomology_basis(TORUS)
        self.assertEqual((basis.h1dim, basis.h2dim), (2, 1))
        basis = cohomology_basis(TREFOIL)
        self.assertEqual((basis.h1dim, basis.h2dim), (1, 0))
        basis = cohomology_basis(FREE)
        self.assertEqual((basis.h1dim, basis.h2dim), (2, 0))


class AomotoComplexTest(unittest.TestCase):

    def test_torus(self):
        complex_ = aomoto_complex(TORUS, ZMap([1, 0]))
        self.assertEqual(complex_.betas, (0, 0, 0))
        self.assertEqual(complex_.map01, [RATIONALS.convert(1), RATIONALS.convert(0)])

    def test_free_group(self):
        complex_ = aomoto_complex(FREE, ZMap([1, 0]))
        self.assertEqual(complex_.beta1, 1)

    def test_trefoil(self):
        self.assertEqual(aomoto_complex(TREFOIL, ZMap([1, 1])).beta1, 0)

    def test_heisenberg(self):
        complex_ = aomoto_complex(HEISENBERG, ZMap([0, 0, 1]))
        self.assertEqual(complex_.beta0, 0)
        self.assertEqual(complex_.beta1, 1)
        self.assertEqual(complex_.summary()['h1dim'], 2)

    def test_genus_2(self):
        self.assertEqual(aomoto_complex(GENUS_2, ZMap([1, 0, 0, 0])).beta1, 2)

    def test_prime_fields(self):
        for name in ('F2', 'F3'):
            field = FieldSpec.parse(name)
            self.assertEqual(aomoto_complex(TORUS, ZMap([1, 0]), field).beta1, 0)
            self.assertEqual(aomoto_complex(HEISENBERG, ZMap([0, 0, 1]), field).beta1, 1)

    def test_validates_map(self):
        self.assertRaises(NotSurjective, aomoto_complex, TORUS, ZMap([0, 2]))


class ResonanceTest(unittest.TestCase):

    def test_membership(self):
        self.assertTrue(resonance_membership(FREE, [1, 0]))
        self.assertFalse(resonance_membership(TORUS, [1, 0]))
        self.assertTrue(resonance_membership(GENUS_2, [0, 1, 0, 0]))

    def test_rational_classes(self):
        self.assertFalse(resonance_membership(TORUS, ['1/2', 3]))

    def test_zero_class(self):
        self.assertRaises(NotACocycleError, resonance_membership, TORUS, [0, 0])

    def test_non_cocycle(self):
        self.assertRaises(NotACocycleError, resonance_membership, TREFOIL, [1, 0])
