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
from fractions import Fraction

from monodromy_formality.exceptions import FieldError
from monodromy_formality.exceptions import LaurentDivisionError
from monodromy_formality.exceptions import MapNotSurjectiveError
from monodromy_formality.exceptions import NotTorsionError
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import _SmithReduction
from monodromy_formality.lambda_algebra import FieldSpec
from monodromy_formality.lambda_algebra import LambdaMatrix
from monodromy_formality.lambda_algebra import LaurentPoly
from monodromy_formality.lambda_algebra import check_primary_surjection
from monodromy_formality.lambda_algebra import field_nullspace
from monodromy_formality.lambda_algebra import field_rank
from monodromy_formality.lambda_algebra import laurent_divmod
from monodromy_formality.lambda_algebra import module_from_presentation
from monodromy_formality.lambda_algebra import primary_part_dims
from monodromy_formality.lambda_algebra import smith_normal_form

F2 = FieldSpec(2)
F3 = FieldSpec(3)


def poly(text, field=RATIONALS):
    return LaurentPoly.parse(text, field)


def matrix(rows, field=RATIONALS):
    return LambdaMatrix([[poly(entry, field) for entry in row] for row in rows], field=field)


class FieldSpecTest(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(FieldSpec.parse('Q').characteristic, 0)
        self.assertEqual(FieldSpec.parse('QQ').characteristic, 0)
        self.assertEqual(FieldSpec.parse('F2').characteristic, 2)
        self.assertEqual(FieldSpec.parse('F_3').characteristic, 3)
        self.assertEqual(FieldSpec.parse('GF(5)').characteristic, 5)
        self.assertEqual(FieldSpec.parse('7').characteristic, 7)
        self.assertEqual(FieldSpec.parse(F3), F3)

    def test_parse_invalid(self):
        self.assertRaises(FieldError, FieldSpec.parse, 'R')
        self.assertRaisesRegex(FieldError, 'not a prime', FieldSpec.parse, 'F4')
        self.assertRaises(FieldError, FieldSpec, -3)

    def test_name(self):
        self.assertEqual(RATIONALS.name, 'Q')
        self.assertEqual(F3.name, 'F3')
        self.assertEqual(str(F2), 'F2')

    def test_convert(self):
        self.assertEqual(RATIONALS.to_json(RATIONALS.convert('3/6')), '1/2')
        self.assertEqual(RATIONALS.to_json(RATIONALS.convert(Fraction(4, 2))), 2)
        self.assertEqual(F3.to_json(F3.convert(Fraction(1, 2))), 2)
        self.assertEqual(F2.to_json(F2.convert(-1)), 1)
        self.assertTrue(F3.is_zero(6))

    def test_convert_invalid(self):
        self.assertRaisesRegex(FieldError, 'undefined in F3', F3.convert, '1/3')
        self.assertRaises(FieldError, RATIONALS.convert, 'abc')
        self.assertRaises(FieldError, RATIONALS.convert, True)

    def test_rank_and_nullspace(self):
        rows = [[1, 1], [1, -1]]
        self.assertEqual(field_rank(rows, RATIONALS), 2)
        self.assertEqual(field_rank(rows, F2), 1)
        self.assertEqual(field_nullspace(rows, 2, RATIONALS), [])
        self.assertEqual(len(field_nullspace(rows, 2, F2)), 1)
        self.assertEqual(len(field_nullspace([], 3, RATIONALS)), 3)


class LaurentPolyTest(unittest.TestCase):

    def test_parse_and_normal_storage(self):
        value = poly('t - t^-1')
        self.assertEqual(value.offset, -1)
        self.assertEqual(value.json_coeffs(), [-1, 0, 1])
        self.assertEqual(value.width, 2)
        self.assertEqual(poly('t^-1') * poly('t^2 - 1'), value)

    def test_parse_invalid(self):
        self.assertRaises(FieldError, poly, '')
        self.assertRaises(FieldError, poly, 'x + 1')
        self.assertRaises(FieldError, poly, 't^(1/2)')

    def test_zero_and_units(self):
        self.assertTrue(LaurentPoly.zero().is_zero)
        self.assertEqual(LaurentPoly.zero().width, -1)
        self.assertTrue(poly('3*t^-4').is_unit)
        self.assertFalse(poly('t - 1').is_unit)
        self.assertTrue(LaurentPoly.t_power_minus_one(0).is_zero)

    def test_arithmetic(self):
        a = poly('t + 1')
        b = poly('t - 1')
        self.assertEqual(a * b, poly('t^2 - 1'))
        self.assertEqual(a - b, LaurentPoly.constant(2))
        self.assertEqual(a + (-a), LaurentPoly.zero())
        self.assertEqual(b ** 2, poly('t^2 - 2*t + 1'))
        self.assertEqual(poly('t') ** -2, poly('t^-2'))
        self.assertEqual(1 - poly('t'), -b)

    def test_field_mismatch(self):
        self.assertRaises(FieldError, lambda: poly('t') + poly('t', F2))

    def test_divmod_exact(self):
        quotient, remainder = laurent_divmod(poly('t^2 - 1'), poly('t - 1'))
        self.assertEqual(quotient, poly('t + 1'))
        self.assertTrue(remainder.is_zero)

    def test_divmod_by_unit(self):
        quotient, remainder = divmod(poly('t^3 + 1'), poly('t^2'))
        self.assertEqual(quotient, poly('t + t^-2'))
        self.assertTrue(remainder.is_zero)

    def test_divmod_with_remainder(self):
        dividend = poly('t^2 + 1')
        divisor = poly('t - 1')
        quotient, remainder = laurent_divmod(dividend, divisor)
        self.assertEqual(quotient * divisor + remainder, dividend)
        self.assertEqual(remainder, LaurentPoly.constant(2))
        self.assertLess(remainder.width, divisor.width)

    def test_divmod_negative_offsets(self):
        dividend = poly('t^-2 + 3*t + 5')
        divisor = poly('t^-1 - t')
        quotient, remainder = laurent_divmod(dividend, divisor)
        self.assertEqual(quotient * divisor + remainder, dividend)
        self.assertTrue(remainder.is_zero or remainder.width < divisor.width)

    def test_divmod_by_zero(self):
        self.assertRaises(LaurentDivisionError, laurent_divmod, poly('t'), LaurentPoly.zero())
        self.assertRaises(ZeroDivisionError, laurent_divmod, poly('t'), LaurentPoly.zero())

    def test_inverse(self):
        self.assertEqual(LaurentPoly.monomial(2, 3).inverse(),
                         LaurentPoly.monomial(Fraction(1, 2), -3))
        self.assertRaises(LaurentDivisionError, poly('t - 1').inverse)

    def test_unit_part_and_normalized(self):
        value = poly('2*t^3 - 2*t^2')
        self.assertEqual(value.normalized(), poly('t - 1'))
        self.assertEqual(value.unit_part(), poly('2*t^2'))
        self.assertEqual(value.unit_part() * value.normalized(), value)
        self.assertEqual(poly('5*t^-7').normalized(), LaurentPoly.one())

    def test_exact_quotient(self):
        self.assertEqual(poly('t^2 - 1').exact_quotient(poly('t + 1')), poly('t - 1'))
        self.assertRaises(LaurentDivisionError, poly('t^2 + 1').exact_quotient, poly('t - 1'))
        self.assertTrue(poly('t - 1').divides(poly('t^3 - 1')))
        self.assertFalse(poly('t - 1').divides(poly('t^3 + 1')))

    def test_valuation_at_one(self):
        self.assertEqual(poly('(t - 1)^2 * (t + 1)').valuation_at_one(), 2)
        self.assertEqual(poly('t^-3 * (t - 1)').valuation_at_one(), 1)
        self.assertEqual(poly('t^2 + t + 1').valuation_at_one(), 0)
        self.assertEqual(poly('t^2 + t + 1', F3).valuation_at_one(), 2)
        self.assertEqual(poly('t^2 + 1', F2).valuation_at_one(), 2)
        self.assertRaises(LaurentDivisionError, LaurentPoly.zero().valuation_at_one)

    def test_evaluate(self):
        self.assertEqual(RATIONALS.to_json(poly('t^2 + t^-1').evaluate(2)), '9/2')
        self.assertEqual(F3.to_json(poly('t^2 + t + 1', F3).evaluate(1)), 0)

    def test_residue_mod(self):
        modulus = poly('t^2 + 1')
        residue = poly('t^-1').residue_mod(modulus)
        self.assertEqual([RATIONALS.to_json(value) for value in residue], [0, -1])
        residue = poly('t^3 + 2').residue_mod(modulus)
        self.assertEqual([RATIONALS.to_json(value) for value in residue], [2, -1])
        self.assertEqual(poly('t').residue_mod(LaurentPoly.one()), [])

    def test_from_exponent_counts(self):
        self.assertEqual(LaurentPoly.from_exponent_counts({-1: 2, 1: -1, 0: 0}),
                         poly('2*t^-1 - t'))
        self.assertTrue(LaurentPoly.from_exponent_counts({3: 0}).is_zero)

    def test_prime_field_coefficients(self):
        value = poly('t^2 + 2*t + 1', F3)
        self.assertEqual(value, poly('t^2 - t + 1', F3))
        self.assertEqual(value.json_coeffs(), [1, 2, 1])


class LambdaMatrixTest(unittest.TestCase):

    def test_shape_validation(self):
        self.assertRaises(ValueError, LambdaMatrix, [[1, 2], [3]])
        self.assertRaises(ValueError, LambdaMatrix, [[1]], 2, 1)

    def test_product_and_transpose(self):
        a = matrix([['1', 't'], ['0', '1']])
        b = matrix([['1', '-t'], ['0', '1']])
        self.assertEqual(a * b, LambdaMatrix.identity(2))
        self.assertEqual(a.transpose(), matrix([['1', '0'], ['t', '1']]))
        self.assertRaises(ValueError, lambda: a * LambdaMatrix.identity(3))

    def test_t_identity_minus(self):
        result = LambdaMatrix.t_identity_minus([[1, 1], [0, 1]])
        self.assertEqual(result, matrix([['t - 1', '-1'], ['0', 't - 1']]))

    def test_determinant(self):
        self.assertEqual(matrix([['t', '1'], ['1', 't^-1']]).determinant(), LaurentPoly.zero())
        self.assertEqual(matrix([['t', '1'], ['0', 't^-1']]).determinant(), LaurentPoly.one())

    def test_row_slice_and_hstack(self):
        a = matrix([['1', 't'], ['t - 1', '0'], ['2', '3']])
        self.assertEqual(a.row_slice(1).shape, (2, 2))
        self.assertEqual(a.row_slice(1)[0, 0], poly('t - 1'))
        self.assertEqual(a.hstack(LambdaMatrix.identity(3)).shape, (3, 5))


class SmithNormalFormTest(unittest.TestCase):

    def test_equal_factors(self):
        smith = smith_normal_form(matrix([['t - 1', '0'], ['0', 't - 1']]))
        self.assertEqual(smith.diagonal, (poly('t - 1'), poly('t - 1')))
        self.assertTrue(smith.verify())

    def test_coprime_factors_merge(self):
        smith = smith_normal_form(matrix([['t - 1', '0'], ['0', 't + 1']]))
        self.assertEqual(smith.diagonal, (LaurentPoly.one(), poly('t^2 - 1')))
        self.assertEqual(smith.invariant_factors(), (poly('t^2 - 1'),))
        self.assertTrue(smith.verify())

    def test_coprime_factors_collide_in_characteristic_two(self):
        smith = smith_normal_form(matrix([['t - 1', '0'], ['0', 't + 1']], F2))
        self.assertEqual(smith.diagonal, (LaurentPoly.t_minus_one(F2),) * 2)
        self.assertTrue(smith.verify())

    def test_unipotent_block(self):
        smith = smith_normal_form(LambdaMatrix.t_identity_minus([[1, 1], [0, 1]]))
        self.assertEqual(smith.diagonal, (LaurentPoly.one(), poly('(t - 1)^2')))
        self.assertTrue(smith.verify())

    def test_units_and_offsets_are_normalized(self):
        smith = smith_normal_form(matrix([['2*t^3 - 2*t^2', '0'], ['0', '3*t^-1']]))
        self.assertEqual(smith.diagonal, (LaurentPoly.one(), poly('t - 1')))
        self.assertTrue(smith.verify())

    def test_rectangular(self):
        source = matrix([['t - 1', 't^2 - 1', '0'], ['0', 't - 1', 't^-1 - 1']])
        smith = smith_normal_form(source)
        self.assertTrue(smith.verify())
        self.assertEqual(smith.rank, 2)
        # every entry is a multiple of t - 1
        self.assertEqual(smith.diagonal[0], poly('t - 1'))

    def test_zero_matrix(self):
        smith = smith_normal_form(LambdaMatrix.zeros(2, 3))
        self.assertEqual(smith.rank, 0)
        self.assertTrue(smith.verify())

    def test_rows_are_divided_by_their_content(self):
        source = matrix([['2*t - 2', '4/3'], ['1', 't']])
        reduction = _SmithReduction(source)
        reduction.rescale_rows(0)

        self.assertEqual(reduction.work[0], [poly('3*t - 3'), poly('2')])
        self.assertEqual(reduction.work[1], [poly('1'), poly('t')])
        self.assertEqual(LambdaMatrix(reduction.left) * source, LambdaMatrix(reduction.work))
        self.assertEqual(LambdaMatrix(reduction.left) * LambdaMatrix(reduction.left_inverse),
                         LambdaMatrix.identity(2))
        self.assertTrue(smith_normal_form(source).verify())

    def test_rescaling_starts_at_the_given_row(self):
        source = matrix([['2', '4*t'], ['6', '9/2']])
        reduction = _SmithReduction(source)
        reduction.rescale_rows(1)

        self.assertEqual(reduction.work[0], [poly('2'), poly('4*t')])
        self.assertEqual(reduction.work[1], [poly('4'), poly('3')])

    def test_rescaling_leaves_prime_fields_alone(self):
        source = matrix([['2*t - 2', '2']], F3)
        reduction = _SmithReduction(source)
        reduction.rescale_rows(0)
        self.assertEqual(reduction.work, source.to_lists())

    def test_verify_detects_tampering(self):
        smith = smith_normal_form(matrix([['t - 1', '0'], ['0', 't + 1']]))
        smith.diagonal = (poly('t - 1'), poly('t + 1'))
        self.assertRaises(AssertionError, smith.verify)


class LambdaModuleTest(unittest.TestCase):

    def test_trivial_action(self):
        module = module_from_presentation(LambdaMatrix.t_identity_minus([[1, 0], [0, 1]]))
        self.assertTrue(module.is_torsion)
        self.assertEqual(module.t_minus_one_blocks, (1, 1))
        self.assertEqual(module.dimension, 2)
        self.assertEqual(module.order(), poly('(t - 1)^2'))
        self.assertEqual(primary_part_dims(module), (1, 1))

    def test_mixed_primary_parts(self):
        module = module_from_presentation(matrix([['(t - 1)^2 * (t + 1)']]))
        self.assertEqual(module.t_minus_one_blocks, (2,))
        self.assertEqual(module.dimension, 3)
        self.assertEqual(module.max_block, 2)

    def test_free_part(self):
        module = module_from_presentation(matrix([['t - 1'], ['0']]))
        self.assertEqual(module.free_rank, 1)
        self.assertFalse(module.is_torsion)
        self.assertIsNone(module.dimension)
        self.assertIsNone(module.order())
        self.assertRaises(NotTorsionError, primary_part_dims, module)
        self.assertRaises(NotTorsionError, module.residues, [LaurentPoly.one()] * 2)

    def test_zero_module(self):
        module = module_from_presentation(matrix([['t^2']]))
        self.assertTrue(module.is_zero)
        self.assertEqual(module.dimension, 0)

    def test_residues(self):
        module = module_from_presentation(matrix([['(t - 1)^2']]))
        self.assertTrue(module.contains_relation([poly('t^2 - 2*t + 1')]))
        self.assertTrue(module.contains_relation([poly('t^-5 * (t - 1)^3')]))
        self.assertFalse(module.contains_relation([poly('t')]))

    def test_summary(self):
        module = module_from_presentation(LambdaMatrix.t_identity_minus([[1, 1], [0, 1]]))
        self.assertEqual(module.summary(), {
            'freeRank': 0,
            'invariantFactors': [[1, -2, 1]],
            'tMinusOneBlocks': [2],
            'dimension': 2
        })


class PrimarySurjectionTest(unittest.TestCase):

    def test_quotient_map(self):
        source = module_from_presentation(matrix([['(t - 1)^2']]))
        target = module_from_presentation(matrix([['t - 1']]))
        report = check_primary_surjection(LambdaMatrix.identity(1), source, target)
        self.assertEqual(report.source_blocks, (2,))
        self.assertEqual(report.target_blocks, (1,))
        self.assertEqual(report.image_rank, 1)
        self.assertTrue(report.surjective)

    def test_target_without_primary_part(self):
        source = module_from_presentation(matrix([['(t - 1) * (t + 1)']]))
        target = module_from_presentation(matrix([['t + 1']]))
        report = check_primary_surjection(LambdaMatrix.identity(1), source, target)
        self.assertEqual(report.image_rank, 0)
        self.assertEqual(report.target_dimension, 0)
        self.assertTrue(report.surjective)
        self.assertEqual(report.to_dict()['sourceBlocks'], [1])

    def test_not_surjective(self):
        source = module_from_presentation(matrix([['(t - 1)^2']]))
        target = module_from_presentation(matrix([['(t - 1)^2']]))
        self.assertRaises(MapNotSurjectiveError, check_primary_surjection,
                          matrix([['t - 1']]), source, target)

    def test_not_well_defined(self):
        source = module_from_presentation(matrix([['t - 1']]))
        target = module_from_presentation(matrix([['(t - 1)^2']]))
        self.assertRaisesRegex(ValueError, 'relation', check_primary_surjection,
                               LambdaMatrix.identity(1), source, target)

    def test_not_torsion(self):
        source = module_from_presentation(LambdaMatrix.zeros(1, 1))
        target = module_from_presentation(matrix([['t - 1']]))
        self.assertRaises(NotTorsionError, check_primary_surjection,
                          LambdaMatrix.identity(1), source, target)

    def test_shape_mismatch(self):
        source = module_from_presentation(matrix([['t - 1']]))
        target = module_from_presentation(matrix([['t - 1']]))
        self.assertRaises(ValueError, check_primary_surjection, LambdaMatrix.identity(2),
                          source, target)
