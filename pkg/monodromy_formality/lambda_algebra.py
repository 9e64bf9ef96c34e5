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
Exact arithmetic over a field k and over the Laurent polynomial ring k[t, 1/t].

Smith normal form over the Laurent ring, finitely generated modules given by a presentation
matrix and their (t - 1)-primary parts.
"""

from __future__ import absolute_import

import logging
import re
from fractions import Fraction
from functools import reduce

import sympy
from sympy import Poly, Symbol, igcd, ilcm
from sympy.ntheory import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from monodromy_formality.exceptions import FieldError
from monodromy_formality.exceptions import LaurentDivisionError
from monodromy_formality.exceptions import MapNotSurjectiveError
from monodromy_formality.exceptions import NotTorsionError

__all__ = [
    'T',
    'FieldSpec',
    'RATIONALS',
    'LaurentPoly',
    'LambdaMatrix',
    'SmithForm',
    'LambdaModule',
    'PrimarySurjectionReport',
    'laurent_divmod',
    'smith_normal_form',
    'module_from_presentation',
    'primary_part_dims',
    'check_primary_surjection',
    'field_rank',
    'field_nullspace'
]

LOG = logging.getLogger(__name__)

T = Symbol('t')

FIELD_NAME_RE = re.compile(r'^(?:F_?|GF\(?|Z/)(\d+)\)?$', re.IGNORECASE)
RATIONAL_NAMES = ['Q', 'QQ', 'RATIONALS', 'C']


class FieldSpec(object):
    """
    The coefficient field k: the rationals (characteristic 0) or a prime field F_p.
    """

    def __init__(self, characteristic=0):
        characteristic = int(characteristic)

        if characteristic < 0:
            raise FieldError('Field characteristic must be 0 or a prime, got %s.' %
                             (characteristic))

        if characteristic and not isprime(characteristic):
            raise FieldError('Field characteristic %s is not a prime.' % (characteristic))

        self._characteristic = characteristic

        if characteristic:
            self._domain = GF(characteristic)
        else:
            self._domain = QQ

    @classmethod
    def parse(cls, text):
        """
        Parse "Q", "F2", "F_3", "GF(5)" or a bare prime such as "7".
        """
        if isinstance(text, FieldSpec):
            return text

        value = str(text).strip()

        if value.upper() in RATIONAL_NAMES:
            return cls(0)

        if value.isdigit():
            return cls(int(value))

        match = FIELD_NAME_RE.match(value)
        if not match:
            raise FieldError('Unknown field "%s". Valid values are: Q, F<p>, GF(<p>).' %
                             (value))

        return cls(int(match.group(1)))

    @property
    def characteristic(self):
        return self._characteristic

    @property
    def domain(self):
        return self._domain

    @property
    def name(self):
        if self._characteristic:
            return 'F%d' % (self._characteristic)
        return 'Q'

    @property
    def zero(self):
        return self._domain.zero

    @property
    def one(self):
        return self._domain.one

    def convert(self, value):
        """
        Convert an int, Fraction, "p/q" string, sympy rational or domain element into k.
        """
        if self._domain.of_type(value):
            return value

        if isinstance(value, bool):
            raise FieldError('Boolean %r is not a field scalar.' % (value))

        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError:
                raise FieldError('Invalid scalar "%s".' % (value))

        if isinstance(value, int):
            numerator, denominator = value, 1
        elif isinstance(value, Fraction):
            numerator, denominator = value.numerator, value.denominator
        else:
            value = sympy.sympify(value)
            if not value.is_Rational:
                raise FieldError('Scalar %s is not rational.' % (value))
            numerator, denominator = int(value.p), int(value.q)

        if self._characteristic and denominator % self._characteristic == 0:
            raise FieldError('Scalar %s/%s is undefined in %s.' % (numerator, denominator,
                                                                  self.name))

        return self._domain.convert(numerator) / self._domain.convert(denominator)

    def to_sympy(self, value):
        return self._domain.to_sympy(self.convert(value))

    def to_json(self, value):
        number = self.to_sympy(value)
        if self._characteristic:
            return int(number) % self._characteristic
        if number.q == 1:
            return int(number.p)
        return '%d/%d' % (number.p, number.q)

    def is_zero(self, value):
        return self.convert(value) == self._domain.zero

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other._characteristic == self._characteristic

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(('FieldSpec', self._characteristic))

    def __repr__(self):
        return 'FieldSpec(%s)' % (self.name)

    def __str__(self):
        return self.name


RATIONALS = FieldSpec(0)


def field_rank(rows, field):
    """
    Rank over k of a dense matrix given as a list of rows.
    """
    rows = [list(row) for row in rows]
    if not rows or not rows[0]:
        return 0

    entries = [[field.convert(value) for value in row] for row in rows]
    matrix = DomainMatrix(entries, (len(entries), len(entries[0])), field.domain)
    return matrix.rank()


def field_nullspace(rows, ncols, field):
    """
    Basis (list of vectors) of {v in k^ncols : rows * v = 0}.
    """
    rows = [list(row) for row in rows]
    if not rows:
        return [[field.one if i == j else field.zero for i in range(ncols)]
                for j in range(ncols)]

    if ncols == 0:
        return []

    entries = [[field.convert(value) for value in row] for row in rows]
    matrix = DomainMatrix(entries, (len(entries), ncols), field.domain)
    basis = matrix.nullspace()

    if basis.shape[0] == 0:
        return []

    return [[field.convert(value) for value in row] for row in basis.to_list()]


class LaurentPoly(object):
    """
    Element of k[t, 1/t] stored as t^offset * p(t) with p(0) != 0 (or p = 0).

    ``coeffs`` are given in ascending order starting at ``offset``.
    """

    __slots__ = ('_field', '_offset', '_poly')

    def __init__(self, coeffs=(), offset=0, field=RATIONALS):
        converted = [field.convert(value) for value in coeffs]
        poly = Poly(list(reversed(converted)) or [0], T, domain=field.domain)
        self._assign(poly, int(offset), field)

    @classmethod
    def _from_poly(cls, poly, offset, field):
        result = cls.__new__(cls)
        result._assign(poly, offset, field)
        return result

    def _assign(self, poly, offset, field):
        if poly.is_zero:
            offset = 0
        else:
            low = min(monom[0] for monom in poly.monoms())
            if low:
                poly = poly.exquo(Poly(T ** low, T, domain=field.domain))
                offset += low

        self._field = field
        self._offset = offset
        self._poly = poly

    @classmethod
    def zero(cls, field=RATIONALS):
        return cls((), 0, field)

    @classmethod
    def one(cls, field=RATIONALS):
        return cls((1,), 0, field)

    @classmethod
    def monomial(cls, coeff, exponent, field=RATIONALS):
        return cls((coeff,), exponent, field)

    @classmethod
    def constant(cls, value, field=RATIONALS):
        return cls((value,), 0, field)

    @classmethod
    def t_minus_one(cls, field=RATIONALS):
        return cls((-1, 1), 0, field)

    @classmethod
    def t_power_minus_one(cls, exponent, field=RATIONALS):
        """
        t^exponent - 1 (zero when exponent is 0).
        """
        return cls.monomial(1, exponent, field) - cls.one(field)

    @classmethod
    def from_exponent_counts(cls, counts, field=RATIONALS):
        """
        Build sum(c * t^e) from a mapping exponent -> integer count.
        """
        counts = dict((exponent, value) for exponent, value in counts.items() if value)
        if not counts:
            return cls.zero(field)

        low = min(counts)
        high = max(counts)
        coeffs = [counts.get(exponent, 0) for exponent in range(low, high + 1)]
        return cls(coeffs, low, field)

    @classmethod
    def parse(cls, text, field=RATIONALS):
        """
        Parse an expression in t such as "t^2 - t + 1" or "2*t^-1 + 1/3".
        """
        source = str(text).strip().replace('^', '**')
        if not source:
            raise FieldError('Empty Laurent polynomial.')

        try:
            expr = sympy.expand(sympy.sympify(source, locals={'t': T}))
        except (sympy.SympifyError, SyntaxError, TypeError):
            raise FieldError('Invalid Laurent polynomial "%s".' % (text))

        if expr.free_symbols - set([T]):
            raise FieldError('Laurent polynomial "%s" may only use the variable t.' % (text))

        counts = {}
        for term in sympy.Add.make_args(expr):
            coeff, exponent = term.as_coeff_exponent(T)
            if not coeff.is_Rational or not exponent.is_Integer:
                raise FieldError('Term "%s" of "%s" is not a rational multiple of a power of '
                                 't.' % (term, text))
            counts[int(exponent)] = counts.get(int(exponent), 0) + coeff

        counts = dict((exponent, value) for exponent, value in counts.items()
                      if not field.is_zero(value))
        if not counts:
            return cls.zero(field)

        low = min(counts)
        coeffs = [counts.get(exponent, 0) for exponent in range(low, max(counts) + 1)]
        return cls(coeffs, low, field)

    @property
    def field(self):
        return self._field

    @property
    def offset(self):
        return self._offset

    @property
    def poly(self):
        """
        The ordinary polynomial part p(t), with nonzero constant term.
        """
        return self._poly

    @property
    def is_zero(self):
        return self._poly.is_zero

    @property
    def is_unit(self):
        return not self._poly.is_zero and self._poly.degree() == 0

    @property
    def width(self):
        """
        Euclidean size: highest minus lowest exponent, -1 for the zero polynomial.
        """
        if self._poly.is_zero:
            return -1
        return self._poly.degree()

    def coeffs(self):
        if self._poly.is_zero:
            return []
        domain = self._field.domain
        return [domain.convert(value) for value in reversed(self._poly.all_coeffs())]

    def json_coeffs(self):
        return [self._field.to_json(value) for value in self.coeffs()]

    def _shifted(self, amount):
        if not amount:
            return self._poly
        return self._poly * Poly(T ** amount, T, domain=self._field.domain)

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other._field != self._field:
                raise FieldError('Cannot combine Laurent polynomials over %s and %s.' %
                                 (self._field, other._field))
            return other
        return LaurentPoly.constant(other, self._field)

    def __add__(self, other):
        other = self._coerce(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        base = min(self._offset, other._offset)
        total = self._shifted(self._offset - base) + other._shifted(other._offset - base)
        return LaurentPoly._from_poly(total, base, self._field)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._from_poly(-self._poly, self._offset, self._field)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return LaurentPoly._from_poly(self._poly * other._poly, self._offset + other._offset,
                                      self._field)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = LaurentPoly.one(self._field)
        for _ in range(exponent):
            result = result * self
        return result

    def __divmod__(self, other):
        return laurent_divmod(self, self._coerce(other))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other, self._field)
            except (FieldError, TypeError):
                return False
        return (self._field == other._field and self._offset == other._offset and
                self._poly == other._poly)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self._field, self._offset, tuple(self._poly.all_coeffs())))

    def inverse(self):
        if not self.is_unit:
            raise LaurentDivisionError('%s is not a unit of the Laurent ring.' % (self))
        value = self._field.one / self._field.convert(self._poly.LC())
        return LaurentPoly.monomial(value, -self._offset, self._field)

    def unit_part(self):
        """
        The unit c * t^k with self = unit_part() * normalized().
        """
        if self.is_zero:
            raise LaurentDivisionError('The zero polynomial has no unit part.')
        leading = self._field.convert(self._poly.LC())
        return LaurentPoly.monomial(leading, self._offset, self._field)

    def normalized(self):
        """
        Monic associate with offset 0 and nonzero constant term; units normalize to 1.
        """
        if self.is_zero:
            return self
        return LaurentPoly._from_poly(self._poly.monic(), 0, self._field)

    def exact_quotient(self, other):
        quotient, remainder = laurent_divmod(self, other)
        if not remainder.is_zero:
            raise LaurentDivisionError('%s does not divide %s.' % (other, self))
        return quotient

    def divides(self, other):
        return laurent_divmod(other, self)[1].is_zero

    def valuation_at_one(self):
        """
        Largest v with (t - 1)^v dividing self, by repeated exact division.
        """
        if self.is_zero:
            raise LaurentDivisionError('The (t-1)-adic valuation of zero is infinite.')

        divisor = Poly([1, -1], T, domain=self._field.domain)
        poly = self._poly
        valuation = 0
        while poly.degree() > 0 and poly.eval(1) == 0:
            poly = poly.exquo(divisor)
            valuation += 1
        return valuation

    def evaluate(self, value):
        value = self._field.convert(value)
        domain = self._field.domain
        result = domain.zero
        power = domain.one
        for coeff in self.coeffs():
            result += coeff * power
            power *= value
        if self._offset >= 0:
            return result * value ** self._offset
        return result / value ** (-self._offset)

    def residue_mod(self, modulus):
        """
        Coefficients (ascending, length deg(modulus)) of the representative of self modulo a
        normalized modulus in the basis 1, t, ..., t^(d - 1).
        """
        modulus_poly = modulus.normalized().poly
        degree = modulus_poly.degree()
        if degree <= 0:
            return []

        domain = self._field.domain
        residue = self._poly.rem(modulus_poly)

        if self._offset >= 0:
            step = Poly(T, T, domain=domain)
        else:
            step = Poly(T, T, domain=domain).invert(modulus_poly)

        for _ in range(abs(self._offset)):
            residue = (residue * step).rem(modulus_poly)

        coeffs = [domain.convert(value) for value in reversed(residue.all_coeffs())]
        if residue.is_zero:
            coeffs = []
        return coeffs + [domain.zero] * (degree - len(coeffs))

    def as_expr(self):
        return sympy.expand(self._poly.as_expr() * T ** self._offset)

    def __str__(self):
        return str(self.as_expr())

    def __repr__(self):
        return 'LaurentPoly(%s, %s)' % (self, self._field.name)


def laurent_divmod(dividend, divisor):
    """
    Euclidean division in the Laurent ring.

    Returns (q, r) with dividend = q * divisor + r and r = 0 or width(r) < width(divisor).
    """
    if divisor.is_zero:
        raise LaurentDivisionError('Division by the zero Laurent polynomial.')

    field = divisor.field
    if dividend.is_zero:
        return LaurentPoly.zero(field), LaurentPoly.zero(field)

    quotient, remainder = dividend.poly.div(divisor.poly)
    return (LaurentPoly._from_poly(quotient, dividend.offset - divisor.offset, field),
            LaurentPoly._from_poly(remainder, dividend.offset, field))


class LambdaMatrix(object):
    """
    Dense immutable matrix over the Laurent ring.
    """

    def __init__(self, entries, rows=None, cols=None, field=None):
        entries = [list(row) for row in entries]

        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0

        if len(entries) != rows:
            raise ValueError('Expected %s rows, got %s.' % (rows, len(entries)))

        for index, row in enumerate(entries):
            if len(row) != cols:
                raise ValueError('Row %s has %s entries, expected %s.' % (index, len(row), cols))

        if field is None:
            field = RATIONALS
            for row in entries:
                for value in row:
                    if isinstance(value, LaurentPoly):
                        field = value.field
                        break

        grid = []
        for row in entries:
            converted = []
            for value in row:
                if not isinstance(value, LaurentPoly):
                    value = LaurentPoly.constant(value, field)
                elif value.field != field:
                    raise FieldError('Matrix entry over %s in a matrix over %s.' %
                                     (value.field, field))
                converted.append(value)
            grid.append(tuple(converted))

        self._rows = rows
        self._cols = cols
        self._field = field
        self._entries = tuple(grid)

    @classmethod
    def identity(cls, size, field=RATIONALS):
        one = LaurentPoly.one(field)
        zero = LaurentPoly.zero(field)
        return cls([[one if i == j else zero for j in range(size)] for i in range(size)],
                   size, size, field)

    @classmethod
    def zeros(cls, rows, cols, field=RATIONALS):
        zero = LaurentPoly.zero(field)
        return cls([[zero] * cols for _ in range(rows)], rows, cols, field)

    @classmethod
    def diagonal(cls, values, rows, cols, field=RATIONALS):
        result = [[LaurentPoly.zero(field)] * cols for _ in range(rows)]
        for index, value in enumerate(values):
            result[index][index] = value
        return cls(result, rows, cols, field)

    @classmethod
    def t_identity_minus(cls, matrix, field=RATIONALS):
        """
        t * I - A for a square scalar matrix A.
        """
        size = len(matrix)
        t = LaurentPoly.monomial(1, 1, field)
        entries = []
        for i in range(size):
            row = []
            for j in range(size):
                value = LaurentPoly.constant(-field.convert(matrix[i][j]), field)
                if i == j:
                    value = value + t
                row.append(value)
            entries.append(row)
        return cls(entries, size, size, field)

    @property
    def rows(self):
        return self._rows

    @property
    def cols(self):
        return self._cols

    @property
    def shape(self):
        return (self._rows, self._cols)

    @property
    def field(self):
        return self._field

    def __getitem__(self, position):
        row, col = position
        return self._entries[row][col]

    def row(self, index):
        return list(self._entries[index])

    def column(self, index):
        return [row[index] for row in self._entries]

    def to_lists(self):
        return [list(row) for row in self._entries]

    def transpose(self):
        return LambdaMatrix([self.column(j) for j in range(self._cols)], self._cols, self._rows,
                            self._field)

    def row_slice(self, start, stop=None):
        stop = self._rows if stop is None else stop
        return LambdaMatrix(self.to_lists()[start:stop], stop - start, self._cols, self._field)

    def hstack(self, other):
        if other.rows != self._rows:
            raise ValueError('Cannot stack %sx%s next to %sx%s.' % (self._rows, self._cols,
                                                                    other.rows, other.cols))
        entries = [self.row(i) + other.row(i) for i in range(self._rows)]
        return LambdaMatrix(entries, self._rows, self._cols + other.cols, self._field)

    def __mul__(self, other):
        if self._cols != other.rows:
            raise ValueError('Cannot multiply %sx%s by %sx%s.' % (self._rows, self._cols,
                                                                  other.rows, other.cols))
        zero = LaurentPoly.zero(self._field)
        product = []
        for i in range(self._rows):
            row = []
            for j in range(other.cols):
                total = zero
                for k in range(self._cols):
                    left = self._entries[i][k]
                    if left.is_zero:
                        continue
                    right = other[k, j]
                    if right.is_zero:
                        continue
                    total = total + left * right
                row.append(total)
            product.append(row)
        return LambdaMatrix(product, self._rows, other.cols, self._field)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError('Shape mismatch %s vs %s.' % (self.shape, other.shape))
        return LambdaMatrix([[self[i, j] + other[i, j] for j in range(self._cols)]
                             for i in range(self._rows)], self._rows, self._cols, self._field)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError('Shape mismatch %s vs %s.' % (self.shape, other.shape))
        return LambdaMatrix([[self[i, j] - other[i, j] for j in range(self._cols)]
                             for i in range(self._rows)], self._rows, self._cols, self._field)

    def __eq__(self, other):
        return (isinstance(other, LambdaMatrix) and self.shape == other.shape and
                self._field == other._field and self._entries == other._entries)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.shape, self._field, self._entries))

    def is_zero(self):
        return all(value.is_zero for row in self._entries for value in row)

    def determinant(self):
        """
        Laplace expansion; meant for the small transformation matrices of a Smith form.
        """
        if self._rows != self._cols:
            raise ValueError('Determinant of a non-square %sx%s matrix.' % self.shape)
        return _laplace_determinant(self.to_lists(), self._field)

    def __repr__(self):
        body = '; '.join(', '.join(str(value) for value in row) for row in self._entries)
        return 'LambdaMatrix(%sx%s, %s, [%s])' % (self._rows, self._cols, self._field.name, body)


def _laplace_determinant(entries, field):
    size = len(entries)
    if size == 0:
        return LaurentPoly.one(field)
    if size == 1:
        return entries[0][0]

    total = LaurentPoly.zero(field)
    for j, value in enumerate(entries[0]):
        if value.is_zero:
            continue
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = value * _laplace_determinant(minor, field)
        total = total + term if j % 2 == 0 else total - term
    return total


class SmithForm(object):
    """
    U * A * V = diag(D) with U, V invertible over the Laurent ring and d_1 | d_2 | ... | d_r.

    Every entry of ``diagonal`` is normalized (monic, offset 0; units are 1).
    """

    def __init__(self, source, diagonal, left, right, left_inverse, right_inverse):
        self.source = source
        self.diagonal = tuple(diagonal)
        self.left = left
        self.right = right
        self.left_inverse = left_inverse
        self.right_inverse = right_inverse

    @property
    def rank(self):
        return len(self.diagonal)

    @property
    def field(self):
        return self.source.field

    def invariant_factors(self):
        return tuple(value for value in self.diagonal if not value.is_unit)

    def diagonal_matrix(self):
        return LambdaMatrix.diagonal(self.diagonal, self.source.rows, self.source.cols,
                                     self.field)

    def verify(self):
        """
        Check the divisibility chain, the reconstruction U*A*V and the inverse pairs.
        """
        for previous, current in zip(self.diagonal, self.diagonal[1:]):
            if not previous.divides(current):
                raise AssertionError('Divisibility chain broken: %s does not divide %s' %
                                     (previous, current))

        for value in self.diagonal:
            if value.is_zero or value != value.normalized():
                raise AssertionError('Diagonal entry %s is not normalized' % (value))

        if self.left * self.source * self.right != self.diagonal_matrix():
            raise AssertionError('U*A*V does not reproduce the diagonal form')

        rows, cols = self.source.shape
        if self.left * self.left_inverse != LambdaMatrix.identity(rows, self.field):
            raise AssertionError('Left transformation inverse mismatch')
        if self.right * self.right_inverse != LambdaMatrix.identity(cols, self.field):
            raise AssertionError('Right transformation inverse mismatch')

        return True

    def __repr__(self):
        return 'SmithForm(rank=%s, diagonal=[%s])' % (self.rank,
                                                      ', '.join(str(d) for d in self.diagonal))


class _SmithReduction(object):
    """
    Mutable state of one Smith normal form computation.
    """

    def __init__(self, matrix):
        self.field = matrix.field
        self.rows, self.cols = matrix.shape
        self.work = matrix.to_lists()
        self.left = LambdaMatrix.identity(self.rows, self.field).to_lists()
        self.left_inverse = LambdaMatrix.identity(self.rows, self.field).to_lists()
        self.right = LambdaMatrix.identity(self.cols, self.field).to_lists()
        self.right_inverse = LambdaMatrix.identity(self.cols, self.field).to_lists()

    def swap_rows(self, i, j):
        if i == j:
            return
        for grid in (self.work, self.left):
            grid[i], grid[j] = grid[j], grid[i]
        for row in self.left_inverse:
            row[i], row[j] = row[j], row[i]

    def swap_cols(self, i, j):
        if i == j:
            return
        for grid in (self.work, self.right):
            for row in grid:
                row[i], row[j] = row[j], row[i]
        self.right_inverse[i], self.right_inverse[j] = (self.right_inverse[j],
                                                        self.right_inverse[i])

    def add_row_multiple(self, target, source, factor):
        # row_target += factor * row_source
        for grid in (self.work, self.left):
            grid[target] = [value + factor * other
                            for value, other in zip(grid[target], grid[source])]
        for row in self.left_inverse:
            row[source] = row[source] - factor * row[target]

    def add_col_multiple(self, target, source, factor):
        # col_target += factor * col_source
        for grid in (self.work, self.right):
            for row in grid:
                row[target] = row[target] + factor * row[source]
        self.right_inverse[source] = [value - factor * other
                                      for value, other in zip(self.right_inverse[source],
                                                              self.right_inverse[target])]

    def scale_row(self, index, unit):
        inverse = unit.inverse()
        for grid in (self.work, self.left):
            grid[index] = [value * unit for value in grid[index]]
        for row in self.left_inverse:
            row[index] = row[index] * inverse

    def rescale_rows(self, start):
        """
        Divide every row from ``start`` on by the rational content of its entries (Q only).
        """
        if self.field.characteristic:
            return
        for i in range(start, self.rows):
            numbers = [self.field.to_sympy(coeff) for value in self.work[i]
                       for coeff in value.coeffs()]
            if not numbers:
                continue
            content = Fraction(reduce(igcd, [int(number.p) for number in numbers], 0),
                               reduce(ilcm, [int(number.q) for number in numbers], 1))
            if content != 1:
                self.scale_row(i, LaurentPoly.constant(1 / content, self.field))

    def pick_pivot(self, start):
        # Minimal width, ties broken by smallest (row, col).
        best = None
        for i in range(start, self.rows):
            for j in range(start, self.cols):
                value = self.work[i][j]
                if value.is_zero:
                    continue
                if best is None or value.width < best[0]:
                    best = (value.width, i, j)
        if best is None:
            return None
        return best[1], best[2]

    def reduce_at(self, k):
        while True:
            self.rescale_rows(k)
            position = self.pick_pivot(k)
            if position is None:
                return False

            self.swap_rows(k, position[0])
            self.swap_cols(k, position[1])
            pivot = self.work[k][k]

            clean = True
            for i in range(k + 1, self.rows):
                value = self.work[i][k]
                if value.is_zero:
                    continue
                quotient, remainder = laurent_divmod(value, pivot)
                if not quotient.is_zero:
                    self.add_row_multiple(i, k, -quotient)
                if not remainder.is_zero:
                    clean = False

            for j in range(k + 1, self.cols):
                value = self.work[k][j]
                if value.is_zero:
                    continue
                quotient, remainder = laurent_divmod(value, pivot)
                if not quotient.is_zero:
                    self.add_col_multiple(j, k, -quotient)
                if not remainder.is_zero:
                    clean = False

            if not clean:
                continue

            offender = self._non_divisible_row(k, pivot)
            if offender is not None:
                self.add_row_multiple(k, offender, LaurentPoly.one(self.field))
                continue

            unit = pivot.unit_part()
            if unit != LaurentPoly.one(self.field):
                self.scale_row(k, unit.inverse())
            return True

    def _non_divisible_row(self, k, pivot):
        if pivot.is_unit:
            return None
        for i in range(k + 1, self.rows):
            for j in range(k + 1, self.cols):
                value = self.work[i][j]
                if not value.is_zero and not laurent_divmod(value, pivot)[1].is_zero:
                    return i
        return None


def smith_normal_form(matrix):
    """
    Smith normal form over k[t, 1/t] with explicit unimodular transformations.

    :rtype: :class:`SmithForm`
    """
    reduction = _SmithReduction(matrix)

    rank = 0
    for k in range(min(matrix.rows, matrix.cols)):
        if not reduction.reduce_at(k):
            break
        rank += 1

    diagonal = [reduction.work[k][k] for k in range(rank)]
    field = matrix.field

    LOG.debug('Smith form of %sx%s matrix over %s: rank %s, diagonal %s' %
              (matrix.rows, matrix.cols, field, rank, [str(value) for value in diagonal]))

    return SmithForm(
        source=matrix,
        diagonal=diagonal,
        left=LambdaMatrix(reduction.left, matrix.rows, matrix.rows, field),
        right=LambdaMatrix(reduction.right, matrix.cols, matrix.cols, field),
        left_inverse=LambdaMatrix(reduction.left_inverse, matrix.rows, matrix.rows, field),
        right_inverse=LambdaMatrix(reduction.right_inverse, matrix.cols, matrix.cols, field)
    )


class LambdaModule(object):
    """
    Finitely generated module Lambda^rows / (column span of the presentation matrix).
    """

    def __init__(self, presentation, smith=None):
        self.presentation = presentation
        self.smith = smith or smith_normal_form(presentation)
        self.free_rank = presentation.rows - self.smith.rank
        self.invariant_factors = self.smith.invariant_factors()

        blocks = []
        for factor in self.invariant_factors:
            valuation = factor.valuation_at_one()
            if valuation > 0:
                blocks.append(valuation)
        self.t_minus_one_blocks = tuple(sorted(blocks, reverse=True))

    @property
    def field(self):
        return self.presentation.field

    @property
    def generator_count(self):
        return self.presentation.rows

    @property
    def is_torsion(self):
        return self.free_rank == 0

    @property
    def is_zero(self):
        return self.is_torsion and not self.invariant_factors

    @property
    def dimension(self):
        """
        dim over k, None when the module has a free part.
        """
        if not self.is_torsion:
            return None
        return sum(factor.width for factor in self.invariant_factors)

    @property
    def max_block(self):
        return max(self.t_minus_one_blocks) if self.t_minus_one_blocks else 0

    def order(self):
        """
        Product of the invariant factors (the Alexander-type polynomial), None if not torsion.
        """
        if not self.is_torsion:
            return None
        result = LaurentPoly.one(self.field)
        for factor in self.invariant_factors:
            result = result * factor
        return result

    def torsion_summands(self):
        """
        Indices into the Smith diagonal of the non-unit cyclic summands.
        """
        return [index for index, value in enumerate(self.smith.diagonal) if not value.is_unit]

    def residues(self, vector):
        """
        Class of a vector of Lambda^rows as residues per torsion summand.

        :rtype: ``list`` of (summand index, ``list`` of coefficients)
        """
        if not self.is_torsion:
            raise NotTorsionError('Residues are only defined for torsion modules.')

        column = LambdaMatrix([[value] for value in vector], len(vector), 1, self.field)
        coordinates = (self.smith.left * column).column(0)

        return [(index, coordinates[index].residue_mod(self.smith.diagonal[index]))
                for index in self.torsion_summands()]

    def contains_relation(self, vector):
        return all(not any(coeffs) for _, coeffs in self.residues(vector))

    def summary(self):
        return {
            'freeRank': self.free_rank,
            'invariantFactors': [factor.json_coeffs() for factor in self.invariant_factors],
            'tMinusOneBlocks': list(self.t_minus_one_blocks),
            'dimension': self.dimension
        }

    def __repr__(self):
        return ('LambdaModule(free_rank=%s, factors=[%s], blocks=%s)' %
                (self.free_rank, ', '.join(str(f) for f in self.invariant_factors),
                 list(self.t_minus_one_blocks)))


def module_from_presentation(matrix):
    """
    :rtype: :class:`LambdaModule`
    """
    return LambdaModule(matrix)


def primary_part_dims(module):
    """
    Jordan block sizes of the (t - 1)-primary part of a torsion module.
    """
    if not module.is_torsion:
        raise NotTorsionError('The (t-1)-primary part is only taken for torsion modules '
                              '(free rank %s).' % (module.free_rank))
    return module.t_minus_one_blocks


class PrimarySurjectionReport(object):

    def __init__(self, source_blocks, target_blocks, image_rank, surjective):
        self.source_blocks = tuple(source_blocks)
        self.target_blocks = tuple(target_blocks)
        self.image_rank = image_rank
        self.surjective = surjective

    @property
    def target_dimension(self):
        return sum(self.target_blocks)

    def to_dict(self):
        return {
            'sourceBlocks': list(self.source_blocks),
            'targetBlocks': list(self.target_blocks),
            'imageRank': self.image_rank,
            'surjective': self.surjective
        }


def check_primary_surjection(phi, source, target):
    """
    Verify that phi: source -> target is a well defined surjection of torsion modules and that
    it restricts to a surjection of (t - 1)-primary parts.

    ``phi`` has one column per generator of ``source`` holding its image in the generators of
    ``target``.

    :rtype: :class:`PrimarySurjectionReport`
    """
    field = phi.field
    if phi.rows != target.generator_count or phi.cols != source.generator_count:
        raise ValueError('Map of shape %sx%s does not fit modules with %s and %s generators.' %
                         (phi.rows, phi.cols, source.generator_count, target.generator_count))

    for module, label in ((source, 'source'), (target, 'target')):
        if not module.is_torsion:
            raise NotTorsionError('The %s module is not torsion (free rank %s).' %
                                  (label, module.free_rank))

    for j in range(source.presentation.cols):
        relation = source.presentation.column(j)
        image = (phi * LambdaMatrix([[value] for value in relation], len(relation), 1,
                                    field)).column(0)
        if not target.contains_relation(image):
            raise ValueError('Map does not send relation %s of the source to a relation of '
                             'the target.' % (j))

    cokernel = module_from_presentation(phi.hstack(target.presentation))
    if not cokernel.is_zero:
        raise MapNotSurjectiveError('Map is not surjective: cokernel %r.' % (cokernel))

    t_minus_one = LaurentPoly.t_minus_one(field)
    images = []
    for index in source.torsion_summands():
        factor = source.smith.diagonal[index]
        valuation = factor.valuation_at_one()
        if not valuation:
            continue
        cofactor = factor.exact_quotient(t_minus_one ** valuation)
        generator = source.smith.left_inverse.column(index)
        for power in range(valuation):
            scalar = cofactor * LaurentPoly.monomial(1, power, field)
            element = LambdaMatrix([[value * scalar] for value in generator],
                                   len(generator), 1, field)
            images.append((phi * element).column(0))

    vectors = []
    for image in images:
        flat = []
        for index, coeffs in target.residues(image):
            factor = target.smith.diagonal[index]
            valuation = factor.valuation_at_one()
            residue = LaurentPoly(coeffs, 0, field)
            if any((residue * t_minus_one ** valuation).residue_mod(factor)):
                raise ValueError('Image of a (t-1)-primary element leaves the (t-1)-primary '
                                 'part; the map is not Lambda-linear.')
            flat.extend(coeffs)
        vectors.append(flat)

    image_rank = field_rank(vectors, field) if vectors and vectors[0] else 0
    target_dimension = sum(target.t_minus_one_blocks)

    report = PrimarySurjectionReport(source_blocks=source.t_minus_one_blocks,
                                     target_blocks=target.t_minus_one_blocks,
                                     image_rank=image_rank,
                                     surjective=image_rank == target_dimension)

    LOG.debug('Primary surjection check: blocks %s -> %s, image rank %s' %
              (list(report.source_blocks), list(report.target_blocks), image_rank))
    return report
