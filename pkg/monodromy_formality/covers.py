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
Homology of the infinite cyclic cover as a module over the Laurent ring and Jordan structure
of monodromy matrices.
"""

from __future__ import absolute_import

import logging

from sympy import Matrix, Poly
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from monodromy_formality.exceptions import NotInvertibleError
from monodromy_formality.groups import fox_matrix
from monodromy_formality.groups import validate_zmap
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import T
from monodromy_formality.lambda_algebra import LambdaMatrix
from monodromy_formality.lambda_algebra import LaurentPoly
from monodromy_formality.lambda_algebra import module_from_presentation
from monodromy_formality.lambda_algebra import smith_normal_form

__all__ = [
    'CoverChainComplex',
    'CoverHomology',
    'JordanReport',
    'cover_chain_complex',
    'cover_homology',
    'monodromy_blocks_at_1',
    'matrix_jordan_at',
    'matrix_rational_spectrum',
    'mapping_torus_oracle'
]

LOG = logging.getLogger(__name__)


class CoverChainComplex(object):
    """
    Lambda^m --d2--> Lambda^n --d1--> Lambda, the equivariant chains of the cyclic cover.
    """

    def __init__(self, d1, d2):
        self.d1 = d1
        self.d2 = d2

    @property
    def field(self):
        return self.d1.field

    def is_exact_at_middle(self):
        return (self.d1 * self.d2).is_zero()


class CoverHomology(object):

    def __init__(self, h1, h0check, complex_=None):
        self.h1 = h1
        self.h0check = h0check
        self.complex = complex_

    @property
    def field(self):
        return self.h1.field

    @property
    def is_b1_finite(self):
        return self.h1.is_torsion

    @property
    def b1(self):
        """
        dim_k H_1 of the cover, None when infinite.
        """
        return self.h1.dimension

    def summary(self):
        result = self.h1.summary()
        result['b1N'] = self.b1 if self.is_b1_finite else 'infinite'
        order = self.h1.order()
        result['order'] = order.json_coeffs() if order is not None else None
        return result

    def __repr__(self):
        return 'CoverHomology(h1=%r, b1N=%s)' % (self.h1, self.b1 if self.is_b1_finite
                                                 else 'infinite')


class JordanReport(object):

    def __init__(self, eigenvalue, block_sizes, ranks=None, b1_finite=True):
        self.eigenvalue = eigenvalue
        self.block_sizes = tuple(sorted(block_sizes, reverse=True))
        self.ranks = tuple(ranks) if ranks is not None else None
        # False when the module has a free part; block_sizes then cover the torsion part only
        self.b1_finite = b1_finite

    @property
    def max_block(self):
        return self.block_sizes[0] if self.block_sizes else 0

    @property
    def total_multiplicity(self):
        return sum(self.block_sizes)

    def to_dict(self):
        eigenvalue = self.eigenvalue
        if not isinstance(eigenvalue, int):
            eigenvalue = str(eigenvalue)
        result = {
            'eigenvalue': eigenvalue,
            'blockSizes': list(self.block_sizes),
            'maxBlock': self.max_block,
            'totalMultiplicity': self.total_multiplicity
        }
        if self.ranks is not None:
            result['rankSequence'] = list(self.ranks)
        if not self.b1_finite:
            result['b1N'] = 'infinite'
        return result

    def __eq__(self, other):
        return (isinstance(other, JordanReport) and other.block_sizes == self.block_sizes and
                other.eigenvalue == self.eigenvalue and other.b1_finite == self.b1_finite)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((str(self.eigenvalue), self.block_sizes, self.b1_finite))

    def __repr__(self):
        return 'JordanReport(eigenvalue=%s, blocks=%s)' % (self.eigenvalue,
                                                            list(self.block_sizes))


def cover_chain_complex(presentation, zmap, field=RATIONALS):
    """
    :rtype: :class:`CoverChainComplex`
    """
    zmap = validate_zmap(presentation, zmap)
    n = presentation.num_generators

    d1 = LambdaMatrix([[LaurentPoly.t_power_minus_one(value, field) for value in zmap]],
                      1, n, field)
    d2 = fox_matrix(presentation, zmap, field).transpose()

    complex_ = CoverChainComplex(d1, d2)
    if not complex_.is_exact_at_middle():
        raise AssertionError('d1 * d2 is not zero for %s' % (presentation.format()))
    return complex_


def cover_homology(presentation, zmap, field=RATIONALS):
    """
    H_1 of the infinite cyclic cover given by nu, as a module over k[t, 1/t].

    ker d1 is free of rank n - 1: column operations take d1 to (t - 1, 0, ..., 0) and the last
    n - 1 columns of the transformation are a basis. im d2 is rewritten in that basis.

    :rtype: :class:`CoverHomology`
    """
    complex_ = cover_chain_complex(presentation, zmap, field)
    d1_smith = smith_normal_form(complex_.d1)

    h0check = d1_smith.diagonal[0]
    if h0check != LaurentPoly.t_minus_one(field):
        raise AssertionError('H_0 of the cover is Lambda/(%s), expected Lambda/(t - 1)' %
                             (h0check))

    coordinates = d1_smith.right_inverse * complex_.d2
    if not all(value.is_zero for value in coordinates.row(0)):
        raise AssertionError('Image of d2 leaves the kernel of d1')

    relations = coordinates.row_slice(1)
    h1 = module_from_presentation(relations)

    LOG.debug('Cover homology of %s over %s: %r' % (presentation.format(), field, h1))
    return CoverHomology(h1=h1, h0check=h0check, complex_=complex_)


def monodromy_blocks_at_1(homology):
    """
    Jordan blocks of t acting on H_1 of the cover at eigenvalue 1.

    An infinite b1(N) is reported with ``b1_finite=False`` rather than raised.

    :rtype: :class:`JordanReport`
    """
    if not homology.is_b1_finite:
        LOG.debug('H_1 of the cover has free rank %s; b1(N) is infinite.' %
                  (homology.h1.free_rank))
    return JordanReport(1, homology.h1.t_minus_one_blocks, b1_finite=homology.is_b1_finite)


def _rational_matrix(matrix):
    rows = [list(row) for row in matrix]
    size = len(rows)
    for row in rows:
        if len(row) != size:
            raise ValueError('Matrix is not square: %s rows, a row of length %s.' %
                             (size, len(row)))
    return [[RATIONALS.convert(value) for value in row] for row in rows], size


def matrix_jordan_at(matrix, eigenvalue=1):
    """
    Jordan block sizes of a rational matrix at a rational eigenvalue.

    With r_k = rank (A - lambda I)^k, the number of blocks of size >= k is r_(k-1) - r_k.

    :rtype: :class:`JordanReport`
    """
    rows, size = _rational_matrix(matrix)
    value = RATIONALS.convert(eigenvalue)

    shifted = [[entry - value if i == j else entry for j, entry in enumerate(row)]
               for i, row in enumerate(rows)]

    if size == 0:
        return JordanReport(_scalar(value), [])

    base = DomainMatrix(shifted, (size, size), QQ)
    ranks = [size]
    power = DomainMatrix.eye(size, QQ)
    while True:
        power = power * base
        ranks.append(power.rank())
        if ranks[-1] == ranks[-2]:
            break

    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
    blocks = []
    for k in range(1, len(at_least)):
        blocks.extend([k] * (at_least[k - 1] - at_least[k]))

    LOG.debug('Rank sequence at eigenvalue %s: %s' % (RATIONALS.to_sympy(value), ranks))
    return JordanReport(_scalar(value), blocks, ranks)


def _scalar(value):
    number = RATIONALS.to_sympy(value)
    if number.q == 1:
        return int(number.p)
    return number


def matrix_rational_spectrum(matrix):
    """
    Jordan reports at every rational eigenvalue, ordered by eigenvalue.
    """
    rows, size = _rational_matrix(matrix)
    if size == 0:
        return []

    coefficients = DomainMatrix(rows, (size, size), QQ).charpoly()
    characteristic = Poly(list(coefficients), T, domain=QQ)

    reports = []
    for root in sorted(characteristic.ground_roots()):
        reports.append(matrix_jordan_at(rows, root))
    return reports


def mapping_torus_oracle(matrix, field=RATIONALS):
    """
    The module presented by t I - A: H_1 of the cover of the mapping torus of Z^n by A.

    :rtype: :class:`LambdaModule`
    """
    rows = [[int(value) for value in row] for row in matrix]
    size = len(rows)
    if any(len(row) != size for row in rows):
        raise NotInvertibleError('Monodromy matrix must be square.')

    determinant = Matrix(rows).det() if size else 1
    if determinant not in (1, -1):
        raise NotInvertibleError('Matrix %s has determinant %s; it is not invertible over Z.' %
                                 (rows, determinant))

    return module_from_presentation(LambdaMatrix.t_identity_minus(rows, field))
