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
Cup products on the presentation 2-complex and the Aomoto complex H^0 -> H^1 -> H^2 given by
left multiplication with a degree one class.

H^2 here is the cohomology of the 2-complex, which depends on the presentation. Only beta0
and beta1 are invariants of the group.
"""

from __future__ import absolute_import

import logging

from monodromy_formality.exceptions import NotACocycleError
from monodromy_formality.groups import exponent_matrix
from monodromy_formality.groups import validate_zmap
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import field_nullspace
from monodromy_formality.lambda_algebra import field_rank

__all__ = [
    'CohomologyBasis',
    'AomotoComplex',
    'cohomology_basis',
    'cup_evaluate',
    'cup_class',
    'aomoto_complex',
    'resonance_membership'
]

LOG = logging.getLogger(__name__)


class CohomologyBasis(object):
    """
    H^1 as the cocycles inside k^n, H^2 as C^2 / im(delta^1).

    ``quotient_rows`` span the annihilator of im(delta^1), so c -> (w . c) for w in
    ``quotient_rows`` identifies C^2 / im(delta^1) with k^h2dim.
    """

    def __init__(self, presentation, field, h1basis, quotient_rows):
        self.presentation = presentation
        self.field = field
        self.h1basis = h1basis
        self.quotient_rows = quotient_rows

    @property
    def h1dim(self):
        return len(self.h1basis)

    @property
    def h2dim(self):
        return len(self.quotient_rows)

    def h2_class(self, cochain):
        return [sum((w * c for w, c in zip(row, cochain)), self.field.zero)
                for row in self.quotient_rows]


class AomotoComplex(object):

    def __init__(self, nu_class, basis, map12, beta0, beta1, beta2complex):
        self.nu_class = nu_class
        self.basis = basis
        self.map12 = map12
        self.beta0 = beta0
        self.beta1 = beta1
        self.beta2complex = beta2complex

    @property
    def field(self):
        return self.basis.field

    @property
    def map01(self):
        """
        H^0 -> H^1, 1 -> nu.
        """
        return list(self.nu_class)

    @property
    def betas(self):
        return (self.beta0, self.beta1, self.beta2complex)

    def summary(self):
        return {
            'beta0': self.beta0,
            'beta1': self.beta1,
            'beta2complex': self.beta2complex,
            'h1dim': self.basis.h1dim,
            'h2dim': self.basis.h2dim
        }

    def __repr__(self):
        return 'AomotoComplex(beta0=%s, beta1=%s, beta2complex=%s, field=%s)' % (
            self.beta0, self.beta1, self.beta2complex, self.field)


def cohomology_basis(presentation, field=RATIONALS):
    """
    :rtype: :class:`CohomologyBasis`
    """
    matrix = exponent_matrix(presentation)
    n = presentation.num_generators
    m = presentation.num_relators

    h1basis = field_nullspace(matrix, n, field)
    columns = [[row[i] for row in matrix] for i in range(n)]
    quotient_rows = field_nullspace(columns, m, field) if m else []

    return CohomologyBasis(presentation, field, h1basis, quotient_rows)


def _check_cocycle(presentation, vector, field, label):
    if len(vector) != presentation.num_generators:
        raise NotACocycleError('Cochain %s has %s values, expected %s.' %
                               (label, len(vector), presentation.num_generators))
    for index, relator in enumerate(presentation.relators):
        value = sum((field.convert(vector[i]) * e for i, e in relator.letters), field.zero)
        if value != field.zero:
            raise NotACocycleError('Cochain %s does not vanish on relator #%s.' %
                                   (label, index))


def cup_evaluate(presentation, left, right, field=RATIONALS):
    """
    Value of left u right on each relator.

    Walking the relator, a letter x contributes left(prefix) * right(x) and a letter x^-1
    contributes -left(prefix x^-1) * right(x).
    """
    left = [field.convert(value) for value in left]
    right = [field.convert(value) for value in right]
    _check_cocycle(presentation, left, field, 'a')
    _check_cocycle(presentation, right, field, 'b')

    values = []
    for relator in presentation.relators:
        total = field.zero
        prefix = field.zero
        for index, sign in relator.expanded():
            if sign > 0:
                total += prefix * right[index]
                prefix += left[index]
            else:
                prefix -= left[index]
                total -= prefix * right[index]
        values.append(total)
    return values


def cup_class(presentation, left, right, field=RATIONALS, basis=None):
    """
    Coordinates of [left u right] in H^2 of the 2-complex.
    """
    basis = basis or cohomology_basis(presentation, field)
    return basis.h2_class(cup_evaluate(presentation, left, right, field))


def _aomoto_from_class(presentation, vector, field):
    basis = cohomology_basis(presentation, field)

    square = cup_class(presentation, vector, vector, field, basis)
    if any(value != field.zero for value in square):
        raise AssertionError('Class squares to a nonzero element of H^2: %s' %
                             ([field.to_json(value) for value in square],))

    columns = [cup_class(presentation, vector, element, field, basis)
               for element in basis.h1basis]
    map12 = [[column[i] for column in columns] for i in range(basis.h2dim)]
    rank12 = field_rank(map12, field) if basis.h2dim and basis.h1dim else 0

    rank01 = 1 if any(value != field.zero for value in vector) else 0

    complex_ = AomotoComplex(nu_class=vector,
                             basis=basis,
                             map12=map12,
                             beta0=1 - rank01,
                             beta1=basis.h1dim - rank12 - rank01,
                             beta2complex=basis.h2dim - rank12)

    LOG.debug('Aomoto complex of %s over %s: %r' % (presentation.format(), field, complex_))
    return complex_


def aomoto_complex(presentation, zmap, field=RATIONALS):
    """
    :rtype: :class:`AomotoComplex`
    """
    zmap = validate_zmap(presentation, zmap)
    return _aomoto_from_class(presentation, [field.convert(value) for value in zmap], field)


def resonance_membership(presentation, vector, field=RATIONALS):
    """
    True when beta1 of the Aomoto complex of the class ``vector`` is positive.
    """
    vector = [field.convert(value) for value in vector]
    if all(value == field.zero for value in vector):
        raise NotACocycleError('Resonance membership is undefined for the zero class.')
    _check_cocycle(presentation, vector, field, 'z')
    return _aomoto_from_class(presentation, vector, field).beta1 > 0
