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

__all__ = [
    'FieldError',
    'LaurentDivisionError',
    'PresentationError',
    'NotAHomomorphism',
    'NotSurjective',
    'NotTorsionError',
    'NotInvertibleError',
    'MapNotSurjectiveError',
    'NotACocycleError',
    'HypothesisError',
    'DocumentParseError',
    'CorpusError',
    'CrosscheckViolation'
]


class FieldError(ValueError):
    pass


class LaurentDivisionError(ZeroDivisionError, ValueError):
    pass


class PresentationError(ValueError):
    pass


class NotAHomomorphism(ValueError):
    """
    ZMap takes a nonzero value on some relator.
    """

    def __init__(self, relator_index, value):
        self.relator_index = relator_index
        self.value = value
        msg = ('NotAHomomorphism: relator %s has exponent-sum value %s under nu' %
               (relator_index, value))
        super(NotAHomomorphism, self).__init__(msg)


class NotSurjective(ValueError):
    """
    gcd of the ZMap values is not 1.
    """

    def __init__(self, gcd):
        self.gcd = gcd
        super(NotSurjective, self).__init__('NotSurjective: gcd=%s' % (gcd))


class NotTorsionError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


class MapNotSurjectiveError(ValueError):
    pass


class NotACocycleError(ValueError):
    pass


class HypothesisError(ValueError):
    pass


class DocumentParseError(ValueError):
    """
    Positioned diagnostic for the line-oriented input format.
    """

    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        self.message = message

        location = ''
        if source:
            location += '%s:' % (source)
        if line is not None:
            location += '%s:' % (line)

        if location:
            full = '%s %s' % (location, message)
        else:
            full = message
        super(DocumentParseError, self).__init__(full)


class CorpusError(ValueError):
    pass


class CrosscheckViolation(AssertionError):
    """
    Raised in strict mode when the two sides of the equivalence disagree.
    """

    def __init__(self, report):
        self.report = report
        super(CrosscheckViolation, self).__init__(report.describe())
