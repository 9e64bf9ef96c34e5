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
Obstruction rules applied to computed or supplied monodromy data, and the cross-check between
the Aomoto-Betti number beta1 and the Jordan structure of the cover.

A NO_OBSTRUCTION verdict means that none of the rules below fires. Formality is never
certified.
"""

from __future__ import absolute_import

import json
import logging
import random
from collections import OrderedDict

from monodromy_formality.aomoto import aomoto_complex
from monodromy_formality.constructions import random_presentation
from monodromy_formality.covers import cover_homology
from monodromy_formality.covers import monodromy_blocks_at_1
from monodromy_formality.exceptions import CrosscheckViolation
from monodromy_formality.exceptions import HypothesisError
from monodromy_formality.exceptions import MapNotSurjectiveError
from monodromy_formality.exceptions import NotTorsionError
from monodromy_formality.groups import betti_1
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import FieldSpec
from monodromy_formality.lambda_algebra import check_primary_surjection

__all__ = [
    'NOT_1_FORMAL',
    'NOT_FORMAL',
    'NO_OBSTRUCTION',
    'INCONCLUSIVE',
    'RULES',
    'Verdict',
    'CrosscheckReport',
    'rule_R1_special',
    'rule_R2_composite',
    'rule_R3_bundle',
    'rule_R4_R5_three_manifold',
    'crosscheck_presentation',
    'crosscheck_random',
    'escalate',
    'combine'
]

LOG = logging.getLogger(__name__)

NOT_1_FORMAL = 'NOT_1_FORMAL'
NOT_FORMAL = 'NOT_FORMAL'
NO_OBSTRUCTION = 'NO_OBSTRUCTION'
INCONCLUSIVE = 'INCONCLUSIVE'

CONCLUSIONS = [NOT_FORMAL, NOT_1_FORMAL, NO_OBSTRUCTION, INCONCLUSIVE]

RULES = OrderedDict([
    ('R1', ('extension of Z by a group with finite b1, special case',
            'If G is finitely presented and 1-formal, and the kernel N of G -> Z has '
            'b1(N) finite, then the monodromy on H1(N) has only 1x1 Jordan blocks at '
            'eigenvalue 1.')),
    ('R2', ('composite of two extensions',
            'If pi is finitely presented and 1-formal, with b1(N) and b1(K) finite, then the '
            'Jordan blocks of the monodromy of N at eigenvalue 1 all have size 1; b1 of the '
            'intermediate kernel is finite as well.')),
    ('R3', ('fibrations over mapping tori and over the circle',
            'A Jordan block of size greater than 1 at eigenvalue 1 of the monodromy on H1 '
            'of the fiber rules out formality of a bundle over a mapping torus with closed '
            'connected fiber, and 1-formality of pi1 of a fibration over the circle whose '
            'fiber is connected with finite 2-skeleton.')),
    ('R4', ('closed orientable 3-manifolds fibering over the circle',
            'If such an M has pi1(M) 1-formal, its monodromy has only 1x1 Jordan blocks at '
            'eigenvalue 1 and an even number of them; b1(M) = m + 1 with m the number of '
            'those blocks.')),
    ('R5', ('even first Betti number of closed orientable fibered 3-manifolds',
            'If a closed orientable 3-manifold M fibers over the circle and b1(M) is even, '
            'then pi1(M) is not 1-formal.')),
    ('E', ('fundamental groups of formal spaces',
           'The fundamental group of a formal space is 1-formal.'))
])

FIBRATION_ATTESTATIONS = ['connected_fiber', 'finite_2_skeleton']

# closed 3-manifolds fibering over the circle go through R4/R5 instead
R3_SCENARIOS = OrderedDict([
    ('mapping-torus', ['closed_base', 'closed_fiber']),
    ('fibered-link', FIBRATION_ATTESTATIONS),
    ('base-localization', FIBRATION_ATTESTATIONS),
    ('milnor-fibration', FIBRATION_ATTESTATIONS),
    ('fibration', FIBRATION_ATTESTATIONS)
])

MILNOR_COMMENTARY = ('Link complements of plane curve singularities are formal, so a Jordan '
                     'block of size greater than 1 at eigenvalue 1 indicates a wrong input '
                     'matrix.')

THREE_MANIFOLD_FLAGS = ['closed', 'orientable', 'fibersOverCircle']


class Verdict(object):
    """
    Certificate naming the rules applied, the hypotheses they consumed and the evidence.
    """

    def __init__(self, conclusion, subject=None, rules=(), hypotheses=None, evidence=None,
                 consequences=(), notes=()):
        if conclusion not in CONCLUSIONS:
            raise ValueError('Invalid value "%s" for conclusion. Valid values are: %s' %
                             (conclusion, ', '.join(CONCLUSIONS)))

        self.conclusion = conclusion
        self.subject = subject
        self.rules = tuple(rules)
        self.hypotheses = OrderedDict(hypotheses or {})
        self.evidence = OrderedDict(evidence or {})
        self.consequences = tuple(consequences)
        self.notes = tuple(notes)

    @property
    def is_obstruction(self):
        return self.conclusion in (NOT_1_FORMAL, NOT_FORMAL)

    def to_dict(self):
        return {
            'conclusion': self.conclusion,
            'subject': self.subject,
            'rules': [{'id': rule_id, 'citation': RULES[rule_id][0], 'quote': RULES[rule_id][1]}
                      for rule_id in self.rules],
            'hypotheses': dict(self.hypotheses),
            'evidence': dict(self.evidence),
            'consequences': [dict(consequence) for consequence in self.consequences],
            'notes': list(self.notes)
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def describe(self):
        lines = ['%s (%s)' % (self.conclusion, self.subject or '-')]
        lines.extend('  rule %s: %s' % (rule_id, RULES[rule_id][0]) for rule_id in self.rules)
        lines.extend('  %s = %s' % (key, value) for key, value in self.hypotheses.items())
        lines.extend('  then %s (%s)' % (c['conclusion'], c['subject'])
                     for c in self.consequences)
        lines.extend('  note: %s' % (note) for note in self.notes)
        return '\n'.join(lines)

    def __repr__(self):
        return 'Verdict(%s, subject=%s, rules=%s)' % (self.conclusion, self.subject,
                                                       list(self.rules))


def _module_evidence(homology, complex_=None):
    evidence = OrderedDict()
    evidence['blocks'] = list(homology.h1.t_minus_one_blocks)
    evidence['invariantFactors'] = [factor.json_coeffs()
                                    for factor in homology.h1.invariant_factors]
    if complex_ is not None:
        evidence['beta'] = [complex_.beta0, complex_.beta1]
    return evidence


def rule_R1_special(presentation, zmap, homology=None, complex_=None, subject='G'):
    """
    Special case: G finitely presented (given by a presentation), nu: G -> Z with kernel N.

    :rtype: :class:`Verdict`
    """
    homology = homology or cover_homology(presentation, zmap, RATIONALS)

    hypotheses = OrderedDict()
    hypotheses['finitelyPresented'] = 'by presentation'
    hypotheses['b1N'] = homology.b1 if homology.is_b1_finite else 'infinite'
    hypotheses['b1G'] = betti_1(presentation, RATIONALS)
    evidence = _module_evidence(homology, complex_)

    report = monodromy_blocks_at_1(homology)
    if not report.b1_finite:
        return Verdict(INCONCLUSIVE, subject, ['R1'], hypotheses, evidence,
                       notes=['b1(N) is infinite; the rule does not apply.'])

    hypotheses['maxBlock'] = report.max_block
    if report.max_block >= 2:
        verdict = Verdict(NOT_1_FORMAL, subject, ['R1'], hypotheses, evidence)
    else:
        verdict = Verdict(NO_OBSTRUCTION, subject, ['R1'], hypotheses, evidence)

    LOG.debug('R1 on %s: %s' % (presentation.format(), verdict.conclusion))
    return verdict


def rule_R2_composite(scenario, homology=None, complex_=None, subject='pi'):
    """
    Composite scenario pi -> G -> Z worked through mu = nu o chi directly.

    :rtype: :class:`Verdict`
    """
    hypotheses = OrderedDict()
    for name, justification in scenario.attestations.items():
        hypotheses['attested:%s' % (name)] = justification or True

    missing = scenario.missing(['b1N_finite', 'b1K_finite'])
    if missing:
        hypotheses['missingAttestations'] = missing
        return Verdict(INCONCLUSIVE, subject, ['R2'], hypotheses,
                       notes=['Missing attestations: %s.' % (', '.join(missing))])

    homology = homology or cover_homology(scenario.presentation, scenario.zmap, RATIONALS)
    evidence = _module_evidence(homology, complex_)

    if not homology.is_b1_finite:
        hypotheses['b1Gamma'] = 'infinite'
        return Verdict(INCONCLUSIVE, subject, ['R2'], hypotheses, evidence,
                       notes=['b1(Gamma) is infinite, which contradicts the attested '
                              'finiteness of b1(N) and b1(K).'])

    hypotheses['b1Gamma'] = homology.b1
    hypotheses['b1GammaFinite'] = 'derived'

    if scenario.eta is not None:
        try:
            report = check_primary_surjection(scenario.eta, homology.h1, scenario.target)
            hypotheses['primarySurjection'] = report.to_dict()
        except (MapNotSurjectiveError, NotTorsionError, ValueError) as e:
            LOG.exception('Primary part propagation check failed.')
            hypotheses['primarySurjection'] = 'failed: %s' % (e)

    hypotheses['maxBlock'] = homology.h1.max_block
    if homology.h1.max_block >= 2:
        return Verdict(NOT_1_FORMAL, subject, ['R2'], hypotheses, evidence)
    return Verdict(NO_OBSTRUCTION, subject, ['R2'], hypotheses, evidence)


def rule_R3_bundle(report, scenario, attestations=None, subject=None):
    """
    :param report: Jordan report of the monodromy at eigenvalue 1.
    :param scenario: one of R3_SCENARIOS.

    :rtype: :class:`Verdict`
    """
    if scenario not in R3_SCENARIOS:
        raise ValueError('Invalid value "%s" for scenario. Valid values are: %s' %
                         (scenario, ', '.join(R3_SCENARIOS)))
    if report.eigenvalue != 1:
        raise HypothesisError('The bundle rule needs the Jordan report at eigenvalue 1, got '
                              '%s.' % (report.eigenvalue))

    attestations = OrderedDict(attestations or {})
    hypotheses = OrderedDict()
    hypotheses['scenario'] = scenario
    for name, justification in attestations.items():
        hypotheses['attested:%s' % (name)] = justification or True

    evidence = OrderedDict([('blocks', list(report.block_sizes))])
    notes = []
    if scenario == 'milnor-fibration':
        notes.append(MILNOR_COMMENTARY)

    missing = [name for name in R3_SCENARIOS[scenario] if name not in attestations]
    if missing:
        hypotheses['missingAttestations'] = missing
        return Verdict(INCONCLUSIVE, subject, ['R3'], hypotheses, evidence,
                       notes=notes + ['Missing attestations: %s.' % (', '.join(missing))])

    hypotheses['maxBlock'] = report.max_block
    if report.max_block < 2:
        return Verdict(NO_OBSTRUCTION, subject, ['R3'], hypotheses, evidence, notes=notes)

    if scenario == 'mapping-torus':
        return Verdict(NOT_FORMAL, subject or 'M', ['R3'], hypotheses, evidence, notes=notes)
    return Verdict(NOT_1_FORMAL, subject or 'pi1(X)', ['R3'], hypotheses, evidence,
                   notes=notes)


def rule_R4_R5_three_manifold(report, flags, b1M=None, matrix_size=None, subject='pi1(M)'):
    """
    Closed orientable 3-manifold M fibering over the circle, monodromy at eigenvalue 1.

    :param matrix_size: size of the full monodromy matrix when known; the fiber is a closed
                        orientable surface, so an odd size means the input is inconsistent.

    :rtype: :class:`Verdict`
    """
    flags = set(flags or ())
    hypotheses = OrderedDict((flag, flag in flags) for flag in THREE_MANIFOLD_FLAGS)
    evidence = OrderedDict([('blocks', list(report.block_sizes))])

    missing = [flag for flag in THREE_MANIFOLD_FLAGS if flag not in flags]
    if missing:
        return Verdict(INCONCLUSIVE, subject, ['R4'], hypotheses, evidence,
                       notes=['Flags not set: %s.' % (', '.join(missing))])

    if matrix_size is not None:
        hypotheses['fiberRank'] = matrix_size
        if matrix_size % 2:
            return Verdict(INCONCLUSIVE, subject, ['R4'], hypotheses, evidence,
                           notes=['Monodromy of a closed orientable surface acts on a space '
                                  'of even dimension, got %s.' % (matrix_size)])

    if report.max_block >= 2:
        hypotheses['maxBlock'] = report.max_block
        return Verdict(NOT_1_FORMAL, subject, ['R4'], hypotheses, evidence)

    size_one = report.block_sizes.count(1)
    derived = size_one + 1
    hypotheses['m'] = size_one
    hypotheses['b1M'] = derived

    if b1M is not None and int(b1M) != derived:
        raise HypothesisError('Supplied b1(M) = %s but the monodromy gives b1(M) = m + 1 = '
                              '%s.' % (b1M, derived))

    if derived % 2 == 0:
        return Verdict(NOT_1_FORMAL, subject, ['R4', 'R5'], hypotheses, evidence)
    return Verdict(NO_OBSTRUCTION, subject, ['R4', 'R5'], hypotheses, evidence)


def escalate(verdict, space=None):
    """
    NOT_1_FORMAL for pi1 of a named space implies the space is not formal.

    :rtype: :class:`Verdict`
    """
    if verdict.conclusion != NOT_1_FORMAL or not space:
        return verdict

    consequence = OrderedDict([('conclusion', NOT_FORMAL), ('subject', space), ('rule', 'E')])
    return Verdict(verdict.conclusion, verdict.subject, list(verdict.rules) + ['E'],
                   verdict.hypotheses, verdict.evidence,
                   list(verdict.consequences) + [consequence], verdict.notes)


def combine(verdicts):
    """
    Overall conclusion: any obstruction wins, then NO_OBSTRUCTION, else INCONCLUSIVE.
    """
    conclusions = [verdict.conclusion for verdict in verdicts]
    for conclusion in CONCLUSIONS:
        if conclusion in conclusions:
            return conclusion
    return INCONCLUSIVE


class CrosscheckReport(object):
    """
    Per field: beta1 = 0 if and only if (H1 of the cover is torsion and every Jordan block at
    eigenvalue 1 has size 1).
    """

    def __init__(self, presentation, zmap, rows):
        self.presentation = presentation
        self.zmap = zmap
        self.rows = rows

    @property
    def violations(self):
        return [row for row in self.rows if row['violations']]

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            'presentation': self.presentation.format(),
            'nu': list(self.zmap),
            'ok': self.ok,
            'fields': self.rows
        }

    def describe(self):
        lines = ['Cross-check of %s, nu = %s: %s' % (self.presentation.format(),
                                                    list(self.zmap),
                                                    'ok' if self.ok else 'VIOLATION')]
        for row in self.rows:
            lines.append('  %(field)s: beta1=%(beta1)s torsion=%(torsion)s '
                         'maxBlock=%(maxBlock)s b1G=%(b1G)s' % row)
            lines.extend('    violation: %s' % (message) for message in row['violations'])
        return '\n'.join(lines)


def crosscheck_presentation(presentation, zmap, fields=None, strict=False):
    """
    :rtype: :class:`CrosscheckReport`
    """
    fields = [FieldSpec.parse(field) for field in (fields or ['Q', 'F2', 'F3'])]
    rows = []

    for field in fields:
        homology = cover_homology(presentation, zmap, field)
        complex_ = aomoto_complex(presentation, zmap, field)
        b1G = betti_1(presentation, field)

        torsion = homology.is_b1_finite
        max_block = homology.h1.max_block if torsion else None
        rhs = torsion and max_block <= 1
        lhs = complex_.beta1 == 0

        violations = []
        if lhs != rhs:
            violations.append('beta1 = %s but torsion=%s, maxBlock=%s' %
                              (complex_.beta1, torsion, max_block))
        if torsion and b1G != 1 + len(homology.h1.t_minus_one_blocks):
            violations.append('b1(G) = %s but 1 + #blocks = %s' %
                              (b1G, 1 + len(homology.h1.t_minus_one_blocks)))
        low_betti = field.characteristic == 0 and b1G <= 1
        if low_betti and torsion and max_block >= 2:
            violations.append('b1(G) = %s forces 1-formality yet a block of size %s occurs' %
                              (b1G, max_block))

        rows.append(OrderedDict([
            ('field', field.name),
            ('beta1', complex_.beta1),
            ('torsion', torsion),
            ('maxBlock', max_block),
            ('b1G', b1G),
            ('lowBetti', low_betti),
            ('violations', violations)
        ]))

    report = CrosscheckReport(presentation, zmap, rows)
    if not report.ok:
        LOG.error(report.describe())
        if strict:
            raise CrosscheckViolation(report)
    return report


def crosscheck_random(count, seed, fields=None, max_attempts=200, strict=False):
    """
    Cross-check ``count`` seeded random presentations.

    :rtype: ``list`` of :class:`CrosscheckReport`
    """
    rng = random.Random(seed)
    reports = []
    for _ in range(count):
        presentation, zmap = random_presentation(rng, max_attempts=max_attempts)
        reports.append(crosscheck_presentation(presentation, zmap, fields, strict=strict))
    return reports
