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

import configparser
import json
import logging
from collections import OrderedDict

from cachetools import TTLCache

from monodromy_formality import aomoto
from monodromy_formality import covers
from monodromy_formality import verdict as rules
from monodromy_formality.constructions import compose_to_Z
from monodromy_formality.constructions import random_presentation
from monodromy_formality.exceptions import HypothesisError
from monodromy_formality.groups import validate_zmap
from monodromy_formality.lambda_algebra import RATIONALS
from monodromy_formality.lambda_algebra import FieldSpec

__all__ = [
    'MonodromyAnalyzer',
    'AnalysisResult',
    'load_config',
    'EXIT_OK',
    'EXIT_INVALID',
    'EXIT_INCONCLUSIVE',
    'EXIT_VIOLATION'
]

LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INCONCLUSIVE = 2
EXIT_VIOLATION = 3

CONFIG_SECTION = 'analyzer'
CONFIG_KEY = 'analyzer_kwargs'

DEFAULT_SPACES = {
    'closed-3-manifold': 'M'
}


def load_config(path):
    """
    Read analyzer keyword arguments from the JSON value of ``analyzer_kwargs`` in the
    ``[analyzer]`` section of an INI file.
    """
    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ValueError('Unable to read the config file "%s".' % (path))

    if not parser.has_option(CONFIG_SECTION, CONFIG_KEY):
        return {}

    try:
        kwargs = json.loads(parser.get(CONFIG_SECTION, CONFIG_KEY))
    except ValueError as e:
        raise ValueError('Invalid JSON for %s in "%s": %s' % (CONFIG_KEY, path, e))

    if not isinstance(kwargs, dict):
        raise ValueError('%s in "%s" must be a JSON object.' % (CONFIG_KEY, path))
    return kwargs


class AnalysisResult(object):

    def __init__(self, subject_kind, verdicts, homology=None, complex_=None, crosscheck=None,
                 jordan=None, spectrum=None, field=RATIONALS):
        self.subject_kind = subject_kind
        self.verdicts = list(verdicts)
        self.homology = homology
        self.complex = complex_
        self.crosscheck = crosscheck
        self.jordan = jordan
        self.spectrum = spectrum or []
        self.field = field

    @property
    def conclusion(self):
        return rules.combine(self.verdicts)

    @property
    def exit_code(self):
        if self.crosscheck is not None and not self.crosscheck.ok:
            return EXIT_VIOLATION
        if self.conclusion == rules.INCONCLUSIVE:
            return EXIT_INCONCLUSIVE
        return EXIT_OK

    def to_dict(self):
        result = OrderedDict()
        result['conclusion'] = self.conclusion
        result['field'] = self.field.name
        result['verdicts'] = [item.to_dict() for item in self.verdicts]
        if self.homology is not None:
            result['module'] = self.homology.summary()
        if self.complex is not None:
            result['aomoto'] = self.complex.summary()
        if self.jordan is not None:
            result['jordan'] = self.jordan.to_dict()
        if self.spectrum:
            result['spectrum'] = [report.to_dict() for report in self.spectrum]
        if self.crosscheck is not None:
            result['crosscheck'] = self.crosscheck.to_dict()
        return result

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def describe(self):
        lines = []
        if self.homology is not None:
            h1 = self.homology.h1
            factors = ', '.join(str(factor) for factor in h1.invariant_factors) or '-'
            lines.append('H1 of the cover over %s: free rank %s, invariant factors %s' %
                         (self.field, h1.free_rank, factors))
            lines.append('Jordan blocks at t = 1: %s' %
                         (list(h1.t_minus_one_blocks) if h1.is_torsion else 'n/a (infinite b1)'))
        if self.complex is not None:
            lines.append('Aomoto-Betti numbers: beta0 = %s, beta1 = %s (beta2 of the 2-complex '
                         '= %s)' % self.complex.betas)
        if self.jordan is not None:
            lines.append('Jordan blocks at %s: %s' % (self.jordan.eigenvalue,
                                                      list(self.jordan.block_sizes)))
        for report in self.spectrum:
            lines.append('  eigenvalue %s: blocks %s' % (report.eigenvalue,
                                                         list(report.block_sizes)))
        for item in self.verdicts:
            lines.append(item.describe())
        if self.crosscheck is not None:
            lines.append(self.crosscheck.describe())
        lines.append('Conclusion: %s' % (self.conclusion))
        return '\n'.join(lines)


class MonodromyAnalyzer(object):
    """
    Runs the cover, Aomoto and rule pipelines with caching of the expensive intermediate
    results.
    """

    def __init__(self, field='Q', crosscheck_fields='Q,F2,F3', verify=True, cache_results=True,
                 cache_ttl=600, cache_max_size=256, debug=False, random_max_attempts=200):
        try:
            self._field = FieldSpec.parse(field)
        except ValueError:
            raise ValueError('Invalid value "%s" for field option. Valid values are: Q, F<p>, '
                             'GF(<p>).' % (field))

        if isinstance(crosscheck_fields, str):
            crosscheck_fields = [part for part in crosscheck_fields.replace(',', ' ').split()]
        if not crosscheck_fields:
            raise ValueError('One or more cross-check fields must be specified.')
        try:
            self._crosscheck_fields = [FieldSpec.parse(item) for item in crosscheck_fields]
        except ValueError as e:
            raise ValueError('Invalid value for crosscheck_fields option: %s' % (e))

        for name, value in (('cache_ttl', cache_ttl), ('cache_max_size', cache_max_size),
                            ('random_max_attempts', random_max_attempts)):
            if isinstance(value, bool) or int(value) <= 0:
                raise ValueError('Invalid value "%s" for %s option. It must be a positive '
                                 'integer.' % (value, name))

        self._verify = bool(verify)
        self._debug = bool(debug)
        self._random_max_attempts = int(random_max_attempts)

        self._cache_results = bool(cache_results)
        self._cache_ttl = int(cache_ttl)
        self._cache_max_size = int(cache_max_size)

        if self._cache_results:
            self._homology_cache = TTLCache(maxsize=self._cache_max_size, ttl=self._cache_ttl)
            self._aomoto_cache = TTLCache(maxsize=self._cache_max_size, ttl=self._cache_ttl)
        else:
            self._homology_cache = None
            self._aomoto_cache = None

        if self._debug:
            logging.getLogger('monodromy_formality').setLevel(logging.DEBUG)

    @property
    def field(self):
        return self._field

    @property
    def crosscheck_fields(self):
        return list(self._crosscheck_fields)

    def cover_homology(self, presentation, zmap, field=None):
        field = field or self._field
        key = self._cache_key(presentation, zmap, field)

        result = self._get_from_cache('_homology_cache', key, 'cover homology')
        if result is None:
            result = covers.cover_homology(presentation, zmap, field)
            if self._verify:
                result.h1.smith.verify()
            self._set_in_cache('_homology_cache', key, result, 'cover homology')
        return result

    def aomoto_complex(self, presentation, zmap, field=None):
        field = field or self._field
        key = self._cache_key(presentation, zmap, field)

        result = self._get_from_cache('_aomoto_cache', key, 'Aomoto complex')
        if result is None:
            result = aomoto.aomoto_complex(presentation, zmap, field)
            self._set_in_cache('_aomoto_cache', key, result, 'Aomoto complex')
        return result

    def analyze_document(self, document):
        """
        :rtype: :class:`AnalysisResult`
        """
        document.validate()
        field = document.field if document.has('field') else self._field

        if document.has_presentation:
            presentation = document.presentation()
            eta = target = None
            if document.has('eta'):
                eta = document.lambda_matrix('eta', RATIONALS)
                target = document.lambda_matrix('h1N', RATIONALS)
            return self.analyze_presentation(presentation, document.zmap(presentation),
                                             scenario=document.scenario,
                                             attestations=document.attestations,
                                             space=document.space, eta=eta, target=target,
                                             field=field)

        return self.analyze_matrix(document.matrix(), document.eigenvalue,
                                   scenario=document.scenario,
                                   attestations=document.attestations,
                                   flags=document.flags, b1M=document.b1M,
                                   space=document.space)

    def analyze_presentation(self, presentation, zmap, scenario=None, attestations=None,
                             space=None, eta=None, target=None, field=None):
        field = field or self._field
        zmap = validate_zmap(presentation, zmap)

        homology = self.cover_homology(presentation, zmap, field)
        complex_ = self.aomoto_complex(presentation, zmap, field)
        rational = self.cover_homology(presentation, zmap, RATIONALS)
        rational_complex = self.aomoto_complex(presentation, zmap, RATIONALS)

        if scenario == 'composite':
            scenario_record = compose_to_Z(presentation, zmap, attestations, eta=eta,
                                           target=target)
            verdict = rules.rule_R2_composite(scenario_record, rational, rational_complex)
        elif scenario in (None, 'mapping-torus'):
            verdict = rules.rule_R1_special(presentation, zmap, rational, rational_complex)
        else:
            raise HypothesisError('Scenario "%s" needs the matrix form.' % (scenario))

        verdicts = [rules.escalate(verdict, space)]
        crosscheck = rules.crosscheck_presentation(presentation, zmap, self._crosscheck_fields)

        result = AnalysisResult('presentation', verdicts, homology=homology,
                                complex_=complex_, crosscheck=crosscheck, field=field)
        LOG.info('Analysis of %s: %s' % (presentation.format(), result.conclusion))
        return result

    def analyze_matrix(self, matrix, eigenvalue=1, scenario=None, attestations=None,
                       flags=None, b1M=None, space=None):
        jordan = covers.matrix_jordan_at(matrix, eigenvalue)
        at_one = jordan if jordan.eigenvalue == 1 else covers.matrix_jordan_at(matrix, 1)
        spectrum = covers.matrix_rational_spectrum(matrix)
        space = space or DEFAULT_SPACES.get(scenario)

        verdicts = []
        if scenario == 'composite':
            raise HypothesisError('The composite scenario needs the presentation form.')

        if scenario in rules.R3_SCENARIOS:
            verdicts.append(rules.rule_R3_bundle(at_one, scenario, attestations))
        if scenario == 'closed-3-manifold':
            verdicts.append(rules.rule_R4_R5_three_manifold(at_one, flags, b1M=b1M,
                                                           matrix_size=len(matrix)))

        if not verdicts:
            verdicts.append(rules.Verdict(rules.INCONCLUSIVE, notes=['No scenario given; no '
                                                                     'rule applies.']))

        verdicts = [rules.escalate(item, space) for item in verdicts]
        result = AnalysisResult('matrix', verdicts, jordan=jordan, spectrum=spectrum)
        LOG.info('Analysis of %sx%s monodromy: %s' % (len(matrix), len(matrix),
                                                     result.conclusion))
        return result

    def crosscheck(self, presentation, zmap, strict=False):
        return rules.crosscheck_presentation(presentation, zmap, self._crosscheck_fields, strict)

    def crosscheck_corpus(self, entries, strict=False):
        reports = []
        for entry in entries:
            if entry.is_matrix:
                continue
            reports.append(self.crosscheck(entry.presentation(), entry.zmap(), strict))
        return reports

    def crosscheck_random(self, count, seed, strict=False):
        return rules.crosscheck_random(count, seed, self._crosscheck_fields,
                                       self._random_max_attempts, strict)

    def random_presentation(self, rng):
        return random_presentation(rng, max_attempts=self._random_max_attempts)

    def _cache_key(self, presentation, zmap, field):
        return (presentation.key(), tuple(zmap), field.characteristic)

    def _get_from_cache(self, cache_name, key, label):
        """
        Get value from a result cache (if caching is enabled).
        """
        if not self._cache_results:
            return None

        LOG.debug('Getting %s for %s from cache' % (label, key[0][0]))
        result = getattr(self, cache_name).get(key, None)

        if result is None:
            LOG.debug('%s cache for %s is empty' % (label, key[0][0]))
        else:
            LOG.debug('Found %s cache for %s' % (label, key[0][0]))

        return result

    def _set_in_cache(self, cache_name, key, value, label):
        """
        Store value in a result cache (if caching is enabled).
        """
        if not self._cache_results:
            return None

        LOG.debug('Storing %s for %s in cache' % (label, key[0][0]))
        getattr(self, cache_name)[key] = value
