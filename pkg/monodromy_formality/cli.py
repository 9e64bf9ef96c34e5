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
monodromy-formality command line.

Exit codes: 0 success, 1 parse or validation error, 2 no rule applies (INCONCLUSIVE),
3 cross-check violation.
"""

from __future__ import absolute_import
from __future__ import print_function

import argparse
import io
import json
import logging
import sys

from monodromy_formality import __version__
from monodromy_formality.analyzer import EXIT_INVALID
from monodromy_formality.analyzer import EXIT_OK
from monodromy_formality.analyzer import EXIT_VIOLATION
from monodromy_formality.analyzer import MonodromyAnalyzer
from monodromy_formality.analyzer import load_config
from monodromy_formality.constructions import Automorphism
from monodromy_formality.constructions import load_corpus
from monodromy_formality.constructions import mapping_torus_presentation
from monodromy_formality.covers import matrix_jordan_at
from monodromy_formality.covers import matrix_rational_spectrum
from monodromy_formality.document import parse_document
from monodromy_formality.document import render_presentation
from monodromy_formality.exceptions import CrosscheckViolation
from monodromy_formality.exceptions import DocumentParseError

__all__ = [
    'build_parser',
    'main',
    'cmd_analyze',
    'cmd_mapping_torus',
    'cmd_jordan',
    'cmd_crosscheck'
]

LOG = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def _read(path):
    if path == '-':
        return sys.stdin.read(), '<stdin>'
    with io.open(path, 'r', encoding='utf-8') as fp:
        return fp.read(), path


def _load_document(path):
    text, source = _read(path)
    return parse_document(text, source=source)


def _emit(data, as_json, text=None):
    if as_json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_analyze(args, analyzer):
    document = _load_document(args.file)
    result = analyzer.analyze_document(document)
    _emit(result.to_dict(), args.json, result.describe())
    return result.exit_code


def cmd_mapping_torus(args, analyzer):
    base_document = _load_document(args.base)
    base = base_document.presentation()

    aut_document = _load_document(args.aut)
    if aut_document.has_matrix:
        automorphism = Automorphism.from_matrix(base, aut_document.integer_matrix())
    elif aut_document.has('aut'):
        automorphism = Automorphism.parse(base, aut_document.automorphism_text)
    else:
        raise DocumentParseError('Automorphism file needs "aut:" or "matrix:".',
                                 source=args.aut)

    presentation, zmap = mapping_torus_presentation(base, automorphism)
    comment = 'mapping torus of %s by %s' % (base.format(), automorphism.format())
    print(render_presentation(presentation, zmap, field=base_document.field,
                              scenario='mapping-torus', comment=comment), end='')
    return EXIT_OK


def cmd_jordan(args, analyzer):
    document = _load_document(args.file)
    if not document.has_matrix:
        raise DocumentParseError('The jordan command needs a "matrix:" line.',
                                 source=document.source)

    matrix = document.matrix()
    report = matrix_jordan_at(matrix, document.eigenvalue)
    data = {
        'jordan': report.to_dict(),
        'spectrum': [item.to_dict() for item in matrix_rational_spectrum(matrix)]
    }
    print(json.dumps(data, sort_keys=True, indent=2))
    return EXIT_OK


def cmd_crosscheck(args, analyzer):
    reports = []
    if args.corpus:
        reports.extend(analyzer.crosscheck_corpus(load_corpus(args.corpus_file),
                                                  strict=args.strict))
    if args.random is not None:
        print('seed: %s' % (args.seed))
        reports.extend(analyzer.crosscheck_random(args.random, args.seed, strict=args.strict))

    failed = [report for report in reports if not report.ok]
    summary = {
        'cases': len(reports),
        'violations': len(failed),
        'seed': args.seed if args.random is not None else None,
        'failures': [report.to_dict() for report in failed]
    }
    text = '\n'.join([report.describe() for report in failed] +
                     ['%s cases, %s violations' % (len(reports), len(failed))])
    _emit(summary, args.json, text)
    return EXIT_VIOLATION if failed else EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='INI file with an [analyzer] analyzer_kwargs entry')
    common.add_argument('--field', help='coefficient field: Q, F<p> or GF(<p>)')
    common.add_argument('--debug', action='store_true', help='log every pipeline step')
    common.add_argument('--json', action='store_true', help='emit JSON')

    parser = argparse.ArgumentParser(prog='monodromy-formality',
                                     description='Monodromy obstructions to 1-formality.')
    parser.add_argument('--version', action='version', version=__version__)
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    analyze = subparsers.add_parser('analyze', parents=[common],
                                    help='run every applicable rule on an input document')
    analyze.add_argument('file', help='input document, "-" for stdin')
    analyze.set_defaults(handler=cmd_analyze)

    torus = subparsers.add_parser('mapping-torus', parents=[common],
                                  help='print the mapping torus presentation document')
    torus.add_argument('base', help='document with the base presentation')
    torus.add_argument('aut', help='document with "aut:" images or an integer "matrix:"')
    torus.set_defaults(handler=cmd_mapping_torus)

    jordan = subparsers.add_parser('jordan', parents=[common],
                                   help='Jordan blocks of a rational matrix')
    jordan.add_argument('file', help='document with "matrix:" and optional "lambda:"')
    jordan.set_defaults(handler=cmd_jordan)

    crosscheck = subparsers.add_parser('crosscheck', parents=[common],
                                       help='check beta1 against the Jordan structure')
    crosscheck.add_argument('--random', type=int, metavar='N', help='random presentations')
    crosscheck.add_argument('--seed', type=int, default=0)
    crosscheck.add_argument('--corpus', action='store_true', help='check the corpus')
    crosscheck.add_argument('--corpus-file', default=None, help='alternative corpus file')
    crosscheck.add_argument('--strict', action='store_true',
                            help='stop at the first violation')
    crosscheck.set_defaults(handler=cmd_crosscheck)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING,
                        format=LOG_FORMAT)

    if args.command == 'crosscheck' and not args.corpus and args.random is None:
        parser.error('crosscheck needs --corpus or --random N')

    try:
        kwargs = load_config(args.config) if args.config else {}
        if args.field:
            kwargs['field'] = args.field
        if args.debug:
            kwargs['debug'] = True
        analyzer = MonodromyAnalyzer(**kwargs)
        return args.handler(args, analyzer)
    except CrosscheckViolation as e:
        print(str(e), file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, TypeError) as e:
        LOG.debug('Command %s failed' % (args.command), exc_info=True)
        print('error: %s' % (e), file=sys.stderr)
        return EXIT_INVALID
    except (IOError, OSError) as e:
        print('error: %s' % (e), file=sys.stderr)
        return EXIT_INVALID


if __name__ == '__main__':
    sys.exit(main())
