#!/usr/bin/env python
"""
Command line interface.

Every command works on one action, read from an action file
(``--action``) or built from a builtin specification (``--builtin``),
and writes a certificate (or a plain text summary) to standard output
or to the file given by ``--out``.

Exit codes: 0 established with a verified certificate, 3 refuted with a
verified counter-certificate, 4 inconclusive, 1 usage error, 2 input
error.

"""

import argparse
import logging
import sys

from . import __version__
from .space import parse_clopen, communicating_classes, SftError
from .action import (invariant_clopen_saturation, ActionError)
from .comparison import (SearchBounds, SubequivalenceScheme, ParadoxicalWitness,
                         Refuted, NotFound, NotCovered, BadBounds, ComparisonError,
                         search_subequivalence, check_paradoxical, check_weak_paradoxical,
                         check_n_filling, check_strong_boundary,
                         check_dynamical_comparison, find_open_tower)
from .measures import (InvariantContent, invariant_probability_measure,
                       invariant_content_normalized, minimal_depth, MeasureError)
from .typesemigroup import (OrderWitness, TypeElement, indicator, parse_type,
                            search_order, check_purely_infinite_fragment,
                            check_almost_unperforation_instances)
from .crossed import (scaling_element_from_scheme, isometry_from_scaling,
                      CrossedAlgebraError)
from .certificates import (SubequivalenceCertificate, ParadoxicalCertificate,
                           TowerCertificate, OrderCertificate, MeasureCertificate,
                           InfeasibilityCertificateFile, ScalingCertificate,
                           IsometryCertificate, CuntzCertificate, CuntzPairCertificate,
                           ReportCertificate, CertificateError, report_certificate)
from .io import (load_action, parse_builtin_spec, format_certificate,
                 verify_certificate_file, ActionFileError)

LOGGER = logging.getLogger(__name__)

__all__ = ['main', 'build_parser', 'run_command']

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_REFUTED = 3
EXIT_INCONCLUSIVE = 4

REPORT_EXIT = {'pass': EXIT_OK, 'fail': EXIT_REFUTED, 'inconclusive': EXIT_INCONCLUSIVE}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def _global_options():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--action', metavar='FILE', help='action definition file')
    parent.add_argument('--builtin', metavar='SPEC',
                        help='builtin action, e.g. "f2_boundary" or "free_boundary(3)"')
    parent.add_argument('--depth', type=int, default=3, help='depth bound (default 3)')
    parent.add_argument('--word-length', type=int, default=4,
                        help='maximal group word length (default 4)')
    parent.add_argument('--node-budget', type=int, default=10 ** 6,
                        help='backtracking node budget (default 1000000)')
    parent.add_argument('--out', metavar='FILE', help='write the output to FILE')
    parent.add_argument('-v', '--verbose', action='store_true', help='log progress')
    parent.add_argument('-q', '--quiet', action='store_true', help='only log errors')
    return parent


def build_parser():
    parent = _global_options()
    parser = _Parser(prog='cantordyn', description='Witness search and verification '
                     'for group actions on Cantor spaces')
    parser.add_argument('--version', action='version', version=__version__)
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)

    def add(name, help):
        return sub.add_parser(name, parents=[parent], help=help)

    p = add('check-subequiv', 'search a scheme moving one clopen set into another')
    p.add_argument('--from', dest='source', required=True)
    p.add_argument('--to', dest='target', required=True)

    p = add('check-paradoxical', 'search a paradoxical witness for a clopen set')
    p.add_argument('--set', dest='set', required=True)

    p = add('check-weak-paradoxical', 'build a scheme through a cover by translates')
    p.add_argument('--from', dest='source', required=True)
    p.add_argument('--to', dest='target', required=True)

    p = add('check-nfilling', 'check n-filling on the cylinders of a depth')
    p.add_argument('--n', type=int, required=True)

    add('check-strong-boundary', 'check the strong boundary property at a depth')
    add('check-dynamical-comparison', 'check dynamical comparison at a depth')

    p = add('find-tower', 'search an open tower')
    p.add_argument('--words', required=True,
                   help='group words separated by ";", e.g. "e; ga"')
    p.add_argument('--base', required=True)

    add('find-invariant-measure', 'solve for an invariant probability content')

    p = add('find-normalized-content', 'solve for an invariant content with mu(set) = 1')
    p.add_argument('--set', dest='set', required=True)

    p = add('semigroup-order', 'search a witness for [left] <= [right]')
    p.add_argument('--left', required=True, help='e.g. "2*[a] + [b]"')
    p.add_argument('--right', required=True)

    add('semigroup-purely-infinite', 'check 2[f] <= [f] on a fragment')

    p = add('semigroup-unperforation', 'check almost unperforation instances')
    p.add_argument('--triple', action='append', required=True,
                   help='"LEFT; RIGHT; n" (repeatable)')

    p = add('scaling-element', 'build a scaling element from a scheme')
    p.add_argument('--from', dest='source', required=True)
    p.add_argument('--to', dest='target', required=True)
    p.add_argument('--isometry', action='store_true', help='include the isometry')

    p = add('cuntz-witness', 'build a Cuntz subequivalence witness')
    p.add_argument('--from', dest='source')
    p.add_argument('--to', dest='target')
    p.add_argument('--set', dest='set', help='build a pair from a paradoxical witness')

    p = add('saturate', 'grow a clopen set to an invariant one')
    p.add_argument('--set', dest='set', required=True)

    add('describe', 'summarize the space and the generators')

    p = sub.add_parser('verify', help='replay a certificate')
    p.add_argument('file')
    p.add_argument('--out', metavar='FILE')
    p.add_argument('-v', '--verbose', action='store_true')
    p.add_argument('-q', '--quiet', action='store_true')
    return parser


def _load(args):
    if (args.action is None) == (args.builtin is None):
        raise UsageError('exactly one of --action and --builtin is required')
    if args.action is not None:
        return load_action(args.action)
    return parse_builtin_spec(args.builtin)


def _bounds(args):
    try:
        return SearchBounds(args.depth, args.word_length, args.node_budget)
    except BadBounds as e:
        raise UsageError(str(e))


def _measure_claim(action, refuted, left, right):
    return MeasureCertificate(action, refuted.content, claim=(left, right))


def _report_result(action, report):
    cert = report_certificate(action, report)
    return REPORT_EXIT[cert.status], cert


def _inconclusive(result):
    LOGGER.warning('inconclusive: {!r}'.format(result))
    sys.stderr.write('inconclusive: {!r}\n'.format(result))
    return EXIT_INCONCLUSIVE, None


def _scheme_result(action, result, F, O, bounds):
    if isinstance(result, SubequivalenceScheme):
        return EXIT_OK, SubequivalenceCertificate(action, result, bounds)
    if isinstance(result, Refuted):
        return EXIT_REFUTED, _measure_claim(action, result, indicator(F), indicator(O))
    return _inconclusive(result)


def _content_result(action, result):
    if isinstance(result, InvariantContent):
        return EXIT_OK, MeasureCertificate(action, result)
    return EXIT_REFUTED, InfeasibilityCertificateFile(action, result)


def _parse_triple(space, text):
    parts = [p.strip() for p in text.split(';')]
    if len(parts) != 3:
        raise UsageError('a triple reads "LEFT; RIGHT; n", got {!r}'.format(text))
    try:
        n = int(parts[2])
    except ValueError:
        raise UsageError('not an integer: {!r}'.format(parts[2]))
    return parse_type(space, parts[0]), parse_type(space, parts[1]), n


def run_command(command, args, action, bounds):
    """Run a command on an action.

    Returns
    -------
    (int, Certificate or str or None)
        The exit code and the certificate or text to write

    """
    space = action.space
    if command == 'check-subequiv':
        F, O = parse_clopen(space, args.source), parse_clopen(space, args.target)
        return _scheme_result(action, search_subequivalence(action, F, O, bounds), F, O, bounds)

    elif command == 'check-paradoxical':
        A = parse_clopen(space, args.set)
        result = check_paradoxical(action, A, bounds)
        if isinstance(result, ParadoxicalWitness):
            return EXIT_OK, ParadoxicalCertificate(action, result, bounds)
        if isinstance(result, Refuted):
            return EXIT_REFUTED, _measure_claim(action, result, indicator(A),
                                                TypeElement(space, ()))
        return _inconclusive(result)

    elif command == 'check-weak-paradoxical':
        F, O = parse_clopen(space, args.source), parse_clopen(space, args.target)
        result = check_weak_paradoxical(action, F, O, bounds)
        if isinstance(result, NotCovered):
            sys.stderr.write('not covered by translates: {}\n'.format(result.uncovered))
            return EXIT_INCONCLUSIVE, None
        return _scheme_result(action, result, F, O, bounds)

    elif command == 'check-nfilling':
        report = check_n_filling(action, args.n, bounds.depth, bounds)
        return _report_result(action, report)

    elif command == 'check-strong-boundary':
        report = check_strong_boundary(action, bounds.depth, bounds)
        return _report_result(action, report)

    elif command == 'check-dynamical-comparison':
        report = check_dynamical_comparison(action, bounds.depth, bounds)
        return _report_result(action, report)

    elif command == 'find-tower':
        words = [action.parse_word(w) for w in args.words.split(';')]
        result = find_open_tower(action, words, parse_clopen(space, args.base), bounds)
        if isinstance(result, NotFound):
            return _inconclusive(result)
        return EXIT_OK, TowerCertificate(action, result, bounds)

    elif command == 'find-invariant-measure':
        depth = max(bounds.depth, minimal_depth(action))
        return _content_result(action, invariant_probability_measure(action, depth))

    elif command == 'find-normalized-content':
        A = parse_clopen(space, args.set)
        depth = max(bounds.depth, minimal_depth(action), A.max_length)
        LOGGER.warning('only contents finite on clopen sets are searched; an infeasibility '
                       'certificate says nothing about unbounded invariant measures')
        return _content_result(action, invariant_content_normalized(action, A, depth))

    elif command == 'semigroup-order':
        f, g = parse_type(space, args.left), parse_type(space, args.right)
        result = search_order(action, f, g, bounds)
        if isinstance(result, OrderWitness):
            return EXIT_OK, OrderCertificate(action, f, g, result, bounds)
        if isinstance(result, Refuted):
            return EXIT_REFUTED, _measure_claim(action, result, f, g)
        return _inconclusive(result)

    elif command == 'semigroup-purely-infinite':
        report = check_purely_infinite_fragment(action, bounds.depth, bounds)
        return _report_result(action, report)

    elif command == 'semigroup-unperforation':
        triples = [_parse_triple(space, t) for t in args.triple]
        report = check_almost_unperforation_instances(action, triples, bounds)
        return _report_result(action, report)

    elif command in ('scaling-element', 'cuntz-witness') and args.source is not None:
        if args.target is None:
            raise UsageError('--from needs --to')
        F, O = parse_clopen(space, args.source), parse_clopen(space, args.target)
        if command == 'scaling-element' and not O.issubset(F):
            raise UsageError('a scaling element needs --to inside --from')
        result = search_subequivalence(action, F, O, bounds)
        if not isinstance(result, SubequivalenceScheme):
            return _scheme_result(action, result, F, O, bounds)
        if command == 'cuntz-witness':
            return EXIT_OK, CuntzCertificate(action, result, bounds)
        x = scaling_element_from_scheme(action, result)
        scaling = ScalingCertificate(action, result, bounds)
        if not args.isometry:
            return EXIT_OK, scaling
        isometry_from_scaling(x.element)
        entries = [('pass', 'scaling element', scaling),
                   ('pass', 'isometry', IsometryCertificate(action, result))]
        return EXIT_OK, ReportCertificate(action, 'scaling element', 'pass', bounds.depth,
                                          entries, bounds)

    elif command == 'cuntz-witness':
        if args.set is None:
            raise UsageError('cuntz-witness needs --set or --from/--to')
        A = parse_clopen(space, args.set)
        result = check_paradoxical(action, A, bounds)
        if isinstance(result, ParadoxicalWitness):
            return EXIT_OK, CuntzPairCertificate(action, result, bounds)
        if isinstance(result, Refuted):
            return EXIT_REFUTED, _measure_claim(action, result, indicator(A),
                                                TypeElement(space, ()))
        return _inconclusive(result)

    elif command == 'saturate':
        A = parse_clopen(space, args.set)
        B, stable = invariant_clopen_saturation(action, A)
        text = 'saturation {}\nstable {}\n'.format(B, 'yes' if stable else 'no')
        return (EXIT_OK if stable else EXIT_INCONCLUSIVE), text

    elif command == 'describe':
        return EXIT_OK, describe(action)

    raise UsageError('unknown command {!r}'.format(command))


def describe(action):
    space = action.space
    names = space.names
    lines = ['letters {}'.format(' '.join(names)),
             'initial {}'.format(' '.join(names[i] for i in range(space.alphabet_size)
                                          if space.initial[i]))]
    for comp in communicating_classes(space):
        lines.append('class {}'.format(' '.join(names[i] for i in comp)))
    lines.append('minimal-depth {}'.format(minimal_depth(action)))
    for name, g in zip(action.names, action.generators):
        lines.append('generator {} {}'.format(name, g.format_rules()))
    return '\n'.join(lines) + '\n'


def _write(output, fn):
    if fn is None:
        sys.stdout.write(output)
    else:
        with open(fn, 'w', encoding='utf-8') as f:
            f.write(output)


def _configure_logging(args):
    if args.quiet:
        level = logging.ERROR
    elif args.verbose:
        level = logging.DEBUG
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    _configure_logging(args)

    try:
        if args.command == 'verify':
            report = verify_certificate_file(args.file)
            _write('{}\n'.format('verified' if report else 'failed: {} {}'.format(
                report.clause, report.detail)), args.out)
            return EXIT_OK if report else EXIT_REFUTED

        action = _load(args)
        bounds = _bounds(args)
        code, output = run_command(args.command, args, action, bounds)
        if output is not None:
            if not isinstance(output, str):
                output = format_certificate(output, __version__)
            _write(output, args.out)
        return code
    except UsageError as e:
        sys.stderr.write('usage error: {}\n'.format(e))
        return EXIT_USAGE
    except (ValueError, ComparisonError) as e:
        sys.stderr.write('usage error: {}\n'.format(e))
        return EXIT_USAGE
    except (ActionFileError, CertificateError, SftError, ActionError, MeasureError,
            CrossedAlgebraError, OSError) as e:
        sys.stderr.write('input error: {}\n'.format(e))
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
