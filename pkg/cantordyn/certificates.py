#!/usr/bin/env python
"""
This module defines the certificate kinds emitted by the command line
tool. A certificate holds a witness or a counter-witness together with
the action it refers to, and knows how to write its payload as text
lines, how to read it back and how to replay it with the exact
verifiers only.

The envelope around the payload (kind header, version, embedded action
and hash, bounds) is handled by :mod:`cantordyn.io.exportcertificate`
and :mod:`cantordyn.io.importcertificate`.

"""

import logging
import re

from .space import ClopenSet, parse_clopen, format_clopen, SftError
from .action import TowerWitness, verify_tower, apply, ActionError
from .comparison import (SubequivalenceScheme, ParadoxicalWitness, VerificationReport, Refuted,
                         verify_scheme, verify_paradoxical, combine_statuses,
                         boundary_pairs, boundary_label, filling_tuples, filling_label,
                         comparison_pairs, comparison_label)
from .measures import (InvariantContent, InfeasibilityCertificate, Normalization)
from .typesemigroup import (OrderWitness, verify_order_witness, evaluate_type,
                            canonical_type_element, format_type, fragment_elements)
from .crossed import (scaling_element_from_scheme, isometry_from_scaling,
                      cuntz_witness_from_scheme, paradoxical_cuntz_pair,
                      CrossedAlgebraError)
from .utils import iter_subclasses, format_fraction, parse_fraction

LOGGER = logging.getLogger(__name__)

__all__ = ['Certificate', 'SubequivalenceCertificate', 'ParadoxicalCertificate',
           'TowerCertificate', 'OrderCertificate', 'MeasureCertificate',
           'InfeasibilityCertificateFile', 'ScalingCertificate', 'IsometryCertificate',
           'CuntzCertificate', 'CuntzPairCertificate', 'CoverCertificate',
           'InclusionCertificate',
           'ReportCertificate', 'certificate_class', 'entry_certificate',
           'report_certificate', 'claim_types', 'checked_subjects', 'LineReader',
           'CertificateError', 'MalformedCertificate']

CYLINDER_PAT = re.compile(r'^\[([^\[\]\s]*)\]$')
FILLING_PAT = re.compile(r'^(\d+)-filling$')
ENTRY_STATUSES = ('pass', 'fail', 'inconclusive', 'vacuous', 'premise-inconclusive')


class CertificateError(Exception):
    pass


class MalformedCertificate(CertificateError):
    pass


class LineReader(object):
    """Sequential access to ``(line number, key, rest)`` payload lines,
    with ``begin name`` / ``end name`` blocks."""

    def __init__(self, lines):
        self.lines = list(lines)
        self.pos = 0

    @classmethod
    def from_text_lines(cls, numbered):
        items = []
        for lineno, text in numbered:
            text = text.strip()
            if text == '':
                continue
            key, _, rest = text.partition(' ')
            items.append((lineno, key, rest.strip()))
        return cls(items)

    def _fail(self, message):
        if self.pos < len(self.lines):
            message = 'line {}: {}'.format(self.lines[self.pos][0], message)
        raise MalformedCertificate(message)

    def peek(self):
        if self.pos >= len(self.lines):
            return None
        return self.lines[self.pos][1]

    def take(self, key):
        if self.peek() != key:
            self._fail('expected {!r}'.format(key))
        rest = self.lines[self.pos][2]
        self.pos += 1
        return rest

    def take_many(self, key):
        result = []
        while self.peek() == key:
            result.append(self.take(key))
        return result

    def take_block(self, name):
        """Reader for the lines between ``begin name`` and ``end name``."""
        if self.peek() != 'begin' or self.lines[self.pos][2] != name:
            self._fail('expected begin {}'.format(name))
        start = self.pos + 1
        level = 0
        for i in range(start, len(self.lines)):
            _, key, rest = self.lines[i]
            if key == 'begin':
                level += 1
            elif key == 'end':
                if level == 0:
                    if rest != name:
                        self._fail('unbalanced block {}'.format(name))
                    self.pos = i + 1
                    return LineReader(self.lines[start:i])
                level -= 1
        self._fail('unterminated block {}'.format(name))

    def has_block(self, name):
        return (self.peek() == 'begin' and self.lines[self.pos][2] == name)

    def done(self):
        if self.pos != len(self.lines):
            self._fail('unexpected {!r}'.format(self.lines[self.pos][1]))


def _guard(func, *args):
    """Run a reader function, turning value errors into
    MalformedCertificate."""
    try:
        return func(*args)
    except (SftError, ActionError, ValueError, TypeError) as e:
        raise MalformedCertificate(str(e))


def format_cylinder(space, word):
    return '[{}]'.format(space.format_word(word))


def parse_cylinder(space, text):
    m = CYLINDER_PAT.match(text.strip())
    if m is None:
        raise MalformedCertificate('Not a cylinder: {!r}'.format(text))
    return _guard(lambda: space.check_word(space.parse_word(m.group(1))))


def read_clopen(space, text):
    return _guard(parse_clopen, space, text)


def read_word(action, text):
    return _guard(action.parse_word, text)


def scheme_lines(action, s):
    lines = ['source {}'.format(format_clopen(s.source)),
             'target {}'.format(format_clopen(s.target))]
    lines.extend('piece {} {}'.format(format_cylinder(s.space, p), action.format_word(w))
                 for p, w in s.pieces)
    return lines


def read_scheme(action, reader):
    space = action.space
    source = read_clopen(space, reader.take('source'))
    target = read_clopen(space, reader.take('target'))
    pieces = []
    for rest in reader.take_many('piece'):
        cyl, _, word = rest.partition(' ')
        pieces.append((parse_cylinder(space, cyl), read_word(action, word)))
    reader.done()
    return SubequivalenceScheme(source, target, pieces)


def type_lines(key, f):
    return ['{} {}'.format(key, format_clopen(A)) for A in f.levels]


def read_type(space, reader, key):
    levels = [read_clopen(space, t) for t in reader.take_many(key)]
    return canonical_type_element(space, [(c, 1) for A in levels for c in A.cylinders])


def normalization_lines(norm):
    if norm.kind == 'probability':
        return ['normalization probability']
    elif norm.kind == 'set':
        return ['normalization set {}'.format(format_clopen(norm.target))]
    return ['normalization type'] + type_lines('norm-level', norm.target)


def read_normalization(space, reader):
    rest = reader.take('normalization')
    kind, _, arg = rest.partition(' ')
    if kind == 'probability':
        return Normalization('probability')
    elif kind == 'set':
        return Normalization('set', read_clopen(space, arg))
    elif kind == 'type':
        return Normalization('type', read_type(space, reader, 'norm-level'))
    raise MalformedCertificate('Unknown normalization {!r}'.format(kind))


def certificate_class(kind):
    for cls in iter_subclasses(Certificate):
        if cls.kind == kind:
            return cls
    raise MalformedCertificate('Unknown certificate kind {!r}'.format(kind))


class Certificate(object):
    """Base class of all certificate kinds.

    Subclasses set `kind` and implement :meth:`payload_lines`,
    :meth:`from_payload` and :meth:`verify`. Counter-certificates, which
    refute a property instead of witnessing it, have `refutes` set.

    """

    kind = None
    refutes = False

    def __init__(self, action, bounds=None):
        self.action = action
        self.bounds = bounds

    def payload_lines(self):
        raise NotImplementedError()

    @classmethod
    def from_payload(cls, action, reader):
        raise NotImplementedError()

    def verify(self):
        raise NotImplementedError()

    def __repr__(self):
        return '{}()'.format(type(self).__name__)


class SubequivalenceCertificate(Certificate):
    kind = 'subequivalence'

    def __init__(self, action, scheme, bounds=None):
        super().__init__(action, bounds)
        self.scheme = scheme

    def payload_lines(self):
        return scheme_lines(self.action, self.scheme)

    @classmethod
    def from_payload(cls, action, reader):
        return cls(action, read_scheme(action, reader))

    def verify(self):
        return verify_scheme(self.action, self.scheme)


class ParadoxicalCertificate(Certificate):
    kind = 'paradoxical'

    def __init__(self, action, witness, bounds=None):
        super().__init__(action, bounds)
        self.witness = witness

    def payload_lines(self):
        lines = ['set {}'.format(format_clopen(self.witness.A))]
        for s in (self.witness.s1, self.witness.s2):
            lines.append('begin scheme')
            lines.extend(scheme_lines(self.action, s))
            lines.append('end scheme')
        return lines

    @classmethod
    def from_payload(cls, action, reader):
        A = read_clopen(action.space, reader.take('set'))
        s1 = read_scheme(action, reader.take_block('scheme'))
        s2 = read_scheme(action, reader.take_block('scheme'))
        reader.done()
        return cls(action, ParadoxicalWitness(A, s1, s2))

    def verify(self):
        return verify_paradoxical(self.action, self.witness)


class TowerCertificate(Certificate):
    kind = 'tower'

    def __init__(self, action, tower, bounds=None):
        super().__init__(action, bounds)
        self.tower = tower

    def payload_lines(self):
        return (['base {}'.format(format_clopen(self.tower.W))]
                + ['word {}'.format(self.action.format_word(w)) for w in self.tower.words])

    @classmethod
    def from_payload(cls, action, reader):
        W = read_clopen(action.space, reader.take('base'))
        words = [read_word(action, t) for t in reader.take_many('word')]
        reader.done()
        return cls(action, TowerWitness(words, W))

    def verify(self):
        if self.tower.W.is_empty or len(self.tower.words) == 0:
            return VerificationReport(False, 'tower', 'empty tower')
        if not verify_tower(self.action, self.tower):
            return VerificationReport(False, 'tower', 'translates overlap')
        return VerificationReport(True)


class OrderCertificate(Certificate):
    kind = 'order'

    def __init__(self, action, f, g, witness, bounds=None):
        super().__init__(action, bounds)
        self.f = f
        self.g = g
        self.witness = witness

    def payload_lines(self):
        space = self.action.space
        lines = type_lines('left', self.f) + type_lines('right', self.g)
        lines.extend('part {} {} {}'.format(format_cylinder(space, c), m,
                                            self.action.format_word(w))
                     for c, m, w in self.witness.parts)
        return lines

    @classmethod
    def from_payload(cls, action, reader):
        space = action.space
        f = read_type(space, reader, 'left')
        g = read_type(space, reader, 'right')
        parts = []
        for rest in reader.take_many('part'):
            tokens = rest.split(' ', 2)
            if len(tokens) != 3:
                raise MalformedCertificate('Cannot read part {!r}'.format(rest))
            m = _guard(int, tokens[1])
            parts.append((parse_cylinder(space, tokens[0]), m, read_word(action, tokens[2])))
        reader.done()
        return cls(action, f, g, OrderWitness(parts))

    def verify(self):
        return verify_order_witness(self.action, self.f, self.g, self.witness)


class MeasureCertificate(Certificate):
    """An invariant content, optionally with the claim that it gives the
    left type element a larger integral than the right one."""

    kind = 'measure'

    def __init__(self, action, content, claim=None, bounds=None):
        super().__init__(action, bounds)
        self.content = content
        self.claim = claim

    @property
    def refutes(self):
        return self.claim is not None

    def payload_lines(self):
        space = self.action.space
        mu = self.content
        lines = ['depth {}'.format(mu.depth)] + normalization_lines(mu.normalization)
        lines.extend('value {} {}'.format(format_cylinder(space, c), format_fraction(v))
                     for c, v in sorted(mu.values.items()))
        if self.claim is not None:
            left, right = self.claim
            lines.append('claim exceeds')
            lines.extend(type_lines('left', left) + type_lines('right', right))
        return lines

    @classmethod
    def from_payload(cls, action, reader):
        space = action.space
        depth = _guard(int, reader.take('depth'))
        norm = read_normalization(space, reader)
        values = {}
        for rest in reader.take_many('value'):
            cyl, _, v = rest.partition(' ')
            values[parse_cylinder(space, cyl)] = _guard(parse_fraction, v)
        claim = None
        if reader.peek() == 'claim':
            if reader.take('claim') != 'exceeds':
                raise MalformedCertificate('Unknown claim')
            claim = (read_type(space, reader, 'left'), read_type(space, reader, 'right'))
        reader.done()
        return cls(action, InvariantContent(space, depth, values, norm), claim)

    def verify(self):
        if not self.content.check(self.action):
            return VerificationReport(False, 'content', 'not an invariant content')
        if self.claim is not None:
            left, right = self.claim
            if max(left.max_length, right.max_length) > self.content.depth:
                return VerificationReport(False, 'claim', 'claim deeper than the content')
            a = evaluate_type(self.content, left)
            b = evaluate_type(self.content, right)
            if not a > b:
                return VerificationReport(False, 'claim', '{} is not larger than {}'.format(
                    format_fraction(a), format_fraction(b)))
        return VerificationReport(True)


class InfeasibilityCertificateFile(Certificate):
    kind = 'infeasibility'
    refutes = True

    def __init__(self, action, certificate, bounds=None):
        super().__init__(action, bounds)
        self.certificate = certificate

    def payload_lines(self):
        cert = self.certificate
        lines = ['depth {}'.format(cert.depth)] + normalization_lines(cert.normalization)
        lines.extend('multiplier {} {}'.format(format_fraction(v), label)
                     for label, v in sorted(cert.multipliers.items()))
        return lines

    @classmethod
    def from_payload(cls, action, reader):
        depth = _guard(int, reader.take('depth'))
        norm = read_normalization(action.space, reader)
        multipliers = {}
        for rest in reader.take_many('multiplier'):
            v, _, label = rest.partition(' ')
            multipliers[label] = _guard(parse_fraction, v)
        reader.done()
        return cls(action, InfeasibilityCertificate(depth, norm, multipliers))

    def verify(self):
        if self.certificate.replay(self.action):
            return VerificationReport(True)
        return VerificationReport(False, 'farkas', 'multipliers do not give a contradiction')


class _SchemeBasedCertificate(Certificate):

    def __init__(self, action, scheme, bounds=None):
        super().__init__(action, bounds)
        self.scheme = scheme

    def payload_lines(self):
        return scheme_lines(self.action, self.scheme)

    @classmethod
    def from_payload(cls, action, reader):
        return cls(action, read_scheme(action, reader))

    def _witness(self):
        raise NotImplementedError()

    def verify(self):
        try:
            w = self._witness()
        except CrossedAlgebraError as e:
            return VerificationReport(False, type(e).__name__, str(e))
        failed = [name for name, ok in w.diagnostics if not ok]
        if failed:
            return VerificationReport(False, 'identity', ', '.join(failed))
        return VerificationReport(True)


class ScalingCertificate(_SchemeBasedCertificate):
    kind = 'scaling'

    def _witness(self):
        return scaling_element_from_scheme(self.action, self.scheme)


class IsometryCertificate(_SchemeBasedCertificate):
    kind = 'isometry'

    def _witness(self):
        x = scaling_element_from_scheme(self.action, self.scheme)
        return isometry_from_scaling(x.element)


class CuntzCertificate(_SchemeBasedCertificate):
    kind = 'cuntz'

    def _witness(self):
        return cuntz_witness_from_scheme(self.action, self.scheme)


class CuntzPairCertificate(Certificate):
    kind = 'cuntz-pair'

    def __init__(self, action, witness, bounds=None):
        super().__init__(action, bounds)
        self.witness = witness

    def payload_lines(self):
        return ParadoxicalCertificate(self.action, self.witness).payload_lines()

    @classmethod
    def from_payload(cls, action, reader):
        return cls(action, ParadoxicalCertificate.from_payload(action, reader).witness)

    def verify(self):
        try:
            r1, r2, diagnostics = paradoxical_cuntz_pair(self.action, self.witness)
        except CrossedAlgebraError as e:
            return VerificationReport(False, type(e).__name__, str(e))
        failed = [name for name, ok in r1.diagnostics + r2.diagnostics + diagnostics if not ok]
        if failed:
            return VerificationReport(False, 'identity', ', '.join(failed))
        return VerificationReport(True)


class CoverCertificate(Certificate):
    """Translates ``g_1(U_1), ..., g_n(U_n)`` covering the space."""

    kind = 'cover'

    def __init__(self, action, sets, words, bounds=None):
        super().__init__(action, bounds)
        self.sets = list(sets)
        self.words = list(words)

    def payload_lines(self):
        return ['cover {} {}'.format(format_clopen(U), self.action.format_word(w))
                for U, w in zip(self.sets, self.words)]

    @classmethod
    def from_payload(cls, action, reader):
        sets, words = [], []
        for rest in reader.take_many('cover'):
            lit, _, word = rest.partition(' ')
            sets.append(read_clopen(action.space, lit))
            words.append(read_word(action, word))
        reader.done()
        return cls(action, sets, words)

    def verify(self):
        union = self.action.space.empty
        for U, w in zip(self.sets, self.words):
            union = union | apply(self.action.element(w), U)
        if not union.is_whole:
            return VerificationReport(False, 'cover', '{} is left uncovered'.format(
                union.complement()))
        return VerificationReport(True)


class InclusionCertificate(Certificate):
    """A single group word moving F into O."""

    kind = 'inclusion'

    def __init__(self, action, F, O, word, bounds=None):
        super().__init__(action, bounds)
        self.F = F
        self.O = O
        self.word = word

    def payload_lines(self):
        return ['set {}'.format(format_clopen(self.F)),
                'into {}'.format(format_clopen(self.O)),
                'word {}'.format(self.action.format_word(self.word))]

    @classmethod
    def from_payload(cls, action, reader):
        F = read_clopen(action.space, reader.take('set'))
        O = read_clopen(action.space, reader.take('into'))
        word = read_word(action, reader.take('word'))
        reader.done()
        return cls(action, F, O, word)

    def verify(self):
        if apply(self.action.element(self.word), self.F).issubset(self.O):
            return VerificationReport(True)
        return VerificationReport(False, 'inclusion', 'image is not inside {}'.format(self.O))


class ReportCertificate(Certificate):
    """Entries of a property check, each with an optional embedded
    certificate that is replayed on verification.

    A 'pass' entry needs a witness certificate and a 'fail' entry a
    counter-certificate. Entries of the checks quantifying over the
    depth-d clopen sets must list exactly the checked tuples, each
    certificate must be about its tuple, and the overall status must
    follow from the entries.

    """

    kind = 'report'

    def __init__(self, action, name, status, depth, entries, bounds=None):
        super().__init__(action, bounds)
        self.name = name
        self.status = status
        self.depth = depth
        self.entries = list(entries)

    def payload_lines(self):
        lines = ['name {}'.format(self.name), 'status {}'.format(self.status),
                 'depth {}'.format(self.depth)]
        for status, label, cert in self.entries:
            lines.append('begin entry')
            lines.append('status {}'.format(status))
            lines.append('label {}'.format(label))
            if cert is not None:
                lines.append('kind {}'.format(cert.kind))
                lines.extend(cert.payload_lines())
            lines.append('end entry')
        return lines

    @classmethod
    def from_payload(cls, action, reader):
        name = reader.take('name')
        status = reader.take('status')
        depth = _guard(int, reader.take('depth'))
        entries = []
        while reader.has_block('entry'):
            sub = reader.take_block('entry')
            entry_status = sub.take('status')
            label = sub.take('label')
            cert = None
            if sub.peek() == 'kind':
                kind = sub.take('kind')
                cert = certificate_class(kind).from_payload(action, sub)
            else:
                sub.done()
            entries.append((entry_status, label, cert))
        reader.done()
        return cls(action, name, status, depth, entries)

    def verify(self):
        if not self.entries:
            return VerificationReport(False, 'entries', 'the report has no entries')
        try:
            expected = checked_subjects(self.action.space, self.name, self.depth)
        except ValueError as e:
            return VerificationReport(False, 'entries', str(e))
        if expected is not None:
            if [label for _, label, _ in self.entries] != [label for label, _ in expected]:
                return VerificationReport(False, 'entries', 'entries do not match the tuples '
                                          'of the {} check at depth {}'.format(self.name,
                                                                              self.depth))
            subjects = dict(expected)
        for status, label, cert in self.entries:
            problem = _entry_problem(status, cert)
            if problem is not None:
                return VerificationReport(False, 'entry_status',
                                          'entry {}: {}'.format(label, problem))
            if cert is None:
                continue
            report = cert.verify()
            if not report:
                return VerificationReport(False, report.clause,
                                          'entry {}: {}'.format(label, report.detail))
            if expected is not None and not _concerns(cert, self.name, subjects[label]):
                return VerificationReport(False, 'entry_subject',
                                          'entry {}: certificate is about another tuple'
                                          .format(label))
        status = combine_statuses(s for s, _, _ in self.entries)
        if status != self.status:
            return VerificationReport(False, 'status', 'entries give {} instead of {}'.format(
                status, self.status))
        return VerificationReport(True)


def _entry_problem(status, cert):
    if status not in ENTRY_STATUSES:
        return 'unknown status {!r}'.format(status)
    if status == 'pass' and (cert is None or cert.refutes):
        return 'pass needs a witness certificate'
    if status == 'fail' and (cert is None or not cert.refutes):
        return 'fail needs a counter-certificate'
    if status == 'vacuous' and cert is not None and not cert.refutes:
        return 'a vacuous entry carries a counter-certificate or nothing'
    if status in ('inconclusive', 'premise-inconclusive') and cert is not None:
        return 'an inconclusive entry carries no certificate'
    return None


def claim_types(space, claim):
    """Type elements of a claim given as two sums of indicator
    functions."""
    return tuple(canonical_type_element(space, [(c, 1) for A in sets for c in A.cylinders])
                 for sets in claim)


def checked_subjects(space, name, depth):
    """Labels and subjects of the entries of a check, in report order.

    Returns
    -------
    list of (str, object) or None
        None for checks whose entries are not determined by the depth

    """
    if name == 'strong boundary':
        return [(boundary_label(F, O), (F, O)) for F, O in boundary_pairs(space, depth)]
    if name == 'dynamical comparison':
        return [(comparison_label(V, O), (V, O)) for V, O in comparison_pairs(space, depth)]
    if name == 'purely infinite':
        return [(format_type(f), f) for f in fragment_elements(space, depth)]
    m = FILLING_PAT.match(name)
    if m:
        return [(filling_label(space, words), words)
                for words in filling_tuples(space, int(m.group(1)), depth)]
    return None


def _concerns(cert, name, subject):
    """Whether an entry certificate is about the checked tuple."""
    space = cert.action.space
    if name == 'strong boundary':
        F, O = subject
        if isinstance(cert, MeasureCertificate):
            return cert.claim == claim_types(space, ((F,), (O,)))
        return isinstance(cert, InclusionCertificate) and (cert.F, cert.O) == (F, O)
    if name == 'dynamical comparison':
        return (isinstance(cert, SubequivalenceCertificate)
                and (cert.scheme.source, cert.scheme.target) == subject)
    if name == 'purely infinite':
        pair = (subject.scale(2), subject)
        if isinstance(cert, MeasureCertificate):
            return cert.claim == pair
        return isinstance(cert, OrderCertificate) and (cert.f, cert.g) == pair
    sets = [ClopenSet(space, [w]) for w in subject]
    if isinstance(cert, MeasureCertificate):
        return cert.claim == claim_types(space, ((space.whole,), sets))
    return isinstance(cert, CoverCertificate) and cert.sets == sets


def entry_certificate(action, witness):
    """The certificate replaying the witness of a report entry, or None
    when the entry has no witness that can be written down."""
    if isinstance(witness, SubequivalenceScheme):
        return SubequivalenceCertificate(action, witness)
    if isinstance(witness, Refuted):
        if witness.claim is None:
            return None
        return MeasureCertificate(action, witness.content,
                                  claim_types(action.space, witness.claim))
    if isinstance(witness, tuple) and len(witness) == 3 and isinstance(witness[2], OrderWitness):
        return OrderCertificate(action, witness[0], witness[1], witness[2])
    if isinstance(witness, tuple) and len(witness) == 3:
        return InclusionCertificate(action, witness[0], witness[1], witness[2])
    if isinstance(witness, tuple) and len(witness) == 2:
        return CoverCertificate(action, [ClopenSet(action.space, [u]) for u in witness[0]],
                                witness[1])
    return None


def report_certificate(action, report):
    """Bundle the entries of a check report with their certificates.

    A failed entry without a counter-certificate is written as
    inconclusive and the overall status is recomputed, so that a 'fail'
    report always carries a replayable refutation.

    Returns
    -------
    ReportCertificate

    """
    entries = []
    for e in report.entries:
        cert = entry_certificate(action, e.witness)
        status = e.status
        if status == 'fail' and (cert is None or not cert.refutes):
            LOGGER.warning('entry {} failed without a counter-certificate ({}); written as '
                           'inconclusive'.format(e.label, e.detail))
            status = 'inconclusive'
            cert = None
        entries.append((status, e.label, cert))
    status = combine_statuses(s for s, _, _ in entries)
    return ReportCertificate(action, report.name, status, report.depth, entries, report.bounds)
