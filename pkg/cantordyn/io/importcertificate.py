#!/usr/bin/env python
"""
This module contains methods for reading and replaying certificates.

"""

import logging
import re

from cantordyn.certificates import certificate_class, LineReader, MalformedCertificate
from cantordyn.comparison import SearchBounds, VerificationReport, BadBounds
from cantordyn.io.importaction import parse_action_file
from cantordyn.io.exportaction import action_hash
from cantordyn.io.exportcertificate import CERTIFICATE_HEADER

__all__ = ['parse_certificate', 'load_certificate', 'verify_certificate_text',
           'verify_certificate_file']
LOGGER = logging.getLogger(__name__)

BOUNDS_PAT = re.compile(r'^depth (\d+) word-length (\d+) node-budget (\d+)$')


def _parse_bounds(rest):
    if rest == 'none':
        return None
    m = BOUNDS_PAT.match(rest)
    if m is None:
        raise MalformedCertificate('Cannot read bounds {!r}'.format(rest))
    try:
        return SearchBounds(*(int(x) for x in m.groups()))
    except BadBounds as e:
        raise MalformedCertificate(str(e))


def parse_certificate(text):
    """Read a certificate.

    Returns
    -------
    Certificate
        With the attribute `hash_ok` telling whether the recorded action
        hash matches the embedded action

    Raises
    ------
    MalformedCertificate
        If the text does not follow the certificate format
    ActionFileError
        If the embedded action cannot be read

    """
    lines = text.split('\n')
    if len(lines) == 0 or not lines[0].startswith(CERTIFICATE_HEADER + ' '):
        raise MalformedCertificate('Missing certificate header')
    kind = lines[0][len(CERTIFICATE_HEADER) + 1:].strip()
    cls = certificate_class(kind)

    stripped = [l.strip() for l in lines]
    try:
        begin = stripped.index('begin action')
        end = stripped.index('end action')
        last = stripped.index('end certificate')
    except ValueError:
        raise MalformedCertificate('Incomplete certificate')
    if not begin < end < last:
        raise MalformedCertificate('Misplaced action block')
    if any(l != '' for l in stripped[last + 1:]):
        raise MalformedCertificate('Text after the end of the certificate')

    head = LineReader.from_text_lines(enumerate(lines[1:begin], 2))
    head.take('version')
    head.done()
    action = parse_action_file('\n'.join(lines[begin + 1:end]) + '\n')

    body = LineReader.from_text_lines((i + 1, lines[i]) for i in range(end + 1, last))
    recorded_hash = body.take('action-hash')
    bounds = _parse_bounds(body.take('bounds'))
    cert = cls.from_payload(action, body)
    cert.bounds = bounds
    cert.hash_ok = recorded_hash == action_hash(action)
    return cert


def load_certificate(fn):
    with open(fn, encoding='utf-8') as f:
        return parse_certificate(f.read())


def verify_certificate_text(text):
    """Replay a certificate with the exact verifiers.

    Returns
    -------
    VerificationReport

    Raises
    ------
    CertificateError, ActionFileError
        If the input is malformed

    """
    cert = parse_certificate(text)
    if not cert.hash_ok:
        return VerificationReport(False, 'action_hash', 'hash does not match the action')
    report = cert.verify()
    LOGGER.info('{} certificate: {}'.format(cert.kind, 'verified' if report else report))
    return report


def verify_certificate_file(fn):
    with open(fn, encoding='utf-8') as f:
        return verify_certificate_text(f.read())
