#!/usr/bin/env python
"""
This module contains methods for writing certificates.

A certificate file consists of a kind header, a version line, the
embedded action between ``begin action`` and ``end action``, the hash
of the action text, the search bounds and the payload of the kind,
terminated by ``end certificate``. Apart from the version line the
output depends only on the certificate contents.

"""

import logging

from cantordyn.io.exportaction import format_action, action_hash

__all__ = ['format_certificate', 'save_certificate', 'CERTIFICATE_HEADER']
LOGGER = logging.getLogger(__name__)

CERTIFICATE_HEADER = 'cantordyn-certificate'


def format_bounds(bounds):
    if bounds is None:
        return 'bounds none'
    return 'bounds {}'.format(bounds)


def format_certificate(cert, version):
    """Text of a certificate.

    Parameters
    ----------
    cert : Certificate
    version : str
        Toolkit version written to the version line

    Returns
    -------
    str

    """
    lines = ['{} {}'.format(CERTIFICATE_HEADER, cert.kind),
             'version {}'.format(version),
             'begin action']
    lines.extend(format_action(cert.action).splitlines())
    lines.append('end action')
    lines.append('action-hash {}'.format(action_hash(cert.action)))
    lines.append(format_bounds(cert.bounds))
    lines.extend(cert.payload_lines())
    lines.append('end certificate')
    return '\n'.join(lines) + '\n'


def save_certificate(cert, version, fn):
    with open(fn, 'w', encoding='utf-8') as f:
        f.write(format_certificate(cert, version))
    LOGGER.info('wrote {} certificate to {}'.format(cert.kind, fn))
