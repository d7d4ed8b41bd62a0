#!/usr/bin/env python
"""
Text formats: action definition files and certificates.

"""

from .importaction import (load_action, parse_action_file, parse_builtin_spec,
                           ActionFileError, ActionSyntaxError, ActionSemanticError)
from .exportaction import format_action, action_hash, save_action
from .exportcertificate import format_certificate, save_certificate
from .importcertificate import (parse_certificate, load_certificate,
                                verify_certificate_text, verify_certificate_file)

__all__ = ['load_action', 'parse_action_file', 'parse_builtin_spec', 'format_action',
           'action_hash', 'save_action', 'format_certificate', 'save_certificate',
           'parse_certificate', 'load_certificate', 'verify_certificate_text',
           'verify_certificate_file', 'ActionFileError', 'ActionSyntaxError',
           'ActionSemanticError']
