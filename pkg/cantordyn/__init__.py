"""The top level of the package contains functions to load actions,
search comparison witnesses and replay certificates.

"""

import pkg_resources

from .space import SftSpace, ClopenSet, full_shift, parse_clopen
from .action import Action, builtin_action, enumerate_elements
from .comparison import (SearchBounds, search_subequivalence, check_paradoxical,
                         check_weak_paradoxical, check_n_filling, check_strong_boundary,
                         check_dynamical_comparison, find_open_tower)
from .measures import invariant_probability_measure, invariant_content_normalized
from .typesemigroup import parse_type, search_order
from .io.importaction import load_action, parse_action_file, parse_builtin_spec
from .io.exportaction import save_action
from .io.exportcertificate import save_certificate
from .io.importcertificate import load_certificate, verify_certificate_file


# define a version variable
try:
    __version__ = pkg_resources.get_distribution("cantordyn").version
except pkg_resources.DistributionNotFound:
    __version__ = '0.1.0'

__all__ = ['SftSpace', 'ClopenSet', 'full_shift', 'parse_clopen', 'Action',
           'builtin_action', 'enumerate_elements', 'SearchBounds',
           'search_subequivalence', 'check_paradoxical', 'check_weak_paradoxical',
           'check_n_filling', 'check_strong_boundary', 'check_dynamical_comparison',
           'find_open_tower', 'invariant_probability_measure',
           'invariant_content_normalized', 'parse_type', 'search_order',
           'load_action', 'parse_action_file', 'parse_builtin_spec', 'save_action',
           'save_certificate', 'load_certificate', 'verify_certificate_file']
