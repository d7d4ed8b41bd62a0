#!/usr/bin/env python
"""
This module contains methods for writing actions in the action file
format, in a canonical form suitable for hashing.

"""

import hashlib
import logging

__all__ = ['format_action', 'action_hash', 'save_action']
LOGGER = logging.getLogger(__name__)


def format_action(action):
    """Canonical action file text.

    Builtin actions are written as their builtin line; other actions
    list the letters, the forbidden pairs, the initial letters and the
    rules of every generator in normal form.

    """
    if action.description is not None:
        return 'builtin = {}\n'.format(action.description)
    space = action.space
    names = space.names
    lines = ['space letters {}'.format(' '.join(names))]
    forbidden = [names[i] + names[j] for i in range(space.alphabet_size)
                 for j in range(space.alphabet_size) if not space.transitions[i, j]]
    lines.append(' '.join(['space forbid'] + forbidden))
    lines.append('space initial {}'.format(' '.join(
        names[i] for i in range(space.alphabet_size) if space.initial[i])))
    for name, g in zip(action.names, action.generators):
        for u, v in g.rules:
            lines.append('gen {} rule {} -> {}'.format(name, space.format_word(u) or '.',
                                                       space.format_word(v) or '.'))
    return '\n'.join(lines) + '\n'


def action_hash(action):
    """SHA-256 hex digest of the canonical action text."""
    return hashlib.sha256(format_action(action).encode('utf-8')).hexdigest()


def save_action(action, fn):
    with open(fn, 'w', encoding='utf-8') as f:
        f.write(format_action(action))
