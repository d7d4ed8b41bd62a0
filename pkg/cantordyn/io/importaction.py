#!/usr/bin/env python
"""
This module contains methods for parsing action definition files.

An action file is line oriented; ``#`` starts a comment::

    space letters a A b B
    space forbid aA Aa bB Bb
    space initial a A b B
    gen ga rule A -> .
    gen ga rule a -> aa
    ...

Instead of an explicit definition a file may consist of a single
builtin line, such as ``builtin = f2_boundary`` or
``builtin = product_with_trivial(f2_boundary, full_shift(2))``.

"""

import logging

import numpy as np
from lark import Lark
from lark.exceptions import UnexpectedInput, LarkError

from cantordyn.space import validate_space, full_shift, SftError
from cantordyn.action import (Action, validate_exchange, builtin_action, ActionError)

__all__ = ['load_action', 'parse_action_file', 'parse_builtin_spec',
           'ActionFileError', 'ActionSyntaxError', 'ActionSemanticError']
LOGGER = logging.getLogger(__name__)


class ActionFileError(Exception):
    pass


class ActionSyntaxError(ActionFileError):

    def __init__(self, line, column, message):
        super().__init__('line {}, column {}: {}'.format(line, column, message))
        self.line = line
        self.column = column


class ActionSemanticError(ActionFileError):

    def __init__(self, message, line=None):
        if line is not None:
            message = 'line {}: {}'.format(line, message)
        super().__init__(message)
        self.line = line


SPEC_GRAMMAR = r"""
spec: NAME ("(" [arg ("," arg)*] ")")?
?arg: spec
    | INT -> int
    | "[" [INT ("," INT)*] "]" -> perm

NAME: /[a-z_][a-z0-9_]*/
INT: /-?[0-9]+/
"""

ACTION_GRAMMAR = r"""
start: _NL? (_statement _NL)* _statement?

_statement: letters
          | forbid
          | initial
          | rule
          | builtin

letters: "space" "letters" TOKEN+
forbid: "space" "forbid" TOKEN*
initial: "space" "initial" TOKEN+
rule: "gen" TOKEN "rule" TOKEN "->" TOKEN
builtin: "builtin" "=" spec

TOKEN: /[^\s#]+/
_NL: /([ \t]*(#[^\n]*)?\r?\n)+/
COMMENT: /#[^\n]*/

%ignore COMMENT
%ignore /[ \t]+/
""" + SPEC_GRAMMAR

SPEC_PARSER_GRAMMAR = SPEC_GRAMMAR + r"""
%ignore /[ \t]+/
"""

ACTION_PARSER = Lark(ACTION_GRAMMAR, start='start', propagate_positions=True)
SPEC_PARSER = Lark(SPEC_PARSER_GRAMMAR, start='spec', propagate_positions=True)


def _spec_value(tree):
    if tree.data == 'int':
        return int(tree.children[0])
    elif tree.data == 'perm':
        return [int(t) for t in tree.children if t is not None]
    elif tree.data == 'spec':
        name = str(tree.children[0])
        args = [_spec_value(ch) for ch in tree.children[1:] if ch is not None]
        if name == 'full_shift':
            if len(args) != 1 or not isinstance(args[0], int):
                raise ActionSemanticError('full_shift takes one integer', tree.meta.line)
            return full_shift(args[0])
        return builtin_action(name, args)
    raise ActionSemanticError('Unexpected {}'.format(tree.data))


def _build_builtin(tree):
    try:
        action = _spec_value(tree)
    except (SftError, ActionError) as e:
        raise ActionSemanticError(str(e), getattr(tree.meta, 'line', None))
    if not isinstance(action, Action):
        raise ActionSemanticError('Builtin specification does not describe an action',
                                  getattr(tree.meta, 'line', None))
    return action


def parse_builtin_spec(text):
    """Build an action from a builtin specification such as
    ``free_boundary(3)``.

    Raises
    ------
    ActionSyntaxError
    ActionSemanticError

    """
    try:
        tree = SPEC_PARSER.parse(text.strip())
    except UnexpectedInput as e:
        raise ActionSyntaxError(e.line, e.column, 'cannot parse builtin specification')
    except LarkError as e:
        raise ActionSyntaxError(1, 1, str(e))
    return _build_builtin(tree)


def _parse_letters(space_names, tokens, line):
    index = dict((n, i) for i, n in enumerate(space_names))
    result = []
    for t in tokens:
        if str(t) not in index:
            raise ActionSemanticError('Unknown letter {!r}'.format(str(t)), line)
        result.append(index[str(t)])
    return result


def _build_explicit(statements):
    names = None
    forbid = []
    initial = None
    rules = {}
    for tree in statements:
        line = tree.meta.line
        if tree.data == 'letters':
            if names is not None:
                raise ActionSemanticError('Letters declared twice', line)
            names = [str(t) for t in tree.children]
        elif names is None:
            raise ActionSemanticError('Letters must be declared first', line)
        elif tree.data == 'forbid':
            forbid.extend((str(t), line) for t in tree.children)
        elif tree.data == 'initial':
            initial = (_parse_letters(names, tree.children, line), line)
        elif tree.data == 'rule':
            gen, u, v = (str(t) for t in tree.children)
            rules.setdefault(gen, []).append((u, v, line))
        else:
            raise ActionSemanticError('A builtin cannot be combined with other statements',
                                      line)
    if names is None:
        raise ActionSemanticError('No letters declared')
    if len(rules) == 0:
        raise ActionSemanticError('No generators defined')

    k = len(names)
    transitions = np.ones((k, k), dtype=bool)
    initial_vector = np.ones(k, dtype=bool)
    if initial is not None:
        initial_vector[:] = False
        initial_vector[initial[0]] = True
    try:
        # names must form a prefix code before words can be split
        scratch = validate_space(k, np.ones((k, k), dtype=bool), np.ones(k, dtype=bool), names)
        for pair, line in forbid:
            w = scratch.parse_word(pair)
            if len(w) != 2:
                raise ActionSemanticError('Forbidden pairs have two letters, got {!r}'
                                          .format(pair), line)
            transitions[w[0], w[1]] = False
        space = validate_space(k, transitions, initial_vector, names)
    except SftError as e:
        raise ActionSemanticError(str(e))

    generators = []
    for gen, gen_rules in rules.items():
        line = gen_rules[0][2]
        try:
            exchange = validate_exchange(space, [(space.parse_word(u), space.parse_word(v))
                                                 for u, v, _ in gen_rules])
        except (SftError, ActionError) as e:
            raise ActionSemanticError('generator {}: {}'.format(gen, e), line)
        generators.append((gen, exchange))
    try:
        return Action(space, generators)
    except ActionError as e:
        raise ActionSemanticError(str(e))


def parse_action_file(text):
    """Build an action from the text of an action file.

    Parameters
    ----------
    text : str

    Returns
    -------
    Action

    Raises
    ------
    ActionSyntaxError
        With the line and column of the first unexpected input
    ActionSemanticError
        If the definition is not a valid space or exchange

    """
    try:
        tree = ACTION_PARSER.parse(text if text.endswith('\n') else text + '\n')
    except UnexpectedInput as e:
        raise ActionSyntaxError(e.line, e.column, 'unexpected input')
    except LarkError as e:
        raise ActionSyntaxError(1, 1, str(e))
    statements = list(tree.children)
    if len(statements) == 0:
        raise ActionSyntaxError(1, 1, 'empty action file')
    builtins = [s for s in statements if s.data == 'builtin']
    if builtins:
        if len(statements) > 1:
            raise ActionSemanticError('A builtin cannot be combined with other statements',
                                      builtins[0].meta.line)
        action = _build_builtin(builtins[0].children[0])
    else:
        action = _build_explicit(statements)
    LOGGER.debug('parsed action with generators {}'.format(', '.join(action.names)))
    return action


def load_action(fn):
    """Read an action file from disk."""
    with open(fn, encoding='utf-8') as f:
        return parse_action_file(f.read())
