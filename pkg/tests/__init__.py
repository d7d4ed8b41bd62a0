# encoding: utf-8
# pylint: skip-file
"""
This module contains tests.
"""

import os

from cantordyn.space import canonicalize, refine
from cantordyn.action import apply, reduce_word
from cantordyn.comparison import SubequivalenceScheme

BASE_PATH = os.path.dirname(os.path.realpath(__file__))
DATA_PATH = os.path.join(BASE_PATH, 'data')
ACTIONS_PATH = os.path.join(DATA_PATH, 'actions')

# the explicit F2 boundary action file and the builtin files that must
# parse into valid actions
F2_ACTION_FILE = os.path.join(ACTIONS_PATH, 'f2_boundary.act')
ACTION_TESTFILES = [os.path.join(ACTIONS_PATH, fn) for fn in
                    ['f2_boundary.act',
                     'bit_swap.act',
                     'f2_product.act']]

# files that must be rejected, with the expected kind of error
BAD_ACTION_TESTFILES = [(os.path.join(ACTIONS_PATH, fn), kind) for fn, kind in
                        [('unknown_letter.act', 'semantic'),
                         ('not_bijective.act', 'semantic'),
                         ('syntax_error.act', 'syntax'),
                         ('empty.act', 'syntax')]]


def random_word(prng, action, max_length):
    """A reduced group word of at most `max_length` random letters."""
    letters = action.letters
    return reduce_word([letters[prng.randint(len(letters))]
                        for _ in range(prng.randint(0, max_length + 1))])


def random_clopen(prng, space, max_length):
    """A nonempty union of up to three random cylinders."""
    words = []
    for _ in range(prng.randint(1, 4)):
        cells = space.cylinders(prng.randint(1, max_length + 1))
        words.append(cells[prng.randint(len(cells))])
    return canonicalize(space, words)


def random_scheme(prng, action, F, max_length=3):
    """A verified scheme for F < g(F) moving the pieces of F by a single
    random word g. Sets with cylinders up to length 2 are cut at a random
    depth."""
    word = random_word(prng, action, max_length)
    if F.max_length <= 2:
        pieces = refine(action.space, F, F.max_length + prng.randint(0, 2))
    else:
        pieces = F.cylinders
    return SubequivalenceScheme(F, apply(action.element(word), F),
                                [(p, word) for p in pieces])
