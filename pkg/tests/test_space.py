#!/usr/bin/env python
"""

This file contains tests for SFT spaces and clopen set algebra.

"""

import logging
import unittest

import numpy as np

from cantordyn.space import (validate_space, full_shift, canonicalize, clopen_algebra,
                             refine, compare_clopen, parse_clopen, format_clopen,
                             membership_table, communicating_classes, DeadEnd,
                             ShapeMismatch, EmptySpace, InadmissibleWord, DepthTooSmall,
                             SpaceMismatch, BadLiteral)

LOGGER = logging.getLogger(__name__)

F2_LETTERS = ['a', 'A', 'b', 'B']


def f2_space():
    transitions = np.ones((4, 4), dtype=bool)
    for i, j in [(0, 1), (1, 0), (2, 3), (3, 2)]:
        transitions[i, j] = False
    return validate_space(4, transitions, np.ones(4, dtype=bool), F2_LETTERS)


def random_words(prng, space, n, max_length):
    words = []
    for _ in range(n):
        length = prng.randint(0, max_length + 1)
        cells = space.cylinders(length)
        words.append(cells[prng.randint(len(cells))])
    return words


class TestValidateSpace(unittest.TestCase):

    def test_full_binary_shift(self):
        space = validate_space(2, np.ones((2, 2), dtype=bool), [True, True])
        self.assertEqual(space, full_shift(2))
        self.assertEqual(space.cylinders(2), [(0, 0), (0, 1), (1, 0), (1, 1)])

    def test_reduced_words(self):
        space = f2_space()
        for letter in range(4):
            self.assertEqual(len(space.successors((letter,))), 3)
        self.assertFalse(space.is_admissible(space.parse_word('aA')))
        self.assertTrue(space.is_admissible(space.parse_word('abBB')))
        self.assertEqual(len(space.cylinders(2)), 12)

    def test_errors(self):
        self.assertRaises(DeadEnd, validate_space, 1, [[False]], [True])
        self.assertRaises(ShapeMismatch, validate_space, 2, np.ones((3, 3)), [True, True])
        self.assertRaises(ShapeMismatch, validate_space, 2, np.ones((2, 2)), [True])
        self.assertRaises(EmptySpace, validate_space, 2, np.ones((2, 2)), [False, False])
        # names must form a prefix code
        self.assertRaises(ShapeMismatch, validate_space, 2, np.ones((2, 2)), [True, True],
                          ['a', 'ab'])

    def test_communicating_classes(self):
        # 0 -> 1 -> 1, so 0 is transient
        space = validate_space(2, [[False, True], [False, True]], [True, False])
        self.assertEqual(communicating_classes(space), [(0,), (1,)])
        self.assertEqual(communicating_classes(f2_space()), [(0, 1, 2, 3)])


class TestCanonicalize(unittest.TestCase):

    def test_examples(self):
        full = full_shift(2)
        self.assertTrue(canonicalize(full, [(0,), (1,)]).is_whole)
        self.assertEqual(canonicalize(full, [(0,), (0, 1)]).cylinders, ((0,),))
        space = f2_space()
        A = canonicalize(space, [space.parse_word(w) for w in ['aa', 'ab', 'aB']])
        self.assertEqual(format_clopen(A), '[a]')

    def test_inadmissible(self):
        space = f2_space()
        self.assertRaises(InadmissibleWord, canonicalize, space, [space.parse_word('aA')])

    def test_idempotent_and_representation_independent(self):
        prng = np.random.RandomState(1234)
        space = full_shift(2)
        depth = 4
        for _ in range(50):
            words = random_words(prng, space, prng.randint(0, 6), depth)
            A = canonicalize(space, words)
            self.assertEqual(canonicalize(space, A.cylinders), A)
            # the same set given by its depth-4 cells
            cells = [c for c in space.cylinders(depth)
                     if any(c[:len(w)] == w for w in words)]
            self.assertEqual(canonicalize(space, cells), A)
            table = np.array([any(c[:len(w)] == w for w in words)
                              for c in space.cylinders(depth)], dtype=bool)
            self.assertTrue(np.all(membership_table(A, depth) == table))

    def test_antichain(self):
        prng = np.random.RandomState(42)
        space = f2_space()
        for _ in range(30):
            A = canonicalize(space, random_words(prng, space, 5, 3))
            for u in A.cylinders:
                for v in A.cylinders:
                    if u != v:
                        self.assertFalse(v[:len(u)] == u)


class TestClopenAlgebra(unittest.TestCase):

    def test_examples(self):
        space = f2_space()
        a = parse_clopen(space, '[a]')
        self.assertEqual(format_clopen(clopen_algebra(space, 'complement', a)), '[A]|[b]|[B]')
        self.assertTrue(clopen_algebra(space, 'intersection', a, a.complement()).is_empty)
        full = full_shift(2)
        result = clopen_algebra(full, 'difference', full.whole, parse_clopen(full, '[01]'))
        self.assertEqual(format_clopen(result), '[00]|[1]')

    def test_boolean_laws(self):
        prng = np.random.RandomState(7)
        space = full_shift(2)
        depth = 4
        for _ in range(40):
            A, B, C = (canonicalize(space, random_words(prng, space, 3, 3)) for _ in range(3))
            self.assertEqual(A | (B | C), (A | B) | C)
            self.assertEqual(A & (B | C), (A & B) | (A & C))
            self.assertEqual(A | (B & C), (A | B) & (A | C))
            self.assertEqual((A | B).complement(), A.complement() & B.complement())
            self.assertEqual((A & B).complement(), A.complement() | B.complement())
            union = membership_table(A, depth) | membership_table(B, depth)
            self.assertTrue(np.all(membership_table(A | B, depth) == union))
            diff = membership_table(A, depth) & ~membership_table(B, depth)
            self.assertTrue(np.all(membership_table(A - B, depth) == diff))

    def test_space_mismatch(self):
        space = f2_space()
        full = full_shift(2)
        self.assertRaises(SpaceMismatch, clopen_algebra, space, 'union', space.whole,
                          full.whole)


class TestRefineCompare(unittest.TestCase):

    def test_refine(self):
        full = full_shift(2)
        self.assertEqual(refine(full, parse_clopen(full, '[0]'), 2), [(0, 0), (0, 1)])
        space = f2_space()
        cells = refine(space, parse_clopen(space, '[a]'), 2)
        self.assertEqual([space.format_word(c) for c in cells], ['aa', 'ab', 'aB'])
        self.assertEqual(refine(space, space.empty, 3), [])
        self.assertRaises(DepthTooSmall, refine, space, parse_clopen(space, '[aa]'), 1)

    def test_refine_partitions(self):
        prng = np.random.RandomState(3)
        space = f2_space()
        for _ in range(20):
            A = canonicalize(space, random_words(prng, space, 4, 3))
            cells = refine(space, A, 3)
            self.assertEqual(len(set(cells)), len(cells))
            self.assertEqual(canonicalize(space, cells), A)

    def test_compare(self):
        space = f2_space()
        cases = [('[aa]', '[a]', 'subset'),
                 ('[a]', '[aa]', 'superset'),
                 ('[a]', '[b]', 'disjoint'),
                 ('[a]|[b]', '[b]|[a]', 'equal')]
        for a, b, target in cases:
            self.assertEqual(compare_clopen(space, parse_clopen(space, a),
                                            parse_clopen(space, b)), target)
        full = full_shift(2)
        self.assertEqual(compare_clopen(full, parse_clopen(full, '[00]|[1]'),
                                        parse_clopen(full, '[0]')), 'overlapping')


class TestLiterals(unittest.TestCase):

    def test_parse_format(self):
        space = f2_space()
        cases = [('[]', '[]'),
                 ('empty', 'empty'),
                 ('[ab] | [aa]', '[aa]|[ab]'),
                 ('[aa]|[ab]|[aB]', '[a]')]
        for text, target in cases:
            self.assertEqual(format_clopen(parse_clopen(space, text)), target)

    def test_bad_literals(self):
        space = f2_space()
        for text in ['a', '[aA]', '[x]', '[a]|', '[[a]]']:
            self.assertRaises(BadLiteral, parse_clopen, space, text)


if __name__ == '__main__':
    unittest.main()
