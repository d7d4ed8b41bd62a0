#!/usr/bin/env python
"""
This file contains tests for subequivalence schemes, paradoxical
witnesses and the finite-resolution property checks.
"""
import logging
import unittest
from fractions import Fraction
from itertools import combinations

import numpy as np

from cantordyn.space import ClopenSet, full_shift, parse_clopen, format_clopen
from cantordyn.action import builtin_action, verify_tower
from cantordyn.comparison import (SearchBounds, SubequivalenceScheme, ParadoxicalWitness,
                                  NotFound, Refuted, NotCovered, verify_scheme,
                                  verify_paradoxical, search_subequivalence,
                                  compose_schemes, restrict_scheme, widen_target,
                                  multi_subequivalence, check_paradoxical,
                                  check_weak_paradoxical, check_n_filling,
                                  check_strong_boundary, check_dynamical_comparison,
                                  find_open_tower, HypothesisMismatch, BadBounds)
from cantordyn.measures import InvariantContent, invariant_content_normalized, minimal_depth

from . import random_clopen, random_scheme

LOGGER = logging.getLogger(__name__)


def bit_swap():
    return builtin_action('bit_permutation', ([1, 0],))


def clopen(action, text):
    return parse_clopen(action.space, text)


def scheme(action, source, target, pieces):
    return SubequivalenceScheme(clopen(action, source), clopen(action, target),
                                [(action.space.parse_word(p), action.parse_word(w))
                                 for p, w in pieces])


class TestSearchBounds(unittest.TestCase):

    def test_bounds(self):
        bounds = SearchBounds(2, 3, 100)
        self.assertEqual(bounds.doubled(), SearchBounds(3, 6, 200))
        for args in [(0, 4, 10), (3, -1, 10), (3, 4, 0), ('3', 4, 10), (True, 4, 10)]:
            self.assertRaises(BadBounds, SearchBounds, *args)
        # BadBounds is a ValueError
        self.assertRaises(ValueError, SearchBounds, 0)


class TestVerifyScheme(unittest.TestCase):

    def test_valid(self):
        f2 = builtin_action('f2_boundary')
        s = scheme(f2, '[a]', '[a]', [('a', 'ga')])
        self.assertTrue(verify_scheme(f2, s).passed)
        swap = bit_swap()
        s = scheme(swap, '[0]', '[1]', [('0', 's')])
        self.assertTrue(verify_scheme(swap, s).passed)
        empty = SubequivalenceScheme(swap.space.empty, swap.space.empty, [])
        self.assertTrue(verify_scheme(swap, empty).passed)

    def test_violated_clauses(self):
        f2 = builtin_action('f2_boundary')
        swap = bit_swap()
        cases = [(f2, scheme(f2, '[a]|[b]', '[a]', [('a', 'ga')]), 'coverage'),
                 (f2, scheme(f2, '[a]', '[a]', [('a', 'e'), ('aa', 'ga')]),
                  'piece_disjointness'),
                 (swap, scheme(swap, '[]', '[]', [('0', 'e'), ('1', 's')]),
                  'image_disjointness'),
                 (swap, scheme(swap, '[0]', '[0]', [('0', 's')]), 'image_containment')]
        for action, s, clause in cases:
            report = verify_scheme(action, s)
            self.assertFalse(report.passed)
            self.assertEqual(report.clause, clause, 'Expected {} to fail {}, got {}'
                             .format(s, clause, report))


class TestSearchSubequivalence(unittest.TestCase):

    def test_bit_swap(self):
        swap = bit_swap()
        result = search_subequivalence(swap, clopen(swap, '[0]'), clopen(swap, '[1]'))
        self.assertTrue(isinstance(result, SubequivalenceScheme))
        self.assertEqual(result.pieces, (((0,), ((0, 1),)),))
        self.assertTrue(verify_scheme(swap, result).passed)

    def test_refuted_by_content(self):
        swap = bit_swap()
        result = search_subequivalence(swap, swap.space.whole, clopen(swap, '[0]'))
        self.assertTrue(isinstance(result, Refuted))
        self.assertEqual(result.values['source'], 1)
        self.assertEqual(result.values['target'], Fraction(1, 2))
        self.assertTrue(result.content.check(swap))

    def test_not_found_without_refutation(self):
        swap = bit_swap()
        result = search_subequivalence(swap, swap.space.whole, clopen(swap, '[0]'),
                                       refute=False)
        self.assertTrue(isinstance(result, NotFound))
        self.assertEqual(result.reason, 'exhausted')

    def test_f2_whole_into_cylinder(self):
        f2 = builtin_action('f2_boundary')
        result = search_subequivalence(f2, f2.space.whole, clopen(f2, '[a]'))
        self.assertTrue(isinstance(result, SubequivalenceScheme))
        self.assertTrue(verify_scheme(f2, result).passed)

    def test_empty_sets(self):
        swap = bit_swap()
        result = search_subequivalence(swap, swap.space.empty, swap.space.empty)
        self.assertEqual(result.pieces, ())
        self.assertRaises(ValueError, search_subequivalence, swap, clopen(swap, '[0]'),
                          swap.space.empty)


class TestSchemeAlgebra(unittest.TestCase):

    def test_compose(self):
        swap = bit_swap()
        s1 = scheme(swap, '[0]', '[1]', [('0', 's')])
        s2 = scheme(swap, '[1]', '[0]', [('1', 's')])
        s = compose_schemes(swap, s1, s2)
        self.assertEqual(s.source, clopen(swap, '[0]'))
        self.assertEqual(s.target, clopen(swap, '[0]'))
        self.assertTrue(verify_scheme(swap, s).passed)
        self.assertRaises(HypothesisMismatch, compose_schemes, swap, s1, s1)

    def test_compose_cuts_pieces(self):
        f2 = builtin_action('f2_boundary')
        s1 = scheme(f2, '[a]', '[a]', [('a', 'ga')])
        s2 = scheme(f2, '[a]', '[a]', [('aa', 'e'), ('ab', 'ga'), ('aB', 'ga')])
        s = compose_schemes(f2, s1, s2)
        self.assertTrue(verify_scheme(f2, s).passed)
        self.assertEqual(s.image(f2), clopen(f2, '[aa]'))

    def test_compose_random(self):
        f2 = builtin_action('f2_boundary')
        prng = np.random.RandomState(2024)
        for _ in range(200):
            s1 = random_scheme(prng, f2, random_clopen(prng, f2.space, 2))
            N = s1.target | random_clopen(prng, f2.space, 2)
            s2 = random_scheme(prng, f2, N)
            self.assertTrue(verify_scheme(f2, s1).passed)
            self.assertTrue(verify_scheme(f2, s2).passed)
            s = compose_schemes(f2, s1, s2)
            self.assertTrue(verify_scheme(f2, s).passed, repr(s))
            self.assertEqual(s.source, s1.source)
            self.assertTrue(s.image(f2).issubset(s2.image(f2)))

    def test_restrict_and_widen(self):
        f2 = builtin_action('f2_boundary')
        s = scheme(f2, '[a]', '[a]', [('a', 'ga')])
        r = restrict_scheme(f2, s, clopen(f2, '[ab]'))
        self.assertTrue(verify_scheme(f2, r).passed)
        self.assertEqual(r.image(f2), clopen(f2, '[aab]'))
        w = widen_target(s, f2.space.whole)
        self.assertTrue(verify_scheme(f2, w).passed)
        self.assertRaises(HypothesisMismatch, restrict_scheme, f2, s, clopen(f2, '[b]'))
        self.assertRaises(HypothesisMismatch, widen_target, s, clopen(f2, '[aa]'))


class TestParadoxical(unittest.TestCase):

    def test_f2_cylinder(self):
        f2 = builtin_action('f2_boundary')
        A = clopen(f2, '[a]')
        w = check_paradoxical(f2, A)
        self.assertTrue(isinstance(w, ParadoxicalWitness))
        self.assertEqual(format_clopen(w.O1), '[aa]')
        self.assertEqual(format_clopen(w.O2), '[aba]')
        self.assertEqual(w.s1.pieces, (((0,), f2.parse_word('ga')),))
        self.assertEqual(w.s2.pieces, (((0,), f2.parse_word('ga gb')),))
        self.assertTrue(verify_paradoxical(f2, w).passed)

    def test_f2_other_sets(self):
        f2 = builtin_action('f2_boundary')
        for text in ['[b]', '[]']:
            A = clopen(f2, text)
            w = check_paradoxical(f2, A)
            self.assertTrue(isinstance(w, ParadoxicalWitness), '{}: {!r}'.format(text, w))
            self.assertTrue(verify_paradoxical(f2, w).passed)
            self.assertTrue(w.O1.isdisjoint(w.O2))
            self.assertTrue((w.O1 | w.O2).issubset(A))

    def test_product_sets(self):
        f2 = builtin_action('f2_boundary')
        product = builtin_action('product_with_trivial', (f2, full_shift(2)))
        for text in ['[a0]|[A0]|[b0]|[B0]', '[a0]']:
            w = check_paradoxical(product, clopen(product, text))
            self.assertTrue(isinstance(w, ParadoxicalWitness), '{}: {!r}'.format(text, w))
            self.assertTrue(verify_paradoxical(product, w).passed)

    def test_overlapping_targets(self):
        f2 = builtin_action('f2_boundary')
        s = scheme(f2, '[a]', '[aa]', [('a', 'ga')])
        report = verify_paradoxical(f2, ParadoxicalWitness(clopen(f2, '[a]'), s, s))
        self.assertFalse(report.passed)
        self.assertEqual(report.clause, 'image_disjointness')

    def test_bit_swap_refuted(self):
        swap = bit_swap()
        result = check_paradoxical(swap, clopen(swap, '[0]'))
        self.assertTrue(isinstance(result, Refuted))
        self.assertEqual(result.values['set'], 1)
        self.assertRaises(ValueError, check_paradoxical, swap, swap.space.empty)

    def test_bit_permutations_refuted_at_depth_2(self):
        for perms in [([1, 0],), ([1, 0], [0, 1, 3, 2])]:
            action = builtin_action('bit_permutation', perms)
            cells = action.space.cylinders(2)
            for r in range(1, len(cells) + 1):
                for combo in combinations(cells, r):
                    A = ClopenSet(action.space, combo)
                    result = check_paradoxical(action, A)
                    self.assertTrue(isinstance(result, Refuted), '{}: {!r}'.format(A, result))
                    self.assertEqual(result.content.evaluate(A), 1)

    def test_witness_and_content_exclusive(self):
        f2 = builtin_action('f2_boundary')
        actions = [f2, builtin_action('free_boundary', (3,)), bit_swap(),
                   builtin_action('bit_permutation', ([1, 0], [0, 1, 3, 2])),
                   builtin_action('product_with_trivial', (f2, full_shift(2)))]
        bounds = SearchBounds(2, 3, 10 ** 4)
        for action in actions:
            depth = max(2, minimal_depth(action))
            for c in action.space.cylinders(1):
                A = ClopenSet(action.space, [c])
                witness = check_paradoxical(action, A, bounds)
                content = invariant_content_normalized(action, A, depth)
                self.assertFalse(isinstance(witness, ParadoxicalWitness)
                                 and isinstance(content, InvariantContent),
                                 '{} on {}'.format(A, action.description))

    def test_multi_subequivalence(self):
        f2 = builtin_action('f2_boundary')
        A = clopen(f2, '[a]')
        for n in (1, 2, 4):
            schemes = multi_subequivalence(f2, A, A, n)
            self.assertEqual(len(schemes), n)
            for i, s in enumerate(schemes):
                self.assertTrue(verify_scheme(f2, s).passed)
                self.assertTrue(s.target.issubset(A))
                for t in schemes[i + 1:]:
                    self.assertTrue(s.target.isdisjoint(t.target))
        self.assertRaises(ValueError, multi_subequivalence, f2, A, A, 0)
        self.assertRaises(HypothesisMismatch, multi_subequivalence, f2, A,
                          clopen(f2, '[aa]'), 2)


class TestWeakParadoxical(unittest.TestCase):

    def test_f2_whole_into_cylinder(self):
        f2 = builtin_action('f2_boundary')
        result = check_weak_paradoxical(f2, f2.space.whole, clopen(f2, '[a]'))
        self.assertTrue(isinstance(result, SubequivalenceScheme))
        self.assertTrue(verify_scheme(f2, result).passed)

    def test_product_not_covered(self):
        f2 = builtin_action('f2_boundary')
        product = builtin_action('product_with_trivial', (f2, full_shift(2)))
        result = check_weak_paradoxical(product, product.space.whole, clopen(product, '[a0]'))
        self.assertTrue(isinstance(result, NotCovered))
        self.assertEqual(result.uncovered, clopen(product, '[a1]|[A1]|[b1]|[B1]'))

    def test_empty_sets(self):
        swap = bit_swap()
        result = check_weak_paradoxical(swap, swap.space.empty, clopen(swap, '[0]'))
        self.assertEqual(result.pieces, ())
        result = check_weak_paradoxical(swap, clopen(swap, '[0]'), swap.space.empty)
        self.assertTrue(isinstance(result, NotCovered))


class TestPropertyChecks(unittest.TestCase):

    def test_n_filling(self):
        swap = bit_swap()
        report = check_n_filling(swap, 2, 1)
        self.assertEqual(report.status, 'pass')
        self.assertEqual(report.counts(), {'pass': 3})
        words, found = report.entries[0].witness
        self.assertEqual(words, ((0,), (0,)))
        report = check_n_filling(swap, 2, 2)
        self.assertEqual(report.status, 'fail')
        self.assertRaises(ValueError, check_n_filling, swap, 1, 1)

        f2 = builtin_action('f2_boundary')
        report = check_n_filling(f2, 2, 1)
        self.assertEqual(report.status, 'pass', report.pretty())

    def test_strong_boundary(self):
        swap = bit_swap()
        report = check_strong_boundary(swap, 1)
        self.assertEqual(report.status, 'pass')
        self.assertEqual(len(report.entries), 6)
        report = check_strong_boundary(swap, 2)
        self.assertEqual(report.status, 'fail')
        self.assertRaises(ValueError, check_strong_boundary, swap, 3)

    def test_dynamical_comparison(self):
        swap = bit_swap()
        report = check_dynamical_comparison(swap, 1)
        self.assertEqual(report.status, 'pass')
        self.assertEqual(report.counts(), {'vacuous': 7, 'pass': 2})
        for entry in report.entries:
            if entry.status == 'pass':
                self.assertTrue(verify_scheme(swap, entry.witness).passed)
        self.assertTrue(report.pretty().startswith('dynamical comparison: pass'))


class TestTowers(unittest.TestCase):

    def test_f2_tower(self):
        f2 = builtin_action('f2_boundary')
        T = [(), f2.parse_word('ga')]
        tower = find_open_tower(f2, T, clopen(f2, '[a]'))
        self.assertEqual(format_clopen(tower.W), '[ab]|[aB]')
        self.assertTrue(verify_tower(f2, tower))

    def test_bit_swap_tower(self):
        swap = bit_swap()
        tower = find_open_tower(swap, [(), swap.parse_word('s')], swap.space.whole)
        self.assertEqual(format_clopen(tower.W), '[0]')
        result = find_open_tower(swap, [(), swap.parse_word('s'), swap.parse_word('s s')],
                                 swap.space.whole)
        self.assertTrue(isinstance(result, NotFound))
        self.assertRaises(ValueError, find_open_tower, swap, [], swap.space.whole)


if __name__ == '__main__':
    unittest.main()
