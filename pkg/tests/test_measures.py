#!/usr/bin/env python
"""
This file contains tests for invariant contents and their infeasibility
certificates.
"""
import logging
import unittest
from fractions import Fraction

from cantordyn.space import full_shift, parse_clopen, DepthTooSmall
from cantordyn.action import builtin_action
from cantordyn.measures import (invariant_probability_measure,
                                invariant_content_normalized, state_on_type_element,
                                evaluate_content, optimize_content, minimal_depth,
                                InvariantContent, InfeasibilityCertificate,
                                Normalization, DepthExceeded)
from cantordyn.typesemigroup import parse_type, evaluate_type

LOGGER = logging.getLogger(__name__)


def bit_swap():
    return builtin_action('bit_permutation', ([1, 0],))


class TestInvariantProbability(unittest.TestCase):

    def test_bit_swap_uniform(self):
        action = bit_swap()
        for depth in range(1, 5):
            mu = invariant_probability_measure(action, depth)
            self.assertTrue(isinstance(mu, InvariantContent),
                            'No content found at depth {}'.format(depth))
            for cell in action.space.cylinders(depth):
                self.assertEqual(mu.values[cell], Fraction(1, 2 ** depth))
            self.assertEqual(mu.mass(), 1)
            self.assertTrue(mu.check(action))

    def test_f2_boundary_infeasible(self):
        action = builtin_action('f2_boundary')
        for depth in (2, 3):
            cert = invariant_probability_measure(action, depth)
            self.assertTrue(isinstance(cert, InfeasibilityCertificate),
                            'Unexpected content at depth {}'.format(depth))
            self.assertTrue(cert.replay(action))

    def test_product_infeasible(self):
        f2 = builtin_action('f2_boundary')
        action = builtin_action('product_with_trivial', (f2, full_shift(2)))
        cert = invariant_probability_measure(action, 2)
        self.assertTrue(isinstance(cert, InfeasibilityCertificate))
        self.assertTrue(cert.replay(action))

    def test_tampered_certificate(self):
        action = builtin_action('f2_boundary')
        cert = invariant_probability_measure(action, 2)
        flipped = InfeasibilityCertificate(cert.depth, cert.normalization,
                                           dict((k, -v) for k, v in cert.multipliers.items()))
        self.assertFalse(flipped.replay(action))
        unknown = InfeasibilityCertificate(cert.depth, cert.normalization, {'bogus': 1})
        self.assertFalse(unknown.replay(action))
        # a certificate for the paradoxical action says nothing about the swap
        self.assertFalse(cert.replay(bit_swap()))

    def test_minimal_depth(self):
        self.assertEqual(minimal_depth(bit_swap()), 1)
        f2 = builtin_action('f2_boundary')
        self.assertEqual(minimal_depth(f2), 2)
        self.assertRaises(DepthTooSmall, invariant_probability_measure, f2, 1)


class TestNormalizedContent(unittest.TestCase):

    def test_normalized_on_set(self):
        action = bit_swap()
        O = parse_clopen(action.space, '[0]')
        mu = invariant_content_normalized(action, O, 2)
        self.assertTrue(isinstance(mu, InvariantContent))
        for cell in action.space.cylinders(2):
            self.assertEqual(mu.values[cell], Fraction(1, 2))
        self.assertEqual(mu.evaluate(O), 1)
        self.assertTrue(mu.check(action))

    def test_whole_space_normalization(self):
        action = bit_swap()
        mu = invariant_content_normalized(action, action.space.whole, 2)
        self.assertEqual(mu.mass(), 1)
        self.assertRaises(ValueError, invariant_content_normalized, action,
                          action.space.empty, 2)

    def test_normalized_infeasible(self):
        action = builtin_action('f2_boundary')
        O = parse_clopen(action.space, '[a]')
        cert = invariant_content_normalized(action, O, 2)
        self.assertTrue(isinstance(cert, InfeasibilityCertificate))
        self.assertTrue(cert.replay(action))

    def test_state_on_type_element(self):
        action = bit_swap()
        y = parse_type(action.space, '2*[0]')
        mu = state_on_type_element(action, y, 2)
        self.assertTrue(isinstance(mu, InvariantContent))
        self.assertEqual(evaluate_type(mu, y), 1)
        self.assertRaises(ValueError, state_on_type_element, action,
                          parse_type(action.space, '0'), 2)


class TestEvaluateContent(unittest.TestCase):

    def setUp(self):
        self.action = bit_swap()
        self.mu = invariant_probability_measure(self.action, 2)

    def test_values(self):
        space = self.action.space
        cases = [('[0]', Fraction(1, 2)),
                 ('[01]|[1]', Fraction(3, 4)),
                 ('[]', Fraction(1)),
                 ('empty', Fraction(0))]
        for text, target in cases:
            self.assertEqual(evaluate_content(self.mu, parse_clopen(space, text)), target)
        self.assertEqual(self.mu.value((1,)), Fraction(1, 2))

    def test_depth_exceeded(self):
        space = self.action.space
        self.assertRaises(DepthExceeded, evaluate_content, self.mu,
                          parse_clopen(space, '[000]'))
        self.assertRaises(DepthExceeded, self.mu.value, (0, 0, 0))

    def test_check_detects_bad_values(self):
        values = dict(self.mu.values)
        values[(0, 0)] += Fraction(1, 8)
        values[(0, 1)] -= Fraction(1, 8)
        bad = InvariantContent(self.action.space, 2, values, self.mu.normalization)
        self.assertFalse(bad.check(self.action))


class TestOptimizeContent(unittest.TestCase):

    def test_minimize_cell(self):
        action = bit_swap()
        result = optimize_content(action, 2, Normalization('probability'),
                                  lambda c: 1 if c == (0, 0) else 0)
        mu, value = result
        self.assertEqual(value, 0)
        self.assertEqual(mu.values[(1, 0)], 0)
        self.assertTrue(mu.check(action))

    def test_infeasible(self):
        action = builtin_action('f2_boundary')
        result = optimize_content(action, 2, Normalization('probability'), lambda c: 0)
        self.assertTrue(isinstance(result, InfeasibilityCertificate))


if __name__ == '__main__':
    unittest.main()
