#!/usr/bin/env python
"""
This file contains tests for type semigroup elements and order
witnesses.
"""
import logging
import unittest
from fractions import Fraction

import numpy as np

from cantordyn.space import full_shift, parse_clopen, BadLiteral
from cantordyn.action import builtin_action
from cantordyn.measures import invariant_probability_measure
from cantordyn.comparison import (SearchBounds, NotFound, Refuted, ParadoxicalWitness,
                                  HypothesisMismatch, check_paradoxical, verify_paradoxical)
from cantordyn.typesemigroup import (TypeElement, OrderWitness, parse_type, format_type,
                                     canonical_type_element, indicator, add, evaluate_type,
                                     search_order, verify_order_witness, identity_witness,
                                     compose_order_witnesses, add_order_witnesses,
                                     witness_from_paradoxical, paradoxical_from_witness,
                                     multiple_order_witness, fragment_elements,
                                     check_purely_infinite_fragment,
                                     check_almost_unperforation_instances)

from . import random_clopen

LOGGER = logging.getLogger(__name__)


def bit_swap():
    return builtin_action('bit_permutation', ([1, 0],))


class TestTypeElements(unittest.TestCase):

    def test_canonical_form(self):
        space = full_shift(2)
        f = canonical_type_element(space, [((0,), 1), ((), 1)])
        self.assertEqual(format_type(f), '[] + [0]')
        self.assertEqual(f.height, 2)
        self.assertEqual(f.value_on((0, 1)), 2)
        self.assertEqual(f.value_on((1,)), 1)
        self.assertRaises(ValueError, canonical_type_element, space, [((0,), -1)])

    def test_parse_format(self):
        f2 = builtin_action('f2_boundary')
        cases = [('2*[a] + [b]|[B]', '[a]|[b]|[B] + [a]'),
                 ('[aa] + [ab] + [aB]', '[a]'),
                 ('3 * [a]', '[a] + [a] + [a]'),
                 ('0', '0')]
        for text, target in cases:
            self.assertEqual(format_type(parse_type(f2.space, text)), target)
        self.assertTrue(parse_type(f2.space, '0').is_zero)
        for text in ['2*[x]', '[a] +', 'a']:
            self.assertRaises(BadLiteral, parse_type, f2.space, text)

    def test_add_and_order(self):
        space = full_shift(2)
        zero, one = parse_clopen(space, '[0]'), parse_clopen(space, '[1]')
        self.assertEqual(add(indicator(zero), indicator(one)), indicator(space.whole))
        self.assertEqual(indicator(zero) + indicator(zero), indicator(zero).scale(2))
        self.assertTrue(indicator(zero).le(indicator(space.whole)))
        self.assertFalse(indicator(zero).scale(2).le(indicator(space.whole)))
        self.assertTrue(indicator(zero).scale(0).is_zero)

    def test_evaluate_type(self):
        action = bit_swap()
        mu = invariant_probability_measure(action, 2)
        f = parse_type(action.space, '2*[0] + [1]')
        self.assertEqual(evaluate_type(mu, f), Fraction(3, 2))

    def test_fragment_elements(self):
        elements = fragment_elements(full_shift(2), 1)
        self.assertEqual(len(elements), 9)
        self.assertEqual(len(set(elements)), 9)
        self.assertTrue(elements[0].is_zero)


class TestSearchOrder(unittest.TestCase):

    def test_bit_swap(self):
        action = bit_swap()
        space = action.space
        f = parse_type(space, '[0]')
        g = parse_type(space, '[1]')
        w = search_order(action, f, g)
        self.assertTrue(isinstance(w, OrderWitness))
        self.assertEqual(w.parts, (((0,), 1, ((0, 1),)),))
        self.assertTrue(verify_order_witness(action, f, g, w, exact=True).passed)

        result = search_order(action, parse_type(space, '[]'), g)
        self.assertTrue(isinstance(result, Refuted))
        self.assertEqual(result.values['target'], Fraction(1, 2))

        result = search_order(action, f, parse_type(space, '0'))
        self.assertTrue(isinstance(result, Refuted))

    def test_pointwise_order(self):
        action = bit_swap()
        f = parse_type(action.space, '[01]')
        g = parse_type(action.space, '[0]')
        self.assertEqual(search_order(action, f, g), identity_witness(f))

    def test_f2_doubling(self):
        f2 = builtin_action('f2_boundary')
        f = parse_type(f2.space, '2*[a]')
        g = parse_type(f2.space, '[a]')
        w = search_order(f2, f, g)
        self.assertTrue(isinstance(w, OrderWitness))
        self.assertTrue(verify_order_witness(f2, f, g, w).passed)

    def test_not_searched(self):
        f2 = builtin_action('f2_boundary')
        result = search_order(f2, parse_type(f2.space, '5*[a]'), parse_type(f2.space, '[b]'))
        self.assertTrue(isinstance(result, NotFound))
        self.assertEqual(result.reason, 'multiplicity')
        result = search_order(f2, parse_type(f2.space, '[a]'), parse_type(f2.space, '0'))
        self.assertTrue(isinstance(result, NotFound))


class TestVerifyOrderWitness(unittest.TestCase):

    def test_violated_clauses(self):
        action = bit_swap()
        space = action.space
        w = OrderWitness([((0,), 1, ((0, 1),))])
        cases = [(parse_type(space, '[1]'), parse_type(space, '[1]'), False, 'decomposition'),
                 (parse_type(space, '[0]'), parse_type(space, '[0]'), False,
                  'pointwise_bound'),
                 (parse_type(space, '[0]'), parse_type(space, '[]'), True, 'pointwise_bound')]
        for f, g, exact, clause in cases:
            report = verify_order_witness(action, f, g, w, exact=exact)
            self.assertFalse(report.passed)
            self.assertEqual(report.clause, clause)
        # the same witness is fine for a larger g
        self.assertTrue(verify_order_witness(action, parse_type(space, '[0]'),
                                             parse_type(space, '[]'), w).passed)

    def test_invalid_parts(self):
        action = bit_swap()
        f = parse_type(action.space, '[0]')
        w = OrderWitness([((0,), 1, ((3, 1),))])
        self.assertEqual(verify_order_witness(action, f, f, w).clause, 'decomposition')


class TestWitnessConstructions(unittest.TestCase):

    def setUp(self):
        self.f2 = builtin_action('f2_boundary')
        self.A = parse_clopen(self.f2.space, '[a]')
        self.paradoxical = check_paradoxical(self.f2, self.A)

    def test_paradoxical_round_trip(self):
        double, one, w = witness_from_paradoxical(self.f2, self.paradoxical)
        self.assertEqual(double, indicator(self.A).scale(2))
        self.assertTrue(verify_order_witness(self.f2, double, one, w).passed)
        back = paradoxical_from_witness(self.f2, self.A, w)
        self.assertTrue(isinstance(back, ParadoxicalWitness))
        self.assertTrue(verify_paradoxical(self.f2, back).passed)
        self.assertTrue(back.O1.isdisjoint(back.O2))
        self.assertRaises(HypothesisMismatch, paradoxical_from_witness, self.f2, self.A,
                          identity_witness(one))

    def test_multiples(self):
        double, one, w = witness_from_paradoxical(self.f2, self.paradoxical)
        for m in range(4):
            wm = multiple_order_witness(self.f2, one, w, m)
            self.assertTrue(verify_order_witness(self.f2, one.scale(m), one, wm).passed,
                            'No witness for {}[1_A] <= [1_A]'.format(m))
        self.assertRaises(ValueError, multiple_order_witness, self.f2, one, w, -1)

    def test_compose_and_add(self):
        action = bit_swap()
        space = action.space
        f0, f1 = parse_type(space, '[0]'), parse_type(space, '[1]')
        w1 = OrderWitness([((0,), 1, ((0, 1),))])
        w2 = OrderWitness([((1,), 1, ((0, 1),))])
        w = compose_order_witnesses(action, w1, w2)
        self.assertTrue(verify_order_witness(action, f0, f0, w, exact=True).passed)
        self.assertRaises(HypothesisMismatch, compose_order_witnesses, action, w1, w1)
        w = add_order_witnesses(w1, w2)
        whole = parse_type(space, '[]')
        self.assertTrue(verify_order_witness(action, whole, whole, w, exact=True).passed)


class TestFragmentChecks(unittest.TestCase):

    def test_purely_infinite_bit_swap(self):
        action = bit_swap()
        report = check_purely_infinite_fragment(action, 1)
        self.assertEqual(report.status, 'fail')
        self.assertEqual(report.counts(), {'pass': 1, 'fail': 8})
        for entry in report.entries:
            if entry.status == 'fail':
                self.assertTrue(isinstance(entry.witness, Refuted))
        self.assertRaises(ValueError, check_purely_infinite_fragment, action, 0)

    def test_purely_infinite_f2(self):
        f2 = builtin_action('f2_boundary')
        report = check_purely_infinite_fragment(f2, 1)
        self.assertEqual(report.status, 'pass', report.counts())
        self.assertEqual(len(report.entries), 81)
        for entry in report.entries:
            double, f, w = entry.witness
            self.assertEqual(double, f.scale(2))
            self.assertTrue(verify_order_witness(f2, double, f, w).passed, entry.label)

    def test_unperforation(self):
        action = bit_swap()
        space = action.space
        triples = [(parse_type(space, '[0]'), parse_type(space, '[1]'), 1),
                   (parse_type(space, '0'), parse_type(space, '[1]'), 2)]
        report = check_almost_unperforation_instances(action, triples)
        self.assertEqual([e.status for e in report.entries], ['vacuous', 'vacuous'])
        self.assertEqual(report.status, 'pass')
        self.assertRaises(ValueError, check_almost_unperforation_instances, action,
                          [(triples[0][0], triples[0][1], 0)])

    def test_unperforation_refuted_premise_above_cap(self):
        action = bit_swap()
        f = parse_type(action.space, '[]')
        g = parse_type(action.space, '[0]')
        result = search_order(action, f.scale(6), g.scale(5))
        self.assertTrue(isinstance(result, Refuted))
        self.assertEqual(result.values['target'], Fraction(5, 12))
        report = check_almost_unperforation_instances(action, [(f, g, 5)])
        self.assertEqual(report.entries[0].status, 'vacuous')
        self.assertTrue(isinstance(report.entries[0].witness, Refuted))

    def test_unperforation_f2(self):
        f2 = builtin_action('f2_boundary')
        triples = [(parse_type(f2.space, '[a]'), parse_type(f2.space, '[b]'), 1)]
        report = check_almost_unperforation_instances(f2, triples)
        self.assertEqual(report.entries[0].status, 'pass')
        f, g, w = report.entries[0].witness
        self.assertTrue(verify_order_witness(f2, f, g, w).passed)

    def test_unperforation_sampled(self):
        f2 = builtin_action('f2_boundary')
        prng = np.random.RandomState(7)
        triples = [(indicator(random_clopen(prng, f2.space, 2)),
                    indicator(random_clopen(prng, f2.space, 2)), int(prng.randint(1, 4)))
                   for _ in range(50)]
        report = check_almost_unperforation_instances(f2, triples, SearchBounds(2, 3, 10 ** 4))
        self.assertEqual(len(report.entries), 50)
        self.assertNotIn('fail', report.counts())
        for entry in report.entries:
            if entry.status == 'pass':
                f, g, w = entry.witness
                self.assertTrue(verify_order_witness(f2, f, g, w).passed, entry.label)


if __name__ == '__main__':
    unittest.main()
