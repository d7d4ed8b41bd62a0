#!/usr/bin/env python
"""
This file contains tests for step functions and the algebraic crossed
product.
"""
import logging
import unittest
from fractions import Fraction

import numpy as np

from cantordyn.space import parse_clopen
from cantordyn.action import builtin_action, identity_exchange
from cantordyn.comparison import (SubequivalenceScheme, ParadoxicalWitness,
                                  check_paradoxical, compose_schemes)
from cantordyn.crossed import (StepFunction, AlgebraElement, unit, translate,
                               positive_part, expectation, scaling_element_from_scheme,
                               isometry_from_scaling, cuntz_witness_from_scheme,
                               paradoxical_cuntz_pair, SchemeInvalid, GeometryViolated,
                               NotIndicator, NotScaling)

from . import random_clopen, random_scheme

LOGGER = logging.getLogger(__name__)


def bit_swap():
    return builtin_action('bit_permutation', ([1, 0],))


def scheme(action, source, target, pieces):
    space = action.space
    return SubequivalenceScheme(parse_clopen(space, source), parse_clopen(space, target),
                                [(space.parse_word(p), action.parse_word(w))
                                 for p, w in pieces])


class TestStepFunction(unittest.TestCase):

    def setUp(self):
        self.space = bit_swap().space

    def indicator(self, text, value=1):
        return StepFunction.indicator(parse_clopen(self.space, text), value)

    def test_canonical_terms(self):
        f = self.indicator('[0]') + self.indicator('[1]')
        self.assertEqual(f, StepFunction.constant(self.space, 1))
        self.assertEqual(f.format(), '1*[]')
        g = self.indicator('[0]') + self.indicator('[01]', 2)
        self.assertEqual(g.terms, {(0, 0): 1, (0, 1): 3})
        self.assertTrue((g - g).is_zero)
        self.assertEqual(StepFunction.constant(self.space, '1/2').format(), '1/2*[]')

    def test_values(self):
        g = self.indicator('[0]') + self.indicator('[01]', 2)
        self.assertEqual(g.value((0, 1)), 3)
        self.assertEqual(g.value((0, 1, 1)), 3)
        self.assertEqual(g.value((1,)), 0)
        self.assertRaises(ValueError, g.value, (0,))
        self.assertEqual(g.support, parse_clopen(self.space, '[0]'))
        self.assertTrue(g.is_nonnegative())
        self.assertFalse(g.is_indicator)
        self.assertTrue(self.indicator('[0]').is_indicator)

    def test_arithmetic(self):
        f = self.indicator('[0]')
        self.assertEqual(f * 3, self.indicator('[0]', 3))
        self.assertEqual(f * self.indicator('[01]|[1]'), self.indicator('[01]'))
        g = self.indicator('[0]') + self.indicator('[01]', 2)
        self.assertEqual(positive_part(g, 2), self.indicator('[01]'))
        self.assertEqual(positive_part(-g), StepFunction(self.space))
        self.assertEqual(g.map(lambda v: v * v), self.indicator('[00]') +
                         self.indicator('[01]', 9))

    def test_translate(self):
        action = bit_swap()
        s = action.generators[0]
        self.assertEqual(translate(s, self.indicator('[0]')), self.indicator('[1]'))
        f2 = builtin_action('f2_boundary')
        ga = f2.generators[0]
        f = StepFunction.indicator(parse_clopen(f2.space, '[a]'), Fraction(1, 3))
        self.assertEqual(translate(ga, f),
                         StepFunction.indicator(parse_clopen(f2.space, '[aa]'), Fraction(1, 3)))


class TestAlgebra(unittest.TestCase):

    def setUp(self):
        self.action = bit_swap()
        self.space = self.action.space
        self.s = self.action.generators[0]
        self.u = AlgebraElement.from_function(StepFunction.constant(self.space, 1), self.s)

    def f(self, text, value=1):
        return AlgebraElement.from_function(
            StepFunction.indicator(parse_clopen(self.space, text), value))

    def test_unitary(self):
        one = unit(self.space)
        self.assertEqual(self.u * self.u, one)
        self.assertEqual(self.u.star(), self.u)
        self.assertEqual(self.u * self.u.star(), one)
        self.assertTrue(expectation(self.u).is_zero)
        self.assertEqual(expectation(one), StepFunction.constant(self.space, 1))

    def test_covariance(self):
        conj = self.u * self.f('[0]') * self.u.star()
        self.assertEqual(conj, self.f('[1]'))
        self.assertEqual(expectation(conj), StepFunction.indicator(
            parse_clopen(self.space, '[1]')))

    def test_star(self):
        a = self.f('[0]') * self.u
        target = AlgebraElement.from_function(
            StepFunction.indicator(parse_clopen(self.space, '[1]')), self.s)
        # (1_[0] u_s)* = u_s 1_[0] = 1_[1] u_s
        self.assertEqual(a.star(), target)
        self.assertEqual(a.star().star(), a)

    def test_algebra_laws(self):
        a = self.f('[0]') * self.u + self.f('[]', 2)
        b = self.f('[1]', Fraction(1, 2)) * self.u + self.f('[01]')
        c = self.u + self.f('[00]', -1)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual((a * b).star(), b.star() * a.star())
        self.assertTrue((a - a).is_zero)
        self.assertEqual(expectation(AlgebraElement(self.space)), StepFunction(self.space))
        self.assertIn(identity_exchange(self.space), (a * a.star()).terms)


class TestScaling(unittest.TestCase):

    def test_scaling_and_isometry(self):
        f2 = builtin_action('f2_boundary')
        s = scheme(f2, '[a]', '[a]', [('a', 'ga gb')])
        x = scaling_element_from_scheme(f2, s)
        self.assertTrue(x.passed, repr(x))
        v = isometry_from_scaling(x.element)
        self.assertTrue(v.passed, repr(v))
        rng = v.extra['range']
        self.assertEqual(rng * rng, rng)
        self.assertNotEqual(rng, unit(f2.space))

        guards = (parse_clopen(f2.space, '[aa]'), parse_clopen(f2.space, '[ab]'))
        self.assertTrue(scaling_element_from_scheme(f2, s, guards).passed)
        guards = (parse_clopen(f2.space, '[aa]'), parse_clopen(f2.space, '[aa]'))
        self.assertRaises(GeometryViolated, scaling_element_from_scheme, f2, s, guards)

    def test_errors(self):
        swap = bit_swap()
        s = scheme(swap, '[0]', '[1]', [('0', 's')])
        self.assertRaises(GeometryViolated, scaling_element_from_scheme, swap, s)
        s = scheme(swap, '[]', '[]', [('0', 's'), ('1', 's')])
        self.assertRaises(NotScaling, scaling_element_from_scheme, swap, s)
        f2 = builtin_action('f2_boundary')
        s = scheme(f2, '[a]', '[aa]', [('a', 'ga gb')])
        self.assertRaises(SchemeInvalid, scaling_element_from_scheme, f2, s)

        s = scheme(f2, '[a]', '[a]', [('a', 'ga gb')])
        x = scaling_element_from_scheme(f2, s).element
        self.assertRaises(NotIndicator, isometry_from_scaling, x * 2)
        self.assertRaises(NotScaling, isometry_from_scaling, unit(f2.space))

        # x*x = 1_[0] and xx* = 1_[1] are orthogonal
        u = AlgebraElement.from_function(StepFunction.constant(swap.space, 1),
                                         swap.generators[0])
        x = AlgebraElement.from_function(
            StepFunction.indicator(parse_clopen(swap.space, '[1]'))) * u
        self.assertEqual(x.star() * x, AlgebraElement.from_function(
            StepFunction.indicator(parse_clopen(swap.space, '[0]'))))
        self.assertRaises(NotScaling, isometry_from_scaling, x)


class TestCuntz(unittest.TestCase):

    def test_witness_from_scheme(self):
        swap = bit_swap()
        r = cuntz_witness_from_scheme(swap, scheme(swap, '[0]', '[1]', [('0', 's')]))
        self.assertTrue(r.passed)
        f2 = builtin_action('f2_boundary')
        r = cuntz_witness_from_scheme(f2, scheme(f2, '[a]', '[aa]', [('a', 'ga')]))
        self.assertTrue(r.passed)

    def test_random_schemes(self):
        f2 = builtin_action('f2_boundary')
        prng = np.random.RandomState(99)
        for _ in range(100):
            s = random_scheme(prng, f2, random_clopen(prng, f2.space, 2))
            if prng.randint(2):
                s = compose_schemes(f2, s, random_scheme(prng, f2, s.target))
            r = cuntz_witness_from_scheme(f2, s)
            self.assertTrue(r.passed, '{}: {!r}'.format(s, r))

    def test_paradoxical_pair(self):
        f2 = builtin_action('f2_boundary')
        A = parse_clopen(f2.space, '[a]')
        w = check_paradoxical(f2, A)
        r1, r2, diagnostics = paradoxical_cuntz_pair(f2, w)
        self.assertTrue(r1.passed)
        self.assertTrue(r2.passed)
        self.assertTrue(all(ok for _, ok in diagnostics), diagnostics)
        bad = ParadoxicalWitness(A, w.s1, w.s1)
        self.assertRaises(SchemeInvalid, paradoxical_cuntz_pair, f2, bad)


if __name__ == '__main__':
    unittest.main()
