#!/usr/bin/env python
"""
This module implements the algebraic part of the crossed product of
C(X) by the acting group, restricted to finite sums ``sum_t b_t u_t``
whose coefficients `b_t` are locally constant rational functions.

Products follow the covariance rule
``(f u_s)(h u_t) = f (s.h) u_{st}``, where ``s.h = h o s^-1`` is the
translated step function, and the involution is
``(f u_t)* = (t^-1.f) u_{t^-1}``. All identities are decided exactly.

"""

import logging
from fractions import Fraction

from .space import ClopenSet
from .action import identity_exchange, compose, invert
from .comparison import verify_scheme, verify_paradoxical
from .utils import to_fraction, format_fraction, partition

LOGGER = logging.getLogger(__name__)

__all__ = ['StepFunction', 'AlgebraElement', 'AlgebraWitness', 'algebra_multiply',
           'algebra_star', 'expectation', 'unit', 'translate', 'positive_part',
           'scaling_element_from_scheme', 'isometry_from_scaling',
           'cuntz_witness_from_scheme', 'paradoxical_cuntz_pair',
           'CrossedAlgebraError', 'SchemeInvalid', 'GeometryViolated',
           'NotIndicator', 'NotScaling', 'ActionMismatch']

ZERO = Fraction(0)
ONE = Fraction(1)


class CrossedAlgebraError(Exception):
    pass


class SchemeInvalid(CrossedAlgebraError):
    pass


class GeometryViolated(CrossedAlgebraError):
    pass


class NotIndicator(CrossedAlgebraError):
    pass


class NotScaling(CrossedAlgebraError):
    pass


class ActionMismatch(CrossedAlgebraError):
    pass


def _cell_values(space, items, depth):
    cells = {}
    for w, v in items:
        for c in space.extensions(w, depth):
            cells[c] = cells.get(c, ZERO) + v
    return cells


def _merge_cells(space, cells):
    """Merge sibling cells carrying equal values, bottom-up, and drop
    zeros."""
    by_length = partition(len, [c for c, v in cells.items() if v != 0])
    values = dict((c, v) for c, v in cells.items() if v != 0)
    top = max(by_length.keys(), default=0)
    for length in range(top, 0, -1):
        kept = []
        for parent, children in sorted(partition(lambda w: w[:-1],
                                                 by_length.get(length, [])).items()):
            vals = set(values[c] for c in children)
            letters = set(c[-1] for c in children)
            if len(vals) == 1 and letters == set(space.successors(parent)):
                values[parent] = vals.pop()
                for c in children:
                    del values[c]
                by_length.setdefault(length - 1, []).append(parent)
            else:
                kept.extend(children)
        by_length[length] = kept
    return values


class StepFunction(object):
    """A locally constant rational function on an SFT space.

    Overlapping terms are added. The canonical form keeps nonzero values
    on an antichain of cylinders with equal-valued siblings merged, so
    two step functions are equal exactly when their terms are.

    Parameters
    ----------
    space : SftSpace
    terms : iterable of (tuple, number) or dict

    """

    def __init__(self, space, terms=()):
        if isinstance(terms, dict):
            terms = terms.items()
        items = [(space.check_word(w), to_fraction(v)) for w, v in terms]
        depth = max([0] + [len(w) for w, _ in items])
        self.space = space
        self.terms = _merge_cells(space, _cell_values(space, items, depth))

    @classmethod
    def indicator(cls, A, value=ONE):
        return cls(A.space, [(c, value) for c in A.cylinders])

    @classmethod
    def constant(cls, space, value):
        return cls(space, [((), value)])

    def __eq__(self, other):
        return (isinstance(other, StepFunction) and self.space == other.space
                and self.terms == other.terms)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return 'StepFunction({})'.format(self.format())

    def format(self):
        if not self.terms:
            return '0'
        fmt = self.space.format_word
        return ' + '.join('{}*[{}]'.format(format_fraction(v), fmt(c))
                          for c, v in sorted(self.terms.items()))

    @property
    def is_zero(self):
        return len(self.terms) == 0

    @property
    def max_length(self):
        return max([0] + [len(c) for c in self.terms])

    @property
    def support(self):
        return ClopenSet(self.space, list(self.terms))

    @property
    def is_indicator(self):
        return all(v == ONE for v in self.terms.values())

    def cells(self, depth):
        return _cell_values(self.space, self.terms.items(), depth)

    def value(self, word):
        """Value on a cylinder on which the function is constant."""
        word = tuple(word)
        for i in range(len(word) + 1):
            v = self.terms.get(word[:i])
            if v is not None:
                return v
        if any(c[:len(word)] == word for c in self.terms):
            raise ValueError('Not constant on [{}]'.format(self.space.format_word(word)))
        return ZERO

    def is_nonnegative(self):
        return all(v >= 0 for v in self.terms.values())

    def __add__(self, other):
        _check_space(self, other)
        return StepFunction(self.space, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = to_fraction(c)
        return StepFunction(self.space, [(w, c * v) for w, v in self.terms.items()])

    def __mul__(self, other):
        if not isinstance(other, StepFunction):
            return self.scale(other)
        _check_space(self, other)
        depth = max(self.max_length, other.max_length)
        a = self.cells(depth)
        b = other.cells(depth)
        return StepFunction(self.space, [(c, v * b[c]) for c, v in a.items() if c in b])

    def map(self, func):
        """Apply `func` pointwise."""
        depth = self.max_length
        cells = self.cells(depth)
        return StepFunction(self.space, [(w, func(cells.get(w, ZERO)))
                                         for w in self.space.cylinders(depth)])


def _check_space(a, b):
    if a.space != b.space:
        raise ActionMismatch('Operands live on different spaces')


def translate(t, f):
    """The step function ``t.f = f o t^-1``, i.e. the value of `f` at a
    point x is moved to t(x)."""
    _check_space(t, f)
    terms = []
    for w, v in f.terms.items():
        terms.extend((d, v) for d in t.image_words(w))
    return StepFunction(f.space, terms)


def positive_part(f, eps=0):
    """Pointwise ``max(f - eps, 0)``."""
    eps = to_fraction(eps)
    return f.map(lambda v: max(v - eps, ZERO))


class AlgebraElement(object):
    """A finite sum ``sum_t b_t u_t``.

    Parameters
    ----------
    space : SftSpace
    terms : dict
        Map from group elements (as :class:`PrefixExchange`) to their
        :class:`StepFunction` coefficients

    """

    def __init__(self, space, terms=None):
        self.space = space
        self.terms = {}
        for t, b in (terms or {}).items():
            if t.space != space or b.space != space:
                raise ActionMismatch('Term lives on a different space')
            if not b.is_zero:
                self.terms[t] = b

    @classmethod
    def from_function(cls, f, t=None):
        if t is None:
            t = identity_exchange(f.space)
        return cls(f.space, {t: f})

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.space == other.space
                and self.terms == other.terms)

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return 'AlgebraElement({} terms)'.format(len(self.terms))

    def format(self):
        if not self.terms:
            return '0'
        return ' + '.join('({}) u[{}]'.format(b.format(), t.format_rules())
                          for t, b in sorted(self.terms.items()))

    @property
    def is_zero(self):
        return len(self.terms) == 0

    def __add__(self, other):
        if self.space != other.space:
            raise ActionMismatch('Operands live on different spaces')
        terms = dict(self.terms)
        for t, b in other.terms.items():
            terms[t] = terms[t] + b if t in terms else b
        return AlgebraElement(self.space, terms)

    def __neg__(self):
        return AlgebraElement(self.space, dict((t, -b) for t, b in self.terms.items()))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return algebra_multiply(self, other)
        return AlgebraElement(self.space, dict((t, b.scale(other))
                                               for t, b in self.terms.items()))

    def star(self):
        return algebra_star(self)


def unit(space):
    return AlgebraElement.from_function(StepFunction.constant(space, ONE))


def algebra_multiply(a, b):
    """Exact product by ``(f u_s)(h u_t) = f (s.h) u_{st}``."""
    if a.space != b.space:
        raise ActionMismatch('Operands live on different spaces')
    result = AlgebraElement(a.space)
    for s, f in a.terms.items():
        for t, h in b.terms.items():
            term = AlgebraElement(a.space, {compose(s, t): f * translate(s, h)})
            result = result + term
    return result


def algebra_star(a):
    """Involution ``(f u_t)* = (t^-1.f) u_{t^-1}``."""
    result = AlgebraElement(a.space)
    for t, f in a.terms.items():
        t_inv = invert(t)
        result = result + AlgebraElement(a.space, {t_inv: translate(t_inv, f)})
    return result


def expectation(a):
    """Coefficient of the identity element."""
    return a.terms.get(identity_exchange(a.space), StepFunction(a.space))


def _is_projection(p):
    return p == p.star() and p * p == p


class AlgebraWitness(object):
    """An algebra element with the exact identities checked for it.

    Attributes
    ----------
    element : AlgebraElement
    diagnostics : list of (str, bool)

    """

    def __init__(self, element, diagnostics, extra=None):
        self.element = element
        self.diagnostics = list(diagnostics)
        self.extra = extra or {}

    @property
    def passed(self):
        return all(ok for _, ok in self.diagnostics)

    def __repr__(self):
        return 'AlgebraWitness({})'.format(', '.join(
            '{}: {}'.format(n, 'ok' if ok else 'FAILED') for n, ok in self.diagnostics))


def _translated_indicators(action, s):
    """``sum_i 1_{t_i p_i} u_{t_i}`` for the pieces of a scheme."""
    space = action.space
    terms = AlgebraElement(space)
    for p, w in s.pieces:
        t = action.element(w)
        image = t.apply_word(p)
        terms = terms + AlgebraElement.from_function(StepFunction.indicator(image), t)
    return terms


def _check_scheme(action, s):
    if s.space != action.space:
        raise ActionMismatch('Scheme and action live on different spaces')
    report = verify_scheme(action, s)
    if not report:
        raise SchemeInvalid('Scheme does not verify: {} {}'.format(report.clause, report.detail))


def scaling_element_from_scheme(action, s, guards=None):
    """Scaling element ``x = sum_i u_{t_i} 1_{p_i}`` of a scheme whose
    translated pieces stay inside its source.

    Parameters
    ----------
    action : Action
    s : SubequivalenceScheme
    guards : (ClopenSet, ClopenSet), optional
        A pair (F, U) with F inside the source and the image inside U

    Returns
    -------
    AlgebraWitness
        With ``x*x = 1_source`` and ``xx* = 1_image`` checked

    Raises
    ------
    SchemeInvalid
    GeometryViolated
        If the image leaves the source or the guards
    NotScaling
        If ``x*x = xx*``

    """
    _check_scheme(action, s)
    image = s.image(action)
    if not image.issubset(s.source):
        raise GeometryViolated('Image {} is not inside the source {}'.format(image, s.source))
    if guards is not None:
        F, U = guards
        if not F.issubset(s.source):
            raise GeometryViolated('Guard {} is not inside the source'.format(F))
        if not image.issubset(U):
            raise GeometryViolated('Image {} is not inside the guard {}'.format(image, U))
    x = _translated_indicators(action, s)
    xsx = x.star() * x
    xxs = x * x.star()
    if xsx == xxs:
        raise NotScaling('x*x equals xx*')
    diagnostics = [
        ('x*x = 1_source', xsx == AlgebraElement.from_function(StepFunction.indicator(s.source))),
        ('xx* = 1_image', xxs == AlgebraElement.from_function(StepFunction.indicator(image))),
        ('(x*x)(xx*) = xx*', xsx * xxs == xxs),
        ('x*x != xx*', True),
    ]
    return AlgebraWitness(x, diagnostics)


def isometry_from_scaling(x):
    """The isometry ``v = x + (1 - x*x)``.

    Raises
    ------
    NotIndicator
        If x*x is not an indicator function
    NotScaling
        If ``x*x = xx*``, if ``(x*x)(xx*) != xx*`` or if ``v*v`` is not
        the unit

    Returns
    -------
    AlgebraWitness
        With ``v*v = 1`` checked and the range projection ``vv*`` in
        ``extra['range']``

    """
    space = x.space
    xsx = x.star() * x
    xxs = x * x.star()
    if xsx == xxs:
        raise NotScaling('x*x equals xx*')
    identity = identity_exchange(space)
    if set(xsx.terms) - {identity} or not expectation(xsx).is_indicator:
        raise NotIndicator('x*x is not an indicator function')
    if xsx * xxs != xxs:
        raise NotScaling('(x*x)(xx*) differs from xx*')
    one = unit(space)
    v = x + (one - xsx)
    if v.star() * v != one:
        raise NotScaling('v*v is not the unit')
    vv = v * v.star()
    diagnostics = [
        ('v*v = 1', True),
        ('vv* projection', _is_projection(vv)),
    ]
    return AlgebraWitness(v, diagnostics, {'range': vv})


def cuntz_witness_from_scheme(action, s):
    """Element r with ``r* 1_target r = 1_source`` built from a scheme.

    Returns
    -------
    AlgebraWitness

    """
    _check_scheme(action, s)
    r = _translated_indicators(action, s)
    g = AlgebraElement.from_function(StepFunction.indicator(s.target))
    f = AlgebraElement.from_function(StepFunction.indicator(s.source))
    diagnostics = [('r* 1_target r = 1_source', r.star() * g * r == f)]
    return AlgebraWitness(r, diagnostics)


def paradoxical_cuntz_pair(action, w):
    """Two witnesses r1, r2 for ``1_A <~ 1_A`` with orthogonal ranges.

    Returns
    -------
    (AlgebraWitness, AlgebraWitness, list of (str, bool))

    """
    report = verify_paradoxical(action, w)
    if not report:
        raise SchemeInvalid('Paradoxical witness does not verify: {}'.format(report.detail))
    r1 = cuntz_witness_from_scheme(action, w.s1)
    r2 = cuntz_witness_from_scheme(action, w.s2)
    a = AlgebraElement.from_function(StepFunction.indicator(w.A))
    cross = r1.element.star() * r2.element
    diagnostics = [
        ('r1* r2 = 0', cross.is_zero),
        ('r1 r1* + r2 r2* <= 1_A', _is_projection(
            r1.element * r1.element.star() + r2.element * r2.element.star())
         and (a * (r1.element * r1.element.star() + r2.element * r2.element.star())
              == r1.element * r1.element.star() + r2.element * r2.element.star())),
    ]
    return r1, r2, diagnostics
