#!/usr/bin/env python
"""
Generic helpers shared by the cantordyn modules: grouping, class
registries, rich comparison, tree-shaped report printing and a
budgeted state-space search.

"""

import logging
from collections import defaultdict, deque

LOGGER = logging.getLogger(__name__)

__all__ = ['partition', 'iter_subclasses', 'ComparableMixin',
           'PrettyPrintTree', 'search', 'SearchBudgetExceeded']


class SearchBudgetExceeded(Exception):
    """Raised by :func:`search` when the expansion budget runs out."""

    def __init__(self, expansions):
        super().__init__('search budget of {} expansions exceeded'
                         .format(expansions))
        self.expansions = expansions


def partition(func, iterable):
    """
    Return a dictionary containing the equivalence classes (actually bags)
    of `iterable`, partioned according to `func`. The value of a key `k` is
    the list of all elements `e` from iterable such that `k = func(e)`.

    Examples
    ========

    Group cylinder words by their parent word:

    >>> partition(lambda w: w[:-1], [(0, 0), (0, 1), (1, 0)])
    {(0,): [(0, 0), (0, 1)], (1,): [(1, 0)]}

    """
    result = defaultdict(list)
    for v in iterable:
        result[func(v)].append(v)
    return dict(result)


def iter_subclasses(cls, _seen=None):
    """
    iter_subclasses(cls)

    Generator over all subclasses of a given class, in depth first order.

    Examples
    --------

    >>> class A(object): pass
    >>> class B(A): pass
    >>> class C(B): pass
    >>> [c.__name__ for c in iter_subclasses(A)]
    ['B', 'C']

    """
    if not isinstance(cls, type):
        raise TypeError('iter_subclasses must be called with '
                        'new-style classes, not %.100r' % cls)
    if _seen is None:
        _seen = set()
    for sub in cls.__subclasses__():
        if sub not in _seen:
            _seen.add(sub)
            yield sub
            for subsub in iter_subclasses(sub, _seen):
                yield subsub


class ComparableMixin(object):
    """
    Mixin class that makes instances comparable in a rich way (i.e. in
    !=, <, <= etc), by just implementing a _cmpkey() method that returns
    a comparable value. Instances are hashed by the same key.

    Examples
    --------

    >>> class Rule(ComparableMixin):
    ...     def __init__(self, u, v):
    ...         self.u, self.v = u, v
    ...     def _cmpkey(self):
    ...         return (self.u, self.v)
    >>> Rule((0,), (1,)) < Rule((1,), (0,))
    True
    >>> Rule((0,), (1,)) == Rule((0,), (1,))
    True

    """

    def _compare(self, other, method):
        try:
            return method(self._cmpkey(), other._cmpkey())
        except (AttributeError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash(self._cmpkey())

    def __lt__(self, other):
        return self._compare(other, lambda s, o: s < o)

    def __le__(self, other):
        return self._compare(other, lambda s, o: s <= o)

    def __eq__(self, other):
        return self._compare(other, lambda s, o: s == o)

    def __ge__(self, other):
        return self._compare(other, lambda s, o: s >= o)

    def __gt__(self, other):
        return self._compare(other, lambda s, o: s > o)

    def __ne__(self, other):
        return self._compare(other, lambda s, o: s != o)


class PrettyPrintTree(object):
    def __init__(self):
        self.stack = []

    def push(self):
        self.stack.append(TreeSymbol())

    def pop(self):
        self.stack.pop()

    def next_item(self):
        assert len(self.stack) > 0
        self.stack[-1].next_item()

    def last_item(self):
        assert len(self.stack) > 0
        self.stack[-1].last_item()

    def __str__(self):
        return ''.join(str(sym) for sym in self.stack)


class TreeSymbol(object):
    def __init__(self):
        self.symbols = [' │  ', ' ├─ ', ' └─ ', '    ']
        self.state = 0

    def next_item(self):
        self.state = 1

    def last_item(self):
        self.state = 2

    def __str__(self):
        sym = self.symbols[self.state]
        if self.state == 1:
            self.state = 0
        elif self.state == 2:
            self.state = 3
        return sym


def depth_first(new_states, states):
    """Combine function for :func:`search` that explores `new_states`
    before the pending ones, preserving their order."""
    states.extendleft(reversed(new_states))
    return states


def search(states, success, expand, combine=depth_first, budget=None):
    """
    Generic state-space search.

    Parameters
    ----------
    states: iterable
        Initial states
    success: callable
        Predicate telling whether a state is a solution
    expand: callable
        Function returning the list of successor states of a state
    combine: callable, optional
        Function merging successor states into the pending states (a
        deque). Defaults to depth first order.
    budget: int or None, optional
        Maximal number of expansions. When exceeded,
        :class:`SearchBudgetExceeded` is raised.

    Returns
    -------
    object or None
        The first state satisfying `success`, or None when the state
        space is exhausted.

    Examples
    --------

    >>> search([0], lambda s: s == 5, lambda s: [s + 1] if s < 9 else [])
    5
    >>> search([0], lambda s: s > 9, lambda s: [s + 1] if s < 9 else []) is None
    True

    """
    states = deque(states)
    expansions = 0
    while len(states) > 0:
        state = states.popleft()
        if success(state):
            LOGGER.debug('search succeeded after {} expansions'
                         .format(expansions))
            return state
        if budget is not None and expansions >= budget:
            raise SearchBudgetExceeded(expansions)
        expansions += 1
        states = combine(expand(state), states)
    LOGGER.debug('search exhausted after {} expansions'.format(expansions))
    return None


if __name__ == '__main__':
    import doctest
    doctest.testmod()
