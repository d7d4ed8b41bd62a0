#!/usr/bin/env python
"""
Disjoint packing by backtracking.

Each piece has a list of candidate placements given as integer bit
masks over a fixed set of cells. A packing chooses one candidate per
piece such that the chosen masks are pairwise disjoint. The search
places the most constrained piece first (fewest placements compatible
with the cells used so far, ties broken by piece index) and tries
candidates in their given order, so results are deterministic.

"""

import logging

from ..utils import search, SearchBudgetExceeded

LOGGER = logging.getLogger(__name__)

__all__ = ['pack_pieces', 'PackingResult']

UNASSIGNED = -1


class PackingResult(object):
    """Outcome of :func:`pack_pieces`.

    Attributes
    ----------
    status : {'found', 'exhausted', 'budget'}
    assignment : list of int or None
        Index of the chosen candidate for each piece
    expansions : int or None
        Number of expanded search nodes, when the budget ran out

    """

    def __init__(self, status, assignment=None, expansions=None):
        self.status = status
        self.assignment = assignment
        self.expansions = expansions

    @property
    def found(self):
        return self.status == 'found'

    def __repr__(self):
        return 'PackingResult({})'.format(self.status)


def pack_pieces(candidates, budget=None, used=0):
    """Choose pairwise disjoint placements, one per piece.

    Parameters
    ----------
    candidates : list of list of int
        For each piece, the bit masks of its candidate placements
    budget : int or None, optional
        Maximal number of search nodes to expand
    used : int, optional
        Mask of cells that are not available

    Returns
    -------
    PackingResult

    Examples
    --------
    >>> pack_pieces([[0b011, 0b100], [0b001, 0b010]]).assignment
    [1, 0]
    >>> pack_pieces([[0b1], [0b1]]).status
    'exhausted'

    """
    n = len(candidates)
    if n == 0:
        return PackingResult('found', [])

    def success(state):
        return UNASSIGNED not in state[1]

    def expand(state):
        mask, assignment = state
        best = None
        for p in range(n):
            if assignment[p] != UNASSIGNED:
                continue
            feasible = [k for k, m in enumerate(candidates[p]) if m & mask == 0]
            if best is None or len(feasible) < len(best[1]):
                best = (p, feasible)
                if len(feasible) == 0:
                    break
        p, feasible = best
        children = []
        for k in feasible:
            new = list(assignment)
            new[p] = k
            children.append((mask | candidates[p][k], tuple(new)))
        return children

    start = (used, tuple([UNASSIGNED] * n))
    try:
        state = search([start], success, expand, budget=budget)
    except SearchBudgetExceeded as e:
        LOGGER.debug('packing of {} pieces ran out of budget'.format(n))
        return PackingResult('budget', expansions=e.expansions)
    if state is None:
        return PackingResult('exhausted')
    return PackingResult('found', list(state[1]))


if __name__ == '__main__':
    import doctest
    doctest.testmod()
