#!/usr/bin/env python
"""
Exact rational simplex method for problems in equality form

    minimize c x  subject to  A x = b, x >= 0

using a two-phase tableau with Bland's rule. When the problem is
infeasible the phase-one duals are returned as a Farkas certificate,
i.e. a vector y with ``y A >= 0`` and ``y b = -1``.

"""

import logging
from fractions import Fraction

LOGGER = logging.getLogger(__name__)

__all__ = ['LPResult', 'solve_lp', 'check_farkas']

ZERO = Fraction(0)
ONE = Fraction(1)


class LPResult(object):
    """Outcome of :func:`solve_lp`.

    Attributes
    ----------
    status : {'optimal', 'infeasible', 'unbounded'}
    x : list of Fraction or None
        An optimal basic solution
    objective : Fraction or None
    farkas : list of Fraction or None
        Row multipliers certifying infeasibility
    pivots : int

    """

    def __init__(self, status, x=None, objective=None, farkas=None, pivots=0):
        self.status = status
        self.x = x
        self.objective = objective
        self.farkas = farkas
        self.pivots = pivots

    def __repr__(self):
        return 'LPResult(status={}, objective={})'.format(self.status, self.objective)


class _Tableau(object):

    def __init__(self, rows, cost, basis):
        self.rows = rows
        self.cost = cost
        self.basis = basis
        self.pivots = 0

    def pivot(self, i, j):
        row = self.rows[i]
        piv = row[j]
        if piv != ONE:
            row = [v / piv for v in row]
            self.rows[i] = row
        nz = [l for l, v in enumerate(row) if v != 0]
        for k, other in enumerate(self.rows):
            if k != i:
                f = other[j]
                if f != 0:
                    for l in nz:
                        other[l] -= f * row[l]
        f = self.cost[j]
        if f != 0:
            for l in nz:
                self.cost[l] -= f * row[l]
        self.basis[i] = j
        self.pivots += 1

    def bland(self, allowed):
        """Run Bland's rule over the columns in `allowed`; returns
        'optimal' or 'unbounded'."""
        while True:
            entering = None
            for j in allowed:
                if self.cost[j] < 0:
                    entering = j
                    break
            if entering is None:
                return 'optimal'
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return 'unbounded'
            self.pivot(best[1], entering)


def solve_lp(A, b, c=None):
    """Solve an equality-form linear program exactly.

    Parameters
    ----------
    A : list of list
        Constraint matrix (m rows of n exact numbers)
    b : list
        Right hand side of length m
    c : list, optional
        Cost vector of length n. If omitted only feasibility is decided.

    Returns
    -------
    LPResult

    Examples
    --------
    >>> res = solve_lp([[1, 1]], [1], [1, 2])
    >>> res.status, res.x, res.objective
    ('optimal', [Fraction(1, 1), Fraction(0, 1)], Fraction(1, 1))
    >>> res = solve_lp([[1, 1], [1, 1]], [1, 2])
    >>> res.status, res.farkas
    ('infeasible', [Fraction(1, 1), Fraction(-1, 1)])

    """
    m = len(A)
    n = len(A[0]) if m > 0 else (len(c) if c is not None else 0)
    signs = []
    rows = []
    for i in range(m):
        if len(A[i]) != n:
            raise ValueError('Row {} has {} entries, expected {}'.format(i, len(A[i]), n))
        s = -1 if Fraction(b[i]) < 0 else 1
        signs.append(s)
        row = [s * Fraction(v) for v in A[i]]
        row.extend(ONE if k == i else ZERO for k in range(m))
        row.append(s * Fraction(b[i]))
        rows.append(row)

    # phase one: minimize the sum of the artificial variables
    cost = [-sum((rows[i][j] for i in range(m)), ZERO) for j in range(n)]
    cost.extend(ZERO for _ in range(m))
    cost.append(-sum((rows[i][-1] for i in range(m)), ZERO))
    tab = _Tableau(rows, cost, list(range(n, n + m)))
    tab.bland(range(n + m))

    infeasibility = -tab.cost[-1]
    if infeasibility > 0:
        pi = [ONE - tab.cost[n + i] for i in range(m)]
        farkas = [-signs[i] * pi[i] / infeasibility for i in range(m)]
        LOGGER.debug('infeasible after {} pivots'.format(tab.pivots))
        return LPResult('infeasible', farkas=farkas, pivots=tab.pivots)

    # drive the remaining artificial variables out of the basis
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] >= n:
            row = tab.rows[i]
            j = next((j for j in range(n) if row[j] != 0), None)
            if j is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1

    if c is None:
        c = [ZERO] * n
    c = [Fraction(v) for v in c] + [ZERO] * m
    cost = list(c) + [ZERO]
    for i, row in enumerate(tab.rows):
        cb = c[tab.basis[i]]
        if cb != 0:
            for l, v in enumerate(row):
                if v != 0:
                    cost[l] -= cb * v
    tab.cost = cost
    status = tab.bland(range(n))
    if status == 'unbounded':
        return LPResult('unbounded', pivots=tab.pivots)

    x = [ZERO] * n
    for i, row in enumerate(tab.rows):
        x[tab.basis[i]] = row[-1]
    objective = sum((c[j] * x[j] for j in range(n)), ZERO)
    LOGGER.debug('optimal after {} pivots'.format(tab.pivots))
    return LPResult('optimal', x=x, objective=objective, pivots=tab.pivots)


def check_farkas(A, b, y):
    """True iff ``y A >= 0`` componentwise and ``y b < 0``, which proves
    that ``A x = b, x >= 0`` has no solution."""
    n = len(A[0]) if len(A) > 0 else 0
    for j in range(n):
        if sum((Fraction(y[i]) * Fraction(A[i][j]) for i in range(len(A))), ZERO) < 0:
            return False
    return sum((Fraction(y[i]) * Fraction(b[i]) for i in range(len(A))), ZERO) < 0


if __name__ == '__main__':
    import doctest
    doctest.testmod()
