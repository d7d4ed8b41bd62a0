#!/usr/bin/env python
"""
This module decides, at a finite depth, whether an action admits an
invariant content: a finitely additive nonnegative assignment on the
clopen sets that is invariant under the generators.

The unknowns are the values of the depth-d cylinders. The constraints
are a normalization row and one invariance row per generator letter and
cylinder whose image can be written with depth-d cylinders. The linear
program is solved exactly; a feasible problem yields an
:class:`InvariantContent`, an infeasible one an
:class:`InfeasibilityCertificate` that can be replayed independently.

"""

import logging
from fractions import Fraction

from .space import ClopenSet, DepthTooSmall, SftError
from .action import ActionError
from .solvers import solve_lp
from .utils import format_fraction

LOGGER = logging.getLogger(__name__)

__all__ = ['InvariantContent', 'InfeasibilityCertificate', 'Normalization',
           'invariant_probability_measure', 'invariant_content_normalized',
           'state_on_type_element', 'evaluate_content', 'find_content',
           'content_rows', 'minimal_depth', 'optimize_content', 'MeasureError', 'DepthTooSmall',
           'DepthExceeded', 'DEFAULT_MEASURE_DEPTH']

DEFAULT_MEASURE_DEPTH = 2

MASS_LABEL = 'mass'
NORM_LABEL = 'norm'
INV_LABEL = 'inv'


class MeasureError(Exception):
    pass


class DepthExceeded(MeasureError):
    pass


class Normalization(object):
    """The normalizing constraint of a content problem.

    Parameters
    ----------
    kind : {'probability', 'set', 'type'}
        Total mass 1, mass 1 on a clopen set, or integral 1 of a type
        element
    target : ClopenSet or TypeElement or None

    """

    def __init__(self, kind, target=None):
        if kind not in ('probability', 'set', 'type'):
            raise ValueError('Unknown normalization {!r}'.format(kind))
        if kind != 'probability' and target is None:
            raise ValueError('Normalization {!r} needs a target'.format(kind))
        self.kind = kind
        self.target = target

    @property
    def label(self):
        return MASS_LABEL if self.kind == 'probability' else NORM_LABEL

    @property
    def depth(self):
        if self.kind == 'probability':
            return 0
        return self.target.max_length

    def weight(self, cell):
        if self.kind == 'probability':
            return 1
        elif self.kind == 'set':
            return 1 if self.target.contains_word(cell) else 0
        return self.target.value_on(cell)

    def __eq__(self, other):
        return (isinstance(other, Normalization) and self.kind == other.kind
                and self.target == other.target)

    def __repr__(self):
        return 'Normalization({}, {})'.format(self.kind, self.target)


def minimal_depth(action):
    """Smallest depth at which content problems are set up: every domain
    word of the generators and their inverses must fit."""
    return max(1, action.max_domain_depth)


def _check_depth(action, depth, normalization):
    if depth < minimal_depth(action):
        raise DepthTooSmall('Depth {} is below the minimal depth {} of this action'
                            .format(depth, minimal_depth(action)))
    if depth < normalization.depth:
        raise DepthTooSmall('Depth {} cannot express the normalization target {}'
                            .format(depth, normalization.target))


def invariance_row(action, cell_index, letter, word, depth):
    """Coefficients of ``mu(g[word]) - mu([word])`` over the depth-d
    cells, or None if the image of [word] is not expressible at depth d.
    """
    g = action.letter(*letter)
    space = action.space
    image = ClopenSet(space, g.image_words(word))
    if image.max_length > depth:
        return None
    row = {}
    for w in image.cylinders:
        for cell in space.extensions(w, depth):
            row[cell_index[cell]] = row.get(cell_index[cell], 0) + 1
    for cell in space.extensions(word, depth):
        row[cell_index[cell]] = row.get(cell_index[cell], 0) - 1
    return dict((k, v) for k, v in row.items() if v != 0)


def letter_name(action, letter):
    return action.format_word((letter,))


def parse_letter(action, text):
    word = action.parse_word(text)
    if len(word) != 1:
        raise ValueError('Expected a single generator letter, got {!r}'.format(text))
    return word[0]


def invariance_label(action, letter, word):
    return '{} {} {}'.format(INV_LABEL, letter_name(action, letter),
                             action.space.format_word(word) or '.')


def content_rows(action, depth, normalization):
    """Constraint rows of the content problem.

    Returns
    -------
    cells : list of tuple
        The depth-d cylinders indexing the columns
    rows : list of (str, dict, int)
        Label, sparse coefficients (column index to int) and right hand
        side of each constraint

    """
    _check_depth(action, depth, normalization)
    space = action.space
    cells = space.cylinders(depth)
    cell_index = dict((c, i) for i, c in enumerate(cells))

    norm = dict((i, Fraction(normalization.weight(c))) for i, c in enumerate(cells))
    rows = [(normalization.label, dict((k, v) for k, v in norm.items() if v != 0), 1)]

    words = [w for d in range(depth + 1) for w in space.cylinders(d)]
    seen = set()
    for letter in action.letters:
        expressible = {}
        for w in words:
            expressible[w] = invariance_row(action, cell_index, letter, w, depth)
        for w in words:
            row = expressible[w]
            if row is None or len(row) == 0:
                continue
            if len(w) < depth and all(expressible.get(w + (c,)) is not None
                                      for c in space.successors(w)):
                # implied by the rows of the children
                continue
            key = tuple(sorted(row.items()))
            if key in seen:
                continue
            seen.add(key)
            rows.append((invariance_label(action, letter, w), row, 0))
    LOGGER.debug('content problem at depth {}: {} cells, {} rows'
                 .format(depth, len(cells), len(rows)))
    return cells, rows


class InvariantContent(object):
    """An invariant content given by its values on the depth-d cylinders.

    Parameters
    ----------
    space : SftSpace
    depth : int
    values : dict
        Map from depth-d cylinder words to nonnegative Fractions
    normalization : Normalization, optional

    """

    def __init__(self, space, depth, values, normalization=None):
        self.space = space
        self.depth = depth
        self.values = dict((tuple(c), Fraction(v)) for c, v in values.items())
        self.normalization = normalization

    def __repr__(self):
        return 'InvariantContent(depth={}, mass={})'.format(self.depth,
                                                            format_fraction(self.mass()))

    def value(self, word):
        """Content of the cylinder [word]."""
        if len(word) > self.depth:
            raise DepthExceeded('Cylinder of length {} exceeds depth {}'
                                .format(len(word), self.depth))
        return sum((self.values.get(c, Fraction(0))
                    for c in self.space.extensions(tuple(word), self.depth)),
                   Fraction(0))

    def evaluate(self, A):
        return evaluate_content(self, A)

    def mass(self):
        return sum(self.values.values(), Fraction(0))

    def check(self, action):
        """Exact check of nonnegativity, normalization and every
        invariance constraint at this depth."""
        if any(v < 0 for v in self.values.values()):
            return False
        cells = self.space.cylinders(self.depth)
        if set(self.values.keys()) != set(cells):
            return False
        cell_index = dict((c, i) for i, c in enumerate(cells))
        vec = [self.values[c] for c in cells]
        if self.normalization is not None:
            total = sum((Fraction(self.normalization.weight(c)) * self.values[c]
                         for c in cells), Fraction(0))
            if total != 1:
                return False
        words = [w for d in range(self.depth + 1) for w in self.space.cylinders(d)]
        for letter in action.letters:
            for w in words:
                row = invariance_row(action, cell_index, letter, w, self.depth)
                if row is not None and sum(vec[k] * v for k, v in row.items()) != 0:
                    return False
        return True


class InfeasibilityCertificate(object):
    """Row multipliers proving that no invariant content exists at a
    depth.

    Parameters
    ----------
    depth : int
    normalization : Normalization
    multipliers : dict
        Map from constraint labels to Fractions

    """

    def __init__(self, depth, normalization, multipliers):
        self.depth = depth
        self.normalization = normalization
        self.multipliers = dict((k, Fraction(v)) for k, v in multipliers.items()
                                if Fraction(v) != 0)

    def __repr__(self):
        return 'InfeasibilityCertificate(depth={}, {} multipliers)'.format(
            self.depth, len(self.multipliers))

    def replay(self, action):
        """Rebuild the labelled rows from the action and check that the
        combination gives a nonnegative row with negative right hand
        side."""
        try:
            _check_depth(action, self.depth, self.normalization)
        except SftError:
            return False
        space = action.space
        cells = space.cylinders(self.depth)
        cell_index = dict((c, i) for i, c in enumerate(cells))
        combo = [Fraction(0)] * len(cells)
        rhs = Fraction(0)
        for label, y in sorted(self.multipliers.items()):
            tokens = label.split(' ')
            if tokens == [self.normalization.label]:
                for i, c in enumerate(cells):
                    combo[i] += y * Fraction(self.normalization.weight(c))
                rhs += y
            elif len(tokens) == 3 and tokens[0] == INV_LABEL:
                try:
                    letter = parse_letter(action, tokens[1])
                    word = space.check_word(space.parse_word(tokens[2]))
                except (ValueError, SftError, ActionError):
                    return False
                if len(word) > self.depth:
                    return False
                row = invariance_row(action, cell_index, letter, word, self.depth)
                if row is None:
                    return False
                for k, v in row.items():
                    combo[k] += y * v
            else:
                return False
        return all(v >= 0 for v in combo) and rhs < 0


def find_content(action, depth, normalization):
    """Solve the content problem for a normalization.

    The returned content maximizes the smallest cell value, which makes
    the answer canonical in the common symmetric cases (for instance the
    uniform Bernoulli content for bit permutations).

    Returns
    -------
    InvariantContent or InfeasibilityCertificate

    """
    cells, rows = content_rows(action, depth, normalization)
    n = len(cells)
    A = []
    b = []
    for _, coeffs, rhs in rows:
        dense = [Fraction(0)] * (n + 1)
        for k, v in coeffs.items():
            dense[k] = Fraction(v)
        # column of the shift t, with x = y + t
        dense[n] = sum(dense[:n], Fraction(0))
        A.append(dense)
        b.append(Fraction(rhs))
    cost = [Fraction(0)] * n + [Fraction(-1)]
    result = solve_lp(A, b, cost)
    if result.status == 'unbounded':
        LOGGER.warning('minimal cell value is unbounded; returning a basic solution')
        result = solve_lp([row[:n] for row in A], b)

    if result.status == 'infeasible':
        multipliers = dict((rows[i][0], y) for i, y in enumerate(result.farkas) if y != 0)
        LOGGER.info('no invariant content at depth {} ({} multipliers)'
                    .format(depth, len(multipliers)))
        return InfeasibilityCertificate(depth, normalization, multipliers)

    t = result.x[n] if len(result.x) > n else Fraction(0)
    values = dict((c, result.x[i] + t) for i, c in enumerate(cells))
    return InvariantContent(action.space, depth, values, normalization)


def invariant_probability_measure(action, depth=DEFAULT_MEASURE_DEPTH):
    """Invariant content of total mass 1 at a depth, or a certificate
    that none exists (which rules out invariant probability measures
    altogether).

    Raises
    ------
    DepthTooSmall
        If `depth` is below :func:`minimal_depth`

    """
    return find_content(action, depth, Normalization('probability'))


def invariant_content_normalized(action, O, depth=DEFAULT_MEASURE_DEPTH):
    """Invariant content with ``mu(O) = 1`` and no bound on the total
    mass. For ``O = X`` this is :func:`invariant_probability_measure`."""
    if O.is_empty:
        raise ValueError('The normalizing set must be nonempty')
    if O.is_whole:
        return invariant_probability_measure(action, depth)
    return find_content(action, depth, Normalization('set', O))


def state_on_type_element(action, y, depth=DEFAULT_MEASURE_DEPTH):
    """Invariant content whose integral of the type element `y` is 1.

    The content induces a state on the depth-d fragment of the type
    semigroup taking the value 1 on `y`.

    """
    if y.is_zero:
        raise ValueError('Cannot normalize on the zero element')
    return find_content(action, depth, Normalization('type', y))


def evaluate_content(mu, A):
    """Exact content of a clopen set.

    Raises
    ------
    DepthExceeded
        If a cylinder of `A` is longer than the depth of `mu`

    """
    if A.max_length > mu.depth:
        raise DepthExceeded('Set {} has cylinders longer than depth {}'.format(A, mu.depth))
    return sum((mu.value(w) for w in A.cylinders), Fraction(0))


def optimize_content(action, depth, normalization, objective):
    """Minimize a linear functional over the invariant contents.

    Parameters
    ----------
    action : Action
    depth : int
    normalization : Normalization
    objective : callable
        Function mapping a depth-d cell to its (exact) cost coefficient

    Returns
    -------
    (InvariantContent, Fraction) or InfeasibilityCertificate
        An optimal content with its objective value, or a certificate
        that no content exists. If the functional is unbounded below,
        ``(None, None)`` is returned.

    """
    cells, rows = content_rows(action, depth, normalization)
    n = len(cells)
    A = []
    b = []
    for _, coeffs, rhs in rows:
        dense = [Fraction(0)] * n
        for k, v in coeffs.items():
            dense[k] = Fraction(v)
        A.append(dense)
        b.append(Fraction(rhs))
    cost = [Fraction(objective(c)) for c in cells]
    result = solve_lp(A, b, cost)
    if result.status == 'infeasible':
        multipliers = dict((rows[i][0], y) for i, y in enumerate(result.farkas) if y != 0)
        return InfeasibilityCertificate(depth, normalization, multipliers)
    if result.status == 'unbounded':
        return None, None
    values = dict((c, result.x[i]) for i, c in enumerate(cells))
    return InvariantContent(action.space, depth, values, normalization), result.objective
