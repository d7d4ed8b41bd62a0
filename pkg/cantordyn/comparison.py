#!/usr/bin/env python
"""
This module implements subequivalence of clopen sets: a set F is
subequivalent to O when F can be cut into cylinder pieces which are
moved by group elements to pairwise disjoint subsets of O. It provides
the certificates (:class:`SubequivalenceScheme`,
:class:`ParadoxicalWitness`), their exact verification, bounded witness
searches, the composition and doubling constructions, and
finite-resolution checks of the filling, boundary and comparison
properties.

Searches are bounded and return one of three kinds of results: a
witness, a refutation by an invariant content (:class:`Refuted`) or
:class:`NotFound`, which is inconclusive.

"""

import logging
from bisect import bisect_left
from itertools import combinations, combinations_with_replacement
from fractions import Fraction

from .space import ClopenSet, refine, SpaceMismatch
from .action import (apply, enumerate_elements, reduce_word, inverse_word,
                     TowerWitness, verify_tower, IDENTITY_WORD)
from .measures import (Normalization, InvariantContent, optimize_content,
                       invariant_content_normalized, invariant_probability_measure,
                       minimal_depth)
from .solvers import pack_pieces
from .utils import search, SearchBudgetExceeded, PrettyPrintTree, format_fraction

LOGGER = logging.getLogger(__name__)

__all__ = ['SearchBounds', 'SubequivalenceScheme', 'ParadoxicalWitness',
           'VerificationReport', 'NotFound', 'Refuted', 'NotCovered',
           'CheckReport', 'ReportEntry', 'verify_scheme', 'verify_paradoxical',
           'search_subequivalence', 'compose_schemes', 'restrict_scheme',
           'widen_target', 'multi_subequivalence', 'check_paradoxical',
           'check_weak_paradoxical', 'check_n_filling', 'check_strong_boundary',
           'check_dynamical_comparison', 'find_open_tower', 'boundary_entry',
           'combine_statuses', 'boundary_pairs', 'boundary_label', 'filling_tuples',
           'filling_label', 'comparison_pairs', 'comparison_label',
           'DEFAULT_BOUNDS', 'ComparisonError', 'HypothesisMismatch',
           'NoParadoxicalWitness', 'BadBounds']

SCHEME_CLAUSES = ('coverage', 'piece_disjointness', 'image_disjointness',
                  'image_containment')
MAX_QUANTIFIED_CELLS = 6


class ComparisonError(Exception):
    pass


class HypothesisMismatch(ComparisonError):
    pass


class NoParadoxicalWitness(ComparisonError):
    pass


class BadBounds(ComparisonError, ValueError):
    pass


class SearchBounds(object):
    """Limits of a witness search.

    Parameters
    ----------
    depth : int
        Maximal length of the cylinder pieces
    word_length : int
        Maximal length of the group words
    node_budget : int
        Maximal number of backtracking nodes per search

    """

    def __init__(self, depth=3, word_length=4, node_budget=10 ** 6):
        for name, value in (('depth', depth), ('word_length', word_length),
                            ('node_budget', node_budget)):
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise BadBounds('{} must be a positive integer, got {!r}'.format(name, value))
        self.depth = depth
        self.word_length = word_length
        self.node_budget = node_budget

    def doubled(self):
        """Larger bounds for follow-up searches: twice the word length and
        node budget, one more level of depth."""
        return SearchBounds(self.depth + 1, 2 * self.word_length, 2 * self.node_budget)

    def __eq__(self, other):
        return (isinstance(other, SearchBounds)
                and (self.depth, self.word_length, self.node_budget)
                == (other.depth, other.word_length, other.node_budget))

    def __hash__(self):
        return hash((self.depth, self.word_length, self.node_budget))

    def __str__(self):
        return 'depth {} word-length {} node-budget {}'.format(
            self.depth, self.word_length, self.node_budget)

    def __repr__(self):
        return 'SearchBounds({}, {}, {})'.format(self.depth, self.word_length,
                                                 self.node_budget)


DEFAULT_BOUNDS = SearchBounds()


class SubequivalenceScheme(object):
    """Certificate that `source` is subequivalent to `target`.

    Parameters
    ----------
    source : ClopenSet
    target : ClopenSet
    pieces : iterable of (tuple, tuple)
        Pairs of a cylinder word and a group word

    """

    def __init__(self, source, target, pieces):
        if source.space != target.space:
            raise SpaceMismatch('Source and target live on different spaces')
        self.source = source
        self.target = target
        self.space = source.space
        self.pieces = tuple(sorted((self.space.check_word(p), tuple(w))
                                   for p, w in pieces))

    def __eq__(self, other):
        return (isinstance(other, SubequivalenceScheme)
                and self.source == other.source and self.target == other.target
                and self.pieces == other.pieces)

    def __hash__(self):
        return hash((self.source, self.target, self.pieces))

    def __repr__(self):
        return 'SubequivalenceScheme({} -> {}, {} pieces)'.format(
            self.source, self.target, len(self.pieces))

    def images(self, action):
        """The translated pieces, in piece order."""
        return [action.element(w).apply_word(p) for p, w in self.pieces]

    def image(self, action):
        return ClopenSet(self.space, [c for img in self.images(action) for c in img.words])

    def pretty(self, action):
        fmt = self.space.format_word
        lines = ['{} < {}'.format(self.source, self.target)]
        tree = PrettyPrintTree()
        tree.push()
        for i, ((p, w), img) in enumerate(zip(self.pieces, self.images(action))):
            if i == len(self.pieces) - 1:
                tree.last_item()
            else:
                tree.next_item()
            lines.append('{}[{}] by {} -> {}'.format(tree, fmt(p), action.format_word(w), img))
        return '\n'.join(lines)


class VerificationReport(object):
    """Outcome of an exact verification; false when some clause fails.

    Attributes
    ----------
    passed : bool
    clause : str or None
        The first violated clause
    detail : str

    """

    def __init__(self, passed, clause=None, detail=''):
        self.passed = passed
        self.clause = clause
        self.detail = detail

    def __bool__(self):
        return self.passed

    def __repr__(self):
        if self.passed:
            return 'VerificationReport(pass)'
        return 'VerificationReport(fail: {} {})'.format(self.clause, self.detail)


def _first_overlap(words_with_owner):
    items = sorted(words_with_owner)
    for (a, i), (b, j) in zip(items[:-1], items[1:]):
        if len(a) <= len(b) and b[:len(a)] == a:
            return a, b, i, j
    return None


def verify_scheme(action, s):
    """Check a scheme exactly; no search is involved.

    The clauses are checked in the order coverage, piece_disjointness,
    image_disjointness, image_containment.

    Returns
    -------
    VerificationReport

    """
    if s.space != action.space:
        raise SpaceMismatch('Scheme and action live on different spaces')
    fmt = s.space.format_word
    for _, w in s.pieces:
        for g, e in w:
            if not 0 <= g < len(action.generators) or e not in (1, -1):
                return VerificationReport(False, 'coverage', 'invalid group word')

    covered = ClopenSet(s.space, [p for p, _ in s.pieces])
    if covered != s.source:
        return VerificationReport(False, 'coverage',
                                  'pieces cover {} instead of {}'.format(covered, s.source))

    overlap = _first_overlap([(p, i) for i, (p, _) in enumerate(s.pieces)])
    if overlap is not None:
        return VerificationReport(False, 'piece_disjointness',
                                  'pieces [{}] and [{}] overlap'.format(fmt(overlap[0]),
                                                                        fmt(overlap[1])))

    images = s.images(action)
    overlap = _first_overlap([(c, i) for i, img in enumerate(images) for c in img.cylinders])
    if overlap is not None:
        return VerificationReport(False, 'image_disjointness',
                                  'images of pieces {} and {} overlap'.format(overlap[2],
                                                                              overlap[3]))

    for (p, w), img in zip(s.pieces, images):
        if not all(s.target.contains_word(c) for c in img.cylinders):
            return VerificationReport(False, 'image_containment',
                                      'image {} of [{}] is not inside {}'.format(img, fmt(p),
                                                                                  s.target))
    return VerificationReport(True)


class ParadoxicalWitness(object):
    """Two schemes moving `A` into disjoint subsets O1, O2 of `A`."""

    def __init__(self, A, s1, s2):
        self.A = A
        self.s1 = s1
        self.s2 = s2

    @property
    def O1(self):
        return self.s1.target

    @property
    def O2(self):
        return self.s2.target

    @property
    def max_depth(self):
        return max(max(len(p) for p, _ in s.pieces) for s in (self.s1, self.s2))

    def __repr__(self):
        return 'ParadoxicalWitness(A={}, O1={}, O2={})'.format(self.A, self.O1, self.O2)


def verify_paradoxical(action, w):
    for name, s in (('first scheme', w.s1), ('second scheme', w.s2)):
        if s.source != w.A:
            return VerificationReport(False, 'coverage', '{} does not start from A'.format(name))
        report = verify_scheme(action, s)
        if not report:
            return VerificationReport(False, report.clause, '{}: {}'.format(name, report.detail))
    if not (w.O1.issubset(w.A) and w.O2.issubset(w.A)):
        return VerificationReport(False, 'image_containment', 'targets are not inside A')
    if not w.O1.isdisjoint(w.O2):
        return VerificationReport(False, 'image_disjointness', 'targets overlap')
    return VerificationReport(True)


class NotFound(object):
    """Inconclusive outcome of a bounded search.

    Attributes
    ----------
    bounds : SearchBounds
    reason : {'budget', 'exhausted'}

    """

    def __init__(self, bounds, reason):
        self.bounds = bounds
        self.reason = reason

    def __repr__(self):
        return 'NotFound({}, {})'.format(self.reason, self.bounds)


class Refuted(object):
    """Refutation by an invariant content at a depth.

    Attributes
    ----------
    content : InvariantContent
    depth : int
    values : dict
        Named content values backing the refutation
    claim : (tuple of ClopenSet, tuple of ClopenSet) or None
        Two sums of indicator functions; the content integrates the
        first to a larger value than the second

    """

    def __init__(self, content, depth, values, claim=None):
        self.content = content
        self.depth = depth
        self.values = dict(values)
        self.claim = claim

    def __repr__(self):
        return 'Refuted(depth={}, {})'.format(self.depth, ', '.join(
            '{}={}'.format(k, format_fraction(v)) for k, v in sorted(self.values.items())))


class NotCovered(object):
    """No finite set of translates (within the word length bound) covers
    the source.

    Attributes
    ----------
    uncovered : ClopenSet
        The part of the source left uncovered
    bounds : SearchBounds

    """

    def __init__(self, uncovered, bounds):
        self.uncovered = uncovered
        self.bounds = bounds

    def __repr__(self):
        return 'NotCovered({})'.format(self.uncovered)


class ReportEntry(object):

    def __init__(self, label, status, witness=None, detail=''):
        self.label = label
        self.status = status
        self.witness = witness
        self.detail = detail

    def __repr__(self):
        return 'ReportEntry({}, {})'.format(self.label, self.status)


def combine_statuses(statuses):
    """Overall status of a check from the statuses of its entries."""
    statuses = set(statuses)
    if 'fail' in statuses:
        return 'fail'
    if 'inconclusive' in statuses:
        return 'inconclusive'
    return 'pass'


class CheckReport(object):
    """Result of a finite-resolution property check.

    Attributes
    ----------
    name : str
    status : {'pass', 'fail', 'inconclusive'}
    depth : int
    bounds : SearchBounds
    entries : list of ReportEntry

    """

    def __init__(self, name, depth, bounds, entries):
        self.name = name
        self.depth = depth
        self.bounds = bounds
        self.entries = list(entries)
        self.status = combine_statuses(e.status for e in self.entries)

    def counts(self):
        result = {}
        for e in self.entries:
            result[e.status] = result.get(e.status, 0) + 1
        return result

    def pretty(self):
        lines = ['{}: {} (depth {}, {})'.format(self.name, self.status, self.depth, self.bounds)]
        tree = PrettyPrintTree()
        tree.push()
        for i, e in enumerate(self.entries):
            if i == len(self.entries) - 1:
                tree.last_item()
            else:
                tree.next_item()
            lines.append('{}{}: {}{}'.format(tree, e.label, e.status,
                                             ' ({})'.format(e.detail) if e.detail else ''))
        return '\n'.join(lines)

    def __repr__(self):
        return 'CheckReport({}, {})'.format(self.name, self.status)


def lp_depth(action, bounds, *sets):
    return max([bounds.depth, minimal_depth(action)] + [A.max_length for A in sets])


def _inside(region, img):
    return all(region.contains_word(c) for c in img.cylinders)


class CellMasks(object):
    """Bit masks of clopen sets over the depth-D cells of a region."""

    def __init__(self, region, depth):
        self.cells = refine(region.space, region, depth)
        self.top = region.space.alphabet_size

    def mask(self, A):
        m = 0
        for c in A.cylinders:
            lo = bisect_left(self.cells, c)
            hi = bisect_left(self.cells, c + (self.top,))
            m |= ((1 << (hi - lo)) - 1) << lo
        return m

    @property
    def full(self):
        return (1 << len(self.cells)) - 1


def candidate_images(pieces, region, elements):
    """Distinct images inside `region` of each piece, in element order."""
    result = {}
    for p in set(pieces):
        seen = set()
        cands = []
        for w, g in elements:
            img = g.apply_word(p)
            if img.words in seen or not _inside(region, img):
                continue
            seen.add(img.words)
            cands.append((w, img))
        result[p] = cands
    return result


def _pack_into(region, pieces, elements, budget):
    """Pack the cylinder `pieces` into `region` by translates.

    Returns
    -------
    (str, list)
        The packing status and, when found, the chosen ``(word, image)``
        per piece

    """
    cands = candidate_images(pieces, region, elements)
    if any(len(cands[p]) == 0 for p in pieces):
        return 'exhausted', None
    depth = max([region.max_length] + [img.max_length for p in cands
                                       for _, img in cands[p]])
    masks = CellMasks(region, depth)
    mask_lists = dict((p, [masks.mask(img) for _, img in cands[p]]) for p in cands)
    LOGGER.debug('packing {} pieces into {} cells'.format(len(pieces), len(masks.cells)))
    result = pack_pieces([mask_lists[p] for p in pieces], budget=budget)
    if not result.found:
        return result.status, None
    return 'found', [cands[p][k] for p, k in zip(pieces, result.assignment)]


def _piece_depths(A, bounds):
    return range(A.max_length, max(bounds.depth, A.max_length) + 1)


def refute_subequivalence(action, F, O, depth):
    """Look for an invariant content with mu(F) = 1 > mu(O)."""
    if F.is_empty:
        return None
    result = optimize_content(action, depth, Normalization('set', F),
                              lambda c: 1 if O.contains_word(c) else 0)
    if isinstance(result, tuple) and result[0] is not None and result[1] < 1:
        LOGGER.info('content at depth {} gives mu(F) = 1 > mu(O) = {}'
                    .format(depth, format_fraction(result[1])))
        return Refuted(result[0], depth, {'source': Fraction(1), 'target': result[1]},
                       claim=((F,), (O,)))
    return None


def refute_paradoxical(action, A, depth):
    """Look for an invariant content with mu(A) = 1."""
    result = invariant_content_normalized(action, A, depth)
    if isinstance(result, InvariantContent):
        return Refuted(result, depth, {'set': result.evaluate(A)}, claim=((A, A), (A,)))
    return None


def search_subequivalence(action, F, O, bounds=DEFAULT_BOUNDS, refute=True):
    """Search a scheme for F < O within bounds.

    Pieces are the cylinders of F refined to increasing depth, up to
    ``bounds.depth``; their candidate images are the translates by all
    group elements of word length at most ``bounds.word_length`` that
    lie inside O. When no packing is found, an invariant content with
    mu(F) > mu(O) is looked for.

    Returns
    -------
    SubequivalenceScheme, Refuted or NotFound

    """
    if F.space != O.space or F.space != action.space:
        raise SpaceMismatch('Sets and action live on different spaces')
    if F.is_empty:
        return SubequivalenceScheme(F, O, [])
    if O.is_empty:
        raise ValueError('Cannot move a nonempty set into the empty set')

    elements = enumerate_elements(action, bounds.word_length)
    depth_lp = lp_depth(action, bounds, F, O)
    if refute and elements.complete:
        refuted = refute_subequivalence(action, F, O, depth_lp)
        if refuted is not None:
            return refuted

    reason = 'exhausted'
    for d in _piece_depths(F, bounds):
        pieces = refine(F.space, F, d)
        status, chosen = _pack_into(O, pieces, elements, bounds.node_budget)
        if status == 'found':
            scheme = SubequivalenceScheme(F, O, [(p, w) for p, (w, _) in zip(pieces, chosen)])
            assert verify_scheme(action, scheme)
            LOGGER.info('found scheme {} < {} with pieces of depth {}'.format(F, O, d))
            return scheme
        if status == 'budget':
            reason = 'budget'
            LOGGER.warning('node budget exhausted at piece depth {}'.format(d))
            break

    if refute and not elements.complete:
        refuted = refute_subequivalence(action, F, O, depth_lp)
        if refuted is not None:
            return refuted
    return NotFound(bounds, reason)


def compose_schemes(action, s1, s2):
    """Compose schemes for F < N and N' < B, where N is inside N', into a
    scheme for F < B.

    Each piece p of `s1` (moved by g) is cut along the preimages of the
    pieces q of `s2` (moved by h); the part of p landing in q is moved by
    the reduced word h g.

    Raises
    ------
    HypothesisMismatch
        If the target of `s1` is not inside the source of `s2`

    """
    if not s1.target.issubset(s2.source):
        raise HypothesisMismatch('Target {} is not inside source {}'.format(s1.target,
                                                                            s2.source))
    space = s1.space
    pieces = []
    for p, g in s1.pieces:
        back = action.element(inverse_word(g))
        for q, h in s2.pieces:
            part = apply(back, ClopenSet(space, [q], _canonical=True))
            part = part & ClopenSet(space, [p], _canonical=True)
            word = reduce_word(h + g)
            pieces.extend((c, word) for c in part.cylinders)
    return SubequivalenceScheme(s1.source, s2.target, pieces)


def restrict_scheme(action, s, F):
    """Scheme for a subset F of the source, with the same target."""
    if not F.issubset(s.source):
        raise HypothesisMismatch('{} is not inside the source {}'.format(F, s.source))
    pieces = []
    for p, w in s.pieces:
        part = F & ClopenSet(s.space, [p], _canonical=True)
        pieces.extend((c, w) for c in part.cylinders)
    return SubequivalenceScheme(F, s.target, pieces)


def widen_target(s, O):
    """The same scheme with a larger target."""
    if not s.target.issubset(O):
        raise HypothesisMismatch('{} is not inside {}'.format(s.target, O))
    return SubequivalenceScheme(s.source, O, s.pieces)


def identity_scheme(F, O):
    return SubequivalenceScheme(F, O, [(c, IDENTITY_WORD) for c in F.cylinders])


def multi_subequivalence(action, F, O, n, bounds=DEFAULT_BOUNDS, _witnesses=None):
    """Schemes F < O_1, ..., F < O_n with pairwise disjoint targets
    inside O, for F inside O.

    The targets come from repeated doubling: every current target T is
    split by a paradoxical witness for T into two disjoint subsets, and
    the schemes are composed along the way.

    Returns
    -------
    list of SubequivalenceScheme

    Raises
    ------
    NoParadoxicalWitness
        If a paradoxical witness needed for doubling is not found

    """
    if n < 1:
        raise ValueError('n must be at least 1, got {}'.format(n))
    if not F.issubset(O):
        raise HypothesisMismatch('{} is not inside {}'.format(F, O))
    if _witnesses is None:
        _witnesses = {}
    level = [identity_scheme(O, O)]
    rounds = 0
    while len(level) < n:
        next_level = []
        for s in level:
            T = s.target
            w = _witnesses.get(T)
            if w is None:
                w = check_paradoxical(action, T, bounds)
                if not isinstance(w, ParadoxicalWitness):
                    raise NoParadoxicalWitness('No paradoxical witness for {}: {!r}'.format(T, w))
                _witnesses[T] = w
            next_level.append(compose_schemes(action, s, w.s1))
            next_level.append(compose_schemes(action, s, w.s2))
        level = next_level
        rounds += 1
    LOGGER.debug('{} targets after {} doubling rounds'.format(len(level), rounds))
    return [restrict_scheme(action, s, F) for s in level[:n]]


def check_paradoxical(action, A, bounds=DEFAULT_BOUNDS):
    """Search two schemes moving A into disjoint subsets of itself.

    Returns
    -------
    ParadoxicalWitness, Refuted or NotFound
        A refutation carries an invariant content with mu(A) = 1

    """
    if A.is_empty:
        raise ValueError('The set must be nonempty')
    elements = enumerate_elements(action, bounds.word_length)
    depth_lp = lp_depth(action, bounds, A)
    if elements.complete:
        refuted = refute_paradoxical(action, A, depth_lp)
        if refuted is not None:
            return refuted

    reason = 'exhausted'
    for d in _piece_depths(A, bounds):
        pieces = refine(A.space, A, d)
        status, chosen = _pack_into(A, pieces + pieces, elements, bounds.node_budget)
        if status == 'found':
            first, second = chosen[:len(pieces)], chosen[len(pieces):]
            O1 = ClopenSet(A.space, [c for _, img in first for c in img.words])
            O2 = ClopenSet(A.space, [c for _, img in second for c in img.words])
            s1 = SubequivalenceScheme(A, O1, [(p, w) for p, (w, _) in zip(pieces, first)])
            s2 = SubequivalenceScheme(A, O2, [(p, w) for p, (w, _) in zip(pieces, second)])
            witness = ParadoxicalWitness(A, s1, s2)
            assert verify_paradoxical(action, witness)
            LOGGER.info('found paradoxical witness for {} with pieces of depth {}'.format(A, d))
            return witness
        if status == 'budget':
            reason = 'budget'
            LOGGER.warning('node budget exhausted at piece depth {}'.format(d))
            break

    if not elements.complete:
        refuted = refute_paradoxical(action, A, depth_lp)
        if refuted is not None:
            return refuted
    return NotFound(bounds, reason)


def check_weak_paradoxical(action, F, O, bounds=DEFAULT_BOUNDS):
    """Search a scheme for F < O through a finite cover of F by
    translates of O.

    F is cut into the parts W_i covered by translates h_i(O); the parts
    are moved back into O, and the resulting sets V_i are moved into
    pairwise disjoint subsets of O obtained by doubling.

    Returns
    -------
    SubequivalenceScheme, NotCovered or NotFound

    """
    if F.is_empty:
        return SubequivalenceScheme(F, O, [])
    if O.is_empty:
        return NotCovered(F, bounds)

    remaining = F
    parts = []
    for w, g in enumerate_elements(action, bounds.word_length):
        translate = apply(g, O)
        W = remaining & translate
        if not W.is_empty:
            parts.append((w, W))
            remaining = remaining - translate
            if remaining.is_empty:
                break
    if not remaining.is_empty:
        LOGGER.info('translates of {} leave {} uncovered'.format(O, remaining))
        return NotCovered(remaining, bounds)

    try:
        schemes = multi_subequivalence(action, O, O, len(parts), bounds)
    except NoParadoxicalWitness as e:
        LOGGER.info(str(e))
        return NotFound(bounds, 'exhausted')

    pieces = []
    for (h, W), s in zip(parts, schemes):
        h_inv = inverse_word(h)
        V = apply(action.element(h_inv), W)
        back = SubequivalenceScheme(W, V, [(c, h_inv) for c in W.cylinders])
        moved = compose_schemes(action, back, restrict_scheme(action, s, V))
        pieces.extend(moved.pieces)
    scheme = SubequivalenceScheme(F, O, pieces)
    assert verify_scheme(action, scheme)
    return scheme


def _content_for_checks(action, depth):
    result = invariant_probability_measure(action, max(depth, minimal_depth(action)))
    if isinstance(result, InvariantContent):
        return result
    return None


def _cover_search(action, sets, elements, budget):
    """Search words g_i with g_1(U_1) u ... u g_n(U_n) = X."""
    space = action.space
    whole = space.whole
    cands = []
    for U in sets:
        seen = set()
        lst = []
        for w, g in elements:
            img = apply(g, U)
            if img.words not in seen:
                seen.add(img.words)
                lst.append((w, img))
        cands.append(lst)
    depth = max(img.max_length for lst in cands for _, img in lst)
    masks = CellMasks(whole, depth)
    mask_lists = [[masks.mask(img) for _, img in lst] for lst in cands]
    n = len(sets)
    full = masks.full

    def success(state):
        return state[0] == n and state[1] == full

    def expand(state):
        i, mask, chosen = state
        if i == n:
            return []
        return [(i + 1, mask | m, chosen + (k,)) for k, m in enumerate(mask_lists[i])]

    try:
        state = search([(0, 0, ())], success, expand, budget=budget)
    except SearchBudgetExceeded:
        return 'budget', None
    if state is None:
        return 'exhausted', None
    return 'found', [cands[i][k][0] for i, k in enumerate(state[2])]


def filling_tuples(space, n, depth):
    """The n-tuples of depth-`depth` cylinders, as sorted tuples of
    words."""
    cells = space.cylinders(depth)
    return [tuple(cells[i] for i in combo)
            for combo in combinations_with_replacement(range(len(cells)), n)]


def filling_label(space, words):
    return ','.join('[{}]'.format(space.format_word(w)) for w in words)


def check_n_filling(action, n, depth, bounds=DEFAULT_BOUNDS):
    """Check n-filling for all n-tuples of depth-`depth` cylinders.

    A tuple passes when group words g_i (within the word length bound)
    with g_1(U_1) u ... u g_n(U_n) = X are found. It fails when the
    invariant probability content computed at depth
    ``max(depth, minimal_depth(action))`` gives the cylinders total
    content below 1, or when the search exhausted a finite group.
    Otherwise it is inconclusive.

    The content only enforces invariance for the cylinders whose images
    are expressible at its depth, so a failure of the first kind is a
    bound relative to that depth. It is reported as a :class:`Refuted`
    whose claim ``1_X > 1_{U_1} + ... + 1_{U_n}`` replays as a measure
    certificate. Failures in a finite group carry no witness.

    Returns
    -------
    CheckReport

    """
    if n < 2:
        raise ValueError('n-filling needs n >= 2, got {}'.format(n))
    space = action.space
    elements = enumerate_elements(action, bounds.word_length)
    mu = _content_for_checks(action, depth)
    entries = []
    for words in filling_tuples(space, n, depth):
        label = filling_label(space, words)
        sets = tuple(ClopenSet(space, [w], _canonical=True) for w in words)
        if mu is not None:
            total = sum((mu.value(w) for w in words), Fraction(0))
            if total < 1:
                refuted = Refuted(mu, mu.depth, {'total': total},
                                  claim=((space.whole,), sets))
                entries.append(ReportEntry(label, 'fail', witness=refuted,
                                           detail='total content {}'.format(
                                               format_fraction(total))))
                continue
        status, found = _cover_search(action, list(sets), elements, bounds.node_budget)
        if status == 'found':
            entries.append(ReportEntry(label, 'pass', witness=(tuple(words), tuple(found))))
        elif status == 'exhausted' and elements.complete:
            entries.append(ReportEntry(label, 'fail', detail='no cover in the finite group'))
        else:
            entries.append(ReportEntry(label, 'inconclusive', detail=status))
    return CheckReport('{}-filling'.format(n), depth, bounds, entries)


def _depth_clopens(space, depth, proper=False):
    cells = space.cylinders(depth)
    if len(cells) > MAX_QUANTIFIED_CELLS:
        raise ValueError('{} cells at depth {}; at most {} can be quantified over'
                         .format(len(cells), depth, MAX_QUANTIFIED_CELLS))
    result = []
    for r in range(1, len(cells) + (0 if proper else 1)):
        for combo in combinations(cells, r):
            result.append(ClopenSet(space, combo))
    return result


def boundary_pairs(space, depth):
    """Pairs (F, O) of the strong boundary check: F proper and nonempty,
    O nonempty, both made of depth-`depth` cylinders."""
    sets = _depth_clopens(space, depth)
    return [(F, O) for F in _depth_clopens(space, depth, proper=True) for O in sets]


def boundary_label(F, O):
    return '{} into {}'.format(F, O)


def boundary_entry(action, F, O, elements, mu=None):
    """Report entry for a single pair: is there a g with g(F) inside O?"""
    label = boundary_label(F, O)
    if F.is_empty:
        return ReportEntry(label, 'pass', witness=(F, O, IDENTITY_WORD), detail='vacuous')
    for w, g in elements:
        if apply(g, F).issubset(O):
            return ReportEntry(label, 'pass', witness=(F, O, w))
    if mu is not None and mu.evaluate(F) > mu.evaluate(O):
        refuted = Refuted(mu, mu.depth, {'source': mu.evaluate(F), 'target': mu.evaluate(O)},
                          claim=((F,), (O,)))
        return ReportEntry(label, 'fail', witness=refuted, detail='content {} > {}'.format(
            format_fraction(mu.evaluate(F)), format_fraction(mu.evaluate(O))))
    if elements.complete:
        return ReportEntry(label, 'fail', detail='no element of the finite group works')
    return ReportEntry(label, 'inconclusive', detail='exhausted')


def check_strong_boundary(action, depth, bounds=DEFAULT_BOUNDS):
    """For every proper nonempty F and nonempty O made of
    depth-`depth` cylinders, search a single g with g(F) inside O.

    Returns
    -------
    CheckReport

    """
    elements = enumerate_elements(action, bounds.word_length)
    mu = _content_for_checks(action, depth)
    entries = [boundary_entry(action, F, O, elements, mu)
               for F, O in boundary_pairs(action.space, depth)]
    return CheckReport('strong boundary', depth, bounds, entries)


def comparison_pairs(space, depth):
    sets = _depth_clopens(space, depth)
    return [(V, O) for V in sets for O in sets]


def comparison_label(V, O):
    return '{} < {}'.format(V, O)


def check_dynamical_comparison(action, depth, bounds=DEFAULT_BOUNDS):
    """For nonempty V, O made of depth-`depth` cylinders with
    mu(V) < mu(O) for every invariant probability content at that depth,
    search a scheme for V < O.

    Pairs for which some content gives mu(V) >= mu(O) are vacuous. When
    no invariant probability content exists, every pair is tested.

    Returns
    -------
    CheckReport

    """
    depth_lp = max(depth, minimal_depth(action))
    has_content = isinstance(invariant_probability_measure(action, depth_lp), InvariantContent)
    entries = []
    for V, O in comparison_pairs(action.space, depth):
        label = comparison_label(V, O)
        if has_content:
            result = optimize_content(action, depth_lp, Normalization('probability'),
                                      lambda c: ((1 if O.contains_word(c) else 0)
                                                 - (1 if V.contains_word(c) else 0)))
            if isinstance(result, tuple) and result[1] is not None and result[1] <= 0:
                entries.append(ReportEntry(label, 'vacuous', detail='premise fails'))
                continue
        found = search_subequivalence(action, V, O, bounds, refute=False)
        if isinstance(found, SubequivalenceScheme):
            entries.append(ReportEntry(label, 'pass', witness=found))
        else:
            entries.append(ReportEntry(label, 'inconclusive', detail=found.reason))
    return CheckReport('dynamical comparison', depth, bounds, entries)


def find_open_tower(action, T, U, bounds=DEFAULT_BOUNDS):
    """Search a nonempty W inside U whose translates by the words T are
    pairwise disjoint.

    Cells of U are added greedily, in lexicographic order, at increasing
    depth; the first depth giving a nonempty W wins.

    Returns
    -------
    TowerWitness or NotFound

    """
    if len(T) == 0:
        raise ValueError('The tower needs at least one word')
    if U.is_empty:
        raise ValueError('The base set must be nonempty')
    space = action.space
    elements = [action.element(w) for w in T]
    for d in _piece_depths(U, bounds):
        images = [space.empty for _ in T]
        cells = []
        for c in refine(space, U, d):
            cell = ClopenSet(space, [c], _canonical=True)
            moved = [apply(g, cell) for g in elements]
            ok = True
            for i in range(len(T)):
                for j in range(len(T)):
                    if i == j:
                        continue
                    if not moved[i].isdisjoint(moved[j]) or not moved[i].isdisjoint(images[j]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                cells.append(c)
                images = [img | m for img, m in zip(images, moved)]
        if cells:
            tower = TowerWitness(T, ClopenSet(space, cells))
            assert verify_tower(action, tower)
            return tower
    return NotFound(bounds, 'exhausted')
