#!/usr/bin/env python
"""
This module implements finitely generated fragments of the type
semigroup of an action: nonnegative integer step functions up to
equivalence by translated decompositions.

A step function is kept in level-set form ``f = 1_{A_1} + ... + 1_{A_n}``
with ``A_i = {f >= i}``. The order ``[f] <= [g]`` is witnessed by an
:class:`OrderWitness`, a decomposition of `f` into weighted cylinders
moved by group words such that the translated parts stay below `g`
pointwise.

"""

import logging
import re
from fractions import Fraction
from itertools import product

from .space import ClopenSet, SpaceMismatch, BadLiteral, refine, parse_clopen, format_clopen
from .action import (enumerate_elements, reduce_word, inverse_word,
                     IDENTITY_WORD)
from .measures import Normalization, optimize_content, minimal_depth
from .comparison import (DEFAULT_BOUNDS, NotFound, Refuted, VerificationReport,
                         ParadoxicalWitness, SubequivalenceScheme, HypothesisMismatch,
                         CheckReport, ReportEntry, CellMasks, candidate_images,
                         check_paradoxical, verify_paradoxical)
from .solvers import pack_pieces

LOGGER = logging.getLogger(__name__)

__all__ = ['TypeElement', 'OrderWitness', 'canonical_type_element', 'indicator',
           'add', 'search_order', 'verify_order_witness', 'identity_witness',
           'compose_order_witnesses', 'add_order_witnesses',
           'witness_from_paradoxical', 'paradoxical_from_witness',
           'multiple_order_witness', 'check_purely_infinite_fragment',
           'check_almost_unperforation_instances', 'evaluate_type',
           'fragment_elements', 'parse_type', 'format_type', 'MULTIPLICITY_CAP']

MULTIPLICITY_CAP = 4
MULTIPLICITY_PAT = re.compile(r'^(?:(\d+)\s*\*)?\s*(.+)$')


class TypeElement(object):
    """A nonnegative integer step function in level-set form.

    Use :func:`canonical_type_element` to build instances.

    Parameters
    ----------
    space : SftSpace
    levels : tuple of ClopenSet
        The descending chain ``A_1 >= A_2 >= ... >= A_n`` of nonempty
        level sets

    """

    def __init__(self, space, levels):
        self.space = space
        self.levels = tuple(levels)

    def __eq__(self, other):
        return (isinstance(other, TypeElement) and self.space == other.space
                and self.levels == other.levels)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        return 'TypeElement({})'.format(format_type(self))

    @property
    def is_zero(self):
        return len(self.levels) == 0

    @property
    def max_length(self):
        return max([0] + [A.max_length for A in self.levels])

    @property
    def height(self):
        """Maximal value of the step function."""
        return len(self.levels)

    @property
    def support(self):
        return self.levels[0] if self.levels else self.space.empty

    def value_on(self, cell):
        """Value on a cylinder contained in every level set it meets."""
        return sum(1 for A in self.levels if A.contains_word(cell))

    def pairs(self):
        """Weighted cylinders summing to this function."""
        return [(c, 1) for A in self.levels for c in A.cylinders]

    def le(self, other):
        """Pointwise comparison."""
        return (self.height <= other.height
                and all(A.issubset(B) for A, B in zip(self.levels, other.levels)))

    def __add__(self, other):
        return add(self, other)

    def scale(self, n):
        if n < 0:
            raise ValueError('Cannot scale by a negative number')
        return canonical_type_element(self.space, [(c, n) for c, _ in self.pairs()])


def format_type(f):
    """Literal of a type element: its level sets joined by ``+``, or
    ``0``."""
    if f.is_zero:
        return '0'
    return ' + '.join(format_clopen(A) for A in f.levels)


def _split_terms(text):
    terms = []
    depth = 0
    current = []
    for ch in text:
        if ch == '[':
            depth += 1
        elif ch == ']':
            depth -= 1
        if ch == '+' and depth == 0:
            terms.append(''.join(current))
            current = []
        else:
            current.append(ch)
    terms.append(''.join(current))
    return [t.strip() for t in terms]


def parse_type(space, text):
    """Read a type element literal such as ``"2*[a] + [b]|[B]"``.

    Each term is a clopen literal, optionally preceded by a multiplicity
    ``k*``; ``0`` is the zero element.

    """
    text = text.strip()
    if text == '0':
        return TypeElement(space, ())
    pairs = []
    for term in _split_terms(text):
        m = MULTIPLICITY_PAT.match(term)
        if m is None:
            raise BadLiteral('Cannot read term {!r}'.format(term))
        mult = int(m.group(1)) if m.group(1) else 1
        pairs.extend((c, mult) for c in parse_clopen(space, m.group(2)).cylinders)
    return canonical_type_element(space, pairs)


def _cell_counts(space, pairs):
    depth = max([0] + [len(w) for w, m in pairs if m > 0])
    counts = {}
    for w, m in pairs:
        w = space.check_word(w)
        if not isinstance(m, int) or m < 0:
            raise ValueError('Multiplicities must be nonnegative integers, got {!r}'.format(m))
        if m == 0:
            continue
        for c in space.extensions(w, depth):
            counts[c] = counts.get(c, 0) + m
    return counts


def canonical_type_element(space, f):
    """Level-set form of the step function ``sum m 1_[w]``.

    Parameters
    ----------
    space : SftSpace
    f : iterable of (tuple, int)
        Cylinder words with multiplicities

    Returns
    -------
    TypeElement

    """
    counts = _cell_counts(space, list(f))
    top = max([0] + list(counts.values()))
    levels = [ClopenSet(space, [c for c, k in counts.items() if k >= i])
              for i in range(1, top + 1)]
    return TypeElement(space, levels)


def indicator(A):
    return canonical_type_element(A.space, [(c, 1) for c in A.cylinders])


def add(f, g):
    if f.space != g.space:
        raise SpaceMismatch('Type elements live on different spaces')
    return canonical_type_element(f.space, f.pairs() + g.pairs())


def evaluate_type(content, f):
    """Integral of `f` against an invariant content."""
    return sum((content.evaluate(A) for A in f.levels), Fraction(0))


class OrderWitness(object):
    """Decomposition witnessing ``[f] <= [g]``.

    Parameters
    ----------
    parts : iterable of (tuple, int, tuple)
        Triples of a cylinder word, a multiplicity and a group word

    """

    def __init__(self, parts):
        self.parts = tuple(sorted((tuple(c), int(m), tuple(w)) for c, m, w in parts))

    def __eq__(self, other):
        return isinstance(other, OrderWitness) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return 'OrderWitness({} parts)'.format(len(self.parts))

    def units(self):
        """The parts expanded by multiplicity, as ``(cylinder, word)``."""
        return [(c, w) for c, m, w in self.parts for _ in range(m)]

    def source(self, space):
        return canonical_type_element(space, [(c, m) for c, m, _ in self.parts])

    def image(self, action):
        pairs = []
        for c, m, w in self.parts:
            pairs.extend((d, m) for d in action.element(w).image_words(c))
        return canonical_type_element(action.space, pairs)


def verify_order_witness(action, f, g, w, exact=False):
    """Check a witness for ``[f] <= [g]`` by exact step-function
    arithmetic.

    The clauses are 'decomposition' (the parts sum to `f`) and
    'pointwise_bound' (the translated parts stay below `g`, or equal `g`
    when `exact` is set).

    Returns
    -------
    VerificationReport

    """
    if f.space != action.space or g.space != action.space:
        raise SpaceMismatch('Type elements and action live on different spaces')
    for c, m, word in w.parts:
        if not action.space.is_admissible(c) or m < 0:
            return VerificationReport(False, 'decomposition', 'invalid part')
        for gen, e in word:
            if not 0 <= gen < len(action.generators) or e not in (1, -1):
                return VerificationReport(False, 'decomposition', 'invalid group word')
    source = w.source(action.space)
    if source != f:
        return VerificationReport(False, 'decomposition',
                                  'parts sum to {} instead of {}'.format(format_type(source),
                                                                        format_type(f)))
    image = w.image(action)
    if exact and image != g:
        return VerificationReport(False, 'pointwise_bound', 'translated parts differ from g')
    if not image.le(g):
        return VerificationReport(False, 'pointwise_bound',
                                  'translated parts {} exceed {}'.format(format_type(image),
                                                                        format_type(g)))
    return VerificationReport(True)


def identity_witness(f):
    return OrderWitness([(c, 1, IDENTITY_WORD) for c, _ in f.pairs()])


def refute_order(action, f, g, depth):
    """Look for an invariant content with ``int f = 1 > int g``."""
    result = optimize_content(action, depth, Normalization('type', f), g.value_on)
    if isinstance(result, tuple) and result[0] is not None and result[1] < 1:
        return Refuted(result[0], depth, {'source': Fraction(1), 'target': result[1]},
                       claim=(f.levels, g.levels))
    return None


def _pack_into_layers(g, pieces, elements, budget):
    """Place translates of the `pieces` into the level sets of `g`, at
    most one translate per point and level."""
    cands = candidate_images(pieces, g.support, elements)
    depth = max([g.max_length] + [img.max_length for p in cands for _, img in cands[p]])
    layers = [CellMasks(A, depth) for A in g.levels]
    offsets = [0]
    for m in layers:
        offsets.append(offsets[-1] + len(m.cells))
    placements = {}
    for p in cands:
        lst = []
        for w, img in cands[p]:
            for k, (A, m) in enumerate(zip(g.levels, layers)):
                if all(A.contains_word(c) for c in img.cylinders):
                    lst.append((w, m.mask(img) << offsets[k]))
        placements[p] = lst
    if any(len(placements[p]) == 0 for p in pieces):
        return 'exhausted', None
    result = pack_pieces([[m for _, m in placements[p]] for p in pieces], budget=budget)
    if not result.found:
        return result.status, None
    return 'found', [placements[p][k][0] for p, k in zip(pieces, result.assignment)]


def search_order(action, f, g, bounds=DEFAULT_BOUNDS, multiplicity_cap=MULTIPLICITY_CAP):
    """Search a witness for ``[f] <= [g]``.

    The level sets of `f` are cut into cylinders of increasing depth and
    placed, by translates within the word length bound, into the level
    sets of `g`. When this fails an invariant content with
    ``int f > int g`` is looked for.

    Returns
    -------
    OrderWitness, Refuted or NotFound
        NotFound with reason 'multiplicity' when `f` or `g` exceeds
        `multiplicity_cap` and no content refutes the order. The cap
        bounds the witness search only

    """
    if f.space != g.space or f.space != action.space:
        raise SpaceMismatch('Type elements and action live on different spaces')
    if f.le(g):
        return identity_witness(f)
    if g.is_zero:
        return refute_order(action, f, g, max(bounds.depth, minimal_depth(action),
                                               f.max_length)) or NotFound(bounds, 'exhausted')
    depth_lp = max(bounds.depth, minimal_depth(action), f.max_length, g.max_length)
    if f.height > multiplicity_cap or g.height > multiplicity_cap:
        refuted = refute_order(action, f, g, depth_lp)
        if refuted is not None:
            return refuted
        LOGGER.warning('multiplicity above {}; not searching'.format(multiplicity_cap))
        return NotFound(bounds, 'multiplicity')

    elements = enumerate_elements(action, bounds.word_length)
    if elements.complete:
        refuted = refute_order(action, f, g, depth_lp)
        if refuted is not None:
            return refuted

    reason = 'exhausted'
    for d in range(f.max_length, max(bounds.depth, f.max_length) + 1):
        pieces = [p for A in f.levels for p in refine(f.space, A, d)]
        status, words = _pack_into_layers(g, pieces, elements, bounds.node_budget)
        if status == 'found':
            witness = OrderWitness([(p, 1, w) for p, w in zip(pieces, words)])
            assert verify_order_witness(action, f, g, witness)
            LOGGER.info('order witness with {} parts at depth {}'.format(len(pieces), d))
            return witness
        if status == 'budget':
            reason = 'budget'
            LOGGER.warning('node budget exhausted at piece depth {}'.format(d))
            break

    if not elements.complete:
        refuted = refute_order(action, f, g, depth_lp)
        if refuted is not None:
            return refuted
    return NotFound(bounds, reason)


def compose_order_witnesses(action, w1, w2):
    """Witness for ``[f] <= [h]`` from witnesses for ``[f] <= [g]`` and
    ``[g] <= [h]``.

    Every translated unit of `w1` is cut along the depth-D cells and
    handed to one of the units of `w2` covering the cell, which then
    moves it on.

    Raises
    ------
    HypothesisMismatch
        If the translated parts of `w1` are not covered by the parts of
        `w2`

    """
    space = action.space
    units1 = w1.units()
    units2 = w2.units()
    depth = max([1] + [len(c) for c, _ in units2]
                + [action.element(w).apply_word(c).max_length for c, w in units1])
    slots = {}
    for q, t in units2:
        for c in space.extensions(q, depth):
            slots.setdefault(c, []).append(t)
    used = {}
    parts = []
    for p, s in units1:
        back = action.element(inverse_word(s))
        for cyl in action.element(s).image_words(p):
            for c in space.extensions(cyl, depth):
                k = used.get(c, 0)
                if k >= len(slots.get(c, ())):
                    raise HypothesisMismatch('Cell [{}] is not covered by the second witness'
                                             .format(space.format_word(c)))
                used[c] = k + 1
                word = reduce_word(slots[c][k] + s)
                parts.extend((q, 1, word) for q in back.image_words(c))
    return OrderWitness(parts)


def add_order_witnesses(w1, w2):
    """Witness for ``[f1] + [f2] <= [g1] + [g2]``."""
    return OrderWitness(w1.parts + w2.parts)


def witness_from_paradoxical(action, w):
    """Witness for ``2[1_A] <= [1_A]`` from a paradoxical witness for A.

    Returns
    -------
    (TypeElement, TypeElement, OrderWitness)

    """
    one = indicator(w.A)
    parts = [(p, 1, word) for s in (w.s1, w.s2) for p, word in s.pieces]
    return one.scale(2), one, OrderWitness(parts)


def paradoxical_from_witness(action, A, w):
    """Paradoxical witness for A from a witness for ``2[1_A] <= [1_A]``.

    The parts are cut into cells of a common depth; the first unit over
    each cell goes to the first scheme and the second unit to the other.

    Raises
    ------
    HypothesisMismatch
        If `w` does not verify ``2[1_A] <= [1_A]``

    """
    space = action.space
    one = indicator(A)
    if not verify_order_witness(action, one.scale(2), one, w):
        raise HypothesisMismatch('Not a witness for 2[1_A] <= [1_A]')
    units = w.units()
    depth = max([A.max_length] + [len(c) for c, _ in units])
    seen = set()
    first, second = [], []
    for p, s in units:
        for c in space.extensions(p, depth):
            if c in seen:
                second.append((c, s))
            else:
                seen.add(c)
                first.append((c, s))
    schemes = []
    for pieces in (first, second):
        target = ClopenSet(space, [d for c, s in pieces
                                   for d in action.element(s).image_words(c)])
        schemes.append(SubequivalenceScheme(A, target, pieces))
    witness = ParadoxicalWitness(A, schemes[0], schemes[1])
    assert verify_paradoxical(action, witness)
    return witness


def multiple_order_witness(action, f, w, m):
    """Witness for ``m[f] <= [f]`` from a witness `w` for ``2[f] <= [f]``.

    Uses ``(k+1)[f] = k[f] + [f] <= [f] + [f] <= [f]``.

    """
    if m < 0:
        raise ValueError('m must be nonnegative')
    if m == 0:
        return OrderWitness([])
    current = identity_witness(f)
    for _ in range(m - 1):
        current = compose_order_witnesses(
            action, add_order_witnesses(current, identity_witness(f)), w)
    return current


def fragment_elements(space, depth, max_multiplicity=2):
    """All step functions constant on depth-`depth` cylinders with values
    up to `max_multiplicity`, in lexicographic order of their values."""
    cells = space.cylinders(depth)
    result = []
    for values in product(range(max_multiplicity + 1), repeat=len(cells)):
        result.append(canonical_type_element(space, list(zip(cells, values))))
    return result


def _levelwise_doubling(action, f, bounds, cache):
    """Witness for ``2[f] <= [f]`` assembled from paradoxical witnesses
    for the level sets of `f`, or the first non-witness result."""
    total = OrderWitness([])
    for A in f.levels:
        w = cache.get(A)
        if w is None:
            w = check_paradoxical(action, A, bounds)
            cache[A] = w
        if not isinstance(w, ParadoxicalWitness):
            return w
        total = add_order_witnesses(total, witness_from_paradoxical(action, w)[2])
    return total


def check_purely_infinite_fragment(action, depth, bounds=DEFAULT_BOUNDS):
    """Check ``2[f] <= [f]`` for every step function on the
    depth-`depth` cylinders with values at most 2.

    Returns
    -------
    CheckReport

    """
    if depth < 1:
        raise ValueError('depth must be at least 1')
    cache = {}
    entries = []
    for f in fragment_elements(action.space, depth):
        label = format_type(f)
        if f.is_zero:
            entries.append(ReportEntry(label, 'pass', witness=(f, f, OrderWitness([])),
                                       detail='zero'))
            continue
        double = f.scale(2)
        result = _levelwise_doubling(action, f, bounds, cache)
        if isinstance(result, NotFound):
            result = search_order(action, double, f, bounds)
        if isinstance(result, OrderWitness):
            assert verify_order_witness(action, double, f, result)
            entries.append(ReportEntry(label, 'pass', witness=(double, f, result)))
        elif isinstance(result, Refuted):
            claim = (double.levels, f.levels) if result.content.depth >= f.max_length else None
            result = Refuted(result.content, result.depth, result.values, claim)
            entries.append(ReportEntry(label, 'fail', witness=result,
                                       detail='refuted at depth {}'.format(result.depth)))
        else:
            entries.append(ReportEntry(label, 'inconclusive', detail=result.reason))
    return CheckReport('purely infinite', depth, bounds, entries)


def check_almost_unperforation_instances(action, triples, bounds=DEFAULT_BOUNDS):
    """For triples ``(f, g, n)``: whenever ``(n+1)[f] <= n[g]`` is
    witnessed, look for a witness of ``[f] <= [g]``, retrying with
    doubled bounds.

    Entries are 'pass', 'vacuous' (the premise is refuted or `f` is
    zero), 'premise-inconclusive' or 'inconclusive'. A bounded search
    never produces a counterexample.

    Returns
    -------
    CheckReport

    """
    entries = []
    for f, g, n in triples:
        if n < 1:
            raise ValueError('n must be at least 1, got {}'.format(n))
        label = '({}) {} <= {} ({})'.format(n + 1, format_type(f), n, format_type(g))
        if f.is_zero:
            entries.append(ReportEntry(label, 'vacuous', detail='zero'))
            continue
        premise = search_order(action, f.scale(n + 1), g.scale(n), bounds)
        if isinstance(premise, Refuted):
            entries.append(ReportEntry(label, 'vacuous', witness=premise,
                                       detail='premise refuted'))
            continue
        if not isinstance(premise, OrderWitness):
            entries.append(ReportEntry(label, 'premise-inconclusive', detail=premise.reason))
            continue
        conclusion = search_order(action, f, g, bounds)
        if not isinstance(conclusion, OrderWitness):
            conclusion = search_order(action, f, g, bounds.doubled())
        if isinstance(conclusion, OrderWitness):
            entries.append(ReportEntry(label, 'pass', witness=(f, g, conclusion)))
        else:
            entries.append(ReportEntry(label, 'inconclusive', detail=repr(conclusion)))
    return CheckReport('almost unperforation', 0, bounds, entries)
