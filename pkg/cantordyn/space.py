#!/usr/bin/env python
"""
This module represents the Cantor-type space as a one-step subshift of
finite type (SFT) and provides the exact boolean algebra of its clopen
sets.

A point of the space is an infinite sequence of letters; a finite word
`w` denotes the cylinder [w] of all points starting with `w`. Words are
stored as tuples of letter indices; the user-facing letter names are only
used when parsing and formatting. Every clopen set is kept in a canonical
form (a merged antichain of cylinder words), so that two clopen sets are
equal as subsets of the space iff their canonical word sets are equal.

"""

import logging
import re

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .utils import partition

LOGGER = logging.getLogger(__name__)

__all__ = ['SftSpace', 'ClopenSet', 'validate_space', 'full_shift',
           'canonicalize', 'clopen_algebra', 'refine', 'compare_clopen',
           'parse_clopen', 'format_clopen', 'communicating_classes',
           'membership_table', 'SftError', 'EmptySpace', 'DeadEnd',
           'ShapeMismatch', 'InadmissibleWord', 'SpaceMismatch',
           'DepthTooSmall', 'UnknownLetter', 'BadLiteral']

CYLINDER_PAT = re.compile(r'^\[([^\[\]]*)\]$')
EMPTY_LITERAL = 'empty'


class SftError(Exception):
    pass


class EmptySpace(SftError):
    pass


class DeadEnd(SftError):
    pass


class ShapeMismatch(SftError):
    pass


class InadmissibleWord(SftError):
    pass


class SpaceMismatch(SftError):
    pass


class DepthTooSmall(SftError):
    pass


class UnknownLetter(SftError):
    pass


class BadLiteral(SftError):
    pass


def default_letter_names(k):
    if k <= 10:
        return tuple(str(i) for i in range(k))
    width = len(str(k - 1))
    return tuple('l{:0{w}d}'.format(i, w=width) for i in range(k))


class SftSpace(object):
    """A one-step subshift of finite type.

    Parameters
    ----------
    transitions : array_like
        A k x k boolean matrix; `transitions[i, j]` is True iff letter
        `j` may follow letter `i`.
    initial : array_like
        A boolean vector of length k marking the letters allowed in
        position 0.
    names : list of str, optional
        Letter names. The names must form a prefix code (no name is a
        prefix of another one), so that words can be written without
        separators. Defaults to '0', '1', ...

    Attributes
    ----------
    alphabet_size : int
        The number of letters k
    transitions : ndarray
        Read-only boolean transition matrix
    initial : ndarray
        Read-only boolean vector of initial letters
    names : tuple of str
        Letter names

    """

    def __init__(self, transitions, initial, names=None):
        transitions = np.array(transitions, dtype=bool)
        initial = np.array(initial, dtype=bool)

        if transitions.ndim != 2 or transitions.shape[0] != transitions.shape[1]:
            raise ShapeMismatch('Transition matrix must be square, got shape {}'
                                .format(transitions.shape))
        k = transitions.shape[0]
        if k == 0:
            raise EmptySpace('The alphabet is empty')
        if initial.shape != (k,):
            raise ShapeMismatch('Initial vector must have length {}, got shape {}'
                                .format(k, initial.shape))

        if names is None:
            names = default_letter_names(k)
        names = tuple(str(n) for n in names)
        if len(names) != k:
            raise ShapeMismatch('Expected {} letter names, got {}'
                                .format(k, len(names)))
        check_prefix_code(names)

        if not initial.any():
            raise EmptySpace('No letter is allowed in position 0')

        reachable = reachable_letters(transitions, initial)
        for i in reachable:
            if not transitions[i].any():
                raise DeadEnd('Letter {} has no allowed successor'
                              .format(names[i]))
        unreachable = sorted(set(range(k)) - set(reachable))
        if unreachable:
            LOGGER.warning('Letters {} never occur in admissible words'
                           .format(', '.join(names[i] for i in unreachable)))

        transitions.setflags(write=False)
        initial.setflags(write=False)

        self.alphabet_size = k
        self.transitions = transitions
        self.initial = initial
        self.names = names
        self._name_index = dict((n, i) for i, n in enumerate(names))
        self._successors = tuple(tuple(int(j) for j in np.flatnonzero(row))
                                 for row in transitions)
        self._initial_letters = tuple(int(j) for j in np.flatnonzero(initial))

    def _cmpkey(self):
        return (self.names, self.transitions.tobytes(), self.initial.tobytes())

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SftSpace):
            return NotImplemented
        return self._cmpkey() == other._cmpkey()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self._cmpkey())

    def __repr__(self):
        return 'SftSpace(letters={})'.format(' '.join(self.names))

    def successors(self, word):
        """Letters that may follow `word` (the initial letters if `word`
        is empty)."""
        if len(word) == 0:
            return self._initial_letters
        return self._successors[word[-1]]

    def is_admissible(self, word):
        prev = None
        for letter in word:
            if not 0 <= letter < self.alphabet_size:
                return False
            if prev is None:
                if not self.initial[letter]:
                    return False
            elif not self.transitions[prev, letter]:
                return False
            prev = letter
        return True

    def check_word(self, word):
        word = tuple(int(x) for x in word)
        if not self.is_admissible(word):
            raise InadmissibleWord('Word {} is not admissible'
                                   .format(self.format_word(word, strict=False)))
        return word

    def extensions(self, word, length):
        """Admissible extensions of `word` to total length `length`, in
        lexicographic order."""
        if len(word) >= length:
            yield tuple(word)
            return
        for c in self.successors(word):
            for ext in self.extensions(tuple(word) + (c,), length):
                yield ext

    def cylinders(self, depth):
        """All admissible words of length `depth`, in lexicographic
        order."""
        return list(self.extensions((), depth))

    @property
    def whole(self):
        return ClopenSet(self, [()], _canonical=True)

    @property
    def empty(self):
        return ClopenSet(self, [], _canonical=True)

    def parse_word(self, text):
        """Split `text` into letters by greedy matching of letter names.
        The empty string and '.' denote the empty word."""
        text = text.strip()
        if text in ('', '.'):
            return ()
        word = []
        pos = 0
        while pos < len(text):
            for name, idx in self._name_index.items():
                if text.startswith(name, pos):
                    word.append(idx)
                    pos += len(name)
                    break
            else:
                raise UnknownLetter('Cannot read a letter at position {} of {!r}'
                                    .format(pos, text))
        return tuple(word)

    def format_word(self, word, strict=True):
        if strict:
            return ''.join(self.names[i] for i in word)
        return ''.join(self.names[i] if 0 <= i < self.alphabet_size
                       else '<{}>'.format(i) for i in word)


def check_prefix_code(names):
    if len(set(names)) != len(names):
        raise ShapeMismatch('Letter names must be distinct')
    for a in names:
        if a == '' or any(c.isspace() for c in a) or any(c in '[]|.#' for c in a):
            raise ShapeMismatch('Invalid letter name {!r}'.format(a))
        for b in names:
            if a != b and b.startswith(a):
                raise ShapeMismatch('Letter names must form a prefix code; '
                                    '{!r} is a prefix of {!r}'.format(a, b))


def reachable_letters(transitions, initial):
    seen = set(int(i) for i in np.flatnonzero(initial))
    stack = list(seen)
    while stack:
        i = stack.pop()
        for j in np.flatnonzero(transitions[i]):
            j = int(j)
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return sorted(seen)


def validate_space(alphabet_size, transitions, initial, names=None):
    """Validate and build an SFT space.

    Parameters
    ----------
    alphabet_size : int
        Number of letters k
    transitions : array_like
        k x k boolean matrix
    initial : array_like
        Boolean vector of length k
    names : list of str, optional
        Letter names

    Returns
    -------
    SftSpace

    Raises
    ------
    ShapeMismatch
        If the shapes do not match `alphabet_size`
    EmptySpace
        If there is no admissible point
    DeadEnd
        If some reachable letter has no allowed successor

    """
    transitions = np.array(transitions, dtype=bool)
    initial = np.array(initial, dtype=bool)
    if transitions.shape != (alphabet_size, alphabet_size):
        raise ShapeMismatch('Expected a {0}x{0} matrix, got shape {1}'
                            .format(alphabet_size, transitions.shape))
    if initial.shape != (alphabet_size,):
        raise ShapeMismatch('Expected an initial vector of length {}, got shape {}'
                            .format(alphabet_size, initial.shape))
    return SftSpace(transitions, initial, names)


def full_shift(k, names=None):
    """The full shift on `k` letters."""
    return SftSpace(np.ones((k, k), dtype=bool), np.ones(k, dtype=bool), names)


class ClopenSet(object):
    """A clopen subset of an SFT space in canonical form.

    Use :func:`canonicalize` to build instances from arbitrary cylinder
    lists. The empty set has no cylinders; the whole space is the single
    empty word.

    Parameters
    ----------
    space : SftSpace
        The ambient space
    words : iterable of tuple
        Cylinder words

    Attributes
    ----------
    space : SftSpace
    words : frozenset of tuple
    cylinders : tuple of tuple
        The words in lexicographic order

    """

    def __init__(self, space, words, _canonical=False):
        if not _canonical:
            words = canonical_words(space, words)
        self.space = space
        self.words = frozenset(words)
        self.cylinders = tuple(sorted(self.words))
        self._prefixes = None

    def __eq__(self, other):
        if not isinstance(other, ClopenSet):
            return NotImplemented
        return self.words == other.words and self.space == other.space

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(self.words)

    def __lt__(self, other):
        return self.cylinders < other.cylinders

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.cylinders)

    def __bool__(self):
        return len(self.words) > 0

    def __str__(self):
        return format_clopen(self)

    def __repr__(self):
        return 'ClopenSet({!r})'.format(format_clopen(self))

    @property
    def is_empty(self):
        return len(self.words) == 0

    @property
    def is_whole(self):
        return self.words == frozenset([()])

    @property
    def max_length(self):
        return max((len(w) for w in self.words), default=0)

    def prefixes(self):
        """All prefixes (including the words themselves) of the
        cylinders."""
        if self._prefixes is None:
            self._prefixes = frozenset(w[:i] for w in self.words
                                       for i in range(len(w) + 1))
        return self._prefixes

    def contains_word(self, word):
        """True iff the cylinder [word] is contained in the set."""
        return any(tuple(word[:i]) in self.words for i in range(len(word) + 1))

    def meets_word(self, word):
        """True iff the cylinder [word] intersects the set."""
        return self.contains_word(word) or tuple(word) in self.prefixes()

    def __or__(self, other):
        return clopen_algebra(self.space, 'union', self, other)

    def __and__(self, other):
        return clopen_algebra(self.space, 'intersection', self, other)

    def __sub__(self, other):
        return clopen_algebra(self.space, 'difference', self, other)

    def complement(self):
        return clopen_algebra(self.space, 'complement', self)

    def issubset(self, other):
        return (self & other) == self

    def isdisjoint(self, other):
        return (self & other).is_empty


def canonical_words(space, words):
    words = set(space.check_word(w) for w in words)

    # antichain: drop words having a proper prefix in the set
    words = set(w for w in words
                if not any(w[:i] in words for i in range(len(w))))

    by_length = partition(len, words)
    max_len = max(by_length.keys(), default=0)
    for length in range(max_len, 0, -1):
        level = by_length.get(length, [])
        kept = []
        for parent, children in sorted(partition(lambda w: w[:-1], level).items()):
            letters = set(w[-1] for w in children)
            if letters == set(space.successors(parent)):
                by_length.setdefault(length - 1, []).append(parent)
            else:
                kept.extend(children)
        by_length[length] = kept
    return [w for level in by_length.values() for w in level]


def canonicalize(space, cylinders):
    """Canonical clopen set of a list of cylinder words.

    Parameters
    ----------
    space : SftSpace
    cylinders : iterable of tuple

    Returns
    -------
    ClopenSet

    Raises
    ------
    InadmissibleWord
        If some word is not admissible

    Examples
    --------
    >>> X = full_shift(2)
    >>> str(canonicalize(X, [(0,), (1,)]))
    '[]'
    >>> str(canonicalize(X, [(0,), (0, 1)]))
    '[0]'

    """
    return ClopenSet(space, cylinders)


def _check_same_space(space, *sets):
    for A in sets:
        if A.space != space:
            raise SpaceMismatch('Clopen set {} lives on a different space'
                                .format(A))


def _intersection(A, B):
    result = [a for a in A.words if any(a[:i] in B.words for i in range(len(a) + 1))]
    result.extend(b for b in B.words if any(b[:i] in A.words for i in range(len(b))))
    return ClopenSet(A.space, result)


def _complement(A):
    space = A.space
    prefixes = A.prefixes()
    result = []

    def walk(word):
        if word in A.words:
            return
        if word not in prefixes:
            result.append(word)
            return
        for c in space.successors(word):
            walk(word + (c,))

    walk(())
    return ClopenSet(space, result)


def clopen_algebra(space, op, A, B=None):
    """Boolean operations on clopen sets.

    Parameters
    ----------
    space : SftSpace
    op : {'union', 'intersection', 'complement', 'difference'}
    A : ClopenSet
    B : ClopenSet, optional
        Second operand (not used for 'complement')

    Returns
    -------
    ClopenSet

    """
    if op == 'complement':
        _check_same_space(space, A)
        return _complement(A)

    if B is None:
        raise ValueError('Operation {} needs two operands'.format(op))
    _check_same_space(space, A, B)

    if op == 'union':
        return ClopenSet(space, list(A.words) + list(B.words))
    elif op == 'intersection':
        return _intersection(A, B)
    elif op == 'difference':
        return _intersection(A, _complement(B))
    else:
        raise ValueError('Unknown clopen operation {!r}'.format(op))


def refine(space, A, depth):
    """The depth-`depth` cylinders whose union is `A`, in lexicographic
    order.

    Raises
    ------
    DepthTooSmall
        If `depth` is smaller than the longest cylinder of `A`

    """
    _check_same_space(space, A)
    if depth < A.max_length:
        raise DepthTooSmall('Cannot refine a set with cylinders of length {} '
                            'to depth {}'.format(A.max_length, depth))
    result = []
    for w in A.cylinders:
        result.extend(space.extensions(w, depth))
    return sorted(result)


def compare_clopen(space, A, B):
    """The relation between two clopen sets, one of 'equal', 'subset',
    'superset', 'disjoint' or 'overlapping'. 'subset' means strict
    containment."""
    _check_same_space(space, A, B)
    if A == B:
        return 'equal'
    common = _intersection(A, B)
    if common == A:
        return 'subset'
    if common == B:
        return 'superset'
    if common.is_empty:
        return 'disjoint'
    return 'overlapping'


def membership_table(A, depth):
    """Boolean vector over ``A.space.cylinders(depth)`` marking the cells
    inside `A`."""
    cells = A.space.cylinders(depth)
    return np.array([A.contains_word(c) for c in cells], dtype=bool)


def communicating_classes(space):
    """Strongly connected components of the transition graph, restricted
    to letters occurring in admissible words.

    Returns
    -------
    list of tuple of int
        Components sorted by their smallest letter

    """
    n_comp, labels = connected_components(csr_matrix(space.transitions.astype(int)),
                                          directed=True, connection='strong')
    reachable = set(reachable_letters(space.transitions, space.initial))
    comps = partition(lambda i: int(labels[i]), sorted(reachable))
    return sorted(tuple(c) for c in comps.values())


def parse_clopen(space, text):
    """Read a clopen literal such as ``"[aa]|[ab]"``; ``"[]"`` is the
    whole space and ``"empty"`` the empty set."""
    text = text.strip()
    if text == EMPTY_LITERAL:
        return space.empty
    words = []
    for part in text.split('|'):
        m = CYLINDER_PAT.match(part.strip())
        if m is None:
            raise BadLiteral('Cannot read cylinder {!r} in {!r}'.format(part, text))
        try:
            words.append(space.parse_word(m.group(1)))
        except UnknownLetter as e:
            raise BadLiteral(str(e))
    try:
        return canonicalize(space, words)
    except InadmissibleWord as e:
        raise BadLiteral(str(e))


def format_clopen(A):
    if A.is_empty:
        return EMPTY_LITERAL
    return '|'.join('[{}]'.format(A.space.format_word(w)) for w in A.cylinders)
