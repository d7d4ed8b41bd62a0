#!/usr/bin/env python
"""
This module represents homeomorphisms of an SFT space as prefix
exchanges, i.e. finite rule systems ``u -> v`` that rewrite a prefix `u`
of a point into `v` and keep the tail. Exchanges are kept in a unique
normal form, so that group elements can be compared by their rules.

Group words are tuples of ``(generator index, exponent)`` pairs, with
exponent +1 or -1. A word ``l1 l2 ... lk`` denotes the composition
``l1 o l2 o ... o lk`` (the rightmost letter acts first).

Only homeomorphisms given by finitely many prefix rewrites can be
represented. Odometers and groups generated by Mealy machines that need
unboundedly long prefixes are outside of this model.

"""

import logging
import string

import numpy as np

from .space import SftSpace, ClopenSet, InadmissibleWord, SpaceMismatch, full_shift
from .utils import ComparableMixin, partition

LOGGER = logging.getLogger(__name__)

__all__ = ['PrefixExchange', 'Action', 'TowerWitness', 'ElementList',
           'validate_exchange', 'identity_exchange', 'apply', 'compose',
           'invert', 'evaluate_word', 'builtin_action', 'free_boundary',
           'bit_permutation', 'product_with_trivial', 'space_description',
           'fixed_cylinders',
           'invariant_clopen_saturation', 'enumerate_elements',
           'verify_tower', 'freeness_evidence', 'reduce_word',
           'inverse_word', 'IDENTITY_WORD',
           'ActionError', 'IncompleteDomain', 'OverlappingDomain',
           'TailMismatch', 'NotBijective', 'UnknownGenerator', 'UnknownName',
           'BadParams']

IDENTITY_WORD = ()
IDENTITY_NAME = 'e'
INVERSE_SUFFIX = '^-1'
DEFAULT_SATURATION_ROUNDS = 16


class ActionError(Exception):
    pass


class IncompleteDomain(ActionError):
    pass


class OverlappingDomain(ActionError):
    pass


class TailMismatch(ActionError):
    pass


class NotBijective(ActionError):
    pass


class UnknownGenerator(ActionError):
    pass


class UnknownName(ActionError):
    pass


class BadParams(ActionError):
    pass


def is_prefix(a, b):
    return len(a) <= len(b) and b[:len(a)] == a


class PrefixExchange(ComparableMixin):
    """A homeomorphism given by prefix rewriting rules, in normal form.

    Instances are created through :func:`validate_exchange`,
    :func:`compose` and :func:`invert`; the constructor does not check
    the rules.

    Parameters
    ----------
    space : SftSpace
    rules : iterable of (tuple, tuple)
        Pairs ``(u, v)`` meaning that a point ``u w`` is mapped to ``v w``

    Attributes
    ----------
    space : SftSpace
    rules : tuple of (tuple, tuple)
        The rules sorted by domain word

    """

    def __init__(self, space, rules):
        self.space = space
        self.rules = tuple(sorted((tuple(u), tuple(v)) for u, v in rules))
        self._table = dict(self.rules)
        self._max_domain = max(len(u) for u, _ in self.rules)

    def _cmpkey(self):
        return self.rules

    def __repr__(self):
        return 'PrefixExchange({})'.format(self.format_rules())

    def format_rules(self):
        fmt = self.space.format_word
        return ' '.join('{}->{}'.format(fmt(u) or '.', fmt(v) or '.')
                        for u, v in self.rules)

    @property
    def is_identity(self):
        return self.rules == (((), ()),)

    @property
    def max_rule_length(self):
        """Length of the longest word occurring in a rule."""
        return max(max(len(u), len(v)) for u, v in self.rules)

    @property
    def domain_depth(self):
        return self._max_domain

    def rule_for(self, word):
        """The rule whose domain word is a prefix of `word`, or None if
        `word` is a proper prefix of several domain words."""
        for i in range(min(len(word), self._max_domain) + 1):
            v = self._table.get(word[:i])
            if v is not None:
                return word[:i], v
        return None

    def rule_image_words(self, u, v):
        """Cylinder words whose union is the image of [u]."""
        succ_u = self.space.successors(u)
        if set(succ_u) == set(self.space.successors(v)):
            return [v]
        return [v + (c,) for c in succ_u]

    def image_words(self, word):
        """Cylinder words whose union is the image of [word]."""
        word = tuple(word)
        rule = self.rule_for(word)
        if rule is not None:
            u, v = rule
            rest = word[len(u):]
            if len(rest) > 0:
                return [v + rest]
            return self.rule_image_words(u, v)
        result = []
        for u, v in self.rules:
            if is_prefix(word, u):
                result.extend(self.rule_image_words(u, v))
        return result

    def apply_word(self, word):
        return ClopenSet(self.space, self.image_words(word))

    def __call__(self, A):
        return apply(self, A)


def identity_exchange(space):
    return PrefixExchange(space, [((), ())])


def normalize_rules(space, rules):
    """Merge sibling rules ``(p c, q c)`` for all successors `c` of `p`
    into ``(p, q)``, bottom up."""
    by_length = partition(lambda r: len(r[0]), rules)
    max_len = max(by_length.keys(), default=0)
    for length in range(max_len, 0, -1):
        level = by_length.get(length, [])
        kept = []
        groups = partition(lambda r: (r[0][:-1], r[1][:-1] if len(r[1]) > 0 else None),
                           level)
        for (parent, target), group in sorted(groups.items(),
                                              key=lambda kv: (kv[0][0], kv[0][1] or ())):
            mergeable = (target is not None
                         and all(u[-1] == v[-1] for u, v in group)
                         and set(u[-1] for u, _ in group) == set(space.successors(parent)))
            if mergeable:
                by_length.setdefault(length - 1, []).append((parent, target))
            else:
                kept.extend(group)
        by_length[length] = kept
    return [r for level in by_length.values() for r in level]


def validate_exchange(space, rules):
    """Validate a rule system and return it in normal form.

    Parameters
    ----------
    space : SftSpace
    rules : iterable of (tuple, tuple)

    Returns
    -------
    PrefixExchange

    Raises
    ------
    InadmissibleWord
        If some word in the rules is not admissible
    OverlappingDomain
        If two domain words are comparable
    IncompleteDomain
        If the domain cylinders do not cover the space
    TailMismatch
        If some tail allowed after `u` is not allowed after `v`
    NotBijective
        If the image cylinders overlap or miss part of the space

    """
    rules = [(space.check_word(u), space.check_word(v)) for u, v in rules]
    if len(rules) == 0:
        raise IncompleteDomain('An exchange needs at least one rule')

    domain = sorted(u for u, _ in rules)
    for a, b in zip(domain[:-1], domain[1:]):
        # in lexicographic order a prefix directly precedes its extensions
        if is_prefix(a, b):
            raise OverlappingDomain('Domain words {} and {} overlap'
                                    .format(space.format_word(a) or '.',
                                            space.format_word(b) or '.'))
    if not ClopenSet(space, domain).is_whole:
        raise IncompleteDomain('Domain cylinders do not cover the space')

    for u, v in rules:
        if not set(space.successors(u)) <= set(space.successors(v)):
            raise TailMismatch('Tails after {} are not all allowed after {}'
                               .format(space.format_word(u) or '.',
                                       space.format_word(v) or '.'))

    exchange = PrefixExchange(space, rules)
    images = sorted(w for u, v in rules for w in exchange.rule_image_words(u, v))
    for a, b in zip(images[:-1], images[1:]):
        if is_prefix(a, b):
            raise NotBijective('Image cylinders {} and {} overlap'
                               .format(space.format_word(a) or '.',
                                       space.format_word(b) or '.'))
    if not ClopenSet(space, images).is_whole:
        raise NotBijective('Image cylinders do not cover the space')

    return PrefixExchange(space, normalize_rules(space, rules))


def _check_same_space(*objs):
    space = objs[0].space
    for o in objs[1:]:
        if o.space != space:
            raise SpaceMismatch('Operands live on different spaces')


def apply(g, A):
    """The image g(A) of a clopen set, in canonical form."""
    _check_same_space(g, A)
    words = []
    for w in A.cylinders:
        words.extend(g.image_words(w))
    return ClopenSet(A.space, words)


def compose(g, h):
    """The normal form of g o h (`h` acts first)."""
    _check_same_space(g, h)
    space = g.space
    rules = []
    for u, v in h.rules:
        rule = g.rule_for(v)
        if rule is not None:
            u2, v2 = rule
            rules.append((u, v2 + v[len(u2):]))
            continue
        succ_u = set(space.successors(u))
        for u2, v2 in g.rules:
            if len(u2) > len(v) and is_prefix(v, u2) and u2[len(v)] in succ_u:
                rules.append((u + u2[len(v):], v2))
    return PrefixExchange(space, normalize_rules(space, rules))


def invert(g):
    """The normal form of the inverse homeomorphism."""
    space = g.space
    rules = []
    for u, v in g.rules:
        succ_u = space.successors(u)
        if set(succ_u) == set(space.successors(v)):
            rules.append((v, u))
        else:
            rules.extend((v + (c,), u + (c,)) for c in succ_u)
    return PrefixExchange(space, normalize_rules(space, rules))


def reduce_word(word):
    """Free reduction of a group word."""
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append((int(letter[0]), int(letter[1])))
    return tuple(out)


def inverse_word(word):
    return tuple((g, -e) for g, e in reversed(word))


class Action(object):
    """A finitely generated group acting on an SFT space by prefix
    exchanges.

    Parameters
    ----------
    space : SftSpace
    generators : list of (str, PrefixExchange)
        Named generators

    Attributes
    ----------
    space : SftSpace
    names : tuple of str
    generators : tuple of PrefixExchange
    description : str or None
        The builtin specification the action was built from, if any

    """

    def __init__(self, space, generators, description=None):
        names = tuple(str(n) for n, _ in generators)
        if len(set(names)) != len(names):
            raise BadParams('Generator names must be distinct')
        for n in names:
            if n == IDENTITY_NAME or n == '' or any(c.isspace() for c in n):
                raise BadParams('Invalid generator name {!r}'.format(n))
        gens = tuple(g for _, g in generators)
        for n, g in zip(names, gens):
            if g.space != space:
                raise SpaceMismatch('Generator {} lives on a different space'.format(n))
        self.space = space
        self.names = names
        self.generators = gens
        self.description = description
        self._inverses = tuple(invert(g) for g in gens)
        self._cache = {IDENTITY_WORD: identity_exchange(space)}
        self._elements = {}

    def __repr__(self):
        return 'Action(generators={})'.format(', '.join(self.names))

    @property
    def letters(self):
        """Generator letters in search order: g0, g0^-1, g1, g1^-1, ..."""
        return tuple((i, e) for i in range(len(self.generators)) for e in (1, -1))

    @property
    def max_rule_length(self):
        return max(g.max_rule_length for g in self.generators + self._inverses)

    @property
    def max_domain_depth(self):
        return max(g.domain_depth for g in self.generators + self._inverses)

    def letter(self, gen, exp):
        if not 0 <= gen < len(self.generators):
            raise UnknownGenerator('No generator with index {}'.format(gen))
        return self.generators[gen] if exp > 0 else self._inverses[gen]

    def element(self, word):
        word = tuple(word)
        g = self._cache.get(word)
        if g is None:
            g = compose(self.element(word[:-1]), self.letter(*word[-1]))
            self._cache[word] = g
        return g

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownGenerator('Unknown generator {!r}'.format(name))

    def parse_word(self, text):
        """Read a group word such as ``"ga gb^-1"``; ``"e"`` is the
        identity."""
        word = []
        for token in text.split():
            if token == IDENTITY_NAME:
                continue
            exp = 1
            if token.endswith(INVERSE_SUFFIX):
                token = token[:-len(INVERSE_SUFFIX)]
                exp = -1
            word.append((self.index(token), exp))
        return tuple(word)

    def format_word(self, word):
        if len(word) == 0:
            return IDENTITY_NAME
        return ' '.join(self.names[g] + ('' if e > 0 else INVERSE_SUFFIX)
                        for g, e in word)


def evaluate_word(action, word):
    """The normal form of the homeomorphism denoted by a group word.

    Raises
    ------
    UnknownGenerator
        If the word refers to a missing generator

    """
    word = tuple(word)
    for g, e in word:
        if not 0 <= g < len(action.generators) or e not in (1, -1):
            raise UnknownGenerator('Invalid letter ({}, {})'.format(g, e))
    return action.element(word)


class ElementList(list):
    """A list of ``(word, exchange)`` pairs with distinct exchanges.

    Attributes
    ----------
    complete : bool
        True if the enumeration exhausted the (then finite) group

    """

    def __init__(self, items, complete):
        super().__init__(items)
        self.complete = complete


def enumerate_elements(action, max_length):
    """Distinct group elements reachable by words of length at most
    `max_length`, in shortlex order of their first word.

    The enumeration is a breadth-first search over the Cayley graph, so
    each element is represented by a shortest word.

    """
    cached = action._elements.get(max_length)
    if cached is not None:
        return cached
    identity = action.element(IDENTITY_WORD)
    seen = {identity}
    items = [(IDENTITY_WORD, identity)]
    frontier = [(IDENTITY_WORD, identity)]
    complete = False
    for length in range(max_length):
        new_frontier = []
        for word, g in frontier:
            for letter in action.letters:
                if len(word) > 0 and word[-1] == (letter[0], -letter[1]):
                    continue
                h = compose(g, action.letter(*letter))
                if h not in seen:
                    seen.add(h)
                    w = word + (letter,)
                    action._cache.setdefault(w, h)
                    new_frontier.append((w, h))
        if len(new_frontier) == 0:
            complete = True
            break
        items.extend(new_frontier)
        frontier = new_frontier
        LOGGER.debug('{} elements up to word length {}'.format(len(items), length + 1))
    else:
        complete = _closed_under_generators(action, seen, frontier)
    result = ElementList(items, complete)
    action._elements[max_length] = result
    return result


def _closed_under_generators(action, seen, frontier):
    for _, g in frontier:
        for letter in action.letters:
            if compose(g, action.letter(*letter)) not in seen:
                return False
    return True


def _boundary_letters(n):
    letters = []
    for c in string.ascii_lowercase[:n]:
        letters.extend([c, c.upper()])
    return letters


def free_boundary(n):
    """Left multiplication of the free group on `n` generators on the
    space of infinite reduced words.

    The letters are ``a A b B ...`` (upper case denoting inverses) and the
    generator ``gx`` rewrites ``X w -> w`` and ``y w -> x y w`` for
    ``y != X``.

    """
    if not 1 <= n <= 26:
        raise BadParams('free_boundary needs 1 <= n <= 26, got {}'.format(n))
    names = _boundary_letters(n)
    k = len(names)
    transitions = np.ones((k, k), dtype=bool)
    for i in range(n):
        transitions[2 * i, 2 * i + 1] = False
        transitions[2 * i + 1, 2 * i] = False
    space = SftSpace(transitions, np.ones(k, dtype=bool), names)

    generators = []
    for i in range(n):
        x, inv = 2 * i, 2 * i + 1
        rules = [((inv,), ())]
        rules.extend(((y,), (x, y)) for y in range(k) if y != inv)
        generators.append(('g' + names[x], validate_exchange(space, rules)))
    return Action(space, generators, description='free_boundary({})'.format(n))


def _binary_word(i, depth):
    return tuple(int(b) for b in format(i, '0{}b'.format(depth)))


def bit_permutation(*perms):
    """Permutations of the first bits of the full binary shift.

    Each permutation is a sequence of length 2^d listing the image index
    of each binary word of length d (most significant bit first).

    """
    if len(perms) == 0:
        raise BadParams('bit_permutation needs at least one permutation')
    space = SftSpace(np.ones((2, 2), dtype=bool), np.ones(2, dtype=bool))
    generators = []
    for idx, perm in enumerate(perms):
        perm = np.asarray(perm, dtype=int)
        size = len(perm)
        depth = size.bit_length() - 1
        if depth < 1 or size != 2 ** depth:
            raise BadParams('Permutation length must be a power of 2 >= 2, got {}'
                            .format(size))
        if not np.array_equal(np.sort(perm), np.arange(size)):
            raise BadParams('{} is not a permutation'.format(list(perm)))
        rules = [(_binary_word(i, depth), _binary_word(int(j), depth))
                 for i, j in enumerate(perm)]
        name = 's' if len(perms) == 1 else 's{}'.format(idx + 1)
        generators.append((name, validate_exchange(space, rules)))
    desc = 'bit_permutation({})'.format(', '.join(
        '[{}]'.format(','.join(str(int(x)) for x in p)) for p in perms))
    return Action(space, generators, description=desc)


def space_description(space):
    """Builtin specification of a space: ``full_shift(k)`` for a full shift
    with the default letter names, None otherwise."""
    if space == full_shift(space.alphabet_size):
        return 'full_shift({})'.format(space.alphabet_size)
    return None


def product_with_trivial(base, factor):
    """The action on ``base.space x T`` acting as `base` on the first
    coordinate and trivially on the second, where T is the set of letters
    of `factor` carried as a constant tag.

    The product letters are pairs named by concatenating the base and
    factor letter names (base-major order). A product word is admissible
    iff its base coordinates are admissible and its tag letter is
    constant and allowed to repeat in `factor`.

    """
    if not isinstance(factor, SftSpace):
        raise BadParams('The factor must be an SFT space')
    bs = base.space
    kb, kf = bs.alphabet_size, factor.alphabet_size
    tags = [j for j in range(kf) if factor.initial[j] and factor.transitions[j, j]]
    if len(tags) == 0:
        raise BadParams('The factor has no letter that can repeat')
    names = [bs.names[i] + factor.names[j] for i in range(kb) for j in range(kf)]
    tag_matrix = np.zeros((kf, kf), dtype=bool)
    tag_vector = np.zeros(kf, dtype=bool)
    for j in tags:
        tag_matrix[j, j] = True
        tag_vector[j] = True
    transitions = np.kron(bs.transitions, tag_matrix)
    initial = np.kron(bs.initial, tag_vector)
    space = SftSpace(transitions, initial, names)

    def lift(word, j):
        return tuple(i * kf + j for i in word)

    generators = []
    for name, g in zip(base.names, base.generators):
        if g.is_identity:
            rules = [((), ())]
        else:
            rules = [(lift(u, j), lift(v, j)) for u, v in g.rules for j in tags]
        generators.append((name, validate_exchange(space, rules)))
    desc = None
    factor_desc = space_description(factor)
    if base.description is not None and factor_desc is not None:
        desc = 'product_with_trivial({}, {})'.format(base.description, factor_desc)
    return Action(space, generators, description=desc)


def builtin_action(name, params=()):
    """Build one of the example actions by name.

    Parameters
    ----------
    name : {'f2_boundary', 'free_boundary', 'bit_permutation', 'product_with_trivial'}
    params : tuple
        ``free_boundary``: (n,); ``bit_permutation``: one or more
        permutations; ``product_with_trivial``: (base Action, factor
        SftSpace)

    Returns
    -------
    Action

    """
    params = tuple(params)
    try:
        if name == 'f2_boundary':
            if params:
                raise BadParams('f2_boundary takes no parameters')
            action = free_boundary(2)
            action.description = 'f2_boundary'
            return action
        elif name == 'free_boundary':
            if len(params) != 1 or not isinstance(params[0], int):
                raise BadParams('free_boundary takes one integer parameter')
            return free_boundary(params[0])
        elif name == 'bit_permutation':
            return bit_permutation(*params)
        elif name == 'product_with_trivial':
            if len(params) != 2 or not isinstance(params[0], Action):
                raise BadParams('product_with_trivial takes an action and a space')
            return product_with_trivial(*params)
    except (TypeError, ValueError) as e:
        raise BadParams(str(e))
    raise UnknownName('Unknown builtin action {!r}'.format(name))


def fixed_cylinders(g, depth):
    """Union of the depth-`depth` cylinders on which `g` acts as the
    identity."""
    space = g.space
    cells = []
    for c in space.cylinders(depth):
        rule = g.rule_for(c)
        if rule is not None:
            if rule[0] == rule[1]:
                cells.append(c)
        elif all(u == v for u, v in g.rules if is_prefix(c, u)):
            cells.append(c)
    return ClopenSet(space, cells)


def invariant_clopen_saturation(action, A, max_rounds=DEFAULT_SATURATION_ROUNDS):
    """Grow `A` by its images under the generators and their inverses.

    Returns
    -------
    (ClopenSet, bool)
        The saturated set, and whether it is invariant (a fixed point was
        reached within `max_rounds`)

    """
    current = A
    for r in range(max_rounds):
        nxt = current
        for g in action.generators + action._inverses:
            nxt = nxt | apply(g, current)
        if nxt == current:
            LOGGER.debug('saturation stable after {} rounds'.format(r))
            return current, True
        current = nxt
    return current, False


class TowerWitness(object):
    """Clopen set `W` whose translates under the words `T` are pairwise
    disjoint."""

    def __init__(self, words, W):
        self.words = tuple(tuple(w) for w in words)
        self.W = W

    def __repr__(self):
        return 'TowerWitness({} words, W={})'.format(len(self.words), self.W)


def verify_tower(action, tower):
    images = [apply(action.element(w), tower.W) for w in tower.words]
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if not images[i].isdisjoint(images[j]):
                return False
    return True


def freeness_evidence(action, max_length, depth):
    """Non-identity elements (up to word length `max_length`) acting as
    the identity on some depth-`depth` cylinder.

    A nonempty result certifies that the action is not topologically
    free. An empty result is evidence only.

    Returns
    -------
    list of (tuple, ClopenSet)

    """
    result = []
    for word, g in enumerate_elements(action, max_length):
        if g.is_identity:
            continue
        fixed = fixed_cylinders(g, max(depth, 0))
        if not fixed.is_empty:
            result.append((word, fixed))
    return result
