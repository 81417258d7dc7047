"""Finite partial orders stored by their strict part.

Covers validation of declared orders, Hasse covers, joins and meets,
semilattice detection, quotients by a partition and the collapse of a
preorder onto its indifference classes.

Element identifiers are opaque strings. Every set returned by this module is
a tuple in ground-set declaration order.
"""
import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import networkx as nx
import numpy as np

from relrisk.errors import (CycleError, GroundMismatch, InvalidPartition,
                            InvalidRelation, QuotientCycleError,
                            UnknownElement)


LOGGER = logging.getLogger(__name__)


class Comparison(enum.Enum):
    """Outcome of comparing two elements (or two distributions)."""
    LEQ = '≤'
    GEQ = '≥'
    EQ = '='
    INCOMPARABLE = '?'

    def flipped(self):
        """Verdict with the two operands swapped."""
        if self is Comparison.LEQ:
            return Comparison.GEQ
        if self is Comparison.GEQ:
            return Comparison.LEQ
        return self


@dataclass(frozen=True)
class GroundSet:
    """Ordered collection of unique element identifiers.

    The declaration order is the canonical output order for everything
    built on top of the ground set.
    """
    elements: tuple

    def __post_init__(self):
        elements = tuple(str(element) for element in self.elements)
        if len(set(elements)) != len(elements):
            dupes = sorted({e for e in elements if elements.count(e) > 1})
            raise InvalidRelation(f'Duplicate element identifiers: {dupes}')
        object.__setattr__(self, 'elements', elements)
        object.__setattr__(self, '_index',
                           {element: i for i, element in enumerate(elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, element):
        return element in self._index

    def index(self, element) -> int:
        """Position of `element` in declaration order.

        Raises
        ----------------
        UnknownElement
            When `element` is not declared.
        """
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElement(element) from None

    def ordered(self, items) -> tuple:
        """Returns the distinct `items` as a tuple in declaration order.

        Parameters
        ----------------
        items : iterable
            Element identifiers, all of which must be declared.

        Returns
        ----------------
        ordered : tuple
        """
        wanted = set(items)
        for item in wanted:
            self.index(item)
        return tuple(e for e in self.elements if e in wanted)


@dataclass(frozen=True)
class StrictRelation:
    """Set of pairs ``(a, b)`` read as ``a < b`` over a ground set."""
    ground: GroundSet
    pairs: frozenset = frozenset()

    def __post_init__(self):
        pairs = frozenset((str(a), str(b)) for a, b in self.pairs)
        for a, b in pairs:
            self.ground.index(a)
            self.ground.index(b)
            if a == b:
                raise InvalidRelation(f'Reflexive pair ({a}, {a}) in strict relation')
        object.__setattr__(self, 'pairs', pairs)

    @classmethod
    def from_pairs(cls, ground: GroundSet, pairs):
        """Builds a relation from `pairs`, silently dropping ``(x, x)``."""
        return cls(ground, frozenset((a, b) for a, b in pairs if a != b))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs())

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def sorted_pairs(self) -> tuple:
        """Pairs sorted by the declaration order of both members."""
        index = self.ground.index
        return tuple(sorted(self.pairs,
                            key=lambda pair: (index(pair[0]), index(pair[1]))))

    def graph(self) -> nx.DiGraph:
        """Directed graph of the relation, nodes in declaration order."""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.ground)
        graph.add_edges_from(self.sorted_pairs())
        return graph


@dataclass(frozen=True)
class Poset:
    """Finite partial order.

    `closure` holds every strict comparison, `covers` its Hasse diagram.
    `leq` is a read-only boolean matrix, ``leq[i, j]`` true iff element
    ``i`` is below or equal to element ``j``.

    Build instances through :func:`validate_order`.
    """
    ground: GroundSet
    closure: StrictRelation
    covers: StrictRelation
    leq: np.ndarray = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        leq = np.eye(len(self.ground), dtype=bool)
        for a, b in self.closure.pairs:
            leq[self.ground.index(a), self.ground.index(b)] = True
        leq.flags.writeable = False
        object.__setattr__(self, 'leq', leq)

    def __len__(self):
        return len(self.ground)

    @property
    def elements(self) -> tuple:
        return self.ground.elements

    def less(self, a, b) -> bool:
        """True when ``a < b``."""
        i, j = self.ground.index(a), self.ground.index(b)
        return i != j and bool(self.leq[i, j])

    def up(self, element) -> tuple:
        """Elements strictly above `element`."""
        i = self.ground.index(element)
        return tuple(e for j, e in enumerate(self.elements)
                     if j != i and self.leq[i, j])

    def down(self, element) -> tuple:
        """Elements strictly below `element`."""
        i = self.ground.index(element)
        return tuple(e for j, e in enumerate(self.elements)
                     if j != i and self.leq[j, i])


@dataclass(frozen=True)
class StructureProfile:
    """Semilattice and extremal structure of a poset."""
    is_upper_semilattice: bool
    is_lower_semilattice: bool
    is_total_order: bool
    greatest: Optional[str]
    least: Optional[str]
    maximal_set: tuple
    minimal_set: tuple


class Extremes(NamedTuple):
    greatest: Optional[str]
    least: Optional[str]
    maximal_set: tuple
    minimal_set: tuple


def _reduction(ground: GroundSet, closure: StrictRelation) -> StrictRelation:
    reduced = nx.transitive_reduction(closure.graph())
    return StrictRelation(ground, frozenset(reduced.edges()))


def validate_order(rel: StrictRelation) -> Poset:
    """Checks that `rel` generates a partial order and builds the poset.

    Parameters
    ----------------
    rel : StrictRelation
        Any acyclic relation, typically the declared cover pairs.

    Returns
    ----------------
    poset : Poset
        Closure is the transitive closure of `rel`.

    Raises
    ----------------
    CycleError
        With the elements of one directed cycle as witness.
    """
    graph = rel.graph()
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        cycle = []
    if cycle:
        witness = [edge[0] for edge in cycle]
        LOGGER.debug('Cycle found while validating order: %s', witness)
        raise CycleError(witness)

    closure_graph = nx.transitive_closure_dag(graph)
    closure = StrictRelation(rel.ground, frozenset(closure_graph.edges()))
    return Poset(rel.ground, closure, _reduction(rel.ground, closure))


def hasse(poset: Poset) -> StrictRelation:
    """Cover relation (transitive reduction) of the poset's closure."""
    return _reduction(poset.ground, poset.closure)


def _least(poset: Poset, mask: np.ndarray) -> Optional[str]:
    for candidate in np.flatnonzero(mask):
        if poset.leq[candidate, mask].all():
            return poset.elements[candidate]
    return None


def _greatest(poset: Poset, mask: np.ndarray) -> Optional[str]:
    for candidate in np.flatnonzero(mask):
        if poset.leq[mask, candidate].all():
            return poset.elements[candidate]
    return None


def join(poset: Poset, a, b) -> Optional[str]:
    """Least upper bound of `a` and `b`, or None.

    None covers both the case without any upper bound and the case of
    several incomparable minimal upper bounds.
    """
    i, j = poset.ground.index(a), poset.ground.index(b)
    return _least(poset, poset.leq[i] & poset.leq[j])


def meet(poset: Poset, a, b) -> Optional[str]:
    """Greatest lower bound of `a` and `b`, or None."""
    i, j = poset.ground.index(a), poset.ground.index(b)
    return _greatest(poset, poset.leq[:, i] & poset.leq[:, j])


def sup_set(poset: Poset, subset) -> Optional[str]:
    """Least upper bound of a whole subset. The empty subset has none."""
    members = list(subset)
    if not members:
        return None
    mask = np.ones(len(poset), dtype=bool)
    for member in members:
        mask &= poset.leq[poset.ground.index(member)]
    return _least(poset, mask)


def inf_set(poset: Poset, subset) -> Optional[str]:
    """Greatest lower bound of a whole subset. The empty subset has none."""
    members = list(subset)
    if not members:
        return None
    mask = np.ones(len(poset), dtype=bool)
    for member in members:
        mask &= poset.leq[:, poset.ground.index(member)]
    return _greatest(poset, mask)


def compare(poset: Poset, a, b) -> Comparison:
    """Compares two elements of `poset`."""
    i, j = poset.ground.index(a), poset.ground.index(b)
    if i == j:
        return Comparison.EQ
    if poset.leq[i, j]:
        return Comparison.LEQ
    if poset.leq[j, i]:
        return Comparison.GEQ
    return Comparison.INCOMPARABLE


def extremes(poset: Poset) -> Extremes:
    """Maximal and minimal elements, plus greatest/least when unique."""
    elements = poset.elements
    # Row/column sums of 1 mean only the diagonal entry is set.
    maximal = tuple(elements[i] for i in np.flatnonzero(poset.leq.sum(axis=1) == 1))
    minimal = tuple(elements[i] for i in np.flatnonzero(poset.leq.sum(axis=0) == 1))
    greatest = maximal[0] if len(maximal) == 1 else None
    least = minimal[0] if len(minimal) == 1 else None
    return Extremes(greatest, least, maximal, minimal)


def structure_profile(poset: Poset) -> StructureProfile:
    """Exhaustive pairwise check for joins, meets and comparability.

    Parameters
    ----------------
    poset : Poset

    Returns
    ----------------
    profile : StructureProfile
    """
    pairs = list(itertools.combinations(poset.elements, 2))
    upper = all(join(poset, a, b) is not None for a, b in pairs)
    lower = all(meet(poset, a, b) is not None for a, b in pairs)
    total = bool((poset.leq | poset.leq.T).all())
    found = extremes(poset)
    return StructureProfile(is_upper_semilattice=upper,
                            is_lower_semilattice=lower,
                            is_total_order=total,
                            greatest=found.greatest,
                            least=found.least,
                            maximal_set=found.maximal_set,
                            minimal_set=found.minimal_set)


def subposet(poset: Poset, elements) -> Poset:
    """Order induced on a subset of the ground set."""
    members = poset.ground.ordered(elements)
    keep = set(members)
    ground = GroundSet(members)
    closure = StrictRelation(ground, frozenset(
        pair for pair in poset.closure.pairs
        if pair[0] in keep and pair[1] in keep))
    return Poset(ground, closure, _reduction(ground, closure))


def relabel(poset: Poset, mapping) -> Poset:
    """Pushes `poset` through an injective renaming of its elements."""
    try:
        images = [str(mapping[element]) for element in poset.elements]
    except KeyError as err:
        raise UnknownElement(err.args[0], where='relabel mapping') from None
    if len(set(images)) != len(images):
        raise InvalidRelation('Relabel mapping must be injective')
    rename = dict(zip(poset.elements, images))
    ground = GroundSet(images)
    closure = StrictRelation(ground, frozenset(
        (rename[a], rename[b]) for a, b in poset.closure.pairs))
    covers = StrictRelation(ground, frozenset(
        (rename[a], rename[b]) for a, b in poset.covers.pairs))
    return Poset(ground, closure, covers)


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering a ground set.

    Members inside a block are kept in declaration order; blocks keep the
    order they were given in.
    """
    ground: GroundSet
    blocks: tuple

    def __post_init__(self):
        blocks = []
        seen = set()
        for block in self.blocks:
            members = self.ground.ordered(block)
            if not members:
                raise InvalidPartition('Partition blocks must be nonempty')
            for member in members:
                if member in seen:
                    raise InvalidPartition(
                        f'Element {member} appears in more than one block')
                seen.add(member)
            blocks.append(members)
        missing = [e for e in self.ground if e not in seen]
        if missing:
            raise InvalidPartition('Elements not covered by any block: '
                                   + ', '.join(missing))
        object.__setattr__(self, 'blocks', tuple(blocks))

    @classmethod
    def identity(cls, ground: GroundSet):
        """One singleton block per element."""
        return cls(ground, tuple((element,) for element in ground))

    @staticmethod
    def block_name(block) -> str:
        return '{' + ', '.join(block) + '}'

    def names(self) -> tuple:
        return tuple(self.block_name(block) for block in self.blocks)

    def block_of(self, element) -> tuple:
        self.ground.index(element)
        for block in self.blocks:
            if element in block:
                return block
        raise UnknownElement(element, where='partition')


def _induced(partition: Partition, pairs) -> StrictRelation:
    names = partition.names()
    owner = {member: name
             for name, block in zip(names, partition.blocks)
             for member in block}
    induced = {(owner[a], owner[b]) for a, b in pairs if owner[a] != owner[b]}
    return StrictRelation(GroundSet(names), frozenset(induced))


def quotient(poset: Poset, partition: Partition) -> Poset:
    """Order induced on the blocks of `partition`.

    ``B1 < B2`` when some member of ``B1`` is below some member of ``B2``.

    Parameters
    ----------------
    poset : Poset
    partition : Partition
        Must be over the same ground set as `poset`.

    Returns
    ----------------
    factor : Poset
        Elements are the block names, e.g. ``{w1, w3}``.

    Raises
    ----------------
    QuotientCycleError
        When two distinct blocks end up mutually related.
    """
    if partition.ground != poset.ground:
        raise GroundMismatch('Partition and poset are over different ground sets')
    induced = _induced(partition, poset.closure.pairs)
    try:
        factor = validate_order(induced)
    except CycleError as err:
        raise QuotientCycleError(err.cycle) from err
    LOGGER.debug('Quotient built with %s blocks', len(factor))
    return factor


def preorder_reduce(rel: StrictRelation) -> tuple:
    """Collapses a possibly cyclic relation onto its indifference classes.

    The classes are the strongly connected components of the relation;
    the returned poset orders them.

    Returns
    ----------------
    (partition, poset) : tuple
    """
    index = rel.ground.index
    components = nx.strongly_connected_components(rel.graph())
    blocks = sorted((rel.ground.ordered(component) for component in components),
                    key=lambda block: index(block[0]))
    partition = Partition(rel.ground, tuple(blocks))
    return partition, validate_order(_induced(partition, rel.pairs))
