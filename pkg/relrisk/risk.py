"""Classifies outcome posets into risk situations.

A development carries risk when it has more than one outcome and the
preference on the outcomes forms (at least) a semilattice. Posets that are
not semilattices are reported with diagnostics so the analyst can pick an
indifference partition and retry on the quotient.
"""
import enum
import logging
from dataclasses import dataclass

import networkx as nx

from relrisk import order
from relrisk.order import Partition, Poset


LOGGER = logging.getLogger(__name__)


class RiskKind(enum.Enum):
    NO_DEVELOPMENT = 'NoDevelopment'
    RISK_UPPER = 'RiskUpper'
    RISK_LOWER = 'RiskLower'
    RISK_TOTAL = 'RiskTotal'
    NOT_DIRECT_RISK = 'NotDirectRisk'


@dataclass(frozen=True)
class RiskClassification:
    """Verdict for one outcome poset.

    `not_risk_situation` is the caveat attached to a NotDirectRisk target
    set: those maximal outcomes are only candidates.
    """
    kind: RiskKind
    target_set: tuple
    diagnostics: tuple = ()
    not_risk_situation: bool = False


def comparability_components(poset: Poset) -> tuple:
    """Connected components of the comparability graph.

    Returns
    ----------------
    components : tuple
        Tuples of elements, each in declaration order, ordered by their
        first element.
    """
    graph = nx.Graph()
    graph.add_nodes_from(poset.elements)
    graph.add_edges_from(poset.closure.sorted_pairs())
    index = poset.ground.index
    return tuple(sorted((poset.ground.ordered(component)
                         for component in nx.connected_components(graph)),
                        key=lambda component: index(component[0])))


def isolated_elements(poset: Poset) -> tuple:
    """Elements comparable with no other element."""
    if len(poset) < 2:
        return ()
    return tuple(element for element in poset.elements
                 if not poset.up(element) and not poset.down(element))


def _format(elements) -> str:
    return '{' + ', '.join(elements) + '}'


def _kind(poset: Poset, profile: order.StructureProfile) -> RiskKind:
    if len(poset) <= 1:
        return RiskKind.NO_DEVELOPMENT
    if profile.is_total_order:
        return RiskKind.RISK_TOTAL
    if profile.is_upper_semilattice:
        return RiskKind.RISK_UPPER
    if profile.is_lower_semilattice:
        return RiskKind.RISK_LOWER
    return RiskKind.NOT_DIRECT_RISK


def target_set(poset: Poset, classification: RiskClassification) -> tuple:
    """Outcomes a decision maker should aim for under `classification`.

    Parameters
    ----------------
    poset : Poset
    classification : RiskClassification
        Produced from this same poset.

    Returns
    ----------------
    target : tuple
        Greatest element for RiskUpper / RiskTotal, the maximal set for
        RiskLower and NotDirectRisk, empty for NoDevelopment.
    """
    kind = classification.kind
    if kind is RiskKind.NO_DEVELOPMENT:
        return ()
    found = order.extremes(poset)
    if kind in (RiskKind.RISK_UPPER, RiskKind.RISK_TOTAL):
        return (found.greatest,)
    return found.maximal_set


def classify(poset: Poset) -> RiskClassification:
    """Places `poset` in the risk taxonomy.

    Precedence: NoDevelopment, RiskTotal, RiskUpper, RiskLower,
    NotDirectRisk. A poset that is both an upper and a lower semilattice
    without being total is reported as RiskUpper with a note on its lower
    structure.
    """
    profile = order.structure_profile(poset)
    kind = _kind(poset, profile)
    diagnostics = []
    if kind is RiskKind.RISK_UPPER and profile.is_lower_semilattice:
        diagnostics.append('also a lower semilattice; least = '
                           + str(profile.least))
    if kind is RiskKind.NOT_DIRECT_RISK:
        isolated = isolated_elements(poset)
        if isolated:
            diagnostics.append('incomparable with all others: ' + _format(isolated))
        components = comparability_components(poset)
        if len(components) > 1:
            diagnostics.append('comparability components: '
                               + ' '.join(_format(c) for c in components))
        diagnostics.append('no semilattice structure; supply an indifference '
                           'partition and classify the quotient')

    draft = RiskClassification(kind=kind, target_set=())
    result = RiskClassification(
        kind=kind,
        target_set=target_set(poset, draft),
        diagnostics=tuple(diagnostics),
        not_risk_situation=kind is RiskKind.NOT_DIRECT_RISK)
    LOGGER.debug('Classified %s outcomes as %s', len(poset), kind.value)
    return result


def classify_quotient(poset: Poset, partition: Partition) -> RiskClassification:
    """Classifies the factor set of `poset` by `partition`.

    Raises
    ----------------
    QuotientCycleError
        Propagated from :func:`relrisk.order.quotient`.
    """
    return classify(order.quotient(poset, partition))


def optimal_decisions(poset: Poset, response, decisions=None) -> tuple:
    """Single decision maker, deterministic response ``f: decisions -> outcomes``.

    Parameters
    ----------------
    poset : Poset
        Preference on the outcomes.
    response : dict
        Maps every decision to an outcome of `poset`.
    decisions : iterable
        Declaration order of the decisions. Defaults to `response` order.

    Returns
    ----------------
    (classification, optimal) : tuple
        `optimal` holds the decisions whose outcome is in the target set.
    """
    if decisions is None:
        decisions = list(response)
    for decision in decisions:
        poset.ground.index(response[decision])
    classification = classify(poset)
    target = set(classification.target_set)
    optimal = tuple(d for d in decisions if response[d] in target)
    if classification.target_set and not optimal:
        LOGGER.info('No decision reaches the target set %s',
                    _format(classification.target_set))
    return classification, optimal
