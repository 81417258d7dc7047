"""Finite probabilistic risk: outcome distributions induced by decisions.

All probabilities are exact ``Fraction`` values; totals are checked for
equality with one, never against a tolerance. Events are arbitrary subsets
of the finite ground sets.

Distributions over an ordered outcome set are compared by first-order
stochastic dominance lifted to the poset: ``p`` is below ``q`` when ``p``
puts no more mass than ``q`` on every upper set.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Optional

from relrisk import config, order
from relrisk.errors import (DimensionMismatch, GroundMismatch,
                            InvalidDistribution, InvalidModel,
                            UnknownDecision, UnknownElement)
from relrisk.order import Comparison, GroundSet, Poset, StrictRelation


LOGGER = logging.getLogger(__name__)


def _exact(value) -> Fraction:
    if isinstance(value, float):
        raise InvalidDistribution(f'Probability {value!r} must be exact, not float')
    return Fraction(value)


def _check_masses(masses, what: str):
    for mass in masses:
        if mass < 0:
            raise InvalidDistribution(f'Negative probability {mass} in {what}')
    total = sum(masses, Fraction(0))
    if total != 1:
        raise InvalidDistribution(f'Probabilities in {what} sum to {total}, not 1')


@dataclass(frozen=True)
class FiniteProbabilitySpace:
    """Environment states with exact probabilities."""
    states: GroundSet
    probabilities: tuple

    def __post_init__(self):
        probabilities = tuple(_exact(p) for p in self.probabilities)
        if len(probabilities) != len(self.states):
            raise InvalidDistribution('One probability is required per state')
        _check_masses(probabilities, 'state space')
        object.__setattr__(self, 'probabilities', probabilities)

    @classmethod
    def from_mapping(cls, mapping):
        """Builds a space from ``{state: probability}`` in insertion order."""
        return cls(GroundSet(tuple(mapping)), tuple(mapping.values()))

    def probability(self, state) -> Fraction:
        return self.probabilities[self.states.index(state)]


@dataclass(frozen=True)
class OutcomeDistribution:
    """Exact probability vector over a finite outcome set."""
    outcomes: GroundSet
    masses: tuple

    def __post_init__(self):
        masses = tuple(_exact(m) for m in self.masses)
        if len(masses) != len(self.outcomes):
            raise InvalidDistribution('One mass is required per outcome')
        _check_masses(masses, 'outcome distribution')
        object.__setattr__(self, 'masses', masses)

    @classmethod
    def point_mass(cls, outcomes: GroundSet, element):
        index = outcomes.index(element)
        return cls(outcomes, tuple(Fraction(int(i == index))
                                   for i in range(len(outcomes))))

    def mass(self, element) -> Fraction:
        return self.masses[self.outcomes.index(element)]

    def event(self, elements) -> Fraction:
        """Probability of a set of outcomes."""
        return sum((self.mass(e) for e in set(elements)), Fraction(0))

    def support(self) -> tuple:
        return tuple(e for e, m in zip(self.outcomes, self.masses) if m > 0)

    def as_dict(self) -> dict:
        return dict(zip(self.outcomes, self.masses))


@dataclass(frozen=True)
class DecisionModel:
    """Single decision maker facing a random environment.

    Parameters
    ----------------
    decisions : GroundSet
    space : FiniteProbabilitySpace
    outcomes : GroundSet
    outcome_map : dict
        Total map ``(decision, state) -> outcome``.
    outcome_order : Poset, optional
        Preference on `outcomes`; required for order analysis.
    """
    decisions: GroundSet
    space: FiniteProbabilitySpace
    outcomes: GroundSet
    outcome_map: MappingProxyType
    outcome_order: Optional[Poset] = None

    def __post_init__(self):
        if not len(self.decisions):
            raise InvalidModel('A decision model needs at least one decision')
        normalized = {(str(d), str(s)): str(w)
                      for (d, s), w in self.outcome_map.items()}
        for decision, state in normalized:
            if decision not in self.decisions:
                raise UnknownDecision(decision)
            self.space.states.index(state)
        for decision in self.decisions:
            for state in self.space.states:
                if (decision, state) not in normalized:
                    raise InvalidModel(f'Outcome map is missing ({decision}, {state})')
                if normalized[(decision, state)] not in self.outcomes:
                    raise UnknownElement(normalized[(decision, state)],
                                         where='outcomes')
        if self.outcome_order is not None and self.outcome_order.ground != self.outcomes:
            raise GroundMismatch('Outcome order must be over the outcome set')
        object.__setattr__(self, 'outcome_map', MappingProxyType(normalized))


@dataclass(frozen=True)
class MixedProfile:
    """Independent mixed strategy of every player.

    `weights[i][k]` is the probability that player i plays its k-th
    strategy.
    """
    weights: tuple

    def __post_init__(self):
        weights = tuple(tuple(_exact(w) for w in own) for own in self.weights)
        for number, own in enumerate(weights, start=1):
            _check_masses(own, f'mixed strategy of player #{number}')
        object.__setattr__(self, 'weights', weights)


@dataclass(frozen=True)
class MeasureClass:
    """Distinct induced distribution with the decisions inducing it."""
    distribution: OutcomeDistribution
    decisions: tuple

    @property
    def label(self) -> str:
        return 'P[' + ', '.join(self.decisions) + ']'


@dataclass(frozen=True)
class MeasureSet:
    classes: tuple
    environment_risk_only: bool


@dataclass(frozen=True, eq=False)
class MeasureOrderAnalysis:
    """Order on the distinct measures of a model.

    `optimal_decisions` is empty when no greatest measure exists.
    """
    measures: MeasureSet
    poset: Poset
    profile: order.StructureProfile
    optimal_decisions: tuple
    explicit: bool = False

    @property
    def has_optimum(self) -> bool:
        return bool(self.optimal_decisions)


def pushforward(model: DecisionModel, decision) -> OutcomeDistribution:
    """Distribution on outcomes induced by `decision`.

    The mass of each outcome is the probability of its preimage under the
    decision's section of the outcome map.

    Raises
    ----------------
    UnknownDecision
    """
    if decision not in model.decisions:
        raise UnknownDecision(decision)
    totals = dict.fromkeys(model.outcomes, Fraction(0))
    for state, probability in zip(model.space.states, model.space.probabilities):
        totals[model.outcome_map[(decision, state)]] += probability
    return OutcomeDistribution(model.outcomes, tuple(totals.values()))


def _group(pairs) -> tuple:
    """Groups ``(key, distribution)`` pairs by exact distribution equality,
    first occurrence order kept.
    """
    grouped = {}
    for key, distribution in pairs:
        grouped.setdefault(distribution, []).append(key)
    return tuple(MeasureClass(distribution, tuple(keys))
                 for distribution, keys in grouped.items())


def measure_set(model: DecisionModel) -> MeasureSet:
    """Deduplicated set of induced distributions.

    A single class means the decision cannot change the odds: only the
    risk of an unfavourable environment state remains.
    """
    classes = _group((d, pushforward(model, d)) for d in model.decisions)
    if len(classes) == 1:
        LOGGER.info('All decisions induce the same distribution')
    return MeasureSet(classes=classes, environment_risk_only=len(classes) == 1)


def upper_sets(poset: Poset):
    """Yields every upper set of `poset` exactly once, as frozensets.

    Elements are decided from the top down along a linear extension, so an
    element may join only once everything above it has.
    """
    if len(poset) > config.MAX_LIFT_ELEMENTS:
        raise InvalidModel(f'Upper-set enumeration is limited to '
                           f'{config.MAX_LIFT_ELEMENTS} elements')
    ranked = sorted(poset.elements, key=lambda e: (-len(poset.down(e)),
                                                   poset.ground.index(e)))
    above = {e: set(poset.up(e)) for e in poset.elements}

    def extend(position, chosen):
        if position == len(ranked):
            yield frozenset(chosen)
            return
        element = ranked[position]
        yield from extend(position + 1, chosen)
        if above[element] <= chosen:
            yield from extend(position + 1, chosen | {element})

    yield from extend(0, frozenset())


def dominance_lift(poset: Poset, p: OutcomeDistribution,
                   q: OutcomeDistribution) -> Comparison:
    """Compares two distributions by upper-set mass.

    Returns
    ----------------
    verdict : Comparison
        LEQ when `p` is dominated by `q`, GEQ for the converse, EQ for equal
        distributions.

    Raises
    ----------------
    GroundMismatch
        When either distribution is not over the poset's ground set.
    """
    if p.outcomes != poset.ground or q.outcomes != poset.ground:
        raise GroundMismatch('Distributions must be over the poset ground set')
    if p == q:
        return Comparison.EQ
    below = above = True
    for upper in upper_sets(poset):
        p_mass, q_mass = p.event(upper), q.event(upper)
        below = below and p_mass <= q_mass
        above = above and p_mass >= q_mass
        if not below and not above:
            return Comparison.INCOMPARABLE
    if below:
        return Comparison.LEQ
    return Comparison.GEQ


def _lifted_order(poset: Poset, classes: tuple) -> Poset:
    labels = GroundSet(tuple(c.label for c in classes))
    pairs = set()
    for left, right in itertools.combinations(classes, 2):
        verdict = dominance_lift(poset, left.distribution, right.distribution)
        if verdict is Comparison.LEQ:
            pairs.add((left.label, right.label))
        elif verdict is Comparison.GEQ:
            pairs.add((right.label, left.label))
    return order.validate_order(StrictRelation(labels, frozenset(pairs)))


def _explicit_order(classes: tuple, explicit_order) -> Poset:
    labels = GroundSet(tuple(c.label for c in classes))
    owner = {d: c.label for c in classes for d in c.decisions}
    pairs = []
    for low, high in explicit_order:
        for decision in (low, high):
            if decision not in owner:
                raise UnknownDecision(decision)
        pairs.append((owner[low], owner[high]))
    return order.validate_order(StrictRelation.from_pairs(labels, pairs))


def measure_order_analysis(model: DecisionModel, explicit_order=None) -> MeasureOrderAnalysis:
    """Orders the model's measures and looks for an optimal decision.

    Parameters
    ----------------
    model : DecisionModel
        Must carry an outcome order.
    explicit_order : iterable of (decision, decision), optional
        Analyst-supplied order: ``(d1, d2)`` means the measure of ``d1`` is
        below that of ``d2``. Replaces the dominance lift when given.

    Returns
    ----------------
    analysis : MeasureOrderAnalysis
    """
    if model.outcome_order is None:
        raise InvalidModel('Measure order analysis needs an outcome order')
    measures = measure_set(model)
    if explicit_order is None:
        poset = _lifted_order(model.outcome_order, measures.classes)
    else:
        poset = _explicit_order(measures.classes, explicit_order)
    profile = order.structure_profile(poset)
    optimal = ()
    if profile.greatest is not None:
        optimal = next(c.decisions for c in measures.classes
                       if c.label == profile.greatest)
    else:
        LOGGER.info('No greatest measure; no optimal decision')
    return MeasureOrderAnalysis(measures=measures, poset=poset, profile=profile,
                                optimal_decisions=optimal,
                                explicit=explicit_order is not None)


def _check_dimensions(game, mixed: MixedProfile):
    if len(mixed.weights) != len(game.players):
        raise DimensionMismatch('One mixed strategy is required per player')
    for player, (own, weights) in enumerate(zip(game.strategies, mixed.weights)):
        if len(own) != len(weights):
            raise DimensionMismatch(f'Player {game.players[player]} has '
                                    f'{len(own)} strategies, got {len(weights)} weights')


def product_pushforward(game, mixed: MixedProfile, player_payoff: int) -> OutcomeDistribution:
    """Outcome distribution of one player under independent mixtures.

    Parameters
    ----------------
    game : relrisk.game.OrdinalGame
    mixed : MixedProfile
    player_payoff : int
        Whose payoff poset supplies the outcome set.

    Returns
    ----------------
    distribution : OutcomeDistribution
    """
    _check_dimensions(game, mixed)
    outcomes = game.payoff_posets[player_payoff].ground
    totals = dict.fromkeys(outcomes, Fraction(0))
    indexed = [list(zip(own, weights))
               for own, weights in zip(game.strategies, mixed.weights)]
    for combo in itertools.product(*indexed):
        probability = Fraction(1)
        for _, weight in combo:
            probability *= weight
        if probability:
            profile = tuple(strategy for strategy, _ in combo)
            totals[game.payoffs[player_payoff][profile]] += probability
    return OutcomeDistribution(outcomes, tuple(totals.values()))


@dataclass(frozen=True, eq=False)
class MixedImage:
    """Distributions a player reaches with a family of own mixtures.

    `best` lists the family indices inducing the greatest distribution.
    """
    player: int
    distributions: tuple
    classes: tuple
    poset: Poset
    profile: order.StructureProfile
    best: tuple
    environment_risk_only: bool


def mixed_best_responses(game, player: int, own_family, opponents: MixedProfile) -> MixedImage:
    """Best mixtures of `player` within a finite family, opponents fixed.

    Parameters
    ----------------
    game : relrisk.game.OrdinalGame
    player : int
    own_family : sequence of sequences
        Candidate weight vectors over the player's strategies.
    opponents : MixedProfile
        Full mixed profile; the player's own entry is replaced by each
        family member in turn.

    Returns
    ----------------
    image : MixedImage
    """
    if not own_family:
        raise ValueError('The family of mixed strategies is empty')
    distributions = []
    for own in own_family:
        weights = list(opponents.weights)
        weights[player] = tuple(own)
        distributions.append(product_pushforward(
            game, MixedProfile(tuple(weights)), player))
    classes = tuple(MeasureClass(c.distribution,
                                 tuple(f'#{k}' for k in c.decisions))
                    for c in _group(enumerate(distributions)))
    poset = _lifted_order(game.payoff_posets[player], classes)
    profile = order.structure_profile(poset)
    best = ()
    if profile.greatest is not None:
        best = next(tuple(int(k[1:]) for k in c.decisions)
                    for c in classes if c.label == profile.greatest)
    return MixedImage(player=player, distributions=tuple(distributions),
                      classes=classes, poset=poset, profile=profile, best=best,
                      environment_risk_only=len(classes) == 1)
