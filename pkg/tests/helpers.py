"""Seeded generators and brute-force oracles shared by the test modules."""
import itertools
import os
import random
from fractions import Fraction

import networkx as nx

from relrisk import order
from relrisk.game import OrdinalGame, full_profile, opponent_profiles, payoff
from relrisk.order import GroundSet, StrictRelation
from relrisk.stochastic import OutcomeDistribution


SEED = 20241017
MODELS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
                      'relrisk', 'models')


def model_path(name: str) -> str:
    return os.path.join(MODELS, name)


def labels(size: int) -> GroundSet:
    return GroundSet(tuple(f'e{k}' for k in range(size)))


def random_dag(rng: random.Random, size: int, density: float = 0.4) -> StrictRelation:
    """Acyclic relation: pairs only run forward along a shuffled order."""
    ground = labels(size)
    ranking = list(ground)
    rng.shuffle(ranking)
    pairs = {(a, b) for a, b in itertools.combinations(ranking, 2)
             if rng.random() < density}
    return StrictRelation(ground, frozenset(pairs))


def random_relation(rng: random.Random, size: int, density: float = 0.3) -> StrictRelation:
    """Any irreflexive relation, cycles allowed."""
    ground = labels(size)
    pairs = {(a, b) for a, b in itertools.permutations(ground, 2)
             if rng.random() < density}
    return StrictRelation(ground, frozenset(pairs))


def random_poset(rng: random.Random, size: int, density: float = 0.4):
    return order.validate_order(random_dag(rng, size, density))


def _subsets(items):
    return itertools.chain.from_iterable(
        (frozenset(combo) for combo in itertools.combinations(items, size))
        for size in range(len(items) + 1))


def _closures(size: int, natural: bool):
    """Closure pair sets built by adding ``e{k}`` one element at a time.

    The new element gets a down-closed set below it and an up-closed set
    above it, with every chosen lower element below every chosen upper
    one. Each labelled order comes out once. With `natural` the upper set
    is always empty, which leaves the orders where ``e{i} < e{j}`` implies
    ``i < j``; every unlabelled order has at least one such labelling.
    """
    if size == 0:
        yield frozenset()
        return
    name = f'e{size - 1}'
    previous = [f'e{k}' for k in range(size - 1)]
    for pairs in _closures(size - 1, natural):
        below = {e: {a for a, b in pairs if b == e} for e in previous}
        above = {e: {b for a, b in pairs if a == e} for e in previous}
        downs = [s for s in _subsets(previous) if all(below[e] <= s for e in s)]
        ups = [frozenset()] if natural else \
            [s for s in _subsets(previous) if all(above[e] <= s for e in s)]
        for down in downs:
            for up in ups:
                if down & up:
                    continue
                if all((d, u) in pairs for d in down for u in up):
                    yield pairs | {(d, name) for d in down} | {(name, u) for u in up}


def all_posets(size: int):
    """Every labelled partial order on `size` elements, each once."""
    ground = labels(size)
    for pairs in _closures(size, natural=False):
        yield order.validate_order(StrictRelation(ground, pairs))


def natural_posets(size: int):
    """Every naturally labelled partial order on `size` elements."""
    ground = labels(size)
    for pairs in _closures(size, natural=True):
        yield order.validate_order(StrictRelation(ground, pairs))


def _shape(poset) -> tuple:
    return (len(poset.closure),
            tuple(sorted((len(poset.up(e)), len(poset.down(e))) for e in poset.elements)))


def unlabelled_posets(size: int) -> list:
    """One poset per isomorphism class on `size` elements."""
    buckets = {}
    for poset in natural_posets(size):
        bucket = buckets.setdefault(_shape(poset), [])
        graph = poset.closure.graph()
        if not any(nx.is_isomorphic(graph, other.closure.graph()) for other in bucket):
            bucket.append(poset)
    return [poset for bucket in buckets.values() for poset in bucket]


def brute_upper_bounds(poset, members) -> list:
    return [x for x in poset.elements
            if all(x == m or poset.less(m, x) for m in members)]


def brute_join(poset, a, b):
    """Join by scanning every upper bound for one below all the others."""
    bounds = brute_upper_bounds(poset, [a, b])
    for x in bounds:
        if all(x == y or poset.less(x, y) for y in bounds):
            return x
    return None


def random_game(rng: random.Random, players: int = 2, max_strategies: int = 3,
                max_elements: int = 6) -> OrdinalGame:
    strategies = tuple(tuple(f's{k}' for k in range(rng.randint(1, max_strategies)))
                       for _ in range(players))
    posets = tuple(random_poset(rng, rng.randint(1, max_elements), rng.random())
                   for _ in range(players))
    all_profiles = list(itertools.product(*strategies))
    payoffs = tuple({profile: rng.choice(poset.elements) for profile in all_profiles}
                    for poset in posets)
    return OrdinalGame(players=tuple(str(k + 1) for k in range(players)),
                       strategies=strategies, payoff_posets=posets, payoffs=payoffs)


def brute_nash(game: OrdinalGame) -> set:
    """Profiles where no player has a deviation whose payoff is not below or
    equal to the current one.
    """
    found = set()
    for profile in itertools.product(*game.strategies):
        stable = True
        for player, poset in enumerate(game.payoff_posets):
            current = payoff(game, player, profile)
            for own in game.strategies[player]:
                deviation = list(profile)
                deviation[player] = own
                other = payoff(game, player, tuple(deviation))
                if other != current and not poset.less(other, current):
                    stable = False
        if stable:
            found.add(profile)
    return found


def brute_best_responses(game: OrdinalGame, player: int) -> set:
    poset = game.payoff_posets[player]
    found = set()
    for opp in opponent_profiles(game, player):
        reached = [payoff(game, player, full_profile(player, opp, own))
                   for own in game.strategies[player]]
        for own, value in zip(game.strategies[player], reached):
            if all(other == value or poset.less(other, value) for other in reached):
                found.add(full_profile(player, opp, own))
    return found


def random_distribution(rng: random.Random, outcomes: GroundSet,
                        denominator: int = 4) -> OutcomeDistribution:
    """Masses are multiples of 1/denominator."""
    units = [0] * len(outcomes)
    for _ in range(denominator):
        units[rng.randrange(len(outcomes))] += 1
    return OutcomeDistribution(outcomes, tuple(Fraction(u, denominator) for u in units))


def all_distributions(outcomes: GroundSet, denominator: int):
    """Every distribution whose masses are multiples of 1/denominator."""
    size = len(outcomes)
    for cuts in itertools.combinations_with_replacement(range(size), denominator):
        units = [cuts.count(k) for k in range(size)]
        yield OutcomeDistribution(outcomes, tuple(Fraction(u, denominator) for u in units))
