"""Ordinal games: finite normal-form games with poset-valued payoffs.

Each player ranks outcomes by its own partial order. Solution concepts are
the order-theoretic readings of the classical ones: pointwise comparison
tables, dominance, cautious (maximin) strategies, best-response graphs and
Nash equilibria.

Players are addressed by their 0-based index in ``game.players``. A profile
is a tuple of strategy ids in player order; an opponent sub-profile is the
same tuple with the player's own slot removed.
"""
import enum
import itertools
import logging
from dataclasses import dataclass
from types import MappingProxyType

from relrisk import config, order
from relrisk.errors import InvalidGame, UnknownElement
from relrisk.order import Comparison, Poset


LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class OrdinalGame:
    """Normal-form game whose payoffs are elements of per-player posets.

    Parameters
    ----------------
    players : sequence of str
        At least two player names.
    strategies : sequence of sequences
        Strategy ids for each player, in declaration order.
    payoff_posets : sequence of Poset
        Preference of each player on its outcomes.
    payoffs : sequence of dict
        For each player, a total map from profile tuples to elements of
        that player's poset.
    """
    players: tuple
    strategies: tuple
    payoff_posets: tuple
    payoffs: tuple

    def __post_init__(self):
        players = tuple(str(player) for player in self.players)
        if len(players) < 2:
            raise InvalidGame('A game needs at least two players')
        if len(set(players)) != len(players):
            raise InvalidGame('Player names must be unique')
        strategies = tuple(tuple(str(s) for s in own) for own in self.strategies)
        payoff_posets = tuple(self.payoff_posets)
        if len(strategies) != len(players) or len(payoff_posets) != len(players) \
                or len(self.payoffs) != len(players):
            raise InvalidGame('Strategies, payoff posets and payoffs are '
                              'required for every player')
        for player, own in zip(players, strategies):
            if not own:
                raise InvalidGame(f'Player {player} has no strategies')
            if len(set(own)) != len(own):
                raise InvalidGame(f'Player {player} has duplicate strategies')

        all_profiles = list(itertools.product(*strategies))
        payoffs = []
        for player, poset, mapping in zip(players, payoff_posets, self.payoffs):
            normalized = {tuple(str(s) for s in profile): str(element)
                          for profile, element in mapping.items()}
            extra = set(normalized) - set(all_profiles)
            if extra:
                raise InvalidGame(f'Payoff of player {player} maps unknown '
                                  f'profile {sorted(extra)[0]}')
            for profile in all_profiles:
                if profile not in normalized:
                    raise InvalidGame(f'Payoff of player {player} is missing '
                                      f'profile {profile}')
                if normalized[profile] not in poset.ground:
                    raise UnknownElement(normalized[profile],
                                         where=f'payoff poset of player {player}')
            payoffs.append(MappingProxyType(normalized))

        object.__setattr__(self, 'players', players)
        object.__setattr__(self, 'strategies', strategies)
        object.__setattr__(self, 'payoff_posets', payoff_posets)
        object.__setattr__(self, 'payoffs', tuple(payoffs))


def profiles(game: OrdinalGame) -> tuple:
    """Every strategy profile in declaration order (first player slowest)."""
    return tuple(itertools.product(*game.strategies))


def opponent_profiles(game: OrdinalGame, player: int) -> tuple:
    """Sub-profiles of everyone except `player`, in declaration order."""
    others = [own for k, own in enumerate(game.strategies) if k != player]
    return tuple(itertools.product(*others))


def full_profile(player: int, opp_profile: tuple, own) -> tuple:
    return tuple(opp_profile[:player]) + (own,) + tuple(opp_profile[player:])


def payoff(game: OrdinalGame, player: int, profile: tuple) -> str:
    return game.payoffs[player][tuple(profile)]


def profile_label(profile) -> str:
    """``22`` when every strategy id is one character, else ``(a, b)``."""
    if all(len(strategy) == 1 for strategy in profile):
        return ''.join(profile)
    return '(' + ', '.join(profile) + ')'


def restriction_image(game: OrdinalGame, player: int, opp_profile: tuple) -> Poset:
    """Payoffs `player` can reach by unilateral deviation, with the
    order inherited from its payoff poset.
    """
    images = [payoff(game, player, full_profile(player, opp_profile, own))
              for own in game.strategies[player]]
    return order.subposet(game.payoff_posets[player], images)


@dataclass(frozen=True)
class RiskCondition:
    """Risk conditions checked for one player.

    `failing_profiles` lists the opponent sub-profiles whose restriction
    image is not an upper semilattice.
    """
    player: int
    payoff_poset_upper: bool
    images_upper: bool
    failing_profiles: tuple = ()

    @property
    def passes(self) -> bool:
        return self.payoff_poset_upper and self.images_upper


def verify_risk_conditions(game: OrdinalGame) -> tuple:
    """Checks the nested upper-semilattice conditions for every player.

    Returns
    ----------------
    conditions : tuple
        One :class:`RiskCondition` per player, in player order.
    """
    conditions = []
    for player, poset in enumerate(game.payoff_posets):
        poset_upper = order.structure_profile(poset).is_upper_semilattice
        failing = tuple(
            opp for opp in opponent_profiles(game, player)
            if not order.structure_profile(
                restriction_image(game, player, opp)).is_upper_semilattice)
        conditions.append(RiskCondition(player=player,
                                        payoff_poset_upper=poset_upper,
                                        images_upper=not failing,
                                        failing_profiles=failing))
    return tuple(conditions)


class GameSetting(enum.Enum):
    NO_DEVELOPMENT = 'NoDevelopment'
    NO_DIRECT_RISK = 'NoDirectRisk'
    SINGLE_PLAYER_PROBLEM = 'SinglePlayerProblem'
    PURE_STRATEGY_GAME = 'PureStrategyGame'


def risk_setting(game: OrdinalGame, conditions=None) -> GameSetting:
    """Which problem the risk conditions give rise to.

    One qualifying player faces a parametric optimisation problem or a game
    under full uncertainty; two or more play a game in pure strategies.
    """
    if all(len(set(mapping.values())) <= 1 for mapping in game.payoffs):
        return GameSetting.NO_DEVELOPMENT
    if conditions is None:
        conditions = verify_risk_conditions(game)
    qualifying = sum(1 for condition in conditions if condition.passes)
    if qualifying == 0:
        return GameSetting.NO_DIRECT_RISK
    if qualifying == 1:
        return GameSetting.SINGLE_PLAYER_PROBLEM
    return GameSetting.PURE_STRATEGY_GAME


@dataclass(frozen=True)
class ComparisonCell:
    left: str
    right: str
    verdict: Comparison

    def __str__(self):
        return f'{self.left} {self.verdict.value} {self.right}'


@dataclass(frozen=True, eq=False)
class ComparisonTable:
    """Pointwise comparison of a player's strategies.

    `cells` maps ``(a, b, opp_profile)`` to a :class:`ComparisonCell` for
    every own-strategy pair ``a`` before ``b`` in declaration order.
    """
    player: int
    pairs: tuple
    opponents: tuple
    cells: MappingProxyType

    def entry(self, a, b, opp_profile) -> Comparison:
        """Verdict for ``u(a, opp) vs u(b, opp)``, either pair order."""
        key = (a, b, tuple(opp_profile))
        if key in self.cells:
            return self.cells[key].verdict
        return self.cells[(b, a, tuple(opp_profile))].verdict.flipped()

    def incomparable_cells(self) -> tuple:
        return tuple(self.cells[(a, b, opp)]
                     for a, b in self.pairs for opp in self.opponents
                     if self.cells[(a, b, opp)].verdict is Comparison.INCOMPARABLE)


def comparison_table(game: OrdinalGame, player: int) -> ComparisonTable:
    """Compares every pair of `player`'s strategies against every
    opponent sub-profile.
    """
    poset = game.payoff_posets[player]
    pairs = tuple(itertools.combinations(game.strategies[player], 2))
    opponents = opponent_profiles(game, player)
    cells = {}
    for a, b in pairs:
        for opp in opponents:
            left = payoff(game, player, full_profile(player, opp, a))
            right = payoff(game, player, full_profile(player, opp, b))
            cells[(a, b, opp)] = ComparisonCell(left, right,
                                                order.compare(poset, left, right))
    return ComparisonTable(player=player, pairs=pairs, opponents=opponents,
                           cells=MappingProxyType(cells))


@dataclass(frozen=True)
class DominanceReport:
    """Dominance verdicts for one player. `dominated` means weakly."""
    player: int
    dominant: tuple
    dominated: tuple
    strictly_dominated: tuple
    undominated: tuple


def _dominates(table: ComparisonTable, a, b, strict: bool) -> bool:
    verdicts = [table.entry(a, b, opp) for opp in table.opponents]
    if strict:
        return all(v is Comparison.GEQ for v in verdicts)
    return all(v in (Comparison.GEQ, Comparison.EQ) for v in verdicts) \
        and any(v is Comparison.GEQ for v in verdicts)


def dominance_report(game: OrdinalGame, player: int, table=None) -> DominanceReport:
    """Weak and strict dominance among `player`'s strategies.

    An incomparable cell blocks dominance in both directions. A strategy
    is dominant when it weakly dominates every other strategy, which holds
    vacuously for a single-strategy player.
    """
    if table is None:
        table = comparison_table(game, player)
    own = game.strategies[player]
    dominant = tuple(a for a in own
                     if all(_dominates(table, a, b, strict=False)
                            for b in own if b != a))
    dominated = tuple(b for b in own
                      if any(_dominates(table, a, b, strict=False)
                             for a in own if a != b))
    strictly = tuple(b for b in own
                     if any(_dominates(table, a, b, strict=True)
                            for a in own if a != b))
    undominated = tuple(s for s in own if s not in dominated)
    return DominanceReport(player=player, dominant=dominant, dominated=dominated,
                           strictly_dominated=strictly, undominated=undominated)


@dataclass(frozen=True)
class CautiousReport:
    """Cautious strategies with the security level of every strategy.

    `security_levels` pairs each strategy with the infimum of its payoffs,
    or None when that infimum does not exist.
    """
    player: int
    strategies: tuple
    security_levels: tuple
    rule: str

    def level(self, strategy):
        return dict(self.security_levels)[strategy]


def cautious_strategies(game: OrdinalGame, player: int, rule=None) -> CautiousReport:
    """Maximin strategies over the player's payoff poset.

    Parameters
    ----------------
    game : OrdinalGame
    player : int
    rule : str
        ``greatest`` (default from config) keeps strategies whose level is
        above every other existing level; ``maximal`` keeps strategies
        without a strictly better level.

    Returns
    ----------------
    report : CautiousReport
    """
    if rule is None:
        rule = config.CAUTIOUS_RULE
    if rule not in config.CAUTIOUS_RULES:
        raise ValueError(f'Invalid cautious rule.  Options are {config.CAUTIOUS_RULES}')

    poset = game.payoff_posets[player]
    opponents = opponent_profiles(game, player)
    levels = []
    for own in game.strategies[player]:
        reached = [payoff(game, player, full_profile(player, opp, own))
                   for opp in opponents]
        levels.append((own, order.inf_set(poset, reached)))

    existing = [(own, level) for own, level in levels if level is not None]
    if rule == 'greatest':
        chosen = tuple(own for own, level in existing
                       if all(order.compare(poset, level, other)
                              in (Comparison.GEQ, Comparison.EQ)
                              for _, other in existing))
    else:
        chosen = tuple(own for own, level in existing
                       if not any(poset.less(level, other) for _, other in existing))
    if not existing:
        LOGGER.debug('Player %s has no security level', game.players[player])
    return CautiousReport(player=player, strategies=chosen,
                          security_levels=tuple(levels), rule=rule)


def best_responses(game: OrdinalGame) -> tuple:
    """Best-response graph of every player.

    A profile belongs to player i's graph when its payoff is the greatest
    element of the matching restriction image. Sub-profiles whose image
    has no greatest element contribute nothing.

    Returns
    ----------------
    responses : tuple
        One tuple of profiles per player, profiles in declaration order.
    """
    ordering = profiles(game)
    responses = []
    for player in range(len(game.players)):
        chosen = set()
        for opp in opponent_profiles(game, player):
            top = order.extremes(restriction_image(game, player, opp)).greatest
            if top is None:
                LOGGER.debug('No best answer for player %s against %s',
                             game.players[player], opp)
                continue
            for own in game.strategies[player]:
                profile = full_profile(player, opp, own)
                if payoff(game, player, profile) == top:
                    chosen.add(profile)
        responses.append(tuple(p for p in ordering if p in chosen))
    return tuple(responses)


def nash_equilibria(game: OrdinalGame, responses=None) -> tuple:
    """Intersection of all best-response graphs, in declaration order."""
    if responses is None:
        responses = best_responses(game)
    common = set(responses[0]).intersection(*responses[1:])
    return tuple(p for p in profiles(game) if p in common)


@dataclass(frozen=True, eq=False)
class SolutionReport:
    game: OrdinalGame
    risk_conditions: tuple
    setting: GameSetting
    comparison_tables: tuple
    dominance: tuple
    cautious: tuple
    best_responses: tuple
    nash_set: tuple


def solve(game: OrdinalGame, cautious_rule=None) -> SolutionReport:
    """Runs every solution concept, assembled in player order."""
    conditions = verify_risk_conditions(game)
    players = range(len(game.players))
    tables = tuple(comparison_table(game, player) for player in players)
    dominance = tuple(dominance_report(game, player, table=tables[player])
                      for player in players)
    cautious = tuple(cautious_strategies(game, player, rule=cautious_rule)
                     for player in players)
    responses = best_responses(game)
    nash = nash_equilibria(game, responses=responses)
    LOGGER.info('Solved game with %s players, %s equilibria',
                len(game.players), len(nash))
    return SolutionReport(game=game,
                          risk_conditions=conditions,
                          setting=risk_setting(game, conditions=conditions),
                          comparison_tables=tables,
                          dominance=dominance,
                          cautious=cautious,
                          best_responses=responses,
                          nash_set=nash)
