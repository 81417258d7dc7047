"""Checks the shipped superpower game against every fact it must reproduce.

Run from the project root::

    python -m fixture_tools.verify

Each check returns a list of failure messages; an empty list means the
fixture holds. Exits non-zero when anything fails.
"""
import sys

from relrisk import config, dsl, order
from relrisk import game as games
from relrisk.order import Comparison


FIXTURE = config.MODELS_PATH + '/superpowers.risk'

EXPECTED_IMAGES = [
    # (player, opponent choice, greatest, covers of the image)
    (0, '1', '31', {('11', '21'), ('21', '31')}),
    (0, '2', '22', {('12', '22'), ('32', '22')}),
    (0, '3', '33', {('13', '33'), ('23', '33')}),
    (1, '1', '11', {('12', '11'), ('13', '11')}),
    (1, '2', '22', {('21', '22'), ('23', '22')}),
    (1, '3', '32', {('31', '32'), ('33', '32')}),
]
EXPECTED_INCOMPARABLE = {('13', '23'), ('12', '32'), ('12', '13'),
                         ('21', '23'), ('31', '33')}
EXPECTED_BEST = [('31', '22', '33'), ('11', '22', '32')]
EXPECTED_NASH = ('22',)


def load_game(path=FIXTURE) -> games.OrdinalGame:
    return dsl.load(path).games['G'].game


def check_posets(game) -> list:
    """Both payoff posets must be upper semilattices."""
    failures = []
    for player, poset in zip(game.players, game.payoff_posets):
        if not order.structure_profile(poset).is_upper_semilattice:
            failures.append(f'payoff poset of player {player} is not an upper semilattice')
    return failures


def check_images(game) -> list:
    failures = []
    for player, opp, top, covers in EXPECTED_IMAGES:
        image = games.restriction_image(game, player, (opp,))
        if set(image.covers.pairs) != covers:
            failures.append(f'image of player {game.players[player]} against {opp}: '
                            f'covers {sorted(image.covers.pairs)}')
        found = order.extremes(image).greatest
        if found != top:
            failures.append(f'image of player {game.players[player]} against {opp}: '
                            f'top {found}, expected {top}')
    return failures


def check_tables(game) -> list:
    """The incomparable cells of both tables are exactly the five expected ones."""
    failures = []
    found = set()
    for player in range(len(game.players)):
        table = games.comparison_table(game, player)
        for cell in table.cells.values():
            if cell.verdict is Comparison.INCOMPARABLE:
                found.add((cell.left, cell.right))
    if found != EXPECTED_INCOMPARABLE:
        failures.append(f'incomparable cells {sorted(found)}')
    return failures


def check_dominance(game) -> list:
    failures = []
    for player in range(len(game.players)):
        report = games.dominance_report(game, player)
        if report.dominant or report.dominated:
            failures.append(f'player {game.players[player]} has dominance: '
                            f'{report.dominant} over {report.dominated}')
    return failures


def check_cautious(game) -> list:
    failures = []
    first = games.cautious_strategies(game, 0, rule='greatest')
    if first.strategies:
        failures.append(f'P1 = {first.strategies}, expected empty')
    for strategy, level in first.security_levels:
        if level is not None:
            failures.append(f'security level of {strategy} for player 1 is {level}, '
                            'expected none')
    second = games.cautious_strategies(game, 1, rule='greatest')
    if second.strategies != ('2',):
        failures.append(f'P2 = {second.strategies}, expected (2,)')
    elif second.level('2') != games.payoff(game, 1, ('3', '2')):
        failures.append(f'security level of 2 is {second.level("2")}')
    return failures


def check_equilibria(game) -> list:
    failures = []
    responses = games.best_responses(game)
    for player, graph, expected in zip(game.players, responses, EXPECTED_BEST):
        labels = tuple(games.profile_label(p) for p in graph)
        if set(labels) != set(expected):
            failures.append(f'BR{player} = {labels}, expected {expected}')
    nash = tuple(games.profile_label(p)
                 for p in games.nash_equilibria(game, responses=responses))
    if nash != EXPECTED_NASH:
        failures.append(f'NE = {nash}, expected {EXPECTED_NASH}')
    return failures


CHECKS = [check_posets, check_images, check_tables, check_dominance,
          check_cautious, check_equilibria]


def verify(path=FIXTURE) -> list:
    """Runs every check on the fixture at `path`.

    Returns
    ----------------
    failures : list
        Messages, empty when the fixture is consistent.
    """
    game = load_game(path)
    failures = []
    for check in CHECKS:
        failures.extend(check(game))
    return failures


def run():
    """Prints the verdict for the shipped fixture."""
    failures = verify()
    for failure in failures:
        print(f'FAIL: {failure}')
    if failures:
        sys.exit(1)
    print(f'Fixture verified: {FIXTURE}')


if __name__ == "__main__":
    run()
