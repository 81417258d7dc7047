""" Unit tests to cover the game module."""
import random
import unittest

from relrisk import dsl, order
from relrisk import game as games
from relrisk.errors import InvalidGame, UnknownElement
from relrisk.game import GameSetting, OrdinalGame
from relrisk.order import Comparison, GroundSet, StrictRelation
from tests import helpers


def poset_from(elements, pairs):
    return order.validate_order(StrictRelation(GroundSet(elements), frozenset(pairs)))


def labels(profiles):
    return tuple(games.profile_label(p) for p in profiles)


class SuperpowerGameTests(unittest.TestCase):
    """The shipped 3x3 superpower game."""

    @classmethod
    def setUpClass(cls):
        cls.game = dsl.load(helpers.model_path('superpowers.risk')).games['G'].game

    def test_restriction_image_player_1_first_column_is_chain(self):
        image = games.restriction_image(self.game, 0, ('1',))
        self.assertEqual((('11', '21'), ('21', '31')), image.covers.sorted_pairs())
        self.assertEqual('31', order.extremes(image).greatest)

    def test_restriction_images_are_v_shapes_with_expected_tops(self):
        expected = {(0, '2'): '22', (0, '3'): '33', (1, '1'): '11',
                    (1, '2'): '22', (1, '3'): '32'}
        for (player, opp), top in expected.items():
            image = games.restriction_image(self.game, player, (opp,))
            self.assertEqual(2, len(image.covers))
            self.assertEqual(top, order.extremes(image).greatest)

    def test_risk_conditions_pass_for_both_players(self):
        conditions = games.verify_risk_conditions(self.game)
        self.assertTrue(all(condition.passes for condition in conditions))
        self.assertIs(GameSetting.PURE_STRATEGY_GAME, games.risk_setting(self.game))

    def test_comparison_table_player_1_matches_expected_cells(self):
        table = games.comparison_table(self.game, 0)
        expected = {
            ('1', '2', ('1',)): '11 ≤ 21', ('1', '3', ('1',)): '11 ≤ 31',
            ('2', '3', ('1',)): '21 ≤ 31', ('1', '2', ('2',)): '12 ≤ 22',
            ('1', '3', ('2',)): '12 ? 32', ('2', '3', ('2',)): '22 ≥ 32',
            ('1', '2', ('3',)): '13 ? 23', ('1', '3', ('3',)): '13 ≤ 33',
            ('2', '3', ('3',)): '23 ≤ 33',
        }
        actual = {key: str(cell) for key, cell in table.cells.items()}
        self.assertEqual(expected, actual)

    def test_comparison_table_player_2_matches_expected_cells(self):
        table = games.comparison_table(self.game, 1)
        expected = {
            ('1', '2', ('1',)): '11 ≥ 12', ('1', '3', ('1',)): '11 ≥ 13',
            ('2', '3', ('1',)): '12 ? 13', ('1', '2', ('2',)): '21 ≤ 22',
            ('1', '3', ('2',)): '21 ? 23', ('2', '3', ('2',)): '22 ≥ 23',
            ('1', '2', ('3',)): '31 ≤ 32', ('1', '3', ('3',)): '31 ? 33',
            ('2', '3', ('3',)): '32 ≥ 33',
        }
        actual = {key: str(cell) for key, cell in table.cells.items()}
        self.assertEqual(expected, actual)

    def test_comparison_tables_have_exactly_five_incomparable_cells(self):
        found = {(cell.left, cell.right)
                 for player in (0, 1)
                 for cell in games.comparison_table(self.game, player).incomparable_cells()}
        expected = {('13', '23'), ('12', '32'), ('12', '13'), ('21', '23'), ('31', '33')}
        self.assertEqual(expected, found)

    def test_comparison_table_entry_swapped_pair_flips(self):
        table = games.comparison_table(self.game, 0)
        self.assertIs(Comparison.GEQ, table.entry('2', '1', ('1',)))

    def test_no_dominance_for_either_player(self):
        for player in (0, 1):
            report = games.dominance_report(self.game, player)
            self.assertEqual((), report.dominant)
            self.assertEqual((), report.dominated)
            self.assertEqual(('1', '2', '3'), report.undominated)

    def test_cautious_player_1_empty(self):
        report = games.cautious_strategies(self.game, 0, rule='greatest')
        self.assertEqual((), report.strategies)
        self.assertEqual((('1', None), ('2', None), ('3', None)), report.security_levels)

    def test_cautious_player_2_strategy_2_with_level_32(self):
        report = games.cautious_strategies(self.game, 1, rule='greatest')
        self.assertEqual(('2',), report.strategies)
        self.assertEqual('32', report.level('2'))
        self.assertEqual(games.payoff(self.game, 1, ('3', '2')), report.level('2'))

    def test_best_responses_and_nash(self):
        responses = games.best_responses(self.game)
        self.assertEqual({'31', '22', '33'}, set(labels(responses[0])))
        self.assertEqual({'11', '22', '32'}, set(labels(responses[1])))
        self.assertEqual(('22',), labels(games.nash_equilibria(self.game)))

    def test_solve_assembles_every_concept(self):
        solution = games.solve(self.game, cautious_rule='greatest')
        self.assertEqual((('2', '2'),), solution.nash_set)
        self.assertEqual(2, len(solution.comparison_tables))
        self.assertEqual(('2',), solution.cautious[1].strategies)


class OrdinalGameValidationTests(unittest.TestCase):

    def setUp(self):
        self.poset = poset_from(('lo', 'hi'), [('lo', 'hi')])

    def make(self, payoffs, strategies=(('a', 'b'), ('x',)), players=('1', '2')):
        return OrdinalGame(players=players, strategies=strategies,
                           payoff_posets=(self.poset,) * len(players), payoffs=payoffs)

    def test_game_rejects_single_player(self):
        self.assertRaises(InvalidGame, OrdinalGame, ('1',), (('a',),),
                          (self.poset,), ({('a',): 'lo'},))

    def test_game_rejects_missing_profile(self):
        payoff = {('a', 'x'): 'lo'}
        self.assertRaises(InvalidGame, self.make, (payoff, payoff))

    def test_game_rejects_unknown_profile(self):
        payoff = {('a', 'x'): 'lo', ('b', 'x'): 'hi', ('c', 'x'): 'hi'}
        self.assertRaises(InvalidGame, self.make, (payoff, payoff))

    def test_game_rejects_element_outside_poset(self):
        payoff = {('a', 'x'): 'lo', ('b', 'x'): 'top'}
        self.assertRaises(UnknownElement, self.make, (payoff, payoff))

    def test_game_rejects_duplicate_players(self):
        payoff = {('a', 'x'): 'lo', ('b', 'x'): 'hi'}
        self.assertRaises(InvalidGame, self.make, (payoff, payoff), players=('1', '1'))

    def test_single_strategy_player_is_vacuously_dominant(self):
        payoff = {('a', 'x'): 'lo', ('b', 'x'): 'hi'}
        game = self.make((payoff, payoff))
        report = games.dominance_report(game, 1)
        self.assertEqual(('x',), report.dominant)
        first = games.dominance_report(game, 0)
        self.assertEqual(('b',), first.dominant)
        self.assertEqual(('a',), first.strictly_dominated)

    def test_constant_payoffs_give_no_development(self):
        payoff = {('a', 'x'): 'hi', ('b', 'x'): 'hi'}
        game = self.make((payoff, payoff))
        self.assertIs(GameSetting.NO_DEVELOPMENT, games.risk_setting(game))

    def test_profile_label_multi_character(self):
        self.assertEqual('(up, left)', games.profile_label(('up', 'left')))
        self.assertEqual('12', games.profile_label(('1', '2')))


class CautiousRuleTests(unittest.TestCase):

    def setUp(self):
        # Security levels l1 and l2 are incomparable, both below top.
        poset = poset_from(('l1', 'l2', 'top'), [('l1', 'top'), ('l2', 'top')])
        payoffs = {('a', 'x'): 'l1', ('a', 'y'): 'top',
                   ('b', 'x'): 'top', ('b', 'y'): 'l2'}
        other = {profile: 'top' for profile in payoffs}
        self.game = OrdinalGame(players=('1', '2'), strategies=(('a', 'b'), ('x', 'y')),
                                payoff_posets=(poset, poset), payoffs=(payoffs, other))

    def test_greatest_rule_needs_comparable_levels(self):
        report = games.cautious_strategies(self.game, 0, rule='greatest')
        self.assertEqual((), report.strategies)
        self.assertEqual('l1', report.level('a'))

    def test_maximal_rule_keeps_incomparable_levels(self):
        report = games.cautious_strategies(self.game, 0, rule='maximal')
        self.assertEqual(('a', 'b'), report.strategies)

    def test_invalid_rule_raises_ValueError(self):
        self.assertRaises(ValueError, games.cautious_strategies, self.game, 0, 'bold')

    def test_cautious_invariant_under_unreached_order_pairs(self):
        poset = poset_from(('l1', 'l2', 'top', 'spare1', 'spare2'),
                           [('l1', 'top'), ('l2', 'top'), ('spare1', 'spare2')])
        payoffs = self.game.payoffs[0]
        game = OrdinalGame(players=('1', '2'), strategies=self.game.strategies,
                           payoff_posets=(poset, poset),
                           payoffs=(dict(payoffs), dict(self.game.payoffs[1])))
        for rule in ('greatest', 'maximal'):
            self.assertEqual(games.cautious_strategies(self.game, 0, rule).strategies,
                             games.cautious_strategies(game, 0, rule).strategies)


class ThreePlayerTests(unittest.TestCase):

    def test_three_player_nash_matches_brute_force(self):
        rng = random.Random(helpers.SEED)
        for _ in range(50):
            game = helpers.random_game(rng, players=3, max_strategies=2, max_elements=4)
            self.assertEqual(helpers.brute_nash(game), set(games.nash_equilibria(game)))

    def test_opponent_profiles_skip_own_slot(self):
        poset = poset_from(('o',), [])
        strategies = (('a', 'b'), ('x',), ('p', 'q'))
        payoff = {profile: 'o' for profile in
                  [(s1, s2, s3) for s1 in strategies[0] for s2 in strategies[1]
                   for s3 in strategies[2]]}
        game = OrdinalGame(players=('1', '2', '3'), strategies=strategies,
                           payoff_posets=(poset,) * 3, payoffs=(payoff,) * 3)
        self.assertEqual((('a', 'x'), ('b', 'x')), games.opponent_profiles(game, 2))
        self.assertEqual(('a', 'x', 'q'), games.full_profile(2, ('a', 'x'), 'q'))


if __name__ == '__main__':
    unittest.main()
