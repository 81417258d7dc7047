"""Plain-text reports and DOT documents for the command line.

Every function here is pure and returns text; nothing is timestamped and
every listing follows declaration order, so repeated runs on the same input
produce identical bytes.
"""
import logging

import pandas as pd

from relrisk import game as games
from relrisk import order, risk, stochastic
from relrisk.order import Poset


LOGGER = logging.getLogger(__name__)
EMPTY_SET = '∅'
MISSING = 'none'


def format_set(items) -> str:
    """``{ a, b }`` or ``∅``, items in the order given."""
    items = list(items)
    if not items:
        return EMPTY_SET
    return '{ ' + ', '.join(str(item) for item in items) + ' }'


def _yes_no(flag: bool) -> str:
    return 'yes' if flag else 'no'


def _or_missing(value) -> str:
    return MISSING if value is None else str(value)


def _left(column: pd.Series) -> pd.Series:
    width = max([len(str(column.name))] + column.str.len().tolist())
    return column.str.ljust(width)


def _df_to_text(df: pd.DataFrame) -> str:
    """Renders `df` as a left-aligned text table, indented two spaces."""
    text = df.astype(str).apply(_left).to_string(index=True, justify='left')
    return '\n'.join('  ' + line.rstrip() for line in text.splitlines())


def _structure_lines(profile: order.StructureProfile) -> list:
    return [f'greatest = {_or_missing(profile.greatest)}',
            f'least = {_or_missing(profile.least)}',
            f'maximal = {format_set(profile.maximal_set)}',
            f'minimal = {format_set(profile.minimal_set)}',
            f'upper semilattice: {_yes_no(profile.is_upper_semilattice)}',
            f'lower semilattice: {_yes_no(profile.is_lower_semilattice)}',
            f'total order: {_yes_no(profile.is_total_order)}']


def _finish(lines) -> str:
    return '\n'.join(lines) + '\n'


def check_report(name: str, poset: Poset) -> str:
    """Order summary: sizes, covers, extremes and semilattice flags."""
    lines = [f'poset {name}',
             f'elements = {format_set(poset.elements)}',
             'covers = ' + format_set(f'{a} < {b}' for a, b in poset.covers)]
    lines.extend(_structure_lines(order.structure_profile(poset)))
    return _finish(lines)


def classification_lines(classification: risk.RiskClassification) -> list:
    lines = [f'kind = {classification.kind.value}',
             f'target = {format_set(classification.target_set)}']
    if classification.not_risk_situation:
        lines.append('not a risk situation: the target lists candidates only')
    lines.extend(f'note: {note}' for note in classification.diagnostics)
    return lines


def classify_report(name: str, poset: Poset, partition_name=None, partition=None) -> str:
    """Risk classification of a poset or of its quotient by a partition.

    Parameters
    ----------------
    name : str
    poset : Poset
    partition_name : str, optional
    partition : relrisk.order.Partition, optional
        Classify the factor set instead of `poset` when given.

    Returns
    ----------------
    report : str

    Raises
    ----------------
    QuotientCycleError
    """
    lines = [f'poset {name}']
    if partition is None:
        classification = risk.classify(poset)
    else:
        factor = order.quotient(poset, partition)
        classification = risk.classify(factor)
        lines.append(f'partition {partition_name}')
        lines.append(f'classes = {format_set(factor.elements)}')
        lines.append('covers = ' + format_set(f'{a} < {b}' for a, b in factor.covers))
    lines.extend(classification_lines(classification))
    return _finish(lines)


def comparison_frame(game: games.OrdinalGame, table: games.ComparisonTable) -> pd.DataFrame:
    """One row per opponent choice, one column per strategy pair."""
    columns = [f'{a} and {b}' for a, b in table.pairs]
    rows = [games.profile_label(opp) for opp in table.opponents]
    data = [[str(table.cells[(a, b, opp)]) for a, b in table.pairs]
            for opp in table.opponents]
    frame = pd.DataFrame(data, index=rows, columns=columns)
    others = [p for k, p in enumerate(game.players) if k != table.player]
    frame.index.name = 'vs ' + ', '.join(others)
    return frame


def security_frame(report: games.CautiousReport) -> pd.DataFrame:
    levels = [[_or_missing(level)] for _, level in report.security_levels]
    strategies = [strategy for strategy, _ in report.security_levels]
    frame = pd.DataFrame(levels, index=strategies, columns=['security level'])
    frame.index.name = 'strategy'
    return frame


def solve_report(name: str, solution: games.SolutionReport) -> str:
    """Full solution of an ordinal game, sections in a fixed order:
    risk conditions, comparison tables, dominance, cautious strategies,
    best responses and the Nash set.
    """
    game = solution.game
    label = games.profile_label
    lines = [f'game {name}',
             f'players = {format_set(game.players)}',
             f'setting = {solution.setting.value}',
             '',
             'risk conditions']
    for condition in solution.risk_conditions:
        player = game.players[condition.player]
        lines.append(f'  player {player}: payoff poset upper semilattice: '
                     f'{_yes_no(condition.payoff_poset_upper)}; '
                     f'restriction images upper semilattices: '
                     f'{_yes_no(condition.images_upper)}')
        if condition.failing_profiles:
            lines.append('    failing against '
                         + format_set(label(p) for p in condition.failing_profiles))

    for table in solution.comparison_tables:
        player = game.players[table.player]
        lines.extend(['', f'comparison table, player {player}'])
        if table.pairs:
            lines.append(_df_to_text(comparison_frame(game, table)))
        else:
            lines.append('  (single strategy)')
        lines.append('  incomparable = '
                     + format_set(f'{c.left}?{c.right}' for c in table.incomparable_cells()))

    lines.extend(['', 'dominance'])
    for report in solution.dominance:
        player = game.players[report.player]
        lines.append(f'  player {player}: dominant = {format_set(report.dominant)}; '
                     f'dominated = {format_set(report.dominated)}; '
                     f'strictly dominated = {format_set(report.strictly_dominated)}; '
                     f'undominated = {format_set(report.undominated)}')

    for report in solution.cautious:
        player = game.players[report.player]
        lines.extend(['', f'cautious strategies, player {player} (rule {report.rule})',
                      _df_to_text(security_frame(report)),
                      f'  P{player} = {format_set(report.strategies)}'])

    lines.extend(['', 'best responses'])
    for player, graph in zip(game.players, solution.best_responses):
        lines.append(f'  BR{player} = ' + format_set(label(p) for p in graph))
    lines.extend(['', 'NE = ' + format_set(label(p) for p in solution.nash_set)])
    return _finish(lines)


def distribution_frame(classes: tuple, outcomes) -> pd.DataFrame:
    data = [[str(c.distribution.mass(e)) for e in outcomes] for c in classes]
    frame = pd.DataFrame(data, index=[c.label for c in classes],
                         columns=list(outcomes))
    frame.index.name = 'measure'
    return frame


def push_report(name: str, model: stochastic.DecisionModel, explicit_order=None) -> str:
    """Pushforward measures of a decision model and their order.

    Raises
    ----------------
    CycleError
        When `explicit_order` is cyclic on the measure classes.
    """
    analysis = stochastic.measure_order_analysis(model, explicit_order=explicit_order)
    classes = analysis.measures.classes
    lines = [f'stoch {name}',
             f'decisions = {format_set(model.decisions)}',
             f'states = {format_set(model.space.states)}',
             '',
             'measures',
             _df_to_text(distribution_frame(classes, model.outcomes.elements)),
             f'environment risk only: {_yes_no(analysis.measures.environment_risk_only)}',
             '',
             'measure order ' + ('(explicit)' if analysis.explicit else '(dominance lift)'),
             'covers = ' + format_set(f'{a} < {b}' for a, b in analysis.poset.covers)]
    lines.extend(_structure_lines(analysis.profile))
    lines.append('')
    if analysis.has_optimum:
        lines.append(f'optimal decisions = {format_set(analysis.optimal_decisions)}')
    else:
        lines.append('no optimal decision')
    return _finish(lines)


def dot_export(poset: Poset) -> str:
    """Hasse diagram as a DOT document, one edge per cover pair.

    Edges follow declaration order; names are quoted verbatim.
    """
    lines = ['digraph hasse {', 'rankdir=BT;']
    lines.extend(f'"{a}" -> "{b}";' for a, b in poset.covers.sorted_pairs())
    lines.append('}')
    LOGGER.debug('DOT export with %s edges', len(poset.covers))
    return _finish(lines)
