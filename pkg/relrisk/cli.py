"""riskctl: command line front end over model documents.

Exit codes: 0 on success, 1 for input, parse and usage errors, 2 when the
input violates order structure (a cyclic cover relation or a partition whose
quotient is cyclic). Reports go to standard output, diagnostics to standard
error.
"""
import logging
import os
import sys

import click

from relrisk import __version__, config, dsl, report
from relrisk.errors import CycleError, ModelParseError, RelRiskError
from relrisk.game import solve


LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_STRUCTURE = 2


class RiskGroup(click.Group):
    """Group whose commands return exit codes instead of raising SystemExit.

    Click's own usage errors exit with 1 here, not Click's default 2, so
    code 2 stays reserved for structural violations.
    """

    def main(self, args=None, prog_name=None, complete_var=None,
             standalone_mode=True, **extra):
        try:
            code = super().main(args=args, prog_name=prog_name,
                                complete_var=complete_var,
                                standalone_mode=False, **extra)
        except click.ClickException as err:
            err.show()
            code = EXIT_INPUT
        except click.Abort:
            click.echo('Aborted!', err=True)
            code = EXIT_INPUT
        if not isinstance(code, int):
            code = EXIT_OK
        sys.exit(code)


def resolve_model_path(model: str) -> str:
    """Returns `model` if it is a file, else the shipped fixture it names.

    ``superpowers`` and ``superpowers.risk`` both find
    ``relrisk/models/superpowers.risk``.
    """
    if os.path.isfile(model):
        return model
    name = model if model.endswith('.risk') else model + '.risk'
    shipped = os.path.join(config.MODELS_PATH, name)
    if os.path.isfile(shipped):
        LOGGER.debug('Using shipped model %s', shipped)
        return shipped
    return model


def _report_parse_error(err: ModelParseError) -> int:
    for diagnostic in err.diagnostics:
        click.echo(str(diagnostic), err=True)
    errors = [d for d in err.diagnostics if d.severity == 'error']
    if errors and all(d.code == 'cycle' for d in errors):
        return EXIT_STRUCTURE
    return EXIT_INPUT


def _load(model: str):
    """Parses the model file; returns ``(model_file, None)`` or
    ``(None, exit_code)`` after printing diagnostics.
    """
    path = resolve_model_path(model)
    try:
        parsed = dsl.load(path)
    except OSError as err:
        click.echo(f'error: cannot read {model}: {err.strerror}', err=True)
        return None, EXIT_INPUT
    except ModelParseError as err:
        return None, _report_parse_error(err)
    for warning in parsed.warnings:
        click.echo(str(warning), err=True)
    LOGGER.info('Loaded model file %s', path)
    return parsed, None


def _lookup(table: dict, kind: str, name: str):
    if name not in table:
        known = ', '.join(table) or 'none'
        click.echo(f'error: unknown {kind} {name!r} (defined: {known})', err=True)
        return None
    return table[name]


def _emit(render) -> int:
    """Runs `render` and prints its text, mapping library errors to codes."""
    try:
        text = render()
    except CycleError as err:
        click.echo(f'error: {err}', err=True)
        return EXIT_STRUCTURE
    except RelRiskError as err:
        click.echo(f'error: {err}', err=True)
        return EXIT_INPUT
    click.echo(text, nl=False)
    return EXIT_OK


@click.group(cls=RiskGroup)
@click.version_option(version=__version__,
                      message=f'%(prog)s ({config.APP_NAME}) %(version)s')
def riskctl():
    """Relational risk analysis of model documents."""


MODEL_ARGUMENT = click.argument('model', metavar='MODEL')


@riskctl.command()
@MODEL_ARGUMENT
@click.option('--poset', 'poset_name', required=True, help='Poset to check.')
def check(model, poset_name):
    """Validate a poset and summarise its order structure."""
    parsed, code = _load(model)
    if parsed is None:
        return code
    poset = _lookup(parsed.posets, 'poset', poset_name)
    if poset is None:
        return EXIT_INPUT
    return _emit(lambda: report.check_report(poset_name, poset))


@riskctl.command()
@MODEL_ARGUMENT
@click.option('--poset', 'poset_name', required=True, help='Outcome poset.')
@click.option('--partition', 'partition_name', default=None,
              help='Indifference partition; classifies the quotient.')
def classify(model, poset_name, partition_name):
    """Place an outcome poset in the risk taxonomy."""
    parsed, code = _load(model)
    if parsed is None:
        return code
    poset = _lookup(parsed.posets, 'poset', poset_name)
    if poset is None:
        return EXIT_INPUT
    if partition_name is None:
        return _emit(lambda: report.classify_report(poset_name, poset))
    definition = _lookup(parsed.partitions, 'partition', partition_name)
    if definition is None:
        return EXIT_INPUT
    if definition.poset != poset_name:
        click.echo(f'error: partition {partition_name!r} is declared on poset '
                   f'{definition.poset!r}, not {poset_name!r}', err=True)
        return EXIT_INPUT
    return _emit(lambda: report.classify_report(poset_name, poset, partition_name,
                                                definition.partition))


@riskctl.command('solve')
@MODEL_ARGUMENT
@click.option('--game', 'game_name', required=True, help='Game to solve.')
@click.option('--cautious-rule', type=click.Choice(config.CAUTIOUS_RULES),
              default=None, help='Overrides RELRISK_CAUTIOUS_RULE.')
def solve_command(model, game_name, cautious_rule):
    """Solve an ordinal game: dominance, cautious strategies and equilibria."""
    parsed, code = _load(model)
    if parsed is None:
        return code
    definition = _lookup(parsed.games, 'game', game_name)
    if definition is None:
        return EXIT_INPUT
    return _emit(lambda: report.solve_report(
        game_name, solve(definition.game, cautious_rule=cautious_rule)))


def _preference(value: str) -> tuple:
    low, sep, high = value.partition(':')
    if not sep or not low or not high:
        raise click.BadParameter(f'{value!r} is not of the form LOW:HIGH')
    return low, high


@riskctl.command()
@MODEL_ARGUMENT
@click.option('--stoch', 'stoch_name', required=True, help='Decision model.')
@click.option('--prefer', 'preferences', multiple=True, metavar='LOW:HIGH',
              help='Explicit measure order: the measure of LOW is below that '
                   'of HIGH. Replaces the dominance lift. Repeatable.')
def push(model, stoch_name, preferences):
    """Pushforward measures of a decision model and their order."""
    explicit = [_preference(value) for value in preferences] or None
    parsed, code = _load(model)
    if parsed is None:
        return code
    definition = _lookup(parsed.stochs, 'stoch', stoch_name)
    if definition is None:
        return EXIT_INPUT
    return _emit(lambda: report.push_report(stoch_name, definition.model,
                                            explicit_order=explicit))


@riskctl.command()
@MODEL_ARGUMENT
@click.option('--poset', 'poset_name', required=True, help='Poset to draw.')
@click.option('--output', type=click.Path(dir_okay=False, writable=True),
              default=None, help='Write the DOT document here instead of stdout.')
def dot(model, poset_name, output):
    """Hasse diagram of a poset as a DOT document."""
    parsed, code = _load(model)
    if parsed is None:
        return code
    poset = _lookup(parsed.posets, 'poset', poset_name)
    if poset is None:
        return EXIT_INPUT
    text = report.dot_export(poset)
    if output is None:
        click.echo(text, nl=False)
        return EXIT_OK
    try:
        with open(output, 'w', encoding='utf-8') as dot_file:
            dot_file.write(text)
    except OSError as err:
        click.echo(f'error: cannot write {output}: {err.strerror}', err=True)
        return EXIT_INPUT
    LOGGER.info('Wrote DOT for poset %s to %s', poset_name, output)
    return EXIT_OK


@riskctl.command()
@MODEL_ARGUMENT
def fmt(model):
    """Print the model document in canonical form."""
    parsed, code = _load(model)
    if parsed is None:
        return code
    click.echo(dsl.serialize(parsed), nl=False)
    return EXIT_OK


def run():
    """Console entry point."""
    riskctl()  # pylint: disable=no-value-for-parameter
