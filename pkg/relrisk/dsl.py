"""Model-definition language: parser, diagnostics and canonical serializer.

One document holds any number of named posets, partitions, games and
stochastic models::

    poset U { elements: a, b, c; covers: a < b, b < c; }
    partition A on U { blocks: (a, c), (b); }
    game G { player 1 strategies: x, y; player 2 strategies: x, y;
             payoff 1: poset U; payoff 2: poset U;
             outcome (x, x) -> a; ... }
    stoch S { states: w1 prob 0.5, w2 prob 0.5; decisions: d1, d2;
              outcomes: poset U; map (d1, w1) -> a; ... }

Whitespace is free, ``#`` starts a comment running to the end of the line
and identifiers match ``[A-Za-z0-9_]+``. Parsing runs in two phases: the
syntax pass stops at the first error, the resolution pass reports every
problem it finds. Failures raise :class:`relrisk.errors.ModelParseError`.
"""
import itertools
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from relrisk import order
from relrisk.errors import CycleError, InvalidPartition, ModelParseError
from relrisk.game import OrdinalGame
from relrisk.order import GroundSet, Partition, StrictRelation
from relrisk.stochastic import DecisionModel, FiniteProbabilitySpace


LOGGER = logging.getLogger(__name__)

TOKEN_SPEC = [
    ('COMMENT', r'#[^\n]*'),
    ('NEWLINE', r'\n'),
    ('SPACE', r'[ \t\r\f\v]+'),
    ('ARROW', r'->'),
    ('PUNCT', r'[{}:;,<()]'),
    ('WORD', r'[A-Za-z0-9_]+(?:\.[A-Za-z0-9_]+)*'),
    ('MISMATCH', r'.'),
]
TOKEN_RE = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in TOKEN_SPEC))
IDENTIFIER_RE = re.compile(r'[A-Za-z0-9_]+')
DECIMAL_RE = re.compile(r'[0-9]+(?:\.[0-9]+)?')

BLOCK_KINDS = ['poset', 'partition', 'game', 'stoch']


@dataclass(frozen=True)
class Diagnostic:
    """Positioned message from the parser. Lines and columns start at 1."""
    severity: str
    line: int
    column: int
    message: str
    hint: Optional[str] = None
    code: str = 'syntax'

    def __str__(self):
        text = f'{self.severity}:{self.line}:{self.column}: {self.message}'
        if self.hint:
            text += f' (hint: {self.hint})'
        return text


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class PartitionDef:
    name: str
    poset: str
    partition: Partition


@dataclass(frozen=True)
class GameDef:
    name: str
    posets: tuple
    game: OrdinalGame


@dataclass(frozen=True)
class StochDef:
    name: str
    poset: str
    model: DecisionModel


@dataclass
class ModelFile:
    """Named objects parsed from one document, in declaration order."""
    posets: dict = field(default_factory=dict)
    partitions: dict = field(default_factory=dict)
    games: dict = field(default_factory=dict)
    stochs: dict = field(default_factory=dict)
    warnings: tuple = field(default=(), compare=False)


class _SyntaxAbort(Exception):
    def __init__(self, diagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


def tokenize(text: str) -> list:
    """Splits `text` into tokens, dropping blanks and comments.

    The list always ends with an ``EOF`` token.
    """
    tokens = []
    line, line_start = 1, 0
    for match in TOKEN_RE.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == 'NEWLINE':
            line += 1
            line_start = match.end()
            continue
        if kind in ('SPACE', 'COMMENT'):
            continue
        if kind == 'MISMATCH':
            raise _SyntaxAbort(Diagnostic('error', line, column,
                                          f'unexpected character {match.group()!r}'))
        tokens.append(Token(kind, match.group(), line, column))
    tokens.append(Token('EOF', '', line, len(text) - line_start + 1))
    return tokens


# Syntax tree nodes keep their tokens so resolution errors carry positions.

@dataclass
class _PosetDecl:
    name: Token
    elements: list = field(default_factory=list)
    covers: list = field(default_factory=list)


@dataclass
class _PartitionDecl:
    name: Token
    poset: Token
    blocks: list = field(default_factory=list)


@dataclass
class _GameDecl:
    name: Token
    players: list = field(default_factory=list)
    payoffs: list = field(default_factory=list)
    outcomes: list = field(default_factory=list)


@dataclass
class _StochDecl:
    name: Token
    states: list = field(default_factory=list)
    decisions: list = field(default_factory=list)
    poset: Optional[Token] = None
    maps: list = field(default_factory=list)
    section_tokens: dict = field(default_factory=dict)


class _Parser:
    """Recursive-descent syntax pass over a token list."""

    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != 'EOF':
            self.pos += 1
        return token

    def fail(self, token, message, hint=None):
        raise _SyntaxAbort(Diagnostic('error', token.line, token.column,
                                      message, hint=hint))

    def check(self, text) -> bool:
        return self.current().text == text and self.current().kind != 'EOF'

    def expect(self, text, hint=None) -> Token:
        token = self.current()
        if token.text != text or token.kind == 'EOF':
            found = 'end of input' if token.kind == 'EOF' else repr(token.text)
            self.fail(token, f'expected {text!r}, found {found}', hint=hint)
        return self.advance()

    def word(self, what) -> Token:
        token = self.current()
        if token.kind != 'WORD':
            found = 'end of input' if token.kind == 'EOF' else repr(token.text)
            self.fail(token, f'expected {what}, found {found}')
        return self.advance()

    def identifier(self, what) -> Token:
        token = self.word(what)
        if not IDENTIFIER_RE.fullmatch(token.text):
            self.fail(token, f'invalid identifier {token.text!r}',
                      hint='identifiers match [A-Za-z0-9_]+')
        return token

    def identifier_list(self, what) -> list:
        items = [self.identifier(what)]
        while self.check(','):
            self.advance()
            items.append(self.identifier(what))
        return items

    def tuple_of(self, what) -> list:
        self.expect('(')
        items = self.identifier_list(what)
        self.expect(')')
        return items

    def document(self) -> list:
        decls = []
        while self.current().kind != 'EOF':
            keyword = self.word('a block keyword')
            if keyword.text == 'poset':
                decls.append(self.poset())
            elif keyword.text == 'partition':
                decls.append(self.partition())
            elif keyword.text == 'game':
                decls.append(self.game())
            elif keyword.text == 'stoch':
                decls.append(self.stoch())
            else:
                self.fail(keyword, f'unknown block keyword {keyword.text!r}',
                          hint='expected one of ' + ', '.join(BLOCK_KINDS))
        return decls

    def poset(self) -> _PosetDecl:
        decl = _PosetDecl(name=self.identifier('poset name'))
        self.expect('{')
        seen = set()
        while not self.check('}'):
            section = self.word("'elements', 'covers' or '}'")
            if section.text not in ('elements', 'covers'):
                self.fail(section, f'unknown poset section {section.text!r}')
            if section.text in seen:
                self.fail(section, f'section {section.text!r} given twice')
            seen.add(section.text)
            self.expect(':')
            if section.text == 'elements':
                decl.elements = self.identifier_list('element')
            elif not self.check(';'):
                decl.covers.extend(self.chain())
                while self.check(','):
                    self.advance()
                    decl.covers.extend(self.chain())
            self.expect(';')
        if 'elements' not in seen:
            self.fail(decl.name, f'poset {decl.name.text} has no elements section')
        self.expect('}')
        return decl

    def chain(self) -> list:
        links = []
        low = self.identifier('element')
        self.expect('<', hint="covers are written 'a < b'")
        high = self.identifier('element')
        links.append((low, high))
        while self.check('<'):
            self.advance()
            low, high = high, self.identifier('element')
            links.append((low, high))
        return links

    def partition(self) -> _PartitionDecl:
        name = self.identifier('partition name')
        self.expect('on')
        decl = _PartitionDecl(name=name, poset=self.identifier('poset name'))
        self.expect('{')
        self.expect('blocks')
        self.expect(':')
        decl.blocks.append(self.tuple_of('element'))
        while self.check(','):
            self.advance()
            decl.blocks.append(self.tuple_of('element'))
        self.expect(';')
        self.expect('}')
        return decl

    def game(self) -> _GameDecl:
        decl = _GameDecl(name=self.identifier('game name'))
        self.expect('{')
        while not self.check('}'):
            item = self.word("'player', 'payoff', 'outcome' or '}'")
            if item.text == 'player':
                key = self.identifier('player key')
                self.expect('strategies')
                self.expect(':')
                decl.players.append((key, self.identifier_list('strategy')))
            elif item.text == 'payoff':
                key = self.identifier('player key')
                self.expect(':')
                self.expect('poset')
                decl.payoffs.append((key, self.identifier('poset name')))
            elif item.text == 'outcome':
                profile = self.tuple_of('strategy')
                self.expect('->')
                if self.check('('):
                    elements = self.tuple_of('element')
                else:
                    elements = [self.identifier('element')]
                decl.outcomes.append((item, profile, elements))
            else:
                self.fail(item, f'unknown game item {item.text!r}')
            self.expect(';')
        self.expect('}')
        return decl

    def stoch(self) -> _StochDecl:
        decl = _StochDecl(name=self.identifier('model name'))
        self.expect('{')
        while not self.check('}'):
            item = self.word("'states', 'decisions', 'outcomes', 'map' or '}'")
            if item.text in decl.section_tokens and item.text != 'map':
                self.fail(item, f'section {item.text!r} given twice')
            decl.section_tokens.setdefault(item.text, item)
            if item.text == 'states':
                self.expect(':')
                decl.states.append(self.state())
                while self.check(','):
                    self.advance()
                    decl.states.append(self.state())
            elif item.text == 'decisions':
                self.expect(':')
                decl.decisions = self.identifier_list('decision')
            elif item.text == 'outcomes':
                self.expect(':')
                self.expect('poset')
                decl.poset = self.identifier('poset name')
            elif item.text == 'map':
                self.expect('(')
                decision = self.identifier('decision')
                self.expect(',')
                state = self.identifier('state')
                self.expect(')')
                self.expect('->')
                decl.maps.append((item, decision, state, self.identifier('element')))
            else:
                self.fail(item, f'unknown stoch item {item.text!r}')
            self.expect(';')
        self.expect('}')
        return decl

    def state(self) -> tuple:
        state = self.identifier('state')
        self.expect('prob')
        return state, self.word('probability')


def parse_decimal(text: str) -> Fraction:
    """Exact rational for a plain decimal such as ``0.25``.

    Raises
    ----------------
    ValueError
        For anything else, scientific notation included.
    """
    if not DECIMAL_RE.fullmatch(text):
        raise ValueError(f'{text!r} is not a plain decimal')
    return Fraction(text)


class _Resolver:
    """Second pass: builds domain objects and collects every error."""

    def __init__(self):
        self.diagnostics = []
        self.model = ModelFile()
        self.broken = set()

    def error(self, token, message, hint=None, code='semantic'):
        self.diagnostics.append(Diagnostic('error', token.line, token.column,
                                           message, hint=hint, code=code))

    def warning(self, token, message, hint=None):
        self.diagnostics.append(Diagnostic('warning', token.line, token.column,
                                           message, hint=hint, code='semantic'))

    def errors(self) -> list:
        return [d for d in self.diagnostics if d.severity == 'error']

    def unique(self, tokens, what) -> list:
        seen = set()
        kept = []
        for token in tokens:
            if token.text in seen:
                self.error(token, f'duplicate {what} {token.text!r}')
                continue
            seen.add(token.text)
            kept.append(token.text)
        return kept

    def claim(self, table: dict, decl_name: Token, kind: str) -> bool:
        if decl_name.text in table or (kind == 'poset' and decl_name.text in self.broken):
            self.error(decl_name, f'duplicate {kind} name {decl_name.text!r}')
            return False
        return True

    def find_poset(self, token):
        if token.text in self.model.posets:
            return self.model.posets[token.text]
        if token.text not in self.broken:
            self.error(token, f'unknown identifier: poset {token.text!r}',
                       hint='declare the poset in this document')
        return None

    def run(self, decls) -> ModelFile:
        for decl in decls:
            if isinstance(decl, _PosetDecl):
                self.poset(decl)
        for decl in decls:
            if isinstance(decl, _PartitionDecl):
                self.partition(decl)
            elif isinstance(decl, _GameDecl):
                self.game(decl)
            elif isinstance(decl, _StochDecl):
                self.stoch(decl)
        self.model.warnings = tuple(d for d in self.diagnostics
                                    if d.severity == 'warning')
        return self.model

    def poset(self, decl: _PosetDecl):
        if not self.claim(self.model.posets, decl.name, 'poset'):
            return
        failures = len(self.errors())
        elements = self.unique(decl.elements, 'element')
        known = set(elements)
        pairs = {}
        for low, high in decl.covers:
            for token in (low, high):
                if token.text not in known:
                    self.error(token, f'unknown identifier: element {token.text!r}',
                               hint=f'declare it under elements of poset {decl.name.text}')
            if low.text == high.text:
                self.error(low, f'element {low.text!r} cannot cover itself')
            pairs.setdefault((low.text, high.text), low)
        if len(self.errors()) > failures:
            self.broken.add(decl.name.text)
            return
        relation = StrictRelation(GroundSet(tuple(elements)), frozenset(pairs))
        try:
            self.model.posets[decl.name.text] = order.validate_order(relation)
        except CycleError as err:
            witness = err.cycle
            token = pairs.get((witness[0], witness[1 % len(witness)]), decl.name)
            self.error(token, 'cover cycle: ' + ' < '.join(witness + witness[:1]),
                       hint=f'poset {decl.name.text} must be acyclic', code='cycle')
            self.broken.add(decl.name.text)

    def partition(self, decl: _PartitionDecl):
        if not self.claim(self.model.partitions, decl.name, 'partition'):
            return
        poset = self.find_poset(decl.poset)
        if poset is None:
            return
        failures = len(self.errors())
        for block in decl.blocks:
            for token in block:
                if token.text not in poset.ground:
                    self.error(token, f'unknown identifier: element {token.text!r}',
                               hint=f'not an element of poset {decl.poset.text}')
        if len(self.errors()) > failures:
            return
        try:
            partition = Partition(poset.ground,
                                  tuple(tuple(t.text for t in block) for block in decl.blocks))
        except InvalidPartition as err:
            self.error(decl.name, str(err))
            return
        self.model.partitions[decl.name.text] = PartitionDef(decl.name.text,
                                                             decl.poset.text, partition)

    def game(self, decl: _GameDecl):
        if not self.claim(self.model.games, decl.name, 'game'):
            return
        failures = len(self.errors())
        keys = self.unique([key for key, _ in decl.players], 'player')
        if len(keys) < 2:
            self.error(decl.name, f'game {decl.name.text} needs at least two players')
        strategies = {}
        for key, own in decl.players:
            if key.text not in strategies:
                strategies[key.text] = self.unique(own, 'strategy')
        posets, poset_names = {}, {}
        for key, poset_token in decl.payoffs:
            if key.text not in strategies:
                self.error(key, f'unknown identifier: player {key.text!r}')
            elif key.text in posets or key.text in poset_names:
                self.error(key, f'duplicate payoff for player {key.text!r}')
            else:
                poset_names[key.text] = poset_token.text
                poset = self.find_poset(poset_token)
                if poset is not None:
                    posets[key.text] = poset
        for key in keys:
            if key not in poset_names:
                self.error(decl.name, f'player {key!r} has no payoff poset')
        if len(self.errors()) > failures or len(posets) != len(keys):
            return

        mapped = {}
        for start, profile, elements in decl.outcomes:
            self.outcome(decl, keys, strategies, posets, mapped, start, profile, elements)
        for profile in itertools.product(*(strategies[key] for key in keys)):
            if profile not in mapped:
                self.error(decl.name, 'missing profile: no outcome for ('
                           + ', '.join(profile) + ')')
        if len(self.errors()) > failures:
            return
        payoffs = [{profile: elements[k] for profile, (elements, _) in mapped.items()}
                   for k in range(len(keys))]
        game = OrdinalGame(players=tuple(keys),
                           strategies=tuple(tuple(strategies[key]) for key in keys),
                           payoff_posets=tuple(posets[key] for key in keys),
                           payoffs=tuple(payoffs))
        self.model.games[decl.name.text] = GameDef(
            decl.name.text, tuple(poset_names[key] for key in keys), game)

    def outcome(self, decl, keys, strategies, posets, mapped, start, profile, elements):
        if len(profile) != len(keys):
            self.error(start, f'profile has {len(profile)} strategies, '
                       f'game {decl.name.text} has {len(keys)} players')
            return
        for key, token in zip(keys, profile):
            if token.text not in strategies[key]:
                self.error(token, f'unknown identifier: strategy {token.text!r} '
                           f'of player {key}')
                return
        if len(elements) == 1:
            elements = elements * len(keys)
        elif len(elements) != len(keys):
            self.error(start, f'outcome lists {len(elements)} elements for '
                       f'{len(keys)} players')
            return
        for key, token in zip(keys, elements):
            if token.text not in posets[key].ground:
                self.error(token, f'unknown identifier: element {token.text!r} '
                           f'in payoff poset of player {key}')
                return
        key = tuple(t.text for t in profile)
        if key in mapped:
            first = mapped[key][1]
            self.error(start, 'duplicate mapping for profile (' + ', '.join(key) + ')',
                       hint=f'first mapped on line {first.line}')
            return
        mapped[key] = (tuple(t.text for t in elements), start)

    def stoch(self, decl: _StochDecl):
        if not self.claim(self.model.stochs, decl.name, 'stoch'):
            return
        failures = len(self.errors())
        states = self.unique([state for state, _ in decl.states], 'state')
        probabilities = {}
        for state, prob in decl.states:
            try:
                value = parse_decimal(prob.text)
            except ValueError:
                self.error(prob, f'invalid probability {prob.text!r}',
                           hint='write a plain decimal such as 0.25; '
                                'scientific notation is not accepted')
                continue
            probabilities.setdefault(state.text, value)
            if value == 0:
                self.warning(state, f'state {state.text!r} has zero probability')
        if not states:
            self.error(decl.name, f'model {decl.name.text} declares no states')
        elif len(probabilities) == len(states):
            total = sum(probabilities.values(), Fraction(0))
            if total != 1:
                self.error(decl.section_tokens['states'],
                           f'probability sum is {total}, expected exactly 1')
        decisions = self.unique(decl.decisions, 'decision')
        if not decisions:
            self.error(decl.name, f'model {decl.name.text} declares no decisions')
        poset = None
        if decl.poset is None:
            self.error(decl.name, f'model {decl.name.text} has no outcomes section')
        else:
            poset = self.find_poset(decl.poset)
        if poset is None:
            return

        mapped = {}
        for start, decision, state, element in decl.maps:
            if decision.text not in decisions:
                self.error(decision, f'unknown identifier: decision {decision.text!r}')
            elif state.text not in states:
                self.error(state, f'unknown identifier: state {state.text!r}')
            elif element.text not in poset.ground:
                self.error(element, f'unknown identifier: element {element.text!r}',
                           hint=f'not an element of poset {decl.poset.text}')
            elif (decision.text, state.text) in mapped:
                first = mapped[(decision.text, state.text)][1]
                self.error(start, f'duplicate mapping for ({decision.text}, {state.text})',
                           hint=f'first mapped on line {first.line}')
            else:
                mapped[(decision.text, state.text)] = (element.text, start)
        for decision in decisions:
            for state in states:
                if (decision, state) not in mapped:
                    self.error(decl.name, f'missing mapping for ({decision}, {state})')
        if len(self.errors()) > failures:
            return
        model = DecisionModel(
            decisions=GroundSet(tuple(decisions)),
            space=FiniteProbabilitySpace(GroundSet(tuple(states)),
                                         tuple(probabilities[s] for s in states)),
            outcomes=poset.ground,
            outcome_map={pair: element for pair, (element, _) in mapped.items()},
            outcome_order=poset)
        self.model.stochs[decl.name.text] = StochDef(decl.name.text,
                                                     decl.poset.text, model)


def parse(text: str) -> ModelFile:
    """Parses a model document.

    Parameters
    ----------------
    text : str

    Returns
    ----------------
    model : ModelFile

    Raises
    ----------------
    ModelParseError
        Carrying every diagnostic, each with a line and column.
    """
    try:
        decls = _Parser(tokenize(text)).document()
    except _SyntaxAbort as abort:
        raise ModelParseError([abort.diagnostic]) from None
    resolver = _Resolver()
    model = resolver.run(decls)
    if resolver.errors():
        LOGGER.info('Model document rejected with %s errors', len(resolver.errors()))
        raise ModelParseError(resolver.diagnostics)
    LOGGER.debug('Parsed %s posets, %s partitions, %s games, %s stochastic models',
                 len(model.posets), len(model.partitions), len(model.games),
                 len(model.stochs))
    return model


def load(path) -> ModelFile:
    """Reads and parses a UTF-8 model file.

    Raises
    ----------------
    ModelParseError
        Also for bytes that are not valid UTF-8, positioned at the first
        bad byte.
    """
    with open(path, 'rb') as model_file:
        data = model_file.read()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError as err:
        before = data[:err.start]
        line_start = before.rfind(b'\n') + 1
        column = len(before[line_start:].decode('utf-8', errors='replace')) + 1
        line = before.count(b'\n') + 1
        LOGGER.info('Model file %s is not valid UTF-8', path)
        raise ModelParseError([Diagnostic(
            'error', line, column,
            f'invalid UTF-8 byte 0x{data[err.start]:02x}',
            hint='save the model file as UTF-8')]) from None
    return parse(text)


def decimal_text(value: Fraction) -> str:
    """Plain decimal spelling of a fraction with a terminating expansion."""
    value = Fraction(value)
    places = 0
    while (10 ** places) % value.denominator:
        places += 1
        if places > 64:
            raise ValueError(f'{value} has no finite decimal expansion')
    digits = value.numerator * (10 ** places // value.denominator)
    if not places:
        return str(digits)
    whole, frac = divmod(digits, 10 ** places)
    return f'{whole}.{frac:0{places}d}'


def serialize(model: ModelFile) -> str:
    """Canonical text of `model`; parsing it gives back an equal model."""
    lines = []
    for name, poset in model.posets.items():
        lines.append(f'poset {name} {{')
        lines.append('  elements: ' + ', '.join(poset.elements) + ';')
        if len(poset.covers):
            lines.append('  covers: ' + ', '.join(
                f'{a} < {b}' for a, b in poset.covers.sorted_pairs()) + ';')
        lines.append('}')
        lines.append('')
    for name, definition in model.partitions.items():
        blocks = ', '.join('(' + ', '.join(block) + ')'
                           for block in definition.partition.blocks)
        lines.append(f'partition {name} on {definition.poset} {{')
        lines.append(f'  blocks: {blocks};')
        lines.append('}')
        lines.append('')
    for name, definition in model.games.items():
        game = definition.game
        lines.append(f'game {name} {{')
        for player, own in zip(game.players, game.strategies):
            lines.append(f'  player {player} strategies: ' + ', '.join(own) + ';')
        for player, poset_name in zip(game.players, definition.posets):
            lines.append(f'  payoff {player}: poset {poset_name};')
        for profile in itertools.product(*game.strategies):
            elements = [mapping[profile] for mapping in game.payoffs]
            if len(set(elements)) == 1:
                target = elements[0]
            else:
                target = '(' + ', '.join(elements) + ')'
            lines.append('  outcome (' + ', '.join(profile) + f') -> {target};')
        lines.append('}')
        lines.append('')
    for name, definition in model.stochs.items():
        stoch = definition.model
        states = ', '.join(f'{state} prob {decimal_text(p)}'
                           for state, p in zip(stoch.space.states,
                                               stoch.space.probabilities))
        lines.append(f'stoch {name} {{')
        lines.append(f'  states: {states};')
        lines.append('  decisions: ' + ', '.join(stoch.decisions) + ';')
        lines.append(f'  outcomes: poset {definition.poset};')
        for decision in stoch.decisions:
            for state in stoch.space.states:
                element = stoch.outcome_map[(decision, state)]
                lines.append(f'  map ({decision}, {state}) -> {element};')
        lines.append('}')
        lines.append('')
    return '\n'.join(lines)
