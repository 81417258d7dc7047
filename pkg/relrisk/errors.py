"""Exceptions raised by the relational risk toolkit.

Every error derives from :class:`RelRiskError`, itself a ``ValueError`` so
callers that only care about bad input can keep catching ``ValueError``.
"""


class RelRiskError(ValueError):
    """Base class for all toolkit errors."""


class UnknownElement(RelRiskError):
    """An element identifier is not part of the ground set."""

    def __init__(self, element, where=None):
        self.element = element
        msg = f'Unknown element {element!r}'
        if where:
            msg += f' in {where}'
        super().__init__(msg)


class InvalidRelation(RelRiskError):
    """A relation breaks the strict-relation invariants."""


class InvalidPartition(RelRiskError):
    """Blocks overlap, are empty, or do not cover the ground set."""


class CycleError(RelRiskError):
    """A declared order contains a directed cycle.

    Attributes
    ----------------
    cycle : list
        Elements along the cycle, first element not repeated at the end.
    """

    def __init__(self, cycle, message=None):
        self.cycle = list(cycle)
        if message is None:
            message = 'Order contains a cycle: ' + ' < '.join(
                self.cycle + self.cycle[:1])
        super().__init__(message)


class QuotientCycleError(CycleError):
    """The order induced on a partition's blocks has a cycle."""

    def __init__(self, blocks):
        self.blocks = list(blocks)
        message = 'Induced order on blocks contains a cycle: ' + ' < '.join(
            self.blocks + self.blocks[:1])
        super().__init__(self.blocks, message=message)


class GroundMismatch(RelRiskError):
    """Objects that must share a ground set do not."""


class InvalidGame(RelRiskError):
    """An ordinal game breaks its construction invariants."""


class DimensionMismatch(RelRiskError):
    """Mixed strategies do not match the game's strategy sets."""


class InvalidDistribution(RelRiskError):
    """Probabilities are negative or do not sum to exactly one."""


class InvalidModel(RelRiskError):
    """A stochastic decision model breaks its construction invariants."""


class UnknownDecision(RelRiskError):
    """A decision is not declared in the model."""

    def __init__(self, decision):
        self.decision = decision
        super().__init__(f'Unknown decision {decision!r}')


class ModelParseError(RelRiskError):
    """A model document failed to parse.

    Attributes
    ----------------
    diagnostics : list
        :class:`relrisk.dsl.Diagnostic` items, each with a position.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__('\n'.join(str(diag) for diag in self.diagnostics))
