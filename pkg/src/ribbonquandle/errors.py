"""Exception hierarchy.

The CLI maps these onto exit statuses: ``ParseError`` -> 3,
``CheckViolation`` -> 2, any other ``QuandleError`` -> 1.
"""


class QuandleError(Exception):
    """Base class for all domain errors raised by this package."""


class DomainError(QuandleError, ValueError):
    pass


class MalformedTableError(DomainError):
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class MalformedGroupError(DomainError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnboundGeneratorError(DomainError, KeyError):
    def __init__(self, symbol):
        super().__init__(f"generator {symbol!r} has no assigned value")
        self.symbol = symbol

    def __str__(self):
        return self.args[0]


class CyclicSubstitutionError(DomainError):
    pass


class StructuralError(DomainError):
    """A diagram or script is syntactically fine but inconsistent."""


class ScriptError(StructuralError):
    def __init__(self, message, event_index=None, label=None):
        super().__init__(message)
        self.event_index = event_index
        self.label = label


class ParseError(QuandleError, ValueError):
    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class CheckViolation(QuandleError):
    """A checked consequence failed; carries the offending data."""


class WitnessMapError(CheckViolation):
    def __init__(self, message, relation=None, target=None):
        super().__init__(message)
        self.relation = relation
        self.target = target
