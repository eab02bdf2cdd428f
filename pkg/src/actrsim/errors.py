"""Exception hierarchy shared by all modules."""


class ActrError(Exception):
    """Base class for every error raised by actrsim."""


class DanglingReferenceError(ActrError):
    """A slot refers to a chunk id that does not exist."""


class OrderingError(ActrError):
    """A usage or fire event was recorded out of time order."""


class DomainError(ActrError, ValueError):
    """A numeric argument lies outside the function's domain."""


class NoMatchError(ActrError):
    """Conflict resolution was asked to choose among zero matches."""


class GoalStackError(ActrError):
    """Pop on an empty goal stack."""


class ActionError(ActrError):
    """An action template could not be instantiated or executed."""


class EpisodeError(ActrError):
    """A trace does not contain a complete goal episode."""


class CompositionError(ActrError):
    """Two productions cannot be chained into one."""


class TraceFormatError(ActrError):
    """A serialized trace line could not be parsed."""


class ModelError(ActrError):
    """Syntax or validation error in a model file, with its position."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        if self.column is None:
            return f"line {self.line}: {self.message}"
        return f"line {self.line}, column {self.column}: {self.message}"
