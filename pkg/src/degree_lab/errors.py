"""Exception hierarchy shared by every module of the package."""


class DegreeLabError(Exception):
    """Base class for all errors raised by degree_lab."""


class TypingError(DegreeLabError):
    pass


class UnboundVariable(TypingError):
    pass


class ArityMismatch(TypingError):
    """An application whose function part does not have an arrow type."""


class DomainMismatch(TypingError):
    """An argument whose type differs from the domain of the function."""


class AnnotationMismatch(TypingError):
    """A variable annotation that disagrees with the environment or binder."""


class TypeMismatch(TypingError):
    """A substitution whose replacement has the wrong type."""


class Untypable(TypingError):
    pass


class NotPure(DegreeLabError):
    """A pure lambda-term was required but the term contains wrappers."""


class InvalidPosition(DegreeLabError):
    pass


class MarkNotRedex(DegreeLabError):
    pass


class SourceMismatch(DegreeLabError):
    pass


class MixedDegrees(DegreeLabError):
    pass


class DegreeZero(DegreeLabError):
    pass


class NormalForm(DegreeLabError):
    """A strategy was asked for a redex in a term that has none."""


class BudgetExceeded(DegreeLabError):
    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class TermSyntaxError(DegreeLabError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class GenerationExhausted(DegreeLabError):
    pass
