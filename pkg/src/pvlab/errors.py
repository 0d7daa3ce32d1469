"""Exception hierarchy shared by every pvlab module."""


class PvError(Exception):
    """Base class for all library errors."""


class PairOutOfCarrier(PvError):
    pass


class NotInCarrier(PvError):
    pass


class NotTotal(PvError):
    pass


class RangeEscape(PvError):
    pass


class ImplicationViolated(PvError):
    """A map pair breaks the morphism contract.

    ``question`` and ``answer`` hold the least violating pair in canonical
    order (target question, source answer).
    """

    def __init__(self, question, answer, message=None):
        self.question = question
        self.answer = answer
        super().__init__(message or f"implication violated at ({question}, {answer})")


class ObjectMismatch(PvError):
    pass


class CapacityExceeded(PvError):
    def __init__(self, requested, limit, what="carrier"):
        self.requested = requested
        self.limit = limit
        super().__init__(f"{what} size {requested} exceeds limit {limit}")


class UnboundAtom(PvError):
    pass


class ArityMismatch(PvError):
    pass


class UnknownFixture(PvError):
    pass


class PreconditionUnmet(PvError):
    pass


class ParseError(PvError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class MixedOperatorChain(ParseError):
    pass


class DuplicateObjectName(ParseError):
    pass
