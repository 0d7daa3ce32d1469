"""The standard small objects used throughout tests, docs and the CLI."""

from .connectives import UnitKind, unit
from .core import make_object
from .elements import Atom

q, a = Atom("q"), Atom("a")
q0, q1, a0, a1 = Atom("q0"), Atom("q1"), Atom("a0"), Atom("a1")

EMPTY = make_object([], [], [])
ONE = unit(UnitKind.ONE)
BOT = unit(UnitKind.BOT)
TOP = unit(UnitKind.TOP)
ZERO = unit(UnitKind.ZERO)
POINT = make_object([q], [a], [(q, a)])
NOANS = make_object([q], [a], [])
EQ2 = make_object([q0, q1], [a0, a1], [(q0, a0), (q1, a1)])
CHAOS2 = make_object([q0, q1], [a0, a1], [(x, y) for x in (q0, q1) for y in (a0, a1)])
# one question and no answers at all; differs from ZERO only in naming
QONLY = make_object([q], [], [])

STANDARD = {
    "EMPTY": EMPTY,
    "ONE": ONE,
    "BOT": BOT,
    "TOP": TOP,
    "ZERO": ZERO,
    "POINT": POINT,
    "NOANS": NOANS,
    "EQ2": EQ2,
    "CHAOS2": CHAOS2,
}
