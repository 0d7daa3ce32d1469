"""Structured element terms and canonically ordered finite sets.

Every carrier member is one of seven term shapes.  Terms are immutable,
hashable and totally ordered: first by constructor tag
(Atom < UnitElem < InL < InR < Pair < Tuple < FunGraph), then by contents.
The sort key of each term is computed once at construction, so products and
function spaces with tens of thousands of members stay cheap to sort and
compare.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

_ATOM, _UNIT, _INL, _INR, _PAIR, _TUPLE, _FUN = range(7)


class Element:
    __slots__ = ("_key", "_hash")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Element):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __gt__(self, other):
        return self._key > other._key

    def __ge__(self, other):
        return self._key >= other._key

    def __hash__(self):
        return self._hash

    @property
    def sort_key(self):
        return self._key

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


class Atom(Element):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self._key = (_ATOM, name)
        self._hash = hash(self._key)

    def __str__(self):
        return self.name


class UnitElem(Element):
    """The distinguished point of a one-element set."""

    __slots__ = ()

    def __init__(self):
        self._key = (_UNIT,)
        self._hash = hash(self._key)

    def __str__(self):
        return "*"


UNIT = UnitElem()


class InL(Element):
    __slots__ = ("inner",)

    def __init__(self, inner: Element):
        self.inner = inner
        self._key = (_INL, inner._key)
        self._hash = hash((_INL, inner._hash))

    def __str__(self):
        return f"inl({self.inner})"


class InR(Element):
    __slots__ = ("inner",)

    def __init__(self, inner: Element):
        self.inner = inner
        self._key = (_INR, inner._key)
        self._hash = hash((_INR, inner._hash))

    def __str__(self):
        return f"inr({self.inner})"


class Pair(Element):
    __slots__ = ("left", "right")

    def __init__(self, left: Element, right: Element):
        self.left = left
        self.right = right
        self._key = (_PAIR, left._key, right._key)
        self._hash = hash((_PAIR, left._hash, right._hash))

    def __str__(self):
        return f"({self.left}, {self.right})"


class Tuple(Element):
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Element]):
        self.items = tuple(items)
        self._key = (_TUPLE, tuple(e._key for e in self.items))
        self._hash = hash((_TUPLE, tuple(e._hash for e in self.items)))

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __str__(self):
        return "<" + ", ".join(map(str, self.items)) + ">"


class FunGraph(Element):
    """Explicit graph of a finite function, inputs in canonical order."""

    __slots__ = ("graph", "_lookup")

    def __init__(self, graph: Iterable[tuple[Element, Element]], *, presorted=False):
        graph = tuple(graph)
        if not presorted:
            graph = tuple(sorted(graph, key=lambda io: io[0]._key))
            for (x, _), (y, _) in zip(graph, graph[1:]):
                if x == y:
                    raise ValueError(f"FunGraph has duplicate input {x}")
        self.graph = graph
        self._lookup = None
        self._key = (_FUN, tuple((i._key, o._key) for i, o in graph))
        self._hash = hash((_FUN, tuple((i._hash, o._hash) for i, o in graph)))

    @classmethod
    def from_dict(cls, mapping) -> "FunGraph":
        return cls(mapping.items())

    @property
    def inputs(self) -> tuple:
        return tuple(i for i, _ in self.graph)

    @property
    def outputs(self) -> tuple:
        return tuple(o for _, o in self.graph)

    def as_dict(self) -> dict:
        if self._lookup is None:
            self._lookup = dict(self.graph)
        return self._lookup

    def __call__(self, x: Element) -> Element:
        return self.as_dict()[x]

    def __len__(self):
        return len(self.graph)

    def __str__(self):
        return "{" + ", ".join(f"{i}->{o}" for i, o in self.graph) + "}"


def atoms(*names: str) -> list[Atom]:
    return [Atom(n) for n in names]


class ElementSet(Sequence):
    """Sorted, duplicate-free tuple of elements with O(1) position lookup."""

    __slots__ = ("members", "_index")

    def __init__(self, members: Iterable[Element] = ()):
        self.members = tuple(sorted(set(members), key=lambda e: e._key))
        self._index = None

    @classmethod
    def from_sorted(cls, members: Iterable[Element]) -> "ElementSet":
        """Trust the caller that ``members`` is already canonical."""
        s = cls.__new__(cls)
        s.members = tuple(members)
        s._index = None
        return s

    def index_map(self) -> dict:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.members)}
        return self._index

    def index(self, e, start=0, stop=None) -> int:
        try:
            return self.index_map()[e]
        except KeyError:
            raise ValueError(f"{e} not in set") from None

    def __contains__(self, e) -> bool:
        return e in self.index_map()

    def __getitem__(self, i):
        return self.members[i]

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, ElementSet):
            return NotImplemented
        return self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def is_canonical(self) -> bool:
        keys = [e._key for e in self.members]
        return all(a < b for a, b in zip(keys, keys[1:]))

    def __repr__(self):
        return "{" + ", ".join(map(str, self.members)) + "}"

