"""Three-colouring and CNF satisfiability as objects, and the standard
encoding between them as a morphism.

Graphs on ``n`` vertices are atoms naming their edge set (``E[01,12]``).
A CNF is a ``Tuple`` of clauses, each clause a ``Tuple`` of literals, with
``InL(x)`` for a positive and ``InR(x)`` for a negated variable.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from .connectives import DEFAULT_CAPS, CapacityConfig, encode_rows, function_space
from .core import PvMorphism, PvObject, check_positions
from .elements import Atom, ElementSet, InL, InR, Tuple

COLOURS = ElementSet([Atom("c0"), Atom("c1"), Atom("c2")])
FALSE, TRUE = Atom("false"), Atom("true")
BOOLS = ElementSet([FALSE, TRUE])

Edge = tuple[int, int]
Literal = tuple[str, bool]


def vertices(n: int) -> ElementSet:
    if not 1 <= n <= 9:
        raise ValueError("vertex count must lie in 1..9")
    return ElementSet(Atom(f"v{i}") for i in range(n))


def all_edges(n: int) -> list[Edge]:
    return list(itertools.combinations(range(n), 2))


def graph_atom(edges: Iterable[Edge]) -> Atom:
    es = sorted((min(e), max(e)) for e in edges)
    return Atom("E[" + ",".join(f"{i}{j}" for i, j in es) + "]")


def graphs(n: int) -> list[list[Edge]]:
    """Every simple graph on ``n`` labelled vertices, as sorted edge lists."""
    es = all_edges(n)
    return [[e for k, e in enumerate(es) if mask >> k & 1] for mask in range(1 << len(es))]


def coloring_object(n: int, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Questions: graphs on n vertices.  Answers: maps vertex -> colour.
    Correct when the colouring is proper."""
    answers, table = function_space(vertices(n), COLOURS, caps)
    gs = graphs(n)
    questions = ElementSet(graph_atom(g) for g in gs)
    rel = np.ones((len(gs), len(answers)), dtype=bool)
    for g in gs:
        row = rel[questions.index(graph_atom(g))]
        for i, j in g:
            row &= table[:, i] != table[:, j]
    return PvObject(questions, answers, rel)


def variable(v: int, c: int) -> str:
    return f"x{v}_{c}"


def variables(n: int) -> ElementSet:
    return ElementSet(Atom(variable(v, c)) for v in range(n) for c in range(3))


def cnf_element(clauses: Iterable[Iterable[Literal]]) -> Tuple:
    lit = lambda name, pos: InL(Atom(name)) if pos else InR(Atom(name))  # noqa: E731
    cls = {Tuple(tuple(sorted({lit(*l) for l in clause}))) for clause in clauses}
    return Tuple(tuple(sorted(cls)))


def encode_coloring(n: int, edges: Iterable[Edge]) -> list[list[Literal]]:
    """The textbook reduction: each vertex gets exactly one colour and
    adjacent vertices never share one."""
    cnf = []
    for v in range(n):
        cnf.append([(variable(v, c), True) for c in range(3)])
        for c, d in itertools.combinations(range(3), 2):
            cnf.append([(variable(v, c), False), (variable(v, d), False)])
    for i, j in edges:
        for c in range(3):
            cnf.append([(variable(i, c), False), (variable(j, c), False)])
    return cnf


def sat_object(n: int, formulas: Sequence[Sequence[Sequence[Literal]]],
               caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Questions: the given CNFs over the 3n colour variables.  Answers:
    all truth assignments.  Correct when the assignment satisfies the CNF."""
    vs = variables(n)
    answers, table = function_space(vs, BOOLS, caps)
    truth = table == BOOLS.index(TRUE)
    col = vs.index_map()
    cnfs = {}
    for f in formulas:
        sat = np.ones(len(answers), dtype=bool)
        for clause in f:
            hit = np.zeros(len(answers), dtype=bool)
            for name, pos in clause:
                x = truth[:, col[Atom(name)]]
                hit |= x if pos else ~x
            sat &= hit
        cnfs[cnf_element(f)] = sat
    questions = ElementSet(cnfs)
    rel = np.array([cnfs[q] for q in questions], dtype=bool).reshape(len(questions), len(answers))
    return PvObject(questions, answers, rel)


def decode_assignment(n: int, truth_row) -> list[int]:
    """Colour of each vertex: the least colour whose variable is true, else c0."""
    out = []
    for v in range(n):
        bits = truth_row[3 * v:3 * v + 3]
        out.append(next((c for c in range(3) if bits[c]), 0))
    return out


def coloring_to_sat(n: int, extra_formulas: Sequence[Sequence[Sequence[Literal]]] = (),
                    caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """The encoding as a validated morphism ``sat -> coloring``: graphs are
    sent to their CNFs and satisfying assignments decoded into colourings.
    ``extra_formulas`` join the SAT questions without being reached."""
    gs = graphs(n)
    sat = sat_object(n, [encode_coloring(n, g) for g in gs] + list(extra_formulas), caps)
    col = coloring_object(n, caps)
    minus = np.empty(len(gs), dtype=np.intp)
    for g in gs:
        minus[col.questions.index(graph_atom(g))] = sat.questions.index(cnf_element(encode_coloring(n, g)))
    # variable order x{v}_{c} sorts as v-major for n <= 9, matching decode_assignment
    _, table = function_space(variables(n), BOOLS, caps)
    truth = table == BOOLS.index(TRUE)
    colours = np.array([decode_assignment(n, row) for row in truth], dtype=np.intp).reshape(len(truth), n)
    plus = encode_rows(colours, 3)
    return check_positions(sat, col, minus, plus)


def satisfiable(n: int, cnf: Sequence[Sequence[Literal]]) -> bool:
    return bool(sat_object(n, [cnf]).relation.any())


def colourable(n: int, edges: Iterable[Edge]) -> bool:
    col = coloring_object(n)
    return bool(col.relation[col.questions.index(graph_atom(edges))].any())
