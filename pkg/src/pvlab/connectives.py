"""Object- and morphism-level connectives.

Every constructor materializes its carriers eagerly.  Products are built in
lexicographic order and function spaces in lexicographic order of their
output sequences, which coincides with the canonical element order, so the
carriers never need re-sorting and relation matrices are assembled with
numpy index arithmetic.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .core import PvMorphism, PvObject, check_positions
from .elements import UNIT, ElementSet, FunGraph, InL, InR, Pair, Tuple
from .errors import ArityMismatch, CapacityExceeded, ObjectMismatch


@dataclass(frozen=True)
class CapacityConfig:
    max_elements: int = 100_000

    def __post_init__(self):
        if self.max_elements < 1:
            raise ValueError("max_elements must be at least 1")

    def check(self, n: int, what: str = "carrier"):
        if n > self.max_elements:
            raise CapacityExceeded(n, self.max_elements, what)


DEFAULT_CAPS = CapacityConfig()


class UnitKind(enum.Enum):
    ONE = "1"
    BOT = "bot"
    TOP = "top"
    ZERO = "0"


@dataclass(frozen=True)
class DepSpec:
    """Which answer sets feed which question-producing function.

    ``deps[i]`` is the 1-based index set D(i+1).  Self-membership is allowed.
    """

    arity: int
    deps: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "deps", tuple(frozenset(d) for d in self.deps))
        if self.arity < 1:
            raise ArityMismatch("generalized connectives need arity >= 1")
        if len(self.deps) != self.arity:
            raise ArityMismatch(f"expected {self.arity} dependency sets, got {len(self.deps)}")
        for d in self.deps:
            if not d <= set(range(1, self.arity + 1)):
                raise ValueError(f"dependency set {sorted(d)} escapes 1..{self.arity}")

    @classmethod
    def of(cls, *deps: Iterable[int]) -> "DepSpec":
        return cls(len(deps), tuple(frozenset(d) for d in deps))

    def sorted_deps(self, i: int) -> list[int]:
        """0-based positions feeding component ``i`` (0-based), ascending."""
        return [j - 1 for j in sorted(self.deps[i])]


# -- carrier helpers ----------------------------------------------------------

def _pairs(xs: ElementSet, ys: ElementSet, caps: CapacityConfig) -> ElementSet:
    caps.check(len(xs) * len(ys))
    return ElementSet.from_sorted([Pair(x, y) for x in xs for y in ys])


def _radix_table(n_rows: int, width: int, base: int) -> np.ndarray:
    """Row r lists the base-``base`` digits of r, most significant first."""
    idx = np.arange(n_rows, dtype=np.int64)
    powers = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers[None, :]) % max(base, 1)).astype(np.intp)


def encode_rows(table: np.ndarray, base: int) -> np.ndarray:
    """Inverse of ``_radix_table``: position of each output row in its function space."""
    width = table.shape[1]
    powers = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (table.astype(np.int64) @ powers).astype(np.intp)


@lru_cache(maxsize=512)
def _function_space(domain: ElementSet, codomain: ElementSet):
    d, c = len(domain), len(codomain)
    n = c ** d
    table = _radix_table(n, d, c)
    table.flags.writeable = False
    dom = domain.members
    cod = codomain.members
    funcs = [FunGraph(tuple(zip(dom, [cod[o] for o in row])), presorted=True) for row in table.tolist()]
    return ElementSet.from_sorted(funcs), table


def function_space(domain: ElementSet, codomain: ElementSet, caps: CapacityConfig = DEFAULT_CAPS):
    """All maps ``domain -> codomain`` and their output table.

    ``table[k, i]`` is the codomain position of the image of ``domain[i]``
    under the k-th function.  An empty domain gives the single empty graph.
    """
    caps.check(len(codomain) ** len(domain), "function space")
    return _function_space(domain, codomain)


def tuple_product(sets: Sequence[ElementSet], caps: CapacityConfig = DEFAULT_CAPS) -> ElementSet:
    total = 1
    for s in sets:
        total *= len(s)
    caps.check(total)
    return ElementSet.from_sorted([Tuple(t) for t in itertools.product(*(s.members for s in sets))])


def _digits(sizes: Sequence[int]) -> np.ndarray:
    """Mixed-radix digit table of every index in ``prod(sizes)``."""
    total = int(np.prod(sizes, dtype=np.int64)) if sizes else 1
    out = np.zeros((total, len(sizes)), dtype=np.intp)
    idx = np.arange(total, dtype=np.int64)
    for k in range(len(sizes) - 1, -1, -1):
        if sizes[k]:
            out[:, k] = idx % sizes[k]
            idx //= sizes[k]
    return out


def _mixed_encode(digits: np.ndarray, sizes: Sequence[int]) -> np.ndarray:
    code = np.zeros(digits.shape[0], dtype=np.int64)
    for k, s in enumerate(sizes):
        code = code * s + digits[:, k]
    return code.astype(np.intp)


# -- units and negation --------------------------------------------------------

_SINGLE = ElementSet.from_sorted([UNIT])
_NONE = ElementSet.from_sorted([])


def unit(kind: UnitKind | str) -> PvObject:
    kind = UnitKind(kind) if not isinstance(kind, UnitKind) else kind
    if kind is UnitKind.ONE:
        return PvObject(_SINGLE, _SINGLE, [[True]])
    if kind is UnitKind.BOT:
        return PvObject(_SINGLE, _SINGLE, [[False]])
    if kind is UnitKind.TOP:
        return PvObject(_NONE, _SINGLE, np.zeros((0, 1), bool))
    return PvObject(_SINGLE, _NONE, np.zeros((1, 0), bool))


def neg(a: PvObject) -> PvObject:
    return PvObject(a.answers, a.questions, ~a.relation.T)


def neg_m(f: PvMorphism) -> PvMorphism:
    return PvMorphism(neg(f.target), neg(f.source), f.plus, f.minus)


# -- additives -------------------------------------------------------------------

def with_(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    nq = len(a.questions) + len(b.questions)
    caps.check(nq)
    qs = ElementSet.from_sorted([InL(x) for x in a.questions] + [InR(y) for y in b.questions])
    ans = _pairs(a.answers, b.answers, caps)
    na_a, nb_a = len(a.answers), len(b.answers)
    rel = np.vstack([np.repeat(a.relation, nb_a, axis=1),
                     np.tile(b.relation, (1, na_a))]).reshape(nq, na_a * nb_a)
    return PvObject(qs, ans, rel)


def plus_(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    na = len(a.answers) + len(b.answers)
    caps.check(na)
    qs = _pairs(a.questions, b.questions, caps)
    ans = ElementSet.from_sorted([InL(x) for x in a.answers] + [InR(y) for y in b.answers])
    nq_a, nq_b = len(a.questions), len(b.questions)
    rel = np.hstack([np.repeat(a.relation, nq_b, axis=0),
                     np.tile(b.relation, (nq_a, 1))]).reshape(nq_a * nq_b, na)
    return PvObject(qs, ans, rel)


def with_projections(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS):
    w = with_(a, b, caps)
    nqa, nqb = len(a.questions), len(b.questions)
    nb = len(b.answers)
    idx = np.arange(len(w.answers))
    first = PvMorphism(w, a, np.arange(nqa), idx // nb if nb else idx)
    second = PvMorphism(w, b, nqa + np.arange(nqb), idx % nb if nb else idx)
    return first, second


def with_pairing(f: PvMorphism, g: PvMorphism, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """The mediating morphism ``C -> A & B`` of ``f: C -> A`` and ``g: C -> B``."""
    if f.source != g.source:
        raise ObjectMismatch("pairing needs a common source")
    w = with_(f.target, g.target, caps)
    minus = np.concatenate([f.minus, g.minus])
    plus = f.plus * len(g.target.answers) + g.plus
    return check_positions(f.source, w, minus, plus)


def plus_injections(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS):
    s = plus_(a, b, caps)
    nqb = len(b.questions)
    idx = np.arange(len(s.questions))
    first = PvMorphism(a, s, idx // nqb if nqb else idx, np.arange(len(a.answers)))
    second = PvMorphism(b, s, idx % nqb if nqb else idx, len(a.answers) + np.arange(len(b.answers)))
    return first, second


def plus_copairing(f: PvMorphism, g: PvMorphism, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """The mediating morphism ``A + B -> C`` of ``f: A -> C`` and ``g: B -> C``."""
    if f.target != g.target:
        raise ObjectMismatch("copairing needs a common target")
    s = plus_(f.source, g.source, caps)
    minus = f.minus * len(g.source.questions) + g.minus
    plus = np.concatenate([f.plus, g.plus])
    return check_positions(s, f.target, minus, plus)


# -- multiplicatives ---------------------------------------------------------------

def ptensor(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    qs = _pairs(a.questions, b.questions, caps)
    ans = _pairs(a.answers, b.answers, caps)
    rel = a.relation[:, None, :, None] & b.relation[None, :, None, :]
    return PvObject(qs, ans, rel.reshape(len(qs), len(ans)))


def ppar(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    qs = _pairs(a.questions, b.questions, caps)
    ans = _pairs(a.answers, b.answers, caps)
    rel = a.relation[:, None, :, None] | b.relation[None, :, None, :]
    return PvObject(qs, ans, rel.reshape(len(qs), len(ans)))


def par(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Answers are pairs (f, g), f: B- -> A+, g: A- -> B+; correct at (x, y)
    iff A(x, f(y)) or B(y, g(x))."""
    qs = _pairs(a.questions, b.questions, caps)
    fset, F = function_space(b.questions, a.answers, caps)
    gset, G = function_space(a.questions, b.answers, caps)
    ans = _pairs(fset, gset, caps)
    left = a.relation[:, F].transpose(0, 2, 1)      # [x, y, f]
    right = b.relation[:, G].transpose(2, 0, 1)     # [x, y, g]
    rel = left[:, :, :, None] | right[:, :, None, :]
    return PvObject(qs, ans, rel.reshape(len(qs), len(ans)))


def tensor(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Questions are pairs (f, g), f: B+ -> A-, g: A+ -> B-; the answer (x, y)
    is correct iff A(f(y), x) and B(g(x), y)."""
    fset, F = function_space(b.answers, a.questions, caps)
    gset, G = function_space(a.answers, b.questions, caps)
    qs = _pairs(fset, gset, caps)
    ans = _pairs(a.answers, b.answers, caps)
    left = a.relation[F].transpose(0, 2, 1)          # [f, x, y]
    right = b.relation[G]                            # [g, x, y]
    rel = left[:, None] & right[None, :]
    return PvObject(qs, ans, rel.reshape(len(qs), len(ans)))


def lollipop(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Linear implication, built directly: questions (x, y) in A+ x B-,
    answers (f, g) with f: B- -> A-, g: A+ -> B+."""
    qs = _pairs(a.answers, b.questions, caps)
    fset, F = function_space(b.questions, a.questions, caps)
    gset, G = function_space(a.answers, b.answers, caps)
    ans = _pairs(fset, gset, caps)
    premise = a.relation[F].transpose(2, 1, 0)       # [x, y, f] = A(f(y), x)
    conclusion = b.relation[:, G].transpose(2, 0, 1)  # [x, y, g] = B(y, g(x))
    rel = ~premise[:, :, :, None] | conclusion[:, :, None, :]
    return PvObject(qs, ans, rel.reshape(len(qs), len(ans)))


def seqcomp(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Ask in A, then pick the B-question from A's answer."""
    fset, F = function_space(a.answers, b.questions, caps)
    qs = _pairs(a.questions, fset, caps)
    ans = _pairs(a.answers, b.answers, caps)
    second = b.relation[F]                           # [f, p, q] = B(f(p), q)
    rel = a.relation[:, None, :, None] & second[None]
    return PvObject(qs, ans, rel.reshape(len(qs), len(ans)))


def kappa(a: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    fset, F = function_space(a.answers, a.questions, caps)
    rel = a.relation[F, np.arange(len(a.answers))[None, :]]
    return PvObject(fset, a.answers, rel.reshape(len(fset), len(a.answers)))


def alpha(a: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    fset, F = function_space(a.questions, a.answers, caps)
    rel = a.relation[np.arange(len(a.questions))[:, None], F.T]
    return PvObject(a.questions, fset, rel.reshape(len(a.questions), len(fset)))


def bang(a: PvObject) -> PvObject:
    return PvObject(_SINGLE, a.answers, a.relation.all(axis=0)[None, :])


def quest(a: PvObject) -> PvObject:
    return PvObject(a.questions, _SINGLE, a.relation.any(axis=1)[:, None])


# -- generalized multiplicatives -------------------------------------------------

def _check_arity(objs, spec: DepSpec):
    if len(objs) != spec.arity:
        raise ArityMismatch(f"spec has arity {spec.arity} but {len(objs)} objects were given")


def genconj(objs: Sequence[PvObject], spec: DepSpec, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    _check_arity(objs, spec)
    n = len(objs)
    ans_sizes = [len(o.answers) for o in objs]
    answers = tuple_product([o.answers for o in objs], caps)
    digits = _digits(ans_sizes)
    fsets, parts = [], []
    for i in range(n):
        dep = spec.sorted_deps(i)
        domain = tuple_product([objs[j].answers for j in dep], caps)
        fset, F = function_space(domain, objs[i].questions, caps)
        fsets.append(fset)
        dom_idx = _mixed_encode(digits[:, dep], [ans_sizes[j] for j in dep])
        asked = F[:, dom_idx]                        # [f, answer] -> question of A_i
        parts.append(objs[i].relation[asked, digits[:, i][None, :]])
    questions = tuple_product(fsets, caps)
    rel = np.ones((1, len(answers)), dtype=bool)
    for part in parts:
        rel = (rel[:, None, :] & part[None, :, :]).reshape(len(rel) * len(part), len(answers))
    return PvObject(questions, answers, rel.reshape(len(questions), len(answers)))


def gendisj(objs: Sequence[PvObject], spec: DepSpec, caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Answers are tuples of functions g_i from the D(i)-indexed questions
    to A_i's answers; correct iff some component is answered correctly."""
    _check_arity(objs, spec)
    n = len(objs)
    q_sizes = [len(o.questions) for o in objs]
    questions = tuple_product([o.questions for o in objs], caps)
    digits = _digits(q_sizes)
    gsets, parts = [], []
    for i in range(n):
        dep = spec.sorted_deps(i)
        domain = tuple_product([objs[j].questions for j in dep], caps)
        gset, G = function_space(domain, objs[i].answers, caps)
        gsets.append(gset)
        dom_idx = _mixed_encode(digits[:, dep], [q_sizes[j] for j in dep])
        given = G[:, dom_idx].T                      # [question, g] -> answer of A_i
        parts.append(objs[i].relation[digits[:, i][:, None], given])
    answers = tuple_product(gsets, caps)
    nq = len(questions)
    rel = np.zeros((nq, 1), dtype=bool)
    for part in parts:
        rel = (rel[:, :, None] | part[:, None, :]).reshape(nq, rel.shape[1] * part.shape[1])
    return PvObject(questions, answers, rel.reshape(nq, len(answers)))


# -- functorial actions ------------------------------------------------------------

def par_m(f: PvMorphism, g: PvMorphism, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """``f ⅋ g : A ⅋ C -> B ⅋ D`` for ``f: A -> B`` and ``g: C -> D``."""
    A, B, C, D = f.source, f.target, g.source, g.target
    src, dst = par(A, C, caps), par(B, D, caps)
    minus = (f.minus[:, None] * len(C.questions) + g.minus[None, :]).reshape(-1)
    _, H = function_space(C.questions, A.answers, caps)
    _, K = function_space(A.questions, C.answers, caps)
    h_new = encode_rows(f.plus[H[:, g.minus]], len(B.answers))
    k_new = encode_rows(g.plus[K[:, f.minus]], len(D.answers))
    n_k = len(D.answers) ** len(B.questions)
    plus = (h_new[:, None] * n_k + k_new[None, :]).reshape(-1)
    return check_positions(src, dst, minus, plus)


def alpha_m(f: PvMorphism, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """``alpha f : alpha A -> alpha B``; an answer h becomes f+ . h . f-."""
    A, B = f.source, f.target
    _, H = function_space(A.questions, A.answers, caps)
    plus = encode_rows(f.plus[H[:, f.minus]], len(B.answers))
    return check_positions(alpha(A, caps), alpha(B, caps), f.minus, plus)
