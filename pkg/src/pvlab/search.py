"""Brute-force morphism enumeration and seeded random objects."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .connectives import DEFAULT_CAPS, CapacityConfig, function_space, lollipop
from .core import DEFAULT_SEARCH_CAP, PvMorphism, PvObject, check_positions, make_object
from .elements import Atom
from .errors import CapacityExceeded, ImplicationViolated


@dataclass(frozen=True)
class GenParams:
    max_questions: int = 3
    max_answers: int = 3
    relation_density: Fraction = Fraction(1, 2)
    allow_empty: bool = True
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "relation_density", Fraction(self.relation_density))
        if not 0 <= self.relation_density <= 1:
            raise ValueError("relation_density must lie in [0, 1]")
        if self.max_questions < 0 or self.max_answers < 0:
            raise ValueError("carrier bounds must be non-negative")


def random_object(params: GenParams) -> PvObject:
    rng = random.Random(params.seed)
    low = 0 if params.allow_empty else 1
    nq = rng.randint(min(low, params.max_questions), params.max_questions)
    na = rng.randint(min(low, params.max_answers), params.max_answers)
    qs = [Atom(f"q{i}") for i in range(nq)]
    ans = [Atom(f"a{j}") for j in range(na)]
    density = params.relation_density
    pairs = [(x, y) for x in qs for y in ans if rng.random() < density]
    return make_object(qs, ans, pairs)


def random_objects(count: int, seed: int, **kw) -> list[PvObject]:
    """``count`` objects drawn with consecutive sub-seeds of ``seed``."""
    rng = random.Random(seed)
    return [random_object(GenParams(seed=rng.getrandbits(32), **kw)) for _ in range(count)]


def candidate_count(a: PvObject, b: PvObject) -> int:
    nqa, naa = a.shape
    nqb, nab = b.shape
    return nqa ** nqb * nab ** naa


def _iter_morphisms(a: PvObject, b: PvObject, max_search: int):
    n = candidate_count(a, b)
    if n > max_search:
        raise CapacityExceeded(n, max_search, "morphism search")
    nqa, naa = a.shape
    nqb, nab = b.shape
    for minus in itertools.product(range(nqa), repeat=nqb):
        m = np.array(minus, dtype=np.intp)
        need = a.relation[m, :]                       # [b, p]: premise binds
        # allowed[p, y]: every b whose premise binds at p is answered by y
        allowed = ~(need.T[:, :, None] & ~b.relation[None, :, :]).any(axis=1)
        choices = [np.flatnonzero(allowed[p]).tolist() for p in range(naa)]
        for plus in itertools.product(*choices):
            yield PvMorphism(a, b, m, np.array(plus, dtype=np.intp))


def find_morphisms(a: PvObject, b: PvObject, limit: int | None = None,
                   max_search: int = DEFAULT_SEARCH_CAP) -> list[PvMorphism]:
    """All valid morphisms ``a -> b``: minus maps in lexicographic order of
    their graphs, then plus maps likewise."""
    return list(itertools.islice(_iter_morphisms(a, b, max_search), limit))


def exists_morphism(a: PvObject, b: PvObject, max_search: int = DEFAULT_SEARCH_CAP) -> bool:
    return next(_iter_morphisms(a, b, max_search), None) is not None


def solution_to_morphism(a: PvObject, b: PvObject, index: int,
                         caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """Read the answer at ``index`` of ``lollipop(a, b)`` as a morphism.

    The answer (f, g) has f: B- -> A- and g: A+ -> B+; these become the
    minus and plus maps verbatim.
    """
    _, F = function_space(b.questions, a.questions, caps)
    _, G = function_space(a.answers, b.answers, caps)
    fi, gi = divmod(index, len(G))
    return check_positions(a, b, F[fi], G[gi])


def morphism_solution_correspondence(a: PvObject, b: PvObject,
                                     caps: CapacityConfig = DEFAULT_CAPS,
                                     max_search: int = DEFAULT_SEARCH_CAP) -> bool:
    imp = lollipop(a, b, caps)
    sols = np.flatnonzero(imp.relation.all(axis=0))
    try:
        translated = [solution_to_morphism(a, b, int(k), caps) for k in sols]
    except ImplicationViolated:
        return False
    found = find_morphisms(a, b, max_search=max_search)
    return len(set(translated)) == len(translated) and set(translated) == set(found)
