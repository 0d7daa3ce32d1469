"""Objects and morphisms of the question/answer category.

An object is a triple (questions, answers, relation) where the relation is
kept as a read-only boolean matrix indexed by the canonical positions of
the two carriers.  A morphism A -> B carries a backward map on questions
(B-questions to A-questions) and a forward map on answers (A-answers to
B-answers), both stored as integer position arrays.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .elements import Element, ElementSet
from .errors import (
    CapacityExceeded,
    ImplicationViolated,
    NotInCarrier,
    NotTotal,
    ObjectMismatch,
    PairOutOfCarrier,
    RangeEscape,
)

DEFAULT_SEARCH_CAP = 1_000_000


def _frozen(arr, dtype):
    arr = np.array(arr, dtype=dtype)
    arr.flags.writeable = False
    return arr


class PvObject:
    __slots__ = ("questions", "answers", "relation", "_hash")

    def __init__(self, questions: ElementSet, answers: ElementSet, relation):
        rel = _frozen(relation, bool)
        if rel.shape != (len(questions), len(answers)):
            rel = rel.reshape(len(questions), len(answers))
        self.questions = questions
        self.answers = answers
        self.relation = rel
        self._hash = None

    def is_correct(self, q: Element, a: Element) -> bool:
        qi = self.questions.index_map().get(q)
        ai = self.answers.index_map().get(a)
        if qi is None:
            raise NotInCarrier(f"{q} is not a question")
        if ai is None:
            raise NotInCarrier(f"{a} is not an answer")
        return bool(self.relation[qi, ai])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.questions), len(self.answers)

    def pairs(self) -> list[tuple[Element, Element]]:
        return [(self.questions[i], self.answers[j]) for i, j in np.argwhere(self.relation)]

    def relation_count(self) -> int:
        return int(self.relation.sum())

    def __eq__(self, other):
        return object_equal(self, other) if isinstance(other, PvObject) else NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.questions, self.answers, self.relation.tobytes()))
        return self._hash

    def __repr__(self):
        nq, na = self.shape
        return f"PvObject({nq} questions, {na} answers, {self.relation_count()} pairs)"


def make_object(questions: Iterable[Element], answers: Iterable[Element],
                pairs: Iterable[tuple[Element, Element]]) -> PvObject:
    qs, ans = ElementSet(questions), ElementSet(answers)
    qidx, aidx = qs.index_map(), ans.index_map()
    rel = np.zeros((len(qs), len(ans)), dtype=bool)
    for q, a in pairs:
        if q not in qidx or a not in aidx:
            raise PairOutOfCarrier(f"pair ({q}, {a}) mentions an element outside the carriers")
        rel[qidx[q], aidx[a]] = True
    return PvObject(qs, ans, rel)


def is_correct(obj: PvObject, q: Element, a: Element) -> bool:
    return obj.is_correct(q, a)


def object_equal(a: PvObject, b: PvObject) -> bool:
    if a is b:
        return True
    return (a.questions == b.questions and a.answers == b.answers
            and np.array_equal(a.relation, b.relation))


class PvMorphism:
    """A validated morphism ``source -> target``.

    ``minus[i]`` is the source-question position assigned to target
    question ``i``; ``plus[j]`` is the target-answer position assigned to
    source answer ``j``.
    """

    __slots__ = ("source", "target", "minus", "plus")

    def __init__(self, source: PvObject, target: PvObject, minus, plus):
        self.source = source
        self.target = target
        self.minus = _frozen(minus, np.intp).reshape(len(target.questions))
        self.plus = _frozen(plus, np.intp).reshape(len(source.answers))

    @property
    def minus_map(self) -> dict:
        qs = self.source.questions
        return {b: qs[i] for b, i in zip(self.target.questions, self.minus)}

    @property
    def plus_map(self) -> dict:
        ans = self.target.answers
        return {a: ans[j] for a, j in zip(self.source.answers, self.plus)}

    def __eq__(self, other):
        if not isinstance(other, PvMorphism):
            return NotImplemented
        return (object_equal(self.source, other.source)
                and object_equal(self.target, other.target)
                and np.array_equal(self.minus, other.minus)
                and np.array_equal(self.plus, other.plus))

    def __hash__(self):
        return hash((self.source, self.target, self.minus.tobytes(), self.plus.tobytes()))

    def __repr__(self):
        return f"PvMorphism(minus={list(self.minus)}, plus={list(self.plus)})"


def first_violation(source: PvObject, target: PvObject, minus, plus):
    """Least (target question, source answer) position pair breaking the
    implication, or ``None``."""
    minus = np.asarray(minus, dtype=np.intp)
    plus = np.asarray(plus, dtype=np.intp)
    bad = source.relation[minus, :] & ~target.relation[:, plus]
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return None
    return int(hits[0][0]), int(hits[0][1])


def check_positions(source: PvObject, target: PvObject, minus, plus) -> PvMorphism:
    """Validate position arrays and wrap them as a morphism."""
    minus = np.asarray(minus, dtype=np.intp)
    plus = np.asarray(plus, dtype=np.intp)
    if minus.shape != (len(target.questions),) or plus.shape != (len(source.answers),):
        raise NotTotal("map arrays do not match the carrier sizes")
    if minus.size and (minus.min() < 0 or minus.max() >= len(source.questions)):
        raise RangeEscape("minus map leaves the source questions")
    if plus.size and (plus.min() < 0 or plus.max() >= len(target.answers)):
        raise RangeEscape("plus map leaves the target answers")
    hit = first_violation(source, target, minus, plus)
    if hit is not None:
        b, a = hit
        raise ImplicationViolated(target.questions[b], source.answers[a])
    return PvMorphism(source, target, minus, plus)


def _to_positions(mapping: Mapping, domain: ElementSet, codomain: ElementSet, label: str):
    extra = [k for k in mapping if k not in domain]
    if extra:
        raise NotInCarrier(f"{label} map has keys outside its domain: {extra[0]}")
    out = np.empty(len(domain), dtype=np.intp)
    cod = codomain.index_map()
    for i, x in enumerate(domain):
        if x not in mapping:
            raise NotTotal(f"{label} map undefined at {x}")
        y = mapping[x]
        if y not in cod:
            raise RangeEscape(f"{label} map sends {x} to {y}, outside its codomain")
        out[i] = cod[y]
    return out


def validate_morphism(src: PvObject, dst: PvObject, minus: Mapping, plus: Mapping) -> PvMorphism:
    m = _to_positions(minus, dst.questions, src.questions, "minus")
    p = _to_positions(plus, src.answers, dst.answers, "plus")
    return check_positions(src, dst, m, p)


def identity(obj: PvObject) -> PvMorphism:
    return PvMorphism(obj, obj, np.arange(len(obj.questions)), np.arange(len(obj.answers)))


def compose(f: PvMorphism, g: PvMorphism) -> PvMorphism:
    """Diagrammatic composite: first ``f: A -> B`` then ``g: B -> C``."""
    if not object_equal(f.target, g.source):
        raise ObjectMismatch("target of the first morphism is not the source of the second")
    return PvMorphism(f.source, g.target, f.minus[g.minus], g.plus[f.plus])


# -- isomorphism search -------------------------------------------------------

def _relabel(*sigs):
    """Joint dense relabelling of several signature matrices."""
    stacked = np.concatenate(sigs, axis=0)
    if stacked.shape[0] == 0:
        return [np.zeros(0, dtype=np.intp) for _ in sigs]
    _, inv = np.unique(stacked, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    out, start = [], 0
    for s in sigs:
        out.append(inv[start:start + len(s)])
        start += len(s)
    return out


def _onehot(colors, n):
    m = np.zeros((len(colors), n), dtype=np.int64)
    m[np.arange(len(colors)), colors] = 1
    return m


def _histograms_match(x, y):
    return np.array_equal(np.bincount(x, minlength=1), np.bincount(y, minlength=1)) if len(x) else True


def _refine(Ma, Mb, ra, rb, ca, cb):
    """Colour refinement on the two bipartite graphs at once.

    Returns the stable colourings, or None as soon as the colour
    histograms of the two sides diverge.
    """
    Ma_i, Mb_i = Ma.astype(np.int64), Mb.astype(np.int64)
    n_colors = -1
    while True:
        ncc = int(max(ca.max(initial=-1), cb.max(initial=-1))) + 1
        ra, rb = _relabel(np.column_stack([ra, Ma_i @ _onehot(ca, ncc)]),
                          np.column_stack([rb, Mb_i @ _onehot(cb, ncc)]))
        if not _histograms_match(ra, rb):
            return None
        nrc = int(max(ra.max(initial=-1), rb.max(initial=-1))) + 1
        ca, cb = _relabel(np.column_stack([ca, Ma_i.T @ _onehot(ra, nrc)]),
                          np.column_stack([cb, Mb_i.T @ _onehot(rb, nrc)]))
        if not _histograms_match(ca, cb):
            return None
        total = len(np.unique(ra)) + len(np.unique(ca))
        if total == n_colors:
            return ra, rb, ca, cb
        n_colors = total


def _match_by_color(ca, cb):
    """Pair positions of equal colour in index order; result[i] = partner of a-position i."""
    out = np.empty(len(ca), dtype=np.intp)
    for color in np.unique(ca):
        out[np.flatnonzero(ca == color)] = np.flatnonzero(cb == color)
    return out


def _matrix_iso(Ma, Mb, cap):
    """Find row/column bijections r, c with Ma[i, k] == Mb[r[i], c[k]]."""
    nq, na = Ma.shape
    z = lambda n: np.zeros(n, dtype=np.intp)
    start = _refine(Ma, Mb, z(nq), z(nq), z(na), z(na))
    if start is None:
        return None
    nodes = [0]

    def search(ra, rb, ca, cb):
        nodes[0] += 1
        if nodes[0] > cap:
            raise CapacityExceeded(nodes[0], cap, "isomorphism search")
        counts = np.bincount(ra)
        multi = np.flatnonzero(counts > 1)
        if len(multi) == 0:
            rows = _match_by_color(ra, rb)
            cols = _match_by_color(ca, cb)
            if np.array_equal(Mb[np.ix_(rows, cols)], Ma):
                return rows, cols
            return None
        color = multi[np.argmin(counts[multi])]
        r = int(np.flatnonzero(ra == color)[0])
        fresh = int(max(ra.max(), rb.max())) + 1
        for s in np.flatnonzero(rb == color):
            ra2, rb2 = ra.copy(), rb.copy()
            ra2[r] = fresh
            rb2[s] = fresh
            refined = _refine(Ma, Mb, ra2, rb2, ca, cb)
            if refined is None:
                continue
            found = search(*refined)
            if found is not None:
                return found
        return None

    return search(*start)


def find_isomorphism(a: PvObject, b: PvObject, max_search: int = DEFAULT_SEARCH_CAP):
    """Mutually inverse morphisms ``(a -> b, b -> a)`` or ``None``.

    Exhaustive individualisation/refinement search over question and answer
    bijections; candidates are tried in canonical position order so the
    result is deterministic.  ``max_search`` bounds the number of search
    nodes visited.
    """
    if a.shape != b.shape or a.relation_count() != b.relation_count():
        return None
    Ma, Mb = a.relation, b.relation
    nq, na = a.shape
    if nq == 0 or na == 0:
        rows, cols = np.arange(nq), np.arange(na)
    elif na < nq:
        found = _matrix_iso(Ma.T, Mb.T, max_search)
        if found is None:
            return None
        cols, rows = found
    else:
        found = _matrix_iso(Ma, Mb, max_search)
        if found is None:
            return None
        rows, cols = found
    # rows[i]: b-question matched to a-question i; cols[k]: b-answer matched to a-answer k
    u = np.empty(nq, dtype=np.intp)
    u[rows] = np.arange(nq)
    inv_cols = np.empty(na, dtype=np.intp)
    inv_cols[cols] = np.arange(na)
    forward = check_positions(a, b, u, cols)
    backward = check_positions(b, a, rows, inv_cols)
    return forward, backward
