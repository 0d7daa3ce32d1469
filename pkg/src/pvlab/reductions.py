"""Reductions that remember the original question, and their duals.

A reduction of B to A maps B-questions to A-questions and computes a
B-answer from an A-answer together with the original B-question.  Such
reductions are exactly morphisms ``A -> alpha(B)``, so they compose as the
Kleisli category of the monad ``alpha``.  Dually, a Dialectica morphism
lets the question map also see an A-answer and corresponds to a plain
morphism ``kappa(A) -> B``.
"""

from __future__ import annotations

from typing import Mapping

import numpy as np

from .connectives import DEFAULT_CAPS, CapacityConfig, alpha, alpha_m, encode_rows, function_space, kappa
from .core import PvMorphism, PvObject, check_positions, compose, identity, object_equal
from .errors import ImplicationViolated, NotInCarrier, NotTotal, ObjectMismatch, RangeEscape


def _frozen(arr, shape):
    arr = np.array(arr, dtype=np.intp).reshape(shape)
    arr.flags.writeable = False
    return arr


def _check_range(arr, bound, label):
    if arr.size and (arr.min() < 0 or arr.max() >= bound):
        raise RangeEscape(f"{label} leaves its codomain")


class Reduction:
    """``minus[b]``: source question for target question b;
    ``plus[w, b]``: target answer built from source answer w and b."""

    __slots__ = ("source", "target", "minus", "plus")

    def __init__(self, source: PvObject, target: PvObject, minus, plus):
        self.source = source
        self.target = target
        self.minus = _frozen(minus, (len(target.questions),))
        self.plus = _frozen(plus, (len(source.answers), len(target.questions)))
        _check_range(self.minus, len(source.questions), "minus map")
        _check_range(self.plus, len(target.answers), "plus map")

    @classmethod
    def from_morphism(cls, f: PvMorphism) -> "Reduction":
        """Forgetful lift: the plus map ignores the remembered question."""
        nb = len(f.target.questions)
        return cls(f.source, f.target, f.minus, np.repeat(f.plus[:, None], nb, axis=1))

    @classmethod
    def identity(cls, obj: PvObject) -> "Reduction":
        return cls.from_morphism(identity(obj))

    def __eq__(self, other):
        if not isinstance(other, Reduction):
            return NotImplemented
        return (object_equal(self.source, other.source) and object_equal(self.target, other.target)
                and np.array_equal(self.minus, other.minus) and np.array_equal(self.plus, other.plus))

    __hash__ = None


def make_reduction(source: PvObject, target: PvObject, minus: Mapping, plus: Mapping) -> Reduction:
    """Build from element maps; ``plus`` is keyed by ``(w, b)`` pairs."""
    sq, ta = source.questions.index_map(), target.answers.index_map()
    m = np.empty(len(target.questions), dtype=np.intp)
    for i, b in enumerate(target.questions):
        if b not in minus:
            raise NotTotal(f"minus map undefined at {b}")
        if minus[b] not in sq:
            raise RangeEscape(f"minus map sends {b} outside the source questions")
        m[i] = sq[minus[b]]
    p = np.empty((len(source.answers), len(target.questions)), dtype=np.intp)
    for wi, w in enumerate(source.answers):
        for bi, b in enumerate(target.questions):
            if (w, b) not in plus:
                raise NotTotal(f"plus map undefined at ({w}, {b})")
            if plus[w, b] not in ta:
                raise RangeEscape(f"plus map sends ({w}, {b}) outside the target answers")
            p[wi, bi] = ta[plus[w, b]]
    for key in plus:
        if key[0] not in source.answers or key[1] not in target.questions:
            raise NotInCarrier(f"plus map key {key} outside its domain")
    return Reduction(source, target, m, p)


def reduction_violation(r: Reduction):
    """Least (target question, source answer) breaking the contract, or None."""
    nb = len(r.target.questions)
    premise = r.source.relation[r.minus, :]                        # [b, w]
    answered = r.target.relation[np.arange(nb)[:, None], r.plus.T]  # [b, w]
    hits = np.argwhere(premise & ~answered)
    if len(hits) == 0:
        return None
    b, w = hits[0]
    return r.target.questions[int(b)], r.source.answers[int(w)]


def validate_reduction(r: Reduction) -> Reduction:
    hit = reduction_violation(r)
    if hit is not None:
        raise ImplicationViolated(*hit)
    return r


def reduction_to_alpha_morphism(r: Reduction, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    target = alpha(r.target, caps)
    plus = encode_rows(r.plus, len(r.target.answers))
    return check_positions(r.source, target, r.minus, plus)


def alpha_morphism_to_reduction(f: PvMorphism, target: PvObject,
                                caps: CapacityConfig = DEFAULT_CAPS) -> Reduction:
    """Uncurry ``f: A -> alpha(target)``; ``target`` must be given since
    its relation is not recoverable from ``alpha(target)`` in general."""
    if not object_equal(f.target, alpha(target, caps)):
        raise ObjectMismatch("morphism does not land in alpha(target)")
    _, table = function_space(target.questions, target.answers, caps)
    return Reduction(f.source, target, f.minus, table[f.plus])


def kleisli_compose(r1: Reduction, r2: Reduction) -> Reduction:
    """Chain ``r1`` (B reduced to A) with ``r2`` (C reduced to B) into C reduced to A."""
    if not object_equal(r1.target, r2.source):
        raise ObjectMismatch("middle objects differ")
    nc = len(r2.target.questions)
    minus = r1.minus[r2.minus]
    via_b = r1.plus[:, r2.minus]                                   # [w, c] -> B-answer
    plus = r2.plus[via_b, np.arange(nc)[None, :]]
    return Reduction(r1.source, r2.target, minus, plus)


# -- the monad alpha ------------------------------------------------------------

def alpha_unit(a: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """``a -> alpha(a)``: answers become constant functions."""
    nq, na = a.shape
    consts = np.repeat(np.arange(na)[:, None], nq, axis=1)
    return check_positions(a, alpha(a, caps), np.arange(nq), encode_rows(consts, na))


def alpha_mult(a: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """``alpha(alpha(a)) -> alpha(a)``: F is sent to the diagonal x |-> F(x)(x)."""
    aa = alpha(a, caps)
    nq, na = a.shape
    _, inner = function_space(a.questions, a.answers, caps)
    _, outer = function_space(a.questions, aa.answers, caps)
    diag = inner[outer, np.arange(nq)[None, :]]
    return check_positions(alpha(aa, caps), aa, np.arange(nq), encode_rows(diag, na))


def monad_alpha_structure(a: PvObject, caps: CapacityConfig = DEFAULT_CAPS):
    return alpha_unit(a, caps), alpha_mult(a, caps)


def kleisli_compose_via_monad(r1: Reduction, r2: Reduction,
                              caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """The same composite computed as mult . alpha(r2) . r1 on morphisms."""
    m1 = reduction_to_alpha_morphism(r1, caps)
    m2 = reduction_to_alpha_morphism(r2, caps)
    return compose(compose(m1, alpha_m(m2, caps)), alpha_mult(r2.target, caps))


# -- Dialectica morphisms -----------------------------------------------------------

class DialecticaMorphism:
    """``minus[b, w]``: source question; ``plus[w]``: target answer."""

    __slots__ = ("source", "target", "minus", "plus")

    def __init__(self, source: PvObject, target: PvObject, minus, plus):
        self.source = source
        self.target = target
        self.minus = _frozen(minus, (len(target.questions), len(source.answers)))
        self.plus = _frozen(plus, (len(source.answers),))
        _check_range(self.minus, len(source.questions), "minus map")
        _check_range(self.plus, len(target.answers), "plus map")

    @classmethod
    def from_morphism(cls, f: PvMorphism) -> "DialecticaMorphism":
        na = len(f.source.answers)
        return cls(f.source, f.target, np.repeat(f.minus[:, None], na, axis=1), f.plus)

    def __eq__(self, other):
        if not isinstance(other, DialecticaMorphism):
            return NotImplemented
        return (object_equal(self.source, other.source) and object_equal(self.target, other.target)
                and np.array_equal(self.minus, other.minus) and np.array_equal(self.plus, other.plus))

    __hash__ = None


def dialectica_violation(m: DialecticaMorphism):
    na = len(m.source.answers)
    premise = m.source.relation[m.minus, np.arange(na)[None, :]]   # [b, w]
    answered = m.target.relation[:, m.plus]                         # [b, w]
    hits = np.argwhere(premise & ~answered)
    if len(hits) == 0:
        return None
    b, w = hits[0]
    return m.target.questions[int(b)], m.source.answers[int(w)]


def validate_dialectica(m: DialecticaMorphism) -> DialecticaMorphism:
    hit = dialectica_violation(m)
    if hit is not None:
        raise ImplicationViolated(*hit)
    return m


def dialectica_to_kappa_morphism(m: DialecticaMorphism, caps: CapacityConfig = DEFAULT_CAPS) -> PvMorphism:
    """Curry the question map into functions: a morphism ``kappa(source) -> target``."""
    src = kappa(m.source, caps)
    minus = encode_rows(m.minus, len(m.source.questions))
    return check_positions(src, m.target, minus, m.plus)


def kappa_morphism_to_dialectica(f: PvMorphism, source: PvObject,
                                 caps: CapacityConfig = DEFAULT_CAPS) -> DialecticaMorphism:
    if not object_equal(f.source, kappa(source, caps)):
        raise ObjectMismatch("morphism does not start at kappa(source)")
    _, table = function_space(source.answers, source.questions, caps)
    return DialecticaMorphism(source, f.target, table[f.minus], f.plus)
