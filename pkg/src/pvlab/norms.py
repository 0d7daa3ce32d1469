"""The norm of an object: the least number of answers that between them
correctly answer every question, plus its dual and a few finite facts
about how it behaves under morphisms and connectives."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .connectives import DEFAULT_CAPS, CapacityConfig, neg, ptensor, seqcomp
from .core import PvMorphism, PvObject
from .elements import Element
from .errors import PreconditionUnmet


@dataclass(frozen=True)
class NormResult:
    """``value`` is None when no covering set exists."""

    value: Optional[int]
    witness: tuple[Element, ...] = ()

    @property
    def defined(self) -> bool:
        return self.value is not None

    def __str__(self):
        return "undefined" if self.value is None else str(self.value)


UNDEFINED = NormResult(None)


def _column_masks(a: PvObject) -> list[int]:
    """Bitmask of the questions each answer covers, in answer order."""
    weights = [1 << i for i in range(len(a.questions))]
    return [sum(w for w, hit in zip(weights, col) if hit) for col in a.relation.T.tolist()]


def _least_cover(masks: list[int], full: int, size: int) -> Optional[tuple[int, ...]]:
    """Lexicographically least index tuple of exactly ``size`` masks whose
    union is ``full``, or None."""
    n = len(masks)
    # suffix_union[j]: everything coverable by masks[j:]
    suffix_union = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix_union[j] = suffix_union[j + 1] | masks[j]
    best_gain = max((m.bit_count() for m in masks), default=0)
    chosen: list[int] = []

    def dfs(start: int, covered: int, budget: int) -> bool:
        if covered == full:
            return True
        if budget == 0:
            return False
        missing = full & ~covered
        if missing & ~suffix_union[start]:
            return False
        if missing.bit_count() > budget * best_gain:
            return False
        for j in range(start, n - budget + 1):
            if not masks[j] & missing:
                continue
            chosen.append(j)
            if dfs(j + 1, covered | masks[j], budget - 1):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if dfs(0, 0, size) else None


def norm(a: PvObject) -> NormResult:
    nq, na = a.shape
    if nq == 0:
        return NormResult(0, ())
    if not a.relation.any(axis=1).all():
        return UNDEFINED
    masks = _column_masks(a)
    full = (1 << nq) - 1
    for size in range(1, na + 1):
        # no cover of a smaller size exists, so each hit uses exactly `size`
        # answers and the depth-first order makes it the least one
        hit = _least_cover(masks, full, size)
        if hit is not None:
            return NormResult(size, tuple(a.answers[j] for j in hit))
    raise AssertionError("every question is answerable, so all answers cover")


def dual_norm(a: PvObject) -> NormResult:
    return norm(neg(a))


def check_norm_monotonicity(f: PvMorphism) -> bool:
    """A covering set of the source is carried by the plus map onto a
    covering set of the target, so the target's norm is no larger."""
    na, nb = norm(f.source), norm(f.target)
    if not na.defined:
        return True
    idx = f.source.answers.index_map()
    image = sorted({int(f.plus[idx[w]]) for w in na.witness})
    covers = bool(f.target.relation[:, image].any(axis=1).all()) if f.target.questions else True
    return covers and nb.defined and nb.value <= na.value


@dataclass(frozen=True)
class NormBounds:
    norm_a: int
    norm_b: int
    ptensor_norm: int
    seqcomp_norm: int

    @property
    def lower(self) -> int:
        return max(self.norm_a, self.norm_b)

    @property
    def upper(self) -> int:
        return self.norm_a * self.norm_b

    @property
    def ptensor_ok(self) -> bool:
        return self.lower <= self.ptensor_norm <= self.upper

    @property
    def seqcomp_ok(self) -> bool:
        return self.lower <= self.seqcomp_norm <= self.upper

    @property
    def holds(self) -> bool:
        return self.ptensor_ok and self.seqcomp_ok


def check_norm_bounds(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> NormBounds:
    if not (len(a.questions) and len(b.questions)):
        raise PreconditionUnmet("both objects need at least one question")
    na, nb = norm(a), norm(b)
    if not (na.defined and nb.defined):
        raise PreconditionUnmet("both norms must be defined")
    pt, sq = norm(ptensor(a, b, caps)), norm(seqcomp(a, b, caps))
    return NormBounds(na.value, nb.value, pt.value, sq.value)

