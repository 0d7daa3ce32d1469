"""Truth, solutions, sequents and the rule-soundness harness."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, Sequence

import numpy as np

from . import connectives as cx
from . import fixtures
from .connectives import DEFAULT_CAPS, CapacityConfig
from .core import PvObject
from .elements import Element, Pair
from .errors import ArityMismatch, CapacityExceeded, UnknownFixture
from . import formula as fm
from .formula import Formula, interpret, parse_formula, parse_sequent
from .search import GenParams, random_object


class Mode(enum.Enum):
    MODE1 = 1   # every question has some correct answer
    MODE2 = 2   # one answer is correct for every question


class ParFlavor(enum.Enum):
    FINAL = "final"
    PROVISIONAL = "provisional"


class RuleId(enum.Enum):
    AXIOM = "axiom"
    CUT = "cut"
    TENSOR_INTRO = "tensor-intro"
    PAR_INTRO = "par-intro"
    WITH_INTRO = "with-intro"
    PLUS_INTRO_L = "plus-intro-l"
    PLUS_INTRO_R = "plus-intro-r"
    MIX = "mix"
    SPECIAL_WEAKENING = "special-weakening"
    GENERAL_WEAKENING = "general-weakening"
    DERELICTION = "dereliction"
    WEAKENING_Q = "weakening-q"
    CONTRACTION = "contraction"
    PROMOTION = "promotion"


class Verdict(enum.Enum):
    SOUND_INSTANCE = "sound"
    UNSOUND_INSTANCE = "unsound"
    VACUOUS = "vacuous"


def models(a: PvObject, mode: Mode) -> bool:
    rel = a.relation
    if mode is Mode.MODE1:
        return bool(rel.any(axis=1).all())
    return bool(rel.all(axis=0).any())


def solutions(a: PvObject, limit: int | None = None) -> list[Element]:
    """Answers correct for every question, in canonical order."""
    idx = np.flatnonzero(a.relation.all(axis=0))
    if limit is not None:
        idx = idx[:limit]
    return [a.answers[int(i)] for i in idx]


def fold_sequent(objs: Sequence[PvObject], flavor: ParFlavor = ParFlavor.FINAL,
                 caps: CapacityConfig = DEFAULT_CAPS) -> PvObject:
    """Left fold of the chosen par over the members of a sequent."""
    if not objs:
        raise ValueError("empty sequents have no interpretation; use the formula 'bot'")
    op = cx.par if flavor is ParFlavor.FINAL else cx.ppar
    return reduce(lambda x, y: op(x, y, caps), objs)


def _as_formula(f):
    return parse_formula(f) if isinstance(f, str) else f


def sequent_object(formulas: Sequence[Formula | str], env: Mapping[str, PvObject],
                   caps: CapacityConfig = DEFAULT_CAPS,
                   flavor: ParFlavor = ParFlavor.FINAL) -> PvObject:
    objs = [interpret(_as_formula(f), env, caps) for f in formulas]
    return fold_sequent(objs, flavor, caps)


def sequent_true(formulas, env, mode: Mode = Mode.MODE2, caps: CapacityConfig = DEFAULT_CAPS,
                 flavor: ParFlavor = ParFlavor.FINAL) -> bool:
    return models(sequent_object(formulas, env, caps, flavor), mode)


# -- soundness harness ------------------------------------------------------------

@dataclass(frozen=True)
class SoundnessReport:
    rule: RuleId
    instance: str
    premises_true: tuple[bool, ...]
    conclusion_true: bool
    verdict: Verdict


RULE_OPERANDS = {
    RuleId.AXIOM: ("A",),
    RuleId.CUT: ("A", "B", "C"),
    RuleId.TENSOR_INTRO: ("A", "B", "G", "D"),
    RuleId.PAR_INTRO: ("A", "B", "G"),
    RuleId.WITH_INTRO: ("A", "B", "G"),
    RuleId.PLUS_INTRO_L: ("A", "B", "G"),
    RuleId.PLUS_INTRO_R: ("A", "B", "G"),
    RuleId.MIX: ("A", "B"),
    RuleId.SPECIAL_WEAKENING: ("A",),
    RuleId.GENERAL_WEAKENING: ("A", "B"),
    RuleId.DERELICTION: ("A", "G"),
    RuleId.WEAKENING_Q: ("A", "G"),
    RuleId.CONTRACTION: ("A", "G"),
    RuleId.PROMOTION: ("A", "G"),
}

# (premises, conclusion) as sequent shapes in a tiny formula language over the
# operand names; "*" and "@" follow the chosen multiplicative flavour.
RULE_SHAPES = {
    RuleId.AXIOM: ([], "A, A^"),
    RuleId.CUT: (["B, A", "C, A^"], "B, C"),
    RuleId.TENSOR_INTRO: (["G, A", "D, B"], "G, D, A * B"),
    RuleId.PAR_INTRO: (["G, A, B"], "G, A @ B"),
    RuleId.WITH_INTRO: (["G, A", "G, B"], "G, A & B"),
    RuleId.PLUS_INTRO_L: (["G, A"], "G, A + B"),
    RuleId.PLUS_INTRO_R: (["G, B"], "G, A + B"),
    RuleId.MIX: (["A", "B"], "A, B"),
    RuleId.SPECIAL_WEAKENING: ([], "A^ @ (A @ A)"),
    RuleId.GENERAL_WEAKENING: ([], "A^ @ (A @ B)"),
    RuleId.DERELICTION: (["G, A"], "G, ?A"),
    RuleId.WEAKENING_Q: (["G"], "G, ?A"),
    RuleId.CONTRACTION: (["G, ?A, ?A"], "G, ?A"),
    RuleId.PROMOTION: (["?G, A"], "?G, !A"),
}

# the rules the interpretation is claimed to validate under (MODE2, FINAL)
CLAIMED_SOUND = frozenset(RuleId) - {RuleId.GENERAL_WEAKENING}


def _provisional(f: Formula) -> Formula:
    if isinstance(f, fm.Tensor):
        return fm.PTensor(_provisional(f.left), _provisional(f.right))
    if isinstance(f, fm.Par):
        return fm.PPar(_provisional(f.left), _provisional(f.right))
    if isinstance(f, fm.Binary):
        return type(f)(_provisional(f.left), _provisional(f.right))
    if isinstance(f, (fm.Neg, fm.Bang, fm.Quest, fm.Kappa, fm.Alpha)):
        return type(f)(_provisional(f.body))
    return f


def _shape_true(shape: str, env, mode, flavor, caps) -> bool:
    forms = parse_sequent(shape)
    if flavor is ParFlavor.PROVISIONAL:
        forms = [_provisional(f) for f in forms]
    return sequent_true(forms, env, mode, caps, flavor)


def check_rule(rule: RuleId, operands: Mapping[str, PvObject], mode: Mode = Mode.MODE2,
               flavor: ParFlavor = ParFlavor.FINAL,
               caps: CapacityConfig = DEFAULT_CAPS) -> SoundnessReport:
    """Evaluate one instance of ``rule`` at the given objects.

    Under the provisional flavour both the sequent commas and the
    multiplicative connectives of the rule shape use the provisional forms.
    """
    rule = RuleId(rule)
    needed = RULE_OPERANDS[rule]
    if set(operands) != set(needed):
        raise ArityMismatch(f"{rule.value} needs operands {', '.join(needed)}; got {', '.join(sorted(operands))}")
    premises, conclusion = RULE_SHAPES[rule]
    prem = tuple(_shape_true(p, operands, mode, flavor, caps) for p in premises)
    concl = _shape_true(conclusion, operands, mode, flavor, caps)
    if not all(prem):
        verdict = Verdict.VACUOUS
    elif concl:
        verdict = Verdict.SOUND_INSTANCE
    else:
        verdict = Verdict.UNSOUND_INSTANCE
    desc = f"{' | '.join(premises) or '(none)'} => {conclusion}"
    return SoundnessReport(rule, desc, prem, concl, verdict)


@dataclass(frozen=True)
class Fixture:
    rule: RuleId
    operands: Mapping[str, PvObject]
    mode: Mode
    flavor: ParFlavor
    expected: Verdict


def counterexample_fixture(name: str) -> Fixture:
    U = Verdict.UNSOUND_INSTANCE
    if name == "axiom-fails-mode2":
        return Fixture(RuleId.AXIOM, {"A": fixtures.EQ2}, Mode.MODE2, ParFlavor.PROVISIONAL, U)
    if name == "cut-fails-mode1":
        ops = {"A": fixtures.EQ2, "B": fixtures.NOANS, "C": fixtures.NOANS}
        return Fixture(RuleId.CUT, ops, Mode.MODE1, ParFlavor.PROVISIONAL, U)
    if name == "general-weakening-fails":
        ops = {"A": fixtures.POINT, "B": fixtures.QONLY}
        return Fixture(RuleId.GENERAL_WEAKENING, ops, Mode.MODE2, ParFlavor.FINAL, U)
    if name == "empty-carrier-axiom":
        return Fixture(RuleId.AXIOM, {"A": fixtures.EMPTY}, Mode.MODE2, ParFlavor.PROVISIONAL, U)
    raise UnknownFixture(name)


FIXTURE_NAMES = ("axiom-fails-mode2", "cut-fails-mode1", "general-weakening-fails", "empty-carrier-axiom")


def run_fixture(name: str, caps: CapacityConfig = DEFAULT_CAPS) -> tuple[Fixture, SoundnessReport]:
    fx = counterexample_fixture(name)
    return fx, check_rule(fx.rule, fx.operands, fx.mode, fx.flavor, caps)


def truth_duality_check(a: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> bool:
    m1 = models(a, Mode.MODE1)
    return m1 == (not models(cx.neg(a), Mode.MODE2)) and m1 == models(cx.alpha(a, caps), Mode.MODE2)


def witnessed_choice_holds(a: PvObject, b: PvObject, caps: CapacityConfig = DEFAULT_CAPS) -> bool:
    """Every solution (f, g) of ``par(a, b)`` answers each (x, y) of the
    provisional par with (f(y), g(x))."""
    p = cx.par(a, b, caps)
    pp = cx.ppar(a, b, caps)
    for sol in solutions(p):
        f, g = sol.left, sol.right
        for x in a.questions:
            for y in b.questions:
                if not pp.is_correct(Pair(x, y), Pair(f(y), g(x))):
                    return False
    return True


# -- randomized runs ----------------------------------------------------------------

@dataclass
class RuleTally:
    sound: int = 0
    unsound: int = 0
    vacuous: int = 0
    skipped: int = 0
    unsound_examples: list = field(default_factory=list)

    @property
    def evaluated(self) -> int:
        return self.sound + self.unsound + self.vacuous


def run_soundness(rules: Sequence[RuleId] = tuple(RuleId), trials: int = 100, seed: int = 0,
                  max_size: int = 2, mode: Mode = Mode.MODE2,
                  flavor: ParFlavor = ParFlavor.FINAL,
                  caps: CapacityConfig = DEFAULT_CAPS,
                  max_attempts_factor: int = 20) -> dict[RuleId, RuleTally]:
    """Check each rule on ``trials`` random operand tuples.

    Instances whose objects would exceed ``caps`` are skipped and drawn
    again (up to ``max_attempts_factor * trials`` draws per rule).
    Identical arguments give identical tallies.
    """
    out = {}
    for rule in rules:
        rule = RuleId(rule)
        rng = random.Random(f"{seed}:{rule.value}")
        tally = RuleTally()
        attempts = 0
        while tally.evaluated < trials and attempts < max_attempts_factor * trials:
            attempts += 1
            ops = {name: random_object(GenParams(max_size, max_size, seed=rng.getrandbits(32)))
                   for name in RULE_OPERANDS[rule]}
            try:
                rep = check_rule(rule, ops, mode, flavor, caps)
            except CapacityExceeded:
                tally.skipped += 1
                continue
            if rep.verdict is Verdict.SOUND_INSTANCE:
                tally.sound += 1
            elif rep.verdict is Verdict.VACUOUS:
                tally.vacuous += 1
            else:
                tally.unsound += 1
                if len(tally.unsound_examples) < 3:
                    tally.unsound_examples.append(ops)
        out[rule] = tally
    return out
