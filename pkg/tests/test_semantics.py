import pytest
from hypothesis import given

from oracles import naive_models1, naive_models2
from strategies import pv_objects

from pvlab import connectives as cx
from pvlab.errors import ArityMismatch, ParseError, UnboundAtom, UnknownFixture
from pvlab.fixtures import BOT, CHAOS2, EMPTY, EQ2, NOANS, ONE, POINT, QONLY, TOP, ZERO, a0, a1
from pvlab.semantics import (
    CLAIMED_SOUND, FIXTURE_NAMES, RULE_OPERANDS, Mode, ParFlavor, RuleId, Verdict, check_rule,
    counterexample_fixture, fold_sequent, models, run_fixture, run_soundness, sequent_object,
    sequent_true, solutions, truth_duality_check, witnessed_choice_holds,
)

M1, M2 = Mode.MODE1, Mode.MODE2
FINAL, PROV = ParFlavor.FINAL, ParFlavor.PROVISIONAL


def test_models_examples():
    assert models(EQ2, M1) and not models(EQ2, M2)
    assert models(TOP, M2) and not models(ZERO, M1)
    assert models(EMPTY, M1) and not models(EMPTY, M2)


@given(pv_objects(3))
def test_models_match_quantifier_loops(a):
    assert models(a, M1) == naive_models1(a)
    assert models(a, M2) == naive_models2(a)


def test_solutions_examples():
    assert solutions(CHAOS2) == [a0, a1]
    assert solutions(CHAOS2, limit=1) == [a0]
    assert solutions(EQ2) == []
    assert len(solutions(cx.lollipop(EQ2, EQ2))) == 2


def test_sequent_folding():
    env = {"A": EQ2, "B": ONE, "C": POINT}
    assert sequent_object(["A", "A^"], env) == cx.par(EQ2, cx.neg(EQ2))
    assert sequent_object(["A"], env) is EQ2
    assert sequent_object(["A", "B", "C"], env) == cx.par(cx.par(EQ2, ONE), POINT)
    assert fold_sequent([EQ2, ONE], PROV) == cx.ppar(EQ2, ONE)
    with pytest.raises(ValueError):
        fold_sequent([])
    with pytest.raises(UnboundAtom):
        sequent_object(["Z"], env)


def test_sequent_truth_examples():
    assert sequent_true(["A", "A^"], {"A": EQ2}, M2)
    assert not sequent_true(["A", "A^"], {"A": EQ2}, M2, flavor=PROV)
    assert not sequent_true(["A"], {"A": ZERO}, M2)
    with pytest.raises(ParseError):
        sequent_true(["A @"], {"A": EQ2})


@given(pv_objects(3))
def test_axiom_holds_for_final_par(a):
    assert check_rule(RuleId.AXIOM, {"A": a}).verdict is Verdict.SOUND_INSTANCE


def test_check_rule_examples():
    assert check_rule(RuleId.AXIOM, {"A": EQ2}, M2, FINAL).verdict is Verdict.SOUND_INSTANCE
    r = check_rule(RuleId.CUT, {"A": EQ2, "B": NOANS, "C": NOANS}, M1, PROV)
    assert r.verdict is Verdict.UNSOUND_INSTANCE and r.premises_true == (True, True)
    r = check_rule(RuleId.GENERAL_WEAKENING, {"A": POINT, "B": QONLY}, M2, FINAL)
    assert r.verdict is Verdict.UNSOUND_INSTANCE


def test_vacuous_verdict():
    r = check_rule(RuleId.MIX, {"A": ZERO, "B": ONE})
    assert r.verdict is Verdict.VACUOUS and r.premises_true == (False, True)


def test_operand_names_are_checked():
    with pytest.raises(ArityMismatch):
        check_rule(RuleId.CUT, {"A": EQ2})
    assert set(RULE_OPERANDS[RuleId.TENSOR_INTRO]) == {"A", "B", "G", "D"}


def test_counterexample_fixtures_reproduce():
    for name in FIXTURE_NAMES:
        fx, rep = run_fixture(name)
        assert rep.verdict is fx.expected is Verdict.UNSOUND_INSTANCE
    fx = counterexample_fixture("empty-carrier-axiom")
    assert fx.operands["A"].shape == (0, 0)
    with pytest.raises(UnknownFixture):
        counterexample_fixture("nope")


def test_axiom_failure_is_specific_to_provisional_par():
    assert check_rule(RuleId.AXIOM, {"A": EMPTY}, M2, FINAL).verdict is Verdict.SOUND_INSTANCE


@given(pv_objects(3))
def test_truth_dualities(a):
    assert truth_duality_check(a)


def test_truth_duality_fixtures():
    for a in (EQ2, ZERO, EMPTY, ONE, BOT, TOP, NOANS):
        assert truth_duality_check(a)


@given(pv_objects(2), pv_objects(2))
def test_par_solutions_give_pointwise_provisional_answers(a, b):
    assert witnessed_choice_holds(a, b)


def test_general_weakening_is_excluded_from_claims():
    assert RuleId.GENERAL_WEAKENING not in CLAIMED_SOUND
    assert len(CLAIMED_SOUND) == len(RuleId) - 1


def test_soundness_run_is_deterministic_and_clean():
    rules = [RuleId.AXIOM, RuleId.CUT, RuleId.MIX, RuleId.CONTRACTION]
    first = run_soundness(rules, trials=40, seed=3)
    second = run_soundness(rules, trials=40, seed=3)
    for rule in rules:
        t = first[rule]
        assert t.evaluated == 40 and t.unsound == 0
        assert (t.sound, t.vacuous, t.skipped) == (second[rule].sound, second[rule].vacuous, second[rule].skipped)


def test_general_weakening_fails_somewhere_at_random():
    t = run_soundness([RuleId.GENERAL_WEAKENING], trials=60, seed=0)[RuleId.GENERAL_WEAKENING]
    assert t.unsound > 0
