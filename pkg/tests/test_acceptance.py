"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[PASS]`` or ``[FAIL]`` line, even under
captured output, so ``pytest tests/test_acceptance.py`` doubles as a report.
"""

import itertools
import time

import numpy as np
import pytest

from oracles import brute_force_sat, min_cover_size

from pvlab import cli, coloring as col, connectives as cx
from pvlab import reductions as rd
from pvlab.connectives import DepSpec
from pvlab.core import compose, find_isomorphism, identity
from pvlab.elements import Atom
from pvlab.envfile import parse_env, serialize_env
from pvlab.errors import ImplicationViolated, PreconditionUnmet
from pvlab.fixtures import CHAOS2, EMPTY, EQ2, STANDARD, TOP, ZERO
from pvlab.norms import check_norm_bounds, check_norm_monotonicity, norm
from pvlab.search import find_morphisms, morphism_solution_correspondence, random_objects
from pvlab.semantics import (
    FIXTURE_NAMES, Mode, ParFlavor, RuleId, Verdict, check_rule, models, run_fixture, run_soundness,
    solutions, truth_duality_check,
)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
            print("\n" + line + (f" ({detail})" if detail else ""))
        assert ok, detail or title
    return emit


def small_pairs(count, seed, size):
    objs = random_objects(2 * count, seed=seed, max_questions=size, max_answers=size)
    return list(zip(objs[::2], objs[1::2]))


def iso(a, b):
    return find_isomorphism(a, b) is not None


def test_01_involution_and_de_morgan(report):
    start = time.perf_counter()
    objs = random_objects(240, seed=101, max_questions=4, max_answers=4)
    failures = 0
    for a, b in zip(objs, objs[1:]):
        if cx.neg(cx.neg(a)) != a:
            failures += 1
        if cx.neg(cx.tensor(a, b)) != cx.par(cx.neg(a), cx.neg(b)):
            failures += 1
        if cx.neg(cx.with_(a, b)) != cx.plus_(cx.neg(a), cx.neg(b)):
            failures += 1
    elapsed = time.perf_counter() - start
    report(1, "negation involution and De Morgan laws", failures == 0 and elapsed < 5,
           f"{len(objs)} objects, {failures} failures, {elapsed:.2f}s")


def test_02_axiom_soundness(report):
    objs = random_objects(220, seed=202, max_questions=3, max_answers=3) + [EMPTY, EQ2]
    bad = [a for a in objs if not models(cx.par(a, cx.neg(a)), Mode.MODE2)]
    report(2, "axiom holds under the final par", not bad, f"{len(objs)} objects, {len(bad)} failures")


def test_03_cut_soundness(report):
    objs = random_objects(360, seed=303, max_questions=2, max_answers=2)
    verdicts = [check_rule(RuleId.CUT, dict(zip("ABC", objs[i:i + 3])), Mode.MODE2, ParFlavor.FINAL).verdict
                for i in range(0, 360, 3)]
    unsound = verdicts.count(Verdict.UNSOUND_INSTANCE)
    report(3, "cut is sound under the final par", unsound == 0,
           f"{len(verdicts)} triples, {verdicts.count(Verdict.SOUND_INSTANCE)} non-vacuous, {unsound} unsound")


def test_04_counterexample_fixtures(report, capsys):
    results = {name: run_fixture(name) for name in FIXTURE_NAMES}
    reproduced = all(rep.verdict is fx.expected is Verdict.UNSOUND_INSTANCE for fx, rep in results.values())
    code = cli.main(["fixtures"])
    capsys.readouterr()
    report(4, "counterexample fixtures reproduce", reproduced and code == 0,
           f"{len(results)} fixtures, `fixtures` exit {code}")


CRITERION_5_RULES = [
    RuleId.MIX, RuleId.SPECIAL_WEAKENING, RuleId.WITH_INTRO, RuleId.PLUS_INTRO_L, RuleId.PLUS_INTRO_R,
    RuleId.TENSOR_INTRO, RuleId.DERELICTION, RuleId.WEAKENING_Q, RuleId.CONTRACTION, RuleId.PROMOTION,
]


def test_05_remaining_rules(report):
    tallies = run_soundness(CRITERION_5_RULES, trials=100, seed=505, max_size=2)
    ok = all(t.evaluated >= 100 and t.unsound == 0 for t in tallies.values())
    detail = ", ".join(f"{r.value} {t.sound}/{t.evaluated}" for r, t in tallies.items())
    report(5, "structural, additive and exponential rules are sound", ok, detail)


def test_06_truth_dualities(report):
    objs = random_objects(200, seed=606, max_questions=3, max_answers=3) + list(STANDARD.values())
    bad = [a for a in objs if not truth_duality_check(a)]
    report(6, "the two truth notions are dual", not bad, f"{len(objs)} objects, {len(bad)} failures")


def test_07_lollipop_correspondence(report):
    pairs = small_pairs(60, seed=707, size=2)
    bad = [p for p in pairs if not morphism_solution_correspondence(*p)]
    n_m, n_s = len(find_morphisms(EQ2, EQ2)), len(solutions(cx.lollipop(EQ2, EQ2)))
    report(7, "solutions of the implication are the morphisms", not bad and n_m == n_s == 2,
           f"{len(pairs)} pairs, {len(bad)} failures, EQ2 counts {n_m}/{n_s}")


def test_08_generalized_specializations(report):
    cross, none, seq, one = DepSpec.of({2}, {1}), DepSpec.of(set(), set()), DepSpec.of(set(), {1}), DepSpec.of({1})
    pairs = small_pairs(40, seed=808, size=2) + [(EQ2, CHAOS2), (STANDARD["NOANS"], EQ2)]
    failures = 0
    for a, b in pairs:
        checks = [
            iso(cx.genconj([a, b], cross), cx.tensor(a, b)),
            iso(cx.gendisj([a, b], cross), cx.par(a, b)),
            iso(cx.genconj([a, b], none), cx.ptensor(a, b)),
            iso(cx.gendisj([a, b], none), cx.ppar(a, b)),
            iso(cx.genconj([a, b], seq), cx.seqcomp(a, b)),
            iso(cx.gendisj([a, b], seq), cx.neg(cx.seqcomp(cx.neg(a), cx.neg(b)))),
            iso(cx.genconj([a], one), cx.kappa(a)),
            iso(cx.gendisj([a], one), cx.alpha(a)),
        ]
        failures += checks.count(False)
    report(8, "generalized connectives specialize correctly", failures == 0,
           f"{len(pairs)} pairs, {failures} failures")


def _product_ok(c, a, b):
    p1, p2 = cx.with_projections(a, b)
    into = find_morphisms(c, cx.with_(a, b))
    for f in find_morphisms(c, a):
        for g in find_morphisms(c, b):
            h = cx.with_pairing(f, g)
            if [k for k in into if compose(k, p1) == f and compose(k, p2) == g] != [h]:
                return False
    return True


def _coproduct_ok(a, b, c):
    i1, i2 = cx.plus_injections(a, b)
    out = find_morphisms(cx.plus_(a, b), c)
    for f in find_morphisms(a, c):
        for g in find_morphisms(b, c):
            h = cx.plus_copairing(f, g)
            if [k for k in out if compose(i1, k) == f and compose(i2, k) == g] != [h]:
                return False
    return True


def test_09_product_and_coproduct(report):
    objs = random_objects(90, seed=909, max_questions=2, max_answers=2)
    triples = list(zip(objs[::3], objs[1::3], objs[2::3])) + [(EQ2, CHAOS2, EQ2)]
    bad = sum(not _product_ok(c, a, b) or not _coproduct_ok(a, b, c) for a, b, c in triples)
    report(9, "with is a product and plus a coproduct", bad == 0, f"{len(triples)} triples, {bad} failures")


def test_10_norms(report):
    fixed = (norm(TOP).value == 0 and not norm(ZERO).defined and norm(EQ2).value == 2
             and norm(CHAOS2).value == 1)
    fixed &= all(min_cover_size(x)[0] == norm(x).value for x in (TOP, ZERO, EQ2, CHAOS2))
    qualifying = monotone_fail = bound_fail = 0
    for a, b in small_pairs(600, seed=1010, size=3):
        for f in find_morphisms(a, b):
            monotone_fail += not check_norm_monotonicity(f)
        try:
            r = check_norm_bounds(a, b)
        except PreconditionUnmet:
            continue
        qualifying += 1
        bound_fail += not (r.ptensor_ok and r.seqcomp_ok)
    ok = fixed and qualifying >= 50 and monotone_fail == bound_fail == 0
    report(10, "norm values, monotonicity and bound chains", ok,
           f"{qualifying} qualifying pairs, {monotone_fail} monotonicity and {bound_fail} bound failures")


def _all_reductions(a, b):
    mq, na = len(b.questions), len(a.answers)
    out = []
    for minus in itertools.product(range(len(a.questions)), repeat=mq):
        for flat in itertools.product(range(len(b.answers)), repeat=na * mq):
            r = rd.Reduction(a, b, list(minus), np.array(flat, dtype=np.intp).reshape(na, mq))
            if rd.reduction_violation(r) is None:
                out.append(r)
    return out


def _all_dialectica(a, b):
    mq, na = len(b.questions), len(a.answers)
    for flat in itertools.product(range(len(a.questions)), repeat=mq * na):
        for plus in itertools.product(range(len(b.answers)), repeat=na):
            yield rd.DialecticaMorphism(a, b, np.array(flat, dtype=np.intp).reshape(mq, na), list(plus))


def test_11_kleisli_layer(report):
    objs = random_objects(80, seed=1111, max_questions=2, max_answers=2) + [EQ2, CHAOS2]
    failures = checked = 0
    for a, b, c, d in zip(objs, objs[1:], objs[2:], objs[3:]):
        unit, mult = rd.monad_alpha_structure(a)
        aa = cx.alpha(a)
        failures += compose(rd.alpha_unit(aa), mult) != identity(aa)
        failures += compose(cx.alpha_m(unit), mult) != identity(aa)
        failures += compose(rd.alpha_mult(aa), mult) != compose(cx.alpha_m(mult), mult)
        rab, rbc, rcd = _all_reductions(a, b), _all_reductions(b, c), _all_reductions(c, d)
        for r in rab:
            failures += rd.alpha_morphism_to_reduction(rd.reduction_to_alpha_morphism(r), b) != r
        for r1, r2, r3 in itertools.product(rab[:4], rbc[:4], rcd[:4]):
            checked += 1
            left = rd.kleisli_compose(rd.kleisli_compose(r1, r2), r3)
            failures += left != rd.kleisli_compose(r1, rd.kleisli_compose(r2, r3))
        for m in _all_dialectica(a, b):
            try:
                k = rd.dialectica_to_kappa_morphism(m)
            except ImplicationViolated:
                failures += rd.dialectica_violation(m) is None
                continue
            failures += rd.dialectica_violation(m) is not None or rd.kappa_morphism_to_dialectica(k, a) != m
    report(11, "reductions, monad laws and Dialectica maps", failures == 0,
           f"{len(objs) - 3} windows, {checked} composable triples, {failures} failures")


def test_12_coloring_demo(report):
    start = time.perf_counter()
    triangle = [(0, 1), (0, 2), (1, 2)]
    ok = True
    details = []
    for n in (3, 4):
        f = col.coloring_to_sat(n)
        cnf = col.encode_coloring(n, triangle)
        names = [col.variable(v, c) for v in range(n) for c in range(3)]
        oracle = brute_force_sat(names, cnf)
        # the satisfying answers according to the object itself
        sat = f.source
        row = sat.relation[sat.questions.index(col.cnf_element(cnf))]
        answers = [sat.answers[j] for j in np.flatnonzero(row)]
        decoded = {tuple(col.decode_assignment(n, [v[x] for x in names])) for v in oracle}
        via_morphism = set()
        for j in np.flatnonzero(row):
            colouring = f.target.answers[int(f.plus[j])]
            via_morphism.add(tuple(int(colouring(Atom(f"v{v}")).name[1]) for v in range(n)))
        proper = all(c[i] != c[j] for c in decoded | via_morphism for i, j in triangle)
        ok &= bool(oracle) and len(oracle) == len(answers) and proper and via_morphism == decoded
        details.append(f"n={n}: {len(oracle)} of {2 ** len(names)} assignments satisfy")
    k4_sat = bool(brute_force_sat([col.variable(v, c) for v in range(4) for c in range(3)],
                                  col.encode_coloring(4, col.all_edges(4))))
    elapsed = time.perf_counter() - start
    details.append(f"K4 {'satisfiable' if k4_sat else 'unsatisfiable'}, {elapsed:.1f}s")
    report(12, "colouring to SAT reduction", ok and not k4_sat and elapsed < 30, "; ".join(details))


def test_13_text_layer(report, capsys, tmp_path, monkeypatch):
    text = serialize_env(STANDARD)
    round_trip = parse_env(text) == STANDARD and serialize_env(parse_env(text)) == text
    monkeypatch.chdir(tmp_path)
    runs = []
    for argv, want in [
        (["eval", "--env", "std.pv", "--bind", "A=EQ2", "--sequent", "A, A^", "--mode", "2"], (0, "TRUE")),
        (["eval", "--env", "std.pv", "--bind", "A=EQ2", "--sequent", "A, A^", "--mode", "2",
          "--par", "provisional"], (1, "FALSE")),
        (["norm", "--env", "std.pv", "EQ2"], (0, "2")),
    ]:
        code = cli.main(argv)
        runs.append((code, capsys.readouterr().out.strip()) == want)
    report(13, "environment round trip and CLI examples", round_trip and all(runs),
           f"round trip {'ok' if round_trip else 'broken'}, {sum(runs)}/3 CLI examples")
