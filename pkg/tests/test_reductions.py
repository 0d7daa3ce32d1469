import numpy as np
import pytest
from hypothesis import given, strategies as st

from strategies import pv_objects

from pvlab import connectives as cx
from pvlab import reductions as rd
from pvlab.core import compose, identity, validate_morphism
from pvlab.elements import FunGraph
from pvlab.errors import ImplicationViolated, NotTotal, ObjectMismatch, RangeEscape
from pvlab.fixtures import CHAOS2, EQ2, ONE, a0, a1, q0, q1
from pvlab.search import find_morphisms


def constant_minus_reduction():
    """Every EQ2 question is reduced to q0, then answered by matching b."""
    plus = {(w, b): (a0 if b == q0 else a1) for w in (a0, a1) for b in (q0, q1)}
    return rd.make_reduction(EQ2, EQ2, {q0: q0, q1: q0}, plus)


def random_reduction(data, a, b):
    minus = [data.draw(st.integers(0, len(a.questions) - 1)) for _ in b.questions] if a.questions else []
    if b.questions and not a.questions:
        return None
    if a.answers and b.questions and not b.answers:
        return None
    plus = np.array([[data.draw(st.integers(0, len(b.answers) - 1)) for _ in b.questions] for _ in a.answers],
                    dtype=np.intp).reshape(len(a.answers), len(b.questions))
    r = rd.Reduction(a, b, minus, plus)
    return r if rd.reduction_violation(r) is None else None


def loop_reduction_ok(r):
    return all(not r.source.is_correct(r.source.questions[r.minus[bi]], w)
               or r.target.is_correct(b, r.target.answers[r.plus[wi, bi]])
               for bi, b in enumerate(r.target.questions) for wi, w in enumerate(r.source.answers))


# -- reductions --------------------------------------------------------------------------

def test_constant_minus_reduction_is_valid_but_no_such_morphism_exists():
    r = constant_minus_reduction()
    assert rd.reduction_violation(r) is None
    assert not [m for m in find_morphisms(EQ2, EQ2) if m.minus.tolist() == [0, 0]]


def test_wrong_witness_reports_least_violation():
    plus = {(w, b): a1 for w in (a0, a1) for b in (q0, q1)}
    r = rd.make_reduction(EQ2, EQ2, {q0: q0, q1: q0}, plus)
    assert rd.reduction_violation(r) == (q0, a0)
    with pytest.raises(ImplicationViolated):
        rd.validate_reduction(r)


def test_partial_reduction_maps():
    with pytest.raises(NotTotal):
        rd.make_reduction(EQ2, EQ2, {q0: q0}, {})
    with pytest.raises(RangeEscape):
        rd.Reduction(EQ2, EQ2, [0, 5], np.zeros((2, 2)))


@given(pv_objects(2), pv_objects(2), st.data())
def test_vectorized_validity_matches_loops(a, b, data):
    if b.questions and not a.questions or a.answers and b.questions and not b.answers:
        return
    minus = [data.draw(st.integers(0, len(a.questions) - 1)) for _ in b.questions]
    plus = [[data.draw(st.integers(0, len(b.answers) - 1)) for _ in b.questions] for _ in a.answers]
    r = rd.Reduction(a, b, minus, np.array(plus, dtype=np.intp).reshape(len(a.answers), len(b.questions)))
    assert (rd.reduction_violation(r) is None) == loop_reduction_ok(r)


@given(pv_objects(2), pv_objects(2))
def test_lifted_morphisms_are_reductions(a, b):
    for f in find_morphisms(a, b):
        assert rd.reduction_violation(rd.Reduction.from_morphism(f)) is None


def test_identity_lift_is_the_monad_unit():
    for a in (EQ2, CHAOS2, ONE):
        assert rd.reduction_to_alpha_morphism(rd.Reduction.identity(a)) == rd.alpha_unit(a)


def test_constant_minus_reduction_as_alpha_morphism():
    m = rd.reduction_to_alpha_morphism(constant_minus_reduction())
    assert m.target == cx.alpha(EQ2)
    matcher = FunGraph.from_dict({q0: a0, q1: a1})
    assert set(m.plus_map.values()) == {matcher}


@given(pv_objects(2), pv_objects(2), st.data())
def test_reduction_alpha_round_trip(a, b, data):
    r = random_reduction(data, a, b)
    if r is None:
        return
    m = rd.reduction_to_alpha_morphism(r)
    assert rd.alpha_morphism_to_reduction(m, b) == r


@given(pv_objects(2), pv_objects(2), st.data())
def test_reduction_validity_is_alpha_validity(a, b, data):
    if b.questions and not a.questions or a.answers and b.questions and not b.answers:
        return
    minus = [data.draw(st.integers(0, len(a.questions) - 1)) for _ in b.questions]
    plus = np.array([[data.draw(st.integers(0, len(b.answers) - 1)) for _ in b.questions] for _ in a.answers],
                    dtype=np.intp).reshape(len(a.answers), len(b.questions))
    r = rd.Reduction(a, b, minus, plus)
    try:
        rd.reduction_to_alpha_morphism(r)
        as_morphism = True
    except ImplicationViolated:
        as_morphism = False
    assert as_morphism == (rd.reduction_violation(r) is None)


# -- Kleisli composition ------------------------------------------------------------------------

def test_kleisli_identity_laws_on_fixture():
    r = constant_minus_reduction()
    ident = rd.Reduction.identity(EQ2)
    assert rd.kleisli_compose(ident, r) == r
    assert rd.kleisli_compose(r, ident) == r
    rr = rd.kleisli_compose(r, r)
    assert rd.reduction_violation(rr) is None


def test_kleisli_mismatch():
    with pytest.raises(ObjectMismatch):
        rd.kleisli_compose(rd.Reduction.identity(EQ2), rd.Reduction.identity(ONE))


@given(pv_objects(2), pv_objects(2), pv_objects(2), pv_objects(2), st.data())
def test_kleisli_associativity_and_monad_agreement(a, b, c, d, data):
    r1, r2, r3 = random_reduction(data, a, b), random_reduction(data, b, c), random_reduction(data, c, d)
    if None in (r1, r2, r3):
        return
    left = rd.kleisli_compose(rd.kleisli_compose(r1, r2), r3)
    right = rd.kleisli_compose(r1, rd.kleisli_compose(r2, r3))
    assert left == right
    assert rd.reduction_violation(left) is None
    via = rd.kleisli_compose_via_monad(r1, r2)
    assert via == rd.reduction_to_alpha_morphism(rd.kleisli_compose(r1, r2))


# -- the monad ------------------------------------------------------------------------------

@given(pv_objects(2))
def test_monad_laws(a):
    unit, mult = rd.monad_alpha_structure(a)
    aa = cx.alpha(a)
    assert compose(rd.alpha_unit(aa), mult) == identity(aa)
    assert compose(cx.alpha_m(unit), mult) == identity(aa)
    assert compose(rd.alpha_mult(aa), mult) == compose(cx.alpha_m(mult), mult)


def test_unit_at_eq2_validates_by_loop():
    u = rd.alpha_unit(EQ2)
    assert all(not EQ2.is_correct(u.minus_map[b], w) or u.target.is_correct(b, u.plus_map[w])
               for b in u.target.questions for w in EQ2.answers)


@given(pv_objects(2), pv_objects(2))
def test_alpha_is_a_functor(a, b):
    assert cx.alpha_m(identity(a)) == identity(cx.alpha(a))
    for f in find_morphisms(a, b, limit=4):
        for g in find_morphisms(b, a, limit=4):
            assert cx.alpha_m(compose(f, g)) == compose(cx.alpha_m(f), cx.alpha_m(g))


# -- Dialectica morphisms --------------------------------------------------------------------

def test_dialectica_lift_and_round_trip():
    for f in find_morphisms(EQ2, EQ2):
        m = rd.DialecticaMorphism.from_morphism(f)
        assert rd.dialectica_violation(m) is None
        k = rd.dialectica_to_kappa_morphism(m)
        assert rd.kappa_morphism_to_dialectica(k, EQ2) == m


def test_dialectica_wrong_plus_is_reported():
    m = rd.DialecticaMorphism(EQ2, EQ2, [[0, 1], [0, 1]], [1, 0])
    assert rd.dialectica_violation(m) == (q0, a0)
    with pytest.raises(ImplicationViolated):
        rd.validate_dialectica(m)


def test_dialectica_allows_a_constant_plus_map():
    """Seeing the answer lets the minus map dodge q1, which no plain morphism can."""
    m = rd.DialecticaMorphism(EQ2, EQ2, [[0, 1], [1, 0]], [0, 0])
    assert rd.dialectica_violation(m) is None
    assert not [f for f in find_morphisms(EQ2, EQ2) if f.plus.tolist() == [0, 0]]


@given(pv_objects(2), pv_objects(2), st.data())
def test_dialectica_validity_is_kappa_validity(a, b, data):
    if b.questions and a.answers and not a.questions or a.answers and not b.answers:
        return
    nq = len(a.questions)
    minus = [[data.draw(st.integers(0, nq - 1)) for _ in a.answers] for _ in b.questions]
    plus = [data.draw(st.integers(0, len(b.answers) - 1)) for _ in a.answers]
    m = rd.DialecticaMorphism(a, b, np.array(minus, dtype=np.intp).reshape(len(b.questions), len(a.answers)), plus)
    try:
        k = rd.dialectica_to_kappa_morphism(m)
        ok = True
    except ImplicationViolated:
        ok = False
    assert ok == (rd.dialectica_violation(m) is None)
    if ok:
        assert rd.kappa_morphism_to_dialectica(k, a) == m


def test_alpha_morphism_needs_matching_target():
    m = validate_morphism(EQ2, EQ2, {q0: q0, q1: q1}, {a0: a0, a1: a1})
    with pytest.raises(ObjectMismatch):
        rd.alpha_morphism_to_reduction(m, EQ2)
