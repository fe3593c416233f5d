from itertools import product as iproduct

import pytest
from hypothesis import given, settings, strategies as st

from kspectra.algebra import eval_term, is_homomorphism
from kspectra.closure import is_quasi_isomorphism
from kspectra.congruence import Congruence
from kspectra.fixtures import B2, C2, C3
from kspectra.free import (
    algebraic_set,
    alpha_map,
    check_noetherian_equivalences,
    check_nullstellensatz2,
    counterexample,
    disjunctive_systems,
    entails,
    finite_subsystem,
    free_algebra,
    free_equations,
    minimum_subsystem,
    v_disjunctive,
)
from kspectra.spectrum import psi, v_closed
from kspectra.terms import DisjunctiveSystem, format_term, parse_equation, parse_equations

SL = C2.signature
XY = ("x", "y")


def eqs(text, sig=SL):
    return list(parse_equations(text, sig))


@pytest.fixture(scope="module")
def fxy():
    return free_algebra([C2], XY)


def test_free_algebra_sizes(fxy):
    assert [format_term(t) for t in free_algebra([C2], ("x",)).representatives] == ["x"]
    assert [format_term(t) for t in fxy.representatives] == ["x", "y", "(meet x y)"]
    assert free_algebra([B2], ()).base.size == 2
    assert free_algebra([B2], ("x",)).base.size == 4


def test_free_algebra_empty_without_constants():
    with pytest.raises(ValueError):
        free_algebra([C2], ())


def test_universal_property(fxy):
    # every map {x, y} -> C2 extends to exactly one hom F -> C2
    for vals in iproduct(range(2), repeat=2):
        ext = [
            m for m in iproduct(range(2), repeat=fxy.base.size)
            if is_homomorphism(fxy.base, C2, m) and (m[0], m[1]) == vals
        ]
        assert ext == [fxy.evaluation(0, vals).map]


def test_entails_examples():
    assert entails([C2], eqs("x = y"), eqs("(meet x y) = x"), XY)
    assert not entails([C2], [], eqs("x = y"), XY)
    assert counterexample([C2], [], eqs("x = y"), XY) is not None
    assert entails([C2], eqs("x = (meet x y), y = (meet x y)"), eqs("x = y"), XY)


def test_v_disjunctive_examples(fxy):
    s = fxy.spectrum
    theta1 = Congruence.from_blocks([[0, 2], [1]])
    theta2 = Congruence.from_blocks([[0], [1, 2]])
    nabla = Congruence.total(3)
    assert v_disjunctive(fxy, DisjunctiveSystem.parse("x = (meet x y)", SL)) == {theta1, nabla}
    assert v_disjunctive(fxy, DisjunctiveSystem.parse("x = y | y = (meet x y)", SL)) == {theta2, nabla}
    assert v_disjunctive(fxy, DisjunctiveSystem(())) == set(s.points)


def test_nullstellensatz2_examples(fxy):
    assert tuple(check_nullstellensatz2([C2], XY, eqs("x = y"), eqs("(meet x y) = x"))) == (True, True, True)
    assert tuple(check_nullstellensatz2([C2], XY, [], eqs("x = y"))) == (False, False, True)
    both = eqs("x = (meet x y), y = (meet x y)")
    assert tuple(check_nullstellensatz2([C2], XY, both, eqs("x = y"))) == (True, True, True)


def test_finite_subsystem_examples():
    T = eqs("x = y, y = x, (meet x y) = x")
    assert finite_subsystem([C2], XY, T) == T[:1]
    assert finite_subsystem([C2], ("x",), eqs("x = x")) == []
    one = eqs("x = (meet x y)")
    assert finite_subsystem([C2], XY, one) == one


def test_greedy_against_exhaustive_minimum(fxy):
    pool = free_equations(fxy)
    for start in range(0, len(pool) - 4, 2):
        T = pool[start:start + 5]
        greedy = finite_subsystem([C2], XY, T)
        best = minimum_subsystem([C2], XY, T)
        assert len(best) <= len(greedy)
        assert entails([C2], greedy, T, XY) and entails([C2], T, greedy, XY)


def test_noetherian_reports():
    rep = check_noetherian_equivalences([C2], XY)
    assert rep.holds and rep.zariski_chain == 3
    rep = check_noetherian_equivalences([B2], ("x",))
    assert rep.holds and rep.free_size == 4
    assert check_noetherian_equivalences([B2], ()).holds


def test_algebraic_sets():
    bsig = B2.signature
    assert algebraic_set(B2, 1, [parse_equation("x = (neg x)", bsig)]) == frozenset()
    assert algebraic_set(C2, 2, eqs("(meet x y) = x")) == {(0, 0), (0, 1), (1, 1)}
    assert algebraic_set(C2, 1, []) == {(0,), (1,)}


def test_alpha_examples():
    alpha, fa = alpha_map(C2, 1)
    assert alpha.map[(0,)] == alpha.map[(1,)] == Congruence.total(1)
    alpha, fa = alpha_map(C2, 2)
    assert is_quasi_isomorphism(alpha)
    V = v_closed(fa.spectrum, [fa.pair_of(parse_equation("x = (meet x y)", SL))])
    assert alpha.preimage(V) == {(0, 0), (0, 1), (1, 1)}
    assert psi(fa.spectrum, alpha.image(set())).is_total


@pytest.mark.parametrize("a", [C2, C3], ids=lambda a: a.name)
def test_term_evaluation_matches_free_vectors(a):
    fa = free_algebra([a], XY)
    for i, t in enumerate(fa.representatives):
        for c, (k, vals) in enumerate(fa.coordinates):
            assert eval_term(a, t, dict(zip(XY, vals))) == fa.vectors[i][c]


SYSTEMS = disjunctive_systems(free_equations(free_algebra([C2], XY)), 2, 2)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SYSTEMS), st.sampled_from(SYSTEMS))
def test_inclusion_is_entailment(S1, S2):
    assert check_nullstellensatz2([C2], XY, S1, S2).agree
