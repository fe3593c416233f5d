from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from kspectra.algebra import enumerate_homs, identity
from kspectra.congruence import (
    Congruence,
    NotACongruence,
    all_congruences,
    all_congruences_exhaustive,
    congruence_closure,
    is_congruence,
    join,
    kernel,
    leq,
    meet,
    quotient,
    quotient_congruence,
    serialize,
    set_partitions,
    unquotient,
)
from kspectra.fixtures import B2xB2, C2, C2xC2, C3, TRIVIAL_SL, boolean_fixtures, semilattice_fixtures, small_magmas

T1 = Congruence.from_blocks([[0, 1], [2]])
T2 = Congruence.from_blocks([[0], [1, 2]])
FIXTURES = semilattice_fixtures(4) + small_magmas(2) + boolean_fixtures()


def test_closure_examples():
    assert congruence_closure(C3, [(1, 2)]) == T2
    assert congruence_closure(C3, [(0, 2)]) == Congruence.total(3)
    assert congruence_closure(C3, []) == Congruence.diagonal(3)


def test_all_congruences_examples():
    assert all_congruences(C3) == [Congruence.diagonal(3), T1, T2, Congruence.total(3)]
    assert all_congruences(C2) == [Congruence.diagonal(2), Congruence.total(2)]
    assert len(all_congruences(TRIVIAL_SL)) == 1


def test_kernel_examples():
    hom_001 = enumerate_homs(C3, C2)[1]
    assert kernel(hom_001) == T1
    assert kernel(identity(C3)).is_diagonal
    assert kernel(enumerate_homs(C3, C2)[0]).is_total


def test_lattice_operations():
    assert meet([T1, T2]) == Congruence.diagonal(3)
    assert join(C3, [T1, T2]) == Congruence.total(3)
    assert meet([], 3) == Congruence.total(3)
    assert leq(Congruence.diagonal(3), T1) and not leq(T1, T2)


def test_quotient_congruence_examples():
    assert quotient_congruence(T1, Congruence.diagonal(3)) == T1
    assert quotient_congruence(Congruence.total(3), T1).is_total
    with pytest.raises(NotACongruence):
        quotient_congruence(T2, T1)


def test_unquotient_inverts():
    for psi in all_congruences(C3):
        q, _ = quotient(C3, psi)
        for phi in all_congruences(q):
            assert quotient_congruence(unquotient(phi, psi), psi) == phi


def test_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(1, 6)] == [1, 2, 5, 15, 52]


@pytest.mark.parametrize("alg", FIXTURES, ids=lambda a: a.name)
def test_join_closure_matches_exhaustive(alg):
    if alg.size > 8:
        pytest.skip("exhaustive partitions only up to 8 elements")
    assert all_congruences(alg) == all_congruences_exhaustive(alg)


@pytest.mark.parametrize("alg", [C3, C2xC2, B2xB2], ids=lambda a: a.name)
def test_closure_is_least_congruence(alg):
    cons = all_congruences_exhaustive(alg)
    pairs = [(a, b) for a in range(alg.size) for b in range(a + 1, alg.size)]
    for r in (1, 2):
        for S in combinations(pairs, r):
            theta = congruence_closure(alg, S)
            above = [c for c in cons if all(c.related(a, b) for a, b in S)]
            assert theta == meet(above, alg.size)


def test_serialize_is_blocks():
    assert serialize(T1) == [[0, 1], [2]]
    assert str(T1) == "01|2"


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=4))
def test_closure_properties(pairs):
    theta = congruence_closure(C2xC2, pairs)
    assert is_congruence(C2xC2, theta)
    assert all(theta.related(a, b) for a, b in pairs)
    # idempotent and monotone
    assert congruence_closure(C2xC2, sorted(theta.pairs)) == theta
    assert leq(congruence_closure(C2xC2, pairs[:1]), theta)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(all_congruences(C2xC2)), st.sampled_from(all_congruences(C2xC2)))
def test_meet_join_absorption(a, b):
    assert meet([a, join(C2xC2, [a, b])]) == a
    assert join(C2xC2, [a, meet([a, b])]) == a
    assert leq(meet([a, b]), a) and leq(a, join(C2xC2, [a, b]))
