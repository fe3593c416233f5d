import pytest
from hypothesis import given, settings, strategies as st

from kspectra.algebra import Homomorphism, enumerate_homs, identity, is_isomorphic
from kspectra.closure import is_morphism
from kspectra.congruence import Congruence, all_congruences, congruence_closure, quotient
from kspectra.fixtures import B2, B2xB2, C2, C2xC2, C3, TRIVIAL_BA, semilattice_fixtures
from kspectra.spectrum import (
    closed_subset_as_spectrum,
    coherence_violations,
    induced_map,
    is_in_fundamental_class,
    is_in_ISP,
    is_radical_congruence,
    is_reduced,
    nilradical,
    psi,
    quotient_coherence_violations,
    radical,
    reduction,
    rspec,
    spec_points_by_embedding,
    spectrum,
    sqrt_spec,
    v_closed,
    zariski_closure,
)

DELTA3, NABLA3 = Congruence.diagonal(3), Congruence.total(3)
T1 = Congruence.from_blocks([[0, 1], [2]])
T2 = Congruence.from_blocks([[0], [1, 2]])


@pytest.fixture(scope="module")
def c3():
    return spectrum(C3, [C2])


@pytest.fixture(scope="module")
def b22():
    return spectrum(B2xB2, [B2])


def test_points(c3, b22):
    assert c3.points == (T1, T2, NABLA3)
    assert spectrum(C2, [C2]).points == (Congruence.diagonal(2), Congruence.total(2))
    pi1 = Congruence.from_blocks([[0, 1], [2, 3]])
    pi2 = Congruence.from_blocks([[0, 2], [1, 3]])
    assert set(b22.points) == {pi1, pi2}
    assert b22.zariski.is_closed(set())


def test_v_closed(c3):
    assert v_closed(c3, [(0, 1)]) == {T1, NABLA3}
    assert v_closed(c3, []) == set(c3.points)
    assert v_closed(c3, [(0, 2)]) == {NABLA3}


def test_psi(c3):
    assert psi(c3, {T1, NABLA3}) == T1
    assert psi(c3, set(c3.points)) == DELTA3
    assert psi(c3, set()) == NABLA3


def test_radical_and_reduction(c3, b22):
    assert radical(c3, congruence_closure(C3, [(0, 1)])) == T1
    assert nilradical(c3) == DELTA3
    red, proj = reduction(c3)
    assert is_isomorphic(red, C3)
    assert radical(b22, Congruence.total(4)).is_total


def test_rspec(c3):
    assert set(rspec(c3)) == {T1, T2, DELTA3, NABLA3}
    assert rspec(spectrum(C2, [C2])) == [Congruence.diagonal(2), Congruence.total(2)]
    # one-point spectrum of B2 over B2: radical congruences are the point and ∇
    one = spectrum(B2, [B2])
    assert one.points == (Congruence.diagonal(2),)
    assert rspec(one) == [Congruence.diagonal(2), Congruence.total(2)]


def test_radical_congruences(c3):
    assert is_radical_congruence(c3, DELTA3)
    assert is_radical_congruence(c3, congruence_closure(C3, [(0, 2)]))
    assert rspec(sqrt_spec(c3)) == rspec(c3)


def test_membership_examples():
    assert not is_in_fundamental_class(C3, [C2]) and is_in_ISP(C3, [C2])
    assert is_in_fundamental_class(C2, [C2]) and is_in_ISP(C2, [C2])
    assert not is_in_fundamental_class(TRIVIAL_BA, [B2])
    # empty spectrum, but on a one-element algebra ∇ = Δ: it embeds in the empty product
    assert is_in_ISP(TRIVIAL_BA, [B2])


def test_induced_map_examples(c3):
    f = Homomorphism(C2, C3, (0, 2))
    m = induced_map(f, [C2], spectrum(C2, [C2]), c3)
    assert m.map == {T1: Congruence.diagonal(2), T2: Congruence.diagonal(2), NABLA3: Congruence.total(2)}
    idm = induced_map(identity(C3), [C2], c3, c3)
    assert all(k == v for k, v in idm.map.items())
    q, proj = quotient(C3, T1)
    g = induced_map(proj, [C2], c3, spectrum(q, [C2]))
    assert set(g.map.values()) == {T1, NABLA3}
    assert is_morphism(g)


def test_closed_subset_examples(c3):
    sq, bij = closed_subset_as_spectrum(c3, {T1, NABLA3})
    assert len(sq.points) == 2 and set(bij.values()) == {T1, NABLA3}
    full, _ = closed_subset_as_spectrum(c3, set(c3.points))
    assert len(full.points) == 3
    single, _ = closed_subset_as_spectrum(c3, {NABLA3})
    assert single.algebra.size == 1 and len(single.points) == 1


@pytest.mark.parametrize("alg", semilattice_fixtures(4), ids=lambda a: a.name)
def test_kernels_match_embedding_oracle(alg):
    assert set(spectrum(alg, [C2]).points) == set(spec_points_by_embedding(alg, [C2]))
    assert set(spectrum(alg, [C2, C3]).points) == set(spec_points_by_embedding(alg, [C2, C3]))


@pytest.mark.parametrize("alg", semilattice_fixtures(4) + [B2xB2], ids=lambda a: a.name)
def test_coherence(alg):
    K = [B2] if alg is B2xB2 else [C2]
    assert not quotient_coherence_violations(spectrum(alg, K))
    for b in K:
        for h in enumerate_homs(alg, b):
            assert not coherence_violations(h, K)


@settings(max_examples=50, deadline=None)
@given(st.sets(st.integers(0, 3)))
def test_galois_connection_on_c2_squared(idx):
    s = spectrum(C2xC2, [C2])
    X = {s.points[i] for i in idx}
    assert X <= v_closed(s, sorted(psi(s, X).pairs))
    assert v_closed(s, sorted(psi(s, X).pairs)) == zariski_closure(s, X)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(all_congruences(C2xC2)))
def test_radical_is_extensive_and_idempotent(theta):
    s = spectrum(C2xC2, [C2])
    r = radical(s, theta)
    assert all(r.related(a, b) for a, b in theta.pairs)
    assert radical(s, r) == r
    assert is_reduced(s)
