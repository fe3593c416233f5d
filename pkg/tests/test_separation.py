import pytest

from kspectra.algebra import enumerate_homs, is_in_IS
from kspectra.congruence import Congruence, meet
from kspectra.fixtures import B2, B2xB2, C2, C2xC2, C3, K3, TRIVIAL_BA, boolean_fixtures, semilattice_fixtures
from kspectra.separation import (
    NotDistinguished,
    NotRadical,
    bounded_quasi_identity_check,
    check_irreducible_reduced_equiv,
    check_quasivariety_equivalences,
    distinguished_open,
    is_discriminated,
    is_in_local_closure,
    is_in_Q,
    is_in_Sep_omega,
    is_n_separated,
    is_prime,
    is_separated,
    prime_decomposition,
    separates,
    separation_report,
)
from kspectra.spectrum import is_in_ISP, rspec, spectrum

T1 = Congruence.from_blocks([[0, 1], [2]])
T2 = Congruence.from_blocks([[0], [1, 2]])
NABLA3 = Congruence.total(3)


@pytest.fixture(scope="module")
def c3():
    return spectrum(C3, [C2])


def test_separates_examples():
    h = enumerate_homs(C3, C2)[1]
    assert h.map == (0, 0, 1)
    assert separates(h, [(1, 2)])
    assert not separates(h, [(0, 1)])
    assert separates(h, [])


def test_separation_verdicts():
    assert is_separated(C3, [C2])
    assert is_n_separated(C3, [C2], [(0, 1), (1, 2)]) is None
    assert is_in_Sep_omega(C2, [C2]) and is_discriminated(C2, [C2])


def test_distinguished_opens(c3):
    assert distinguished_open(c3, 0, 1) == {T2}
    assert distinguished_open(c3, 1, 1) == frozenset()
    assert distinguished_open(c3, 0, 2) == {T1, T2}


def test_four_way_examples():
    assert check_irreducible_reduced_equiv(C2, [C2]).irreducible_and_reduced
    rep = check_irreducible_reduced_equiv(C3, [C2])
    assert rep.agree and not rep.irreducible_and_reduced
    rep = check_irreducible_reduced_equiv(B2xB2, [B2])
    assert rep.agree and not rep.irreducible_and_reduced


def test_prime_examples(c3):
    assert is_prime(c3, T1) and is_prime(c3, NABLA3)
    b = spectrum(B2xB2, [B2])
    assert is_prime(b, Congruence.from_blocks([[0, 1], [2, 3]]))
    with pytest.raises(NotDistinguished):
        is_prime(c3, Congruence.diagonal(3))


def test_prime_decomposition_examples(c3):
    dec = prime_decomposition(c3, Congruence.diagonal(3))
    assert dec == [T1, T2] and meet(dec) == Congruence.diagonal(3)
    assert prime_decomposition(c3, T1) == [T1]
    b = spectrum(B2xB2, [B2])
    assert prime_decomposition(b, Congruence.diagonal(4)) == sorted(b.points, key=Congruence.sort_key)


def test_prime_decomposition_rejects_non_radical():
    s = spectrum(K3, [B2])
    assert Congruence.diagonal(3) not in rspec(s)
    with pytest.raises(NotRadical):
        prime_decomposition(s, Congruence.diagonal(3))


def test_quasivariety_examples():
    assert is_in_Q(C3, [C2])
    assert is_in_Q(C2xC2, [C2])
    assert bounded_quasi_identity_check(C3, [C2])[0]
    # the one-element Boolean algebra embeds in the empty product
    assert is_in_Q(TRIVIAL_BA, [B2]) == is_in_ISP(TRIVIAL_BA, [B2])


@pytest.mark.parametrize(
    "a,K",
    [(a, [C2]) for a in semilattice_fixtures(4)] + [(a, [B2]) for a in boolean_fixtures()],
    ids=lambda v: getattr(v, "name", None),
)
def test_equivalences_agree(a, K):
    assert check_irreducible_reduced_equiv(a, K).agree
    assert check_quasivariety_equivalences(a, K).agree
    assert is_in_Sep_omega(a, K) == is_discriminated(a, K) == is_in_IS(a, K)


def test_local_closure():
    assert is_in_local_closure(C2xC2, lambda sub: is_in_ISP(sub, [C2]))
    assert not is_in_local_closure(C3, lambda sub: is_in_IS(sub, [C2]))


def test_report_witnesses_recheck():
    rep = separation_report(C3, [C2])
    d = rep.to_dict()
    assert d["separated"] and not d["sep_omega"]
    for key, w in d["pair_witnesses"].items():
        x, y = map(int, key.split(","))
        assert w is not None and w["map"][x] != w["map"][y]
