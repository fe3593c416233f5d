"""Separation, discrimination, distinguished opens and prime congruences.

On a finite algebra every finite family of unequal pairs is contained in the
family of *all* unequal pairs, and a single homomorphism separating that
family is an embedding.  So Sep_ω(K), Dis(K) and IS(K) coincide on finite
algebras; the functions below still compute each notion along its own
route so the collapse can be checked rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import all_subuniverses, enumerate_homs, is_in_IS, subalgebra
from .closure import irreducible_components, minimal_decomposition
from .congruence import Congruence, meet, quotient, unquotient
from .free import free_algebra
from .guards import ResourceError
from .spectrum import (
    is_reduced,
    is_spectrum_irreducible,
    isp_embedding,
    psi,
    rspec,
    spectrum,
    v_closed,
)


def separates(h, pairs):
    return all(h.map[a] != h.map[b] for a, b in pairs)


def unequal_pairs(a):
    return [(x, y) for x in range(a.size) for y in range(x + 1, a.size)]


def all_homs(a, K):
    return [h for b in K for h in enumerate_homs(a, b)]


def is_n_separated(a, K, family, homs=None):
    """First hom into K separating every pair of ``family``, or None."""
    homs = all_homs(a, K) if homs is None else homs
    return next((h for h in homs if separates(h, family)), None)


def separation_witnesses(a, K, homs=None):
    """Per unequal pair, the first separating hom (None when there is none)."""
    homs = all_homs(a, K) if homs is None else homs
    return {pair: is_n_separated(a, K, [pair], homs) for pair in unequal_pairs(a)}


def is_separated(a, K):
    """Membership in Res(K)."""
    return all(h is not None for h in separation_witnesses(a, K).values())


def is_in_Sep_omega(a, K):
    """n-separated for every finite family; by monotonicity the family of all
    unequal pairs decides it (the empty family still needs some hom)."""
    return is_n_separated(a, K, unequal_pairs(a)) is not None


def is_discriminated(a, K, max_subsets=2**16):
    """Every subset W has a hom into K injective on W (all subsets checked)."""
    if 2**a.size > max_subsets:
        raise ResourceError("too many subsets for the discrimination sweep")
    homs = all_homs(a, K)
    for m in range(2**a.size):
        W = [x for x in range(a.size) if m >> x & 1]
        if not any(len({h.map[x] for x in W}) == len(W) for h in homs):
            return False
    return True


def distinguished_open(s, a, b):
    """``D(a, b)``: points not containing (a, b)."""
    return frozenset(s.points) - v_closed(s, [(a, b)])


def complement_identity_holds(s, family):
    """⋂ D(a_i, b_i) = ∅  ⟺  ⋃ V(a_i, b_i) = Spec."""
    inter = frozenset(s.points)
    union = frozenset()
    for a, b in family:
        inter &= distinguished_open(s, a, b)
        union |= v_closed(s, [(a, b)])
    return (not inter) == (union == frozenset(s.points))


@dataclass
class IrreducibleReducedReport:
    irreducible_and_reduced: bool
    opens_intersect: bool
    sep_omega: bool
    discriminated: bool
    embeddable: bool

    @property
    def agree(self):
        vals = {self.irreducible_and_reduced, self.opens_intersect, self.sep_omega, self.discriminated, self.embeddable}
        return len(vals) == 1


def check_irreducible_reduced_equiv(a, K, s=None):
    s = s or spectrum(a, K)
    i = is_spectrum_irreducible(s) and is_reduced(s)
    inter = frozenset(s.points)
    for x, y in unequal_pairs(a):
        inter &= distinguished_open(s, x, y)
    return IrreducibleReducedReport(
        irreducible_and_reduced=i,
        opens_intersect=bool(inter),
        sep_omega=is_in_Sep_omega(a, K),
        discriminated=is_discriminated(a, K),
        embeddable=is_in_IS(a, K),
    )


class NotDistinguished(ValueError):
    pass


class NotRadical(ValueError):
    pass


def is_prime(s, theta):
    """θ is a point whose quotient is reduced with an irreducible spectrum."""
    if theta not in set(s.points):
        raise NotDistinguished(f"{theta!r} is not a point of the spectrum")
    q, _ = quotient(s.algebra, theta)
    sq = spectrum(q, s.K)
    return is_reduced(sq) and is_spectrum_irreducible(sq)


def prime_decomposition(s, theta):
    """ψ of each irreducible component of V(θ), computed on Spec(A/θ) and
    pulled back; the members meet to θ and are canonically ordered."""
    if theta not in set(rspec(s)):
        raise NotRadical(f"{theta!r} is not a radical congruence")
    q, _ = quotient(s.algebra, theta)
    sq = spectrum(q, s.K)
    comps = minimal_decomposition(sq.zariski)
    primes = sorted({unquotient(psi(sq, c), theta) for c in comps}, key=Congruence.sort_key)
    if meet(primes, s.algebra.size) != theta:
        raise AssertionError("prime decomposition does not meet back to theta")
    return primes


def prime_decomposition_direct(s, theta):
    """Same decomposition read off the induced subsystem on V(θ) of Spec A."""
    V = v_closed(s, sorted(theta.pairs))
    sub = s.zariski.restrict(V)
    return sorted({psi(s, c) for c in irreducible_components(sub)}, key=Congruence.sort_key)


# -- quasivarieties -----------------------------------------------------------

def _equation_masks(fa, alg):
    """For each unordered pair of free elements: (mask over K-coordinates,
    mask over assignments into ``alg``) where the equation holds."""
    from itertools import product as iproduct

    from .algebra import eval_term

    pts = list(iproduct(range(alg.size), repeat=len(fa.variables)))
    out = []
    for p in range(fa.base.size):
        for q in range(p + 1, fa.base.size):
            kmask = 0
            for c, v in enumerate(fa.vectors[p]):
                if v == fa.vectors[q][c]:
                    kmask |= 1 << c
            amask = 0
            tp, tq = fa.representatives[p], fa.representatives[q]
            for i, pt in enumerate(pts):
                env = dict(zip(fa.variables, pt))
                if eval_term(alg, tp, env) == eval_term(alg, tq, env):
                    amask |= 1 << i
            out.append((kmask, amask))
    return out, (1 << len(fa.coordinates)) - 1, (1 << len(pts)) - 1


def bounded_quasi_identity_check(a, K, max_vars=3, max_premises=3, budget=10**6):
    """Does every quasi-identity with at most ``max_premises`` premises over at
    most ``max_vars`` variables that holds in K also hold in ``a``?

    Terms range over representatives of ``F_{V(K)}(x_1..x_n)``.  Premise sets
    are explored through the reachable pairs of satisfaction masks, which is
    exact and much smaller than the raw premise combinations.  The number of
    variables is lowered until the model-check cost fits ``budget``.
    """
    from .free import default_variables

    for n in range(max_vars, -1, -1):
        try:
            fa = free_algebra(K, default_variables(n))
        except (ResourceError, ValueError):
            continue
        eqs_n = fa.base.size * (fa.base.size - 1) // 2
        if eqs_n * (len(fa.coordinates) + a.size**n) <= budget:
            break
    else:
        return True, 0
    masks, kfull, afull = _equation_masks(fa, a)
    states = {(kfull, afull)}
    frontier = set(states)
    for _ in range(max_premises):
        new = set()
        for km, am in frontier:
            for ek, ea in masks:
                st = (km & ek, am & ea)
                if st not in states:
                    new.add(st)
        states |= new
        frontier = new
    for km, am in states:
        for ek, ea in masks:
            if km & ~ek == 0 and am & ~ea != 0:
                return False, n
    return True, n


def is_in_Q(a, K, cross_check=True):
    """Q(K) membership, decided as ISP(K) membership (reduced); optionally
    cross-checked against the bounded quasi-identity transfer."""
    verdict = is_reduced(spectrum(a, K))
    if cross_check:
        bounded, _ = bounded_quasi_identity_check(a, K)
        if bounded != verdict and verdict:
            raise AssertionError("reduced algebra violates a quasi-identity of K")
    return verdict


def is_in_local_closure(a, predicate):
    """``predicate`` holds on every (finitely generated = every) subalgebra."""
    for sub in all_subuniverses(a):
        alg, _ = subalgebra(a, sub)
        if not predicate(alg):
            return False
    return True


@dataclass
class QuasivarietyReport:
    in_Q_bounded: bool
    in_ISP: bool
    reduced: bool
    separated: bool
    variables_used: int

    @property
    def agree(self):
        return len({self.in_Q_bounded, self.in_ISP, self.reduced, self.separated}) == 1


def check_quasivariety_equivalences(a, K):
    q, n = bounded_quasi_identity_check(a, K)
    return QuasivarietyReport(
        in_Q_bounded=q,
        in_ISP=isp_embedding(a, K) is not None,
        reduced=is_reduced(spectrum(a, K)),
        separated=is_separated(a, K),
        variables_used=n,
    )


@dataclass
class SeparationReport:
    algebra: str
    K: list
    witnesses: dict = field(default_factory=dict)  # "a,b" -> map or None
    separated: bool = False
    sep_omega_witness: list = None
    sep_omega: bool = False
    discriminated: bool = False
    embeddable: bool = False

    def to_dict(self):
        return {
            "algebra": self.algebra,
            "class": list(self.K),
            "separated": self.separated,
            "pair_witnesses": self.witnesses,
            "sep_omega": self.sep_omega,
            "sep_omega_witness": self.sep_omega_witness,
            "discriminated": self.discriminated,
            "embeddable": self.embeddable,
        }


def separation_report(a, K):
    homs = all_homs(a, K)
    wit = separation_witnesses(a, K, homs)
    full = is_n_separated(a, K, unequal_pairs(a), homs)
    rep = SeparationReport(
        algebra=a.name,
        K=[b.name for b in K],
        witnesses={f"{x},{y}": (None if h is None else {"target": h.target.name, "map": list(h.map)}) for (x, y), h in wit.items()},
        separated=all(h is not None for h in wit.values()),
        sep_omega_witness=None if full is None else list(full.map),
        sep_omega=full is not None,
        discriminated=is_discriminated(a, K),
        embeddable=is_in_IS(a, K),
    )
    for (x, y), h in wit.items():
        if h is not None and not separates(h, [(x, y)]):
            raise AssertionError("witness fails to separate its pair")
    return rep
