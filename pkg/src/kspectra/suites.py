"""Per-instance theorem suites behind ``check-all``.

Each suite takes ``(A, K)``, runs exhaustive (or, where the input is large,
deterministically bounded) checks and returns a ``SuiteResult``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebra import enumerate_homs, identity
from .closure import (
    ClosureMorphism,
    is_irreducible,
    is_irreducible_nary,
    is_irreducible_prebasis,
    is_morphism,
    irreducible_components,
    longest_chain,
    minimal_decomposition,
    satisfies_dcc,
    topologize,
)
from .congruence import (
    Congruence,
    all_congruences,
    congruence_closure,
    leq,
    preimage,
    quotient,
    quotient_congruence,
    serialize,
    unquotient,
)
from .guards import ResourceError
from .separation import (
    check_irreducible_reduced_equiv,
    check_quasivariety_equivalences,
    complement_identity_holds,
    is_prime,
    prime_decomposition,
    prime_decomposition_direct,
    unequal_pairs,
)
from .spectrum import (
    closed_subset_as_spectrum,
    induced_map,
    is_reduced,
    isp_embedding,
    nilradical,
    psi,
    radical,
    rspec,
    spec_points_by_embedding,
    spectrum,
    sqrt_spec,
    v_closed,
    zariski_closure,
)

SUBSET_BUDGET = 2**12


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checks: int = 0
    counterexample: str = None
    details: dict = field(default_factory=dict)

    def check(self, ok, witness):
        self.checks += 1
        if not ok and self.passed:
            self.passed = False
            self.counterexample = witness() if callable(witness) else str(witness)
        return ok

    def to_dict(self):
        d = {"name": self.name, "passed": self.passed, "checks": self.checks}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.details:
            d["details"] = self.details
        return d


def point_subsets(s):
    pts = list(s.points)
    if 2 ** len(pts) <= SUBSET_BUDGET:
        for m in range(2 ** len(pts)):
            yield frozenset(p for i, p in enumerate(pts) if m >> i & 1)
    else:
        for c in s.zariski.closed:
            yield s.subset(c)


def pair_sets(alg):
    """All pair sets of size <= 2 (all of A² when A is tiny)."""
    n = alg.size
    pairs = [(a, b) for a in range(n) for b in range(n)]
    if 2 ** len(pairs) <= SUBSET_BUDGET:
        for m in range(2 ** len(pairs)):
            yield [p for i, p in enumerate(pairs) if m >> i & 1]
        return
    yield []
    for p in pairs:
        yield [p]
    for p, q in combinations(pairs, 2):
        yield [p, q]


def suite_coherence(A, K, s, con):
    r = SuiteResult("coherence_axioms")
    pts = set(s.points)
    for theta in con:
        q, proj = quotient(A, theta)
        sq = spectrum(q, K)
        qpts = set(sq.points)
        for phi in sq.points:
            r.check(preimage(proj.map, phi) in pts, lambda: f"preimage of {serialize(phi)} under A->A/{theta}")
        for p in s.points:
            if leq(theta, p):
                r.check(quotient_congruence(p, theta) in qpts, lambda: f"{serialize(p)}/{serialize(theta)} not a point")
    for b in K:
        sb = spectrum(b, K)
        for h in enumerate_homs(A, b):
            for phi in sb.points:
                r.check(preimage(h.map, phi) in pts, lambda: f"preimage under {list(h.map)}")
    return r


def suite_coherency(A, K, s, con):
    r = SuiteResult("coherency_kernels_vs_embeddings")
    oracle = spec_points_by_embedding(A, K)
    r.check(list(s.points) == oracle, lambda: f"kernels {[serialize(p) for p in s.points]} vs {[serialize(p) for p in oracle]}")
    r.details["points"] = len(oracle)
    return r


def suite_nullstellensatz1(A, K, s, con):
    r = SuiteResult("nullstellensatz_part_1")
    subsets = list(point_subsets(s))
    psis = {X: psi(s, X) for X in subsets}
    for S in pair_sets(A):
        V = v_closed(s, S)
        for X in subsets:
            lhs = all(psis[X].related(a, b) for a, b in S)
            r.check(lhs == (X <= V), lambda: f"S={S} X={[serialize(p) for p in X]}")
        r.check(psi(s, V) == radical(s, congruence_closure(A, S)), lambda: f"psi(V(S)) != rad S for S={S}")
    for X in subsets:
        r.check(v_closed(s, sorted(psis[X].pairs)) == zariski_closure(s, X), lambda: f"V(psi(X)) != closure for {X}")
    return r


def suite_radical_closure(A, K, s, con):
    r = SuiteResult("radical_closure_operator")
    rad = {t: radical(s, t) for t in con}
    for t in con:
        r.check(leq(t, rad[t]), lambda: f"not extensive at {serialize(t)}")
        r.check(radical(s, rad[t]) == rad[t], lambda: f"not idempotent at {serialize(t)}")
        for u in con:
            if leq(t, u):
                r.check(leq(rad[t], rad[u]), lambda: f"not monotone at {serialize(t)} <= {serialize(u)}")
    fixed = sorted({t for t in con if rad[t] == t}, key=Congruence.sort_key)
    r.check(fixed == rspec(s), lambda: "fixed points of rad differ from RSpec")
    r.details["radical_congruences"] = len(fixed)
    return r


def suite_radical_quotient(A, K, s, con):
    r = SuiteResult("radical_quotient_commutation")
    cache = {}
    for p in con:
        q, _ = quotient(A, p)
        cache[p] = spectrum(q, K)
    for p in con:
        sq = cache[p]
        for t in con:
            if not leq(p, t):
                continue
            lhs = quotient_congruence(radical(s, t), p)
            rhs = radical(sq, quotient_congruence(t, p))
            r.check(lhs == rhs, lambda: f"(rad {serialize(t)})/{serialize(p)}")
        r.check(radical(s, p) == unquotient(nilradical(cache[p]), p), lambda: f"rad {serialize(p)} != pi^-1(nil)")
    return r


def suite_isp(A, K, s, con):
    r = SuiteResult("isp_characterisation")
    emb = isp_embedding(A, K)
    r.check(is_reduced(s) == (emb is not None), lambda: f"reduced={is_reduced(s)} embedding={emb}")
    if emb is not None:
        r.check(emb.is_valid() and emb.is_injective, "product map is not an embedding")
    r.details["reduced"] = is_reduced(s)
    return r


def suite_closed_subsets(A, K, s, con):
    r = SuiteResult("closed_subset_is_spectrum")
    for c in s.zariski.closed:
        X = s.subset(c)
        try:
            sq, bij = closed_subset_as_spectrum(s, X)
            ok = set(bij.values()) == set(X) and len(bij) == len(X)
            sub = topologize(s.zariski.restrict(X))
            fwd = ClosureMorphism(topologize(sq.zariski), sub, bij)
            back = ClosureMorphism(sub, topologize(sq.zariski), {v: k for k, v in bij.items()})
            ok = ok and is_morphism(fwd) and is_morphism(back)
        except AssertionError as exc:
            ok, why = False, str(exc)
        else:
            why = "not a homeomorphic bijection"
        r.check(ok, lambda: f"closed set {[serialize(p) for p in s.zariski.ordered(c)]}: {why}")
    red, _ = quotient(A, nilradical(s))
    r.check(len(spectrum(red, K).points) == len(s.points), "Spec A and Spec red A differ in size")
    return r


def suite_radical_condition(A, K, s, con):
    r = SuiteResult("radical_condition")
    sq = sqrt_spec(s)
    r.check(list(sq.points) == rspec(s), "sqrt points differ from RSpec")
    r.check(rspec(sq) == rspec(s), "sqrt is not idempotent")
    r.check((Congruence.diagonal(A.size) in set(sq.points)) == is_reduced(s), "F(sqrt) != reduced")
    for t in con:
        qa, proj = quotient(A, t)
        qpts = set(sqrt_spec(spectrum(qa, K)).points)
        pts = set(sq.points)
        for phi in qpts:
            r.check(preimage(proj.map, phi) in pts, lambda: f"sqrt coherence fails at {serialize(t)}")
        for p in sq.points:
            if leq(t, p):
                r.check(quotient_congruence(p, t) in qpts, lambda: f"sqrt quotient coherence at {serialize(t)}")
    return r


def suite_functoriality(A, K, s, con):
    r = SuiteResult("induced_maps")
    idm = induced_map(identity(A), K, s, s)
    r.check(all(k == v for k, v in idm.map.items()), "identity does not induce identity")
    for t in con:
        q, proj = quotient(A, t)
        sq = spectrum(q, K)
        f = induced_map(proj, K, s, sq)
        r.check(is_morphism(f), lambda: f"projection by {serialize(t)} not a closure morphism")
        r.check(is_morphism(f.topologized()), lambda: f"projection by {serialize(t)} not continuous")
        r.check(set(f.map.values()) == {p for p in s.points if leq(t, p)}, lambda: f"image mismatch at {serialize(t)}")
        for u in con:
            if leq(t, u):
                q2, proj2 = quotient(q, quotient_congruence(u, t))
                s2 = spectrum(q2, K)
                g = induced_map(proj2, K, sq, s2)
                comp = induced_map(proj.then(proj2), K, s, s2)
                r.check(g.compose(f).map == comp.map, lambda: f"contravariance fails at {serialize(t)} <= {serialize(u)}")
    return r


def suite_irreducible_reduced(A, K, s, con):
    r = SuiteResult("irreducible_reduced_equivalence")
    rep = check_irreducible_reduced_equiv(A, K, s)
    r.check(rep.agree, lambda: str(rep))
    r.details["value"] = rep.irreducible_and_reduced
    return r


def suite_complement(A, K, s, con):
    r = SuiteResult("distinguished_open_complement")
    pairs = unequal_pairs(A)
    for k in range(0, 4):
        if len(pairs) > 12 and k == 3:
            break
        for fam in combinations(pairs, k):
            r.check(complement_identity_holds(s, fam), lambda: f"family {fam}")
    return r


def suite_primes(A, K, s, con):
    r = SuiteResult("prime_decomposition")
    for t in rspec(s):
        try:
            dec = prime_decomposition(s, t)
        except AssertionError as exc:
            r.check(False, f"{serialize(t)}: {exc}")
            continue
        r.check(all(is_prime(s, p) for p in dec), lambda: f"non-prime member for {serialize(t)}")
        r.check(dec == prime_decomposition_direct(s, t), lambda: f"component route differs for {serialize(t)}")
        V = v_closed(s, sorted(t.pairs))
        r.check(len(dec) == len(minimal_decomposition(s.zariski.restrict(V))), lambda: f"not minimal for {serialize(t)}")
    return r


def suite_quasivariety(A, K, s, con):
    r = SuiteResult("quasivariety_equivalences")
    rep = check_quasivariety_equivalences(A, K)
    r.check(rep.agree, lambda: str(rep))
    r.details["in_Q"] = rep.in_Q_bounded
    return r


def suite_noetherian(A, K, s, con):
    r = SuiteResult("noetherian_and_irreducibility")
    ok, zlen = satisfies_dcc(s.zariski)
    top = s.topology
    _, tlen = satisfies_dcc(top)
    rs = rspec(s)
    rlen = longest_chain([s.mask(v_closed(s, sorted(t.pairs))) for t in rs])
    r.check(ok and zlen == rlen, lambda: f"zariski chain {zlen} vs radical chain {rlen}")
    principal = [v_closed(s, [(a, b)]) for a in range(A.size) for b in range(A.size)]
    for X in point_subsets(s):
        full = is_irreducible(s.zariski, X)
        r.check(full == is_irreducible_nary(s.zariski, X), lambda: f"binary vs n-ary at {X}")
        r.check(full == is_irreducible_prebasis(s.zariski, X, principal), lambda: f"prebasis disagreement at {X}")
        if X:
            r.check(full == is_irreducible(s.zariski.restrict(X), X), lambda: f"subsystem disagreement at {X}")
    comps = minimal_decomposition(s.zariski)
    r.check(comps == irreducible_components(s.zariski), "components and decomposition differ")
    r.details.update({"zariski_chain": zlen, "topological_chain": tlen, "components": len(comps)})
    return r


SUITES = [
    suite_coherence,
    suite_coherency,
    suite_nullstellensatz1,
    suite_radical_closure,
    suite_radical_quotient,
    suite_isp,
    suite_closed_subsets,
    suite_radical_condition,
    suite_functoriality,
    suite_irreducible_reduced,
    suite_complement,
    suite_primes,
    suite_quasivariety,
    suite_noetherian,
]


def run_all(A, K, s=None):
    s = s or spectrum(A, K)
    con = all_congruences(A)
    out = []
    for suite in SUITES:
        try:
            out.append(suite(A, K, s, con))
        except ResourceError:
            raise
        except AssertionError as exc:
            res = SuiteResult(suite.__name__[len("suite_"):], passed=False, counterexample=str(exc))
            out.append(res)
    return out
