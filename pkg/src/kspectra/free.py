"""Free algebras of V(K) for finite K, entailment, disjunctive systems and
the affine correspondence for a single algebra.

``F_{V(K)}(X)`` is realised as the subalgebra of ``∏_{(B, ā)} B`` (one
coordinate per member B of K and assignment ā: X -> B) generated by the
variable columns.  Each element is a distinct term function; elements are
numbered in breadth-first discovery order, so the stored representative
terms are of least depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product as iproduct

from .algebra import FiniteAlgebra, Homomorphism, eval_term, same_signature
from .closure import ClosureMorphism, ClosureSystem, is_irreducible, is_quasi_isomorphism, satisfies_dcc, topologize
from .congruence import Congruence, all_congruences, congruence_closure, quotient
from .guards import ResourceError, limits
from .spectrum import psi, radical, rspec, spectrum, v_closed
from .terms import App, DisjunctiveSystem, Var

MAX_COORDINATES = 4096


def assignments(b, variables):
    for vals in iproduct(range(b.size), repeat=len(variables)):
        yield dict(zip(variables, vals))


@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    base: FiniteAlgebra
    variables: tuple
    K: tuple
    coordinates: tuple  # (index into K, assignment tuple) per coordinate
    vectors: tuple  # element -> value tuple over the coordinates
    representatives: tuple  # element -> Term

    @property
    def generators(self):
        return {v: self.element_of(Var(v)) for v in self.variables}

    @cached_property
    def _vec_index(self):
        return {v: i for i, v in enumerate(self.vectors)}

    def element_of(self, t):
        """Element of F represented by term ``t``."""
        vec = tuple(
            eval_term(self.K[k], t, dict(zip(self.variables, vals))) for k, vals in self.coordinates
        )
        try:
            return self._vec_index[vec]
        except KeyError:
            raise ValueError(f"term {t} uses symbols outside the generated algebra") from None

    def evaluation(self, k, values):
        """The homomorphism ``h_ā: F -> K[k]`` with ``x_i ↦ values[i]``."""
        c = self.coordinates.index((k, tuple(values)))
        return Homomorphism(self.base, self.K[k], tuple(v[c] for v in self.vectors))

    def evaluations(self):
        return [self.evaluation(k, vals) for k, vals in self.coordinates]

    def pair_of(self, eq):
        return (self.element_of(eq[0]), self.element_of(eq[1]))

    def term_pair(self, a, b):
        return (self.representatives[a], self.representatives[b])

    def congruence_as_equations(self, theta):
        return [self.term_pair(a, b) for a, b in sorted(theta.pairs) if a < b]

    @cached_property
    def spectrum(self):
        return spectrum(self.base, self.K)

    def __repr__(self):
        return f"<FreeAlgebra vars={list(self.variables)} size={self.base.size}>"


def free_algebra(K, variables, name=None):
    K = tuple(K)
    if not K:
        raise ValueError("K must be nonempty")
    for b in K[1:]:
        same_signature(K[0], b)
    sig = K[0].signature
    variables = tuple(variables)
    coords = tuple((k, vals) for k, b in enumerate(K) for vals in iproduct(range(b.size), repeat=len(variables)))
    if len(coords) > MAX_COORDINATES:
        raise ResourceError(f"free algebra needs {len(coords)} coordinates (> {MAX_COORDINATES})")
    max_size = limits().max_size

    vectors, reps, index = [], [], {}

    def add(vec, term):
        if vec in index:
            return False
        if len(vectors) >= max_size:
            raise ResourceError(f"free algebra exceeds max_size={max_size}")
        index[vec] = len(vectors)
        vectors.append(vec)
        reps.append(term)
        return True

    for i, v in enumerate(variables):
        add(tuple(vals[i] for _, vals in coords), Var(v))
    for f, n in sig.symbols:
        if n == 0:
            add(tuple(K[k].op(f) for k, _ in coords), App(f))
    if not vectors:
        raise ValueError("no variables and no constants: the free algebra is empty")
    start = 0
    while start < len(vectors):
        end = len(vectors)
        for f, n in sig.symbols:
            if n == 0:
                continue
            for args in iproduct(range(end), repeat=n):
                if max(args) < start:
                    continue
                vec = tuple(K[k].op(f, *(vectors[a][c] for a in args)) for c, (k, _) in enumerate(coords))
                add(vec, App(f, tuple(reps[a] for a in args)))
        start = end

    size = len(vectors)
    tables = []
    for f, n in sig.symbols:
        t = []
        for args in iproduct(range(size), repeat=n):
            vec = tuple(K[k].op(f, *(vectors[a][c] for a in args)) for c, (k, _) in enumerate(coords))
            t.append(index[vec])
        tables.append(tuple(t))
    base = FiniteAlgebra(sig, size, tuple(tables), name or f"F({','.join(variables)})")
    return FreeAlgebra(base, variables, K, coords, tuple(vectors), tuple(reps))


def _holds(b, eq, env):
    return eval_term(b, eq[0], env) == eval_term(b, eq[1], env)


def _as_system(x):
    if isinstance(x, DisjunctiveSystem):
        return x
    return DisjunctiveSystem.of_equations(list(x))


def satisfies(b, system, env):
    return all(any(_holds(b, eq, env) for eq in clause) for clause in system.clauses)


def entails(K, premise, conclusion, variables):
    """``K ⊨ premise → conclusion`` by exhaustive model checking.

    Both sides may be equation collections or disjunctive systems.
    """
    premise, conclusion = _as_system(premise), _as_system(conclusion)
    variables = tuple(variables)
    for v in premise.variables() + conclusion.variables():
        if v not in variables:
            raise ValueError(f"variable {v!r} not among {variables}")
    budget = sum(b.size ** len(variables) for b in K)
    if budget > limits().max_search:
        raise ResourceError(f"{budget} assignments exceed the search budget")
    for b in K:
        for env in assignments(b, variables):
            if satisfies(b, premise, env) and not satisfies(b, conclusion, env):
                return False
    return True


def counterexample(K, premise, conclusion, variables):
    premise, conclusion = _as_system(premise), _as_system(conclusion)
    for k, b in enumerate(K):
        for env in assignments(b, tuple(variables)):
            if satisfies(b, premise, env) and not satisfies(b, conclusion, env):
                return k, env
    return None


def v_disjunctive(fa, S, s=None):
    """Points θ of Spec F with ``K ⊨ θ → S``; θ enters as the equations
    between representatives of related elements."""
    s = s or fa.spectrum
    S = _as_system(S)
    return frozenset(
        theta for theta in s.points if entails(fa.K, fa.congruence_as_equations(theta), S, fa.variables)
    )


def model_mask(fa, S):
    """Bitmask over the coordinates (B, ā) of F at which S holds."""
    S = _as_system(S)
    m = 0
    for c, (k, vals) in enumerate(fa.coordinates):
        if satisfies(fa.K[k], S, dict(zip(fa.variables, vals))):
            m |= 1 << c
    return m


def radical_restatement_holds(fa, T, s=None):
    """``rad Θ(T) = {(p, q) | K ⊨ T → p ≈ q}`` elementwise on F."""
    s = s or fa.spectrum
    T = list(T)
    rad = radical(s, congruence_closure(fa.base, [fa.pair_of(eq) for eq in T]))
    for a in range(fa.base.size):
        for b in range(fa.base.size):
            ent = entails(fa.K, T, [fa.term_pair(a, b)], fa.variables)
            if ent != rad.related(a, b):
                return False
    return True


@dataclass(frozen=True)
class NullstellensatzCheck:
    inclusion: bool
    entailment: bool
    agree: bool

    def __iter__(self):
        return iter((self.inclusion, self.entailment, self.agree))


def check_nullstellensatz2(K, variables, S1, S2, fa=None):
    """Compare ``V(S1) ⊆ V(S2)`` on Spec F with ``K ⊨ S1 → S2``.

    For equational systems the radical restatement is checked too and folded
    into ``agree``.
    """
    fa = fa or free_algebra(K, variables)
    S1, S2 = _as_system(S1), _as_system(S2)
    inclusion = v_disjunctive(fa, S1) <= v_disjunctive(fa, S2)
    entailment = entails(fa.K, S1, S2, fa.variables)
    agree = inclusion == entailment
    if agree and S1.is_equational and S2.is_equational:
        agree = radical_restatement_holds(fa, S1.equations()) and radical_restatement_holds(fa, S2.equations())
        t1 = [fa.pair_of(e) for e in S1.equations()]
        rad2 = radical(fa.spectrum, congruence_closure(fa.base, [fa.pair_of(e) for e in S2.equations()]))
        agree = agree and (all(rad2.related(a, b) for a, b in t1) == entails(fa.K, S2, S1, fa.variables))
    return NullstellensatzCheck(inclusion, entailment, agree)


def finite_subsystem(K, variables, T):
    """Greedy subsystem T0 of T (scanned in the given order) with ``K ⊨ T0 → T``."""
    T0 = []
    seen = []
    for eq in T:
        if eq in seen:
            continue
        seen.append(eq)
        if not entails(K, T0, [eq], variables):
            T0.append(eq)
    if not entails(K, T0, seen, variables):
        raise AssertionError("greedy subsystem does not entail the system")
    return T0


def minimum_subsystem(K, variables, T):
    """Oracle: a smallest subset T0 with ``K ⊨ T0 → T`` by exhaustive search."""
    T = list(dict.fromkeys(T))
    for r in range(len(T) + 1):
        for sub in combinations(T, r):
            if entails(K, list(sub), T, variables):
                return list(sub)
    return T


def finite_disjunctive_subsystem(K, variables, S):
    S = _as_system(S)
    kept = []
    for clause in S.clauses:
        if not entails(K, DisjunctiveSystem(tuple(kept)), DisjunctiveSystem((clause,)), variables):
            kept.append(clause)
    S0 = DisjunctiveSystem(tuple(kept))
    if not (entails(K, S0, S, variables) and entails(K, S, S0, variables)):
        raise AssertionError("disjunctive subsystem is not equivalent")
    return S0


def free_equations(fa):
    """All ordered pairs of representatives, as equations."""
    n = fa.base.size
    return [fa.term_pair(a, b) for a in range(n) for b in range(n)]


def disjunctive_systems(equations, max_clauses=2, max_disjuncts=2):
    """Every system of at most ``max_clauses`` distinct clauses, each a set of
    at most ``max_disjuncts`` distinct equations."""
    clauses = []
    for r in range(1, max_disjuncts + 1):
        clauses.extend(combinations(equations, r))
    out = []
    for r in range(max_clauses + 1):
        for combo in combinations(clauses, r):
            out.append(DisjunctiveSystem(combo))
    return out


def sample_disjunctive_systems(equations, limit, max_disjuncts=2):
    """A deterministic spread of at most ``limit`` systems with up to two
    clauses, without materialising the full (possibly huge) family."""
    clauses = []
    for r in range(1, max_disjuncts + 1):
        clauses.extend(combinations(equations, r))
    c = len(clauses)
    total = 1 + c + c * (c - 1) // 2
    if total <= limit:
        return disjunctive_systems(equations, 2, max_disjuncts)
    out = [DisjunctiveSystem(())]
    singles = max(1, (limit - 1) // 2)
    for k in range(singles):
        out.append(DisjunctiveSystem((clauses[k * c // singles],)))
    doubles = limit - len(out)
    for k in range(doubles):
        i = k * c // doubles
        j = (i + 1 + (k * 7919) % (c - 1)) % c
        if i == j:
            continue
        out.append(DisjunctiveSystem((clauses[min(i, j)], clauses[max(i, j)])))
    return out


@dataclass
class NoetherianReport:
    variables: tuple
    free_size: int
    spectrum_points: int
    zariski_chain: int
    topological_chain: int
    radical_chain: int
    zariski_dcc: bool
    topological_dcc: bool
    radical_acc: bool
    finite_subsystems: bool
    systems_checked: int
    quotient_conditions: bool

    @property
    def holds(self):
        return all(
            (self.zariski_dcc, self.topological_dcc, self.radical_acc, self.finite_subsystems, self.quotient_conditions)
        )

    def to_dict(self):
        d = dict(self.__dict__)
        d["variables"] = list(self.variables)
        d["holds"] = self.holds
        return d


def _radical_chain(thetas):
    best = {}
    for t in sorted(thetas, key=lambda t: -t.num_blocks):
        best[t] = 1 + max((best[u] for u in best if u != t and all(t.labels[x] == t.labels[r] for x, r in enumerate(u.labels))), default=0)
    return max(best.values(), default=0)


def check_noetherian_equivalences(K, variables, sample_limit=60):
    """Chain conditions on Spec F_{V(K)}(X) and the finite-subsystem property.

    * Zariski closed sets: D.C.C. with longest chain length;
    * topologically closed sets: D.C.C.;
    * radical congruences: A.C.C., whose longest chain must match the
      Zariski one (antitone Galois correspondence);
    * every equation system over F, and a deterministic sample of
      disjunctive systems, has a finite equivalent subsystem certified by
      entailment both ways;
    * the same chain conditions for every quotient of F.
    """
    fa = free_algebra(K, variables)
    s = fa.spectrum
    zdcc, zlen = satisfies_dcc(s.zariski)
    tdcc, tlen = satisfies_dcc(topologize(s.zariski))
    rlen = _radical_chain(rspec(s))
    eqs = free_equations(fa)
    ok = True
    T0 = finite_subsystem(fa.K, fa.variables, eqs)
    ok &= entails(fa.K, T0, eqs, fa.variables) and entails(fa.K, eqs, T0, fa.variables)
    sample = sample_disjunctive_systems(eqs, sample_limit)
    for S in sample:
        finite_disjunctive_subsystem(fa.K, fa.variables, S)
    quotient_ok = True
    for theta in all_congruences(fa.base):
        q, _ = quotient(fa.base, theta)
        sq = spectrum(q, fa.K)
        qz = satisfies_dcc(sq.zariski)[1]
        qr = _radical_chain(rspec(sq))
        quotient_ok &= qz == qr and satisfies_dcc(topologize(sq.zariski))[0]
    return NoetherianReport(
        fa.variables, fa.base.size, len(s.points), zlen, tlen, rlen,
        zdcc, tdcc, rlen == zlen, bool(ok), len(sample) + 1, bool(quotient_ok),
    )


# -- affine correspondence for a single algebra -------------------------------

def default_variables(n):
    if n <= 4:
        return tuple("xyzw"[:n])
    return tuple(f"x{i}" for i in range(1, n + 1))


def affine_points(a, n):
    return list(iproduct(range(a.size), repeat=n))


def algebraic_set(a, n, T, variables=None):
    """Tuples of ``A^n`` satisfying every equation of T."""
    variables = variables or default_variables(n)
    T = list(T)
    return frozenset(
        pt for pt in affine_points(a, n) if all(_holds(a, eq, dict(zip(variables, pt))) for eq in T)
    )


def affine_closure_system(a, n, fa=None):
    """All algebraic sets of ``A^n``.

    Single equations range over pairs of term functions, i.e. over pairs of
    elements of ``F_{V(A)}(x_1..x_n)``; any term is equivalent to one of
    these representatives, so nothing is missed.
    """
    fa = fa or free_algebra([a], default_variables(n))
    pts = affine_points(a, n)
    sets = []
    for eq in free_equations(fa):
        sets.append(algebraic_set(a, n, [eq], fa.variables))
    return ClosureSystem.from_sets(pts, sets)


def affine_rad(a, n, X, fa=None):
    """θ_Rad(X) realised on F: term functions agreeing on every tuple of X."""
    fa = fa or free_algebra([a], default_variables(n))
    cols = [fa.coordinates.index((0, tuple(pt))) for pt in sorted(X)]
    return Congruence(tuple(tuple(v[c] for c in cols) for v in fa.vectors))


def alpha_map(a, n, fa=None):
    """``ā ↦ ker h_ā`` from the affine closure system to Spec F over K = {A}."""
    fa = fa or free_algebra([a], default_variables(n))
    aff = affine_closure_system(a, n, fa)
    s = fa.spectrum
    mapping = {pt: Congruence(fa.evaluation(0, pt).map) for pt in aff.ground}
    return ClosureMorphism(aff, s.zariski, mapping), fa


@dataclass
class AffineReport:
    algebra: str
    n: int
    points: int
    closed_sets: int
    quasi_isomorphism: bool
    preimages_algebraic: bool
    rad_matches_psi: bool
    irreducibility_transported: bool

    @property
    def holds(self):
        return self.quasi_isomorphism and self.preimages_algebraic and self.rad_matches_psi and self.irreducibility_transported


def check_affine_correspondence(a, n, subset_budget=2**12):
    alpha, fa = alpha_map(a, n)
    aff, s = alpha.source, fa.spectrum
    qi = is_quasi_isomorphism(alpha)
    pre_ok = True
    for eq in free_equations(fa):
        V = v_closed(s, [fa.pair_of(eq)])
        if alpha.preimage(V) != algebraic_set(a, n, [eq], fa.variables):
            pre_ok = False
    pts = list(aff.ground)
    rad_ok = True
    if 2 ** len(pts) <= subset_budget:
        subsets = (frozenset(p for i, p in enumerate(pts) if m >> i & 1) for m in range(2 ** len(pts)))
    else:
        subsets = (aff.points(m) for m in aff.closed)
    for X in subsets:
        if affine_rad(a, n, X, fa) != psi(s, alpha.image(X)):
            rad_ok = False
    irr_ok = all(
        is_irreducible(aff, aff.points(c)) == is_irreducible(s.zariski, alpha.image(aff.points(c)))
        for c in aff.closed
    )
    return AffineReport(a.name, n, len(pts), len(aff.closed), qi, pre_ok, rad_ok, irr_ok)
