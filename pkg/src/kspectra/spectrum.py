"""K-spectra of finite algebras with their Zariski closure systems.

The points of ``Spec A`` are the congruences θ with ``A/θ`` embeddable in a
member of K, which are exactly the kernels of homomorphisms into K.  Points
are ordered finest first (``Congruence.sort_key``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .algebra import (
    FiniteAlgebra,
    Homomorphism,
    enumerate_homs,
    find_embedding,
    product,
    same_signature,
    trivial_algebra,
    tuple_map,
)
from .closure import ClosureMorphism, ClosureSystem, is_irreducible, is_morphism, topologize
from .congruence import (
    Congruence,
    all_congruences,
    congruence_closure,
    kernel,
    leq,
    meet,
    preimage,
    quotient,
    quotient_congruence,
    unquotient,
)


@dataclass(frozen=True)
class SpectrumContext:
    algebra: FiniteAlgebra
    K: tuple

    def __post_init__(self):
        K = tuple(self.K)
        if not K:
            raise ValueError("K must be nonempty")
        for b in K:
            same_signature(self.algebra, b)
        object.__setattr__(self, "K", K)


@dataclass(frozen=True, eq=False)
class Spectrum:
    context: SpectrumContext
    points: tuple
    zariski: ClosureSystem
    radical_condition: bool = field(default=False)

    @property
    def algebra(self):
        return self.context.algebra

    @property
    def K(self):
        return self.context.K

    @cached_property
    def _pos(self):
        return {p: i for i, p in enumerate(self.points)}

    def mask(self, subset):
        return self.zariski.mask(subset)

    def subset(self, m):
        return self.zariski.points(m)

    @cached_property
    def topology(self):
        return topologize(self.zariski)

    def __eq__(self, other):
        return (
            isinstance(other, Spectrum)
            and self.context == other.context
            and self.points == other.points
            and self.zariski == other.zariski
            and self.radical_condition == other.radical_condition
        )

    __hash__ = object.__hash__


def _pair_masks(alg, points):
    """For every ordered pair (a, b), the bitmask of points containing it."""
    n = alg.size
    out = [0] * (n * n)
    for i, p in enumerate(points):
        lab = p.labels
        for a in range(n):
            for b in range(n):
                if lab[a] == lab[b]:
                    out[a * n + b] |= 1 << i
    return out


def _build(ctx, points, radical_condition=False):
    points = tuple(sorted(set(points), key=Congruence.sort_key))
    principal = set(_pair_masks(ctx.algebra, points))
    zariski = ClosureSystem(points, tuple(principal))
    return Spectrum(ctx, points, zariski, radical_condition)


def hom_kernels(alg, K):
    out = set()
    for b in K:
        for h in enumerate_homs(alg, b):
            out.add(kernel(h))
    return sorted(out, key=Congruence.sort_key)


def spec(ctx):
    """Spectrum from kernels of all homomorphisms into members of K.  The
    closed family is generated by the principal sets ``V(a, b)``."""
    return _build(ctx, hom_kernels(ctx.algebra, ctx.K))


def spectrum(algebra, K):
    return spec(SpectrumContext(algebra, tuple(K)))


def spec_points_by_embedding(alg, K):
    """Oracle: congruences whose quotient embeds into a member of K."""
    out = []
    for theta in all_congruences(alg):
        q, _ = quotient(alg, theta)
        if any(find_embedding(q, b) is not None for b in K):
            out.append(theta)
    return out


def v_closed(s, pairs):
    """``V(S)``: points containing every pair of S."""
    return frozenset(p for p in s.points if all(p.related(a, b) for a, b in pairs))


def psi(s, subset):
    """Meet of a set of points; the empty meet is ∇."""
    return meet(sorted(subset, key=Congruence.sort_key), s.algebra.size)


def radical(s, theta):
    if theta.size != s.algebra.size:
        raise ValueError("congruence is on a different universe")
    return meet([p for p in s.points if leq(theta, p)], s.algebra.size)


def nilradical(s):
    return radical(s, Congruence.diagonal(s.algebra.size))


def is_reduced(s):
    return nilradical(s).is_diagonal


def reduction(s):
    return quotient(s.algebra, nilradical(s))


def zariski_closure(s, subset):
    return s.zariski.closure_of(subset)


def rspec(s):
    """Meet-completion of the points (∇ included as the empty meet)."""
    n = s.algebra.size
    out = {Congruence.total(n)}
    frontier = set(s.points) - out
    out |= frontier
    while frontier:
        new = set()
        for a in frontier:
            for b in s.points:
                c = meet([a, b])
                if c not in out:
                    new.add(c)
        out |= new
        frontier = new
    return sorted(out, key=Congruence.sort_key)


def is_radical_congruence(s, theta):
    return theta in set(rspec(s))


def sqrt_spec(ctx_or_spectrum):
    """Spectrum of the radical condition: points are the radical congruences."""
    s = ctx_or_spectrum if isinstance(ctx_or_spectrum, Spectrum) else spec(ctx_or_spectrum)
    return _build(s.context, rspec(s), radical_condition=True)


def is_in_fundamental_class(a, K):
    return Congruence.diagonal(a.size) in set(hom_kernels(a, K))


def is_in_ISP(a, K):
    return is_reduced(spectrum(a, K))


def isp_embedding(a, K):
    """Explicit embedding of ``a`` into a product of at most |Spec| members of
    K, one factor per point (first hom with that kernel); None if none exists.

    Points are taken in canonical order and skipped when they separate
    nothing new, which keeps the product small."""
    chosen = {}
    for b in K:
        for h in enumerate_homs(a, b):
            chosen.setdefault(kernel(h), h)
    if not chosen:
        if a.size == 1:
            # empty product convention: the trivial algebra
            return Homomorphism(a, trivial_algebra(a.signature), (0,))
        return None
    # keep a point only if it splits a class the earlier ones left together
    homs, labels = [], [()] * a.size
    for k in sorted(chosen, key=Congruence.sort_key):
        refined = [lab + (k.labels[x],) for x, lab in enumerate(labels)]
        if len(set(refined)) > len(set(labels)):
            homs.append(chosen[k])
            labels = refined
    if len(set(labels)) < a.size:
        return None
    if not homs:
        return Homomorphism(a, trivial_algebra(a.signature), (0,))
    return tuple_map(homs, product([h.target for h in homs]))


def induced_map(f, K, source_spec=None, target_spec=None):
    """Closure morphism ``Spec(target) -> Spec(source)``, θ ↦ f⁻¹(θ)."""
    s_src = source_spec or spectrum(f.source, K)
    s_tgt = target_spec or spectrum(f.target, K)
    mapping = {}
    allowed = set(s_src.points)
    for theta in s_tgt.points:
        pre = preimage(f.map, theta)
        if pre not in allowed:
            raise AssertionError(f"preimage {pre!r} is not a point of the source spectrum")
        mapping[theta] = pre
    return ClosureMorphism(s_tgt.zariski, s_src.zariski, mapping)


def closed_subset_as_spectrum(s, subset):
    """Spectrum of ``A/ψ(X)`` and the bijection onto the Zariski closure of X.

    The returned dict sends each point of the quotient spectrum to its
    preimage under the natural projection.  Both directions are checked to
    be closure morphisms, so the bijection is a homeomorphism of the
    topologizations as well.
    """
    p = psi(s, subset)
    q, _ = quotient(s.algebra, p)
    sq = spectrum(q, s.K)
    bij = {phi: unquotient(phi, p) for phi in sq.points}
    image = set(bij.values())
    closure = zariski_closure(s, subset)
    if image != set(closure) or len(image) != len(bij):
        raise AssertionError("projection does not biject onto the Zariski closure")
    sub = s.zariski.restrict(closure)
    fwd = ClosureMorphism(sq.zariski, sub, bij)
    back = ClosureMorphism(sub, sq.zariski, {v: k for k, v in bij.items()})
    if not (is_morphism(fwd) and is_morphism(back)):
        raise AssertionError("projection bijection is not a closure isomorphism")
    return sq, bij


def is_spectrum_irreducible(s):
    return is_irreducible(s.zariski, s.points)


def coherence_violations(f, K):
    """Def-2.1-style checks for a hom f: preimages of target points are source
    points.  Returns a list of offending congruences (empty if coherent)."""
    src = set(spectrum(f.source, K).points)
    return [theta for theta in spectrum(f.target, K).points if preimage(f.map, theta) not in src]


def quotient_coherence_violations(s):
    """For every congruence θ and every point ψ ⊇ θ, ψ/θ must be a point of Spec(A/θ)."""
    bad = []
    for theta in all_congruences(s.algebra):
        q, _ = quotient(s.algebra, theta)
        qpoints = set(spectrum(q, s.K).points)
        for p in s.points:
            if leq(theta, p) and quotient_congruence(p, theta) not in qpoints:
                bad.append((theta, p))
    return bad


def theta_of_pairs(s, pairs):
    return congruence_closure(s.algebra, pairs)
