"""Finite closure systems stored as families of bitsets over the ground set.

Subsets cross the public API as frozensets of point ids; internally every
closed set is an int whose bit ``i`` marks ``ground[i]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .guards import ResourceError, limits


def popcount(m):
    return bin(m).count("1")


def _mask_key(m):
    return tuple(i for i in range(m.bit_length()) if m >> i & 1)


def intersection_closure(family, full):
    """Close ``family`` under binary intersection and add ``full`` (the empty meet)."""
    fam = set(family) | {full}
    frontier = list(fam)
    cap = limits().max_family
    while frontier:
        new = []
        cur = list(fam)
        for a in frontier:
            for b in cur:
                c = a & b
                if c not in fam:
                    fam.add(c)
                    new.append(c)
        if len(fam) > cap:
            raise ResourceError(f"closed family exceeds {cap} sets")
        frontier = new
    return fam


@dataclass(frozen=True)
class ClosureSystem:
    ground: tuple
    closed: tuple  # sorted masks

    def __post_init__(self):
        ground = tuple(self.ground)
        if len(set(ground)) != len(ground):
            raise ValueError("ground points must be distinct")
        full = (1 << len(ground)) - 1
        fam = intersection_closure((int(m) for m in self.closed), full)
        if any(m & ~full for m in fam):
            raise ValueError("closed set mentions points outside the ground set")
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "closed", tuple(sorted(fam, key=lambda m: (popcount(m), _mask_key(m)))))

    @classmethod
    def from_sets(cls, ground, sets):
        ground = tuple(ground)
        pos = {p: i for i, p in enumerate(ground)}
        masks = []
        for s in sets:
            m = 0
            for p in s:
                m |= 1 << pos[p]
            masks.append(m)
        return cls(ground, tuple(masks))

    @cached_property
    def index(self):
        return {p: i for i, p in enumerate(self.ground)}

    @property
    def full(self):
        return (1 << len(self.ground)) - 1

    @cached_property
    def closed_set(self):
        return frozenset(self.closed)

    def mask(self, subset):
        m = 0
        for p in subset:
            try:
                m |= 1 << self.index[p]
            except KeyError:
                raise ValueError(f"point {p!r} is not in the ground set") from None
        return m

    def points(self, m):
        return frozenset(self.ground[i] for i in range(len(self.ground)) if m >> i & 1)

    def ordered(self, m):
        return [self.ground[i] for i in range(len(self.ground)) if m >> i & 1]

    def closed_sets(self):
        return [self.points(m) for m in self.closed]

    def is_closed(self, subset):
        return self.mask(subset) in self.closed_set

    def closure_mask(self, m):
        out = self.full
        for c in self.closed:
            if m & ~c == 0:
                out &= c
        return out

    def closure_of(self, subset):
        """Least closed superset."""
        return self.points(self.closure_mask(self.mask(subset)))

    @cached_property
    def is_topological(self):
        """Closed sets closed under binary union (the empty set is not forced)."""
        s = self.closed_set
        return all((a | b) in s for a in self.closed for b in self.closed)

    def restrict(self, subset):
        """Induced subsystem on ``subset``: closed sets are the traces ``Y ∩ A``."""
        m = self.mask(subset)
        ground = self.ordered(m)
        sub_index = [self.index[p] for p in ground]
        traces = set()
        for c in self.closed:
            t = 0
            for j, i in enumerate(sub_index):
                if c >> i & 1:
                    t |= 1 << j
            traces.add(t)
        return ClosureSystem(tuple(ground), tuple(traces))

    def __len__(self):
        return len(self.ground)


def topologize(sys):
    """Least family containing the closed sets and closed under finite
    (nonempty) unions and intersections.  Emptiness is never forced."""
    fam = set(sys.closed)
    cap = limits().max_family
    changed = True
    while changed:
        changed = False
        cur = list(fam)
        for a in cur:
            for b in cur:
                for c in (a | b, a & b):
                    if c not in fam:
                        fam.add(c)
                        changed = True
        if len(fam) > cap:
            raise ResourceError(f"topologized family exceeds {cap} sets")
    return ClosureSystem(sys.ground, tuple(fam))


@dataclass(frozen=True)
class ClosureMorphism:
    source: ClosureSystem
    target: ClosureSystem
    map: dict  # source point -> target point

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.map.items(), key=repr))))

    def preimage_mask(self, m):
        t = self.target
        out = 0
        for i, p in enumerate(self.source.ground):
            if m >> t.index[self.map[p]] & 1:
                out |= 1 << i
        return out

    def image_mask(self, m):
        t = self.target
        out = 0
        for i, p in enumerate(self.source.ground):
            if m >> i & 1:
                out |= 1 << t.index[self.map[p]]
        return out

    def preimage(self, subset):
        return self.source.points(self.preimage_mask(self.target.mask(subset)))

    def image(self, subset):
        return self.target.points(self.image_mask(self.source.mask(subset)))

    def compose(self, other):
        """``other ∘ self``."""
        return ClosureMorphism(self.source, other.target, {p: other.map[q] for p, q in self.map.items()})

    def topologized(self):
        return ClosureMorphism(topologize(self.source), topologize(self.target), self.map)


def is_morphism(f):
    if set(f.map) != set(f.source.ground) or any(q not in f.target.index for q in f.map.values()):
        return False
    src = f.source.closed_set
    return all(f.preimage_mask(c) in src for c in f.target.closed)


def is_quasi_isomorphism(f):
    """Morphism whose direct images of closed sets are closed and whose
    preimage map is a bijection between the closed families."""
    if not is_morphism(f):
        return False
    tgt = f.target.closed_set
    if any(f.image_mask(c) not in tgt for c in f.source.closed):
        return False
    pre = {f.preimage_mask(c) for c in f.target.closed}
    return len(pre) == len(f.target.closed) and pre == f.source.closed_set


def identity_morphism(sys):
    return ClosureMorphism(sys, sys, {p: p for p in sys.ground})


def _irreducible_binary(family, m):
    """Binary-cover test against a family closed under union.  By induction
    on the number of covering sets this equals the n-ary definition there."""
    if m == 0:
        return False
    for u in family:
        if m & ~u == 0:
            continue
        for v in family:
            if m & ~v and m & ~(u | v) == 0:
                return False
    return True


def _irreducible_nary(family, m):
    """n-ary definition: ``m`` is reducible iff the union of all members of
    ``family`` not containing ``m`` already covers ``m``."""
    if m == 0:
        return False
    cover = 0
    for u in family:
        if m & ~u:
            cover |= u
    return m & ~cover != 0


def is_irreducible(sys, subset):
    """Nonempty and not covered by finitely many closed sets without being
    inside one of them.  Decided by the binary criterion on the
    topologization, where unions of closed sets are closed."""
    return _irreducible_binary(topologize(sys).closed, sys.mask(subset))


def is_irreducible_nary(sys, subset):
    """Direct n-ary check of the definition over the closed family."""
    return _irreducible_nary(sys.closed, sys.mask(subset))


def is_irreducible_prebasis(sys, subset, prebasis):
    """Irreducibility tested only against the sets of a prebasis."""
    return _irreducible_nary([sys.mask(b) for b in prebasis], sys.mask(subset))


def _irreducible_masks(sys):
    top = topologize(sys)
    return [c for c in top.closed if _irreducible_binary(top.closed, c)]


def irreducible_components(sys):
    """Maximal irreducible subsets.  These are closed in the topologization,
    so it suffices to scan its closed sets."""
    irr = _irreducible_masks(sys)
    comps = [c for c in irr if not any(c != d and c & ~d == 0 for d in irr)]
    comps.sort(key=_mask_key)
    return [sys.points(c) for c in comps]


def minimal_decomposition(sys):
    """Irreducible components, checked to cover the ground set and be pairwise
    incomparable (unique minimal decomposition of a finite space)."""
    comps = irreducible_components(sys)
    masks = [sys.mask(c) for c in comps]
    cover = 0
    for m in masks:
        cover |= m
    if cover != sys.full:
        raise AssertionError("irreducible components do not cover the space")
    for a in masks:
        for b in masks:
            if a != b and a & ~b == 0:
                raise AssertionError("irreducible components are comparable")
    return comps


def longest_chain(masks):
    """Number of sets in a longest strictly descending chain."""
    order = sorted(set(masks), key=popcount)
    best = {}
    for m in order:
        best[m] = 1 + max((best[c] for c in best if c != m and c & ~m == 0), default=0)
    return max(best.values(), default=0)


def satisfies_dcc(sys):
    """``(True, longest chain length)``; every finite system has the D.C.C."""
    return True, longest_chain(sys.closed)


def hasse_edges(masks):
    masks = list(masks)
    below = {m: [c for c in masks if c != m and c & ~m == 0] for m in masks}
    edges = []
    for m in masks:
        for c in below[m]:
            if not any(d != c and c & ~d == 0 and d in below[m] for d in below[m]):
                edges.append((c, m))
    return edges


def to_dot(sys, label=None, name="closed_sets"):
    """Hasse diagram of the closed sets by inclusion, in DOT."""
    label = label or (lambda p: str(p))
    ids = {m: f"c{i}" for i, m in enumerate(sys.closed)}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for m in sys.closed:
        text = "{" + ", ".join(label(p) for p in sys.ordered(m)) + "}"
        lines.append(f'  {ids[m]} [label="{text}"];')
    for lo, hi in hasse_edges(sys.closed):
        lines.append(f"  {ids[lo]} -> {ids[hi]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
