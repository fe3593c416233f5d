"""Congruences as operation-compatible partitions.

A congruence is stored as its least-representative labeling: ``labels[x]``
is the smallest element of the block of ``x``.  That makes equality and
hashing structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .algebra import FiniteAlgebra, Homomorphism
from .guards import SearchCounter, check_size


class NotACongruence(ValueError):
    pass


def _canonical(labels):
    first = {}
    return tuple(first.setdefault(v, i) for i, v in enumerate(labels))


@dataclass(frozen=True)
class Congruence:
    labels: tuple

    def __post_init__(self):
        object.__setattr__(self, "labels", _canonical(self.labels))

    @classmethod
    def from_blocks(cls, blocks, size=None):
        if size is None:
            size = sum(len(b) for b in blocks)
        labels = [-1] * size
        for k, b in enumerate(blocks):
            for x in b:
                if labels[x] != -1:
                    raise ValueError(f"element {x} appears in two blocks")
                labels[x] = k
        if -1 in labels:
            raise ValueError("blocks do not cover the universe")
        return cls(tuple(labels))

    @classmethod
    def diagonal(cls, size):
        return cls(tuple(range(size)))

    @classmethod
    def total(cls, size):
        return cls((0,) * size)

    @property
    def size(self):
        return len(self.labels)

    @cached_property
    def blocks(self):
        out = {}
        for x, r in enumerate(self.labels):
            out.setdefault(r, []).append(x)
        return [out[r] for r in sorted(out)]

    @property
    def num_blocks(self):
        return len(set(self.labels))

    def related(self, a, b):
        return self.labels[a] == self.labels[b]

    __contains__ = lambda self, pair: self.labels[pair[0]] == self.labels[pair[1]]

    @cached_property
    def pairs(self):
        return frozenset((a, b) for blk in self.blocks for a in blk for b in blk)

    @cached_property
    def mask(self):
        """Bitmask over the ``size*size`` ordered pairs (bit ``a*size+b``)."""
        n, m = self.size, 0
        for blk in self.blocks:
            for a in blk:
                for b in blk:
                    m |= 1 << (a * n + b)
        return m

    @property
    def is_diagonal(self):
        return self.num_blocks == self.size

    @property
    def is_total(self):
        return self.num_blocks == 1

    def __le__(self, other):
        return leq(self, other)

    def sort_key(self):
        return (-self.num_blocks, self.labels)

    def __str__(self):
        return "|".join("".join(map(str, b)) if self.size <= 10 else ",".join(map(str, b)) for b in self.blocks)

    def __repr__(self):
        return f"Congruence({self.blocks})"


def is_congruence(alg, theta):
    """Compatibility check: related arguments give related results."""
    lab = theta.labels
    for rows in alg.entries:
        seen = {}
        for args, r in rows:
            key = tuple(lab[a] for a in args)
            if seen.setdefault(key, lab[r]) != lab[r]:
                return False
    return True


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if b < a:
            a, b = b, a
        self.parent[b] = a
        return True


def congruence_closure(alg, pairs):
    """Least congruence containing ``pairs``.

    Union-find merges are queued; each merged pair ``(a, b)`` is substituted
    into every argument slot of every table row and the resulting values are
    merged in turn, until nothing new is merged.
    """
    n = alg.size
    uf = _UnionFind(n)
    queue = []
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair {(a, b)} out of range")
        if uf.union(a, b):
            queue.append((a, b))
    slots = alg.slots
    while queue:
        a, b = queue.pop()
        for t, weight, bases in slots:
            ia, ib = a * weight, b * weight
            for base in bases:
                x, y = t[base + ia], t[base + ib]
                if x != y and uf.union(x, y):
                    queue.append((x, y))
    return Congruence(tuple(uf.find(x) for x in range(n)))


def principal(alg, a, b):
    return congruence_closure(alg, [(a, b)])


def meet(thetas, size=None):
    """Intersection; the empty meet is the total relation (needs ``size``)."""
    thetas = list(thetas)
    if not thetas:
        if size is None:
            raise ValueError("empty meet needs the universe size")
        return Congruence.total(size)
    n = thetas[0].size
    if any(t.size != n for t in thetas) or (size is not None and size != n):
        raise ValueError("congruences on different universes")
    if len(thetas) == 1:
        return thetas[0]
    return Congruence(tuple(zip(*(t.labels for t in thetas))))


def join(alg, thetas):
    thetas = list(thetas)
    if any(t.size != alg.size for t in thetas):
        raise ValueError("congruences on different universes")
    pairs = [(x, r) for t in thetas for x, r in enumerate(t.labels) if x != r]
    return congruence_closure(alg, pairs)


def leq(a, b):
    if a.size != b.size:
        raise ValueError("congruences on different universes")
    return all(b.labels[x] == b.labels[r] for x, r in enumerate(a.labels))


def kernel(h):
    return Congruence(h.map)


def set_partitions(n):
    """All partitions of ``range(n)`` as restricted-growth label tuples."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()

    yield from rec([0], 0)


def all_congruences_exhaustive(alg):
    """Every compatible partition, filtered from all set partitions (small sizes)."""
    if alg.size > 10:
        raise ValueError("exhaustive partition filter is meant for size <= 10")
    found = [Congruence(p) for p in set_partitions(alg.size)]
    return sorted((t for t in found if is_congruence(alg, t)), key=Congruence.sort_key)


def all_congruences(alg):
    """Con A, canonically ordered (finest first).

    Every congruence is a join of principal ones, so the lattice is the
    join-closure of ``{Δ} ∪ {Cg(a, b)}``.
    """
    check_size(alg.size)
    counter = SearchCounter(f"congruence lattice of {alg!r}")
    n = alg.size
    principals = {principal(alg, a, b) for a in range(n) for b in range(a + 1, n)}
    found = {Congruence.diagonal(n)} | principals
    frontier = list(found)
    principals = sorted(principals, key=Congruence.sort_key)
    while frontier:
        nxt = []
        for t in frontier:
            for p in principals:
                counter.tick()
                if leq(p, t):
                    continue
                j = join(alg, [t, p])
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=Congruence.sort_key)


def quotient(alg, theta):
    """``(A/θ, π_θ)`` with blocks numbered by increasing least representative."""
    if theta.size != alg.size or not is_congruence(alg, theta):
        raise NotACongruence(f"{theta!r} is not a congruence of {alg!r}")
    reps = sorted(set(theta.labels))
    pos = {r: i for i, r in enumerate(reps)}
    proj = tuple(pos[theta.labels[x]] for x in range(alg.size))
    m = len(reps)
    tables = []
    for f, k in alg.signature.symbols:
        tables.append(tuple(proj[alg.op(f, *(reps[i] for i in args))] for args in iproduct(range(m), repeat=k)))
    q = FiniteAlgebra(alg.signature, m, tuple(tables), f"{alg.name or 'A'}/{theta}")
    return q, Homomorphism(alg, q, proj)


def projection_map(theta):
    reps = sorted(set(theta.labels))
    pos = {r: i for i, r in enumerate(reps)}
    return tuple(pos[theta.labels[x]] for x in range(theta.size))


def preimage(m, phi):
    """``m⁻¹(φ)`` for a point map ``m: A -> B`` and a congruence φ on B."""
    return Congruence(tuple(phi.labels[v] for v in m))


def image_pairs(m, pairs):
    return {(m[a], m[b]) for a, b in pairs}


def quotient_congruence(theta, psi):
    """``θ/ψ`` on the blocks of ψ (requires ψ ⊆ θ)."""
    if not leq(psi, theta):
        bad = next((a, b) for a, b in sorted(psi.pairs) if not theta.related(a, b))
        raise NotACongruence(f"{psi!r} is not contained in {theta!r}: pair {bad}")
    proj = projection_map(psi)
    labels = [None] * psi.num_blocks
    for x, i in enumerate(proj):
        labels[i] = theta.labels[x]
    return Congruence(tuple(labels))


def unquotient(phi, psi):
    """``π_ψ⁻¹(φ)``: pull a congruence on A/ψ back to A."""
    if phi.size != psi.num_blocks:
        raise ValueError("congruence is not on the quotient by psi")
    return preimage(projection_map(psi), phi)


def serialize(theta):
    return [list(b) for b in theta.blocks]
