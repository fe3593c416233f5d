"""Finite algebras of an arbitrary finite signature.

Elements are the dense indices ``0..size-1``.  An n-ary table is stored as a
flat row-major tuple: the entry for ``f(a_1, ..., a_n)`` sits at the
mixed-radix index ``a_1*size**(n-1) + ... + a_n``.  A nullary symbol has a
one-entry table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as iproduct

from .guards import SearchCounter, check_size
from .terms import Var


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    symbols: tuple  # ((name, arity), ...)

    def __post_init__(self):
        symbols = tuple((str(n), int(a)) for n, a in self.symbols)
        names = [n for n, _ in symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate symbol names in {names}")
        if any(a < 0 for _, a in symbols):
            raise ValueError("arities must be >= 0")
        object.__setattr__(self, "symbols", symbols)

    def arity(self, name):
        for n, a in self.symbols:
            if n == name:
                return a
        raise KeyError(name)

    @property
    def names(self):
        return [n for n, _ in self.symbols]

    @property
    def constants(self):
        return [n for n, a in self.symbols if a == 0]


SEMILATTICE = Signature((("meet", 2),))
BOOLEAN = Signature((("meet", 2), ("join", 2), ("neg", 1), ("zero", 0), ("one", 0)))
EMPTY = Signature(())


@dataclass(frozen=True)
class FiniteAlgebra:
    signature: Signature
    size: int
    tables: tuple  # one flat tuple per symbol, in signature order
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("algebras must be nonempty")
        check_size(self.size)
        tables = tuple(tuple(int(v) for v in t) for t in self.tables)
        if len(tables) != len(self.signature.symbols):
            raise ValueError("one table per signature symbol required")
        for (f, n), t in zip(self.signature.symbols, tables):
            if len(t) != self.size**n:
                raise ValueError(f"table {f!r} has {len(t)} entries, expected {self.size**n}")
            for row, v in enumerate(t):
                if not 0 <= v < self.size:
                    raise ValueError(f"table {f!r} row {row}: entry {v} out of range 0..{self.size - 1}")
        object.__setattr__(self, "tables", tables)

    @classmethod
    def from_function(cls, signature, size, funcs, name=""):
        """Build from callables ``funcs[name](*args) -> element``."""
        tables = []
        for f, n in signature.symbols:
            op = funcs[f]
            tables.append(tuple(op(*args) for args in iproduct(range(size), repeat=n)))
        return cls(signature, size, tuple(tables), name)

    @classmethod
    def from_nested(cls, signature, size, nested, name=""):
        """Build from nested row-major lists (0-ary tables given as a bare index)."""
        tables = []
        for f, n in signature.symbols:
            tables.append(tuple(_flatten(nested[f], n)))
        return cls(signature, size, tuple(tables), name)

    def nested_tables(self):
        return {f: _nest(t, self.size, n) for (f, n), t in zip(self.signature.symbols, self.tables)}

    @cached_property
    def _index(self):
        return {f: i for i, (f, _) in enumerate(self.signature.symbols)}

    def table(self, f):
        return self.tables[self._index[f]]

    def op(self, f, *args):
        t = self.table(f)
        i = 0
        for a in args:
            i = i * self.size + a
        return t[i]

    @cached_property
    def entries(self):
        """Per symbol, the list of ``(args, result)`` rows (cached)."""
        out = []
        for (f, n), t in zip(self.signature.symbols, self.tables):
            out.append([(args, t[i]) for i, args in enumerate(iproduct(range(self.size), repeat=n))])
        return out

    @cached_property
    def slots(self):
        """``(table, weight, bases)`` per argument slot of each non-nullary symbol:
        the entry for value ``v`` in that slot is ``table[base + v*weight]``."""
        out = []
        n = self.size
        for (f, k), t in zip(self.signature.symbols, self.tables):
            for slot in range(k):
                weight = n ** (k - 1 - slot)
                bases = []
                for rest in iproduct(range(n), repeat=k - 1):
                    base = 0
                    for i, v in enumerate(rest):
                        pos = i if i < slot else i + 1
                        base += v * n ** (k - 1 - pos)
                    bases.append(base)
                out.append((t, weight, tuple(bases)))
        return out

    @property
    def elements(self):
        return range(self.size)

    def __repr__(self):
        label = self.name or "FiniteAlgebra"
        return f"<{label} size={self.size} symbols={self.signature.names}>"


def _flatten(x, n):
    if n == 0:
        return [x[0] if isinstance(x, (list, tuple)) else x]
    if n == 1:
        return list(x)
    return [v for row in x for v in _flatten(row, n - 1)]


def _nest(t, size, n):
    if n == 0:
        return t[0]
    if n == 1:
        return list(t)
    step = size ** (n - 1)
    return [_nest(t[i * step:(i + 1) * step], size, n - 1) for i in range(size)]


def same_signature(a, b):
    if a.signature != b.signature:
        raise SignatureMismatch(f"{a!r} and {b!r} have different signatures")


@dataclass(frozen=True)
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def __call__(self, a):
        return self.map[a]

    def __repr__(self):
        return f"Homomorphism({self.source.name or '?'} -> {self.target.name or '?'}: {list(self.map)})"

    def is_valid(self):
        if len(self.map) != self.source.size:
            return False
        if any(not 0 <= v < self.target.size for v in self.map):
            return False
        return is_homomorphism(self.source, self.target, self.map)

    @property
    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self):
        return len(set(self.map)) == self.target.size

    def then(self, other):
        """``other ∘ self``."""
        return Homomorphism(self.source, other.target, tuple(other.map[v] for v in self.map))


def is_homomorphism(a, b, m):
    same_signature(a, b)
    for rows, tb in zip(a.entries, b.tables):
        for args, r in rows:
            j = 0
            for x in args:
                j = j * b.size + m[x]
            if tb[j] != m[r]:
                return False
    return True


def eval_term(alg, t, assignment):
    """Value of term ``t`` in ``alg`` under ``assignment`` (variable name -> element)."""
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise ValueError(f"unbound variable {t.name!r}") from None
    try:
        n = alg.signature.arity(t.symbol)
    except KeyError:
        raise ValueError(f"unknown symbol {t.symbol!r}") from None
    if n != len(t.args):
        raise ValueError(f"symbol {t.symbol!r} has arity {n}, applied to {len(t.args)} arguments")
    return alg.op(t.symbol, *(eval_term(alg, a, assignment) for a in t.args))


def _search(a, b, injective=False, first=False):
    """Backtracking over maps A -> B with forward propagation through the tables.

    The smallest unassigned element is always branched on next, in increasing
    image order, so solutions appear in lexicographic order of the map list.
    """
    same_signature(a, b)
    counter = SearchCounter(f"hom search {a!r} -> {b!r}")
    rows = [(args, r, b.tables[k], b.size) for k, rs in enumerate(a.entries) for args, r in rs]
    # rows indexed by the elements they mention, to limit re-checking
    touching = [[] for _ in range(a.size)]
    for row in rows:
        for x in set(row[0]):
            touching[x].append(row)
    nullary = [row for row in rows if not row[0]]
    out = []

    def propagate(m, used, pending):
        while pending:
            x = pending.pop()
            for args, r, tb, bs in touching[x]:
                if any(m[y] < 0 for y in args):
                    continue
                j = 0
                for y in args:
                    j = j * bs + m[y]
                v = tb[j]
                if m[r] < 0:
                    if injective and v in used:
                        return False
                    m[r] = v
                    used.add(v)
                    pending.append(r)
                elif m[r] != v:
                    return False
        return True

    def rec(m, used):
        counter.tick()
        try:
            x = m.index(-1)
        except ValueError:
            out.append(tuple(m))
            return first
        for v in range(b.size):
            if injective and v in used:
                continue
            m2, used2 = list(m), set(used)
            m2[x] = v
            used2.add(v)
            if propagate(m2, used2, [x]) and rec(m2, used2):
                return True
        return False

    m = [-1] * a.size
    used = set()
    for _, r, tb, _bs in nullary:
        v = tb[0]
        if m[r] >= 0 and m[r] != v:
            return []
        if m[r] < 0 and injective and v in used:
            return []
        m[r] = v
        used.add(v)
    if not propagate(m, used, [x for x in range(a.size) if m[x] >= 0]):
        return []
    if injective and a.size > b.size:
        return []
    rec(m, used)
    return sorted(out)


def enumerate_homs(a, b):
    """All homomorphisms ``a -> b`` in lexicographic order of their maps."""
    return [Homomorphism(a, b, m) for m in _search(a, b)]


def find_embedding(a, b):
    """First injective homomorphism ``a -> b`` in lexicographic order, or None."""
    found = _search(a, b, injective=True, first=True)
    return Homomorphism(a, b, found[0]) if found else None


def is_in_IS(a, K):
    return any(find_embedding(a, b) is not None for b in K)


def trivial_algebra(sig, name="1"):
    return FiniteAlgebra(sig, 1, tuple((0,) for _ in sig.symbols), name)


def product(algs, name=None):
    """Direct product.  The tuple ``(t_1, ..., t_k)`` is element
    ``t_1*|A_2|*...*|A_k| + ... + t_k`` (first factor most significant)."""
    algs = list(algs)
    if not algs:
        raise ValueError("empty product: use trivial_algebra")
    for b in algs[1:]:
        same_signature(algs[0], b)
    sizes = [b.size for b in algs]
    tuples = list(iproduct(*(range(s) for s in sizes)))
    total = len(tuples)
    check_size(total, "product")
    index = {t: i for i, t in enumerate(tuples)}
    tables = []
    for (f, n) in algs[0].signature.symbols:
        t = []
        for args in iproduct(range(total), repeat=n):
            comps = [tuples[x] for x in args]
            t.append(index[tuple(b.op(f, *(c[k] for c in comps)) for k, b in enumerate(algs))])
        tables.append(tuple(t))
    if name is None:
        name = "x".join(b.name or "?" for b in algs)
    return FiniteAlgebra(algs[0].signature, total, tuple(tables), name)


def product_tuples(algs):
    """Decoding of product indices back into component tuples."""
    return list(iproduct(*(range(b.size) for b in algs)))


def projections(algs, prod=None):
    prod = prod or product(algs)
    tuples = product_tuples(algs)
    return [Homomorphism(prod, b, tuple(t[k] for t in tuples)) for k, b in enumerate(algs)]


def tuple_map(homs, prod=None):
    """The induced map ``x -> (h_1(x), ..., h_k(x))`` into the product of the targets."""
    targets = [h.target for h in homs]
    prod = prod or product(targets)
    index = {t: i for i, t in enumerate(product_tuples(targets))}
    src = homs[0].source
    return Homomorphism(src, prod, tuple(index[tuple(h.map[x] for h in homs)] for x in range(src.size)))


def generated_subuniverse(alg, seed):
    """Least subset containing ``seed`` and the constants, closed under every table."""
    seed = set(seed)
    if any(not 0 <= x < alg.size for x in seed):
        raise ValueError("seed element out of range")
    sub = set(seed)
    for (f, n), t in zip(alg.signature.symbols, alg.tables):
        if n == 0:
            sub.add(t[0])
    frontier = True
    while frontier:
        frontier = False
        cur = sorted(sub)
        for (f, n), t in zip(alg.signature.symbols, alg.tables):
            if n == 0:
                continue
            for args in iproduct(cur, repeat=n):
                v = alg.op(f, *args)
                if v not in sub:
                    sub.add(v)
                    frontier = True
    return frozenset(sub)


def subalgebra(alg, subuniverse, name=None):
    """Induced algebra on a closed subset plus its inclusion homomorphism.

    Elements of the subalgebra are the members of ``subuniverse`` in
    increasing order.
    """
    elems = sorted(subuniverse)
    if not elems:
        raise ValueError("empty subuniverse: no subalgebra")
    pos = {x: i for i, x in enumerate(elems)}
    tables = []
    for f, n in alg.signature.symbols:
        t = []
        for args in iproduct(elems, repeat=n):
            v = alg.op(f, *args)
            if v not in pos:
                raise ValueError(f"subset not closed under {f!r}")
            t.append(pos[v])
        tables.append(tuple(t))
    sub = FiniteAlgebra(alg.signature, len(elems), tuple(tables), name or f"sub({alg.name})")
    return sub, Homomorphism(sub, alg, tuple(elems))


def subalgebra_generated(alg, seed):
    """``(subuniverse, inclusion)`` for the subalgebra generated by ``seed``."""
    sub = generated_subuniverse(alg, seed)
    if not sub:
        raise ValueError("empty seed and no constants: no subalgebra generated")
    return sub, subalgebra(alg, sub)[1]


def all_subuniverses(alg):
    """Every nonempty subuniverse, sorted by (size, members)."""
    out = set()
    for seed in range(1, 2**alg.size):
        out.add(generated_subuniverse(alg, [x for x in range(alg.size) if seed >> x & 1]))
    if alg.signature.constants:
        out.add(generated_subuniverse(alg, []))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def identity(alg):
    return Homomorphism(alg, alg, tuple(range(alg.size)))


def is_isomorphic(a, b):
    return a.size == b.size and find_embedding(a, b) is not None
