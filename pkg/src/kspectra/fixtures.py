"""Standard small algebras used by the tests, the CLI and the theorem suites."""

from __future__ import annotations

from itertools import permutations, product as iproduct

from .algebra import BOOLEAN, SEMILATTICE, FiniteAlgebra, product, trivial_algebra


def chain(n, name=None):
    """The n-element meet-semilattice chain ({0..n-1}, min)."""
    return FiniteAlgebra.from_function(SEMILATTICE, n, {"meet": min}, name or f"C{n}")


C2 = chain(2)
C3 = chain(3)
C2xC2 = product([C2, C2], "C2xC2")
TRIVIAL_SL = trivial_algebra(SEMILATTICE, "1sl")


def boolean_power(k, name=None):
    """B2^k with meet, join, neg, zero, one (coordinate bits, first factor most significant)."""
    n = 2**k
    full = n - 1
    return FiniteAlgebra.from_function(
        BOOLEAN,
        n,
        {
            "meet": lambda a, b: a & b,
            "join": lambda a, b: a | b,
            "neg": lambda a: full ^ a,
            "zero": lambda: 0,
            "one": lambda: full,
        },
        name or ("B2" if k == 1 else f"B2^{k}"),
    )


B2 = boolean_power(1)
B2xB2 = boolean_power(2, "B2xB2")
B2_3 = boolean_power(3, "B2^3")
TRIVIAL_BA = trivial_algebra(BOOLEAN, "1ba")

# Kleene's three-valued algebra in the Boolean signature: the middle value is
# a fixed point of neg, so no homomorphism into B2 exists.
K3 = FiniteAlgebra.from_function(
    BOOLEAN,
    3,
    {"meet": min, "join": max, "neg": lambda a: 2 - a, "zero": lambda: 0, "one": lambda: 2},
    "K3",
)


def _relabel(alg, perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    tables = []
    for (f, n), t in zip(alg.signature.symbols, alg.tables):
        new = []
        for args in iproduct(range(alg.size), repeat=n):
            new.append(perm[alg.op(f, *(inv[a] for a in args))])
        tables.append(tuple(new))
    return tuple(tables)


def canonical_tables(alg):
    """Lexicographically least table tuple over all relabelings."""
    return min(_relabel(alg, p) for p in permutations(range(alg.size)))


def _dedupe(algs):
    seen, out = set(), []
    for a in algs:
        key = (a.size, canonical_tables(a))
        if key not in seen:
            seen.add(key)
            out.append(a)
    return out


def magmas(n):
    """All binary algebras (one binary op) of size n, up to isomorphism."""
    algs = []
    for t in iproduct(range(n), repeat=n * n):
        algs.append(FiniteAlgebra(SEMILATTICE, n, (t,)))
    out = _dedupe(algs)
    return [FiniteAlgebra(a.signature, a.size, a.tables, f"M{n}_{i}") for i, a in enumerate(out)]


def semilattices(n):
    """All meet-semilattices of size n, up to isomorphism."""
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    algs = []
    for vals in iproduct(range(n), repeat=len(pairs)):
        t = [[0] * n for _ in range(n)]
        for a in range(n):
            t[a][a] = a
        for (a, b), v in zip(pairs, vals):
            t[a][b] = t[b][a] = v
        if all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n)):
            algs.append(FiniteAlgebra(SEMILATTICE, n, (tuple(v for row in t for v in row),)))
    out = _dedupe(algs)
    return [FiniteAlgebra(a.signature, a.size, a.tables, f"SL{n}_{i}") for i, a in enumerate(out)]


def semilattice_fixtures(max_size=4):
    """Every semilattice of size <= max_size up to isomorphism, then C2², C3."""
    out = []
    for n in range(1, max_size + 1):
        out.extend(semilattices(n))
    return out + [C2xC2, C3]


def small_magmas(max_size=2):
    out = []
    for n in range(1, max_size + 1):
        out.extend(magmas(n))
    return out


def boolean_fixtures():
    return [TRIVIAL_BA, B2, B2xB2, B2_3, K3]


def library():
    """Named algebras registered in every CLI workspace."""
    algs = [TRIVIAL_SL, C2, C3, chain(4), C2xC2, TRIVIAL_BA, B2, B2xB2, B2_3, K3]
    return {a.name: a for a in algs}


def class_library():
    return {"K2": ["C2"], "K3": ["C3"], "K23": ["C2", "C3"], "KB": ["B2"]}
