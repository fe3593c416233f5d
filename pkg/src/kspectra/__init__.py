"""Spectra of finite algebras relative to a finite class K.

The spectrum of A is the set of congruences that arise as kernels of
homomorphisms from A into members of K, closed sets are cut out by equations,
and most of the classical commutative-algebra vocabulary (radicals,
nilradical, reduced algebras, irreducible components, prime decomposition,
Nullstellensatz) carries over.  Everything here is finite and exhaustive.
"""

from .algebra import (
    BOOLEAN,
    SEMILATTICE,
    FiniteAlgebra,
    Homomorphism,
    Signature,
    enumerate_homs,
    product,
)
from .closure import ClosureMorphism, ClosureSystem, irreducible_components, is_irreducible, topologize
from .congruence import Congruence, all_congruences, congruence_closure, quotient
from .free import check_nullstellensatz2, entails, free_algebra
from .guards import ResourceError, configured
from .separation import is_prime, prime_decomposition, separation_report
from .spectrum import Spectrum, SpectrumContext, nilradical, psi, radical, rspec, spectrum, v_closed
from .terms import DisjunctiveSystem, parse_equation, parse_term

__version__ = "0.1.0"

__all__ = [
    "BOOLEAN",
    "SEMILATTICE",
    "ClosureMorphism",
    "ClosureSystem",
    "Congruence",
    "DisjunctiveSystem",
    "FiniteAlgebra",
    "Homomorphism",
    "ResourceError",
    "Signature",
    "Spectrum",
    "SpectrumContext",
    "all_congruences",
    "check_nullstellensatz2",
    "configured",
    "congruence_closure",
    "entails",
    "enumerate_homs",
    "free_algebra",
    "irreducible_components",
    "is_irreducible",
    "is_prime",
    "nilradical",
    "parse_equation",
    "parse_term",
    "prime_decomposition",
    "product",
    "psi",
    "quotient",
    "radical",
    "rspec",
    "separation_report",
    "spectrum",
    "topologize",
    "v_closed",
]
