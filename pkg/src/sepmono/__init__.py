"""sepmono: exact decision procedures for separating sets of invariant
monomials under diagonalizable group actions.

The invariant ring of a diagonalizable group acting diagonally is spanned
by monomials; which exponent vectors occur is a monoid ``B`` cut out of
``N_0^n`` by integer weight data.  This package computes the atoms
(Hilbert basis) of ``B`` exactly, decides whether a given set of invariant
monomials separates orbits in characteristic zero or p, produces
machine-checkable failure certificates, and evaluates the associated
degree and support-size invariants.
"""

from .exact_linalg import (
    IntMatrix,
    Lattice,
    LatticeInclusionError,
    QuotientStructure,
    abelian_group_rank,
    det,
    hnf,
    is_canonical_hnf,
    is_finite_p_group,
    is_prime,
    lattice_contains,
    lattice_from_generators,
    lattice_quotient,
    snf,
)
from .exponents import ExponentVector, as_exponent_vector, ev
from .hilbert import (
    AtomSet,
    ResourceLimitExceeded,
    ResourceLimits,
    atoms,
    atoms_restricted,
    enumerate_B_up_to,
)
from .monomial_subalgebra import MonomialFamily, check_separating_general
from .repspec import (
    GroupStats,
    RepSpec,
    group_stats,
    in_B,
    is_closed_orbit_support,
    make_repspec,
    parse_repspec,
    realize_from_lattice,
)
from .separating import (
    FailureCertificate,
    SeparatingVerdict,
    Witness,
    beta,
    beta_sep,
    check_separating,
    check_separating_char0,
    check_separating_charp,
    make_failure_certificate,
    minimize_separating,
    tau_exact,
    tau_p_exact,
    verify_failure_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "AtomSet",
    "ExponentVector",
    "FailureCertificate",
    "GroupStats",
    "IntMatrix",
    "Lattice",
    "LatticeInclusionError",
    "MonomialFamily",
    "QuotientStructure",
    "RepSpec",
    "ResourceLimitExceeded",
    "ResourceLimits",
    "SeparatingVerdict",
    "Witness",
    "abelian_group_rank",
    "as_exponent_vector",
    "atoms",
    "atoms_restricted",
    "beta",
    "beta_sep",
    "check_separating",
    "check_separating_char0",
    "check_separating_charp",
    "check_separating_general",
    "det",
    "enumerate_B_up_to",
    "ev",
    "group_stats",
    "hnf",
    "in_B",
    "is_canonical_hnf",
    "is_closed_orbit_support",
    "is_finite_p_group",
    "is_prime",
    "lattice_contains",
    "lattice_from_generators",
    "lattice_quotient",
    "make_failure_certificate",
    "make_repspec",
    "minimize_separating",
    "parse_repspec",
    "realize_from_lattice",
    "snf",
    "tau_exact",
    "tau_p_exact",
    "verify_failure_certificate",
]
