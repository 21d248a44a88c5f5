"""Separating checks for arbitrary monomial subalgebras.

Given a finite family ``D`` of exponent vectors generating a subalgebra
``K[x^d : d in D]``, a subset ``M`` of ``D`` is separating iff every
``d in D`` lies in the subgroup generated by the members of ``M``
supported inside ``supp(d)`` (characteristic zero), or some p-power
multiple of ``d`` does (characteristic p).

The condition is checked per element.  Reading it family-wise over every
index subset would be vacuously false for any nonzero generator at the
empty subset; the per-element form is the meaningful one, and it implies
the family-wise form ``D_J <= Z M_J`` for every subset ``J`` (monotone in
``J``, and each ``d`` is its own worst case at ``J = supp(d)``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exact_linalg import (
    is_finite_p_group,
    is_prime,
    lattice_contains,
    lattice_from_generators,
    lattice_quotient,
)
from .exponents import ExponentVector, as_exponent_vector
from .separating import (
    SeparatingVerdict,
    Witness,
    make_failure_certificate,
)


@dataclass(frozen=True)
class MonomialFamily:
    """A finite generating family of exponent vectors, deduplicated."""

    n: int
    generators: tuple[ExponentVector, ...]

    @classmethod
    def create(cls, n: int, vectors: Iterable) -> "MonomialFamily":
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        unique = sorted(
            {as_exponent_vector(v) for v in vectors}, key=lambda v: v.grlex_key
        )
        for v in unique:
            if len(v.coords) != n:
                raise ValueError(
                    f"generator {v.coords} has wrong dimension for n={n}"
                )
        return cls(n=n, generators=tuple(unique))


def check_separating_general(
    family: MonomialFamily, M: Iterable, characteristic: int = 0
) -> SeparatingVerdict:
    """Separating check for the monomial subalgebra generated by the family."""
    if characteristic != 0 and not is_prime(characteristic):
        raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
    members = sorted({as_exponent_vector(m) for m in M}, key=lambda v: v.grlex_key)
    family_set = set(family.generators)
    for m in members:
        if m not in family_set:
            raise ValueError(f"member {m.coords} is not one of the family's generators")

    lattice_cache: dict[tuple[int, ...], object] = {}

    def member_lattice(indices: tuple[int, ...]):
        lat = lattice_cache.get(indices)
        if lat is None:
            lat = lattice_from_generators(
                family.n, [members[i].coords for i in indices]
            )
            lattice_cache[indices] = lat
        return lat

    witnesses = []
    supports_seen = set()
    for d in family.generators:
        mask = d.support_mask
        supports_seen.add(mask)
        member_idx = tuple(
            i for i, m in enumerate(members) if m.support_mask & mask == m.support_mask
        )
        small = member_lattice(member_idx)
        if characteristic == 0:
            ok = lattice_contains(small, d.coords) is not None
        else:
            extended = lattice_from_generators(
                family.n, [members[i].coords for i in member_idx] + [d.coords]
            )
            quotient = lattice_quotient(extended, small)
            ok = is_finite_p_group(quotient, characteristic)
        if not ok:
            extended = lattice_from_generators(
                family.n, [members[i].coords for i in member_idx] + [d.coords]
            )
            cert = make_failure_certificate(extended, small, d, characteristic)
            witnesses.append(
                Witness(subset=d.support, atom=d, certificate=cert)
            )

    witnesses.sort(key=lambda w: (w.subset, w.atom.grlex_key))
    return SeparatingVerdict(
        is_separating=not witnesses,
        characteristic=characteristic,
        subsets_examined=len(supports_seen),
        support_bound_used=family.n,
        witnesses=tuple(witnesses),
    )
