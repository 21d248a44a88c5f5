"""Independent brute-force counterparts of the optimized decision paths.

These re-derive each decision at desk scale from the raw definitions, so a
disagreement with the optimized modules means a real bug.  The only shared
code paths are the exact linear algebra primitives; in particular the atom
enumeration here never touches the completion procedure, and lattice
membership is additionally re-derivable by bounded coefficient enumeration
(present verdicts come with explicit coefficients; an absent verdict under
a finite bound is conclusive only together with the exact path, so
disagreements are reported, never auto-resolved).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .exact_linalg import (
    is_finite_p_group,
    is_prime,
    lattice_contains,
    lattice_from_generators,
    lattice_quotient,
)
from .exponents import as_exponent_vector
from .hilbert import AtomSet, _compositions
from .repspec import RepSpec, in_B
from .separating import SeparatingVerdict, Witness

_SUBSET_CAP = 20  # 2^n enumeration guard


def atoms_bruteforce(rep: RepSpec, degree_cap: int) -> AtomSet:
    """Minimal members of the monoid up to the degree cap, by direct scan.

    The caller must confirm completeness separately (the optimized path's
    largest atom degree must be below the cap).
    """
    if degree_cap < 1:
        raise ValueError("degree_cap must be >= 1")
    free = [tuple(row) for row in rep.free_rows]
    torsion = [(d, tuple(row)) for d, row in rep.torsion_rows]
    minimal: list[tuple[int, ...]] = []
    for total in range(1, degree_cap + 1):
        for candidate in _compositions(total, rep.n):
            member = True
            for row in free:
                if sum(w * c for w, c in zip(row, candidate)):
                    member = False
                    break
            if member:
                for d, row in torsion:
                    if sum(w * c for w, c in zip(row, candidate)) % d:
                        member = False
                        break
            if not member:
                continue
            if any(all(c >= m for c, m in zip(candidate, kept)) for kept in minimal):
                continue
            minimal.append(candidate)
    return AtomSet.from_atoms(rep.n, minimal)


def lattice_member_bounded(
    generators: Sequence, target, coeff_bound: int = 10
) -> Optional[tuple[int, ...]]:
    """Integer combination of the generators equal to the target, searching
    coefficients in [-coeff_bound, coeff_bound] by pruned depth-first scan.

    A returned coefficient vector is a sound membership proof; ``None``
    only means no combination exists within the bound.
    """
    gens = [tuple(getattr(g, "coords", g)) for g in generators]
    goal = tuple(getattr(target, "coords", target))
    k = len(gens)
    if k == 0:
        return () if not any(goal) else None
    dim = len(goal)
    # reach[i][c]: largest |contribution| to coordinate c from generators i..k-1
    reach = [[0] * dim for _ in range(k + 1)]
    for i in range(k - 1, -1, -1):
        for c in range(dim):
            reach[i][c] = reach[i + 1][c] + coeff_bound * abs(gens[i][c])

    def search(i: int, residual: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        if i == k:
            return () if not any(residual) else None
        if any(abs(residual[c]) > reach[i][c] for c in range(dim)):
            return None
        g = gens[i]
        for coeff in range(-coeff_bound, coeff_bound + 1):
            rest = search(i + 1, tuple(r - coeff * x for r, x in zip(residual, g)))
            if rest is not None:
                return (coeff,) + rest
        return None

    return search(0, goal)


def _all_subsets(n: int):
    for size in range(n + 1):
        yield from itertools.combinations(range(n), size)


def check_condition2_all_subsets(
    rep: RepSpec, atom_set: AtomSet, M: Iterable, characteristic: int = 0
) -> SeparatingVerdict:
    """Separating check over every index subset, with no support bound and
    no deduplication.  Hard-capped at 20 variables (2^n subsets)."""
    if rep.n > _SUBSET_CAP:
        raise ValueError(f"all-subsets oracle is capped at n <= {_SUBSET_CAP}")
    if characteristic != 0 and not is_prime(characteristic):
        raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
    members = [as_exponent_vector(m) for m in M]
    for m in members:
        if not in_B(rep, m):
            raise ValueError(f"member {m.coords} is not an invariant exponent")
    witnesses = []
    count = 0
    for J in _all_subsets(rep.n):
        count += 1
        allowed = frozenset(J)
        atoms_J = [a for a in atom_set.atoms if set(a.support) <= allowed]
        if not atoms_J:
            continue
        members_J = [m for m in members if set(m.support) <= allowed]
        small = lattice_from_generators(rep.n, [m.coords for m in members_J])
        if characteristic == 0:
            for a in atoms_J:
                if lattice_contains(small, a.coords) is None:
                    witnesses.append(Witness(subset=J, atom=a, certificate=None))
                    break
        else:
            big = lattice_from_generators(rep.n, [a.coords for a in atoms_J])
            if not is_finite_p_group(lattice_quotient(big, small), characteristic):
                witnesses.append(Witness(subset=J, atom=atoms_J[0], certificate=None))
    return SeparatingVerdict(
        is_separating=not witnesses,
        characteristic=characteristic,
        subsets_examined=count,
        support_bound_used=rep.n,
        witnesses=tuple(witnesses),
    )


def tau_definition_oracle(rep: RepSpec, atom_set: AtomSet) -> int:
    """Support-size threshold computed literally from its definition.

    For each candidate ``t`` and every index subset ``I``, the subgroup of
    the atoms supported in ``I`` is compared against the subgroup generated
    by the union of the atom sets of all ``J <= I`` with ``|J| <= t``.
    """
    if rep.n > _SUBSET_CAP:
        raise ValueError(f"definition oracle is capped at n <= {_SUBSET_CAP}")
    n = rep.n
    cache: dict[frozenset, object] = {}

    def lattice_of(atoms_subset: list) -> object:
        key = frozenset(a.coords for a in atoms_subset)
        lat = cache.get(key)
        if lat is None:
            lat = lattice_from_generators(n, [a.coords for a in atoms_subset])
            cache[key] = lat
        return lat

    subsets = list(_all_subsets(n))
    for t in range(n + 1):
        ok = True
        for I in subsets:
            allowed = frozenset(I)
            atoms_I = [a for a in atom_set.atoms if set(a.support) <= allowed]
            if not atoms_I:
                continue
            union: list = []
            seen = set()
            for J in itertools.chain.from_iterable(
                itertools.combinations(I, size) for size in range(min(t, len(I)) + 1)
            ):
                inner = frozenset(J)
                for a in atom_set.atoms:
                    if a.coords not in seen and set(a.support) <= inner:
                        seen.add(a.coords)
                        union.append(a)
            if lattice_of(union) != lattice_of(atoms_I):
                ok = False
                break
        if ok:
            return t
    raise AssertionError("threshold scan failed to terminate")


def beta_sep_definition_oracle(
    rep: RepSpec, atom_set: AtomSet, characteristic: int = 0
) -> int:
    """Least separating degree computed over every index subset directly."""
    if rep.n > _SUBSET_CAP:
        raise ValueError(f"definition oracle is capped at n <= {_SUBSET_CAP}")
    if characteristic != 0 and not is_prime(characteristic):
        raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
    degrees = sorted({a.length for a in atom_set.atoms})
    for d in [0] + degrees:
        ok = True
        for J in _all_subsets(rep.n):
            allowed = frozenset(J)
            atoms_J = [a for a in atom_set.atoms if set(a.support) <= allowed]
            if not atoms_J:
                continue
            capped = [a for a in atoms_J if a.length <= d]
            small = lattice_from_generators(rep.n, [a.coords for a in capped])
            if characteristic == 0:
                if any(lattice_contains(small, a.coords) is None for a in atoms_J):
                    ok = False
                    break
            else:
                big = lattice_from_generators(rep.n, [a.coords for a in atoms_J])
                if not is_finite_p_group(lattice_quotient(big, small), characteristic):
                    ok = False
                    break
        if ok:
            return d
    raise AssertionError("degree scan failed to terminate")


def _generated_set(gens: list[tuple[int, ...]], dim: int, degree_cap: int) -> set:
    elements = {(0,) * dim}
    frontier = {(0,) * dim}
    while frontier:
        new = set()
        for base in frontier:
            for g in gens:
                cand = tuple(b + x for b, x in zip(base, g))
                if sum(cand) <= degree_cap and cand not in elements:
                    elements.add(cand)
                    new.add(cand)
        frontier = new
    return elements


def monoid_contains(generators: Sequence, target) -> bool:
    """Membership in the monoid generated by the given vectors, by
    memoized subtract-and-recurse dynamic programming."""
    gens = [tuple(getattr(g, "coords", g)) for g in generators]
    goal = tuple(getattr(target, "coords", target))
    gens = [g for g in gens if any(g)]
    memo: dict[tuple[int, ...], bool] = {}

    def rec(v: tuple[int, ...]) -> bool:
        if not any(v):
            return True
        hit = memo.get(v)
        if hit is not None:
            return hit
        result = False
        for g in gens:
            if all(x >= y for x, y in zip(v, g)):
                if rec(tuple(x - y for x, y in zip(v, g))):
                    result = True
                    break
        memo[v] = result
        return result

    return rec(goal)


def is_difference_closed_small(generators: Sequence, degree_cap: int) -> bool:
    """Bounded verification that the generated monoid is difference-closed.

    Generates the monoid up to the degree cap and checks every comparable
    pair whose difference is small enough to be decidable from the
    generated set.  Returns True when no violation is found up to the cap;
    this is evidence, not a proof.
    """
    gens = [tuple(getattr(g, "coords", g)) for g in generators]
    gens = [g for g in gens if any(g)]
    if not gens:
        return True
    dim = len(gens[0])
    max_gen = max(sum(g) for g in gens)
    elements = sorted(_generated_set(gens, dim, degree_cap))
    member = set(elements)
    budget = degree_cap - max_gen
    for m in elements:
        for q in elements:
            if sum(m) - sum(q) > budget:
                continue
            if m == q:
                continue
            if all(a >= b for a, b in zip(m, q)):
                diff = tuple(a - b for a, b in zip(m, q))
                if diff not in member:
                    return False
    return True
