"""Decision procedures for separating sets of invariant monomials.

A subset ``M`` of the invariant-exponent monoid ``B`` gives a separating
set of monomials iff for every index subset ``J`` the atoms supported in
``J`` lie in the subgroup of ``Z^n`` generated by the members of ``M``
supported in ``J`` (characteristic zero), or the corresponding quotient is
a finite p-group (characteristic p).  Subset enumeration is truncated at
the proven support-size bound and deduplicated by the pair of filtered
sets, since the condition depends on ``J`` only through those.

Every negative verdict carries a witness: the subset, a failing atom, and
a dual-vector certificate that a third party can re-check by integer
arithmetic alone.
"""

from __future__ import annotations

import itertools
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .exact_linalg import (
    Lattice,
    is_finite_p_group,
    is_prime,
    lattice_contains,
    lattice_from_generators,
    lattice_quotient,
    snf,
)
from .exponents import ExponentVector, as_exponent_vector
from .hilbert import AtomSet
from .repspec import RepSpec, group_stats, in_B


@dataclass(frozen=True)
class FailureCertificate:
    """A checkable refutation of a lattice membership / p-group condition.

    The dual vector ``u`` pairs to zero modulo ``k`` with every generator
    of the small subgroup but not with the witness atom.  ``k == 0`` means
    the pairing is over the integers (a rank obstruction, which also rules
    out every nonzero multiple of the atom).  For positive characteristic
    the emitted modulus is coprime to the characteristic, so no p-power
    multiple of the atom can enter the subgroup either.
    """

    dual_vector: tuple[int, ...]
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 0:
            raise ValueError("modulus must be >= 0")


@dataclass(frozen=True)
class Witness:
    subset: tuple[int, ...]
    atom: ExponentVector
    certificate: Optional[FailureCertificate]


@dataclass(frozen=True)
class SeparatingVerdict:
    is_separating: bool
    characteristic: int
    subsets_examined: int
    support_bound_used: int
    witnesses: tuple[Witness, ...]


def _strip_factor(value: int, p: int) -> int:
    while value % p == 0:
        value //= p
    return value


def make_failure_certificate(
    big: Lattice, small: Lattice, atom: ExponentVector, characteristic: int
) -> FailureCertificate:
    """Dual-vector certificate that ``atom`` violates the lattice condition.

    Computed from the Smith form of the small lattice's basis: the rows of
    the left transform are integer functionals vanishing modulo the
    elementary divisors on the whole small lattice, and the transformed
    atom shows which functional detects the failure.  Raises ValueError if
    the atom does not actually violate the condition.
    """
    if characteristic != 0 and not is_prime(characteristic):
        raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
    n = small.ambient_dim
    if big.ambient_dim != n or len(atom.coords) != n:
        raise ValueError("ambient dimension mismatch")
    if lattice_contains(big, atom.coords) is None:
        raise ValueError("witness atom does not lie in the enclosing lattice")

    s_mat, u_mat, _ = snf(small.basis)
    diag = [s_mat.entries[i][i] for i in range(small.rank)]
    transform_rows = u_mat.entries
    y = u_mat.mat_vec(atom.coords)

    region = set(atom.support)
    for j in range(small.rank):
        for i, x in enumerate(small.basis.column(j)):
            if x:
                region.add(i)

    def emit(row: Sequence[int], modulus: int) -> FailureCertificate:
        dual = tuple(row[i] if i in region else 0 for i in range(n))
        return FailureCertificate(dual_vector=dual, modulus=modulus)

    for i in range(small.rank, n):
        if y[i] != 0:
            return emit(transform_rows[i], 0)
    for i in range(small.rank):
        if characteristic == 0:
            if y[i] % diag[i] != 0:
                return emit(transform_rows[i], diag[i])
        else:
            coprime_part = _strip_factor(diag[i], characteristic)
            if coprime_part > 1 and y[i] % coprime_part != 0:
                return emit(transform_rows[i], coprime_part)
    raise ValueError("certificate requested for a vector that satisfies the condition")


def verify_failure_certificate(
    certificate: FailureCertificate,
    members: Iterable,
    atom,
    characteristic: int,
) -> bool:
    """Re-check a certificate by direct integer arithmetic."""
    u = certificate.dual_vector
    k = certificate.modulus
    atom_coords = tuple(getattr(atom, "coords", atom))

    def pair(vec) -> int:
        coords = tuple(getattr(vec, "coords", vec))
        return sum(a * b for a, b in zip(u, coords))

    for m in members:
        value = pair(m)
        if (value != 0) if k == 0 else (value % k != 0):
            return False
    detected = pair(atom_coords)
    if k == 0:
        return detected != 0
    if detected % k == 0:
        return False
    if characteristic:
        coprime_part = _strip_factor(k, characteristic)
        if coprime_part <= 1 or detected % coprime_part == 0:
            return False
    return True


def _normalized_members(rep: RepSpec, M: Iterable) -> list[ExponentVector]:
    members = [as_exponent_vector(m) for m in M]
    for m in members:
        if len(m.coords) != rep.n:
            raise ValueError(f"member {m.coords} has wrong dimension for n={rep.n}")
        if not in_B(rep, m):
            raise ValueError(
                f"member {m.coords} is not an invariant exponent of this representation"
            )
    return members


def _check_atom_set(rep: RepSpec, atom_set: AtomSet) -> None:
    if atom_set.ambient_dim != rep.n:
        raise ValueError("atom set does not match the representation's dimension")


def _filtered_indices(masks: Sequence[int], subset_mask: int) -> tuple[int, ...]:
    return tuple(i for i, m in enumerate(masks) if m & subset_mask == m)


def _dedup_classes(
    n: int,
    atom_masks: Sequence[int],
    member_masks: Optional[Sequence[int]],
    max_size: int,
) -> list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
    """One representative subset per distinct pair of filtered index sets."""
    seen = set()
    classes = []
    for size in range(max_size + 1):
        for J in itertools.combinations(range(n), size):
            mask = 0
            for j in J:
                mask |= 1 << j
            atom_key = _filtered_indices(atom_masks, mask)
            member_key = (
                _filtered_indices(member_masks, mask) if member_masks is not None else ()
            )
            key = (atom_key, member_key)
            if key in seen:
                continue
            seen.add(key)
            classes.append((J, atom_key, member_key))
    return classes


class _LatticeCache:
    """Memoized lattices generated by index subsets of a fixed vector list."""

    def __init__(self, ambient_dim: int, vectors: Sequence[ExponentVector]):
        self.ambient_dim = ambient_dim
        self.vectors = vectors
        self._cache: dict[tuple[int, ...], Lattice] = {}

    def get(self, indices: tuple[int, ...]) -> Lattice:
        lattice = self._cache.get(indices)
        if lattice is None:
            lattice = lattice_from_generators(
                self.ambient_dim, [self.vectors[i].coords for i in indices]
            )
            self._cache[indices] = lattice
        return lattice


def _run_classes(
    classes: Sequence,
    worker: Callable,
    parallel: bool,
) -> list:
    if parallel and len(classes) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(worker, classes))
    return [worker(c) for c in classes]


def _charp_atom_failure(
    small: Lattice, atom: ExponentVector, p: int
) -> Optional[tuple[tuple[int, ...], int]]:
    """(dual row, modulus) if no p-power multiple of the atom enters small."""
    n = small.ambient_dim
    s_mat, u_mat, _ = snf(small.basis)
    y = u_mat.mat_vec(atom.coords)
    for i in range(small.rank, n):
        if y[i] != 0:
            return u_mat.entries[i], 0
    for i in range(small.rank):
        coprime_part = _strip_factor(s_mat.entries[i][i], p)
        if coprime_part > 1 and y[i] % coprime_part != 0:
            return u_mat.entries[i], coprime_part
    return None


def _support_bound(rep: RepSpec, use_conjectural_bound: bool) -> int:
    stats = group_stats(rep)
    bound = stats.tau_upper_conjectural if use_conjectural_bound else stats.tau_upper
    return min(rep.n, bound)


def check_separating_char0(
    rep: RepSpec,
    atom_set: AtomSet,
    M: Iterable,
    *,
    use_conjectural_bound: bool = False,
    parallel: bool = False,
) -> SeparatingVerdict:
    """Characteristic-zero separating check with certificates.

    For each deduplicated subset class, every atom supported in the subset
    must lie in the subgroup generated by the members supported there.
    """
    _check_atom_set(rep, atom_set)
    members = _normalized_members(rep, M)
    bound = _support_bound(rep, use_conjectural_bound)
    atom_masks = [a.support_mask for a in atom_set.atoms]
    member_masks = [m.support_mask for m in members]
    classes = _dedup_classes(rep.n, atom_masks, member_masks, bound)
    member_lattices = _LatticeCache(rep.n, members)
    atom_lattices = _LatticeCache(rep.n, atom_set.atoms)

    def worker(cls) -> Optional[Witness]:
        J, atom_idx, member_idx = cls
        if not atom_idx:
            return None
        small = member_lattices.get(member_idx)
        for i in atom_idx:
            atom = atom_set.atoms[i]
            if lattice_contains(small, atom.coords) is None:
                big = atom_lattices.get(atom_idx)
                cert = make_failure_certificate(big, small, atom, 0)
                return Witness(subset=J, atom=atom, certificate=cert)
        return None

    results = _run_classes(classes, worker, parallel)
    witnesses = sorted(
        (w for w in results if w is not None),
        key=lambda w: (w.subset, w.atom.grlex_key),
    )
    return SeparatingVerdict(
        is_separating=not witnesses,
        characteristic=0,
        subsets_examined=len(classes),
        support_bound_used=bound,
        witnesses=tuple(witnesses),
    )


def check_separating_charp(
    rep: RepSpec,
    atom_set: AtomSet,
    M: Iterable,
    p: int,
    *,
    use_conjectural_bound: bool = False,
    parallel: bool = False,
) -> SeparatingVerdict:
    """Characteristic-p separating check with certificates.

    For each deduplicated subset class the quotient of the atom subgroup by
    the member subgroup must be a finite p-group.  The member subgroup's
    inclusion in the atom subgroup is verified, not assumed.
    """
    if not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p}")
    _check_atom_set(rep, atom_set)
    if any(d % p == 0 for d in rep.torsion_orders):
        warnings.warn(
            f"characteristic {p} divides a torsion order of the group; "
            "the monoid-level criterion presumes the group order is prime to "
            "the characteristic",
            UserWarning,
            stacklevel=2,
        )
    members = _normalized_members(rep, M)
    bound = _support_bound(rep, use_conjectural_bound)
    atom_masks = [a.support_mask for a in atom_set.atoms]
    member_masks = [m.support_mask for m in members]
    classes = _dedup_classes(rep.n, atom_masks, member_masks, bound)
    member_lattices = _LatticeCache(rep.n, members)
    atom_lattices = _LatticeCache(rep.n, atom_set.atoms)

    def worker(cls) -> Optional[Witness]:
        J, atom_idx, member_idx = cls
        if not atom_idx:
            return None
        big = atom_lattices.get(atom_idx)
        small = member_lattices.get(member_idx)
        quotient = lattice_quotient(big, small)
        if is_finite_p_group(quotient, p):
            return None
        for i in atom_idx:
            atom = atom_set.atoms[i]
            failure = _charp_atom_failure(small, atom, p)
            if failure is not None:
                cert = make_failure_certificate(big, small, atom, p)
                return Witness(subset=J, atom=atom, certificate=cert)
        raise AssertionError("quotient failed the p-group test but no atom witnesses it")

    results = _run_classes(classes, worker, parallel)
    witnesses = sorted(
        (w for w in results if w is not None),
        key=lambda w: (w.subset, w.atom.grlex_key),
    )
    return SeparatingVerdict(
        is_separating=not witnesses,
        characteristic=p,
        subsets_examined=len(classes),
        support_bound_used=bound,
        witnesses=tuple(witnesses),
    )


def check_separating(
    rep: RepSpec,
    atom_set: AtomSet,
    M: Iterable,
    characteristic: int = 0,
    **kwargs,
) -> SeparatingVerdict:
    """Dispatch on the characteristic (0 or a prime)."""
    if characteristic == 0:
        return check_separating_char0(rep, atom_set, M, **kwargs)
    return check_separating_charp(rep, atom_set, M, characteristic, **kwargs)


def beta(atom_set: AtomSet) -> int:
    """Largest atom degree: the generating degree bound of the monoid."""
    return atom_set.max_length


def beta_sep(rep: RepSpec, atom_set: AtomSet, characteristic: int = 0) -> int:
    """Least degree ``d`` such that the atoms of degree at most ``d`` are a
    separating set.

    Per deduplicated subset class, scan the distinct atom degrees upward
    until the degree-capped atoms generate the class subgroup (char 0) or
    leave a finite p-group quotient (char p); the answer is the maximum
    over classes.
    """
    if characteristic != 0 and not is_prime(characteristic):
        raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
    _check_atom_set(rep, atom_set)
    bound = _support_bound(rep, use_conjectural_bound=False)
    atom_masks = [a.support_mask for a in atom_set.atoms]
    classes = _dedup_classes(rep.n, atom_masks, None, bound)
    cache = _LatticeCache(rep.n, atom_set.atoms)

    result = 0
    for _, atom_idx, _ in classes:
        if not atom_idx:
            continue
        full = cache.get(atom_idx)
        degrees = sorted({atom_set.atoms[i].length for i in atom_idx})
        for d in degrees:
            capped = tuple(i for i in atom_idx if atom_set.atoms[i].length <= d)
            small = cache.get(capped)
            if characteristic == 0:
                ok = small == full
            else:
                ok = is_finite_p_group(lattice_quotient(full, small), characteristic)
            if ok:
                result = max(result, d)
                break
        else:  # the full degree always works; defensive
            raise AssertionError("degree scan failed to terminate")
    return result


def tau_exact(rep: RepSpec, atom_set: AtomSet) -> int:
    """Least support-size threshold ``t`` such that, for every index subset,
    the subgroup generated by its atoms is already generated by the atoms
    of support size at most ``t``.

    Enumerates all index subsets, deduplicated by the filtered atom set
    (the condition depends on the subset only through it).
    """
    _check_atom_set(rep, atom_set)
    atom_masks = [a.support_mask for a in atom_set.atoms]
    seen = set()
    classes = []
    for mask in range(1 << rep.n):
        key = _filtered_indices(atom_masks, mask)
        if key in seen:
            continue
        seen.add(key)
        classes.append(key)
    cache = _LatticeCache(rep.n, atom_set.atoms)

    result = 0
    for atom_idx in classes:
        if not atom_idx:
            continue
        full = cache.get(atom_idx)
        sizes = sorted({len(atom_set.atoms[i].support) for i in atom_idx})
        for t in sizes:
            capped = tuple(
                i for i in atom_idx if len(atom_set.atoms[i].support) <= t
            )
            if cache.get(capped) == full:
                result = max(result, t)
                break
        else:
            raise AssertionError("support-size scan failed to terminate")
    return result


def tau_p_exact(rep: RepSpec, atom_set: AtomSet, p: int) -> int:
    """p-power analogue of :func:`tau_exact`: the quotient by the small-
    support subgroup must be a finite p-group rather than trivial."""
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    _check_atom_set(rep, atom_set)
    atom_masks = [a.support_mask for a in atom_set.atoms]
    seen = set()
    classes = []
    for mask in range(1 << rep.n):
        key = _filtered_indices(atom_masks, mask)
        if key in seen:
            continue
        seen.add(key)
        classes.append(key)
    cache = _LatticeCache(rep.n, atom_set.atoms)

    result = 0
    for atom_idx in classes:
        if not atom_idx:
            continue
        full = cache.get(atom_idx)
        sizes = sorted({len(atom_set.atoms[i].support) for i in atom_idx})
        for t in sizes:
            capped = tuple(
                i for i in atom_idx if len(atom_set.atoms[i].support) <= t
            )
            if is_finite_p_group(lattice_quotient(full, cache.get(capped)), p):
                result = max(result, t)
                break
        else:
            raise AssertionError("support-size scan failed to terminate")
    return result


def minimize_separating(
    rep: RepSpec, atom_set: AtomSet, characteristic: int = 0
) -> list[ExponentVector]:
    """Greedy inclusion-minimal separating subset of the atoms.

    Atoms are dropped in decreasing (degree, lex) order, re-verifying after
    each removal, so the result is deterministic.  Inclusion-minimal, not
    minimum-cardinality (the latter is a set-cover-type search).
    """
    current = list(atom_set.atoms)
    order = sorted(atom_set.atoms, key=lambda a: a.grlex_key, reverse=True)
    for candidate in order:
        trial = [a for a in current if a != candidate]
        verdict = check_separating(rep, atom_set, trial, characteristic)
        if verdict.is_separating:
            current = trial
    return sorted(current, key=lambda a: a.grlex_key)
