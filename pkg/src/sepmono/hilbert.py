"""Atoms of the invariant-exponent monoid via Contejean-Devie completion.

The monoid ``B`` is cut out of ``N_0^n`` by homogeneous equations (free
weight rows) and congruences (torsion rows).  Congruences are converted to
equations by appending one nonnegative slack variable per torsion row:
because torsion residues are stored in ``[0, d)``, the pairing ``row . m``
is nonnegative, so ``row . m = 0 (mod d)`` becomes ``row . m - d*k = 0``
with ``k >= 0``.  The slack ``k = (row . m) / d`` is a monotone function of
``m``, hence ``m -> (m, slacks)`` is an isomorphism of partially ordered
monoids between ``B`` and the solution set of the extended homogeneous
system; in particular it matches minimal elements to minimal elements, so
projecting the Hilbert basis of the extended system onto the first ``n``
coordinates yields exactly the atoms of ``B``.

The extended system is solved by the Contejean-Devie frontier completion:
start from the unit vectors, and grow a vector ``t`` by ``e_j`` only when
the defect ``A.t`` has negative inner product with column ``A.e_j``; prune
anything that dominates a minimal solution already found.  The frontier is
processed breadth-first by degree with lexicographically sorted levels, so
the output order is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exponents import ExponentVector
from .repspec import RepSpec, in_B


@dataclass(frozen=True)
class ResourceLimits:
    """Hard caps for the completion procedure (Hilbert bases can be huge)."""

    max_frontier: int = 10_000_000
    max_degree: int = 10_000

    def __post_init__(self) -> None:
        if self.max_frontier < 1 or self.max_degree < 1:
            raise ValueError("resource caps must be positive")


class ResourceLimitExceeded(RuntimeError):
    """A resource cap was hit; no partial atom set is ever returned."""

    def __init__(self, message: str, frontier_size: int, degree_reached: int):
        super().__init__(
            f"{message} (frontier size {frontier_size}, degree reached {degree_reached})"
        )
        self.frontier_size = frontier_size
        self.degree_reached = degree_reached


@dataclass(frozen=True)
class AtomSet:
    """The finite set of atoms of the monoid, with support bookkeeping.

    ``atoms`` is sorted by (degree, lex); ``support_index[j]`` lists the
    positions of the atoms whose support contains variable ``j``.
    """

    ambient_dim: int
    atoms: tuple[ExponentVector, ...]
    max_length: int
    support_index: tuple[tuple[int, ...], ...]

    @classmethod
    def from_atoms(cls, ambient_dim: int, vectors: Iterable) -> "AtomSet":
        atoms = sorted(
            {ExponentVector(tuple(getattr(v, "coords", v))) for v in vectors},
            key=lambda a: a.grlex_key,
        )
        for a in atoms:
            if len(a.coords) != ambient_dim:
                raise ValueError("atom dimension does not match ambient dimension")
        index: list[list[int]] = [[] for _ in range(ambient_dim)]
        for pos, a in enumerate(atoms):
            for j in a.support:
                index[j].append(pos)
        return cls(
            ambient_dim=ambient_dim,
            atoms=tuple(atoms),
            max_length=max((a.length for a in atoms), default=0),
            support_index=tuple(tuple(ix) for ix in index),
        )

    def __iter__(self):
        return iter(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _hilbert_basis_homogeneous(
    equation_rows: Sequence[Sequence[int]], dim: int, limits: ResourceLimits
) -> list[tuple[int, ...]]:
    """Minimal nonzero solutions of ``A x = 0`` over ``N_0^dim``."""
    rows = [tuple(r) for r in equation_rows]
    columns = [tuple(r[j] for r in rows) for j in range(dim)]
    zero_value = (0,) * len(rows)

    minimal: list[tuple[int, ...]] = []
    frontier: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for j in range(dim):
        unit = tuple(int(i == j) for i in range(dim))
        frontier.append((unit, columns[j]))

    degree = 1
    while frontier:
        if degree > limits.max_degree:
            raise ResourceLimitExceeded(
                "degree cap exceeded during completion", len(frontier), degree
            )
        for vec, value in frontier:
            if value == zero_value:
                minimal.append(vec)
        children: dict[tuple[int, ...], tuple[int, ...]] = {}
        for vec, value in frontier:
            if value == zero_value:
                continue
            for j in range(dim):
                if _dot(value, columns[j]) >= 0:
                    continue
                child = vec[:j] + (vec[j] + 1,) + vec[j + 1 :]
                if child in children:
                    continue
                if any(all(c >= m for c, m in zip(child, mv)) for mv in minimal):
                    continue
                children[child] = tuple(a + b for a, b in zip(value, columns[j]))
        if len(children) > limits.max_frontier:
            raise ResourceLimitExceeded(
                "frontier cap exceeded during completion", len(children), degree
            )
        frontier = sorted(children.items())
        degree += 1
    return minimal


def _extended_system(rep: RepSpec) -> tuple[list[tuple[int, ...]], int]:
    """Free rows plus slack-extended torsion rows, over n + t variables."""
    t = len(rep.torsion_orders)
    rows: list[tuple[int, ...]] = []
    for row in rep.free_rows:
        rows.append(tuple(row) + (0,) * t)
    for i, (order, row) in enumerate(rep.torsion_rows):
        slack = tuple(-order if k == i else 0 for k in range(t))
        rows.append(tuple(row) + slack)
    return rows, rep.n + t


def atoms(rep: RepSpec, limits: Optional[ResourceLimits] = None) -> AtomSet:
    """The atoms (minimal nonzero elements) of the invariant-exponent monoid.

    Raises :class:`ResourceLimitExceeded` when a cap is hit; a partial set
    is never returned.
    """
    limits = limits or ResourceLimits()
    rows, dim = _extended_system(rep)
    solutions = _hilbert_basis_homogeneous(rows, dim, limits)
    projected = []
    for sol in solutions:
        head = sol[: rep.n]
        if any(head):  # defensive: slack-only minimal solutions cannot occur
            projected.append(head)
    return AtomSet.from_atoms(rep.n, projected)


def atoms_restricted(atom_set: AtomSet, indices: Iterable[int]) -> AtomSet:
    """Atoms supported inside the given index set.

    This is exactly the atom set of the restricted monoid: an element
    supported inside J decomposes only through elements supported inside J.
    """
    allowed = frozenset(indices)
    kept = [a for a in atom_set.atoms if set(a.support) <= allowed]
    return AtomSet.from_atoms(atom_set.ambient_dim, kept)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_B_up_to(rep: RepSpec, degree_cap: int) -> list[ExponentVector]:
    """All monoid elements of degree at most ``degree_cap``, in graded
    lexicographic order (degree ascending, then lex ascending)."""
    if degree_cap < 0:
        raise ValueError("degree_cap must be >= 0")
    out = []
    for total in range(degree_cap + 1):
        for candidate in _compositions(total, rep.n):
            if in_B(rep, candidate):
                out.append(ExponentVector(candidate))
    return out
