"""Data model for a diagonalizable representation.

A diagonalizable group acting diagonally on ``n`` coordinates is described
by integer weight data: ``torus_rank`` free rows (the weights under the
torus factors) and one row per finite cyclic factor of order ``d_i``, whose
entries only matter modulo ``d_i`` and are stored as canonical residues in
``[0, d_i)``.  Column ``j`` of the weight matrix is the character through
which the group scales the ``j``-th coordinate.

The monoid ``B`` of this library is the set of exponent vectors ``m`` in
``N_0^n`` whose monomial ``x^m`` is invariant: every free row pairs to zero
with ``m`` and every torsion row pairs to zero modulo its order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .exact_linalg import (
    IntMatrix,
    Lattice,
    abelian_group_rank,
    snf,
)

if TYPE_CHECKING:  # pragma: no cover
    from .hilbert import AtomSet


@dataclass(frozen=True)
class RepSpec:
    n: int
    torus_rank: int
    torsion_orders: tuple[int, ...]
    weight_matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.torus_rank < 0:
            raise ValueError("torus_rank must be >= 0")
        for i, d in enumerate(self.torsion_orders):
            if not isinstance(d, int) or d < 2:
                raise ValueError(f"torsion[{i}]: order must be an integer >= 2, got {d!r}")
        expected_rows = self.torus_rank + len(self.torsion_orders)
        if self.weight_matrix.rows != expected_rows:
            raise ValueError(
                f"weights: expected {expected_rows} rows "
                f"(torus_rank {self.torus_rank} + {len(self.torsion_orders)} torsion), "
                f"got {self.weight_matrix.rows}"
            )
        if self.weight_matrix.cols != self.n:
            raise ValueError(
                f"weights: expected {self.n} columns, got {self.weight_matrix.cols}"
            )
        for i, d in enumerate(self.torsion_orders):
            row = self.weight_matrix.entries[self.torus_rank + i]
            for j, x in enumerate(row):
                if not 0 <= x < d:
                    raise ValueError(
                        f"weights[{self.torus_rank + i}][{j}]: torsion residue {x} "
                        f"not reduced modulo {d}"
                    )

    @property
    def free_rows(self) -> tuple[tuple[int, ...], ...]:
        return self.weight_matrix.entries[: self.torus_rank]

    @property
    def torsion_rows(self) -> tuple[tuple[int, tuple[int, ...]], ...]:
        """Pairs (order, residue row)."""
        return tuple(
            (d, self.weight_matrix.entries[self.torus_rank + i])
            for i, d in enumerate(self.torsion_orders)
        )

    def to_obj(self) -> dict:
        return {
            "n": self.n,
            "torus_rank": self.torus_rank,
            "torsion": list(self.torsion_orders),
            "weights": [list(row) for row in self.weight_matrix.entries],
        }


def make_repspec(
    n: int,
    torus_rank: int,
    torsion_orders: Sequence[int],
    weight_rows: Sequence[Sequence[int]],
) -> RepSpec:
    """Validate raw weight data and reduce torsion rows to canonical residues."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if not isinstance(torus_rank, int) or torus_rank < 0:
        raise ValueError(f"torus_rank must be an integer >= 0, got {torus_rank!r}")
    orders = []
    for i, d in enumerate(torsion_orders):
        if not isinstance(d, int) or d < 2:
            raise ValueError(f"torsion[{i}]: order must be an integer >= 2, got {d!r}")
        orders.append(d)
    rows = [list(r) for r in weight_rows]
    if len(rows) != torus_rank + len(orders):
        raise ValueError(
            f"weights: expected {torus_rank + len(orders)} rows "
            f"(torus_rank {torus_rank} + {len(orders)} torsion), got {len(rows)}"
        )
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"weights[{i}]: expected {n} entries, got {len(row)}")
        for j, x in enumerate(row):
            if not isinstance(x, int):
                raise ValueError(f"weights[{i}][{j}]: exact integer required, got {x!r}")
    for i, d in enumerate(orders):
        r = torus_rank + i
        rows[r] = [x % d for x in rows[r]]
    matrix = IntMatrix.from_rows(rows, cols=n)
    return RepSpec(n, torus_rank, tuple(orders), matrix)


def repspec_from_obj(obj) -> RepSpec:
    """Build a RepSpec from a decoded JSON object."""
    if not isinstance(obj, dict):
        raise ValueError(f"expected a JSON object, got {type(obj).__name__}")
    for key in ("n", "torus_rank", "torsion", "weights"):
        if key not in obj:
            raise ValueError(f"missing required key {key!r}")
    torsion = obj["torsion"]
    weights = obj["weights"]
    if not isinstance(torsion, list):
        raise ValueError("torsion: expected a list of integers")
    if not isinstance(weights, list) or not all(isinstance(r, list) for r in weights):
        raise ValueError("weights: expected a list of integer rows")
    return make_repspec(obj["n"], obj["torus_rank"], torsion, weights)


def parse_repspec(text: str) -> RepSpec:
    """Parse the JSON representation format used by the command line tool."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc
    return repspec_from_obj(obj)


def in_B(rep: RepSpec, m) -> bool:
    """Membership of an exponent vector in the invariant-exponent monoid.

    True iff every free row pairs to zero with ``m`` and every torsion row
    pairs to zero modulo its order.
    """
    coords = tuple(getattr(m, "coords", m))
    if len(coords) != rep.n:
        raise ValueError(f"vector of length {len(coords)} for a representation on {rep.n} variables")
    for row in rep.free_rows:
        if sum(w * c for w, c in zip(row, coords)) != 0:
            return False
    for order, row in rep.torsion_rows:
        if sum(w * c for w, c in zip(row, coords)) % order != 0:
            return False
    return True


@dataclass(frozen=True)
class GroupStats:
    """Group-level invariants and the proven bounds attached to them.

    ``tau_upper`` is the proven support-size bound used to truncate subset
    enumeration.  ``tau_upper_conjectural`` is a strictly sharper bound
    that is not proven; it is carried as metadata only and never used
    unless explicitly requested.
    """

    dim_G: int
    rk_X: int
    tau_upper: int
    tau_upper_conjectural: int
    kappa_lower: int
    kappa_upper: int
    delta_upper: int


def group_stats(rep: RepSpec) -> GroupStats:
    s = rep.torus_rank
    rk_x = abelian_group_rank(s, rep.torsion_orders)
    if rep.torsion_orders:
        tau_upper = 1 + 2 * s + rk_x
    else:
        # Torsion-free case admits the sharper torus bound 1 + 2s.
        tau_upper = min(1 + 2 * s + rk_x, 1 + 2 * s)
    return GroupStats(
        dim_G=s,
        rk_X=rk_x,
        tau_upper=tau_upper,
        tau_upper_conjectural=1 + s + rk_x,
        kappa_lower=1 + rk_x,
        kappa_upper=1 + s + rk_x,
        delta_upper=2 * s,
    )


def realize_from_lattice(lattice: Lattice) -> RepSpec:
    """A representation whose invariant-exponent monoid is lattice /\\ N_0^n.

    The quotient Z^n / lattice is presented through the Smith form of a
    basis matrix: rows of the left transform with unit elementary divisor
    impose no condition, rows with divisor d >= 2 become torsion rows of
    order d, and the remaining rows become free rows.  By construction,
    ``in_B(rep, m)`` holds iff ``m`` lies in the lattice, for every m.
    """
    n = lattice.ambient_dim
    r = lattice.rank
    if r == 0:
        # Zero lattice: the constraints pin every coordinate to 0.
        return make_repspec(n, n, (), IntMatrix.identity(n).entries)
    s_mat, u_mat, _ = snf(lattice.basis)
    diag = [s_mat.entries[i][i] for i in range(r)]
    free_rows = [list(u_mat.entries[i]) for i in range(r, n)]
    torsion = [(diag[i], list(u_mat.entries[i])) for i in range(r) if diag[i] >= 2]
    orders = [d for d, _ in torsion]
    rows = free_rows + [row for _, row in torsion]
    return make_repspec(n, n - r, orders, rows)


def is_closed_orbit_support(atoms: "AtomSet", indices: Iterable[int]) -> bool:
    """Whether a vector supported exactly on ``indices`` has a closed orbit.

    True iff the index set equals the union of the supports of the atoms
    supported inside it.  The empty set qualifies (the zero vector).
    """
    target = frozenset(indices)
    covered: set[int] = set()
    for atom in atoms.atoms:
        if set(atom.support) <= target:
            covered.update(atom.support)
    return covered == set(target)
