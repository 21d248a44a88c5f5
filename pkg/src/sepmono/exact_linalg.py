"""Exact integer matrix kernel: Hermite and Smith normal forms, lattices,
lattice membership, and lattice quotients with their invariant factors.

Everything here runs on arbitrary-precision Python integers; no floating
point is used anywhere in this module.  All values are immutable, and all
operations are pure functions, so they are safe to share across threads.

Conventions
-----------
* ``hnf`` computes a *column* Hermite normal form: only unimodular column
  operations are applied, so ``m @ u == h`` with ``|det(u)| = 1``.  In the
  canonical form the nonzero columns come first, each pivot (the topmost
  nonzero entry of its column) is positive, pivot rows strictly increase
  from left to right, and every entry to the left of a pivot in the pivot's
  row is reduced into ``[0, pivot)``.  This form is unique per column span,
  hence two lattices are equal iff their canonical bases are equal.
* ``snf`` computes the Smith normal form ``u @ m @ v == s`` with ``u`` and
  ``v`` unimodular and ``s`` diagonal, nonnegative, and satisfying the
  divisibility chain ``d1 | d2 | ...`` (zero entries trail).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class LatticeInclusionError(ValueError):
    """A claimed sublattice relation does not hold; carries the offender."""

    def __init__(self, vector: tuple[int, ...]):
        super().__init__(
            f"vector {vector} is not contained in the enclosing lattice"
        )
        self.vector = vector


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


# A dozen Miller-Rabin bases make the test deterministic for all inputs
# below 3.3 * 10^24, far beyond any modulus this library meets.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for i, row in enumerate(self.entries):
            if len(row) != self.cols:
                raise ValueError(f"row {i}: expected {self.cols} entries, got {len(row)}")
            for j, x in enumerate(row):
                if not isinstance(x, int):
                    raise ValueError(f"entry ({i},{j}): exact integer required, got {x!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        entries = tuple(tuple(row) for row in rows)
        if cols is None:
            if not entries:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(entries[0])
        return cls(len(entries), cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntMatrix":
        cols = [tuple(c) for c in columns]
        if rows is None:
            if not cols:
                raise ValueError("rows must be given for a matrix with no columns")
            rows = len(cols[0])
        for c in cols:
            if len(c) != rows:
                raise ValueError("ragged columns")
        entries = tuple(tuple(c[i] for c in cols) for i in range(rows))
        return cls(rows, len(cols), entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = self.entries[i]
            out.append(tuple(
                sum(row[k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)
            ))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def mat_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(sum(row[k] * v[k] for k in range(self.cols)) for row in self.entries)


def is_canonical_hnf(m: IntMatrix) -> bool:
    """Shape predicate for the canonical column Hermite form."""
    last_pivot_row = -1
    seen_zero_col = False
    for j in range(m.cols):
        col = m.column(j)
        pivot_row = next((i for i, x in enumerate(col) if x), None)
        if pivot_row is None:
            seen_zero_col = True
            continue
        if seen_zero_col:
            return False  # nonzero column after a zero column
        if pivot_row <= last_pivot_row:
            return False
        pivot = col[pivot_row]
        if pivot <= 0:
            return False
        for k in range(j):
            if not 0 <= m.entries[pivot_row][k] < pivot:
                return False
        last_pivot_row = pivot_row
    return True


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Canonical column Hermite form.

    Returns (h, u) with ``m @ u == h``, ``u`` square unimodular, and ``h``
    satisfying :func:`is_canonical_hnf`.
    """
    h = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(m.cols)] for i in range(m.cols)]

    def combine(j: int, k: int, a: int, b: int, c: int, d: int) -> None:
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for mat in (h, u):
            for row in mat:
                x, y = row[j], row[k]
                row[j] = a * x + b * y
                row[k] = c * x + d * y

    pivot = 0
    for r in range(m.rows):
        if pivot == m.cols:
            break
        for j in range(pivot + 1, m.cols):
            if h[r][j] == 0:
                continue
            a, b = h[r][pivot], h[r][j]
            if a != 0 and b % a == 0:
                q = b // a
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[pivot]
            else:
                g, x, y = _xgcd(a, b)
                combine(pivot, j, x, y, -(b // g), a // g)
        entry = h[r][pivot]
        if entry == 0:
            continue
        if entry < 0:
            for mat in (h, u):
                for row in mat:
                    row[pivot] = -row[pivot]
        p = h[r][pivot]
        for k in range(pivot):
            q = h[r][k] // p
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[k] -= q * row[pivot]
        pivot += 1

    h_mat = IntMatrix(m.rows, m.cols, tuple(tuple(row) for row in h))
    u_mat = IntMatrix(m.cols, m.cols, tuple(tuple(row) for row in u))
    return h_mat, u_mat


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form.

    Returns (s, u, v) with ``u @ m @ v == s``, ``u`` and ``v`` unimodular,
    and ``s`` diagonal with nonnegative entries in a divisibility chain.
    """
    R, C = m.rows, m.cols
    s = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(R)] for i in range(R)]
    v = [[int(i == j) for j in range(C)] for i in range(C)]

    def row_combine(i: int, k: int, a: int, b: int, c: int, d: int) -> None:
        for mat in (s, u):
            ri, rk = mat[i], mat[k]
            for idx in range(len(ri)):
                x, y = ri[idx], rk[idx]
                ri[idx] = a * x + b * y
                rk[idx] = c * x + d * y

    def row_shear(i: int, k: int, q: int) -> None:
        # row_i += q * row_k
        for mat in (s, u):
            ri, rk = mat[i], mat[k]
            for idx in range(len(ri)):
                ri[idx] += q * rk[idx]

    def col_combine(j: int, k: int, a: int, b: int, c: int, d: int) -> None:
        for mat in (s, v):
            for row in mat:
                x, y = row[j], row[k]
                row[j] = a * x + b * y
                row[k] = c * x + d * y

    def col_shear(j: int, k: int, q: int) -> None:
        # col_j += q * col_k
        for mat in (s, v):
            for row in mat:
                row[j] += q * row[k]

    def clear_at(k: int) -> None:
        # Make s[k][k] the only nonzero entry in row k and column k.
        # Proper gcd combines strictly shrink |s[k][k]|, shears never dirty
        # the pivot row/column, so this terminates.
        while True:
            for i in range(k + 1, R):
                b = s[i][k]
                if b == 0:
                    continue
                a = s[k][k]
                if a != 0 and b % a == 0:
                    row_shear(i, k, -(b // a))
                else:
                    g, x, y = _xgcd(a, b)
                    row_combine(k, i, x, y, -(b // g), a // g)
            dirty = False
            for j in range(k + 1, C):
                b = s[k][j]
                if b == 0:
                    continue
                a = s[k][k]
                if a != 0 and b % a == 0:
                    col_shear(j, k, -(b // a))
                else:
                    g, x, y = _xgcd(a, b)
                    col_combine(k, j, x, y, -(b // g), a // g)
                    dirty = True
            if not dirty and all(s[i][k] == 0 for i in range(k + 1, R)):
                return

    def positivize(k: int) -> None:
        if s[k][k] < 0:
            for idx in range(C):
                s[k][idx] = -s[k][idx]
            for idx in range(R):
                u[k][idx] = -u[k][idx]

    rank = 0
    for k in range(min(R, C)):
        # Pick the smallest-magnitude nonzero entry as pivot to limit growth.
        best = None
        for i in range(k, R):
            for j in range(k, C):
                x = s[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != k:
            s[k], s[bi] = s[bi], s[k]
            u[k], u[bi] = u[bi], u[k]
        if bj != k:
            for mat in (s, v):
                for row in mat:
                    row[k], row[bj] = row[bj], row[k]
        clear_at(k)
        positivize(k)
        rank += 1

    # Enforce the divisibility chain among the nonzero diagonal entries.
    k = 0
    while k < rank:
        advanced = True
        for l in range(k + 1, rank):
            if s[l][l] % s[k][k] != 0:
                col_shear(k, l, 1)  # drops s[l][l] into column k at row l
                clear_at(k)
                positivize(k)
                positivize(l)
                advanced = False
                break
        if advanced:
            k += 1

    s_mat = IntMatrix(R, C, tuple(tuple(row) for row in s))
    u_mat = IntMatrix(R, R, tuple(tuple(row) for row in u))
    v_mat = IntMatrix(C, C, tuple(tuple(row) for row in v))
    return s_mat, u_mat, v_mat


def det(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _coerce_vector(v, dim: int) -> tuple[int, ...]:
    coords = tuple(getattr(v, "coords", v))
    if len(coords) != dim:
        raise ValueError(f"vector of length {len(coords)} in ambient dimension {dim}")
    for x in coords:
        if not isinstance(x, int):
            raise ValueError(f"exact integer coordinates required, got {x!r}")
    return coords


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z^n presented by its canonical column-HNF basis.

    Because the basis is canonical, structural equality of two ``Lattice``
    values is equality of the subgroups they present.
    """

    ambient_dim: int
    basis: IntMatrix
    rank: int

    def __post_init__(self) -> None:
        if self.basis.rows != self.ambient_dim:
            raise ValueError("basis row count must equal the ambient dimension")
        if self.basis.cols != self.rank:
            raise ValueError("rank must equal the number of basis columns")
        if not is_canonical_hnf(self.basis):
            raise ValueError("basis is not in canonical column Hermite form")
        for j in range(self.rank):
            if not any(self.basis.column(j)):
                raise ValueError("basis contains a zero column")

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n), n)

    def contains(self, v) -> Optional[tuple[int, ...]]:
        return lattice_contains(self, v)

    def basis_vectors(self) -> list[tuple[int, ...]]:
        return self.basis.columns()


def lattice_from_generators(ambient_dim: int, vectors: Iterable[Sequence[int]]) -> Lattice:
    """The subgroup of Z^n generated by the given vectors."""
    cols = [_coerce_vector(v, ambient_dim) for v in vectors]
    mat = IntMatrix.from_columns(cols, rows=ambient_dim)
    h, _ = hnf(mat)
    rank = sum(1 for j in range(h.cols) if any(h.column(j)))
    basis = IntMatrix.from_columns([h.column(j) for j in range(rank)], rows=ambient_dim)
    return Lattice(ambient_dim, basis, rank)


def lattice_contains(lattice: Lattice, v) -> Optional[tuple[int, ...]]:
    """Membership with witness.

    Returns the unique integer coefficients ``c`` with ``basis @ c == v``
    when ``v`` lies in the lattice, otherwise ``None``.  The coefficient of
    each basis column is pinned by back-substitution at its pivot row, so a
    single pass decides membership exactly.
    """
    coords = _coerce_vector(v, lattice.ambient_dim)
    residual = list(coords)
    coeffs = []
    for j in range(lattice.rank):
        col = lattice.basis.column(j)
        pivot_row = next(i for i, x in enumerate(col) if x)
        q, rem = divmod(residual[pivot_row], col[pivot_row])
        if rem:
            return None
        coeffs.append(q)
        if q:
            for i in range(pivot_row, lattice.ambient_dim):
                residual[i] -= q * col[i]
    if any(residual):
        return None
    return tuple(coeffs)


@dataclass(frozen=True)
class QuotientStructure:
    """Isomorphism type of big/small: free rank plus invariant factors."""

    free_rank_defect: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.free_rank_defect < 0:
            raise ValueError("free rank defect must be nonnegative")
        prev = 1
        for f in self.invariant_factors:
            if f < 2:
                raise ValueError("invariant factors must be >= 2")
            if f % prev != 0:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = f

    @property
    def is_finite(self) -> bool:
        return self.free_rank_defect == 0

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        return math.prod(self.invariant_factors)


def lattice_quotient(big: Lattice, small: Lattice) -> QuotientStructure:
    """Structure of the quotient group big/small.

    The inclusion small <= big is verified on each basis vector; a failure
    raises :class:`LatticeInclusionError` carrying the offending vector.
    The small basis is rewritten in coordinates of the big basis and the
    invariant factors are read off the Smith form of that coordinate matrix.
    """
    if big.ambient_dim != small.ambient_dim:
        raise ValueError("quotient of lattices in different ambient dimensions")
    coord_cols = []
    for j in range(small.rank):
        vec = small.basis.column(j)
        c = lattice_contains(big, vec)
        if c is None:
            raise LatticeInclusionError(vec)
        coord_cols.append(c)
    coords = IntMatrix.from_columns(coord_cols, rows=big.rank)
    s, _, _ = snf(coords)
    diag = [s.entries[i][i] for i in range(min(s.rows, s.cols))]
    if any(d == 0 for d in diag[: small.rank]):
        raise AssertionError("independent basis produced a singular coordinate matrix")
    factors = tuple(d for d in diag if d >= 2)
    return QuotientStructure(big.rank - small.rank, factors)


def is_finite_p_group(q: QuotientStructure, p: int) -> bool:
    """True iff the quotient is finite and of p-power order.

    Decided by repeated exact division of each invariant factor by ``p``.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if q.free_rank_defect != 0:
        return False
    for f in q.invariant_factors:
        while f % p == 0:
            f //= p
        if f != 1:
            return False
    return True


def abelian_group_rank(free_rank: int, torsion_orders: Sequence[int]) -> int:
    """Minimal number of generators of Z^free_rank + sum of Z/d_i.

    The torsion part is normalized to invariant factors first, so the
    answer does not depend on how the torsion summands were presented.
    """
    if free_rank < 0:
        raise ValueError("free rank must be nonnegative")
    orders = list(torsion_orders)
    for d in orders:
        if not isinstance(d, int) or d < 2:
            raise ValueError(f"torsion orders must be integers >= 2, got {d!r}")
    if not orders:
        return free_rank
    diag = IntMatrix.from_rows(
        [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
    )
    s, _, _ = snf(diag)
    nontrivial = sum(1 for i in range(len(orders)) if s.entries[i][i] >= 2)
    return free_rank + nontrivial
