import random

import pytest

from sepmono import atoms, make_repspec


def family_weights(s: int, t: int) -> list[list[int]]:
    """Weight rows of the (2s+1)-variable torus family with parameter t.

    Row i scales variable i by 1, the middle variable by 1, and variable
    s+1+i by -t.
    """
    rows = []
    n = 2 * s + 1
    for i in range(s):
        row = [0] * n
        row[i] = 1
        row[s] = 1
        row[s + 1 + i] = -t
        rows.append(row)
    return rows


def family_rep(s: int, t: int):
    return make_repspec(2 * s + 1, s, [], family_weights(s, t))


def family_atom_columns(s: int, t: int) -> list[tuple[int, ...]]:
    """Closed-form atoms of the family, in the order c_1, ..., c_{s+t}."""
    n = 2 * s + 1
    cols = []
    for i in range(s):
        v = [0] * n
        v[i] = t
        v[s + 1 + i] = 1
        cols.append(tuple(v))
    v = [0] * n
    v[s] = t
    for i in range(s):
        v[s + 1 + i] = 1
    cols.append(tuple(v))
    for j in range(1, t):
        cols.append(tuple([j] * s + [t - j] + [1] * s))
    return cols


@pytest.fixture
def parity_rep():
    """n=2 representation of the order-2 group acting by (-1, -1)."""
    return make_repspec(2, 0, [2], [[1, 1]])


@pytest.fixture
def kernel_112_rep():
    """One-dimensional torus acting with weights (1, 1, -2)."""
    return make_repspec(3, 1, [], [[1, 1, -2]])


@pytest.fixture
def single_torus_213_rep():
    """One-dimensional torus acting with weights (2, 1, -3)."""
    return make_repspec(3, 1, [], [[2, 1, -3]])


@pytest.fixture
def family_s2_t3():
    rep = family_rep(2, 3)
    return rep, atoms(rep)


def random_repspec(rng: random.Random, max_n=6, max_s=2, max_entry=3,
                   max_torsion=2, max_order=4):
    n = rng.randint(1, max_n)
    s = rng.randint(0, max_s)
    t = rng.randint(0, max_torsion)
    orders = [rng.randint(2, max_order) for _ in range(t)]
    rows = [[rng.randint(-max_entry, max_entry) for _ in range(n)] for _ in range(s)]
    rows += [[rng.randint(0, orders[i] - 1) for _ in range(n)] for i in range(t)]
    return make_repspec(n, s, orders, rows)
