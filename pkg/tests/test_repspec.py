import random

import pytest

from sepmono import (
    atoms,
    group_stats,
    in_B,
    is_closed_orbit_support,
    lattice_contains,
    lattice_from_generators,
    make_repspec,
    parse_repspec,
    realize_from_lattice,
)
from sepmono.hilbert import enumerate_B_up_to

from conftest import family_rep, random_repspec


def test_parse_valid():
    rep = parse_repspec('{"n":3,"torus_rank":1,"torsion":[],"weights":[[1,1,-2]]}')
    assert rep.n == 3
    assert rep.torus_rank == 1
    assert rep.torsion_orders == ()
    assert rep.weight_matrix.entries == ((1, 1, -2),)


def test_parse_reduces_torsion_residues():
    rep = parse_repspec('{"n":2,"torus_rank":0,"torsion":[2],"weights":[[5,-1]]}')
    assert rep.weight_matrix.entries == ((1, 1),)


def test_parse_parity_fixture():
    rep = parse_repspec('{"n":2,"torus_rank":0,"torsion":[2],"weights":[[1,1]]}')
    members = {m.coords for m in enumerate_B_up_to(rep, 2)}
    assert members == {(0, 0), (1, 1), (2, 0), (0, 2)}


def test_parse_errors_are_precise():
    with pytest.raises(ValueError, match="malformed JSON"):
        parse_repspec("{")
    with pytest.raises(ValueError, match=r"torsion\[0\]"):
        parse_repspec('{"n":1,"torus_rank":0,"torsion":[1],"weights":[[0]]}')
    with pytest.raises(ValueError, match="expected 2 rows"):
        parse_repspec('{"n":1,"torus_rank":1,"torsion":[2],"weights":[[1]]}')
    with pytest.raises(ValueError, match=r"weights\[0\]\[1\]"):
        parse_repspec('{"n":2,"torus_rank":1,"torsion":[],"weights":[[1,"x"]]}')
    with pytest.raises(ValueError, match=r"weights\[0\]: expected 2"):
        parse_repspec('{"n":2,"torus_rank":1,"torsion":[],"weights":[[1]]}')


def test_in_B(kernel_112_rep, parity_rep):
    assert in_B(kernel_112_rep, (1, 1, 1))
    assert not in_B(kernel_112_rep, (1, 0, 0))
    assert in_B(parity_rep, (1, 1))
    assert not in_B(parity_rep, (1, 0))
    with pytest.raises(ValueError):
        in_B(parity_rep, (1, 1, 1))


def test_in_B_monoid_closure():
    rng = random.Random(11)
    for _ in range(30):
        rep = random_repspec(rng, max_n=4)
        members = enumerate_B_up_to(rep, 4)
        for _ in range(10):
            m = rng.choice(members)
            q = rng.choice(members)
            assert in_B(rep, m + q)


def test_group_stats_two_torus():
    stats = group_stats(make_repspec(5, 2, [], [[1, 0, 1, -3, 0], [0, 1, 1, 0, -3]]))
    assert stats.dim_G == 2
    assert stats.rk_X == 2
    assert stats.tau_upper == 5  # torsion-free bound 1 + 2s
    assert (stats.kappa_lower, stats.kappa_upper) == (3, 5)
    assert stats.delta_upper == 4


def test_group_stats_finite():
    stats = group_stats(make_repspec(2, 0, [2], [[1, 1]]))
    assert stats.dim_G == 0
    assert stats.rk_X == 1
    assert stats.tau_upper == 2
    assert (stats.kappa_lower, stats.kappa_upper) == (2, 2)


def test_group_stats_trivial_group():
    stats = group_stats(make_repspec(3, 0, [], []))
    assert stats.rk_X == 0
    assert stats.tau_upper == 1
    assert stats.delta_upper == 0


def test_group_stats_normalizes_torsion_presentation():
    # Z/2 + Z/3 is cyclic, so one generator suffices.
    stats = group_stats(make_repspec(2, 0, [2, 3], [[1, 0], [0, 1]]))
    assert stats.rk_X == 1


def test_tau_upper_for_torsion_free_is_torus_bound():
    for s in range(1, 4):
        rep = family_rep(s, 2)
        assert group_stats(rep).tau_upper == 1 + 2 * s
    assert group_stats(make_repspec(3, 0, [], [])).tau_upper == 1


def test_realize_full_lattice_gives_trivial_group():
    lat = lattice_from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rep = realize_from_lattice(lat)
    assert rep.torus_rank == 0
    assert rep.torsion_orders == ()
    assert all(in_B(rep, m) for m in [(0, 0, 0), (1, 2, 3), (5, 0, 0)])


def test_realize_kernel_lattice_roundtrip(kernel_112_rep):
    kernel = [(2, 0, 1), (0, 2, 1), (1, 1, 1)]
    lat = lattice_from_generators(3, kernel)
    rep = realize_from_lattice(lat)
    assert rep.torus_rank == 1
    assert rep.torsion_orders == ()
    for m in enumerate_B_up_to(kernel_112_rep, 8):
        assert in_B(rep, m)
    for m in _all_vectors(3, 8):
        assert in_B(rep, m) == in_B(kernel_112_rep, m)


def test_realize_even_sum_lattice():
    lat = lattice_from_generators(2, [(2, 0), (0, 2), (1, 1)])
    rep = realize_from_lattice(lat)
    assert rep.torus_rank == 0
    assert rep.torsion_orders == (2,)
    for m in _all_vectors(2, 8):
        assert in_B(rep, m) == (sum(m) % 2 == 0)


def test_realize_zero_lattice():
    lat = lattice_from_generators(2, [])
    rep = realize_from_lattice(lat)
    for m in _all_vectors(2, 4):
        assert in_B(rep, m) == (not any(m))


def _all_vectors(n, cap):
    from sepmono.hilbert import _compositions

    for total in range(cap + 1):
        yield from _compositions(total, n)


def test_realize_agrees_with_membership_randomized():
    rng = random.Random(23)
    for _ in range(25):
        n = 4
        gens = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(rng.randint(0, 4))]
        lat = lattice_from_generators(n, gens)
        rep = realize_from_lattice(lat)
        for m in _all_vectors(n, 6):
            assert in_B(rep, m) == (lattice_contains(lat, m) is not None)


def test_closed_orbit_support_empty(kernel_112_rep):
    assert is_closed_orbit_support(atoms(kernel_112_rep), set())


def test_closed_orbit_support_family(family_s2_t3):
    rep, atom_set = family_s2_t3
    assert is_closed_orbit_support(atom_set, {0, 1, 2, 3, 4})


def test_closed_orbit_support_missing_index(kernel_112_rep):
    atom_set = atoms(kernel_112_rep)
    # every atom's support meets the last variable
    assert not is_closed_orbit_support(atom_set, {0, 1})
    assert is_closed_orbit_support(atom_set, {0, 2})  # support of (2, 0, 1)


def test_closed_orbit_closure_idempotent():
    rng = random.Random(5)
    for _ in range(25):
        rep = random_repspec(rng, max_n=5)
        atom_set = atoms(rep)
        subset = {j for j in range(rep.n) if rng.random() < 0.5}

        def close(indices):
            out = set()
            for a in atom_set.atoms:
                if set(a.support) <= indices:
                    out.update(a.support)
            return out

        once = close(subset)
        assert close(once) == once
        assert is_closed_orbit_support(atom_set, once)
