import random

import pytest

from sepmono import atoms, check_separating, make_repspec, tau_exact
from sepmono.exact_linalg import lattice_contains, lattice_from_generators
from sepmono.oracle import (
    atoms_bruteforce,
    beta_sep_definition_oracle,
    check_condition2_all_subsets,
    is_difference_closed_small,
    lattice_member_bounded,
    monoid_contains,
    tau_definition_oracle,
)

from conftest import family_atom_columns, random_repspec


def test_bruteforce_kernel_112(kernel_112_rep):
    out = atoms_bruteforce(kernel_112_rep, 6)
    assert {a.coords for a in out} == {(2, 0, 1), (0, 2, 1), (1, 1, 1)}
    for a in out:
        for b in out:
            if a != b:
                assert not a.leq(b)


def test_bruteforce_trivial():
    rep = make_repspec(3, 0, [], [])
    out = atoms_bruteforce(rep, 2)
    assert {a.coords for a in out} == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_bruteforce_parity(parity_rep):
    out = atoms_bruteforce(parity_rep, 4)
    assert {a.coords for a in out} == {(2, 0), (0, 2), (1, 1)}


def test_all_subsets_oracle_on_family(family_s2_t3):
    rep, atom_set = family_s2_t3
    c = family_atom_columns(2, 3)
    good = check_condition2_all_subsets(rep, atom_set, c[:4], 0)
    assert good.is_separating
    assert good.subsets_examined == 2**5
    bad = check_condition2_all_subsets(rep, atom_set, c[:3], 0)
    assert not bad.is_separating
    assert any(w.subset == (0, 1, 2, 3, 4) for w in bad.witnesses)


def test_all_subsets_oracle_trivial_members(family_s2_t3):
    rep, atom_set = family_s2_t3
    verdict = check_condition2_all_subsets(
        rep, atom_set, [a.coords for a in atom_set], 0
    )
    assert verdict.is_separating


def test_all_subsets_cap():
    rep = make_repspec(21, 0, [], [])
    with pytest.raises(ValueError, match="capped"):
        check_condition2_all_subsets(rep, atoms(rep), [], 0)


def test_tau_oracle_family(family_s2_t3):
    rep, atom_set = family_s2_t3
    assert tau_definition_oracle(rep, atom_set) == 5
    assert tau_definition_oracle(rep, atom_set) == tau_exact(rep, atom_set)


def test_tau_oracle_trivial():
    rep = make_repspec(3, 0, [], [])
    assert tau_definition_oracle(rep, atoms(rep)) == 1


def test_oracles_agree_randomized():
    rng = random.Random(101)
    for _ in range(15):
        rep = random_repspec(rng, max_n=4)
        atom_set = atoms(rep)
        assert tau_definition_oracle(rep, atom_set) == tau_exact(rep, atom_set)
        if atom_set.atoms:
            M = rng.sample(
                [a.coords for a in atom_set], rng.randint(0, len(atom_set.atoms))
            )
            for char in (0, 3):
                main = check_separating(rep, atom_set, M, char)
                ref = check_condition2_all_subsets(rep, atom_set, M, char)
                assert main.is_separating == ref.is_separating


def test_difference_closed_examples():
    assert is_difference_closed_small([(2, 0), (0, 2), (1, 1)], 8)
    assert not is_difference_closed_small([(2,), (3,)], 8)
    assert is_difference_closed_small([], 8)


def test_monoid_contains():
    gens = [(2, 0), (0, 2), (1, 1)]
    assert monoid_contains(gens, (3, 1))
    assert monoid_contains(gens, (0, 0))
    assert not monoid_contains(gens, (1, 0))


def test_bounded_membership_present_with_known_coefficients():
    rng = random.Random(103)
    for _ in range(25):
        dim = rng.randint(1, 4)
        gens = [
            tuple(rng.randint(-4, 4) for _ in range(dim))
            for _ in range(rng.randint(1, 3))
        ]
        coeffs = [rng.randint(-3, 3) for _ in gens]
        target = tuple(
            sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(dim)
        )
        found = lattice_member_bounded(gens, target, coeff_bound=10)
        assert found is not None
        rebuilt = tuple(
            sum(c * g[i] for c, g in zip(found, gens)) for i in range(dim)
        )
        assert rebuilt == target


def test_bounded_membership_agrees_with_exact_on_absent():
    # A vector outside the lattice can never be reached by any coefficients,
    # so the bounded scan must also report absence.
    rng = random.Random(107)
    for _ in range(25):
        dim = rng.randint(1, 4)
        gens = [
            tuple(rng.randint(-4, 4) for _ in range(dim))
            for _ in range(rng.randint(0, 3))
        ]
        lat = lattice_from_generators(dim, gens)
        target = tuple(rng.randint(-4, 4) for _ in range(dim))
        if lattice_contains(lat, target) is None:
            assert lattice_member_bounded(gens, target, coeff_bound=10) is None


def test_bounded_membership_found_implies_exact_membership():
    rng = random.Random(109)
    for _ in range(25):
        dim = rng.randint(1, 3)
        gens = [
            tuple(rng.randint(-3, 3) for _ in range(dim))
            for _ in range(rng.randint(1, 3))
        ]
        target = tuple(rng.randint(-3, 3) for _ in range(dim))
        found = lattice_member_bounded(gens, target, coeff_bound=6)
        if found is not None:
            lat = lattice_from_generators(dim, gens)
            assert lattice_contains(lat, target) is not None


def test_beta_sep_oracle_trivial():
    rep = make_repspec(3, 0, [], [])
    assert beta_sep_definition_oracle(rep, atoms(rep), 0) == 1
