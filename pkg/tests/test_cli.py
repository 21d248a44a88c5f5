import json
import subprocess
import sys

from sepmono.cli import JobConfig, run

from conftest import family_atom_columns, family_weights


def family_input(s, t, **extra):
    obj = {
        "n": 2 * s + 1,
        "torus_rank": s,
        "torsion": [],
        "weights": family_weights(s, t),
    }
    obj.update(extra)
    return json.dumps(obj)


PARITY = '{"n":2,"torus_rank":0,"torsion":[2],"weights":[[1,1]],"M":[[2,0],[0,2]]}'


def test_atoms_family():
    code, out = run(JobConfig("atoms"), family_input(2, 3))
    assert code == 0
    payload = json.loads(out)
    assert payload["beta"] == 7
    assert len(payload["atoms"]) == 5
    assert sorted(map(tuple, payload["atoms"])) == sorted(family_atom_columns(2, 3))
    # sorted by (degree, lex)
    keys = [(sum(a), tuple(a)) for a in payload["atoms"]]
    assert keys == sorted(keys)


def test_atoms_output_is_canonical():
    code, out = run(JobConfig("atoms"), family_input(1, 2))
    assert out == json.dumps(json.loads(out), sort_keys=True, separators=(",", ":")) + "\n"


def test_check_sep_char2_exit_zero():
    code, out = run(JobConfig("check-sep", characteristic=2), PARITY)
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "char": 2,
        "separating": True,
        "subsets_examined": payload["subsets_examined"],
        "support_bound_used": 2,
        "witnesses": [],
    }


def test_check_sep_char0_exit_one_with_certificate():
    code, out = run(JobConfig("check-sep", characteristic=0), PARITY)
    assert code == 1
    payload = json.loads(out)
    assert payload["separating"] is False
    wit = payload["witnesses"][0]
    assert wit["atom"] == [1, 1]
    cert = wit["certificate"]
    assert cert["modulus"] == 2
    # third-party re-verification by plain integer arithmetic
    u = cert["u"]
    for m in ([2, 0], [0, 2]):
        assert sum(a * b for a, b in zip(u, m)) % cert["modulus"] == 0
    assert sum(a * b for a, b in zip(u, wit["atom"])) % cert["modulus"] != 0


def test_characteristic_from_input_key():
    text = PARITY[:-1] + ',"p":2}'
    code, out = run(JobConfig("check-sep"), text)
    assert code == 0
    assert json.loads(out)["char"] == 2


def test_beta_and_beta_sep_and_tau():
    rep_213 = '{"n":3,"torus_rank":1,"torsion":[],"weights":[[2,1,-3]]}'
    code, out = run(JobConfig("beta"), rep_213)
    assert (code, json.loads(out)["beta"]) == (0, 5)
    code, out = run(JobConfig("beta-sep"), rep_213)
    assert (code, json.loads(out)["beta_sep"]) == (0, 5)
    code, out = run(JobConfig("tau"), family_input(2, 3))
    assert code == 0
    assert json.loads(out) == {"tau": 5, "tau_upper": 5}


def test_minimize():
    code, out = run(JobConfig("minimize"), family_input(2, 3))
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] == 4
    assert payload["char"] == 0


def test_realize_roundtrips_through_repspec_schema():
    code, out = run(JobConfig("realize"), '{"n":2,"D":[[2,0],[0,2],[1,1]]}')
    assert code == 0
    payload = json.loads(out)
    assert payload == {"n": 2, "torus_rank": 0, "torsion": [2], "weights": [[1, 1]]}
    # output is valid input for the other commands
    code, out = run(JobConfig("atoms"), out)
    assert code == 0
    assert sorted(map(tuple, json.loads(out)["atoms"])) == [(0, 2), (1, 1), (2, 0)]


def test_stats():
    code, out = run(JobConfig("stats"), family_input(2, 3))
    assert code == 0
    assert json.loads(out) == {
        "delta_upper": 4,
        "dim_G": 2,
        "kappa_lower": 3,
        "kappa_upper": 5,
        "rk_X": 2,
        "tau_upper": 5,
        "tau_upper_conjectural": 5,
    }


def test_general_sep():
    text = '{"n":2,"D":[[2,0],[1,1]],"M":[[2,0]]}'
    code, out = run(JobConfig("general-sep"), text)
    assert code == 1
    assert json.loads(out)["separating"] is False
    text2 = '{"n":1,"D":[[1],[2]],"M":[[2]],"p":2}'
    code, out = run(JobConfig("general-sep"), text2)
    assert code == 0
    assert json.loads(out)["separating"] is True


def test_oracle_ops():
    code, out = run(JobConfig("oracle", oracle_op="atoms"), family_input(1, 2))
    assert code == 0
    assert json.loads(out)["source"] == "bruteforce"
    code, out = run(JobConfig("oracle", oracle_op="tau"), family_input(1, 2))
    assert code == 0
    assert json.loads(out)["tau"] == 3
    code, out = run(
        JobConfig("oracle", oracle_op="check-sep", characteristic=2), PARITY
    )
    assert code == 0
    code, out = run(
        JobConfig("oracle", oracle_op="diff-closed"),
        '{"n":2,"D":[[2,0],[0,2],[1,1]],"caps":{"degree":8}}',
    )
    assert code == 0
    assert json.loads(out)["difference_closed"] is True
    code, out = run(
        JobConfig("oracle", oracle_op="diff-closed"),
        '{"n":1,"D":[[2],[3]],"caps":{"degree":8}}',
    )
    assert code == 1


def test_oracle_crosscheck_flag():
    code, out = run(
        JobConfig("check-sep", characteristic=0, oracle_crosscheck=True),
        family_input(2, 3, M=family_atom_columns(2, 3)[:4]),
    )
    assert code == 0
    assert json.loads(out)["oracle_crosscheck"] == {"agrees": True}


def test_input_errors_exit_two():
    code, out = run(JobConfig("atoms"), "not json")
    assert code == 2
    assert json.loads(out)["error"]["type"] == "input"
    code, out = run(JobConfig("atoms"), '{"n":2,"torus_rank":0,"torsion":[1],"weights":[[1,1]]}')
    assert code == 2
    code, out = run(JobConfig("check-sep"), '{"n":1,"torus_rank":0,"torsion":[],"weights":[]}')
    assert code == 2  # missing M
    code, out = run(JobConfig("check-sep", characteristic=6), PARITY)
    assert code == 2  # non-prime characteristic
    code, out = run(
        JobConfig("check-sep"),
        '{"n":3,"torus_rank":1,"torsion":[],"weights":[[1,1,-2]],"M":[[1,0,0]]}',
    )
    assert code == 2  # M not inside the monoid


def test_resource_cap_exit_three():
    code, out = run(JobConfig("atoms", max_degree=2), family_input(2, 3))
    assert code == 3
    err = json.loads(out)["error"]
    assert err["type"] == "resource-limit"
    assert err["degree_reached"] == 3
    assert err["frontier_size"] > 0


def test_caps_from_input_object():
    text = family_input(2, 3, caps={"degree": 2})
    code, out = run(JobConfig("atoms"), text)
    assert code == 3


def test_byte_identical_reruns_and_parallel():
    inputs = [
        family_input(2, 3, M=family_atom_columns(2, 3)[:3]),
        family_input(2, 3, M=family_atom_columns(2, 3)[:4]),
        PARITY,
    ]
    for text in inputs:
        base = run(JobConfig("check-sep"), text)
        again = run(JobConfig("check-sep"), text)
        par = run(JobConfig("check-sep", parallel=True), text)
        assert base == again == par


def test_console_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "sepmono.cli", "check-sep", "--char", "2"],
        input=PARITY,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["separating"] is True
