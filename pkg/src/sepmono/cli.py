"""Command line surface: parse one JSON input schema, dispatch, and emit
canonical JSON (sorted keys, no whitespace variance) with certificates.

Exit codes: 0 computed, 1 a check command returned a "false" verdict (so
shell pipelines can branch on it), 2 input error, 3 resource cap exceeded.

Input schema, shared by every subcommand (unused keys are ignored):

    {"n": int, "torus_rank": int, "torsion": [int, ...],
     "weights": [[int, ...], ...],
     "M": [[int, ...], ...]?, "D": [[int, ...], ...]?, "p": int?,
     "caps": {"frontier": int?, "degree": int?}?}

"weights" has torus_rank + len(torsion) rows of n entries; torsion rows
are interpreted modulo the corresponding order.  All indices in outputs
are 0-based.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import monomial_subalgebra, oracle, separating
from .exact_linalg import LatticeInclusionError, is_prime, lattice_from_generators
from .hilbert import ResourceLimitExceeded, ResourceLimits, atoms
from .repspec import GroupStats, group_stats, realize_from_lattice, repspec_from_obj

COMMANDS = (
    "atoms",
    "check-sep",
    "beta",
    "beta-sep",
    "tau",
    "minimize",
    "realize",
    "stats",
    "general-sep",
    "oracle",
)

ORACLE_OPS = ("atoms", "check-sep", "tau", "beta-sep", "diff-closed")


@dataclass(frozen=True)
class JobConfig:
    command: str
    characteristic: Optional[int] = None  # None: take "p" from the input, else 0
    input_path: Optional[str] = None
    max_frontier: Optional[int] = None
    max_degree: Optional[int] = None
    unsafe_conjectural_bound: bool = False
    parallel: bool = False
    oracle_crosscheck: bool = False
    oracle_op: Optional[str] = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.max_frontier is not None and self.max_frontier < 1:
            raise ValueError("frontier cap must be positive")
        if self.max_degree is not None and self.max_degree < 1:
            raise ValueError("degree cap must be positive")


class _InputError(ValueError):
    pass


def _canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def _decode(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise _InputError("top-level input must be a JSON object")
    return obj


def _characteristic(config: JobConfig, obj: dict) -> int:
    char = config.characteristic
    if char is None:
        char = obj.get("p", 0)
    if not isinstance(char, int) or char < 0:
        raise _InputError(f"characteristic must be 0 or a prime, got {char!r}")
    if char != 0 and not is_prime(char):
        raise _InputError(f"characteristic must be 0 or a prime, got {char}")
    return char


def _limits(config: JobConfig, obj: dict) -> ResourceLimits:
    caps = obj.get("caps") or {}
    if not isinstance(caps, dict):
        raise _InputError("caps must be an object")
    frontier = config.max_frontier if config.max_frontier is not None else caps.get("frontier")
    degree = config.max_degree if config.max_degree is not None else caps.get("degree")
    defaults = ResourceLimits()
    try:
        return ResourceLimits(
            max_frontier=frontier if frontier is not None else defaults.max_frontier,
            max_degree=degree if degree is not None else defaults.max_degree,
        )
    except (TypeError, ValueError) as exc:
        raise _InputError(f"invalid caps: {exc}") from exc


def _vector_list(obj: dict, key: str, n: int) -> list[tuple[int, ...]]:
    raw = obj.get(key)
    if raw is None:
        raise _InputError(f"command requires key {key!r}")
    if not isinstance(raw, list) or not all(isinstance(v, list) for v in raw):
        raise _InputError(f"{key}: expected a list of integer vectors")
    out = []
    for i, v in enumerate(raw):
        if len(v) != n:
            raise _InputError(f"{key}[{i}]: expected {n} entries, got {len(v)}")
        for j, x in enumerate(v):
            if not isinstance(x, int):
                raise _InputError(f"{key}[{i}][{j}]: exact integer required, got {x!r}")
        out.append(tuple(v))
    return out


def _verdict_payload(verdict: separating.SeparatingVerdict) -> dict:
    witnesses = []
    for w in verdict.witnesses:
        entry = {"J": list(w.subset), "atom": list(w.atom.coords)}
        if w.certificate is not None:
            entry["certificate"] = {
                "u": list(w.certificate.dual_vector),
                "modulus": w.certificate.modulus,
            }
        else:
            entry["certificate"] = None
        witnesses.append(entry)
    return {
        "separating": verdict.is_separating,
        "char": verdict.characteristic,
        "support_bound_used": verdict.support_bound_used,
        "subsets_examined": verdict.subsets_examined,
        "witnesses": witnesses,
    }


def _stats_payload(stats: GroupStats) -> dict:
    return {
        "dim_G": stats.dim_G,
        "rk_X": stats.rk_X,
        "tau_upper": stats.tau_upper,
        "tau_upper_conjectural": stats.tau_upper_conjectural,
        "kappa_lower": stats.kappa_lower,
        "kappa_upper": stats.kappa_upper,
        "delta_upper": stats.delta_upper,
    }


def _cmd_atoms(config: JobConfig, obj: dict) -> tuple[dict, int]:
    rep = repspec_from_obj(obj)
    atom_set = atoms(rep, _limits(config, obj))
    payload = {
        "atoms": [list(a.coords) for a in atom_set.atoms],
        "beta": atom_set.max_length,
    }
    if config.oracle_crosscheck:
        cap = atom_set.max_length + 1
        brute = oracle.atoms_bruteforce(rep, cap)
        if brute.atoms != atom_set.atoms:
            raise AssertionError("atom computation disagrees with the brute-force scan")
        payload["oracle_crosscheck"] = {"agrees": True, "degree_cap": cap}
    return payload, 0


def _cmd_check_sep(config: JobConfig, obj: dict) -> tuple[dict, int]:
    rep = repspec_from_obj(obj)
    char = _characteristic(config, obj)
    members = _vector_list(obj, "M", rep.n)
    atom_set = atoms(rep, _limits(config, obj))
    verdict = separating.check_separating(
        rep,
        atom_set,
        members,
        char,
        use_conjectural_bound=config.unsafe_conjectural_bound,
        parallel=config.parallel,
    )
    payload = _verdict_payload(verdict)
    if config.unsafe_conjectural_bound:
        stats = group_stats(rep)
        payload["conditional_on_unproven_bound"] = (
            verdict.is_separating and verdict.support_bound_used < min(rep.n, stats.tau_upper)
        )
    if config.oracle_crosscheck:
        ref = oracle.check_condition2_all_subsets(rep, atom_set, members, char)
        if ref.is_separating != verdict.is_separating:
            raise AssertionError("separating check disagrees with the all-subsets oracle")
        payload["oracle_crosscheck"] = {"agrees": True}
    return payload, 0 if verdict.is_separating else 1


def _cmd_beta(config: JobConfig, obj: dict) -> tuple[dict, int]:
    rep = repspec_from_obj(obj)
    atom_set = atoms(rep, _limits(config, obj))
    return {"beta": separating.beta(atom_set)}, 0


def _cmd_beta_sep(config: JobConfig, obj: dict) -> tuple[dict, int]:
    rep = repspec_from_obj(obj)
    char = _characteristic(config, obj)
    atom_set = atoms(rep, _limits(config, obj))
    value = separating.beta_sep(rep, atom_set, char)
    payload = {"beta_sep": value, "char": char}
    if config.oracle_crosscheck:
        ref = oracle.beta_sep_definition_oracle(rep, atom_set, char)
        if ref != value:
            raise AssertionError("beta_sep disagrees with the all-subsets oracle")
        payload["oracle_crosscheck"] = {"agrees": True}
    return payload, 0


def _cmd_tau(config: JobConfig, obj: dict) -> tuple[dict, int]:
    rep = repspec_from_obj(obj)
    char = _characteristic(config, obj)
    atom_set = atoms(rep, _limits(config, obj))
    if char == 0:
        value = separating.tau_exact(rep, atom_set)
    else:
        value = separating.tau_p_exact(rep, atom_set, char)
    payload = {"tau": value, "tau_upper": group_stats(rep).tau_upper}
    if config.oracle_crosscheck and char == 0:
        ref = oracle.tau_definition_oracle(rep, atom_set)
        if ref != value:
            raise AssertionError("tau disagrees with the definition oracle")
        payload["oracle_crosscheck"] = {"agrees": True}
    return payload, 0


def _cmd_minimize(config: JobConfig, obj: dict) -> tuple[dict, int]:
    rep = repspec_from_obj(obj)
    char = _characteristic(config, obj)
    atom_set = atoms(rep, _limits(config, obj))
    subset = separating.minimize_separating(rep, atom_set, char)
    return {
        "minimal_separating": [list(a.coords) for a in subset],
        "char": char,
        "size": len(subset),
    }, 0


def _cmd_realize(config: JobConfig, obj: dict) -> tuple[dict, int]:
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise _InputError(f"n must be an integer >= 1, got {n!r}")
    generators = _vector_list(obj, "D", n)
    lattice = lattice_from_generators(n, generators)
    rep = realize_from_lattice(lattice)
    return rep.to_obj(), 0


def _cmd_stats(config: JobConfig, obj: dict) -> tuple[dict, int]:
    rep = repspec_from_obj(obj)
    return _stats_payload(group_stats(rep)), 0


def _cmd_general_sep(config: JobConfig, obj: dict) -> tuple[dict, int]:
    n = obj.get("n")
    if not isinstance(n, int) or n < 1:
        raise _InputError(f"n must be an integer >= 1, got {n!r}")
    char = _characteristic(config, obj)
    family = monomial_subalgebra.MonomialFamily.create(n, _vector_list(obj, "D", n))
    members = _vector_list(obj, "M", n)
    verdict = monomial_subalgebra.check_separating_general(family, members, char)
    return _verdict_payload(verdict), 0 if verdict.is_separating else 1


def _cmd_oracle(config: JobConfig, obj: dict) -> tuple[dict, int]:
    op = config.oracle_op
    if op not in ORACLE_OPS:
        raise _InputError(f"oracle op must be one of {ORACLE_OPS}, got {op!r}")
    if op == "diff-closed":
        n = obj.get("n")
        if not isinstance(n, int) or n < 1:
            raise _InputError(f"n must be an integer >= 1, got {n!r}")
        generators = _vector_list(obj, "D", n)
        cap = _limits(config, obj).max_degree
        ok = oracle.is_difference_closed_small(generators, cap)
        return {"difference_closed": ok, "degree_cap": cap}, 0 if ok else 1
    rep = repspec_from_obj(obj)
    if op == "atoms":
        cap = config.max_degree or (obj.get("caps") or {}).get("degree")
        if cap is None:
            main = atoms(rep)
            cap = main.max_length + 1
        brute = oracle.atoms_bruteforce(rep, cap)
        return {
            "atoms": [list(a.coords) for a in brute.atoms],
            "beta": brute.max_length,
            "degree_cap": cap,
            "source": "bruteforce",
        }, 0
    atom_set = atoms(rep, _limits(config, obj))
    if op == "check-sep":
        char = _characteristic(config, obj)
        members = _vector_list(obj, "M", rep.n)
        verdict = oracle.check_condition2_all_subsets(rep, atom_set, members, char)
        payload = _verdict_payload(verdict)
        payload["source"] = "all-subsets"
        return payload, 0 if verdict.is_separating else 1
    if op == "tau":
        value = oracle.tau_definition_oracle(rep, atom_set)
        return {"tau": value, "source": "definition"}, 0
    if op == "beta-sep":
        char = _characteristic(config, obj)
        value = oracle.beta_sep_definition_oracle(rep, atom_set, char)
        return {"beta_sep": value, "char": char, "source": "all-subsets"}, 0
    raise _InputError(f"unhandled oracle op {op!r}")


_HANDLERS = {
    "atoms": _cmd_atoms,
    "check-sep": _cmd_check_sep,
    "beta": _cmd_beta,
    "beta-sep": _cmd_beta_sep,
    "tau": _cmd_tau,
    "minimize": _cmd_minimize,
    "realize": _cmd_realize,
    "stats": _cmd_stats,
    "general-sep": _cmd_general_sep,
    "oracle": _cmd_oracle,
}


def run(config: JobConfig, input_text: str) -> tuple[int, str]:
    """Execute one job.  Returns (exit_code, canonical JSON output)."""
    try:
        obj = _decode(input_text)
        payload, code = _HANDLERS[config.command](config, obj)
        return code, _canonical(payload)
    except ResourceLimitExceeded as exc:
        payload = {
            "error": {
                "type": "resource-limit",
                "message": str(exc),
                "frontier_size": exc.frontier_size,
                "degree_reached": exc.degree_reached,
            }
        }
        return 3, _canonical(payload)
    except LatticeInclusionError as exc:
        payload = {
            "error": {
                "type": "input",
                "message": str(exc),
                "vector": list(exc.vector),
            }
        }
        return 2, _canonical(payload)
    except (ValueError, KeyError, TypeError) as exc:
        payload = {"error": {"type": "input", "message": str(exc)}}
        return 2, _canonical(payload)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepmono",
        description=(
            "Exact decision procedures for separating sets of invariant "
            "monomials under diagonalizable group actions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--input", default=None, help="input JSON path (default: stdin)")
        cmd.add_argument("--char", type=int, default=None,
                         help="characteristic, 0 or a prime (default: input key 'p', else 0)")
        cmd.add_argument("--max-frontier", type=int, default=None)
        cmd.add_argument("--max-degree", type=int, default=None)
        cmd.add_argument("--unsafe-conjectural-bound", action="store_true",
                         help="truncate subset enumeration at the sharper unproven bound")
        cmd.add_argument("--parallel", action="store_true",
                         help="check subset classes on a thread pool (same output bytes)")
        cmd.add_argument("--oracle-crosscheck", action="store_true",
                         help="re-run the brute-force oracle and require agreement")
        if name == "oracle":
            cmd.add_argument("--op", choices=ORACLE_OPS, required=True)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = JobConfig(
            command=args.command,
            characteristic=args.char,
            input_path=args.input,
            max_frontier=args.max_frontier,
            max_degree=args.max_degree,
            unsafe_conjectural_bound=args.unsafe_conjectural_bound,
            parallel=args.parallel,
            oracle_crosscheck=args.oracle_crosscheck,
            oracle_op=getattr(args, "op", None),
        )
    except ValueError as exc:
        sys.stdout.write(_canonical({"error": {"type": "input", "message": str(exc)}}))
        return 2
    if config.input_path:
        try:
            with open(config.input_path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            sys.stdout.write(_canonical({"error": {"type": "input", "message": str(exc)}}))
            return 2
    else:
        text = sys.stdin.read()
    code, output = run(config, text)
    sys.stdout.write(output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
