"""Command line front end: ``monodromy verify`` and ``monodromy report``.

Exit codes: 0 when every check passes, 1 on a check failure, 2 on a usage error.
Reports are single JSON documents with sorted keys; apart from ``elapsed_ms``
two runs with the same arguments produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__, linalg
from .checks import SUITES, Context, _jsonable, checks_for, decomposition_summary, suite_requirements
from .rootsys import build_root_system, validate_type

SCHEMA_VERSION = 1
EXCLUDED_FROM_WEYL_RECIPE = {("A", 1): "SL_2", ("A", 2): "SL_3", ("B", 3): "Spin_7"}


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid prime {text!r}")
    if not linalg.is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monodromy", description="Verify the monodromy computations.")
    parser.add_argument("--version", action="version", version=f"monodromy {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a suite of registered checks")
    v.add_argument("suite", nargs="?", choices=("all",) + SUITES, help="suite to run (default all)")
    v.add_argument("--suite", dest="suite_opt", choices=("all",) + SUITES, help="same as the positional suite")
    v.add_argument("--prime", type=_prime, default=73)
    v.add_argument("--seed", type=_int, default=0)
    v.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")

    r = sub.add_parser("report", help="summarise one group")
    r.add_argument("--family", required=True)
    r.add_argument("--rank", type=_int, required=True)
    r.add_argument("--prime", type=_prime, default=73)
    r.add_argument("--seed", type=_int, default=0)
    r.add_argument("--json", metavar="PATH", help="write the JSON report to PATH (default stdout)")
    return parser


def dump(doc: dict) -> str:
    return json.dumps(_jsonable(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _header(command: str, **params) -> dict:
    return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": command, "parameters": params}


def cmd_verify(suite: str, prime: int, seed: int, json_path: str | None) -> int:
    reason = suite_requirements(suite, prime)
    if reason:
        raise UsageError(reason)
    ctx = Context(prime, seed)
    records = []
    for check in checks_for(suite):
        rec = check.run(ctx)
        records.append(rec)
        if json_path != "-":
            print(f"{rec.status.upper():7s} {rec.check_id} ({rec.elapsed_ms} ms)", flush=True)
    records.sort(key=lambda r: r.check_id)
    counts = {s: sum(r.status == s for r in records) for s in ("pass", "fail", "skipped")}
    doc = _header("verify", suite=suite, family=None, rank=None, prime=prime, seed=seed)
    doc["checks"] = [r.to_dict() for r in records]
    doc["summary"] = counts
    if json_path is not None:
        _write(dump(doc), json_path)
    if json_path != "-":
        print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
    return 0 if counts["fail"] == 0 and counts["skipped"] == 0 else 1


def _orbit_summary(system) -> dict:
    from .rootsys import alternating_generators, subgroup_orbits, weyl_generators

    out = {"weyl": sorted(len(o) for o in subgroup_orbits(system, weyl_generators(system)))}
    if system.family in "ABCD" or system.label == "E7":
        out["alternating_part"] = sorted(len(o) for o in subgroup_orbits(system, alternating_generators(system)))
    return out


def _h0_summary(family: str, rank: int, prime: int) -> dict:
    from .ntlifts import e7_real_bound_check, real_h0_both, real_h0_max
    from .principal import even_height_fixed_dim, exponents

    s = build_root_system(family, rank)
    out: dict = {"principal_even_height": even_height_fixed_dim(s), "exponents": list(exponents(s))}
    if family in "ABCD" and not (family == "D" and rank < 4):
        n = rank + 1 if family == "A" else rank
        table = {}
        for d in range(1, n):
            x = real_h0_both(family, rank, d, prime)
            table[str(d)] = {"formula": x.formula, "explicit": x.explicit}
        out["weyl_real_h0_by_d"] = table
        out["weyl_real_h0_max"] = real_h0_max(family, rank)
    elif s.label == "E7" and prime > 3 * s.coxeter_number:
        r = e7_real_bound_check(prime)
        out["weyl_real_h0_bound"] = {"bound": r.bound, "max_h0": r.max_h0, "holds": r.holds}
    return out


def _ledger_summary(family: str, rank: int) -> dict:
    from .ledger import principal_rhs, weyl_slack_row

    out: dict = {"principal_rhs": principal_rhs(family, rank)}
    if (family in "ABC" and rank >= 2) or (family == "D" and rank >= 4) or (family, rank) == ("E", 7):
        row = weyl_slack_row(family, rank)
        out["weyl_slack"] = {"group": row.group, "rhs": row.rhs, "closed_form": row.closed_form}
    return out


def cmd_report(family: str, rank: int, prime: int, seed: int) -> dict:
    family = family.upper()
    try:
        validate_type(family, rank)
    except ValueError as exc:
        raise UsageError(str(exc))
    s = build_root_system(family, rank)
    doc = _header("report", family=family, rank=rank, prime=prime, seed=seed)
    notes = []
    decomposition: dict | None = None
    if family in "ABCD" or s.label == "E7":
        if prime > 3 * s.coxeter_number:
            decomposition = decomposition_summary(family, rank, prime, seed)
        else:
            notes.append(f"no decomposition: l = {prime} does not exceed 3h = {3 * s.coxeter_number}")
    else:
        notes.append(f"no Weyl-group construction is implemented for {s.label}")
    if (family, rank) in EXCLUDED_FROM_WEYL_RECIPE:
        notes.append(
            "the Weyl-group recipe is excluded for SL_2, SL_3 and Spin_7 "
            f"({EXCLUDED_FROM_WEYL_RECIPE[family, rank]} here); these cases rely on other lifting methods"
        )
    doc["group"] = {"label": s.label, "dim": s.rank + s.num_roots, "roots": s.num_roots, "coxeter_number": s.coxeter_number}
    doc["decomposition"] = decomposition
    doc["orbits"] = _orbit_summary(s)
    doc["h0"] = _h0_summary(family, rank, prime)
    doc["ledger"] = _ledger_summary(family, rank)
    doc["notes"] = notes
    return doc


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            if args.suite and args.suite_opt and args.suite != args.suite_opt:
                raise UsageError("conflicting suites")
            suite = args.suite or args.suite_opt or "all"
            return cmd_verify(suite, args.prime, args.seed, args.json)
        doc = cmd_report(args.family, args.rank, args.prime, args.seed)
        _write(dump(doc), args.json)
        return 0
    except UsageError as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
