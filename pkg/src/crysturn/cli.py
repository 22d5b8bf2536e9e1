"""Command-line front end.

Subcommands wrap the library: ``validate``, ``rinf``, ``spectrum``,
``reidnr``, ``find-d``, ``delta-base`` and ``catalog``.  Groups come either
from a file path or from a built-in catalog name.  Exit codes: 0 decided,
1 usage error, 2 invalid group data, 3 undecided (normaliser infinite or
over cap, or data missing), 4 internal failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .automorphisms import Automorphism, base_translations, find_translation_part
from .catalog import (
    GroupFileError,
    builtin_catalog,
    check_catalog,
    load_group,
)
from .groups import (
    DEFAULT_CLOSURE_CAP,
    ClosureCapExceeded,
    CrystGroup,
    GroupValidationError,
    matrix_group_closure,
)
from .linalg import IntMatrix, vector
from .reidemeister import (
    INFINITE,
    NormaliserUnavailable,
    RinfStatus,
    decide_r_infinity,
    reidemeister_number,
    search_r_infinity_witness,
    spectrum,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_DATA = 2
EXIT_UNDECIDED = 3
EXIT_INTERNAL = 4


class CliUsageError(Exception):
    pass


class Undecided(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


@dataclass
class CliInvocation:
    """One parsed invocation: subcommand, group source, options, output mode."""

    command: str
    source: Optional[str] = None
    json_mode: bool = False
    cap: int = DEFAULT_CLOSURE_CAP
    options: dict = field(default_factory=dict)


def _default_cap() -> int:
    raw = os.environ.get("CRYSTURN_CAP")
    if raw is None:
        return DEFAULT_CLOSURE_CAP
    try:
        return int(raw)
    except ValueError:
        raise CliUsageError(f"CRYSTURN_CAP must be an integer, got {raw!r}")


def _resolve_group(source: str) -> CrystGroup:
    if Path(source).exists():
        return load_group(Path(source))
    catalog = builtin_catalog()
    if source in catalog:
        return catalog.group(source)
    raise CliUsageError(f"no such file or catalog entry: {source}")


def _parse_matrix_arg(raw: str) -> IntMatrix:
    try:
        rows = json.loads(raw)
        return IntMatrix.from_rows(rows)
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise CliUsageError(f"cannot parse matrix {raw!r}: {exc}")


def _parse_vector_arg(raw: str):
    try:
        return vector(part.strip() for part in raw.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliUsageError(f"cannot parse vector {raw!r}: {exc}")


def _fmt_count(value) -> str:
    return "infinity" if value == INFINITE else str(value)


def _json_count(value):
    return "infinity" if value == INFINITE else value


def _normaliser_size(group: CrystGroup, cap: int):
    if group.normaliser_gens is None:
        return "absent"
    try:
        return matrix_group_closure(list(group.normaliser_gens), cap=cap).order
    except ClosureCapExceeded:
        return "infinite/over-cap"


def _emit(inv: CliInvocation, result: dict, lines: list[str], meta: dict) -> None:
    if inv.json_mode:
        print(json.dumps({"result": result, "meta": meta}, ensure_ascii=False, indent=2))
    else:
        for line in lines:
            print(line)


def build_parser() -> _Parser:
    parser = _Parser(prog="crysturn", description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a group file")
    p.add_argument("source")

    p = sub.add_parser("rinf", help="decide the R-infinity property")
    p.add_argument("source")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--search-words", type=int, default=None, metavar="L",
                   help="word-search length for an infinite normaliser")

    p = sub.add_parser("spectrum", help="compute the Reidemeister spectrum")
    p.add_argument("source")
    p.add_argument("--cap", type=int, default=None)

    p = sub.add_parser("reidnr", help="Reidemeister number of one automorphism")
    p.add_argument("source")
    p.add_argument("--D", required=True, dest="linear", metavar="MATRIX",
                   help='linear part, e.g. "[[0,-1],[1,-1]]"')
    p.add_argument("--d", required=True, dest="translation", metavar="VECTOR",
                   help='translation part, e.g. "1/2,0"')

    p = sub.add_parser("find-d", help="find a translation part for a linear part")
    p.add_argument("source")
    p.add_argument("--D", required=True, dest="linear", metavar="MATRIX")

    p = sub.add_parser("delta-base", help="list the base translations")
    p.add_argument("source")

    p = sub.add_parser("catalog", help="browse or check the built-in catalog")
    cat_sub = p.add_subparsers(dest="catalog_command", required=True)
    cat_sub.add_parser("list")
    show = cat_sub.add_parser("show")
    show.add_argument("name")
    check = cat_sub.add_parser("check")
    check.add_argument("name", nargs="?", default=None)
    return parser


def _cmd_validate(inv: CliInvocation) -> int:
    t0 = time.perf_counter()
    group = load_group(Path(inv.source)) if Path(inv.source).exists() else _resolve_group(inv.source)
    group.validate()
    meta = _meta(group, inv, t0)
    result = {
        "valid": True,
        "dimension": group.dimension,
        "holonomy_order": group.order,
        "bieberbach": group.is_bieberbach(),
    }
    _emit(inv, result, [
        f"valid group: {group.name or inv.source}",
        f"dimension {group.dimension}, holonomy order {group.order}, "
        f"Bieberbach: {result['bieberbach']}",
    ], meta)
    return EXIT_OK


def _meta(group: CrystGroup, inv: CliInvocation, t0: float) -> dict:
    return {
        "group": group.name or inv.source,
        "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
        "normaliser_size": _normaliser_size(group, inv.cap),
    }


def _cmd_rinf(inv: CliInvocation) -> int:
    t0 = time.perf_counter()
    group = _resolve_group(inv.source)
    verdict = decide_r_infinity(group, cap=inv.cap)
    search_len = inv.options.get("search_words")
    if verdict.status is RinfStatus.UNDECIDED_INFINITE and search_len:
        witness = search_r_infinity_witness(group, search_len)
        if witness is not None:
            result = {"r_infinity": False, "witness": [list(r) for r in witness.rows],
                      "via": "word search"}
            _emit(inv, result, [f"R-infinity: NO, witness D = {witness}"], _meta(group, inv, t0))
            return EXIT_OK
        result = {"r_infinity": None, "status": verdict.status.value,
                  "note": f"word search up to length {search_len} found no witness"}
        _emit(inv, result, [f"undecided: {result['note']}"], _meta(group, inv, t0))
        return EXIT_UNDECIDED
    if verdict.status is RinfStatus.FAILS:
        result = {"r_infinity": False, "witness": [list(r) for r in verdict.witness.rows]}
        _emit(inv, result, [f"R-infinity: NO, witness D = {verdict.witness}"], _meta(group, inv, t0))
        return EXIT_OK
    if verdict.status is RinfStatus.HOLDS:
        result = {"r_infinity": True}
        _emit(inv, result, ["R-infinity: YES (every automorphism has infinitely many "
                            "twisted conjugacy classes)"], _meta(group, inv, t0))
        return EXIT_OK
    result = {"r_infinity": None, "status": verdict.status.value}
    _emit(inv, result, [verdict.status.value], _meta(group, inv, t0))
    return EXIT_UNDECIDED


def _cmd_spectrum(inv: CliInvocation) -> int:
    t0 = time.perf_counter()
    group = _resolve_group(inv.source)
    try:
        computed = spectrum(group, cap=inv.cap)
    except (NormaliserUnavailable, ClosureCapExceeded) as exc:
        result = {"spectrum": None, "status": str(exc)}
        _emit(inv, result, [f"undecided: {exc}"], _meta(group, inv, t0))
        return EXIT_UNDECIDED
    result = {
        "finite_values": list(computed.finite_values),
        "contains_infinity": computed.contains_infinity,
        "relative_to_supplied_normaliser": computed.normaliser_complete,
    }
    lines = [
        "finite part: {" + ", ".join(map(str, computed.finite_values)) + "}",
        f"infinity: {'yes' if computed.contains_infinity else 'no'}",
        "(relative to the supplied normaliser generators)",
    ]
    _emit(inv, result, lines, _meta(group, inv, t0))
    return EXIT_OK


def _cmd_reidnr(inv: CliInvocation) -> int:
    t0 = time.perf_counter()
    group = _resolve_group(inv.source)
    linear = _parse_matrix_arg(inv.options["linear"])
    translation = _parse_vector_arg(inv.options["translation"])
    try:
        phi = Automorphism(group, translation, linear)
    except ValueError as exc:
        raise GroupValidationError(str(exc)) from exc
    value = reidemeister_number(phi)
    result = {"reidemeister_number": _json_count(value)}
    _emit(inv, result, [f"R = {_fmt_count(value)}"], _meta(group, inv, t0))
    return EXIT_OK


def _cmd_find_d(inv: CliInvocation) -> int:
    t0 = time.perf_counter()
    group = _resolve_group(inv.source)
    linear = _parse_matrix_arg(inv.options["linear"])
    try:
        d = find_translation_part(group, linear)
    except ValueError as exc:
        raise GroupValidationError(str(exc)) from exc
    if d is None:
        result = {"translation": None}
        lines = ["no translation part exists: no automorphism has this linear part"]
    else:
        result = {"translation": [str(x) for x in d]}
        lines = ["d = " + ",".join(str(x) for x in d)]
    _emit(inv, result, lines, _meta(group, inv, t0))
    return EXIT_OK


def _cmd_delta_base(inv: CliInvocation) -> int:
    t0 = time.perf_counter()
    group = _resolve_group(inv.source)
    bases = base_translations(group)
    result = {"base_translations": [[str(x) for x in d] for d in bases]}
    lines = [f"{len(bases)} base translation(s):"] + [
        "  " + ",".join(str(x) for x in d) for d in bases
    ]
    _emit(inv, result, lines, _meta(group, inv, t0))
    return EXIT_OK


def _cmd_catalog(inv: CliInvocation) -> int:
    t0 = time.perf_counter()
    catalog = builtin_catalog()
    sub = inv.options["catalog_command"]
    if sub == "list":
        names = catalog.names()
        result = {"entries": names}
        meta = {"count": len(names), "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}
        _emit(inv, result, names, meta)
        return EXIT_OK
    if sub == "show":
        name = inv.options["name"]
        if name not in catalog:
            raise CliUsageError(f"no catalog entry named {name!r}")
        doc = catalog.entry(name).document
        if inv.json_mode:
            meta = {"group": name, "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}
            _emit(inv, doc, [], meta)
        else:
            print(json.dumps(doc, ensure_ascii=False, indent=2))
        return EXIT_OK
    # check
    name = inv.options.get("name")
    names = [name] if name else None
    if name is not None and name not in catalog:
        raise CliUsageError(f"no catalog entry named {name!r}")
    reports = check_catalog(catalog, names=names, cap=inv.cap)
    passed = sum(r.passed for r in reports)
    lines = [
        f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {'; '.join(r.details)}"
        for r in reports
    ]
    lines.append(f"{passed} passed, {len(reports) - passed} failed")
    result = {
        "reports": [
            {"name": r.name, "passed": r.passed, "details": list(r.details)}
            for r in reports
        ],
        "passed": passed,
        "failed": len(reports) - passed,
    }
    meta = {"elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}
    _emit(inv, result, lines, meta)
    return EXIT_OK if passed == len(reports) else EXIT_BAD_DATA


_COMMANDS = {
    "validate": _cmd_validate,
    "rinf": _cmd_rinf,
    "spectrum": _cmd_spectrum,
    "reidnr": _cmd_reidnr,
    "find-d": _cmd_find_d,
    "delta-base": _cmd_delta_base,
    "catalog": _cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cap = args.cap if getattr(args, "cap", None) else _default_cap()
        inv = CliInvocation(
            command=args.command,
            source=getattr(args, "source", None),
            json_mode=args.json,
            cap=cap,
            options={
                k: v
                for k, v in vars(args).items()
                if k not in ("command", "source", "json", "cap")
            },
        )
        return _COMMANDS[inv.command](inv)
    except CliUsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GroupFileError, GroupValidationError) as exc:
        print(f"invalid group data: {exc}", file=sys.stderr)
        return EXIT_BAD_DATA
    except (NormaliserUnavailable, ClosureCapExceeded, Undecided) as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except FileNotFoundError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # internal assertion failures and bugs
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
