"""Command-line front end: ``octomod make|analyze|decompose|submodule|conjecture|verify``.

Exit codes: 0 success, 1 a checked identity or conjecture trial failed,
2 bad input (unparsable file or spec, invalid module, wrong element length).
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import Counter
from pathlib import Path
from typing import Any

from .io import (
    FormatError,
    decomposition_to_json,
    dumps_module,
    dumps_report,
    format_element,
    parse_element,
    parse_type_spec,
    read_module,
    render_text,
)
from .linalg import DimensionMismatchError, Subspace, format_rational
from .module import (
    OModule,
    associative_subspace,
    canonical_form,
    conj_associative_subspace,
    conjecture_check,
    decompose,
    is_cyclic,
    omega_eigenspaces,
    require_valid,
    scramble,
    submodule_generated,
    type_of,
    type_via_omega,
    validate,
)
from .octonion import DEFAULT_TABLE, FanoTable, FanoTableError
from .sampling import random_structured_element, random_unimodular
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


def _provenance(args, source: str | None, table: FanoTable = DEFAULT_TABLE) -> dict[str, Any]:
    return {"input": source, "seed": getattr(args, "seed", None), "convention": table.identifier}


def _basis_json(S: Subspace) -> list[list[str]]:
    return [[format_rational(x) for x in v] for v in S.vectors()]


def _load(path: str) -> OModule:
    try:
        M = read_module(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except (FormatError, DimensionMismatchError) as exc:
        raise InputError(f"{path}: {exc}") from None
    v = validate(M)
    if not v:
        raise InputError(f"{path}: invalid module: " + _violation_text(v.violations))
    return M


def _violation_text(violations) -> str:
    parts = []
    for i, j in violations:
        rel = f"L{i}^2 = -Id" if i == j else f"L{i}L{j} + L{j}L{i} = 0"
        parts.append(f"{rel} fails")
    return "; ".join(parts)


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror}") from None


def _emit_report(report: dict[str, Any], args) -> None:
    text = dumps_report(report) if args.json else render_text(report)
    _write_text(text, args.out)


# -- subcommands -------------------------------------------------------------


def cmd_make(args) -> int:
    try:
        t = parse_type_spec(args.spec)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    M = canonical_form(t)
    if args.scramble is not None:
        S = random_unimodular(M.dim, random.Random(args.scramble))
        M = scramble(M, S)
        M.label = f"{M.label} scrambled seed {args.scramble}"
    if args.label is not None:
        M.label = args.label
    require_valid(M)
    _write_text(dumps_module(M), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    M = _load(args.file)
    A = associative_subspace(M)
    Am = conj_associative_subspace(M)
    neg, pos = omega_eigenspaces(M)
    t_kernel = type_of(M)
    t_omega = type_via_omega(M)
    report = {
        "command": "analyze",
        "provenance": _provenance(args, args.file),
        "label": M.label,
        "dim": M.dim,
        "type": [t_kernel.n1, t_kernel.n2],
        "type_routes": {
            "kernel": [t_kernel.n1, t_kernel.n2],
            "omega": [t_omega.n1, t_omega.n2],
            "agree": t_kernel == t_omega,
        },
        "associative_dim": A.dim,
        "conj_associative_dim": Am.dim,
        "omega_eigenspace_dims": {"-1": neg.dim, "+1": pos.dim},
        "associative_basis": _basis_json(A),
        "conj_associative_basis": _basis_json(Am),
    }
    _emit_report(report, args)
    return EXIT_OK


def cmd_decompose(args) -> int:
    M = _load(args.file)
    dec = decompose(M)
    if args.emit:
        C = dec.canonical_module()
        try:
            Path(args.emit).write_text(dumps_module(C), encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot write {args.emit}: {exc.strerror}") from None
    report = {
        "command": "decompose",
        "provenance": _provenance(args, args.file),
        "dim": M.dim,
        "emitted": args.emit,
        **decomposition_to_json(dec),
    }
    _emit_report(report, args)
    return EXIT_OK


def cmd_submodule(args) -> int:
    M = _load(args.file)
    try:
        v = parse_element(args.element, M.dim)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    S, sub = submodule_generated(M, v)
    t = type_of(sub)
    cyc = is_cyclic(M, v).value if any(v) else None
    report = {
        "command": "submodule",
        "provenance": _provenance(args, args.file),
        "element": format_element(v),
        "dim": S.dim,
        "type": [t.n1, t.n2],
        "cyclicity": cyc,
    }
    _emit_report(report, args)
    return EXIT_OK


def _conjecture_trial(index: int, M: OModule, coords) -> dict[str, Any]:
    r = conjecture_check(M, coords)
    return {
        "trial": index,
        "l_plus": r.l_plus,
        "l_minus": r.l_minus,
        "dim": r.dim_generated,
        "type": [r.type_generated.n1, r.type_generated.n2],
        "verdict": r.verdict,
        "coords": [format_rational(x) for x in r.coords],
    }


def cmd_conjecture(args) -> int:
    if (args.file is None) == (args.spec is None):
        raise InputError("give exactly one of FILE or --spec")
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    if args.file is not None:
        M, source = _load(args.file), args.file
    else:
        try:
            M, source = canonical_form(parse_type_spec(args.spec)), args.spec
        except FormatError as exc:
            raise InputError(str(exc)) from None
    if args.element is not None:
        try:
            elements = [parse_element(args.element, M.dim)]
        except FormatError as exc:
            raise InputError(str(exc)) from None
    else:
        if M.dim == 0:
            raise InputError("the zero module has no nonzero elements to sample")
        rng = random.Random(args.seed)
        dec = decompose(M)
        elements = [random_structured_element(dec, rng) for _ in range(args.trials)]
    results = [_conjecture_trial(i, M, v) for i, v in enumerate(elements)]
    table = Counter((r["l_plus"], r["l_minus"], r["verdict"]) for r in results)
    report = {
        "command": "conjecture",
        "provenance": _provenance(args, source),
        "trials": len(results),
        "pass": sum(r["verdict"] == "PASS" for r in results),
        "fail": sum(r["verdict"] == "FAIL" for r in results),
        "verdict_table": [
            {"l_plus": lp, "l_minus": lm, "verdict": vd, "count": n}
            for (lp, lm, vd), n in sorted(table.items())
        ],
        "failures": [r for r in results if r["verdict"] == "FAIL"],
    }
    if args.element is not None:
        report["result"] = {k: v for k, v in results[0].items() if k != "trial"}
    _emit_report(report, args)
    return EXIT_FAIL if report["fail"] else EXIT_OK


def _parse_triples(text: str) -> FanoTable:
    try:
        triples = [tuple(int(c) for c in t.strip()) for t in text.split(",")]
        return FanoTable(triples)
    except (ValueError, FanoTableError) as exc:
        raise InputError(f"bad --triples {text!r}: {exc}") from None


def cmd_verify(args) -> int:
    table = DEFAULT_TABLE if args.triples is None else _parse_triples(args.triples)
    rep = run_suite(args.suite, args.seed, trials=args.trials, table=table)
    report = {
        "command": "verify",
        "provenance": _provenance(args, None, table),
        **rep.to_json(),
    }
    _emit_report(report, args)
    if not rep.passed:
        for c in rep.checks:
            if not c.passed:
                print(f"FAIL {c.name}: {c.failures}/{c.trials}; witness {c.witness}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octomod", description="Exact analysis of left octonion modules")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed_default=None):
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--seed", type=int, default=seed_default)

    p = sub.add_parser("make", help="write a canonical or scrambled module file")
    p.add_argument("spec", help='type spec such as "O^2+Obar^1"')
    p.add_argument("--scramble", type=int, metavar="SEED", help="conjugate by a seeded unimodular matrix")
    p.add_argument("--label")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("analyze", help="type, associative subspaces, omega eigenspaces")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="change of basis to canonical form")
    p.add_argument("file")
    p.add_argument("--emit", metavar="PATH", help="also write the canonical module file")
    common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("submodule", help="submodule generated by one element")
    p.add_argument("file")
    p.add_argument("element", help='octonions separated by ";", each 8 comma-separated rationals')
    common(p)
    p.set_defaults(func=cmd_submodule)

    p = sub.add_parser("conjecture", help="seeded trials of the cyclic-decomposition conjecture")
    p.add_argument("file", nargs="?")
    p.add_argument("--spec", help="use the canonical module of this type instead of a file")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--element", help="check this element only")
    common(p, seed_default=0)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("verify", help="randomized identity suites")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--trials", type=int, help="override the suite's trial count")
    p.add_argument("--triples", help='alternate Fano orientation for the laws suite, e.g. "142,235,..."')
    common(p, seed_default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"octomod {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
