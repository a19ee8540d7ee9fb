"""Command-line interface.

Exit codes: 0 on success, 1 when a computation or check fails, 2 on usage
errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .complexes import (
    ChainComplex,
    ComplexError,
    coef_text,
    convert_mode,
    dual,
    from_json,
    reduce,
    split_acyclic,
    tensor,
    to_json,
)
from .concordance import (
    ConcordanceError,
    brute_force_connected,
    independence_certificate,
    inverse_saw_edge,
    saw_edge,
    verify_kcn_lemma,
)
from .invariants import InvariantError, epsilon, nu, nu_prime, tau
from .staircases import LSpaceKnotData, StaircaseError, staircase, torus_alexander
from .surgery import SurgeryDual, SurgeryError, dual_conn, surgery_dual_basis

_SUB = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")
_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_GREEK = {"alpha": "α", "beta": "β", "g": "g"}
_KIND_ORDER = {"g": 0, "beta": 1, "alpha": 2}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def pretty_label(label: str) -> str:
    kind, sep, j = label.partition("_")
    if not sep or kind not in _GREEK:
        return label
    return _GREEK[kind] + j.translate(_SUB)


def pretty_terms(text: str) -> str:
    """'U^4 g_3 + U beta_1' -> 'U⁴ g₃ + U β₁'."""
    out = []
    for term in text.split(" + "):
        words = []
        for w in term.split(" "):
            if w.startswith("U^"):
                words.append("U" + w[2:].translate(_SUP))
            else:
                words.append(pretty_label(w))
        out.append(" ".join(words))
    return " + ".join(out)


def _row_key(label: str, alex: int) -> tuple[int, int]:
    return (-alex, _KIND_ORDER.get(label.partition("_")[0], 3))


def table_rows(obj: SurgeryDual | ChainComplex) -> list[tuple[str, ...]]:
    """Rows (Alexander, generator, representative, Maslov, differential)."""
    if isinstance(obj, SurgeryDual):
        C = obj.complex
        rows = []
        for g in sorted(C.gens, key=lambda g: _row_key(g.name, g.alex)):
            rows.append((str(g.alex), pretty_label(g.name), obj.representative(g.name),
                         str(g.gr_u), pretty_terms(obj.differential_text(g.name))))
        return rows
    C = obj
    rows = []
    for x, g in sorted(enumerate(C.gens), key=lambda t: _row_key(t[1].name, t[1].alex)):
        terms = []
        for y in _targets(C, x):
            coef = coef_text(C.mode, C.coefficient(x, y))
            terms.append(f"{coef} {C.gens[y].name}" if coef else C.gens[y].name)
        rows.append((str(g.alex), g.name, g.name, str(g.gr_u), " + ".join(terms) or "0"))
    return rows


def _targets(C: ChainComplex, x: int) -> list[int]:
    return [y for y in range(len(C)) if (C.out[x] >> y) & 1]


def emit_table(obj: SurgeryDual | ChainComplex) -> str:
    header = ("Alexander gr.", "Generator", "Representative", "Maslov gr.", "d∞")
    rows = [header] + table_rows(obj)
    widths = [max(len(r[k]) for r in rows) for k in range(len(header) - 1)]
    lines = []
    for r in rows:
        cells = [r[k].ljust(widths[k]) for k in range(len(widths))] + [r[-1]]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def _knot_data(args) -> LSpaceKnotData:
    if getattr(args, "torus", None) and getattr(args, "exps", None):
        raise UsageError("give either --torus or --exps, not both")
    if getattr(args, "torus", None):
        p, q = args.torus
        return torus_alexander(p, q)
    if getattr(args, "exps", None):
        return LSpaceKnotData(tuple(args.exps))
    raise UsageError("an input knot is required (--torus P Q or --exps N1 N2 ...)")


def _load(path: str) -> ChainComplex:
    try:
        return from_json(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _add_knot_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--torus", nargs=2, type=int, metavar=("P", "Q"), help="torus knot T(P,Q)")
    p.add_argument("--exps", nargs="+", type=int, metavar="N",
                   help="positive Alexander exponents n_1 < ... < n_m of an L-space knot")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_staircase(args) -> int:
    C = staircase(_knot_data(args))
    if args.table:
        lines = [f"{g.name}  ({g.i},{g.j})  M={g.maslov}" for g in C.gens]
        _emit("\n".join(lines), args.output)
    else:
        _emit(to_json(C), args.output)
    return 0


def cmd_surgery_dual(args) -> int:
    data = _knot_data(args)
    result = surgery_dual_basis(data)
    if args.raw:
        C = result.cone.complex
    elif args.conn:
        C = dual_conn(result).conn
    else:
        C = result.complex
    if args.table:
        _emit(emit_table(result if not (args.raw or args.conn) else C), args.output)
    else:
        _emit(to_json(C), args.output)
    return 0


_INVARIANTS = {"tau": tau, "nu": nu, "nuprime": nu_prime, "epsilon": epsilon}


def cmd_invariants(args) -> int:
    if args.input:
        if args.torus or args.exps:
            raise UsageError("give either --input or a knot, not both")
        C = _load(args.input)
    else:
        data = _knot_data(args)
        C = surgery_dual_basis(data).complex if args.dual else staircase(data)
    names = [n.strip() for n in args.compute.split(",") if n.strip()]
    unknown = [n for n in names if n not in _INVARIANTS]
    if unknown:
        raise UsageError(f"unknown invariant(s): {', '.join(unknown)}")
    C = reduce(C)
    _emit(" ".join(f"{n}={_INVARIANTS[n](C)}" for n in names), args.output)
    return 0


def cmd_conn(args) -> int:
    C = reduce(_load(args.input))
    conn = brute_force_connected(C) if args.oracle else split_acyclic(C).conn
    _emit(to_json(conn), args.output)
    return 0


def cmd_tensor(args) -> int:
    if len(args.input) < 2:
        raise UsageError("tensor needs at least two --input files")
    complexes = [_load(p) for p in args.input]
    mode = complexes[0].mode
    total = complexes[0]
    for D in complexes[1:]:
        total = tensor(total, D if D.mode is mode else convert_mode(D, mode))
    _emit(to_json(reduce(total) if args.reduce else total), args.output)
    return 0


def cmd_saw_edge(args) -> int:
    if args.k < 1 or args.n < 2:
        raise UsageError("saw-edge needs --k >= 1 and --n >= 2")
    C = inverse_saw_edge(args.k, args.n) if args.inverse else saw_edge(args.k, args.n)
    _emit(to_json(C), args.output)
    return 0


def cmd_dual(args) -> int:
    _emit(to_json(dual(_load(args.input))), args.output)
    return 0


def cmd_independence(args) -> int:
    cert = independence_certificate(args.ns, args.ms)
    _emit(f"generators={cert.generators} conn={len(cert.conn)} "
          f"vertical_dim={cert.vertical_dim} certified={str(cert.certified).lower()} "
          f"obstructs={str(cert.obstructs).lower()}", args.output)
    return 0


def cmd_verify_lemma(args) -> int:
    report = verify_kcn_lemma(args.k, args.n, args.l)
    lines = [f"{item}={'pass' if ok else 'fail'}" for item, ok in report.items.items()]
    lines += report.details
    _emit("\n".join(lines), args.output)
    return 0 if report.ok else 1


def cmd_verify(args) -> int:
    from .acceptance import run_all

    if not args.all:
        raise UsageError("verify currently supports only --all")
    results = run_all()
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfkcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("staircase", help="staircase complex of an L-space knot")
    _add_knot_args(p)
    p.add_argument("--table", action="store_true", help="print positions and Maslov gradings")
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("surgery-dual", help="dual knot complex of +1 surgery")
    _add_knot_args(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--raw", action="store_true", help="unreduced mapping cone")
    group.add_argument("--reduced", action="store_true", help="reduced complex (default)")
    group.add_argument("--conn", action="store_true", help="connected part")
    p.add_argument("--table", action="store_true", help="print a generator table")
    p.set_defaults(func=cmd_surgery_dual)

    p = sub.add_parser("invariants", help="tau, nu, nu' and epsilon")
    _add_knot_args(p)
    p.add_argument("--input", help="complex file (JSON)")
    p.add_argument("--dual", action="store_true", help="use the +1-surgery dual of the knot")
    p.add_argument("--compute", default="tau,nu,nuprime,epsilon",
                   help="comma-separated subset of tau,nu,nuprime,epsilon")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("conn", help="connected part of a complex")
    p.add_argument("--input", required=True)
    p.add_argument("--oracle", action="store_true", help="use the self-local-map search only")
    p.set_defaults(func=cmd_conn)

    p = sub.add_parser("tensor", help="tensor product of complexes")
    p.add_argument("--input", action="append", default=[], required=True)
    p.add_argument("--reduce", action="store_true")
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("dual", help="dual complex")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("saw-edge", help="saw-edge complex")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--inverse", action="store_true")
    p.set_defaults(func=cmd_saw_edge)

    p = sub.add_parser("independence", help="vertical homology of a connected model sum")
    p.add_argument("--ns", nargs="+", type=int, required=True)
    p.add_argument("--ms", nargs="+", type=int, required=True)
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("verify-lemma", help="check the saw-edge decomposition lemma")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_verify_lemma)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_verify)

    for name, sp in sub.choices.items():
        sp.add_argument("--output", "-o", help="write to a file instead of stdout")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except StaircaseError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except (ComplexError, SurgeryError, InvariantError, ConcordanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())

