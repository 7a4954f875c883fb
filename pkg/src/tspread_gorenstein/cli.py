"""Command-line front end: ``check``, ``sweep``, ``monomials`` and ``polytope``.

Exit codes: 0 when both routes agree, 2 on a disagreement, 1 for usage or
parameter errors, 3 when a geometric computation gives up (no interior
point below the dilation bound, unbounded or empty polytope).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any

from .gorenstein import (
    Branch,
    GorensteinReport,
    SweepFailure,
    decide_algorithmic,
    default_delta_max,
    run_sweep,
    sweep_params,
)
from .latgeom import lattice_points
from .polykern import PolyhedronError, VPolytope, dilate
from .tspread import InvalidSpreadParams, SpreadParams, build_polytope, generate

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE, EXIT_GEOMETRY = 0, 1, 2, 3

CSV_HEADER = [
    "n",
    "d",
    "t",
    "reduced_n",
    "reduced_t",
    "dim",
    "delta",
    "num_interior",
    "gorenstein_alg",
    "gorenstein_cf",
    "agree",
]

log = logging.getLogger("tspread_gorenstein")


# -- serialization -------------------------------------------------------------


def rational_to_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _params(p: SpreadParams) -> dict[str, int]:
    return {"n": p.n, "d": p.d, "t": p.t}


def report_to_dict(r: GorensteinReport) -> dict[str, Any]:
    duals = None
    if r.dual_vertices is not None:
        duals = [[rational_to_str(c) for c in v] for v in r.dual_vertices]
    return {
        **_params(r.input),
        "reduced": _params(r.reduced),
        "dimension": r.dimension,
        "branch": r.branch.value,
        "delta": r.delta,
        "interior_points": [list(x) for x in r.interior_points],
        "alpha": list(r.unique_alpha) if r.unique_alpha is not None else None,
        "dual_vertices": duals,
        "dual_integral": r.dual_integral,
        "gorenstein_algorithmic": r.gorenstein_algorithmic,
        "gorenstein_closed_form": r.gorenstein_closed_form,
        "agree": r.agree,
        "a_invariant": r.a_invariant,
    }


def report_from_dict(e: dict[str, Any]) -> GorensteinReport:
    p = SpreadParams(e["n"], e["d"], e["t"])
    duals = None
    if e.get("dual_vertices") is not None:
        verts = [tuple(Fraction(c) for c in v) for v in e["dual_vertices"]]
        duals = VPolytope(len(verts[0]) if verts else 0, verts)
    return GorensteinReport(
        input=p,
        reduced=SpreadParams(**e["reduced"]),
        dimension=e["dimension"],
        branch=Branch(e["branch"]),
        delta=e["delta"],
        interior_points=tuple(tuple(x) for x in e["interior_points"]),
        unique_alpha=tuple(e["alpha"]) if e["alpha"] is not None else None,
        dual_vertices=duals,
        dual_integral=e["dual_integral"],
        gorenstein_algorithmic=e["gorenstein_algorithmic"],
        gorenstein_closed_form=e["gorenstein_closed_form"],
        agree=e["agree"],
        a_invariant=e["a_invariant"],
    )


def _entry_key(r: GorensteinReport | SweepFailure) -> tuple[int, int, int]:
    p = r.params if isinstance(r, SweepFailure) else r.input
    return (p.d, p.t, p.n)


def make_document(
    reports: Sequence[GorensteinReport], generated_at: datetime | None = None
) -> dict[str, Any]:
    stamp = (generated_at or datetime.now(timezone.utc)).isoformat(timespec="seconds")
    return {
        "schema_version": SCHEMA_VERSION,
        "generated_at": stamp,
        "entries": [report_to_dict(r) for r in sorted(reports, key=_entry_key)],
    }


def emit_document(reports: Sequence[GorensteinReport], generated_at: datetime | None = None) -> str:
    """JSON text with one entry per line (vectors stay readable)."""
    doc = make_document(reports, generated_at)
    entries = ",\n".join("    " + json.dumps(e) for e in doc["entries"])
    body = f"\n{entries}\n  " if entries else ""
    return (
        "{\n"
        f'  "schema_version": {json.dumps(doc["schema_version"])},\n'
        f'  "generated_at": {json.dumps(doc["generated_at"])},\n'
        f'  "entries": [{body}]\n'
        "}\n"
    )


def parse_document(text: str) -> tuple[str, datetime, list[GorensteinReport]]:
    doc = json.loads(text)
    if "schema_version" not in doc:
        raise ValueError("report document without schema_version")
    stamp = datetime.fromisoformat(doc["generated_at"])
    return doc["schema_version"], stamp, [report_from_dict(e) for e in doc["entries"]]


def _flag(b: bool | None) -> str:
    return "" if b is None else str(b).lower()


def csv_row(r: GorensteinReport | SweepFailure) -> list[str]:
    if isinstance(r, SweepFailure):
        p = r.params
        return [str(p.n), str(p.d), str(p.t), "", "", "", "", "", "", "", "false"]
    return [
        str(r.input.n),
        str(r.input.d),
        str(r.input.t),
        str(r.reduced.n),
        str(r.reduced.t),
        str(r.dimension),
        "" if r.delta is None else str(r.delta),
        str(len(r.interior_points)),
        _flag(r.gorenstein_algorithmic),
        _flag(r.gorenstein_closed_form),
        _flag(r.agree),
    ]


def emit_csv(rows: Sequence[GorensteinReport | SweepFailure]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(csv_row(r))
    return buf.getvalue()


# -- text rendering ------------------------------------------------------------


def _vec(x: Sequence) -> str:
    return "(" + ",".join(rational_to_str(c) for c in x) + ")"


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def render_report(r: GorensteinReport) -> str:
    p, q = r.input, r.reduced
    head = f"K[I_{{{p.n},{p.d},{p.t}}}]"
    if q != p:
        head += f"  reduced to {q}"
    lines = [f"{head}  dim={r.dimension}  branch={r.branch.value}"]
    if not r.agree:
        lines.append(
            f"Gorenstein: DISAGREEMENT (algorithmic={_yes(r.gorenstein_algorithmic)}, "
            f"closed form={_yes(r.gorenstein_closed_form)})"
        )
    elif r.branch is Branch.POLYNOMIAL_RING:
        lines.append("Gorenstein: yes (both routes), polynomial ring")
    elif len(r.interior_points) > 1:
        lines.append(f"Gorenstein: no, {len(r.interior_points)} interior points at delta={r.delta}")
    elif r.gorenstein_algorithmic:
        lines.append(f"Gorenstein: yes (both routes), delta={r.delta}, alpha={_vec(r.unique_alpha)}")
    else:
        lines.append(f"Gorenstein: no, dual of Q not integral, delta={r.delta}, alpha={_vec(r.unique_alpha)}")
    if r.branch is Branch.GEOMETRIC:
        lines.append(f"a-invariant: {r.a_invariant}")
        if len(r.interior_points) > 1:
            lines.extend(f"  interior point {_vec(x)}" for x in r.interior_points)
        if r.dual_vertices is not None:
            lines.append(f"dual of Q integral: {_yes(r.dual_integral)} ({len(r.dual_vertices)} vertices)")
            if not r.dual_integral:
                lines.extend(
                    f"  non-integral dual vertex {_vec(v)}"
                    for v in r.dual_vertices
                    if any(Fraction(c).denominator != 1 for c in v)
                )
    return "\n".join(lines) + "\n"


# -- commands ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextmanager
def _sink(path: str | None) -> Iterator[io.TextIOBase]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        yield fh


def _write(text: str, path: str | None) -> int:
    try:
        with _sink(path) as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def _spread(args) -> SpreadParams:
    return SpreadParams(args.n, args.d, args.t)


def cmd_check(args) -> int:
    p = _spread(args)
    r = decide_algorithmic(p, args.delta_max or default_delta_max(p))
    text = emit_document([r]) if args.json else render_report(r)
    status = _write(text, args.out)
    if status:
        return status
    return EXIT_OK if r.agree else EXIT_DISAGREE


def cmd_sweep(args) -> int:
    params = sweep_params(
        args.n_max, args.d_max, args.t_max, n_min=args.n_min, d_min=args.d_min, t_min=args.t_min
    )
    reports, failures = run_sweep(params, args.delta_max, args.workers)
    if args.json:
        text = emit_document(reports)
    else:
        text = emit_csv(sorted([*reports, *failures], key=_entry_key))
    status = _write(text, args.out)
    if status:
        return status
    if failures:
        return EXIT_GEOMETRY
    return EXIT_OK if all(r.agree for r in reports) else EXIT_DISAGREE


def cmd_monomials(args) -> int:
    gens = generate(_spread(args))
    if args.json:
        text = json.dumps([list(m.exponents) for m in gens]) + "\n"
    else:
        width = max(len(str(m)) for m in gens)
        text = "".join(f"{m!s:<{width}}  {_vec(m.exponents)}\n" for m in gens)
    return _write(text, args.out)


def cmd_polytope(args) -> int:
    p = _spread(args)
    poly = dilate(build_polytope(p), args.dilate)
    points = interior = None
    if args.points:
        points = lattice_points(poly)
    if args.interior:
        interior = lattice_points(poly, strict=True)
    if args.json:
        doc: dict[str, Any] = {
            **_params(p),
            "dilate": args.dilate,
            "constraints": [
                {
                    "coeffs": [rational_to_str(a) for a in c.coeffs],
                    "kind": c.kind.value,
                    "rhs": rational_to_str(c.rhs),
                }
                for c in poly.constraints
            ],
        }
        if points is not None:
            doc["points"] = [list(x) for x in points]
        if interior is not None:
            doc["interior_points"] = [list(x) for x in interior]
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"{args.dilate}*P for {p} in R^{poly.ambient_dim}:", str(poly)]
        if points is not None:
            lines.append(f"lattice points: {len(points)}")
            lines.extend(_vec(x) for x in points)
        if interior is not None:
            lines.append(f"relative-interior lattice points: {len(interior)}")
            lines.extend(_vec(x) for x in interior)
        text = "\n".join(lines) + "\n"
    return _write(text, args.out)


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    common.add_argument(
        "--delta-max", type=_positive, metavar="K", help="dilation search bound (default t+d+2)"
    )

    triple = argparse.ArgumentParser(add_help=False)
    for name in ("n", "d", "t"):
        triple.add_argument(name, type=int)

    parser = _Parser(prog="tspread-gorenstein", description="Decide whether K[I_{n,d,t}] is Gorenstein.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("check", parents=[triple, common], help="decide one (n, d, t)").set_defaults(
        func=cmd_check
    )

    sw = sub.add_parser("sweep", parents=[common], help="decide a parameter range (CSV by default)")
    for name in ("n", "d", "t"):
        sw.add_argument(f"--{name}-max", type=_positive, required=True)
        sw.add_argument(f"--{name}-min", type=_positive, default=1)
    sw.add_argument("--workers", type=_positive, default=None, help="parallel worker processes")
    sw.set_defaults(func=cmd_sweep)

    sub.add_parser("monomials", parents=[triple, common], help="list the generators").set_defaults(
        func=cmd_monomials
    )

    po = sub.add_parser("polytope", parents=[triple, common], help="show k*P and its lattice points")
    po.add_argument("--dilate", type=_positive, default=1, metavar="K")
    po.add_argument("--points", action="store_true", help="list lattice points")
    po.add_argument("--interior", action="store_true", help="list relative-interior lattice points")
    po.set_defaults(func=cmd_polytope)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse exits on --help and on usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except InvalidSpreadParams as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolyhedronError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY


if __name__ == "__main__":
    sys.exit(main())
