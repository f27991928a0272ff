"""Command-line front end.

Subcommands: link, mumford, snf, homology, rz, arrangement, catalog.  Inputs
come from the built-in catalog (--catalog), a graph file in the DSL or JSON
(--graph), an arrangement file (--arrangement), or an inline integer matrix
(--matrix "a b; c d").  JSON output is the machine contract and is rendered
with sorted keys so identical invocations are byte-identical; the text tables
are presentational only.

Exit codes: 0 success, 1 I/O or parse problems, 2 domain errors (reported as
a structured JSON object on stdout).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .arrangements import (
    complement_decomposition,
    dual_decomposition,
    infinity_decomposition,
    flats,
    multiplicities,
    parse_arrangement,
)
from .atinfinity import homology_at_infinity, rz_complex
from .errors import CatalogError, DomainError, InputError, ObstructionError
from .mumford import (
    ORIENTED,
    QUADRATIC,
    LinkDecomposition,
    duval_report,
    link_decomposition,
    oriented_matrix,
    quadratic_matrix,
)
from .plumbing import PlumbingGraph, danielewski, dynkin, parse_graph, ramanujam
from .smithlift import IntMatrix, snf_int, verify


def catalog_list() -> list[str]:
    """Names resolvable by --catalog (Dynkin families shown as patterns)."""
    return ["dynkin:A{n}", "dynkin:D{n}", "dynkin:E{6,7,8}", "danielewski:{n}", "ramanujam"]


_DYNKIN_RE = re.compile(r"^dynkin:([ADEade])(\d+)$")
_DANIELEWSKI_RE = re.compile(r"^danielewski:(\d+)$")


def resolve_catalog(name: str) -> PlumbingGraph:
    m = _DYNKIN_RE.match(name)
    if m:
        return dynkin(m.group(1).upper(), int(m.group(2)))
    m = _DANIELEWSKI_RE.match(name)
    if m:
        return danielewski(int(m.group(1)))
    if name == "ramanujam":
        return ramanujam()
    raise CatalogError(f"unknown catalog name {name!r}")


def _load_graph(args) -> PlumbingGraph:
    if args.catalog:
        return resolve_catalog(args.catalog)
    if args.graph:
        try:
            text = open(args.graph, encoding="utf-8").read()
        except OSError as exc:
            raise InputError(f"cannot read {args.graph}: {exc}")
        if text.lstrip().startswith("{"):
            return PlumbingGraph.from_json(json.loads(text))
        return parse_graph(text)
    raise InputError("provide --catalog NAME or --graph FILE")


def _parse_matrix(text: str) -> IntMatrix:
    rows = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([int(v) for v in chunk.split()])
        except ValueError:
            raise InputError(f"bad matrix row {chunk!r}")
    if not rows or len({len(r) for r in rows}) != 1:
        raise InputError("matrix rows must be nonempty and of equal length")
    return IntMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# subcommand payloads


def _cmd_link(args) -> dict:
    g = _load_graph(args)
    link = link_decomposition(g, args.mode)
    payload = {"command": "link", "input": args.catalog or args.graph, **link.to_json()}
    if args.mode == QUADRATIC and args.catalog:
        m = _DYNKIN_RE.match(args.catalog)
        if m:
            payload["duval_report"] = duval_report(m.group(1).upper(), int(m.group(2)))
    return payload


def _cmd_mumford(args) -> dict:
    g = _load_graph(args)
    matrix = oriented_matrix(g) if args.mode == ORIENTED else quadratic_matrix(g)
    return {
        "command": "mumford",
        "input": args.catalog or args.graph,
        "mode": args.mode,
        "matrix": matrix.to_json(),
    }


def _cmd_snf(args) -> dict:
    if not args.matrix:
        raise InputError("snf needs --matrix 'a b; c d'")
    matrix = _parse_matrix(args.matrix)
    result = snf_int(matrix)
    return {
        "command": "snf",
        "matrix": matrix.to_json(),
        "diagonal": list(result.d.diagonal()),
        "verified": verify(matrix, result),
        **result.to_json(),
    }


def _cmd_homology(args) -> dict:
    g = _load_graph(args)
    hm = homology_at_infinity(g, mode=args.mode, rational=args.rational)
    return {
        "command": "homology",
        "input": args.catalog or args.graph,
        "mode": args.mode,
        "rational": args.rational,
        **hm.to_json(),
    }


def _cmd_rz(args) -> dict:
    g = _load_graph(args)
    levels = rz_complex(g)
    return {
        "command": "rz",
        "input": args.catalog or args.graph,
        "levels": [level.to_json() for level in levels],
    }


def _cmd_arrangement(args) -> dict:
    if not args.arrangement:
        raise InputError("arrangement needs --arrangement FILE")
    try:
        text = open(args.arrangement, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {args.arrangement}: {exc}")
    arr = parse_arrangement(text)
    fd = flats(arr)
    payload = {
        "command": "arrangement",
        "input": args.arrangement,
        "dimension": arr.dimension,
        "hyperplanes": len(arr),
        "multiplicities": {str(k): v for k, v in multiplicities(arr, fd).items()},
        "complement": complement_decomposition(arr).to_json(),
    }
    for key, fn in (("infinity", infinity_decomposition), ("dual", dual_decomposition)):
        try:
            payload[key] = fn(arr).to_json()
        except DomainError as exc:
            payload[key] = {"error": {"type": exc.kind, "message": str(exc)}}
    return payload


def _cmd_catalog(args) -> dict:
    return {"command": "catalog", "names": catalog_list()}


# ---------------------------------------------------------------------------
# rendering


def _render_table(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if key in ("matrix", "s", "d", "t") and isinstance(value, list):
            lines.append(f"{key}:")
            for row in value:
                cells = [
                    (f"{v['x']}+{v['y']}e" if isinstance(v, dict) else str(v)) for v in row
                ]
                lines.append("  " + " ".join(f"{c:>6}" for c in cells))
        elif key == "atoms" or (isinstance(value, dict) and "atoms" in value):
            atoms = value["atoms"] if isinstance(value, dict) else value
            lines.append(f"{key}: " + " + ".join(_atom_text(a) for a in atoms))
        else:
            lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


def _atom_text(a: dict) -> str:
    mult = a.get("mult", 1)
    prefix = "" if mult == 1 else f"{mult}*"
    if a["kind"] == "tate":
        body = f"1({a['q']})[{a['p']}]"
    elif a["kind"] == "hofib":
        body = f"hofib({a['d']['x']}+{a['d']['y']}e)({a['q']})[{a['p']}]"
    elif a["kind"] == "cone":
        body = f"cone({a['n']})({a['q']})[{a['p']}]"
    else:
        body = f"M(L{a['degree']})({a['q']})[{a['p']}]"
    return prefix + body


_COMMANDS = {
    "link": _cmd_link,
    "mumford": _cmd_mumford,
    "snf": _cmd_snf,
    "homology": _cmd_homology,
    "rz": _cmd_rz,
    "arrangement": _cmd_arrangement,
    "catalog": _cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="motivic-plumb",
        description="Exact stable motivic invariants of plumbing graphs and arrangements.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--catalog", help="catalog graph name, e.g. dynkin:E8")
        p.add_argument("--graph", help="graph file (DSL or JSON)")
        p.add_argument("--arrangement", help="arrangement file")
        p.add_argument("--matrix", help="inline integer matrix 'a b; c d'")
        p.add_argument("--mode", choices=[ORIENTED, QUADRATIC], default=ORIENTED)
        p.add_argument("--rational", action="store_true", help="drop torsion from homology")
        p.add_argument("--format", choices=["json", "table"], default="json")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    sources = [s for s in (args.catalog, args.graph, args.arrangement, args.matrix) if s]
    try:
        if len(sources) > 1:
            raise InputError("provide exactly one input source")
        payload = _COMMANDS[args.command](args)
    except ObstructionError as exc:
        error = {
            "error": {
                "type": exc.kind,
                "message": str(exc),
                "obstruction": exc.obstruction.to_json() if exc.obstruction else None,
                "oriented_fallback": (
                    exc.oriented_fallback.to_json()
                    if isinstance(exc.oriented_fallback, LinkDecomposition)
                    else None
                ),
            }
        }
        print(json.dumps(error, sort_keys=True, indent=2))
        return 2
    except DomainError as exc:
        print(json.dumps({"error": {"type": exc.kind, "message": str(exc)}}, sort_keys=True, indent=2))
        return 2
    except InputError as exc:
        print(json.dumps({"error": {"type": exc.kind, "message": str(exc)}}, sort_keys=True, indent=2))
        return 1
    if args.format == "table":
        print(_render_table(payload))
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
