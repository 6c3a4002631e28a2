"""Command-line front end.

Every command builds a JSON payload first; ``--format table`` renders that
payload, so the two outputs never disagree. Exit codes: 0 success,
1 mathematical negative, 2 usage or input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import families as fam_mod
from .bounds import (
    UNBOUNDED,
    SearchBudget,
    best_upper_bound,
    cy_implied_lower,
    cy_lower_bound,
    upper_bound_reports,
)
from .colorings import ColoringFamily, family_from_json, family_to_json, verify_family
from .constructions import (
    compose_families,
    finite_field_mols,
    kronecker_mols,
    mols_from_colorings,
    squares_are_mols,
)
from .errors import NotBijective, OrthocolorError, UnverifiedFamily
from .graph import degree_stats, empty_graph, read_graph, write_graph
from .search import CAPPED, FOUND, SearchOptions, exact_N, find_family

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAP = 3

TABLE_BOUNDS = ("degree", "average_degree", "clique_search", "edge")


class CliError(Exception):
    """Bad input detected by the CLI itself; reported on one line with exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


# ---------------------------------------------------------------- io helpers


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path!r}: {exc.strerror}") from None


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path!r}: {exc.strerror}") from None


def _load_graph(path: str):
    try:
        return read_graph(_read_text(path))
    except OrthocolorError as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_family(path: str, graph=None) -> ColoringFamily:
    try:
        n, v, colorings = family_from_json(_read_text(path))
    except OrthocolorError as exc:
        raise CliError(f"{path}: {exc}") from None
    if graph is None:
        graph = empty_graph(v)
    if v != graph.vertex_count:
        raise CliError(f"{path}: family has v={v} but the graph has {graph.vertex_count} vertices")
    if not colorings:
        raise CliError(f"{path}: family is empty")
    return ColoringFamily(graph, colorings)


def _jsonable(value):
    if value is UNBOUNDED:
        return "unbounded"
    return value


def _graph_summary(g) -> dict:
    st = degree_stats(g)
    return {"v": g.vertex_count, "e": st.edge_count, "max_degree": st.max_degree}


# ---------------------------------------------------------------- formatting


def _cell(value) -> str:
    if value is None:
        return "-"
    if value == "unbounded":
        return "inf"
    return str(value)


def _grid_text(grid) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in grid)


def _bound_lines(reports: dict) -> list[str]:
    lines = []
    for name, rep in reports.items():
        if rep["applicable"]:
            extra = " (conditional)" if rep["conditional"] else ""
            lines.append(f"{name:<16} {_cell(rep['value'])}{extra}")
        else:
            lines.append(f"{name:<16} inapplicable ({rep.get('reason')})")
    return lines


def format_table(payload: dict) -> str:
    """Render any command payload as human-readable text."""
    cmd = payload["command"]
    if cmd == "generate":
        lines = [f"{payload['kind']} {' '.join(map(str, payload['params']))}".rstrip()]
        g = payload["graph"]
        lines.append(f"v = {g['v']}, e = {g['e']}, max degree = {g['max_degree']}")
        lines.append(f"graph written to {payload['graph_file']}")
        if payload["cells_file"]:
            lines.append(f"cell numbering written to {payload['cells_file']}")
        return "\n".join(lines)
    if cmd == "bounds":
        g = payload["graph"]
        lines = [f"n = {payload['n']}, v = {g['v']}, e = {g['e']}, max degree = {g['max_degree']}", "upper bounds:"]
        lines += ["  " + s for s in _bound_lines(payload["upper"])]
        best = payload["best"]
        lines.append(f"  {'best':<16} {_cell(best['value'])} ({best['params'].get('winner')})")
        lines.append("lower bounds:")
        lines += ["  " + s for s in _bound_lines(payload["lower"])]
        return "\n".join(lines)
    if cmd == "search":
        res = payload["result"]
        if payload["mode"] == "exact":
            if res["complete"]:
                lines = [f"N = {_cell(res['N'])}"]
            else:
                lines = [f"N >= {res['N']} (search capped before completion)"]
        else:
            k, n = payload["k"], payload["n"]
            lines = [{
                "found": f"found {k} mutually orthogonal {n}-colorings",
                "exhausted": f"no {k} mutually orthogonal {n}-colorings exist",
                "capped": f"search capped before deciding k = {k}",
            }[res["status"]]]
        lines.append(f"nodes explored: {res['nodes_explored']}")
        if payload.get("witness_file"):
            lines.append(f"witness written to {payload['witness_file']}")
        return "\n".join(lines)
    if cmd == "verify":
        lines = []
        for idx, (u, w) in payload["proper_failures"]:
            lines.append(f"coloring {idx + 1} is improper on edge {u}-{w}")
        for (i, j), (u, w) in payload["orthogonality_failures"]:
            lines.append(f"colorings {i + 1} and {j + 1} repeat a color pair on vertices {u}, {w}")
        verdict = "OK" if payload["ok"] else "FAILED"
        lines.append(f"{payload['k']} colorings, proper and pairwise orthogonal: {verdict}")
        return "\n".join(lines)
    if cmd in ("construct mols", "construct kronecker"):
        blocks = [_grid_text(sq) for sq in payload["squares"]]
        verdict = "OK" if payload["pairwise_orthogonal"] else "FAILED"
        blocks.append(f"{len(payload['squares'])} squares, pairwise orthogonal: {verdict}")
        return "\n\n".join(blocks)
    if cmd == "construct extract":
        blocks = [_grid_text(sq) for sq in payload["mols"]]
        blocks.append(f"{len(payload['mols'])} squares extracted, pairwise orthogonal: OK")
        if payload["sigma"] is not None:
            blocks.append("sigma: " + " ".join(map(str, payload["sigma"])))
            blocks.append(f"{len(payload['single_diagonal'])} single-diagonal squares")
        return "\n\n".join(blocks)
    if cmd == "construct compose":
        g = payload["graph"]
        return "\n".join([
            f"or-product: v = {g['v']}, e = {g['e']}",
            f"{payload['k']} composed {payload['n']}-colorings, verified: {'OK' if payload['verified'] else 'FAILED'}",
            f"graph written to {payload['graph_file']}",
            f"family written to {payload['family_file']}",
        ])
    if cmd == "table":
        header = ["structure", "v", "degree", "average", "clique", "edge"]
        rows = [[r["structure"], str(r["v"])] + [_cell(r[b]) for b in TABLE_BOUNDS] for r in payload["rows"]]
        widths = [max(len(x) for x in col) for col in zip(header, *rows)]
        fmt = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
        return "\n".join([f"upper bounds on N(G, {payload['n']})", fmt(header)] + [fmt(r) for r in rows])
    raise ValueError(f"no table layout for {cmd!r}")


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(format_table(payload))


# ---------------------------------------------------------------- generate


def _parse_cells(text: str) -> list[tuple[int, int]]:
    cells = []
    for token in text.replace(";", " ").split():
        parts = token.split(",")
        if len(parts) != 2:
            raise CliError(f"bad cell {token!r}; expected r,c")
        try:
            cells.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise CliError(f"bad cell {token!r}; expected r,c") from None
    return cells


def _spec_from_args(args) -> fam_mod.FamilySpec:
    kind = args.kind.replace("-", "_")
    arity = {
        "equi": 1, "row_latin": 1, "column_latin": 1, "latin": 1, "single_diagonal": 1,
        "double_diagonal": 1, "sudoku": 1, "gerechte": 1, "rook": 2, "rectangle": 2,
        "polyomino": 0, "cube": 0,
    }
    if kind not in arity:
        raise CliError(f"unknown family {args.kind!r}")
    params = args.params
    if len(params) != arity[kind]:
        raise CliError(f"family {kind} takes {arity[kind]} integer parameter(s), got {len(params)}")
    if any(p < 1 for p in params):
        raise CliError(f"family parameters must be positive, got {params}")
    if kind == "polyomino":
        if not args.cells:
            raise CliError("polyomino needs --cells")
        return fam_mod.polyomino(_parse_cells(args.cells))
    if kind == "gerechte":
        if not args.regions:
            raise CliError("gerechte needs --regions FILE")
        regions = [_parse_cells(line) for line in _read_text(args.regions).splitlines() if line.strip()]
        return fam_mod.gerechte(params[0], regions)
    builder = getattr(fam_mod, kind)
    return builder(*params)


def cmd_generate(args) -> int:
    spec = _spec_from_args(args)
    gen = fam_mod.generate_family(spec)
    label = " ".join([spec.kind] + [str(p) for p in args.params])
    _write_text(args.output, write_graph(gen.graph, comments=[f"family {label}"]))
    cells_file = None
    if gen.cells:
        cells_file = args.output + ".cells"
        _write_text(cells_file, gen.numbering_text())
    payload = {
        "command": "generate",
        "kind": spec.kind,
        "params": list(args.params),
        "graph": _graph_summary(gen.graph),
        "graph_file": args.output,
        "cells_file": cells_file,
    }
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- bounds


def cmd_bounds(args) -> int:
    g = _load_graph(args.graph)
    n = args.n
    budget = SearchBudget(time_cap=args.time_cap)
    st = degree_stats(g)
    upper = {rep.bound: rep.to_dict() for rep in upper_bound_reports(g, n, budget)}
    lower_reports = [
        cy_implied_lower(g.vertex_count, st.max_degree, n),
        cy_lower_bound(g.vertex_count, st.max_degree, n),
    ]
    payload = {
        "command": "bounds",
        "n": n,
        "graph": _graph_summary(g),
        "upper": upper,
        "best": best_upper_bound(g, n, budget).to_dict(),
        "lower": {rep.bound: rep.to_dict() for rep in lower_reports},
    }
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- search


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def cmd_search(args) -> int:
    g = _load_graph(args.graph)
    n = args.n
    opts = SearchOptions(
        time_cap=args.time_cap,
        node_cap=args.node_cap,
        symmetry_breaking=not args.no_symmetry,
        parallel=args.parallel,
    )
    witness_file = args.output or f"{args.graph}.n{n}.witness.json"
    payload = {"command": "search", "n": n, "graph": _graph_summary(g)}
    if args.exact:
        res = exact_N(g, n, opts, use_bound_certificate=not args.no_certificate, progress=_progress)
        payload.update(mode="exact", result=res.to_dict())
        witness = res.witness
        code = EXIT_OK if res.complete else EXIT_CAP
    else:
        if args.k < 1:
            raise CliError(f"-k must be positive, got {args.k}")
        _progress(f"searching for {args.k} mutually orthogonal {n}-colorings")
        out = find_family(g, n, args.k, opts)
        _progress(f"k={args.k}: {out.status} ({out.nodes_explored} nodes)")
        payload.update(mode="k", k=args.k, result=out.to_dict())
        witness = out.witness
        code = {FOUND: EXIT_OK, CAPPED: EXIT_CAP}.get(out.status, EXIT_NEGATIVE)
    if witness is not None and len(witness):
        _write_text(witness_file, family_to_json(witness, g.vertex_count) + "\n")
        payload["witness_file"] = witness_file
    else:
        payload["witness_file"] = None
    _emit(payload, args.format)
    return code


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    fam = _load_family(args.colorings, g)
    report = verify_family(g, fam)
    payload = {
        "command": "verify",
        "k": len(fam),
        "n": fam.n,
        "ok": report.ok,
        "proper_failures": [[i, list(e)] for i, e in report.proper_failures],
        "orthogonality_failures": [[list(p), list(vs)] for p, vs in report.orthogonality_failures],
    }
    _emit(payload, args.format)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


# ---------------------------------------------------------------- construct


def _squares_payload(command: str, order: int, squares) -> dict:
    return {
        "command": command,
        "order": order,
        "squares": [[list(row) for row in sq.grid] for sq in squares],
        "pairwise_orthogonal": squares_are_mols(squares),
    }


def _write_squares(path: str | None, squares) -> None:
    if path and squares:
        _write_text(path, family_to_json([sq.to_coloring() for sq in squares]) + "\n")


def cmd_construct(args) -> int:
    what = args.what
    if what == "mols":
        squares = finite_field_mols(args.order)
        _write_squares(args.output, squares)
        payload = _squares_payload("construct mols", args.order, squares)
    elif what == "kronecker":
        squares = kronecker_mols(args.m, args.n)
        _write_squares(args.output, squares)
        payload = _squares_payload("construct kronecker", args.m * args.n, squares)
    elif what == "extract":
        g = _load_graph(args.graph) if args.graph else None
        fam = _load_family(args.colorings, g)
        if not fam.check().ok:
            raise UnverifiedFamily(f"{args.colorings}: family is not proper and mutually orthogonal")
        ext = mols_from_colorings(fam)
        _write_squares(args.output, ext.mols)
        payload = {
            "command": "construct extract",
            "order": fam.n,
            "mols": [[list(r) for r in sq.grid] for sq in ext.mols],
            "single_diagonal": [[list(r) for r in sq.grid] for sq in ext.single_diagonal_family],
            "sigma": None if ext.sigma is None else [s + 1 for s in ext.sigma],
        }
    else:  # compose
        g = _load_graph(args.graph)
        h = _load_graph(args.other_graph)
        fa = _load_family(args.colorings, g)
        fb = _load_family(args.other_colorings, h)
        prod, fam = compose_families(g, list(fa), h, list(fb), check=False)
        ok = fam.check().ok if len(fam) else True
        graph_file, family_file = args.output + ".g", args.output + ".json"
        _write_text(graph_file, write_graph(prod, comments=[f"or-product of {args.graph} and {args.other_graph}"]))
        _write_text(family_file, family_to_json(fam, prod.vertex_count) + "\n")
        payload = {
            "command": "construct compose",
            "graph": _graph_summary(prod),
            "k": len(fam),
            "n": fa.n * fb.n,
            "verified": ok,
            "graph_file": graph_file,
            "family_file": family_file,
        }
        _emit(payload, args.format)
        return EXIT_OK if ok else EXIT_NEGATIVE
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- table


def table_rows(n: int, budget: SearchBudget | None = None) -> list[dict]:
    """Bound values for each latin structure of order ``n`` (the payload rows of ``table``)."""
    structures = [
        ("equi", fam_mod.equi(n)),
        ("row-latin", fam_mod.row_latin(n)),
        ("latin", fam_mod.latin(n)),
        ("single-diagonal", fam_mod.single_diagonal(n)),
    ]
    if n % 2 == 1 and n > 3:
        structures.append(("double-diagonal", fam_mod.double_diagonal(n)))
    if n >= 4 and fam_mod.is_perfect_square(n):
        b = int(round(n**0.5))
        structures.append((f"sudoku({b})", fam_mod.sudoku(b)))
    if n >= 3:
        structures.append((f"rectangle {n - 1}x{n}", fam_mod.rectangle(n - 1, n)))
    rows = []
    for name, spec in structures:
        g = fam_mod.generate_family(spec).graph
        reports = {rep.bound: rep for rep in upper_bound_reports(g, n, budget)}
        row = {"structure": name, "v": g.vertex_count}
        for b in TABLE_BOUNDS:
            rep = reports[b]
            row[b] = _jsonable(rep.value) if rep.applicable else None
        rows.append(row)
    return rows


def cmd_table(args) -> int:
    if args.n < 2:
        raise CliError(f"-n must be at least 2, got {args.n}")
    payload = {"command": "table", "n": args.n, "rows": table_rows(args.n)}
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orthocolor", description="Bounds, search and constructions for orthogonal graph colorings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("table", "json"), default="table")

    gen = sub.add_parser("generate", help="write the graph of a latin structure")
    gen.add_argument("kind", help="one of: " + ", ".join(k.replace("_", "-") for k in fam_mod.KINDS))
    gen.add_argument("params", nargs="*", type=int)
    gen.add_argument("-o", "--output", required=True)
    gen.add_argument("--cells", help="polyomino cells, e.g. '1,1 2,2 3,3'")
    gen.add_argument("--regions", help="gerechte partition file: one region per line of r,c cells")
    fmt(gen)
    gen.set_defaults(func=cmd_generate)

    bnd = sub.add_parser("bounds", help="evaluate every bound on a graph")
    bnd.add_argument("-g", "--graph", required=True)
    bnd.add_argument("-n", type=int, required=True)
    bnd.add_argument("--time-cap", type=float, default=5.0)
    fmt(bnd)
    bnd.set_defaults(func=cmd_bounds)

    srch = sub.add_parser("search", help="exact search for orthogonal colorings")
    srch.add_argument("-g", "--graph", required=True)
    srch.add_argument("-n", type=int, required=True)
    mode = srch.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("-k", type=int)
    srch.add_argument("--time-cap", type=float, default=60.0)
    srch.add_argument("--node-cap", type=int, default=100_000_000)
    srch.add_argument("--no-symmetry", action="store_true")
    srch.add_argument("--no-certificate", action="store_true", help="do not stop at the best upper bound")
    srch.add_argument("--parallel", action="store_true")
    srch.add_argument("-o", "--output", help="witness file (default: GRAPH.n<N>.witness.json)")
    fmt(srch)
    srch.set_defaults(func=cmd_search)

    ver = sub.add_parser("verify", help="check a coloring family")
    ver.add_argument("-g", "--graph", required=True)
    ver.add_argument("-c", "--colorings", required=True)
    fmt(ver)
    ver.set_defaults(func=cmd_verify)

    con = sub.add_parser("construct", help="MOLS constructions")
    csub = con.add_subparsers(dest="what", required=True, parser_class=_Parser)
    mols = csub.add_parser("mols")
    mols.add_argument("--order", type=int, required=True)
    mols.add_argument("-o", "--output")
    fmt(mols)
    kron = csub.add_parser("kronecker")
    kron.add_argument("m", type=int)
    kron.add_argument("n", type=int)
    kron.add_argument("-o", "--output")
    fmt(kron)
    ext = csub.add_parser("extract")
    ext.add_argument("-c", "--colorings", required=True)
    ext.add_argument("-g", "--graph")
    ext.add_argument("-o", "--output")
    fmt(ext)
    comp = csub.add_parser("compose")
    comp.add_argument("-g", "--graph", required=True)
    comp.add_argument("-c", "--colorings", required=True)
    comp.add_argument("-G", "--other-graph", required=True)
    comp.add_argument("-C", "--other-colorings", required=True)
    comp.add_argument("-o", "--output", required=True, help="output prefix for PREFIX.g and PREFIX.json")
    fmt(comp)
    con.set_defaults(func=cmd_construct)

    tab = sub.add_parser("table", help="bounds for every latin structure of order n")
    tab.add_argument("-n", type=int, required=True)
    fmt(tab)
    tab.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"orthocolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnverifiedFamily, NotBijective) as exc:
        print(f"orthocolor: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (OrthocolorError, ValueError) as exc:
        print(f"orthocolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
