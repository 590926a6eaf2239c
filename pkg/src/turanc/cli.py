"""Command-line front end: ``turanc <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import constructions as C
from .bounds import evaluate_all_bounds, gamma_report
from .embedding import find_embedding
from .enumeration import MAX_ORACLE_N, EnumerationError, exc_bruteforce, monotonicity_scan
from .graph import Graph, GraphError, from_graph6, to_graph6
from .tables import verify_tables
from .trees import Tree, TreeParseError, parse_tree, tree_name, tree_params

SCHEMA = 1
ORACLE_DEFAULT_MAX = 9


class CliError(Exception):
    pass


# -- input helpers -------------------------------------------------------------


def _tree(expr: str) -> Tree:
    try:
        return parse_tree(expr)
    except TreeParseError as exc:
        raise CliError(f"cannot parse tree {expr!r}: {exc}") from exc


def read_host(spec: str) -> Graph:
    """``g6:<graph6>``, ``@path`` (first graph6 line) or ``<construction>:<n>``."""
    try:
        if spec.startswith("g6:"):
            return from_graph6(spec[3:])
        if spec.startswith("@"):
            lines = [ln for ln in Path(spec[1:]).read_text().splitlines() if ln.strip()]
            if not lines:
                raise CliError(f"no graph in {spec[1:]}")
            return from_graph6(lines[0])
        if ":" in spec:
            name, n = spec.rsplit(":", 1)
            return C.named_small(name, int(n)).graph
    except (GraphError, C.ConstructionError, ValueError, OSError) as exc:
        raise CliError(f"bad host {spec!r}: {exc}") from exc
    raise CliError(f"bad host {spec!r}: expected g6:<graph6>, @file or name:n")


def _emit(args: argparse.Namespace, command: str, inputs: dict, outputs: dict, text: str) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "version": __version__, "command": command,
               "inputs": inputs, "outputs": outputs}
        body = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
    if args.out:
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)


# -- subcommands ---------------------------------------------------------------


def cmd_params(args: argparse.Namespace) -> int:
    t = _tree(args.tree)
    if t.n < 2:
        raise CliError("parameters need a tree with at least 2 vertices")
    p = tree_params(t).to_dict()
    lines = [f"tree: {tree_name(t)} ({t.n} vertices)"] + [f"{k}: {v}" for k, v in p.items()]
    _emit(args, "params", {"tree": args.tree}, {"tree": tree_name(t), "n": t.n, "params": p},
          "\n".join(lines))
    return 0


_TREE_BUILDERS = {
    "prop2_longest_path": C.prop2_longest_path,
    "prop2_induced_path": C.prop2_induced_path,
    "prop2_induced_path_spider": C.prop2_induced_path_spider,
    "prop2_delta2": C.prop2_delta2,
    "branch_construction": C.branch_construction,
}


def _construct(args: argparse.Namespace) -> C.ConstructionResult:
    name = args.name

    def need(attr: str) -> int:
        v = getattr(args, attr)
        if v is None:
            raise CliError(f"{name} needs --{attr.replace('_', '-')}")
        return v

    if name in _TREE_BUILDERS:
        if args.tree is None:
            raise CliError(f"{name} needs --tree")
        return _TREE_BUILDERS[name](_tree(args.tree), need("n"))
    if name == "kopylov":
        return C.kopylov(need("n"), need("k"), need("s"))
    if name == "nearly_regular":
        return C.nearly_regular(need("n"), need("d"))
    if name == "clique_join_empty":
        return C.clique_join_empty(need("a"), need("n"))
    if name == "complete_bipartite":
        return C.complete_bipartite(need("a"), need("b"))
    if name == "cycle_of_cliques":
        return C.cycle_of_cliques(need("n"), need("block"))
    if name == "path_of_cliques":
        return C.path_of_cliques(need("n"), need("block"))
    return C.named_small(name, need("n"))


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        res = _construct(args)
    except C.ConstructionError as exc:
        raise CliError(str(exc)) from exc
    rec = res.to_dict()
    ok = res.graph.is_connected() and rec["actual_edges"] == res.claimed_edges
    rec["connected"] = res.graph.is_connected()
    text = (f"{rec['graph6']}\n{res.name}: n={res.n} claimed={res.claimed_edges} "
            f"actual={rec['actual_edges']} connected={rec['connected']}")
    inputs = {k: v for k, v in vars(args).items()
              if k in ("name", "n", "tree", "k", "s", "d", "a", "b", "block") and v is not None}
    _emit(args, "construct", inputs, rec, text)
    return 0 if ok else 1


def cmd_check(args: argparse.Namespace) -> int:
    g = read_host(args.host)
    t = _tree(args.tree)
    emb = find_embedding(g, t)
    out = {"contains": emb is not None,
           "witness": None if emb is None else {str(k): v for k, v in sorted(emb.items())},
           "host": to_graph6(g) if g.n <= 62 else None, "tree": tree_name(t)}
    text = f"contains: {str(emb is not None).lower()}"
    if emb is not None:
        text += "\nwitness: " + " ".join(f"{k}->{v}" for k, v in sorted(emb.items()))
    _emit(args, "check", {"host": args.host, "tree": args.tree}, out, text)
    return 0


def cmd_exc(args: argparse.Namespace) -> int:
    t = _tree(args.tree)
    try:
        rec = exc_bruteforce(t, args.n, workers=args.workers, allow_large=args.allow_large)
    except EnumerationError as exc:
        raise CliError(str(exc)) from exc
    if args.extremal_out:
        Path(args.extremal_out).write_text("".join(f.decode() + "\n" for f in rec.extremal))
    out = rec.to_dict()
    text = (f"ex_c({args.n}, {rec.tree}) = {rec.max_edges}\n"
            f"extremal graphs: {len(rec.extremal)}\n" + "".join(f"  {f.decode()}\n" for f in rec.extremal)
            + f"graphs examined: {rec.graphs_examined}\nelapsed: {rec.elapsed:.2f}s")
    _emit(args, "exc", {"tree": args.tree, "n": args.n}, out, text)
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    t = _tree(args.tree)
    oracle = None
    if not args.no_oracle and args.n <= ORACLE_DEFAULT_MAX and t.n >= 4:
        oracle = exc_bruteforce(t, args.n, workers=args.workers).max_edges
    try:
        evs = evaluate_all_bounds(t, args.n, oracle)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    rows = []
    lines = [f"tree {tree_name(t)}, n={args.n}, oracle={oracle if oracle is not None else 'n/a'}"]
    bad = False
    for b in evs:
        d = b.to_dict()
        d["oracle"] = oracle
        if oracle is not None and b.value is not None:
            d["gap"] = oracle - b.value
            if (b.kind == "lower" and b.value > oracle) or (b.kind != "lower" and b.value != oracle):
                bad = True
        rows.append(d)
        val = "n/a" if b.value is None else b.value
        lines.append(f"  {b.name:16s} {b.kind:6s} {val!s:>5s}"
                     + (f"  gap={d['gap']}" if "gap" in d else "")
                     + (f"  ({b.reason})" if b.reason else ""))
    out = {"tree": tree_name(t), "n": args.n, "oracle": oracle, "bounds": rows}
    ex = oracle
    if ex is not None:
        g = gamma_report(t, [args.n], lambda _t, _n: ex)
        if g:
            out["gamma"] = g[0].to_dict()
    _emit(args, "bounds", {"tree": args.tree, "n": args.n}, out, "\n".join(lines))
    return 1 if bad else 0


def cmd_scan(args: argparse.Namespace) -> int:
    t = _tree(args.tree)
    if t.n < 2:
        raise CliError("scan needs a tree with at least 2 vertices")
    if args.n_max > MAX_ORACLE_N - 1 and not args.allow_large:
        raise CliError(f"n_max={args.n_max} needs --allow-large")
    try:
        entries = monotonicity_scan(t, args.n_max, args.workers, args.allow_large)
    except EnumerationError as exc:
        raise CliError(str(exc)) from exc
    out = {"tree": tree_name(t), "scan": [e.__dict__ for e in entries],
           "violations": [e.n for e in entries if e.violates]}
    lines = [f"{e.n:3d} {e.max_edges:4d}" + ("  drop" if e.violates else "") for e in entries]
    _emit(args, "scan", {"tree": args.tree, "n_max": args.n_max}, out, "\n".join(lines))
    return 0


def cmd_verify_tables(args: argparse.Namespace) -> int:
    if args.n_max > MAX_ORACLE_N - 1 and not args.allow_large:
        raise CliError(f"n_max={args.n_max} needs --allow-large")
    checks = verify_tables(args.n_max, args.workers)
    failed = [c for c in checks if c.status == "FAIL"]
    lines = []
    for c in checks:
        exp = "-" if c.expected is None else c.expected
        lines.append(f"{c.status:11s} table {c.table} {c.tree:12s} n={c.n} "
                     f"{c.kind:13s} expected={exp} oracle={c.oracle}"
                     + ("" if c.construction is None else
                        f" construction={c.construction}:{'ok' if c.construction_ok else 'BAD'}"))
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    out = {"checks": [c.to_dict() for c in checks], "failed": len(failed), "total": len(checks)}
    _emit(args, "verify-tables", {"n_max": args.n_max}, out, "\n".join(lines))
    return 1 if failed else 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--workers", type=int, default=1, help="processes for enumeration")
    common.add_argument("--allow-large", action="store_true", help="permit n = 10 enumeration")

    ap = argparse.ArgumentParser(prog="turanc", description=__doc__)
    ap.add_argument("--version", action="version", version=f"turanc {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="tree parameters")
    p.add_argument("tree")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("construct", parents=[common], help="build a witness graph")
    p.add_argument("name")
    for flag in ("n", "k", "s", "d", "a", "b", "block"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--tree")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", parents=[common], help="test whether a host contains a tree")
    p.add_argument("--host", required=True, help="g6:<graph6>, @file or name:n")
    p.add_argument("tree")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("exc", parents=[common], help="exact ex_c(n, T) by exhaustive search")
    p.add_argument("tree")
    p.add_argument("n", type=int)
    p.add_argument("--extremal-out", help="write extremal graphs as graph6 lines")
    p.set_defaults(func=cmd_exc)

    p = sub.add_parser("bounds", parents=[common], help="all closed-form bounds at (T, n)")
    p.add_argument("tree")
    p.add_argument("n", type=int)
    p.add_argument("--no-oracle", action="store_true", help="skip the exhaustive comparison")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("scan", parents=[common], help="ex_c(n, T) for n = |T|-1 .. n_max")
    p.add_argument("tree")
    p.add_argument("n_max", type=int)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify-tables", parents=[common], help="check tabulated values")
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=cmd_verify_tables)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except CliError as exc:
        print(f"turanc {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if not args.json and args.command in ("exc", "verify-tables", "scan"):
        print(f"[{time.perf_counter() - start:.2f}s]", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
