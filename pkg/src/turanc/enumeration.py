"""Isomorph-free generation of connected graphs and the exact ex_c oracle.

Graphs are grown one vertex at a time by canonical augmentation.  A child
``P + v`` (``v`` joined to a vertex subset ``S`` of the parent ``P``) is kept
only when ``v`` lies in the canonical deletion orbit: among the vertices
whose removal keeps the graph connected, those of minimum degree, then of
minimum neighbour-degree sum, and finally the one with the largest
canonical position.  Subsets are taken up to the automorphism group of
the parent, so every isomorphism class appears exactly once.

Being T-free is inherited by induced subgraphs, so the oracle prunes every
level to T-free graphs and only has to test copies of T through the new
vertex.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from hashlib import sha256
from pathlib import Path
from typing import Iterator, Sequence

from .canon import Perm, _orbit_roots, canonical_labeling, form_from_rows
from .embedding import TreeMatcher
from .graph import Graph, bits
from .trees import Tree, tree_name

MAX_ORACLE_N = 10
LARGE_N = 10


class EnumerationError(ValueError):
    pass


@dataclass
class ExcRecord:
    n: int
    tree: str
    max_edges: int
    extremal: list[bytes]
    graphs_examined: int
    elapsed: float = field(default=0.0, compare=False)

    def extremal_graphs(self) -> list[Graph]:
        from .graph import from_graph6

        return [from_graph6(f.decode("ascii")) for f in self.extremal]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tree": self.tree,
            "max_edges": self.max_edges,
            "extremal": [f.decode("ascii") for f in self.extremal],
            "graphs_examined": self.graphs_examined,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExcRecord":
        return cls(d["n"], d["tree"], d["max_edges"], [s.encode("ascii") for s in d["extremal"]],
                   d["graphs_examined"], d.get("elapsed", 0.0))


# -- augmentation core ---------------------------------------------------------


def _components(rows: Sequence[int], within: int) -> list[int]:
    out = []
    rest = within
    while rest:
        seen = frontier = rest & -rest
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= rows[u]
            frontier = nxt & rest & ~seen
            seen |= frontier
        out.append(seen)
        rest &= ~seen
    return out


def _subset_reps(m: int, gens: list[Perm]) -> list[int]:
    """One representative (the smallest) of each Aut-orbit of nonempty subsets."""
    top = 1 << m
    if not gens:
        return list(range(1, top))
    seen = bytearray(top)
    reps = []
    for s in range(1, top):
        if seen[s]:
            continue
        reps.append(s)
        seen[s] = 1
        stack = [s]
        while stack:
            x = stack.pop()
            for g in gens:
                y = 0
                for i in bits(x):
                    y |= 1 << g[i]
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return reps


class _Parent:
    __slots__ = ("rows", "gens", "m", "deg", "edges", "cut", "dmax")

    def __init__(self, rows: tuple[int, ...], gens: list[Perm]):
        self.rows = rows
        self.gens = gens
        m = self.m = len(rows)
        self.deg = [r.bit_count() for r in rows]
        self.edges = sum(self.deg) // 2
        full = (1 << m) - 1
        cut: list = []
        noncut_min = m
        for x in range(m):
            rest = full ^ (1 << x)
            comps = _components(rows, rest) if rest else []
            if len(comps) > 1:
                cut.append(comps)
            else:
                cut.append(None)
                noncut_min = min(noncut_min, self.deg[x])
        self.cut = cut
        # a non-cut parent vertex stays non-cut once the new vertex has >= 2 neighbours
        self.dmax = min(m, max(1, noncut_min + 1))

    def upper_bound(self) -> int:
        return self.edges + self.dmax

    def child_noncut(self, x: int, s: int) -> bool:
        rest = s & ~(1 << x)
        comps = self.cut[x]
        if comps is None:
            return self.m == 1 or rest != 0
        for c in comps:
            if not rest & c:
                return False
        return True


def _canonical(rows: list[int]) -> tuple[tuple[int, ...], list[Perm], list[int]]:
    n = len(rows)
    order, gens = canonical_labeling(n, rows)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        r = 0
        for u in bits(rows[v]):
            r |= 1 << pos[u]
        out.append(r)
    cgens = [tuple(pos[g[order[i]]] for i in range(n)) for g in gens]
    return tuple(out), cgens, order


def _children(parent: _Parent, matcher: TreeMatcher | None, min_edges: int,
              need_canonical: bool) -> tuple[list, int]:
    """Accepted children of ``parent`` with at least ``min_edges`` edges.

    Returns ``(children, examined)`` where each child is ``(rows, gens)`` in
    canonical labelling when ``need_canonical`` and ``(rows, None)`` otherwise.
    """
    m = parent.m
    v = m
    deg = parent.deg
    rows_p = parent.rows
    dlow = max(1, min_edges - parent.edges)
    out = []
    examined = 0
    for s in _subset_reps(m, parent.gens):
        d = s.bit_count()
        if d < dlow or d > parent.dmax:
            continue
        tied = []
        ok = True
        for x in range(m):
            dc = deg[x] + (s >> x & 1)
            if dc <= d and parent.child_noncut(x, s):
                if dc < d:
                    ok = False
                    break
                tied.append(x)
        if not ok:
            continue
        rows = [r | ((s >> x & 1) << v) for x, r in enumerate(rows_p)]
        rows.append(s)
        if tied:
            dc = [deg[x] + (s >> x & 1) for x in range(m)]
            dc.append(d)
            mine = sum(dc[x] for x in bits(s))
            equal = []
            for x in tied:
                other = sum(dc[u] for u in bits(rows[x]))
                if other < mine:
                    ok = False
                    break
                if other == mine:
                    equal.append(x)
            if not ok:
                continue
            tied = equal
        if matcher is not None and matcher.contains_through(m + 1, rows, v):
            continue
        if tied or need_canonical:
            crow, cgens, order = _canonical(rows)
            if tied:
                pos = {u: i for i, u in enumerate(order)}
                w = max(tied + [v], key=pos.__getitem__)
                if w != v:
                    roots = _orbit_roots(m + 1, [tuple(order[g[pos[u]]] for u in range(m + 1))
                                                 for g in cgens])
                    if roots[v] != roots[w]:
                        continue
            examined += 1
            out.append((crow, cgens) if need_canonical else (crow, None))
        else:
            examined += 1
            out.append((tuple(rows), None))
    return out, examined


# -- worker plumbing -----------------------------------------------------------

_WORKER_MATCHER: TreeMatcher | None = None


def _init_worker(tree_edges: tuple[int, list] | None) -> None:
    global _WORKER_MATCHER
    if tree_edges is None:
        _WORKER_MATCHER = None
    else:
        n, edges = tree_edges
        _WORKER_MATCHER = TreeMatcher(Tree(Graph.from_edges(n, edges)))


def _work(batch: list[tuple[tuple[int, ...], list[Perm]]], min_edges: int,
          need_canonical: bool) -> list[tuple[list, int]]:
    return [_children(_Parent(r, g), _WORKER_MATCHER, min_edges, need_canonical)
            for r, g in batch]


class _Runner:
    def __init__(self, tree: Tree | None, workers: int):
        self.tree = tree
        self.matcher = TreeMatcher(tree) if tree is not None else None
        self.workers = max(1, workers)
        self.pool = None
        if self.workers > 1:
            payload = None if tree is None else (tree.n, tree.graph.edges())
            self.pool = ProcessPoolExecutor(self.workers, initializer=_init_worker,
                                            initargs=(payload,))

    def close(self) -> None:
        if self.pool is not None:
            self.pool.shutdown()

    def expand(self, parents: list[tuple[tuple[int, ...], list[Perm]]], min_edges: int,
               need_canonical: bool) -> list[tuple[list, int]]:
        """Children of every parent, in parent order (independent of worker count)."""
        if self.pool is None or len(parents) < 2:
            return [_children(_Parent(r, g), self.matcher, min_edges, need_canonical)
                    for r, g in parents]
        size = max(1, len(parents) // (self.workers * 4))
        chunks = [parents[i:i + size] for i in range(0, len(parents), size)]
        futures = [self.pool.submit(_work, c, min_edges, need_canonical) for c in chunks]
        out = []
        for f in futures:
            out.extend(f.result())
        return out


def _sort_key(rows: tuple[int, ...]) -> tuple[int, bytes]:
    return sum(r.bit_count() for r in rows) // 2, form_from_rows(len(rows), rows)


def _levels(runner: _Runner, n_max: int) -> Iterator[tuple[int, list, int]]:
    """Yield ``(n, classes, examined)`` for n = 1 .. n_max - 1 (full levels)."""
    level: list = [((0,), [])]
    if runner.matcher is not None and runner.matcher.k == 1:
        level = []
    yield 1, level, len(level)
    for n in range(2, n_max):
        results = runner.expand(level, 0, True)
        level = [c for kids, _ in results for c in kids]
        yield n, level, sum(e for _, e in results)


def _check_n(n: int, allow_large: bool) -> None:
    if not 1 <= n <= MAX_ORACLE_N:
        raise EnumerationError(f"n must be in 1..{MAX_ORACLE_N}, got {n}")
    if n >= LARGE_N and not allow_large:
        raise EnumerationError(f"n={n} takes hours; pass allow_large=True (--allow-large)")


def enumerate_connected(n: int, workers: int = 1, allow_large: bool = False) -> Iterator[Graph]:
    """All connected graphs on ``n`` vertices, one per isomorphism class.

    Graphs come out in canonical labelling, sorted by edge count and then
    by canonical form.
    """
    _check_n(n, allow_large)
    runner = _Runner(None, workers)
    try:
        if n == 1:
            final = [(0,)]
        else:
            level = None
            for _, level, _ in _levels(runner, n):
                pass
            results = runner.expand(level, 0, True)
            final = [rows for kids, _ in results for rows, _ in kids]
    finally:
        runner.close()
    final.sort(key=_sort_key)
    for rows in final:
        yield Graph._trusted(n, rows)


def count_connected(n: int, workers: int = 1) -> int:
    return sum(1 for _ in enumerate_connected(n, workers))


# -- the oracle ---------------------------------------------------------------


def _record(tree: Tree, n: int, graphs: list[tuple[int, ...]], examined: int,
            elapsed: float) -> ExcRecord:
    if not graphs:
        raise EnumerationError(f"no connected graph on {n} vertices avoids {tree_name(tree)}")
    top = max(sum(r.bit_count() for r in g) // 2 for g in graphs)
    forms = set()
    for g in graphs:
        if sum(r.bit_count() for r in g) // 2 == top:
            forms.add(form_from_rows(n, _canonical(list(g))[0]))
    return ExcRecord(n, tree_name(tree), top, sorted(forms), examined, elapsed)


def _final_level(runner: _Runner, parents: list, n: int) -> tuple[list, int]:
    """Maximum-edge children only, processed in deterministic upper-bound waves."""
    info = [(_Parent(r, g).upper_bound(), i) for i, (r, g) in enumerate(parents)]
    info.sort(key=lambda t: (-t[0], t[1]))
    best = -1
    keep: list = []
    examined = 0
    i = 0
    while i < len(info):
        ub = info[i][0]
        if ub < best:
            break
        j = i
        while j < len(info) and info[j][0] == ub:
            j += 1
        wave = [parents[k] for _, k in info[i:j]]
        threshold = max(best, 0)
        for kids, e in runner.expand(wave, threshold, False):
            examined += e
            for rows, _ in kids:
                edges = sum(r.bit_count() for r in rows) // 2
                if edges > best:
                    best = edges
                    keep = [rows]
                elif edges == best:
                    keep.append(rows)
        i = j
    return keep, examined


def exc_series(tree: Tree, n_max: int, workers: int = 1, allow_large: bool = False
               ) -> dict[int, ExcRecord]:
    """ExcRecords for every n in 1..n_max from a single enumeration pass."""
    _check_n(n_max, allow_large)
    out: dict[int, ExcRecord] = {}
    runner = _Runner(tree, workers)
    start = time.perf_counter()
    try:
        level: list = []
        total = 0
        for n, level, examined in _levels(runner, n_max):
            total += examined
            if level:
                out[n] = _record(tree, n, [r for r, _ in level], total,
                                 time.perf_counter() - start)
        if n_max == 1:
            return out
        keep, examined = _final_level(runner, level, n_max)
        out[n_max] = _record(tree, n_max, keep, total + examined, time.perf_counter() - start)
    finally:
        runner.close()
    return out


def _cache_path(tree: Tree, n: int) -> Path | None:
    root = os.environ.get("TURANC_CACHE_DIR")
    if not root:
        return None
    key = sha256(tree.form + b"|" + str(n).encode()).hexdigest()[:32]
    return Path(root) / f"exc-{key}.json"


def exc_bruteforce(tree: Tree, n: int, workers: int = 1, allow_large: bool = False) -> ExcRecord:
    """Exact ex_c(n, T) with every extremal graph, by exhaustive search.

    When ``TURANC_CACHE_DIR`` is set, records are memoised there keyed by
    the canonical form of ``T`` and ``n``.
    """
    if tree.n < 4:
        raise EnumerationError("the oracle needs a pattern tree with at least 4 vertices")
    _check_n(n, allow_large)
    path = _cache_path(tree, n)
    if path is not None and path.exists():
        return ExcRecord.from_dict(json.loads(path.read_text()))
    rec = exc_series(tree, n, workers, allow_large)[n]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        d = rec.to_dict()
        d["elapsed"] = rec.elapsed
        path.write_text(json.dumps(d, sort_keys=True))
    return rec


def t_free_connected(tree: Tree, n: int, workers: int = 1) -> list[Graph]:
    """Every connected T-free graph on ``n`` vertices up to isomorphism."""
    _check_n(n, False)
    runner = _Runner(tree, workers)
    try:
        level: list = []
        for _, level, _ in _levels(runner, n):
            pass
        if n == 1:
            final = [r for r, _ in level]
        else:
            results = runner.expand(level, 0, True)
            final = [rows for kids, _ in results for rows, _ in kids]
    finally:
        runner.close()
    final.sort(key=_sort_key)
    return [Graph._trusted(n, rows) for rows in final]


@dataclass(frozen=True)
class ScanEntry:
    n: int
    max_edges: int
    violates: bool


def monotonicity_scan(tree: Tree, n_max: int, workers: int = 1,
                      allow_large: bool = False) -> list[ScanEntry]:
    """ex_c(n, T) for n = |T|-1 .. n_max, flagging drops below an earlier value."""
    lo = max(1, tree.n - 1)
    series = exc_series(tree, n_max, workers, allow_large)
    out = []
    peak = -1
    for n in range(lo, n_max + 1):
        e = series[n].max_edges
        out.append(ScanEntry(n, e, e < peak))
        peak = max(peak, e)
    return out
