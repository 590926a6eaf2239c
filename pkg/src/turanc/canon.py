"""Canonical labelling by partition refinement and individualisation.

The search follows the classic scheme: refine an ordered partition to an
equitable one, individualise a vertex of the first smallest non-singleton
cell, and recurse.  Leaves are compared by (refinement traces along the
path, relabelled adjacency); the maximum leaf defines the canonical form.
Automorphisms discovered at equivalent leaves prune sibling subtrees and
are returned as generators of the automorphism group.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, _encode_graph6, bits

Perm = tuple[int, ...]


def refine(adj: Sequence[int], cells: list[int], active: list[int]) -> tuple[list[int], tuple]:
    """Refine the ordered partition ``cells`` to the coarsest equitable one.

    ``active`` lists the cells still to be used as splitters.  Returns the
    refined cells and a label-independent trace of the splits performed.
    """
    cells = list(cells)
    pending = list(active)
    in_queue = set(pending)
    trace = []
    singletons = sum(1 for c in cells if c & (c - 1) == 0)
    total = len(adj)
    while pending and singletons < total:
        w = pending.pop(0)
        in_queue.discard(w)
        new: list[int] = []
        for x in cells:
            if x & (x - 1) == 0:
                new.append(x)
                continue
            groups: dict[int, int] = {}
            rest = x
            while rest:
                low = rest & -rest
                rest ^= low
                c = (adj[low.bit_length() - 1] & w).bit_count()
                groups[c] = groups.get(c, 0) | low
            if len(groups) == 1:
                new.append(x)
                continue
            keys = sorted(groups)
            parts = [groups[k] for k in keys]
            trace.append((len(new), tuple(keys), tuple(p.bit_count() for p in parts)))
            new.extend(parts)
            singletons += sum(1 for p in parts if p & (p - 1) == 0)
            if x in in_queue:
                i = pending.index(x)
                pending[i:i + 1] = parts
                in_queue.discard(x)
                in_queue.update(parts)
            else:
                sizes = [p.bit_count() for p in parts]
                big = sizes.index(max(sizes))
                for i, p in enumerate(parts):
                    if i != big:
                        pending.append(p)
                        in_queue.add(p)
        cells = new
    return cells, tuple(trace)


def _orbit_roots(n: int, gens: list[Perm]) -> list[int]:
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for g in gens:
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(v) for v in range(n)]


class _Search:
    __slots__ = ("n", "adj", "gens", "first_lab", "first_code", "best_lab", "best_code",
                 "best_invs", "best_path", "first_path", "path", "invs")

    def __init__(self, n: int, adj: Sequence[int]):
        self.n = n
        self.adj = adj
        self.gens: list[Perm] = []
        self.first_lab = None
        self.first_code = None
        self.first_path: list[int] = []
        self.best_lab = None
        self.best_code = None
        self.best_invs: list = []
        self.best_path: list[int] = []
        self.path: list[int] = []
        self.invs: list = []

    def _code(self, lab: list[int]) -> tuple[int, ...]:
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        adj = self.adj
        code = []
        for v in lab:
            row = 0
            r = adj[v]
            while r:
                low = r & -r
                r ^= low
                row |= 1 << pos[low.bit_length() - 1]
            code.append(row)
        return tuple(code)

    def _automorphism(self, ref_lab: list[int], lab: list[int]) -> None:
        g = [0] * self.n
        for a, b in zip(ref_lab, lab):
            g[a] = b
        perm = tuple(g)
        if perm not in self.gens:
            self.gens.append(perm)

    @staticmethod
    def _common(a: list[int], b: list[int]) -> int:
        k = 0
        for x, y in zip(a, b):
            if x != y:
                break
            k += 1
        return k

    def leaf(self, cells: list[int]) -> int | None:
        lab = [c.bit_length() - 1 for c in cells]
        code = self._code(lab)
        if self.first_lab is None:
            self.first_lab = self.best_lab = lab
            self.first_code = self.best_code = code
            self.first_path = list(self.path)
            self.best_path = list(self.path)
            self.best_invs = list(self.invs)
            return None
        if code == self.first_code:
            self._automorphism(self.first_lab, lab)
            return self._common(self.path, self.first_path)
        mine = (self.invs, code)
        theirs = (self.best_invs, self.best_code)
        if mine == theirs:
            self._automorphism(self.best_lab, lab)
            return self._common(self.path, self.best_path)
        if mine > theirs:
            self.best_lab = lab
            self.best_code = code
            self.best_invs = list(self.invs)
            self.best_path = list(self.path)
        return None

    def node(self, cells: list[int]) -> int | None:
        level = len(self.path)
        if self.best_lab is not None:
            if self.invs < self.best_invs[:level + 1]:
                return None
        target = -1
        size = self.n + 1
        for i, c in enumerate(cells):
            k = c.bit_count()
            if 1 < k < size:
                size = k
                target = i
        if target < 0:
            return self.leaf(cells)
        cell = cells[target]
        explored: list[int] = []
        roots = None
        seen_gens = -1
        for v in bits(cell):
            if explored:
                if seen_gens != len(self.gens):
                    fixed = self.path
                    stab = [g for g in self.gens if all(g[x] == x for x in fixed)]
                    roots = _orbit_roots(self.n, stab) if stab else None
                    seen_gens = len(self.gens)
                if roots is not None and any(roots[v] == roots[u] for u in explored):
                    continue
            explored.append(v)
            low = 1 << v
            child = cells[:target] + [low, cell ^ low] + cells[target + 1:]
            child, trace = refine(self.adj, child, [low])
            self.path.append(v)
            self.invs.append(trace)
            back = self.node(child)
            self.path.pop()
            self.invs.pop()
            if back is not None and back < level:
                return back
        return None


def canonical_labeling(n: int, adj: Sequence[int], cells: list[int] | None = None
                       ) -> tuple[list[int], list[Perm]]:
    """Canonical order and automorphism generators of a raw adjacency.

    ``order[i]`` is the original vertex placed at canonical position ``i``.
    ``cells`` optionally gives an ordered vertex colouring (list of masks)
    that isomorphisms must respect.
    """
    start = [(1 << n) - 1] if cells is None else [c for c in cells if c]
    start, trace = refine(adj, start, list(start))
    search = _Search(n, adj)
    search.invs.append(trace)
    search.node(start)
    return list(search.best_lab), search.gens


def canonical_code(n: int, adj: Sequence[int], cells: list[int] | None = None) -> tuple[int, ...]:
    order, _ = canonical_labeling(n, adj, cells)
    return _relabel_rows(adj, order)


def _relabel_rows(adj: Sequence[int], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    out = []
    for v in order:
        row = 0
        for u in bits(adj[v]):
            row |= 1 << pos[u]
        out.append(row)
    return tuple(out)


def canonical_graph(g: Graph) -> Graph:
    order, _ = canonical_labeling(g.n, g.adj)
    return Graph._trusted(g.n, _relabel_rows(g.adj, order))


def canonical_form(g: Graph) -> bytes:
    """Relabelling-invariant byte string; equal exactly for isomorphic graphs."""
    return form_from_rows(g.n, canonical_code(g.n, g.adj))


def form_from_rows(n: int, rows: Sequence[int]) -> bytes:
    return _encode_graph6(n, rows).encode("ascii")


def automorphism_generators(g: Graph) -> list[Perm]:
    return canonical_labeling(g.n, g.adj)[1]


def orbits(g: Graph) -> list[int]:
    """Orbit representative (smallest vertex) for each vertex of ``g``."""
    return _orbit_roots(g.n, automorphism_generators(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count() != h.edge_count():
        return False
    return canonical_form(g) == canonical_form(h)
