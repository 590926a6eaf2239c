"""Exact tree-in-graph containment by backtracking.

The pattern is laid out in BFS order from a root, children sorted by
decreasing subtree size.  Each pattern vertex is mapped into the unused
neighbourhood of its parent's image, restricted to host vertices of large
enough degree, and a vertex is only used if enough free neighbours remain
for its children.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .canon import canonical_labeling, _orbit_roots
from .graph import Graph, bits
from .trees import Tree


class _Plan:
    __slots__ = ("order", "parent", "need", "kids")

    def __init__(self, adj: tuple[int, ...], root: int):
        n = len(adj)
        # subtree sizes when hanging from root
        par = [-1] * n
        seq = [root]
        seen = 1 << root
        for v in seq:
            for u in bits(adj[v] & ~seen):
                seen |= 1 << u
                par[u] = v
                seq.append(u)
        size = [1] * n
        for v in reversed(seq[1:]):
            size[par[v]] += size[v]
        order = [root]
        for v in order:
            kids = [u for u in bits(adj[v]) if par[u] == v]
            kids.sort(key=lambda u: -size[u])
            order.extend(kids)
        pos = {v: i for i, v in enumerate(order)}
        self.order = order
        self.parent = [pos[par[v]] if par[v] >= 0 else -1 for v in order]
        self.need = [adj[v].bit_count() for v in order]
        self.kids = [sum(1 for u in bits(adj[v]) if par[u] == v) for v in order]


def _degree_masks(adj: Sequence[int], top: int) -> list[int]:
    masks = [0] * (top + 1)
    for v, row in enumerate(adj):
        d = min(row.bit_count(), top)
        masks[d] |= 1 << v
    for d in range(top - 1, -1, -1):
        masks[d] |= masks[d + 1]
    return masks


def _embed(plan: _Plan, adj: Sequence[int], deg_ge: list[int], roots: int) -> list[int] | None:
    k = len(plan.order)
    need, kids, parent = plan.need, plan.kids, plan.parent
    img = [0] * k
    cand = [0] * k
    cand[0] = roots & deg_ge[need[0]]
    used = 0
    i = 0
    while True:
        c = cand[i]
        if not c:
            i -= 1
            if i < 0:
                return None
            used ^= 1 << img[i]
            continue
        low = c & -c
        cand[i] = c ^ low
        v = low.bit_length() - 1
        if (adj[v] & ~used & ~low).bit_count() < kids[i]:
            continue
        img[i] = v
        used |= low
        i += 1
        if i == k:
            return img
        cand[i] = adj[img[parent[i]]] & ~used & deg_ge[need[i]]


class TreeMatcher:
    """Precompiled search plans for one pattern tree."""

    def __init__(self, tree: Tree):
        self.tree = tree
        adj = tree.adj
        self.k = tree.n
        self.max_deg = max((r.bit_count() for r in adj), default=0)
        deg = [r.bit_count() for r in adj]
        root = deg.index(self.max_deg)
        self.plan = _Plan(adj, root)
        _, gens = canonical_labeling(tree.n, adj)
        roots = _orbit_roots(tree.n, gens)
        self.rooted = [_Plan(adj, v) for v in sorted(set(roots))]

    def _map(self, plan: _Plan, img: list[int]) -> dict[int, int]:
        return {plan.order[i]: img[i] for i in range(len(img))}

    def find(self, n: int, adj: Sequence[int]) -> dict[int, int] | None:
        if self.k > n:
            return None
        deg_ge = _degree_masks(adj, self.max_deg)
        img = _embed(self.plan, adj, deg_ge, (1 << n) - 1)
        return None if img is None else self._map(self.plan, img)

    def contains(self, n: int, adj: Sequence[int]) -> bool:
        if self.k > n:
            return False
        deg_ge = _degree_masks(adj, self.max_deg)
        if not deg_ge[self.max_deg]:
            return False
        return _embed(self.plan, adj, deg_ge, (1 << n) - 1) is not None

    def contains_through(self, n: int, adj: Sequence[int], v: int) -> bool:
        """True iff some copy of the pattern uses host vertex ``v``."""
        if self.k > n:
            return False
        deg_ge = _degree_masks(adj, self.max_deg)
        if not deg_ge[self.max_deg]:
            return False
        root = 1 << v
        return any(_embed(p, adj, deg_ge, root) is not None for p in self.rooted)


@lru_cache(maxsize=256)
def matcher(tree: Tree) -> TreeMatcher:
    return TreeMatcher(tree)


def contains_tree(g: Graph, t: Tree) -> bool:
    return matcher(t).contains(g.n, g.adj)


def find_embedding(g: Graph, t: Tree) -> dict[int, int] | None:
    """Injective map V(T) -> V(G) preserving edges, or None if T is absent."""
    emb = matcher(t).find(g.n, g.adj)
    if emb is not None:
        if len(set(emb.values())) != t.n:
            raise AssertionError("embedding is not injective")
        for u, v in t.graph.edges():
            if not g.has_edge(emb[u], emb[v]):
                raise AssertionError(f"embedding misses edge {u}-{v}")
    return emb


def is_saturated(g: Graph, t: Tree) -> bool:
    """True iff adding any missing edge to the T-free graph ``g`` creates T."""
    m = matcher(t)
    if m.contains(g.n, g.adj):
        raise ValueError("graph already contains the pattern tree")
    adj = list(g.adj)
    for u in range(g.n):
        for v in bits(~adj[u] & ((1 << g.n) - 1) & ~((1 << (u + 1)) - 1)):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            hit = m.contains_through(g.n, adj, u)
            adj[u] ^= 1 << v
            adj[v] ^= 1 << u
            if not hit:
                return False
    return True
