"""Lower-bound witness graphs for connected Turán numbers of trees.

Each generator returns the built graph together with ``claimed_edges``, the
closed-form edge count of the construction as built.  When a published
bound uses a different expression (a simplified or rounded form), it is
stored in ``params["statement_bound"]`` so both numbers stay visible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .graph import (
    MAX_VERTICES,
    Graph,
    GraphError,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    join,
    k_copies,
    matching_graph,
    star_graph,
)
from .trees import Tree, is_path, is_star, tree_name, tree_params


class ConstructionError(ValueError):
    pass


@dataclass
class ConstructionResult:
    graph: Graph
    name: str
    claimed_edges: int
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.graph.n

    def to_dict(self) -> dict:
        from .graph import to_graph6

        return {
            "name": self.name,
            "n": self.graph.n,
            "params": self.params,
            "claimed_edges": self.claimed_edges,
            "actual_edges": self.graph.edge_count(),
            "graph6": to_graph6(self.graph) if self.graph.n <= 62 else None,
        }


def _check_n(n: int, low: int = 1) -> None:
    if not low <= n <= MAX_VERTICES:
        raise ConstructionError(f"n must be in {low}..{MAX_VERTICES}, got {n}")


class _Builder:
    """Mutable edge set used while laying out a construction."""

    def __init__(self, n: int):
        self.n = n
        self.adj = [0] * n

    def edge(self, u: int, v: int) -> None:
        if u != v:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u

    def clique(self, vertices: list[int]) -> None:
        for i, u in enumerate(vertices):
            for v in vertices[i + 1:]:
                self.edge(u, v)

    def path(self, vertices: list[int]) -> None:
        for u, v in zip(vertices, vertices[1:]):
            self.edge(u, v)

    def graph(self) -> Graph:
        return Graph._trusted(self.n, self.adj)


# -- path-based ----------------------------------------------------------------


def kopylov(n: int, k: int, s: int) -> ConstructionResult:
    """Clique on X ∪ Y (|X| = k-2s, |Y| = s) with Y completely joined to an independent Z.

    Contains no path on k+1 vertices whenever k > 2s.
    """
    if not k > 2 * s >= 2:
        raise ConstructionError(f"need k > 2s >= 2, got k={k}, s={s}")
    if n < k - s:
        raise ConstructionError(f"need n >= k - s = {k - s}, got n={n}")
    _check_n(n)
    core = k - s
    b = _Builder(n)
    b.clique(list(range(core)))
    y = range(core - s, core)
    for z in range(core, n):
        for u in y:
            b.edge(u, z)
    claimed = comb(core, 2) + s * (n - core)
    return ConstructionResult(b.graph(), "kopylov", claimed, {"n": n, "k": k, "s": s})


def prop2_longest_path(t: Tree, n: int) -> ConstructionResult:
    """Kopylov graph avoiding paths on ell(T) vertices."""
    ell = tree_params(t).ell
    if ell < 4:
        raise ConstructionError(f"needs a longest path of at least 4 vertices, got {ell}")
    k, s = ell - 1, (ell - 2) // 2
    if n < k - s:
        raise ConstructionError(f"n must be at least {k - s} for this tree")
    res = kopylov(n, k, s)
    res.name = "prop2_longest_path"
    res.params = {"tree": tree_name(t), "n": n, "ell": ell, "k": k, "s": s,
                  "statement_bound": comb((ell + 1) // 2, 2) + (ell - 2) // 2 * (n - (ell + 1) // 2)}
    return res


# -- induced-path blocks -----------------------------------------------------


def prop2_induced_path(t: Tree, n: int) -> ConstructionResult:
    """Ring of cliques K_i (size k-2p-3) joined through paths P_i of p+1 vertices.

    Leftover vertices lengthen the last path.
    """
    pr = tree_params(t)
    k, p = t.n, pr.p
    clique = k - 2 * p - 3
    if clique < 1:
        raise ConstructionError(f"clique size k-2p-3 = {clique} is below 1")
    block = clique + p + 1
    s = n // block
    if s < 1:
        raise ConstructionError(f"n must be at least k-p-2 = {block}")
    _check_n(n)
    b = _Builder(n)
    gates = []
    paths = []
    nxt = 0
    for i in range(s):
        members = list(range(nxt, nxt + clique))
        b.clique(members)
        gates.append(members[0])
        nxt += clique
        size = p + 1 if i < s - 1 else n - nxt
        paths.append(list(range(nxt, nxt + size)))
        nxt += size
    for i in range(s):
        b.path([gates[i]] + paths[i] + [gates[(i + 1) % s]])
    g = b.graph()
    statement = (comb(clique, 2) + p + 2) * s
    claimed = s * comb(clique, 2) + (n - s * clique) + s
    if s == 1 and len(paths[0]) == 1:
        claimed -= 1
    return ConstructionResult(g, "prop2_induced_path", claimed,
                              {"tree": tree_name(t), "n": n, "p": p, "clique": clique,
                               "blocks": s, "statement_bound": statement})


def prop2_induced_path_spider(t: Tree, n: int) -> ConstructionResult:
    """Hub v with legs P_i (p+1 vertices); a clique C_i (k-p-1 vertices) hangs on each leg end."""
    degs = t.graph.degrees()
    if sum(1 for d in degs if d >= 3) < 2:
        raise ConstructionError("needs a tree with at least two vertices of degree >= 3")
    _check_n(n, 2)
    k, p = t.n, tree_params(t).p
    leg, cl = p + 1, k - p - 1
    b = _Builder(n)
    left = n - 1
    nxt = 1
    blocks = 0
    while left:
        take = min(left, k)
        plen = min(take, leg)
        members = list(range(nxt, nxt + plen))
        b.path([0] + members)
        nxt += plen
        rest = take - plen
        if rest:
            clique = list(range(nxt, nxt + rest))
            b.clique(clique)
            b.edge(members[-1], clique[0])
            nxt += rest
        left -= take
        blocks += 1
    g = b.graph()
    per = comb(cl, 2) + p + 2
    return ConstructionResult(g, "prop2_induced_path_spider", g.edge_count(),
                              {"tree": tree_name(t), "n": n, "p": p, "blocks": blocks,
                               "per_block": per, "rate": f"{per}/{k}"})


# -- degree-based --------------------------------------------------------------


def nearly_regular(n: int, d: int) -> ConstructionResult:
    """Connected graph with all degrees d (one vertex d-1 when n*d is odd)."""
    _check_n(n)
    if not 0 <= d < n:
        raise ConstructionError(f"need 0 <= d < n, got d={d}, n={n}")
    if d == 0 and n > 1 or d == 1 and n > 2:
        raise ConstructionError(f"no connected graph on {n} vertices has maximum degree {d}")
    b = _Builder(n)
    for i in range(n):
        for j in range(1, d // 2 + 1):
            b.edge(i, (i + j) % n)
    if d % 2:
        if n % 2 == 0:
            for i in range(n // 2):
                b.edge(i, i + n // 2)
        else:
            # vertex n-1 is left with degree d-1
            h = (n - 1) // 2
            for i in range(h):
                b.edge(i, i + h)
    return ConstructionResult(b.graph(), f"nearly_regular_{d}", n * d // 2, {"n": n, "d": d})


def clique_join_empty(a: int, n: int) -> ConstructionResult:
    """K_a + E_{n-a}: matching number a."""
    if not 1 <= a < n:
        raise ConstructionError(f"need 1 <= a < n, got a={a}, n={n}")
    _check_n(n)
    g = join(complete_graph(a), empty_graph(n - a))
    return ConstructionResult(g, "clique_join_empty", comb(a, 2) + a * (n - a), {"a": a, "n": n})


def prop2_delta2(t: Tree, n: int) -> ConstructionResult:
    """Hub joined to gates x_i; each gate sees delta2-2 vertices of its clique A_i (k-2 vertices)."""
    if is_star(t):
        raise ConstructionError("not defined for stars")
    pr = tree_params(t)
    d2 = pr.delta2
    if d2 is None or d2 <= 2:
        raise ConstructionError(f"needs delta2 > 2, got {d2}")
    k = t.n
    if n < k:
        raise ConstructionError(f"n must be at least |T| = {k}")
    _check_n(n)
    b = _Builder(n)
    left = n - 1
    nxt = 1
    while left:
        take = min(left, k - 1)
        gate = nxt
        members = list(range(nxt + 1, nxt + take))
        b.edge(0, gate)
        b.clique(members)
        for u in members[:d2 - 2]:
            b.edge(gate, u)
        nxt += take
        left -= take
    g = b.graph()
    full = (n - 1) // (k - 1)
    return ConstructionResult(g, "prop2_delta2", g.edge_count(),
                              {"tree": tree_name(t), "n": n, "delta2": d2,
                               "statement_bound": full * (comb(k - 2, 2) + d2 - 1)})


def complete_bipartite(a: int, b: int) -> ConstructionResult:
    if a < 1 or b < 1 or a + b > MAX_VERTICES:
        raise ConstructionError(f"need a, b >= 1 and a + b <= {MAX_VERTICES}")
    return ConstructionResult(complete_bipartite_graph(a, b), "complete_bipartite", a * b,
                              {"a": a, "b": b})


def branch_construction(t: Tree, n: int) -> ConstructionResult:
    """K_1 + (r K_{m-1} ∪ K_s): every copy must use the hub, whose branches are too small."""
    if is_path(t):
        raise ConstructionError("not defined for paths")
    m = tree_params(t).m
    if m < 2:
        raise ConstructionError(f"needs m(T) >= 2, got {m}")
    _check_n(n, 2)
    r, s = divmod(n - 1, m - 1)
    b = _Builder(n)
    for v in range(1, n):
        b.edge(0, v)
    nxt = 1
    for _ in range(r):
        b.clique(list(range(nxt, nxt + m - 1)))
        nxt += m - 1
    b.clique(list(range(nxt, n)))
    claimed = n - 1 + r * comb(m - 1, 2) + comb(s, 2)
    return ConstructionResult(b.graph(), "branch_construction", claimed,
                              {"tree": tree_name(t), "n": n, "m": m, "r": r, "s": s})


# -- chains of cliques ------------------------------------------------------------


def _blocks(n: int, block: int) -> list[list[int]]:
    out = [list(range(i * block, (i + 1) * block)) for i in range(n // block)]
    if n % block:
        out.append(list(range(n // block * block, n)))
    return out


def cycle_of_cliques(n: int, block: int) -> ConstructionResult:
    """Cliques of ``block`` vertices in a ring, x_i joined to y_{i+1}.

    A remainder of one vertex is spliced into the last link; a larger
    remainder becomes a smaller block with its own gates.
    """
    if block < 2:
        raise ConstructionError(f"block must be at least 2, got {block}")
    _check_n(n)
    if n < block:
        raise ConstructionError(f"n must be at least the block size {block}")
    full = n // block
    rho = n % block
    blocks = _blocks(n, block)
    single = None
    if rho == 1:
        single = blocks.pop()[0]
    b = _Builder(n)
    for members in blocks:
        b.clique(members)
    t = len(blocks)
    links = 0
    if t >= 2:
        for i in range(t):
            x, y = blocks[i][0], blocks[(i + 1) % t][1]
            if single is not None and i == t - 1:
                b.edge(x, single)
                b.edge(single, y)
                links += 2
            else:
                b.edge(x, y)
                links += 1
    elif single is not None:
        b.edge(blocks[0][0], single)
        b.edge(single, blocks[0][1])
        links = 2
    claimed = full * comb(block, 2) + (comb(rho, 2) if rho >= 2 else 0) + links
    return ConstructionResult(b.graph(), "cycle_of_cliques", claimed,
                              {"n": n, "block": block, "remainder": rho,
                               "statement_bound": full * (1 + comb(block, 2))})


def path_of_cliques(n: int, block: int) -> ConstructionResult:
    """Cliques of ``block`` vertices in a row with one edge between consecutive blocks."""
    if block < 1:
        raise ConstructionError(f"block must be at least 1, got {block}")
    _check_n(n)
    if n < block:
        raise ConstructionError(f"n must be at least the block size {block}")
    blocks = _blocks(n, block)
    b = _Builder(n)
    for members in blocks:
        b.clique(members)
    for cur, nxt in zip(blocks, blocks[1:]):
        b.edge(cur[0], nxt[1] if len(nxt) > 1 else nxt[0])
    rho = n % block
    claimed = n // block * comb(block, 2) + comb(rho, 2) + len(blocks) - 1
    return ConstructionResult(b.graph(), "path_of_cliques", claimed, {"n": n, "block": block})


# -- table constructions ---------------------------------------------------------


def _named(name: str, n: int) -> tuple[Graph, int]:
    if name == "cycle":
        return cycle_graph(n), n
    if name == "star":
        return star_graph(n - 1), n - 1
    if name == "k1_plus_k2_empty":
        return join(empty_graph(1), disjoint_union(complete_graph(2), empty_graph(n - 3))
                    if n > 3 else complete_graph(2)), n
    if name == "k2_plus_empty":
        return join(complete_graph(2), empty_graph(n - 2)), 2 * n - 3
    if name == "k1_plus_matching":
        return join(empty_graph(1), matching_graph(n - 1)), 3 * (n - 1) // 2
    if name == "k2_bipartite":
        return complete_bipartite_graph(2, n - 2), 2 * n - 4
    if name == "split_plus_edge":
        rest = complete_graph(2) if n == 4 else disjoint_union(empty_graph(n - 4), complete_graph(2))
        return join(complete_graph(2), rest), 2 * n - 2
    if name == "k33":
        return complete_bipartite_graph(3, 3), 9
    if name.startswith("nearly_regular_"):
        r = nearly_regular(n, int(name.rsplit("_", 1)[1]))
        return r.graph, r.claimed_edges
    raise ConstructionError(f"unknown construction name {name!r}")


NAMED_MINIMUM = {
    "cycle": 3,
    "star": 2,
    "k1_plus_k2_empty": 3,
    "k2_plus_empty": 3,
    "k1_plus_matching": 2,
    "k2_bipartite": 3,
    "split_plus_edge": 4,
    "k33": 6,
    "nearly_regular_3": 4,
    "nearly_regular_4": 5,
    "nearly_regular_5": 6,
}


def named_small(name: str, n: int) -> ConstructionResult:
    """The small extremal graphs listed next to the exact values for trees up to 7 vertices."""
    if name not in NAMED_MINIMUM:
        raise ConstructionError(f"unknown construction name {name!r}; "
                                f"choose from {', '.join(sorted(NAMED_MINIMUM))}")
    if n < NAMED_MINIMUM[name] or name == "k33" and n != 6:
        raise ConstructionError(f"{name} is defined for n >= {NAMED_MINIMUM[name]}"
                                + (" (n = 6 only)" if name == "k33" else ""))
    _check_n(n)
    g, claimed = _named(name, n)
    return ConstructionResult(g, name, claimed, {"n": n})


def k_copies_clique(k: int, size: int) -> Graph:
    return k_copies(k, complete_graph(size))


__all__ = [
    "ConstructionError",
    "ConstructionResult",
    "GraphError",
    "branch_construction",
    "clique_join_empty",
    "complete_bipartite",
    "cycle_of_cliques",
    "kopylov",
    "named_small",
    "nearly_regular",
    "path_of_cliques",
    "prop2_delta2",
    "prop2_induced_path",
    "prop2_induced_path_spider",
    "prop2_longest_path",
]
