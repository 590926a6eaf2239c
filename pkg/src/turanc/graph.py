"""Small undirected simple graphs stored as bitset adjacency rows.

A :class:`Graph` holds at most 64 vertices so every neighbourhood fits in
one machine word.  Values are immutable; every operation returns a new
graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

MAX_VERTICES = 64
GRAPH6_MAX = 62


class GraphError(ValueError):
    """Raised for invalid graph construction or malformed encodings."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency must have one row per vertex")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def _trusted(cls, n: int, adj: Iterable[int]) -> "Graph":
        # skips validation; callers guarantee a symmetric loop-free matrix
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", tuple(adj))
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
        adj = [0] * n
        for u, v in edges:
            _check_pair(n, u, v)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls._trusted(n, adj)

    # -- queries -------------------------------------------------------

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def component_of(self, v: int, within: int | None = None) -> int:
        """Return the vertex mask of the component containing ``v``.

        When ``within`` is given the search is restricted to that vertex set.
        """
        allowed = self.full_mask if within is None else within
        seen = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return seen

    def components(self, within: int | None = None) -> list[int]:
        rest = self.full_mask if within is None else within
        out = []
        while rest:
            v = (rest & -rest).bit_length() - 1
            comp = self.component_of(v, rest)
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self) -> bool:
        return self.component_of(0) == self.full_mask

    def add_edge(self, u: int, v: int) -> "Graph":
        _check_pair(self.n, u, v)
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph._trusted(self.n, adj)

    def relabel(self, order: list[int]) -> "Graph":
        """Return the graph whose vertex ``i`` is the old vertex ``order[i]``."""
        pos = [0] * self.n
        for i, v in enumerate(order):
            pos[v] = i
        adj = []
        for v in order:
            row = 0
            for u in bits(self.adj[v]):
                row |= 1 << pos[u]
            adj.append(row)
        return Graph._trusted(self.n, adj)

    def induced(self, vertices: list[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(vertices)}
        adj = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v]):
                if u in pos:
                    row |= 1 << pos[u]
            adj.append(row)
        return Graph._trusted(len(vertices), adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_pair(n: int, u: int, v: int) -> None:
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"vertex out of range: ({u}, {v}) with n={n}")
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")


# -- basic families ---------------------------------------------------------


def empty_graph(n: int) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    return Graph._trusted(n, [0] * n)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    return g.add_edge(u, v)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    empty_graph(n)
    return Graph._trusted(n, [full ^ (1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def matching_graph(n: int) -> Graph:
    """``M_n``: floor(n/2) disjoint edges, plus an isolated vertex when n is odd."""
    return Graph.from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both sides of K_{a,b} need at least one vertex")
    return join(empty_graph(a), empty_graph(b))


# -- combinators -------------------------------------------------------------


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise GraphError(f"union would have {n} > {MAX_VERTICES} vertices")
    return Graph._trusted(n, list(g.adj) + [row << g.n for row in h.adj])


def k_copies(k: int, g: Graph) -> Graph:
    if k < 1:
        raise GraphError("need at least one copy")
    out = g
    for _ in range(k - 1):
        out = disjoint_union(out, g)
    return out


def join(g: Graph, h: Graph) -> Graph:
    """``G + H``: disjoint union plus every edge between the two parts."""
    n = g.n + h.n
    if n > MAX_VERTICES:
        raise GraphError(f"join would have {n} > {MAX_VERTICES} vertices")
    h_mask = ((1 << h.n) - 1) << g.n
    g_mask = (1 << g.n) - 1
    adj = [row | h_mask for row in g.adj] + [(row << g.n) | g_mask for row in h.adj]
    return Graph._trusted(n, adj)


# -- matching ------------------------------------------------------------------


def matching_number(g: Graph) -> int:
    """Exact size of a maximum matching (Edmonds' blossom algorithm)."""
    import networkx as nx

    if g.edge_count() == 0:
        return 0
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return len(nx.max_weight_matching(nxg, maxcardinality=True))


# -- serialisation -----------------------------------------------------------


def _encode_graph6(n: int, adj: tuple[int, ...] | list[int]) -> str:
    if n <= GRAPH6_MAX:
        out = [chr(63 + n)]
    else:
        out = ["~", chr(63 + (n >> 12 & 63)), chr(63 + (n >> 6 & 63)), chr(63 + (n & 63))]
    word = 0
    filled = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            word = word << 1 | (row >> i & 1)
            filled += 1
            if filled == 6:
                out.append(chr(63 + word))
                word = filled = 0
    if filled:
        out.append(chr(63 + (word << (6 - filled))))
    return "".join(out)


def to_graph6(g: Graph) -> str:
    """Encode ``g`` in header-less graph6 (n <= 62 only)."""
    if g.n > GRAPH6_MAX:
        raise GraphError(
            f"graph6 export supports n <= {GRAPH6_MAX}; n={g.n} needs the internal format"
        )
    return _encode_graph6(g.n, g.adj)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string at position 0")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"invalid graph6 character {ch!r} at position {pos}")
    if s[0] == "~":
        if len(s) < 4 or s[1] == "~":
            raise GraphError("unsupported graph6 size header at position 1")
        n = (ord(s[1]) - 63) << 12 | (ord(s[2]) - 63) << 6 | (ord(s[3]) - 63)
        body = s[4:]
        start = 4
    else:
        n = ord(s[0]) - 63
        body = s[1:]
        start = 1
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"graph6 vertex count {n} outside 1..{MAX_VERTICES} at position 0")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(
            f"graph6 body has {len(body)} characters, expected {need} (position {start + min(len(body), need)})"
        )
    adj = [0] * n
    k = 0
    values = [ord(c) - 63 for c in body]
    for j in range(1, n):
        for i in range(j):
            if values[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    pad = need * 6 - k
    if pad and values[-1] & ((1 << pad) - 1):
        raise GraphError(f"nonzero padding bits at position {start + need - 1}")
    return Graph._trusted(n, adj)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
