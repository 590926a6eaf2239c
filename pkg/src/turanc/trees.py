"""Trees: the expression grammar, the named families and the ten parameters.

Grammar accepted by :func:`parse_tree`::

    P<k>                path on k vertices
    S<k>                star with k leaves
    S(a1,...,aj)        spider with j >= 3 legs of a_i edges each
    D(a,b)              double star, centres of degree a+1 and b+1
    B(k,a)              broom S(a-1,1,...,1) on k vertices, 2 <= a <= k-2
    Dstar22             D(2,2) with a leaf attached to one of its leaves
    SD22                D(2,2) with the central edge subdivided
    edges:u-v,...       explicit edge list on vertices 0..max
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import cached_property

from .canon import canonical_form
from .graph import Graph, GraphError, MAX_VERTICES, bits


class TreeParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Tree:
    graph: Graph

    def __post_init__(self) -> None:
        g = self.graph
        if g.edge_count() != g.n - 1 or not g.is_connected():
            raise GraphError("graph is not a tree")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def adj(self) -> tuple[int, ...]:
        return self.graph.adj

    def degrees(self) -> list[int]:
        return self.graph.degrees()

    @cached_property
    def form(self) -> bytes:
        return canonical_form(self.graph)

    def __str__(self) -> str:
        return tree_name(self)


@dataclass(frozen=True)
class TreeParams:
    ell: int
    p: int
    max_deg: int
    min_deg: int
    nu: int
    delta2: int | None
    m: int
    m2: int
    bipartition: tuple[int, int]
    w: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bipartition"] = list(self.bipartition)
        return d


# -- builders ----------------------------------------------------------------


def path_tree(k: int) -> Tree:
    return Tree(Graph.from_edges(k, [(i, i + 1) for i in range(k - 1)]))


def star_tree(leaves: int) -> Tree:
    return Tree(Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)]))


def spider_tree(legs: list[int]) -> Tree:
    """Centre 0; legs laid out consecutively, each starting next to the centre."""
    n = 1 + sum(legs)
    if n > MAX_VERTICES:
        raise GraphError(f"spider has {n} > {MAX_VERTICES} vertices")
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(Graph.from_edges(n, edges))


def double_star_tree(a: int, b: int) -> Tree:
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Tree(Graph.from_edges(a + b + 2, edges))


def broom_tree(k: int, a: int) -> Tree:
    return spider_tree([a - 1] + [1] * (k - a))


def dstar22_tree() -> Tree:
    return Tree(Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6)]))


def sd22_tree() -> Tree:
    return Tree(Graph.from_edges(7, [(0, 2), (2, 1), (0, 3), (0, 4), (1, 5), (1, 6)]))


# -- parser ------------------------------------------------------------------


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise TreeParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def number(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.text[start] if start < len(self.text) else "end of input"
            raise TreeParseError(f"expected a number, found {found!r}", start)
        return int(self.text[start:self.pos])

    def numbers(self) -> tuple[list[int], list[int]]:
        self.expect("(")
        values, starts = [], []
        while True:
            self.skip()
            starts.append(self.pos)
            values.append(self.number())
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect(")")
            return values, starts

    def end(self) -> None:
        self.skip()
        if self.pos != len(self.text):
            raise TreeParseError(f"unexpected trailing input {self.text[self.pos:]!r}", self.pos)


def parse_tree(expr: str) -> Tree:
    """Parse a tree expression (see module docstring for the grammar)."""
    sc = _Scanner(expr)
    sc.skip()
    rest = expr[sc.pos:]
    if rest.startswith("edges:"):
        return _parse_edges(expr, sc.pos + len("edges:"))
    for word, build in (("Dstar22", dstar22_tree), ("SD22", sd22_tree)):
        if rest.startswith(word):
            sc.pos += len(word)
            sc.end()
            return build()
    head = sc.peek()
    if head not in ("P", "S", "D", "B"):
        raise TreeParseError(f"unknown tree family {head or 'end of input'!r}", sc.pos)
    sc.pos += 1
    if head in ("P", "S") and sc.peek() != "(":
        start = sc.pos
        k = sc.number()
        sc.end()
        if k < 1:
            raise TreeParseError(f"{head}{k}: count must be at least 1", start)
        _capacity(k if head == "P" else k + 1, start)
        return path_tree(k) if head == "P" else star_tree(k)
    if head == "P":
        raise TreeParseError("path takes a plain vertex count, e.g. P5", sc.pos)
    open_pos = sc.pos
    values, starts = sc.numbers()
    sc.end()
    for v, s in zip(values, starts):
        if v < 1:
            raise TreeParseError("arguments must be positive", s)
    if head == "S":
        if len(values) < 3:
            raise TreeParseError(f"spider needs at least 3 legs, got {len(values)}", open_pos)
        _capacity(1 + sum(values), open_pos)
        return spider_tree(values)
    if len(values) != 2:
        raise TreeParseError(f"{head}(..) takes exactly 2 arguments, got {len(values)}", open_pos)
    a, b = values
    if head == "D":
        _capacity(a + b + 2, open_pos)
        return double_star_tree(a, b)
    k, a = values
    if not 2 <= a <= k - 2:
        raise TreeParseError(f"broom B({k},{a}) needs 2 <= a <= k-2", starts[1])
    _capacity(k, open_pos)
    return broom_tree(k, a)


def _capacity(n: int, pos: int) -> None:
    if n > MAX_VERTICES:
        raise TreeParseError(f"tree would have {n} > {MAX_VERTICES} vertices", pos)


def _parse_edges(expr: str, pos: int) -> Tree:
    sc = _Scanner(expr)
    sc.pos = pos
    edges = []
    while True:
        u = sc.number()
        sc.expect("-")
        at = sc.pos
        v = sc.number()
        if u == v:
            raise TreeParseError(f"self-loop {u}-{v}", at)
        edges.append((u, v))
        if sc.peek() == ",":
            sc.pos += 1
            continue
        sc.end()
        break
    n = max(max(e) for e in edges) + 1
    _capacity(n, pos)
    if len({frozenset(e) for e in edges}) != len(edges):
        raise TreeParseError("repeated edge in edge list", pos)
    g = Graph.from_edges(n, edges)
    if len(edges) != n - 1 or not g.is_connected():
        raise TreeParseError(f"edge list on {n} vertices with {len(edges)} edges is not a tree", pos)
    return Tree(g)


# -- structure -----------------------------------------------------------------


def is_path(t: Tree) -> bool:
    return max(t.degrees(), default=0) <= 2


def is_star(t: Tree) -> bool:
    return sum(1 for d in t.degrees() if d > 1) <= 1


def _bfs_dist(adj: tuple[int, ...], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for u in bits(adj[v]):
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def longest_path_order(t: Tree) -> int:
    """Vertices on a longest path: diameter + 1 via double BFS."""
    d0 = _bfs_dist(t.adj, 0)
    far = d0.index(max(d0))
    return max(_bfs_dist(t.adj, far)) + 1


def branch_sizes(t: Tree, v: int) -> list[int]:
    """Sizes of the components of T - v, largest first."""
    g = t.graph
    return sorted((c.bit_count() for c in g.components(g.full_mask ^ (1 << v))), reverse=True)


def tree_matching_number(t: Tree) -> int:
    # leaves-up greedy matching is optimal on trees
    order = []
    parent = [-1] * t.n
    seen = 1
    stack = [0]
    while stack:
        v = stack.pop()
        order.append(v)
        for u in bits(t.adj[v] & ~seen):
            seen |= 1 << u
            parent[u] = v
            stack.append(u)
    matched = 0
    size = 0
    for v in reversed(order):
        p = parent[v]
        if p >= 0 and not (matched >> v & 1) and not (matched >> p & 1):
            matched |= 1 << v | 1 << p
            size += 1
    return size


def tree_params(t: Tree) -> TreeParams:
    if t.n < 2:
        raise ValueError("tree parameters need at least 2 vertices")
    g = t.graph
    deg = g.degrees()
    low = 0
    for v, d in enumerate(deg):
        if d <= 2:
            low |= 1 << v
    p = max((c.bit_count() for c in g.components(low)), default=0)
    m = m2 = t.n
    for v in range(t.n):
        sizes = branch_sizes(t, v) + [0]
        m = min(m, sizes[0])
        m2 = min(m2, sizes[0] + sizes[1])
    dist = _bfs_dist(t.adj, 0)
    even = sum(1 for x in dist if x % 2 == 0)
    a, b = sorted((even, t.n - even))
    w = max(min(deg[u], deg[v]) for u, v in g.edges())
    big = [d for d in deg if d > 1]
    return TreeParams(
        ell=longest_path_order(t),
        p=p,
        max_deg=max(deg),
        min_deg=min(deg),
        nu=tree_matching_number(t),
        delta2=min(big) if big else None,
        m=m,
        m2=m2,
        bipartition=(a, b),
        w=w,
    )


# -- family recognition ------------------------------------------------------


def spider_legs(t: Tree) -> list[int] | None:
    """Leg lengths (longest first) if ``t`` has exactly one vertex of degree >= 3."""
    deg = t.degrees()
    centres = [v for v, d in enumerate(deg) if d >= 3]
    if len(centres) != 1:
        return None
    c = centres[0]
    legs = []
    for start in bits(t.adj[c]):
        prev, cur, length = c, start, 1
        while deg[cur] == 2:
            prev, cur = cur, (t.adj[cur] & ~(1 << prev)).bit_length() - 1
            length += 1
        legs.append(length)
    return sorted(legs, reverse=True)


def double_star_arms(t: Tree) -> tuple[int, int] | None:
    deg = t.degrees()
    inner = [v for v, d in enumerate(deg) if d > 1]
    if len(inner) != 2 or not t.graph.has_edge(*inner):
        return None
    a, b = sorted(deg[v] - 1 for v in inner)
    return a, b


def broom_shape(t: Tree) -> tuple[int, int] | None:
    """``(k, a)`` when ``t`` is the broom B(k, a); stars count as B(k, 2)."""
    if is_star(t) and t.n >= 4:
        return t.n, 2
    legs = spider_legs(t)
    if legs is None or any(x != 1 for x in legs[1:]):
        return None
    return t.n, legs[0] + 1


def tree_name(t: Tree) -> str:
    """Shortest family expression denoting ``t``, else an ``edges:`` list."""
    names = []
    if is_path(t):
        names.append(f"P{t.n}")
    if is_star(t) and t.n >= 2:
        names.append(f"S{t.n - 1}")
    legs = spider_legs(t)
    if legs is not None:
        names.append("S(" + ",".join(map(str, legs)) + ")")
        shape = broom_shape(t)
        if shape is not None:
            names.append(f"B({shape[0]},{shape[1]})")
    arms = double_star_arms(t)
    if arms is not None:
        names.append(f"D({arms[0]},{arms[1]})")
    if t.n == 7:
        if t.form == dstar22_tree().form:
            names.append("Dstar22")
        if t.form == sd22_tree().form:
            names.append("SD22")
    if names:
        return min(names, key=len)
    return "edges:" + ",".join(f"{u}-{v}" for u, v in t.graph.edges())
