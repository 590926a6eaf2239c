from __future__ import annotations

from hypothesis import strategies as st

from turanc.graph import Graph


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 9, connected: bool = False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph.from_edges(n, chosen)
    if connected:
        # chain components together so the result is connected
        comps = g.components()
        reps = [(c & -c).bit_length() - 1 for c in comps]
        for a, b in zip(reps, reps[1:]):
            g = g.add_edge(a, b)
    return g


@st.composite
def permutations_of(draw, n: int):
    return draw(st.permutations(list(range(n))))
