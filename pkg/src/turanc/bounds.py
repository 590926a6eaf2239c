"""Closed-form lower bounds, the path upper bound and known exact values.

Every value is an exact integer.  A bound that does not apply to a given
tree is returned with ``value=None`` and the failed precondition in
``reason``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

from . import constructions as C
from .trees import (
    Tree,
    broom_shape,
    double_star_arms,
    dstar22_tree,
    is_path,
    is_star,
    spider_legs,
    tree_name,
    tree_params,
)


@dataclass
class BoundEvaluation:
    name: str
    kind: str  # "lower", "upper" or "exact"
    value: int | None
    reason: str = ""
    witness: C.ConstructionResult | None = None
    extra: dict = field(default_factory=dict)

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        d = {"name": self.name, "kind": self.kind,
             "value": self.value if self.value is not None else "n/a"}
        if self.reason:
            d["reason"] = self.reason
        if self.witness is not None:
            d["witness"] = self.witness.to_dict()
        if self.extra:
            d.update(self.extra)
        return d


def _na(name: str, reason: str, kind: str = "lower") -> BoundEvaluation:
    return BoundEvaluation(name, kind, None, reason)


def _from_witness(name: str, build: Callable[[], C.ConstructionResult]) -> BoundEvaluation:
    try:
        w = build()
    except C.ConstructionError as exc:
        return _na(name, str(exc))
    extra = {}
    if "statement_bound" in w.params:
        extra["statement_bound"] = w.params["statement_bound"]
    return BoundEvaluation(name, "lower", w.claimed_edges, witness=w, extra=extra)


# -- individual bounds -----------------------------------------------------------


def longest_path_bound(t: Tree, n: int) -> BoundEvaluation:
    return _from_witness("prop3_1", lambda: C.prop2_longest_path(t, n))


def induced_path_bound(t: Tree, n: int) -> BoundEvaluation:
    return _from_witness("prop3_2", lambda: C.prop2_induced_path(t, n))


def induced_path_spider_bound(t: Tree, n: int) -> BoundEvaluation:
    return _from_witness("prop3_2_spider", lambda: C.prop2_induced_path_spider(t, n))


def max_degree_bound(t: Tree, n: int) -> BoundEvaluation:
    d = max(t.degrees()) - 1
    return _from_witness("prop3_3", lambda: C.nearly_regular(n, d))


def matching_bound(t: Tree, n: int) -> BoundEvaluation:
    a = tree_params(t).nu - 1
    if a < 1:
        return _na("prop3_4", "matching number of T is 1")
    return _from_witness("prop3_4", lambda: C.clique_join_empty(a, n))


def second_degree_bound(t: Tree, n: int) -> BoundEvaluation:
    return _from_witness("prop3_5", lambda: C.prop2_delta2(t, n))


def bipartition_bound(t: Tree, n: int) -> BoundEvaluation:
    a = tree_params(t).bipartition[0]
    if a < 2:
        return _na("prop3_6", "smaller colour class has one vertex")
    if n < a:
        return _na("prop3_6", f"n must be at least {a}")
    return _from_witness("prop3_6", lambda: C.complete_bipartite(a - 1, n - a + 1))


def branch_bound(t: Tree, n: int) -> BoundEvaluation:
    return _from_witness("prop3_7", lambda: C.branch_construction(t, n))


def two_branch_bound(t: Tree, n: int) -> BoundEvaluation:
    block = t.n - tree_params(t).m2
    if block < 2:
        return _na("prop3_8", f"k - m2 = {block} is below 2")
    if n <= block:
        # one clique alone has C(b,2) edges, one short of the stated b-block count
        return _na("prop3_8", f"n must exceed k - m2 = {block}")
    return _from_witness("prop3_8", lambda: C.cycle_of_cliques(n, block))


def weight_bound(t: Tree, n: int) -> BoundEvaluation:
    w = tree_params(t).w
    if w < 2:
        return _na("prop3_9", "edge weight of T is 1")
    if n < w:
        return _na("prop3_9", f"n must be at least {w}")
    return _from_witness("prop3_9", lambda: C.complete_bipartite(w - 1, n - w + 1))


def general_bound(t: Tree, n: int) -> BoundEvaluation:
    """Branch or path-of-cliques witness; the linear rate k//6 * n is only asymptotic."""
    k = t.n
    third = k // 3
    m = tree_params(t).m
    if m > third:
        ev = _from_witness("thm4", lambda: C.branch_construction(t, n))
        case = "branch"
    else:
        ev = _from_witness("thm4", lambda: C.path_of_cliques(n, third))
        case = "path_of_cliques"
    ev.extra.update({"case": case, "asymptotic_bound": k // 6 * n})
    return ev


def broom_bound(t: Tree, n: int) -> BoundEvaluation:
    shape = broom_shape(t)
    if shape is None:
        return _na("thm5_broom", "T is not a broom")
    k, a = shape
    if a > k - 2:
        return _na("thm5_broom", f"needs a <= k-2, got B({k},{a})")
    s = (a - 1) // 2
    first = (k - a) * n // 2
    second = s * (n - s)
    if second > first:
        ev = _from_witness("thm5_broom", lambda: C.complete_bipartite(s, n - s))
    else:
        ev = _from_witness("thm5_broom", lambda: C.nearly_regular(n, k - a))
    if ev.value is None:
        return ev
    ev.extra.update({"degree_branch": first, "path_branch": second, "k": k, "a": a})
    return ev


def kopylov_upper_path(n: int, k: int) -> int:
    """Upper bound on edges of a connected n-vertex graph with no path on k+1 vertices."""
    if k < 3 or n < k:
        raise ValueError(f"need k >= 3 and n >= k, got n={n}, k={k}")
    first = comb(k - 1, 2) + n - k + 1
    h = (k + 2) // 2  # ceil((k+1)/2)
    second = comb(h, 2) + (k - 1) // 2 * (n - h)
    return max(first, second)


def path_upper_bound(t: Tree, n: int) -> BoundEvaluation:
    if not is_path(t) or t.n < 4:
        return _na("thm2_path_upper", "T is not a path on at least 4 vertices", "upper")
    k = t.n - 1
    if n <= k:
        # every graph on n <= k vertices avoids P_{k+1}, so K_n beats the formula
        return _na("thm2_path_upper", f"n must exceed |T| - 1 = {k}", "upper")
    return BoundEvaluation("thm2_path_upper", "upper", kopylov_upper_path(n, k))


# -- exact values --------------------------------------------------------------


def _formula(t: Tree, n: int) -> tuple[int, str] | None:
    """Proven exact value (value, source) for ``n >= |T|``, ignoring "n large" families."""
    k = t.n
    if is_path(t) and k >= 4:
        return kopylov_upper_path(n, k - 1), "path"
    if is_star(t) and k >= 4:
        return n * (k - 2) // 2, "star"
    legs = spider_legs(t)
    if legs is not None and legs[0] == 2 and all(x == 1 for x in legs[1:]):
        return n * (len(legs) - 1) // 2, "spider_2_1s"
    if double_star_arms(t) == (2, 2):
        return 2 * n - 4, "D(2,2)"
    if legs == [3, 1, 1]:
        return (9, "S(3,1,1)") if n == 6 else (3 * (n - 1) // 2, "S(3,1,1)")
    if legs == [2, 2, 1]:
        return 2 * n - 3, "S(2,2,1)"
    if legs == [2, 2, 2]:
        return 2 * n - 2, "S(2,2,2)"
    if legs == [3, 2, 1]:
        return 2 * n - 3, "S(3,2,1)"
    if k == 7 and t.form == dstar22_tree().form:
        return 2 * n - 3, "Dstar22"
    return None


def _large_n_formula(t: Tree, n: int) -> int | None:
    """Values proven only for sufficiently large n."""
    legs = spider_legs(t)
    if legs is not None and legs[0] == 3 and all(x == 1 for x in legs[1:]) and len(legs) >= 4:
        return (len(legs) - 1) * n // 2
    shape = broom_shape(t)
    if shape is not None and 3 * shape[1] <= shape[0]:
        k, a = shape
        return (k - a) * n // 2
    return None


def known_exact(t: Tree, n: int, oracle: int | None = None) -> int | None:
    """Exact ex_c(n, T) where a proven formula covers (T, n), else None.

    Values that hold only for large n are returned when ``oracle`` (an
    exhaustive value for this exact (T, n)) agrees with the formula.
    """
    if n < 1:
        return None
    if n < t.n:
        return comb(n, 2)
    if t.n < 4:
        return None
    hit = _formula(t, n)
    if hit is not None:
        return hit[0]
    late = _large_n_formula(t, n)
    if late is not None and oracle is not None and oracle == late:
        return late
    return None


def known_exact_bound(t: Tree, n: int, oracle: int | None = None) -> BoundEvaluation:
    v = known_exact(t, n, oracle)
    if v is None:
        late = _large_n_formula(t, n)
        if late is not None:
            return _na("known_exact", "formula proven only for large n; not confirmed here", "exact")
        return _na("known_exact", "no exact formula covers this tree and n", "exact")
    return BoundEvaluation("known_exact", "exact", v)


LOWER_BOUNDS = (
    longest_path_bound,
    induced_path_bound,
    induced_path_spider_bound,
    max_degree_bound,
    matching_bound,
    second_degree_bound,
    bipartition_bound,
    branch_bound,
    two_branch_bound,
    weight_bound,
    general_bound,
    broom_bound,
)


def evaluate_all_bounds(t: Tree, n: int, oracle: int | None = None) -> list[BoundEvaluation]:
    if t.n < 4:
        raise ValueError("bounds are stated for trees with at least 4 vertices")
    out = [f(t, n) for f in LOWER_BOUNDS]
    out.append(path_upper_bound(t, n))
    out.append(known_exact_bound(t, n, oracle))
    return out


def best_lower_bound(t: Tree, n: int) -> BoundEvaluation | None:
    lows = [b for b in evaluate_all_bounds(t, n) if b.kind == "lower" and b.applicable]
    return max(lows, key=lambda b: b.value, default=None)


@dataclass(frozen=True)
class GammaReport:
    tree: str
    n: int
    ex_c: int
    ratio: Fraction
    source: str

    def to_dict(self) -> dict:
        return {"tree": self.tree, "n": self.n, "ex_c": self.ex_c,
                "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
                "ratio_float": float(self.ratio), "source": self.source,
                "note": "finite-n ratio; not an asymptotic estimate"}


def gamma_report(t: Tree, n_values: Iterable[int],
                 oracle: Callable[[Tree, int], int] | None = None) -> list[GammaReport]:
    """Normalised ratios 2/(|T|-2) * ex_c(n,T)/n from exact values only.

    ``oracle`` supplies exhaustive values where no formula applies; points
    with neither are skipped.
    """
    if t.n < 3:
        raise ValueError("ratio is undefined for trees with fewer than 3 vertices")
    out = []
    for n in n_values:
        v = known_exact(t, n)
        source = "formula"
        if v is None and oracle is not None:
            v = oracle(t, n)
            source = "oracle"
        if v is None:
            continue
        out.append(GammaReport(tree_name(t), n, v, Fraction(2, t.n - 2) * Fraction(v, n), source))
    return out
