"""Triangle packing and covering invariants of a graph.

Four invariants are computed exactly:

* ``tau_star``    - fractional triangle packing: max total triangle weight
                    with per-edge load at most 1.
* ``tau_integral``- largest edge-disjoint triangle family (branch and bound).
* ``r_induced``   - min total weight on induced 3-vertex subgraphs covering
                    every edge at least once.
* ``r_tilde``     - min total weight on arbitrary 3-vertex subgraphs with
                    every edge loaded exactly once.

The two minima are equal; the constructive conversions between their
solutions, and between packings and covers, are implemented as weight
redistribution algorithms operating on ``SubgraphWeights``.

A 3-vertex subgraph is described by its vertex triple and any subset of the
edges the host graph induces there.  Members with zero edges can never help
a minimum and are excluded from LP variable sets, but the constructions may
introduce one-edge members (an edge plus an isolated vertex).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapabilityError, ContractViolationError, InputError
from .exactnum import (
    LpStatus,
    Relation,
    Sense,
    check_certificates,
    constraint,
    lp_problem,
    solve_lp,
)
from .graphs import Graph, TwoColoring, enumerate_colorings

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class SubgraphDescriptor:
    """A 3-vertex subgraph: sorted vertex triple plus an edge subset."""

    vertices: tuple[int, int, int]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        vs = tuple(sorted(self.vertices))
        if len(set(vs)) != 3:
            raise InputError(f"need three distinct vertices, got {self.vertices}")
        pairs = set(itertools.combinations(vs, 2))
        es = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        if len(set(es)) != len(es) or not set(es) <= pairs:
            raise InputError(f"edges {self.edges} do not fit inside {vs}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def is_triangle(self) -> bool:
        return len(self.edges) == 3

    def without_edges(self, drop: set[tuple[int, int]]) -> "SubgraphDescriptor":
        return SubgraphDescriptor(
            self.vertices, tuple(e for e in self.edges if e not in drop)
        )


def induced_descriptor(g: Graph, triple) -> SubgraphDescriptor:
    return SubgraphDescriptor(tuple(triple), g.induced_edges(triple))


@dataclass
class SubgraphWeights:
    """Nonnegative rational weights on 3-vertex subgraphs of a base graph."""

    graph: Graph
    weights: dict[SubgraphDescriptor, Fraction]

    def __post_init__(self):
        cleaned = {}
        for desc, w in self.weights.items():
            w = Fraction(w)
            if w < 0:
                raise InputError(f"negative weight on {desc}")
            if max(desc.vertices) >= self.graph.n:
                raise InputError(f"{desc} does not live on the base graph")
            for u, v in desc.edges:
                if not self.graph.has_edge(u, v):
                    raise InputError(f"{desc} uses non-edge ({u}, {v})")
            if w:
                cleaned[desc] = w
        self.weights = cleaned

    def total(self) -> Fraction:
        return sum(self.weights.values(), _ZERO)

    def loads(self) -> dict[tuple[int, int], Fraction]:
        """Per-edge load over every edge of the base graph."""
        out = dict.fromkeys(self.graph.edges(), _ZERO)
        for desc, w in self.weights.items():
            for e in desc.edges:
                out[e] += w
        return out

    def restricted_to_triangles(self) -> "SubgraphWeights":
        return SubgraphWeights(
            self.graph,
            {d: w for d, w in self.weights.items() if d.is_triangle},
        )


def _certify(prob, sol) -> None:
    if sol.status is not LpStatus.OPTIMAL or not check_certificates(prob, sol):
        raise RuntimeError("packing LP failed to certify")


def tau_star(g: Graph) -> tuple[Fraction, SubgraphWeights]:
    """Fractional triangle packing number with an optimal weight witness."""
    triangles = [induced_descriptor(g, t) for t in g.triangles()]
    if not triangles:
        return _ZERO, SubgraphWeights(g, {})
    cons = []
    for e in g.edges():
        row = {i: 1 for i, d in enumerate(triangles) if e in d.edges}
        if row:
            cons.append(constraint(row, Relation.LE, 1))
    prob = lp_problem(len(triangles), [1] * len(triangles), Sense.MAX, cons)
    sol = solve_lp(prob)
    _certify(prob, sol)
    weights = SubgraphWeights(
        g, {d: sol.primal[i] for i, d in enumerate(triangles)}
    )
    return sol.optimum, weights


_TAU_CAP = 10


def tau_integral(g: Graph) -> int:
    """Size of the largest edge-disjoint triangle family."""
    return len(tau_integral_family(g))


def tau_integral_family(g: Graph) -> list[tuple[int, int, int]]:
    """An explicit maximum edge-disjoint triangle family (deterministic)."""
    if g.n > _TAU_CAP:
        raise CapabilityError(f"integral packing capped at n={_TAU_CAP}")
    triangles = list(g.triangles())
    if not triangles:
        return []
    tri_edges = [frozenset(itertools.combinations(t, 2)) for t in triangles]
    edge_list = g.edges()
    by_edge = {e: [i for i, es in enumerate(tri_edges) if e in es] for e in edge_list}

    # Greedy seed so the search starts with a strong incumbent.
    best_sel: list[int] = []
    used: set = set()
    for i, es in enumerate(tri_edges):
        if not es & used:
            best_sel.append(i)
            used |= es
    best_len = len(best_sel)

    def search(chosen: list[int], blocked: frozenset, banned: frozenset) -> None:
        nonlocal best_len, best_sel
        dead = blocked | banned
        avail = [
            i for i in range(len(triangles)) if not (tri_edges[i] & dead)
        ]
        usable: set = set()
        for i in avail:
            usable |= tri_edges[i]
        if len(chosen) + len(usable) // 3 <= best_len:
            return
        if not avail:
            best_len = len(chosen)
            best_sel = list(chosen)
            return
        # Branch on the first edge still coverable: some triangle claims it,
        # or it is written off for good.
        pivot = next(e for e in edge_list if e in usable)
        for i in by_edge[pivot]:
            if tri_edges[i] & dead:
                continue
            chosen.append(i)
            search(chosen, blocked | tri_edges[i], banned)
            chosen.pop()
        search(chosen, blocked, banned | {pivot})

    search([], frozenset(), frozenset())
    return [triangles[i] for i in sorted(best_sel)]


def _induced_members(g: Graph) -> list[SubgraphDescriptor]:
    out = []
    for triple in itertools.combinations(range(g.n), 3):
        desc = induced_descriptor(g, triple)
        if desc.edge_count:
            out.append(desc)
    return out


def _all_members(g: Graph) -> list[SubgraphDescriptor]:
    out = []
    for triple in itertools.combinations(range(g.n), 3):
        induced = g.induced_edges(triple)
        for r in range(1, len(induced) + 1):
            for subset in itertools.combinations(induced, r):
                out.append(SubgraphDescriptor(triple, subset))
    return out


def _min_cover(g: Graph, members: list[SubgraphDescriptor],
               relation: Relation) -> tuple[Fraction, SubgraphWeights]:
    edges = g.edges()
    if not edges:
        return _ZERO, SubgraphWeights(g, {})
    cons = []
    for e in edges:
        row = {i: 1 for i, d in enumerate(members) if e in d.edges}
        cons.append(constraint(row, relation, 1))
    prob = lp_problem(len(members), [1] * len(members), Sense.MIN, cons)
    sol = solve_lp(prob)
    _certify(prob, sol)
    weights = SubgraphWeights(
        g, {d: sol.primal[i] for i, d in enumerate(members)}
    )
    return sol.optimum, weights


def r_induced(g: Graph) -> tuple[Fraction, SubgraphWeights]:
    """Minimum fractional cover of E(G) by induced 3-vertex subgraphs."""
    return _min_cover(g, _induced_members(g), Relation.GE)


def r_tilde(g: Graph) -> tuple[Fraction, SubgraphWeights]:
    """Minimum total weight with every edge loaded exactly once."""
    return _min_cover(g, _all_members(g), Relation.EQ)


def lift_tilde_to_induced(tw: SubgraphWeights) -> SubgraphWeights:
    """Push exact-load weights onto the induced subgraphs of their triples.

    Each member sits inside a unique induced 3-vertex subgraph: the one on
    its own vertex triple.  Summing the weights per triple preserves the
    total and turns exact unit loads into coverage of at least one.
    """
    g = tw.graph
    for e, load in tw.loads().items():
        if load != 1:
            raise ContractViolationError(
                f"input is not an exact unit-load solution: edge {e} has load {load}"
            )
    out: dict[SubgraphDescriptor, Fraction] = {}
    for desc, w in tw.weights.items():
        target = induced_descriptor(g, desc.vertices)
        out[target] = out.get(target, _ZERO) + w
    return SubgraphWeights(g, out)


def reduce_to_minimal(tw: SubgraphWeights) -> SubgraphWeights:
    """Greedily shrink a feasible cover until no single weight can drop.

    Weights are visited in descriptor order and each is reduced by the
    smallest excess among its edges; passes repeat until stable.
    """
    g = tw.graph
    loads = tw.loads()
    if any(v < 1 for v in loads.values()):
        raise ContractViolationError("input does not cover every edge")
    weights = dict(tw.weights)
    changed = True
    while changed:
        changed = False
        for desc in sorted(weights, key=lambda d: (d.vertices, d.edges)):
            w = weights[desc]
            slack = min(loads[e] - 1 for e in desc.edges)
            cut = min(w, slack)
            if cut > 0:
                changed = True
                weights[desc] = w - cut
                for e in desc.edges:
                    loads[e] -= cut
                if not weights[desc]:
                    del weights[desc]
    return SubgraphWeights(g, weights)


def redistribute_excess(tw: SubgraphWeights) -> SubgraphWeights:
    """Turn a minimal induced cover into an exact unit-load solution.

    Repeatedly picks a positive-weight member containing an overweight edge
    and moves weight onto the member with that edge (and, when present, a
    second overweight edge) removed.  Loads never increase, deficiencies are
    never created, and the total weight is unchanged, so the process stops
    with every load exactly one.
    """
    g = tw.graph
    loads = tw.loads()
    if any(v < 1 for v in loads.values()):
        raise ContractViolationError("input does not cover every edge")
    for desc in tw.weights:
        if desc.edges != g.induced_edges(desc.vertices):
            raise ContractViolationError(
                f"{desc} is not an induced subgraph of the base graph"
            )
        if min(loads[e] for e in desc.edges) > 1:
            raise ContractViolationError(
                f"input is not minimal: weight on {desc} can be reduced"
            )

    weights = dict(tw.weights)
    member_order = sorted(weights, key=lambda d: (d.vertices, d.edges))
    guard = 0
    while True:
        guard += 1
        if guard > 100_000:
            raise RuntimeError("excess redistribution failed to terminate")
        over = [e for e, v in loads.items() if v > 1]
        if not over:
            break
        over_set = set(over)
        pick = None
        for desc in member_order:
            if weights.get(desc) and over_set & set(desc.edges):
                pick = desc
                break
        assert pick is not None
        hot = sorted(
            (e for e in pick.edges if e in over_set),
            key=lambda e: (-(loads[e] - 1), e),
        )
        if len(hot) == 3:
            raise ContractViolationError(
                f"three overweight edges inside {pick}: input was not minimal"
            )
        w = weights[pick]
        first = hot[0]
        delta = min(w, loads[first] - 1)
        second = hot[1] if len(hot) > 1 else None
        eps = min(delta, loads[second] - 1) if second else _ZERO

        weights[pick] = w - delta
        if not weights[pick]:
            del weights[pick]
        if delta - eps:
            tgt = pick.without_edges({first})
            weights[tgt] = weights.get(tgt, _ZERO) + (delta - eps)
            if tgt not in member_order:
                member_order.append(tgt)
        if eps:
            tgt = pick.without_edges({first, second})
            weights[tgt] = weights.get(tgt, _ZERO) + eps
            if tgt not in member_order:
                member_order.append(tgt)
        loads[first] -= delta
        if second:
            loads[second] -= eps

    result = SubgraphWeights(g, weights)
    assert result.total() == tw.total()
    assert all(v == 1 for v in result.loads().values())
    return result


def _max_matching_bruteforce(nodes: list, adjacent) -> list[tuple]:
    """Deterministic exact maximum matching on a tiny general graph."""
    best: list[tuple] = []

    def grow(avail: list, current: list):
        nonlocal best
        if len(current) + len(avail) // 2 <= len(best):
            return
        if not avail:
            if len(current) > len(best):
                best = list(current)
            return
        head, rest = avail[0], avail[1:]
        partners = [b for b in rest if adjacent(head, b)]
        for b in partners:
            current.append((head, b))
            grow([x for x in rest if x != b], current)
            current.pop()
        grow(rest, current)

    grow(list(nodes), [])
    return best


def packing_to_cover(gs: SubgraphWeights, g: Graph) -> SubgraphWeights:
    """Grow an optimal fractional packing into an exact unit-load cover.

    Underweight edges of an optimal packing span no triangle, so they can be
    patched with two-edge members (paired along shared endpoints, as many
    pairs as possible per round) and finally one-edge members once the
    remaining underweight edges form a matching.
    """
    if gs.graph != g:
        raise InputError("weights are not over the given graph")
    for desc in gs.weights:
        if not desc.is_triangle:
            raise ContractViolationError(f"packing weight on non-triangle {desc}")
    loads = gs.loads()
    if any(v > 1 for v in loads.values()):
        raise ContractViolationError("packing overloads an edge")

    deficiency = {e: _ONE - v for e, v in loads.items()}
    under = [e for e in g.edges() if deficiency[e] > 0]
    for tri in g.triangles():
        tri_edges = list(itertools.combinations(tri, 2))
        if all(deficiency[e] > 0 for e in tri_edges):
            raise ContractViolationError(
                f"underweight edges contain triangle {tri}: packing is not optimal"
            )

    weights = dict(gs.weights)

    def share_endpoint(e1, e2):
        return bool(set(e1) & set(e2))

    while True:
        under = sorted(e for e in under if deficiency[e] > 0)
        pairs = _max_matching_bruteforce(under, share_endpoint)
        if not pairs:
            break
        for a, b in pairs:
            # The smaller deficiency is settled in full; lexicographic order
            # breaks exact ties.
            lo, hi = sorted((a, b), key=lambda e: (deficiency[e], e))
            move = deficiency[lo]
            triple = tuple(sorted(set(lo) | set(hi)))
            desc = SubgraphDescriptor(triple, (lo, hi))
            weights[desc] = weights.get(desc, _ZERO) + move
            deficiency[lo] = _ZERO
            deficiency[hi] -= move

    for e in sorted(e for e in under if deficiency[e] > 0):
        spare = min(v for v in range(g.n) if v not in e)
        desc = SubgraphDescriptor((e[0], e[1], spare), (e,))
        weights[desc] = weights.get(desc, _ZERO) + deficiency[e]
        deficiency[e] = _ZERO

    result = SubgraphWeights(g, weights)
    assert all(v == 1 for v in result.loads().values())
    return result


def cover_to_packing(ts: SubgraphWeights, g: Graph) -> SubgraphWeights:
    """Restrict an exact unit-load cover to its triangles: a valid packing."""
    if ts.graph != g:
        raise InputError("weights are not over the given graph")
    for e, load in ts.loads().items():
        if load != 1:
            raise ContractViolationError(
                f"input is not an exact unit-load solution: edge {e} has load {load}"
            )
    return ts.restricted_to_triangles()


@dataclass(frozen=True)
class ColoringPackingStats:
    tau_c: int
    tau_star_sum: Fraction


def coloring_packing_stats(c: TwoColoring) -> ColoringPackingStats:
    """Joint monochromatic packing number and its fractional analogue.

    Red and blue triangles are automatically edge-disjoint across colors, so
    the joint maximum is the per-color sum; tests confirm this equivalence
    against a direct joint search on small instances.
    """
    if c.n > _TAU_CAP:
        raise CapabilityError(f"coloring packing stats capped at n={_TAU_CAP}")
    tau_c = tau_integral(c.red) + tau_integral(c.blue)
    star = tau_star(c.red)[0] + tau_star(c.blue)[0]
    return ColoringPackingStats(tau_c=tau_c, tau_star_sum=star)


_TAU_MIN_CAP = 7


def tau_min_over_colorings(n: int, fractional: bool) -> tuple[Fraction, TwoColoring]:
    """Minimum of the packing statistic over one coloring per class."""
    if not 3 <= n <= _TAU_MIN_CAP:
        raise CapabilityError(
            f"statistic minimization supports 3 <= n <= {_TAU_MIN_CAP}"
        )
    best_val: Fraction | None = None
    best_c: TwoColoring | None = None
    for c in enumerate_colorings(n):
        stats = coloring_packing_stats(c)
        val = stats.tau_star_sum if fractional else Fraction(stats.tau_c)
        if best_val is None or val < best_val:
            best_val, best_c = val, c
    assert best_val is not None and best_c is not None
    return best_val, best_c


def triangle_packing_bound(n: int, tau: Fraction) -> Fraction:
    """Lower bound on wram(n, 3) from a monochromatic packing number."""
    tau = Fraction(tau)
    denom = Fraction(n * n) - 2 * tau + n
    if denom <= 0:
        raise InputError(f"nonpositive denominator for n={n}, tau={tau}")
    return 4 * Fraction(n * (n - 1), 2) / denom


def triangle_packing_bound_limit(gamma: Fraction) -> Fraction:
    """Large-n limit of the packing bound when tau grows like gamma * n^2."""
    gamma = Fraction(gamma)
    denom = 1 - 2 * gamma
    if denom <= 0:
        raise InputError(f"gamma={gamma} is too large")
    return Fraction(2) / denom
