"""Weighted Ramsey numbers via exact linear programming.

For a Red/Blue coloring c of K_n and a clique size k, every k-vertex subset
spans at most two monochromatic subgraphs worth constraining: the red edges
inside it and the blue edges inside it.  r(c; n, k) is the maximum total
edge weight subject to each such monochromatic edge set summing to at most
one; r(n, k) maximizes over colorings, and the weighted Ramsey number is
wram(n, k) = C(n,2) / r(n, k).

Only the maximal monochromatic subgraph per (k-set, color) is constrained:
weights are nonnegative, so every smaller monochromatic subgraph on the
same k-set is dominated by it.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from multiprocessing import Pool

from .errors import CapabilityError, InputError
from .exactnum import (
    LpStatus,
    Relation,
    Sense,
    check_certificates,
    constraint,
    lp_problem,
    solve_lp,
)
from .graphs import Graph, TwoColoring, all_edges, enumerate_colorings

from itertools import combinations


class Color(Enum):
    RED = "R"
    BLUE = "B"


@dataclass(frozen=True)
class WeightAssignment:
    """Nonnegative rational weight on every edge of K_n."""

    n: int
    weights: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        full = dict.fromkeys(all_edges(self.n), Fraction(0))
        for (u, v), w in self.weights.items():
            key = (min(u, v), max(u, v))
            if key not in full:
                raise InputError(f"weight on non-edge ({u}, {v})")
            if w < 0:
                raise InputError(f"negative weight on ({u}, {v})")
            full[key] = Fraction(w)
        object.__setattr__(self, "weights", full)

    def __getitem__(self, edge: tuple[int, int]) -> Fraction:
        u, v = edge
        return self.weights[(min(u, v), max(u, v))]

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def scaled(self, factor: Fraction) -> "WeightAssignment":
        if factor < 0:
            raise InputError("scale factor must be nonnegative")
        return WeightAssignment(
            self.n, {e: w * factor for e, w in self.weights.items()}
        )


@dataclass(frozen=True)
class MonoConstraint:
    vertices: tuple[int, ...]
    color: Color
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class MonoConstraintSet:
    k: int
    constraints: tuple[MonoConstraint, ...]


@dataclass(frozen=True)
class WramResult:
    n: int
    k: int
    value: Fraction
    r_value: Fraction
    witness_coloring: TwoColoring
    witness_weights: WeightAssignment
    partial: bool = False
    num_colorings: int = 0

    def __post_init__(self):
        pairs = Fraction(self.n * (self.n - 1), 2)
        if self.value * self.r_value != pairs:
            raise InputError("wram value times r value must equal C(n,2)")


def build_constraints(c: TwoColoring, k: int) -> MonoConstraintSet:
    """One constraint per (k-subset, color) whose edge set is nonempty."""
    n = c.n
    if not 3 <= k <= n:
        raise InputError(f"need 3 <= k <= n, got k={k}, n={n}")
    rows = []
    for subset in combinations(range(n), k):
        red = []
        blue = []
        for u, v in combinations(subset, 2):
            (red if c.red.has_edge(u, v) else blue).append((u, v))
        if red:
            rows.append(MonoConstraint(subset, Color.RED, tuple(red)))
        if blue:
            rows.append(MonoConstraint(subset, Color.BLUE, tuple(blue)))
    return MonoConstraintSet(k, tuple(rows))


def r_of_coloring(c: TwoColoring, k: int) -> tuple[Fraction, WeightAssignment]:
    """Optimum of max sum(w) subject to unit caps on monochromatic k-sets."""
    n = c.n
    cons_set = build_constraints(c, k)
    edge_pos = {e: i for i, e in enumerate(all_edges(n))}
    lp_cons = [
        constraint({edge_pos[e]: 1 for e in mc.edges}, Relation.LE, 1)
        for mc in cons_set.constraints
    ]
    prob = lp_problem(len(edge_pos), [1] * len(edge_pos), Sense.MAX, lp_cons)
    sol = solve_lp(prob)
    if sol.status is not LpStatus.OPTIMAL or not check_certificates(prob, sol):
        raise RuntimeError("weight LP failed to certify")
    weights = WeightAssignment(
        n, {e: sol.primal[i] for e, i in edge_pos.items()}
    )
    return sol.optimum, weights


def _search_worker(args: tuple[int, int, int]):
    n, red_mask, k = args
    value, weights = r_of_coloring(TwoColoring(Graph(n, red_mask)), k)
    return red_mask, value, weights


def _best_over(colorings: list[TwoColoring], k: int,
               jobs: int | None) -> tuple[Fraction, TwoColoring, WeightAssignment]:
    """Maximize r over the given colorings; first maximizer wins ties."""
    best: Fraction | None = None
    best_c = None
    best_w = None
    if jobs is not None and jobs > 1:
        n = colorings[0].n
        tasks = [(n, c.red.mask, k) for c in colorings]
        with Pool(processes=jobs) as pool:
            for red_mask, value, weights in pool.imap(_search_worker, tasks, chunksize=8):
                if best is None or value > best:
                    best = value
                    best_c = TwoColoring(Graph(n, red_mask))
                    best_w = weights
    else:
        for c in colorings:
            value, weights = r_of_coloring(c, k)
            if best is None or value > best:
                best, best_c, best_w = value, c, weights
    assert best is not None and best_c is not None and best_w is not None
    return best, best_c, best_w


def default_jobs() -> int:
    env = os.environ.get("WRAMSEY_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise InputError(f"bad WRAMSEY_JOBS value: {env!r}") from exc
    return os.cpu_count() or 1


def wram(n: int, k: int, jobs: int | None = None) -> WramResult:
    """Exhaustive wram(n, k): max of r over one coloring per class.

    Enumeration order is canonical (ascending minimal red mask), so the
    reported witness is deterministic: ties go to the smallest canonical key.
    """
    if not 3 <= k <= n:
        raise InputError(f"need 3 <= k <= n, got k={k}, n={n}")
    if n > 8:
        raise CapabilityError(
            "exhaustive search is capped at n=8; use wram_for_colorings"
        )
    colorings = enumerate_colorings(n)
    r_value, witness, weights = _best_over(colorings, k, jobs)
    pairs = Fraction(n * (n - 1), 2)
    return WramResult(
        n=n, k=k, value=pairs / r_value, r_value=r_value,
        witness_coloring=witness, witness_weights=weights,
        partial=False, num_colorings=len(colorings),
    )


def wram_for_colorings(colorings: list[TwoColoring], k: int,
                       jobs: int | None = None) -> WramResult:
    """Same maximization over a supplied candidate list; flagged partial.

    The result bounds wram(n, k) from above only when the list covers every
    coloring class; otherwise it is a lower bound on r(n, k).
    """
    if not colorings:
        raise InputError("need at least one coloring")
    n = colorings[0].n
    if any(c.n != n for c in colorings):
        raise InputError("all colorings must share the same vertex count")
    if not 3 <= k <= n:
        raise InputError(f"need 3 <= k <= n, got k={k}, n={n}")
    r_value, witness, weights = _best_over(colorings, k, jobs)
    pairs = Fraction(n * (n - 1), 2)
    return WramResult(
        n=n, k=k, value=pairs / r_value, r_value=r_value,
        witness_coloring=witness, witness_weights=weights,
        partial=True, num_colorings=len(colorings),
    )


def check_monotonicity(k: int, n_max: int, jobs: int | None = None) -> bool:
    """wram(l, k) <= wram(l+1, k) along k <= l <= n_max, capped by C(k,2)."""
    if not 3 <= k <= n_max <= 8:
        raise InputError(f"need 3 <= k <= n_max <= 8, got k={k}, n_max={n_max}")
    values = [wram(ell, k, jobs=jobs).value for ell in range(k, n_max + 1)]
    chain_ok = all(a <= b for a, b in zip(values, values[1:]))
    return chain_ok and values[-1] <= Fraction(k * (k - 1), 2)
