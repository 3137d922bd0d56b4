"""Closed-form bounds on the weighted Ramsey limit, with checked certificates.

The lower-bound side combines exact Turán numbers with tabled upper bounds
on diagonal Ramsey numbers into a density coefficient c(k); 1/c(k) bounds
the limit from below.  The upper-bound side is constructive: two explicit
colored weightings whose feasibility this module verifies k-subset by
k-subset.

Decimal constants from the large-k closed form are stored as exact
rationals with their printed digits; comparisons against published table
entries use "at most the printed value" semantics because those entries
are rounded outward.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificateError, InputError
from .graphs import (
    TwoColoring,
    all_edges,
    balanced_blowup,
    mono_triangle_free_k5,
    turan_number,
)
from .weighted_ramsey import WeightAssignment, build_constraints

_RAMSEY_UPPER = {3: 5, 4: 17, 5: 48, 6: 164, 7: 539, 8: 1869}


def diagonal_ramsey_upper(i: int) -> int:
    """Tabled upper bound on R(i) - 1 for the diagonal Ramsey number."""
    if i not in _RAMSEY_UPPER:
        raise InputError(f"diagonal Ramsey bound tabled only for 3 <= i <= 8, got {i}")
    return _RAMSEY_UPPER[i]


def turan_ratio_gap(k: int, i: int) -> Fraction:
    """t(k,2)/t(k,i-1) - t(k,2)/t(k,i), the weight of one summation term."""
    if not 3 <= i <= k:
        raise InputError(f"need 3 <= i <= k, got i={i}, k={k}")
    t2 = Fraction(turan_number(k, 2))
    return t2 / turan_number(k, i - 1) - t2 / turan_number(k, i)


def turan_ratio_gap_lower(k: int, i: int) -> Fraction:
    """Closed-form lower bound on the gap, valid for k >= 9."""
    if k < 9:
        raise InputError(f"the closed-form gap bound needs k >= 9, got {k}")
    if not 3 <= i <= 8:
        raise InputError(f"need 3 <= i <= 8, got {i}")
    lead = Fraction(2, k * k) * (k * k // 4)
    return lead * (Fraction(1, (i - 1) * (i - 2)) - Fraction(i, i - 1) / (4 * k - 5))


def density_coefficient(k: int) -> Fraction:
    """c(k): r(n,k) stays below (1+o(1)) * C(n,2) * c(k).

    Exact table gaps drive k <= 8; the closed-form lower bound on the gap
    takes over from k = 9 on.
    """
    if k < 4:
        raise InputError(f"density coefficient defined for k >= 4, got {k}")
    gap = turan_ratio_gap if k <= 8 else turan_ratio_gap_lower
    acc = Fraction(1)
    for i in range(3, min(k, 8) + 1):
        acc -= gap(k, i) / diagonal_ramsey_upper(i)
    return acc / turan_number(k, 2)


def wram_lower_bound(k: int) -> Fraction:
    """1/c(k): the computable lower bound on the weighted Ramsey limit."""
    return 1 / density_coefficient(k)


def wram_upper_bound(k: int) -> Fraction:
    """Constructive upper bound: 24/5 at k=4, else 1.25 * floor(k^2/4)."""
    if k < 4:
        raise InputError(f"upper bound defined for k >= 4, got {k}")
    if k == 4:
        return Fraction(24, 5)
    return Fraction(5 * (k * k // 4), 4)


def density_coefficient_tail(k: int) -> Fraction:
    """Large-k closed form for c(k) * t(k,2): decreasing, < 0.9515."""
    if k < 9:
        raise InputError(f"tail expression defined for k >= 9, got {k}")
    return (
        Fraction("0.94405")
        + Fraction("0.05596") / (k * k)
        + Fraction("0.20729") / (4 * k - 5)
    )


def tail_drop_threshold(cap: Fraction = Fraction("0.9441")) -> int:
    """Smallest k >= 9 with density_coefficient_tail(k) < cap.

    The tail is strictly decreasing with limit 0.94405, so the threshold
    exists for any cap above that; found by doubling then bisecting.
    """
    cap = Fraction(cap)
    if cap <= Fraction("0.94405"):
        raise InputError(f"cap {cap} is at or below the tail limit")
    lo = 9
    if density_coefficient_tail(lo) < cap:
        return lo
    hi = 16
    while density_coefficient_tail(hi) >= cap:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if density_coefficient_tail(mid) < cap:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class BoundsReport:
    k: int
    c_k: Fraction
    lower_bound: Fraction
    upper_bound: Fraction
    table_rows: tuple[tuple[int, Fraction, int], ...]

    def __post_init__(self):
        if self.lower_bound * self.c_k != 1:
            raise InputError("lower bound must be the reciprocal of c(k)")
        if self.upper_bound < self.lower_bound:
            raise InputError("upper bound fell below lower bound")


def bounds_report(k: int) -> BoundsReport:
    """Bracket [1/c(k), U(k)] with the per-i terms that produced c(k)."""
    gap = turan_ratio_gap if k <= 8 else turan_ratio_gap_lower
    rows = tuple(
        (i, gap(k, i), diagonal_ramsey_upper(i))
        for i in range(3, min(k, 8) + 1)
    )
    c_k = density_coefficient(k)
    return BoundsReport(
        k=k,
        c_k=c_k,
        lower_bound=1 / c_k,
        upper_bound=wram_upper_bound(k),
        table_rows=rows,
    )


_EXHAUSTIVE_VERTEX_CAP = 12
_SAMPLE_SIZE = 100_000


def verify_weighting(c: TwoColoring, k: int, w: WeightAssignment) -> None:
    """Check every (k-subset, color) weight sum stays at most 1.

    Exhaustive over the monochromatic constraint set up to n = 12 (or
    whenever there are at most 100000 k-subsets); a fixed-seed sample of
    100000 subsets beyond that.  Raises CertificateError on the first
    violation.
    """
    n = c.n
    if w.n != n:
        raise InputError("weighting and coloring disagree on n")
    subset_count = 1
    for j in range(k):
        subset_count = subset_count * (n - j) // (j + 1)
    if n <= _EXHAUSTIVE_VERTEX_CAP or subset_count <= _SAMPLE_SIZE:
        for mc in build_constraints(c, k).constraints:
            load = sum((w[e] for e in mc.edges), Fraction(0))
            if load > 1:
                raise CertificateError(
                    f"{mc.color.value} subgraph on {mc.vertices} "
                    f"exceeds the unit cap with weight {load}"
                )
        return
    rng = random.Random(0)
    for _ in range(_SAMPLE_SIZE):
        subset = tuple(sorted(rng.sample(range(n), k)))
        red_sum = Fraction(0)
        blue_sum = Fraction(0)
        for u, v in itertools.combinations(subset, 2):
            if c.red.has_edge(u, v):
                red_sum += w[(u, v)]
            else:
                blue_sum += w[(u, v)]
        if red_sum > 1 or blue_sum > 1:
            raise CertificateError(
                f"subset {subset} exceeds the unit cap "
                f"(red {red_sum}, blue {blue_sum})"
            )


def bipartite_total_weight(n: int) -> Fraction:
    """Closed-form total of the k=4 certificate: (5/24)C(n,2) + (1/24)floor(n/2)."""
    pairs = Fraction(n * (n - 1), 2)
    return Fraction(5, 24) * pairs + Fraction(n // 2, 24)


def bipartite_implied_bound(n: int) -> Fraction:
    return Fraction(n * (n - 1), 2) / bipartite_total_weight(n)


def construction_k4(n: int) -> tuple[TwoColoring, WeightAssignment, Fraction]:
    """Red complete bipartite coloring with 1/4 red, 1/6 blue weights.

    Feasible for k = 4 by construction; this builds it, re-verifies
    feasibility subset by subset, and returns the exact total weight.
    """
    if n < 4:
        raise InputError(f"the bipartite certificate needs n >= 4, got {n}")
    half = n // 2
    red_edges = [(u, v) for u in range(half) for v in range(half, n)]
    coloring = TwoColoring.from_red_edges(n, red_edges)
    weights = WeightAssignment(
        n,
        {
            (u, v): Fraction(1, 4) if coloring.red.has_edge(u, v) else Fraction(1, 6)
            for u, v in all_edges(n)
        },
    )
    total = weights.total()
    assert total == bipartite_total_weight(n)
    verify_weighting(coloring, 4, weights)
    return coloring, weights, total


def blowup_total_weight(n: int, k: int) -> Fraction:
    return Fraction(turan_number(n, 5), k * k // 4)


def construction_blowup(
    n: int, k: int, enforce_threshold: bool = True
) -> tuple[TwoColoring, WeightAssignment, Fraction]:
    """Pentagon blow-up with uniform cross weights 1/floor(k^2/4).

    Neither color class of the blow-up carries a triangle on cross edges,
    so every monochromatic k-subgraph holds at most floor(k^2/4) weighted
    edges.  The stated validity regime is n >= 5*ceil(k/2); pass
    ``enforce_threshold=False`` to build and verify the certificate for any
    n >= max(5, k) (feasibility is checked either way).
    """
    if k < 5:
        raise InputError(f"the blow-up certificate needs k >= 5, got {k}")
    threshold = 5 * ((k + 1) // 2)
    if enforce_threshold and n < threshold:
        raise InputError(
            f"n={n} is below the 5*ceil(k/2) = {threshold} threshold for k={k}"
        )
    if n < max(5, k):
        raise InputError(f"need n >= max(5, k) = {max(5, k)}, got {n}")
    coloring = balanced_blowup(mono_triangle_free_k5(), n)
    q, r = divmod(n, 5)
    sizes = [q + 1] * r + [q] * (5 - r)
    part_of = []
    for p, s in enumerate(sizes):
        part_of.extend([p] * s)
    unit = Fraction(1, k * k // 4)
    weights = WeightAssignment(
        n,
        {
            (u, v): unit if part_of[u] != part_of[v] else Fraction(0)
            for u, v in all_edges(n)
        },
    )
    total = weights.total()
    assert total == blowup_total_weight(n, k)
    verify_weighting(coloring, k, weights)
    return coloring, weights, total
