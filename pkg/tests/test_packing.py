"""Packing/covering invariants and the constructive conversions."""

import itertools
import random
from fractions import Fraction as F

import pytest

from wramsey.errors import CapabilityError, ContractViolationError, InputError
from wramsey.graphs import Graph, TwoColoring, mono_triangle_free_k5
from wramsey.packing import (
    ColoringPackingStats,
    SubgraphDescriptor,
    SubgraphWeights,
    coloring_packing_stats,
    cover_to_packing,
    induced_descriptor,
    lift_tilde_to_induced,
    packing_to_cover,
    r_induced,
    r_tilde,
    redistribute_excess,
    reduce_to_minimal,
    tau_integral,
    tau_integral_family,
    tau_min_over_colorings,
    tau_star,
    triangle_packing_bound,
    triangle_packing_bound_limit,
)


def _random_graph(rng: random.Random, n: int, p: F) -> Graph:
    edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def small_corpus(count: int = 60, seed: int = 424242) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(3, 8)
        p = rng.choice([F(3, 10), F(1, 2), F(4, 5)])
        out.append(_random_graph(rng, n, p))
    return out


# -- tau_star ---------------------------------------------------------------

def test_tau_star_triangle_free():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    value, weights = tau_star(g)
    assert value == 0
    assert weights.weights == {}


def test_tau_star_k4():
    # Summing the six edge constraints gives 3 * total <= 6; half on each
    # of the four triangles attains it.
    value, weights = tau_star(Graph.complete(4))
    assert value == 2
    assert all(load <= 1 for load in weights.loads().values())


def test_tau_star_k5():
    value, weights = tau_star(Graph.complete(5))
    assert value == F(10, 3)
    assert all(load <= 1 for load in weights.loads().values())


# -- tau_integral -----------------------------------------------------------

def _brute_force_tau(g: Graph) -> int:
    tris = list(g.triangles())
    tri_edges = [set(itertools.combinations(t, 2)) for t in tris]
    best = 0
    for r in range(len(tris), 0, -1):
        if r <= best:
            break
        for combo in itertools.combinations(range(len(tris)), r):
            union = set()
            ok = True
            for i in combo:
                if tri_edges[i] & union:
                    ok = False
                    break
                union |= tri_edges[i]
            if ok:
                best = max(best, r)
                break
    return best


def test_tau_integral_small_complete_graphs():
    assert tau_integral(Graph.complete(4)) == 1
    assert tau_integral(Graph.complete(5)) == 2
    # Independent oracle: exhaustive search over triangle subsets.
    assert _brute_force_tau(Graph.complete(4)) == 1
    assert _brute_force_tau(Graph.complete(5)) == 2


def test_tau_integral_triangle_free():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert tau_integral(g) == 0


def test_tau_integral_matches_brute_force_on_random_graphs():
    rng = random.Random(99)
    for _ in range(25):
        g = _random_graph(rng, rng.randint(4, 6), F(3, 5))
        assert tau_integral(g) == _brute_force_tau(g)


def test_tau_integral_family_is_edge_disjoint():
    fam = tau_integral_family(Graph.complete(7))
    assert len(fam) == 7
    used = set()
    for tri in fam:
        es = set(itertools.combinations(tri, 2))
        assert not es & used
        used |= es


def test_tau_integral_capability_cap():
    with pytest.raises(CapabilityError):
        tau_integral(Graph.empty(11))


def test_tau_never_exceeds_fractional():
    for g in small_corpus(25, seed=7):
        assert tau_integral(g) <= tau_star(g)[0] <= F(g.edge_count, 3)


# -- r_induced / r_tilde ----------------------------------------------------

def test_r_induced_examples():
    assert r_induced(Graph.complete(3))[0] == 1
    assert r_induced(Graph.complete(4))[0] == 2
    assert r_induced(Graph.from_edges(3, [(0, 1)]))[0] == 1


def test_r_tilde_examples():
    assert r_tilde(Graph.complete(3))[0] == 1
    assert r_tilde(Graph.complete(4))[0] == 2
    assert r_tilde(Graph.empty(4))[0] == 0


def test_r_equals_r_tilde_on_corpus():
    for g in small_corpus(40, seed=13):
        assert r_induced(g)[0] == r_tilde(g)[0]


def test_sandwich_bounds_on_corpus():
    for g in small_corpus(40, seed=14):
        r_val = r_induced(g)[0]
        ts = tau_star(g)[0]
        e = F(g.edge_count)
        assert e / 2 - ts / 2 <= r_val <= e / 2 - ts / 2 + g.n // 2


# -- lift_tilde_to_induced ----------------------------------------------------

def test_lift_optimal_k3():
    _, wt = r_tilde(Graph.complete(3))
    lifted = lift_tilde_to_induced(wt)
    assert lifted.total() == 1
    tri = induced_descriptor(Graph.complete(3), (0, 1, 2))
    assert lifted.weights == {tri: F(1)}


def test_lift_moves_partial_members_onto_induced_triple():
    g = Graph.complete(4)
    half = F(1, 2)
    path_a = SubgraphDescriptor((0, 1, 2), ((0, 1), (0, 2)))
    path_b = SubgraphDescriptor((1, 2, 3), ((1, 2), (1, 3)))
    path_c = SubgraphDescriptor((1, 2, 3), ((1, 2), (2, 3)))
    tri_a = SubgraphDescriptor((0, 1, 3), ((0, 1), (0, 3), (1, 3)))
    tri_b = SubgraphDescriptor((0, 2, 3), ((0, 2), (0, 3), (2, 3)))
    tw = SubgraphWeights(
        g, {path_a: half, path_b: half, tri_a: half, tri_b: half, path_c: half}
    )
    assert all(v == 1 for v in tw.loads().values())
    lifted = lift_tilde_to_induced(tw)
    assert lifted.total() == tw.total() == F(5, 2)
    # The 1/2 on the two-edge member lands on the induced triangle of its triple.
    assert lifted.weights[induced_descriptor(g, (0, 1, 2))] == half
    # Coverage of at least one survives the lift.
    assert all(v >= 1 for v in lifted.loads().values())


def test_lift_rejects_infeasible_input():
    g = Graph.complete(4)
    lone = SubgraphDescriptor((0, 1, 2), ((0, 1),))
    with pytest.raises(ContractViolationError):
        lift_tilde_to_induced(SubgraphWeights(g, {lone: F(1, 2)}))


def _random_feasible_exact_load(g: Graph, rng: random.Random) -> SubgraphWeights:
    """Random convex mix of the LP optimum and the trivial one-edge solution."""
    _, opt = r_tilde(g)
    trivial = {}
    for u, v in g.edges():
        spare = min(x for x in range(g.n) if x not in (u, v))
        desc = SubgraphDescriptor(tuple(sorted((u, v, spare))), ((u, v),))
        trivial[desc] = trivial.get(desc, F(0)) + 1
    lam = F(rng.randint(0, 8), 8)
    mixed: dict = {}
    for d, w in opt.weights.items():
        mixed[d] = mixed.get(d, F(0)) + lam * w
    for d, w in trivial.items():
        mixed[d] = mixed.get(d, F(0)) + (1 - lam) * w
    return SubgraphWeights(g, mixed)


def test_lift_preserves_total_on_random_feasible_inputs():
    rng = random.Random(31)
    done = 0
    while done < 100:
        g = _random_graph(rng, rng.randint(3, 7), F(1, 2))
        if not g.edge_count:
            continue
        tw = _random_feasible_exact_load(g, rng)
        assert all(v == 1 for v in tw.loads().values())
        lifted = lift_tilde_to_induced(tw)
        assert lifted.total() == tw.total()
        assert all(v >= 1 for v in lifted.loads().values())
        done += 1


# -- redistribute_excess ------------------------------------------------------

def test_redistribute_tight_input_unchanged():
    g = Graph.complete(3)
    _, wt = r_induced(g)
    out = redistribute_excess(wt)
    assert out.weights == wt.weights


def test_redistribute_rejects_non_minimal():
    g = Graph.complete(4)
    ones = {induced_descriptor(g, t): F(1) for t in itertools.combinations(range(4), 3)}
    with pytest.raises(ContractViolationError):
        redistribute_excess(SubgraphWeights(g, ones))


def test_redistribute_k4_optimum_unchanged():
    g = Graph.complete(4)
    _, wt = r_induced(g)
    assert all(v == 1 for v in wt.loads().values())
    out = redistribute_excess(wt)
    assert out.weights == wt.weights


def test_redistribute_handles_genuinely_slack_minimal_cover():
    # Minimal but non-optimal cover of K4: three triangles at full weight.
    g = Graph.complete(4)
    t123 = induced_descriptor(g, (0, 1, 2))
    t124 = induced_descriptor(g, (0, 1, 3))
    t134 = induced_descriptor(g, (0, 2, 3))
    tw = SubgraphWeights(g, {t123: F(1), t124: F(1), t134: F(1)})
    out = redistribute_excess(tw)
    assert out.total() == 3
    assert all(v == 1 for v in out.loads().values())


def test_redistribute_on_minimal_covers_with_large_excess():
    # Start from the heaviest feasible cover (every induced member at full
    # weight), minimize greedily, then require exact unit loads.
    rng = random.Random(2024)
    done = 0
    while done < 60:
        g = _random_graph(rng, rng.randint(4, 8), rng.choice([F(1, 2), F(4, 5)]))
        if not g.edge_count:
            continue
        heavy = SubgraphWeights(
            g,
            {
                induced_descriptor(g, tri): F(1)
                for tri in itertools.combinations(range(g.n), 3)
                if g.induced_edges(tri)
            },
        )
        minimal = reduce_to_minimal(heavy)
        out = redistribute_excess(minimal)
        assert out.total() == minimal.total()
        assert all(v == 1 for v in out.loads().values())
        done += 1


def test_full_pipeline_on_lp_optima():
    rng = random.Random(77)
    done = 0
    while done < 100:
        g = _random_graph(rng, rng.randint(3, 7), rng.choice([F(2, 5), F(3, 5)]))
        if not g.edge_count:
            continue
        _, wi = r_induced(g)
        minimal = reduce_to_minimal(wi)
        out = redistribute_excess(minimal)
        assert out.total() == wi.total()
        assert all(v == 1 for v in out.loads().values())
        done += 1


# -- packing_to_cover / cover_to_packing --------------------------------------

def test_packing_to_cover_k3():
    g = Graph.complete(3)
    value, gs = tau_star(g)
    out = packing_to_cover(gs, g)
    assert out.weights == gs.weights
    assert out.total() == 1


def test_packing_to_cover_single_edge_plus_isolated_vertex():
    g = Graph.from_edges(3, [(0, 1)])
    out = packing_to_cover(SubgraphWeights(g, {}), g)
    assert out.total() == 1
    (desc, weight), = out.weights.items()
    assert weight == 1
    assert desc.edges == ((0, 1),)
    assert desc.vertices == (0, 1, 2)
    assert out.total() <= F(g.edge_count, 2) + g.n // 2


def test_packing_to_cover_path():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    out = packing_to_cover(SubgraphWeights(g, {}), g)
    # Both deficiencies are 1, so one paired two-edge member settles both.
    (desc, weight), = out.weights.items()
    assert weight == 1
    assert desc.edges == ((0, 1), (1, 2))
    assert all(v == 1 for v in out.loads().values())


def test_packing_to_cover_rejects_underweight_triangle():
    g = Graph.complete(3)
    with pytest.raises(ContractViolationError):
        packing_to_cover(SubgraphWeights(g, {}), g)


def test_packing_to_cover_bound_on_corpus():
    for g in small_corpus(40, seed=15):
        if not g.edge_count:
            continue
        value, gs = tau_star(g)
        out = packing_to_cover(gs, g)
        assert all(v == 1 for v in out.loads().values())
        assert out.total() <= F(g.edge_count) / 2 - value / 2 + g.n // 2


def test_cover_to_packing_examples():
    g = Graph.complete(3)
    _, wt = r_tilde(g)
    packed = cover_to_packing(wt, g)
    assert packed.total() <= tau_star(g)[0]

    square = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    _, wt = r_tilde(square)
    assert cover_to_packing(wt, square).weights == {}


def test_cover_to_packing_counting_identity_k4():
    g = Graph.complete(4)
    r_val, wt = r_tilde(g)
    packed = cover_to_packing(wt, g)
    # e(G) <= sum(g) + 2 r(G), so the triangle part carries at least e - 2r.
    assert packed.total() >= g.edge_count - 2 * r_val == 2 == tau_star(g)[0]
    assert all(v <= 1 for v in packed.loads().values())


# -- coloring-level statistics -------------------------------------------------

def test_coloring_packing_stats_examples():
    assert coloring_packing_stats(mono_triangle_free_k5()) == ColoringPackingStats(0, F(0))
    assert coloring_packing_stats(TwoColoring.monochromatic(4)) == ColoringPackingStats(1, F(2))
    assert coloring_packing_stats(TwoColoring.monochromatic(5)) == ColoringPackingStats(2, F(10, 3))


def _joint_mono_packing(c: TwoColoring) -> int:
    """Joint maximum over monochromatic triangles of both colors."""
    tris = []
    for tri in itertools.combinations(range(c.n), 3):
        if len(c.red.induced_edges(tri)) == 3 or len(c.blue.induced_edges(tri)) == 3:
            tris.append(set(itertools.combinations(tri, 2)))
    best = 0
    for r in range(len(tris), 0, -1):
        if r <= best:
            break
        for combo in itertools.combinations(range(len(tris)), r):
            union: set = set()
            ok = True
            for i in combo:
                if tris[i] & union:
                    ok = False
                    break
                union |= tris[i]
            if ok:
                best = r
                break
    return best


def test_per_color_sum_equals_joint_maximum():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(4, 6)
        red = _random_graph(rng, n, F(1, 2))
        c = TwoColoring(red)
        assert coloring_packing_stats(c).tau_c == _joint_mono_packing(c)


def test_coloring_stats_capability_cap():
    with pytest.raises(CapabilityError):
        coloring_packing_stats(TwoColoring(Graph.empty(11)))


def test_tau_min_over_colorings():
    value, witness = tau_min_over_colorings(5, fractional=False)
    assert value == 0
    stats = coloring_packing_stats(witness)
    assert stats.tau_c == 0

    value, _ = tau_min_over_colorings(5, fractional=True)
    assert value == 0

    value, _ = tau_min_over_colorings(3, fractional=False)
    assert value == 0

    with pytest.raises(CapabilityError):
        tau_min_over_colorings(8, fractional=False)


# -- packing bound evaluators ---------------------------------------------------

def test_triangle_packing_bound_limit_constants():
    assert triangle_packing_bound_limit(F(3, 55)) == F(110, 49)
    assert triangle_packing_bound_limit(F(1, 12)) == F(12, 5)
    approx = triangle_packing_bound_limit(F(1000, 12888))
    assert abs(approx - F(23674, 10000)) <= F(1, 10000)


def test_triangle_packing_bound_finite_form():
    assert triangle_packing_bound(5, F(0)) == F(40, 30)
    with pytest.raises(InputError):
        triangle_packing_bound(3, F(100))
    with pytest.raises(InputError):
        triangle_packing_bound_limit(F(1, 2))


def test_finite_consistency_with_computed_tau():
    from wramsey.weighted_ramsey import wram

    for n in (5, 6, 7):
        tau_n = tau_min_over_colorings(n, fractional=False)[0]
        assert wram(n, 3).value >= triangle_packing_bound(n, tau_n)


def test_descriptor_validation():
    with pytest.raises(InputError):
        SubgraphDescriptor((0, 1, 1), ())
    with pytest.raises(InputError):
        SubgraphDescriptor((0, 1, 2), ((0, 3),))
