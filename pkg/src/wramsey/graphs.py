"""Small graphs, Red/Blue colorings of K_n, canonical forms, Turán graphs.

Graphs live on at most 16 vertices so an edge set fits comfortably in a
single Python int bitmask.  Edges are indexed lexicographically: (0,1),
(0,2), ..., (0,n-1), (1,2), ...  A TwoColoring is stored through its red
graph; the blue graph is the complement inside K_n.

Canonicalization is the exhaustive kind: minimum of the red-edge bitmask
over all vertex permutations and both color orientations.  That is only
viable for n <= 9, which covers everything this package computes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import CapabilityError, InputError

MAX_VERTICES = 16

_CANONICAL_CAP = 9
_ENUMERATION_CAP = 8


def edge_index(n: int, u: int, v: int) -> int:
    """Position of edge (u, v) in the lexicographic edge order of K_n."""
    if u > v:
        u, v = v, u
    if u == v or not 0 <= u < n or not 0 <= v < n:
        raise InputError(f"bad edge ({u}, {v}) for n={n}")
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


@lru_cache(maxsize=None)
def all_edges(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


def edges_to_mask(n: int, edges) -> int:
    mask = 0
    for u, v in edges:
        bit = 1 << edge_index(n, u, v)
        if mask & bit:
            raise InputError(f"duplicate edge ({u}, {v})")
        mask |= bit
    return mask


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on n vertices, adjacency as an edge bitmask."""

    n: int
    mask: int

    def __post_init__(self):
        if not 3 <= self.n <= MAX_VERTICES:
            raise InputError(f"vertex count {self.n} outside 3..{MAX_VERTICES}")
        if not 0 <= self.mask < (1 << self.num_pairs):
            raise InputError("edge mask out of range")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, edges_to_mask(n, edges))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, (1 << (n * (n - 1) // 2)) - 1)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, 0)

    @property
    def num_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def edge_count(self) -> int:
        return bin(self.mask).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.mask >> edge_index(self.n, u, v) & 1)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(e for i, e in enumerate(all_edges(self.n)) if self.mask >> i & 1)

    def complement(self) -> "Graph":
        return Graph(self.n, self.mask ^ ((1 << self.num_pairs) - 1))

    def degree(self, v: int) -> int:
        return sum(1 for u in range(self.n) if u != v and self.has_edge(u, v))

    def induced_edges(self, vertices) -> tuple[tuple[int, int], ...]:
        vs = sorted(vertices)
        return tuple(
            (u, v) for u, v in itertools.combinations(vs, 2) if self.has_edge(u, v)
        )

    def triangles(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(
            t for t in itertools.combinations(range(self.n), 3)
            if len(self.induced_edges(t)) == 3
        )


@dataclass(frozen=True)
class TwoColoring:
    """Red/Blue edge coloring of K_n, stored through its red graph."""

    red: Graph

    @property
    def n(self) -> int:
        return self.red.n

    @property
    def blue(self) -> Graph:
        return self.red.complement()

    def color_of(self, u: int, v: int) -> str:
        return "R" if self.red.has_edge(u, v) else "B"

    @classmethod
    def from_red_edges(cls, n: int, edges) -> "TwoColoring":
        return cls(Graph.from_edges(n, edges))

    @classmethod
    def monochromatic(cls, n: int) -> "TwoColoring":
        return cls(Graph.complete(n))


CanonicalKey = bytes


@lru_cache(maxsize=8)
def _perm_bit_images(n: int) -> list[list[int]]:
    """For each permutation of [n], the bit value each edge index maps to."""
    edges = all_edges(n)
    images = []
    for perm in itertools.permutations(range(n)):
        images.append([1 << edge_index(n, perm[u], perm[v]) for u, v in edges])
    return images


@lru_cache(maxsize=4)
def _perm_bit_matrix(n: int) -> np.ndarray:
    """Same mapping as a (n!, #edges) int64 matrix, built without a perm loop."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    cols = []
    for u, v in all_edges(n):
        tu, tv = perms[:, u], perms[:, v]
        lo, hi = np.minimum(tu, tv), np.maximum(tu, tv)
        idx = lo * (2 * n - lo - 1) // 2 + (hi - lo - 1)
        cols.append((np.int64(1) << idx))
    return np.stack(cols, axis=1)


def _canonical_mask(n: int, mask: int) -> int:
    full = (1 << (n * (n - 1) // 2)) - 1
    bits = [i for i in range(n * (n - 1) // 2) if mask >> i & 1]
    if n <= 6:
        best = full
        for image in _perm_bit_images(n):
            img = 0
            for i in bits:
                img |= image[i]
            img2 = full ^ img
            if img2 < img:
                img = img2
            if img < best:
                best = img
        return best
    bit_matrix = _perm_bit_matrix(n)
    images = np.zeros(bit_matrix.shape[0], dtype=np.int64)
    for i in bits:
        images |= bit_matrix[:, i]
    swapped = np.int64(full) ^ images
    return int(min(images.min(initial=full), swapped.min(initial=full)))


def canonical_key(coloring: TwoColoring) -> CanonicalKey:
    """Byte key invariant under vertex relabeling and the Red/Blue swap."""
    n = coloring.n
    if n > _CANONICAL_CAP:
        raise CapabilityError(
            f"canonical_key uses exhaustive permutation search, capped at n={_CANONICAL_CAP}"
        )
    best = _canonical_mask(n, coloring.red.mask)
    return bytes([n]) + best.to_bytes(5, "big")


_coloring_class_cache: dict[int, tuple[int, ...]] = {}


def _class_masks(n: int) -> tuple[int, ...]:
    if n in _coloring_class_cache:
        return _coloring_class_cache[n]
    num_pairs = n * (n - 1) // 2
    full = (1 << num_pairs) - 1
    if n <= 6:
        images = _perm_bit_images(n)
        seen = bytearray(1 << num_pairs)
        reps = []
        for mask in range(1 << num_pairs):
            if seen[mask]:
                continue
            reps.append(mask)
            bits = [i for i in range(num_pairs) if mask >> i & 1]
            for image in images:
                img = 0
                for i in bits:
                    img |= image[i]
                seen[img] = 1
                seen[full ^ img] = 1
    else:
        # Grow each class on n-1 vertices by every attachment of a new last
        # vertex, then canonicalize.  Edge indices of the smaller K line up
        # with a prefix of the larger one only per-row, so remap explicitly.
        smaller = _class_masks(n - 1)
        remap = [edge_index(n, u, v) for u, v in all_edges(n - 1)]
        found = set()
        for small_mask in smaller:
            base = 0
            for i, j in enumerate(remap):
                if small_mask >> i & 1:
                    base |= 1 << j
            for pattern in range(1 << (n - 1)):
                mask = base
                for u in range(n - 1):
                    if pattern >> u & 1:
                        mask |= 1 << edge_index(n, u, n - 1)
                found.add(_canonical_mask(n, mask))
        reps = sorted(found)
    result = tuple(reps)
    _coloring_class_cache[n] = result
    return result


def enumerate_colorings(n: int) -> list[TwoColoring]:
    """One representative per coloring class of K_n under relabeling + swap.

    Representatives are the minimum red bitmask of each class, in ascending
    order, so the output order is itself canonical.  The class count is the
    length of the returned list.
    """
    if not 3 <= n <= _ENUMERATION_CAP:
        raise CapabilityError(
            f"exhaustive coloring enumeration supports 3 <= n <= {_ENUMERATION_CAP}"
        )
    return [TwoColoring(Graph(n, mask)) for mask in _class_masks(n)]


def _part_sizes(n: int, parts: int) -> list[int]:
    q, r = divmod(n, parts)
    return [q + 1] * r + [q] * (parts - r)


def turan_number(k: int, i: int) -> int:
    """Edge count t(k, i) of the balanced complete i-partite graph on k vertices."""
    if not 2 <= i <= k:
        raise InputError(f"turan_number requires 2 <= i <= k, got i={i}, k={k}")
    k_, i_ = Fraction(k), Fraction(i)
    ceil_term = Fraction(-(-k // i)) - k_ / i_
    floor_term = k_ / i_ - Fraction(k // i)
    value = k_ * k_ / 2 * (i_ - 1) / i_ - i_ / 2 * ceil_term * floor_term
    assert value.denominator == 1
    return int(value)


def turan_graph(n: int, i: int) -> Graph:
    """Complete i-partite graph on n vertices with near-equal parts."""
    if not 1 <= i <= n:
        raise InputError(f"turan_graph requires 1 <= i <= n, got i={i}, n={n}")
    sizes = _part_sizes(n, i)
    part_of = []
    for p, s in enumerate(sizes):
        part_of.extend([p] * s)
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2)
        if part_of[u] != part_of[v]
    ]
    return Graph.from_edges(n, edges)


def balanced_blowup(base: TwoColoring, n: int) -> TwoColoring:
    """Blow each vertex of ``base`` up into a near-equal part on n vertices.

    Cross edges inherit the base color of their parts; edges inside a part
    are colored Red (a fixed choice: any color works, and such edges carry
    weight zero in every construction that consumes blow-ups).
    """
    m = base.n
    if n < m:
        raise InputError(f"blow-up target n={n} smaller than base size {m}")
    sizes = _part_sizes(n, m)
    part_of = []
    for p, s in enumerate(sizes):
        part_of.extend([p] * s)
    red_edges = []
    for u, v in itertools.combinations(range(n), 2):
        pu, pv = part_of[u], part_of[v]
        if pu == pv or base.red.has_edge(pu, pv):
            red_edges.append((u, v))
    return TwoColoring(Graph.from_edges(n, red_edges))


def blowup_part_sizes(base_n: int, n: int) -> list[int]:
    """Part sizes used by :func:`balanced_blowup` (exposed for checks)."""
    return _part_sizes(n, base_n)


def mono_triangle_free_k5() -> TwoColoring:
    """The K_5 coloring whose red graph is the 5-cycle; no mono triangle."""
    return TwoColoring.from_red_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])


# ---------------------------------------------------------------------------
# Text formats.
#
# Graph:    "n <count>" then one "u v" line per edge, 0-based.
# Coloring: "n <count>" then one "u v R" or "u v B" line per K_n edge; every
#           edge must appear exactly once.


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty graph text")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise InputError(f"bad graph header: {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise InputError(f"bad vertex count: {head[1]!r}") from exc
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"bad edge line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InputError(f"bad edge line: {ln!r}") from exc
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_coloring(c: TwoColoring) -> str:
    lines = [f"n {c.n}"]
    lines.extend(f"{u} {v} {c.color_of(u, v)}" for u, v in all_edges(c.n))
    return "\n".join(lines) + "\n"


def _parse_coloring_lines(lines: list[str]) -> TwoColoring:
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n":
        raise InputError(f"bad coloring header: {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise InputError(f"bad vertex count: {head[1]!r}") from exc
    expected = n * (n - 1) // 2
    if len(lines) - 1 != expected:
        raise InputError(
            f"coloring for n={n} needs {expected} edge lines, got {len(lines) - 1}"
        )
    seen = set()
    red = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[2] not in ("R", "B"):
            raise InputError(f"bad coloring line: {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise InputError(f"bad coloring line: {ln!r}") from exc
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"edge ({u}, {v}) colored twice")
        seen.add(key)
        if parts[2] == "R":
            red.append(key)
    if len(seen) != expected:
        raise InputError("coloring does not cover every edge of K_n")
    return TwoColoring.from_red_edges(n, red)


def parse_coloring(text: str) -> TwoColoring:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty coloring text")
    colorings = parse_colorings(text)
    if len(colorings) != 1:
        raise InputError(f"expected one coloring record, found {len(colorings)}")
    return colorings[0]


def parse_colorings(text: str) -> list[TwoColoring]:
    """Parse one or more concatenated coloring records."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty coloring text")
    records: list[TwoColoring] = []
    pos = 0
    while pos < len(lines):
        head = lines[pos].split()
        if len(head) != 2 or head[0] != "n":
            raise InputError(f"bad coloring header: {lines[pos]!r}")
        try:
            n = int(head[1])
        except ValueError as exc:
            raise InputError(f"bad vertex count: {head[1]!r}") from exc
        span = 1 + n * (n - 1) // 2
        records.append(_parse_coloring_lines(lines[pos:pos + span]))
        pos += span
    return records
