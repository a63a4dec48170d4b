"""Simple undirected graphs on {0..n-1} with the named families and
operations used by the exclusivity-graph machinery.

Adjacency is stored as one bitset row per vertex (Python ints), which keeps
set algebra cheap for the n <= 64 sizes this package works at.  Graphs are
immutable; every operation returns a new Graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

MAX_VERTICES = 64
ISO_MAX_VERTICES = 16


class GraphError(ValueError):
    """Invalid construction parameters or an unsupported graph size."""


def _bits(mask: int):
    """Iterate set bit positions of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph: irreflexive, symmetric adjacency on n >= 1 vertices."""

    n: int
    rows: tuple[int, ...]
    labels: tuple[str, ...] | None = None
    # Set by the circulant builder (and preserved under complement) so that
    # vertex-transitivity is known without an automorphism search.
    circulant_offsets: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        if self.n > MAX_VERTICES:
            raise GraphError(f"graph size {self.n} exceeds the supported maximum {MAX_VERTICES}")
        if len(self.rows) != self.n:
            raise GraphError("adjacency rows do not match vertex count")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"adjacency row {i} references vertices outside 0..{self.n - 1}")
            if row >> i & 1:
                raise GraphError(f"self-loop at vertex {i}")
        for i in range(self.n):
            for j in _bits(self.rows[i]):
                if not self.rows[j] >> i & 1:
                    raise GraphError(f"adjacency not symmetric at ({i},{j})")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("label count does not match vertex count")

    # -- basic queries ------------------------------------------------------

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def neighbors(self, i: int) -> int:
        """Bitset of neighbors of vertex i."""
        return self.rows[i]

    def degree(self, i: int) -> int:
        return _popcount(self.rows[i])

    def edges(self) -> list[tuple[int, int]]:
        """Sorted edge list with i < j."""
        out = []
        for i in range(self.n):
            row = self.rows[i] >> (i + 1) << (i + 1)
            for j in _bits(row):
                out.append((i, j))
        return out

    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(self.n)) // 2

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def adjacency_matrix(self):
        import numpy as np

        a = np.zeros((self.n, self.n))
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1.0
        return a

    def is_connected(self) -> bool:
        seen = 1
        frontier = 1
        while frontier:
            new = 0
            for i in _bits(frontier):
                new |= self.rows[i]
            frontier = new & ~seen
            seen |= new
        return seen == (1 << self.n) - 1

    def to_json_dict(self) -> dict:
        d = {"n": self.n, "edges": [[i, j] for i, j in self.edges()]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d


def from_edges(n: int, edges, labels=None) -> Graph:
    rows = [0] * n
    for e in edges:
        i, j = int(e[0]), int(e[1])
        if i == j:
            raise GraphError(f"self-loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge ({i},{j}) outside 0..{n - 1}")
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(n, tuple(rows), tuple(labels) if labels is not None else None)


def from_json_dict(d: dict) -> Graph:
    try:
        n = int(d["n"])
        edges = d["edges"]
    except (KeyError, TypeError) as exc:
        raise GraphError(f"graph JSON needs 'n' and 'edges': {exc}") from exc
    return from_edges(n, edges, d.get("labels"))


# -- named families ---------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def circulant_graph(n: int, offsets) -> Graph:
    offs = sorted(set(int(o) for o in offsets))
    if not offs:
        raise GraphError("circulant needs a nonempty offset set")
    for o in offs:
        if not 1 <= o <= n // 2:
            raise GraphError(f"circulant offset {o} outside 1..{n // 2}")
    rows = [0] * n
    for i in range(n):
        for o in offs:
            rows[i] |= 1 << ((i + o) % n)
            rows[i] |= 1 << ((i - o) % n)
    return Graph(n, tuple(rows), circulant_offsets=tuple(offs))


def prism_graph(n: int) -> Graph:
    """Two aligned n-cycles joined by a perfect matching (2n vertices)."""
    if n < 3:
        raise GraphError("prism needs cycle length n >= 3")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((n + i, n + (i + 1) % n))
        edges.append((i, n + i))
    labels = [f"t{i}" for i in range(n)] + [f"b{i}" for i in range(n)]
    return from_edges(2 * n, edges, labels)


def moebius_ladder(m: int) -> Graph:
    """Cycle of even length m with all m/2 diameters added."""
    if m < 4 or m % 2:
        raise GraphError("moebius ladder needs even order m >= 4")
    return circulant_graph(m, {1, m // 2})


def johnson_graph(m: int, k: int) -> Graph:
    """k-subsets of an m-set, adjacent iff the subsets share k-1 elements."""
    if not 1 <= k <= m:
        raise GraphError("johnson graph needs 1 <= k <= m")
    verts = list(itertools.combinations(range(m), k))
    if len(verts) > MAX_VERTICES:
        raise GraphError(f"johnson graph on {len(verts)} vertices exceeds {MAX_VERTICES}")
    edges = [
        (a, b)
        for a, b in itertools.combinations(range(len(verts)), 2)
        if len(set(verts[a]) & set(verts[b])) == k - 1
    ]
    labels = ["".join(str(x + 1) for x in v) for v in verts]
    return from_edges(len(verts), edges, labels)


def kneser_graph(m: int, k: int) -> Graph:
    """k-subsets of an m-set, adjacent iff disjoint."""
    verts = list(itertools.combinations(range(m), k))
    if len(verts) > MAX_VERTICES:
        raise GraphError(f"kneser graph on {len(verts)} vertices exceeds {MAX_VERTICES}")
    edges = [
        (a, b)
        for a, b in itertools.combinations(range(len(verts)), 2)
        if not set(verts[a]) & set(verts[b])
    ]
    labels = ["".join(str(x + 1) for x in v) for v in verts]
    return from_edges(len(verts), edges, labels)


def petersen_graph() -> Graph:
    return kneser_graph(5, 2)


def subset_intersection_graph(q: int, s: int) -> Graph:
    """q-subsets of a 2q-set, adjacent iff the intersection has exactly s elements."""
    if not 0 <= s < q:
        raise GraphError("subset intersection family needs 0 <= s < q")
    verts = list(itertools.combinations(range(2 * q), q))
    if len(verts) > MAX_VERTICES:
        raise GraphError(f"family graph on {len(verts)} vertices exceeds {MAX_VERTICES}")
    edges = [
        (a, b)
        for a, b in itertools.combinations(range(len(verts)), 2)
        if len(set(verts[a]) & set(verts[b])) == s
    ]
    return from_edges(len(verts), edges)


def build_family(family: str, **params) -> Graph:
    """Build a named family graph from CLI-style parameters."""
    try:
        if family == "cycle":
            return cycle_graph(int(params["n"]))
        if family == "path":
            return path_graph(int(params["n"]))
        if family == "complete":
            return complete_graph(int(params["n"]))
        if family == "prism":
            return prism_graph(int(params["n"]))
        if family == "moebius":
            return moebius_ladder(int(params["n"]))
        if family == "circulant":
            return circulant_graph(int(params["n"]), params["offsets"])
        if family == "johnson_gqs":
            return subset_intersection_graph(int(params["q"]), int(params["s"]))
        if family == "johnson":
            return johnson_graph(int(params["m"]), int(params["k"]))
        if family == "petersen":
            return petersen_graph()
    except KeyError as exc:
        raise GraphError(f"family '{family}' is missing parameter {exc}") from exc
    raise GraphError(f"unknown graph family '{family}'")


# -- operations -------------------------------------------------------------


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = tuple((full ^ g.rows[i]) & ~(1 << i) for i in range(g.n))
    offs = None
    if g.circulant_offsets is not None:
        offs = tuple(sorted(set(range(1, g.n // 2 + 1)) - set(g.circulant_offsets)))
        if not offs:
            offs = None  # complete graph complement of edgeless, or empty offset set
    return Graph(g.n, rows, g.labels, circulant_offsets=offs)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    rows = list(g1.rows) + [r << g1.n for r in g2.rows]
    labels = tuple(
        [f"L.{g1.label(i)}" for i in range(g1.n)] + [f"R.{g2.label(i)}" for i in range(g2.n)]
    )
    return Graph(n, tuple(rows), labels)


def direct_cosum(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union plus every cross edge."""
    base = disjoint_union(g1, g2)
    left = (1 << g1.n) - 1
    right = ((1 << base.n) - 1) ^ left
    rows = list(base.rows)
    for i in range(g1.n):
        rows[i] |= right
    for i in range(g1.n, base.n):
        rows[i] |= left
    return Graph(base.n, tuple(rows), base.labels)


def _twin_cross_pairs(g: Graph) -> list[tuple[int, int]]:
    """All ordered cross pairs (u in copy 0, v in copy 1) that twinning joins."""
    return [(u, v) for u, v in itertools.product(range(g.n), repeat=2) if g.has_edge(u, v)]


def duplication(g: Graph) -> Graph:
    """Two disjoint copies of g."""
    n = 2 * g.n
    rows = list(g.rows) + [r << g.n for r in g.rows]
    labels = tuple(
        [f"{g.label(i)}.0" for i in range(g.n)] + [f"{g.label(i)}.1" for i in range(g.n)]
    )
    return Graph(n, tuple(rows), labels)


def partial_twinning(g: Graph, kept_cross_edges) -> Graph:
    """Duplication of g plus the given cross edges (u in copy 0, v in copy 1).

    Every kept pair must be an edge of g; those are exactly the cross edges the
    full twinning would create.
    """
    base = duplication(g)
    rows = list(base.rows)
    for e in kept_cross_edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise GraphError(f"cross pair ({u},{v}) outside vertex range")
        if not g.has_edge(u, v):
            raise GraphError(f"cross pair ({u},{v}) is not a legal twinning cross edge")
        rows[u] |= 1 << (g.n + v)
        rows[g.n + v] |= 1 << u
    return Graph(base.n, tuple(rows), base.labels)


def twinning(g: Graph) -> Graph:
    """Two copies of g with cross edges wherever the originals are adjacent."""
    return partial_twinning(g, _twin_cross_pairs(g))


# -- isomorphism and vertex transitivity -------------------------------------


def _refinement_key(g: Graph, i: int) -> tuple:
    degs = sorted(g.degree(j) for j in _bits(g.rows[i]))
    return (g.degree(i), tuple(degs))


def _iso_map(g1: Graph, g2: Graph, fixed: tuple[int, int] | None = None):
    """Backtracking search for an edge-preserving bijection g1 -> g2.

    Returns the mapping list or None.  `fixed` forces one assignment, which is
    how the automorphism search pins vertex 0 to each target in turn.
    """
    n = g1.n
    k1 = [_refinement_key(g1, i) for i in range(n)]
    k2 = [_refinement_key(g2, i) for i in range(n)]
    if sorted(k1) != sorted(k2):
        return None
    candidates = [
        [j for j in range(n) if k2[j] == k1[i]]
        for i in range(n)
    ]
    if fixed is not None:
        u, v = fixed
        if v not in candidates[u]:
            return None
        candidates[u] = [v]
    # order vertices: fixed first, then by candidate scarcity, keeping
    # connectivity to already-placed vertices where possible
    order = sorted(range(n), key=lambda i: (0 if fixed and i == fixed[0] else 1, len(candidates[i])))
    placed = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            return True
        i = order[pos]
        for j in candidates[i]:
            if used[j]:
                continue
            ok = True
            for qpos in range(pos):
                q = order[qpos]
                if g1.has_edge(i, q) != g2.has_edge(j, placed[q]):
                    ok = False
                    break
            if ok:
                placed[i] = j
                used[j] = True
                if extend(pos + 1):
                    return True
                used[j] = False
                placed[i] = -1
        return False

    return placed if extend(0) else None


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n:
        return False
    if g1.n > ISO_MAX_VERTICES:
        raise GraphError(f"isomorphism search unsupported above {ISO_MAX_VERTICES} vertices")
    if g1.edge_count() != g2.edge_count():
        return False
    return _iso_map(g1, g2) is not None


def isomorphism_witness(g1: Graph, g2: Graph) -> list[int] | None:
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return None
    if g1.n > ISO_MAX_VERTICES:
        raise GraphError(f"isomorphism search unsupported above {ISO_MAX_VERTICES} vertices")
    return _iso_map(g1, g2)


def is_vertex_transitive(g: Graph) -> bool:
    if g.circulant_offsets is not None:
        return True
    m = g.edge_count()
    if m == 0 or m == g.n * (g.n - 1) // 2:
        return True
    if g.n > ISO_MAX_VERTICES:
        raise GraphError(
            f"vertex transitivity unsupported above {ISO_MAX_VERTICES} vertices "
            "unless the graph was built as a circulant"
        )
    for v in range(1, g.n):
        if _iso_map(g, g, fixed=(0, v)) is None:
            return False
    return True
