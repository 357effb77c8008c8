"""Degeneracy orderings of vertex-facet incidence graphs.

Nodes are ``Node(side, index)`` with side 0 for vertices and 1 for facets,
so the natural tuple order puts vertices before facets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Sequence

from .linalg import ExactMatrix, rank
from .polytope import (
    Combinatorics,
    LabeledPolytope,
    containing_facets,
    edges as polytope_edges,
    face_closure,
    face_dimension,
    facet_set_face,
    verify_realization,
)

__all__ = [
    "Node",
    "IncidenceGraph",
    "DegeneracyOrdering",
    "CriterionVerdict",
    "CriterionError",
    "EdgeRidgeError",
    "degeneracy_order",
    "lick_white_check",
    "almost3_test",
    "almost3_ordering",
    "check_criterion",
    "edge_removal_bound",
    "edge_ridge_order",
    "combinatorial_edges",
    "combinatorial_ridges",
]

VERTEX, FACET = 0, 1
_SIDE_NAME = {VERTEX: "vertex", FACET: "facet"}
_SIDE_CODE = {"vertex": VERTEX, "facet": FACET}


class Node(NamedTuple):
    side: int
    index: int

    def to_json(self) -> dict:
        return {"side": _SIDE_NAME[self.side], "index": self.index}

    @classmethod
    def from_json(cls, data: dict) -> "Node":
        return cls(_SIDE_CODE[data["side"]], int(data["index"]))

    def __str__(self):
        return f"{'v' if self.side == VERTEX else 'F'}{self.index}"


class CriterionError(ValueError):
    """An ordering fails the independence conditions at some node."""


class EdgeRidgeError(RuntimeError):
    """The edge-ridge expansion stalled before placing every node."""


@dataclass(frozen=True)
class IncidenceGraph:
    """Bipartite graph with ``n`` vertex nodes, ``m`` facet nodes and incidence edges."""

    n: int
    m: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_polytope(cls, P) -> "IncidenceGraph":
        comb_ = P if isinstance(P, Combinatorics) else P.combinatorics
        return cls(comb_.n, comb_.m, frozenset(comb_.incidences))

    def __post_init__(self):
        E = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in E:
            if not (0 <= i < self.n and 0 <= j < self.m):
                raise ValueError(f"edge {(i, j)} out of range")
        object.__setattr__(self, "edges", E)

    @property
    def nodes(self) -> list[Node]:
        return [Node(VERTEX, i) for i in range(self.n)] + [Node(FACET, j) for j in range(self.m)]

    @property
    def node_count(self) -> int:
        return self.n + self.m

    def adjacency(self, removed: Iterable[tuple[int, int]] = ()) -> dict[Node, set[Node]]:
        removed = set(map(tuple, removed))
        adj = {v: set() for v in self.nodes}
        for i, j in self.edges:
            if (i, j) in removed:
                continue
            adj[Node(VERTEX, i)].add(Node(FACET, j))
            adj[Node(FACET, j)].add(Node(VERTEX, i))
        return adj

    def degree(self, node: Node) -> int:
        if node.side == VERTEX:
            return sum(1 for i, _ in self.edges if i == node.index)
        return sum(1 for _, j in self.edges if j == node.index)

    def induced(self, keep: Iterable[Node]) -> tuple["IncidenceGraph", dict[Node, Node]]:
        """Subgraph on ``keep`` with relabeled nodes; returns the graph and new->old map."""
        keep = sorted(set(keep))
        vmap = {node.index: k for k, node in enumerate(x for x in keep if x.side == VERTEX)}
        fmap = {node.index: k for k, node in enumerate(x for x in keep if x.side == FACET)}
        E = [(vmap[i], fmap[j]) for i, j in self.edges if i in vmap and j in fmap]
        back = {Node(VERTEX, k): Node(VERTEX, i) for i, k in vmap.items()}
        back.update({Node(FACET, k): Node(FACET, j) for j, k in fmap.items()})
        return IncidenceGraph(len(vmap), len(fmap), frozenset(E)), back


@dataclass(frozen=True)
class DegeneracyOrdering:
    order: tuple[Node, ...]
    k: int
    removed_edges: tuple[tuple[int, int], ...] = field(default=())

    def position(self) -> dict[Node, int]:
        return {v: p for p, v in enumerate(self.order)}

    def later_neighbors(self, G: IncidenceGraph) -> dict[Node, list[Node]]:
        """Neighbors appearing after each node, with removed edges deleted."""
        pos = self.position()
        if set(pos) != set(G.nodes) or len(pos) != len(self.order):
            raise ValueError("ordering must list every node of the graph exactly once")
        adj = G.adjacency(self.removed_edges)
        return {v: sorted(u for u in adj[v] if pos[u] > pos[v]) for v in self.order}

    def back_degree(self, G: IncidenceGraph) -> int:
        later = self.later_neighbors(G)
        return max((len(s) for s in later.values()), default=0)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "order": [v.to_json() for v in self.order],
            "removed_edges": [list(e) for e in self.removed_edges],
        }

    @classmethod
    def from_json(cls, data) -> "DegeneracyOrdering":
        if isinstance(data, list):
            data = {"order": data}
        order = tuple(Node.from_json(v) for v in data["order"])
        removed = tuple(tuple(e) for e in data.get("removed_edges", []))
        return cls(order, int(data.get("k", -1)), removed)


def degeneracy_order(G: IncidenceGraph) -> DegeneracyOrdering:
    """Greedy minimum-degree removal; ties go to the smallest (side, index)."""
    adj = G.adjacency()
    alive = set(adj)
    deg = {v: len(adj[v]) for v in adj}
    order = []
    k = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        k = max(k, deg[v])
        order.append(v)
        alive.remove(v)
        for u in adj[v]:
            if u in alive:
                deg[u] -= 1
    return DegeneracyOrdering(tuple(order), k)


def lick_white_check(G: IncidenceGraph, k: int) -> int:
    """Slack of |E| <= k|V| - C(k+1, 2) for a k-degenerate graph with at least k nodes."""
    if G.node_count < k:
        raise ValueError("Lick-White bound needs at least k nodes")
    if degeneracy_order(G).k > k:
        raise ValueError(f"graph is not {k}-degenerate")
    slack = k * G.node_count - comb(k + 1, 2) - len(G.edges)
    if slack < 0:
        raise AssertionError("Lick-White inequality violated")
    return slack


def _comb_of(P) -> Combinatorics:
    return P if isinstance(P, Combinatorics) else P.combinatorics


def almost3_ordering(P, d: int | None = None) -> DegeneracyOrdering | None:
    """Degree-d nodes first, then a 3-degenerate order of the rest (None if the rest is not 3-degenerate)."""
    comb_ = _comb_of(P)
    d = comb_.dim if d is None else d
    G = IncidenceGraph.from_polytope(comb_)
    adj = G.adjacency()
    first = [v for v in G.nodes if len(adj[v]) == d]
    rest = [v for v in G.nodes if len(adj[v]) != d]
    H, back = G.induced(rest)
    sub = degeneracy_order(H)
    if sub.k > 3:
        return None
    order = tuple(first) + tuple(back[v] for v in sub.order)
    return DegeneracyOrdering(order, max(d if first else 0, sub.k))


def almost3_test(P, d: int | None = None) -> bool:
    """True iff removing the degree-d nodes leaves a 3-degenerate graph."""
    return almost3_ordering(P, d) is not None


# ---------------------------------------------------------------------------
# independence conditions


@dataclass(frozen=True)
class CriterionVerdict:
    passed: bool
    failing: tuple[Node, ...]
    combinatorial: bool
    back_degree: int
    dim: int
    uncertified: tuple[Node, ...] = ()

    @property
    def degenerate_ok(self) -> bool:
        return self.back_degree <= self.dim

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "failing": [v.to_json() for v in self.failing],
            "combinatorial": self.combinatorial,
            "uncertified": [v.to_json() for v in self.uncertified],
            "back_degree": self.back_degree,
            "d_degenerate": self.degenerate_ok,
        }


def _combinatorially_independent(P: LabeledPolytope, node: Node, later: Sequence[Node]) -> bool:
    """Realization-independent sufficient conditions for one node."""
    k = len(later)
    d = P.dim
    if k <= 3:
        return True
    if k > d:
        return False
    idx = [u.index for u in later]
    if node.side == FACET:
        # some k-1 of the later vertices form a (k-2)-face
        for sub in combinations(idx, k - 1):
            S = frozenset(sub)
            if containing_facets(P, S) and face_closure(P, S) == S and face_dimension(P, S) == k - 2:
                return True
        return False
    # some k-1 of the later facets are the facet set of a (d-k+1)-face
    for sub in combinations(idx, k - 1):
        verts = facet_set_face(P, sub)
        if verts is not None and face_dimension(P, verts) == d - k + 1:
            return True
    return False


def check_criterion(P: LabeledPolytope, ordering: DegeneracyOrdering, W=None, B=None) -> CriterionVerdict:
    """Check the later-neighbor independence conditions at one realization.

    Facet nodes need their later vertices independent, vertex nodes their later
    facet normals.  ``combinatorial`` is true when every node is also covered
    by a realization-independent sufficient condition.
    """
    G = IncidenceGraph.from_polytope(P)
    later = ordering.later_neighbors(G)
    Wc = [tuple(v) for v in (P.vertices if W is None else _cols(W))]
    Bc = [tuple(a) for a in (P.facets if B is None else _cols(B))]
    if W is not None or B is not None:
        if not verify_realization(P, Wc, Bc):
            raise ValueError("(W, B) is not a realization of P")
    failing = []
    uncertified = []
    for node in ordering.order:
        nb = later[node]
        if not nb:
            continue
        vecs = [Bc[u.index] if u.side == FACET else Wc[u.index] for u in nb]
        if len(vecs) > P.dim or rank(ExactMatrix(vecs, P.dim)) < len(vecs):
            failing.append(node)
        if not _combinatorially_independent(P, node, nb):
            uncertified.append(node)
    back = max((len(s) for s in later.values()), default=0)
    return CriterionVerdict(
        passed=not failing,
        failing=tuple(failing),
        combinatorial=not uncertified and back <= P.dim,
        back_degree=back,
        dim=P.dim,
        uncertified=tuple(uncertified),
    )


def _cols(M):
    if isinstance(M, ExactMatrix):
        return [M.column(i) for i in range(M.ncols)]
    return list(M)


def edge_removal_bound(P: LabeledPolytope, ordering: DegeneracyOrdering, W=None, B=None) -> int:
    """NG(P) + r, certified by a passing check after deleting the r removed edges."""
    inc = set(P.incidences)
    for e in ordering.removed_edges:
        if tuple(e) not in inc:
            raise ValueError(f"removed edge {tuple(e)} is not an incidence")
    verdict = check_criterion(P, ordering, W, B)
    if not verdict.passed:
        raise CriterionError(f"independence fails at node {verdict.failing[0]}")
    if not verdict.degenerate_ok:
        raise CriterionError(f"ordering is only {verdict.back_degree}-degenerate")
    return P.natural_guess() + len(set(map(tuple, ordering.removed_edges)))


# ---------------------------------------------------------------------------
# edge-ridge expansion


def combinatorial_edges(P) -> list[tuple[int, int]]:
    """Vertex pairs that are closed under the face closure (1-faces)."""
    comb_ = _comb_of(P)
    if isinstance(P, LabeledPolytope):
        return polytope_edges(P)
    out = []
    for u, v in combinations(range(comb_.n), 2):
        if containing_facets(comb_, (u, v)) and face_closure(comb_, (u, v)) == {u, v}:
            out.append((u, v))
    return out


def combinatorial_ridges(P) -> list[tuple[int, int]]:
    """Facet pairs whose common face lies in no third facet."""
    comb_ = _comb_of(P)
    out = []
    for F, G in combinations(range(comb_.m), 2):
        S = comb_.vertices_of_facet[F] & comb_.vertices_of_facet[G]
        if S and containing_facets(comb_, S) == {F, G}:
            out.append((F, G))
    return out


def edge_ridge_order(P, relaxed: bool = True) -> DegeneracyOrdering:
    """Ordering grown from an edge and two facets through it.

    Seeds ``v, u, F, G`` with ``{v, u}`` the smallest edge and ``F, G`` the two
    smallest facets containing it.  Then repeatedly place the smallest
    unplaced facet containing a placed edge, or failing that the smallest
    unplaced vertex of a ridge whose two facets are placed.  The four seed
    incidences are the removed edges.

    If that rule stalls (it does for 3-polytopes, where ridges are edges) and
    ``relaxed`` is set, the unplaced node with the most placed neighbors is
    taken next, facets before vertices; the ordering is then only as good as
    :func:`check_criterion` says.
    """
    comb_ = _comb_of(P)
    E = combinatorial_edges(P)
    R = combinatorial_ridges(comb_)
    if not E:
        raise EdgeRidgeError("polytope has no edges")
    v, u = E[0]
    through = sorted(containing_facets(comb_, (v, u)))
    if len(through) < 2:
        raise EdgeRidgeError("seed edge lies in fewer than two facets")
    F, G = through[:2]
    order = [Node(VERTEX, v), Node(VERTEX, u), Node(FACET, F), Node(FACET, G)]
    placed_v = {v, u}
    placed_f = {F, G}
    facets_of_edge = {e: containing_facets(comb_, e) for e in E}
    ridge_vertices = {r: comb_.vertices_of_facet[r[0]] & comb_.vertices_of_facet[r[1]] for r in R}
    while len(placed_v) < comb_.n or len(placed_f) < comb_.m:
        cand_f = {
            j for e, fs in facets_of_edge.items()
            if e[0] in placed_v and e[1] in placed_v for j in fs if j not in placed_f
        }
        if cand_f:
            j = min(cand_f)
            placed_f.add(j)
            order.append(Node(FACET, j))
            continue
        cand_v = {
            i for r, vs in ridge_vertices.items()
            if r[0] in placed_f and r[1] in placed_f for i in vs if i not in placed_v
        }
        if cand_v:
            i = min(cand_v)
            placed_v.add(i)
            order.append(Node(VERTEX, i))
            continue
        if not relaxed:
            raise EdgeRidgeError("edge-ridge graph disconnected: expansion stalled")
        best = min(
            [(-len(comb_.vertices_of_facet[j] & placed_v), FACET, j) for j in range(comb_.m) if j not in placed_f]
            + [(-len(comb_.facets_of_vertex[i] & placed_f), VERTEX, i) for i in range(comb_.n) if i not in placed_v]
        )
        _, side, idx = best
        (placed_f if side == FACET else placed_v).add(idx)
        order.append(Node(side, idx))
    removed = tuple(sorted((a, b) for a in (v, u) for b in (F, G)))
    ordering = DegeneracyOrdering(tuple(order), 0, removed)
    k = ordering.back_degree(IncidenceGraph.from_polytope(comb_))
    return DegeneracyOrdering(tuple(order), k, removed)


def hypersimplex_ordering(P: LabeledPolytope) -> DegeneracyOrdering:
    """Simplex facets first, then all vertices, then the remaining facets.

    This is the ordering used for hypersimplices Delta_d(2): the simplex
    facets are of type Delta_{d-1}(1).
    """
    comb_ = P.combinatorics
    simplex_f = [j for j in range(P.m) if len(comb_.vertices_of_facet[j]) == P.dim]
    other_f = [j for j in range(P.m) if len(comb_.vertices_of_facet[j]) != P.dim]
    order = tuple(
        [Node(FACET, j) for j in simplex_f]
        + [Node(VERTEX, i) for i in range(P.n)]
        + [Node(FACET, j) for j in other_f]
    )
    o = DegeneracyOrdering(order, 0)
    return DegeneracyOrdering(order, o.back_degree(IncidenceGraph.from_polytope(P)))


__all__.append("hypersimplex_ordering")
