"""Labeled centered polytopes in combined vertex/facet form.

A centered polytope is stored with vertex columns ``v_i`` and facet normals
``a_j`` scaled so that ``P = {x : a_j . x <= 1}``; incidences are the pairs
``(i, j)`` with ``a_j . v_i == 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from typing import Iterable, Sequence

from .exact_arith import as_rational, format_rational, parse_rational
from .linalg import ExactMatrix, rank

__all__ = [
    "Combinatorics",
    "LabeledPolytope",
    "PolyCone",
    "NotCenteredError",
    "DegenerateError",
    "RealizationError",
    "facets_from_vertices",
    "verify_realization",
    "polar",
    "homogenize",
    "face_closure",
    "face_dimension",
    "classify_point",
    "slack_matrix",
    "edges",
    "ridges",
]


class NotCenteredError(ValueError):
    """The origin is not in the interior of the convex hull."""


class DegenerateError(ValueError):
    """The points do not affinely span the ambient space."""


class RealizationError(ValueError):
    """A matrix pair does not realize the stored incidence structure."""


Vector = tuple  # of Fraction


def _vec(v: Iterable) -> Vector:
    return tuple(as_rational(c) for c in v)


def _dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Combinatorics:
    """Labeled vertex-facet incidence structure of a d-polytope."""

    dim: int
    n: int
    m: int
    incidences: tuple[tuple[int, int], ...]

    def __post_init__(self):
        inc = tuple(sorted(set((int(i), int(j)) for i, j in self.incidences)))
        for i, j in inc:
            if not (0 <= i < self.n and 0 <= j < self.m):
                raise ValueError(f"incidence {(i, j)} out of range")
        object.__setattr__(self, "incidences", inc)

    @property
    def mu(self) -> int:
        return len(self.incidences)

    @cached_property
    def facets_of_vertex(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in range(self.n)]
        for i, j in self.incidences:
            out[i].add(j)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def vertices_of_facet(self) -> tuple[frozenset[int], ...]:
        out = [set() for _ in range(self.m)]
        for i, j in self.incidences:
            out[j].add(i)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def incidence_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.incidences)

    def transpose(self) -> "Combinatorics":
        return Combinatorics(self.dim, self.m, self.n, tuple((j, i) for i, j in self.incidences))

    def natural_guess(self) -> int:
        return self.dim * (self.n + self.m) - self.mu

    def is_simple(self) -> bool:
        return all(len(s) == self.dim for s in self.facets_of_vertex)

    def is_simplicial(self) -> bool:
        return all(len(s) == self.dim for s in self.vertices_of_facet)


@dataclass(frozen=True)
class LabeledPolytope:
    """Centered d-polytope with labeled vertices and facets.

    ``vertices[i]`` is the column ``v_i`` of V and ``facets[j]`` the column
    ``a_j`` of A.
    """

    dim: int
    vertices: tuple[Vector, ...]
    facets: tuple[Vector, ...]
    incidences: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(_vec(v) for v in self.vertices))
        object.__setattr__(self, "facets", tuple(_vec(a) for a in self.facets))
        object.__setattr__(self, "incidences", tuple(sorted(set(map(tuple, self.incidences)))))
        for v in self.vertices + self.facets:
            if len(v) != self.dim:
                raise ValueError("coordinate vector of wrong length")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.facets)

    @property
    def mu(self) -> int:
        return len(self.incidences)

    @cached_property
    def combinatorics(self) -> Combinatorics:
        return Combinatorics(self.dim, self.n, self.m, self.incidences)

    @property
    def V(self) -> ExactMatrix:
        """d x n vertex matrix."""
        return ExactMatrix(list(zip(*self.vertices)), self.n) if self.n else ExactMatrix.zeros(self.dim, 0)

    @property
    def A(self) -> ExactMatrix:
        """d x m facet-normal matrix."""
        return ExactMatrix(list(zip(*self.facets)), self.m) if self.m else ExactMatrix.zeros(self.dim, 0)

    def natural_guess(self) -> int:
        return self.combinatorics.natural_guess()

    def f_vector_counts(self) -> dict:
        return {"d": self.dim, "f0": self.n, "fd1": self.m, "mu": self.mu}

    def with_name(self, name: str) -> "LabeledPolytope":
        return LabeledPolytope(self.dim, self.vertices, self.facets, self.incidences, name)

    def translate(self, shift: Sequence) -> "LabeledPolytope":
        """Translate the vertices and recompute the facet description."""
        s = _vec(shift)
        return facets_from_vertices(self.dim, [tuple(a + b for a, b in zip(v, s)) for v in self.vertices])

    # -- serialization
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "name": self.name,
            "vertices": [[format_rational(c) for c in v] for v in self.vertices],
            "facets": [[format_rational(c) for c in a] for a in self.facets],
            "incidences": [list(p) for p in self.incidences],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LabeledPolytope":
        d = int(data["dim"])
        verts = [tuple(parse_rational(c) for c in v) for v in data["vertices"]]
        if "facets" not in data or "incidences" not in data:
            P = facets_from_vertices(d, verts)
            return P.with_name(data.get("name", ""))
        P = cls(
            d,
            verts,
            [tuple(parse_rational(c) for c in a) for a in data["facets"]],
            [tuple(p) for p in data["incidences"]],
            data.get("name", ""),
        )
        if not verify_realization(P, P.vertices, P.facets):
            raise RealizationError("stored facets/incidences do not match the vertices")
        # the stored normals must be exactly the facets of conv(V)
        Q = facets_from_vertices(d, verts)
        if sorted(Q.facets) != sorted(P.facets):
            raise RealizationError("stored facets are not the facets of the convex hull")
        return P


# ---------------------------------------------------------------------------
# facet enumeration


def _int_det(rows: list[list[int]]) -> int:
    """Bareiss determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    M = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        p = M[k][k]
        for i in range(k + 1, n):
            mik = M[i][k]
            Mi = M[i]
            Mk = M[k]
            for j in range(k + 1, n):
                Mi[j] = (p * Mi[j] - mik * Mk[j]) // prev
        prev = p
    return sign * M[n - 1][n - 1]


def _normal_through(points: list[list[int]]) -> list[int] | None:
    """Integer normal of the affine hyperplane through d points (None if degenerate)."""
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    d = len(base)
    normal = []
    for k in range(d):
        minor = [r[:k] + r[k + 1:] for r in diffs]
        c = _int_det(minor)
        normal.append(-c if k % 2 else c)
    if not any(normal):
        return None
    return normal


def _affine_rank(points: Sequence[Vector]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return 0
    return rank(ExactMatrix(diffs, len(base)))


def facets_from_vertices(dim: int, V) -> LabeledPolytope:
    """Enumerate the facets of conv(V) by brute force over d-subsets.

    ``V`` is either a d x n :class:`ExactMatrix` (columns are points) or a
    sequence of n points.  Points that are not vertices are rejected.
    """
    if isinstance(V, ExactMatrix):
        if V.nrows != dim:
            raise ValueError("vertex matrix must have d rows")
        pts = [tuple(V.column(i)) for i in range(V.ncols)]
    else:
        pts = [_vec(p) for p in V]
    if any(len(p) != dim for p in pts):
        raise ValueError("point of wrong dimension")
    n = len(pts)
    if n < dim + 1 or _affine_rank(pts) < dim:
        raise DegenerateError("points are not full-dimensional")

    scale = reduce(math.lcm, (c.denominator for p in pts for c in p), 1)
    ipts = [[int(c * scale) for c in p] for p in pts]
    # barycenter times n, compared against n * delta below
    bary = [sum(p[k] for p in ipts) for k in range(dim)]

    found: dict[tuple[int, ...], tuple[list[int], int]] = {}
    found_sets: list[frozenset[int]] = []
    for S in combinations(range(n), dim):
        if any(F.issuperset(S) for F in found_sets):
            continue
        normal = _normal_through([ipts[i] for i in S])
        if normal is None:
            continue
        delta = sum(a * b for a, b in zip(normal, ipts[S[0]]))
        if sum(a * b for a, b in zip(normal, bary)) > n * delta:
            normal = [-a for a in normal]
            delta = -delta
        on = []
        ok = True
        for i, p in enumerate(ipts):
            val = sum(a * b for a, b in zip(normal, p))
            if val > delta:
                ok = False
                break
            if val == delta:
                on.append(i)
        if not ok:
            continue
        key = tuple(on)
        if key in found:
            continue
        found[key] = (normal, delta)
        found_sets.append(frozenset(on))

    for normal, delta in found.values():
        if delta <= 0:
            raise NotCenteredError("origin is not in the interior of conv(V)")
    keys = sorted(found)
    covered = set(i for k in keys for i in k)
    if len(covered) != n:
        missing = sorted(set(range(n)) - covered)
        raise ValueError(f"points {missing} are not vertices of conv(V)")
    facets = []
    incidences = []
    for j, key in enumerate(keys):
        normal, delta = found[key]
        facets.append(tuple(Fraction(a * scale, delta) for a in normal))
        incidences.extend((i, j) for i in key)
    P = LabeledPolytope(dim, pts, facets, incidences)
    _check_vertices(P)
    return P


def _check_vertices(P: LabeledPolytope) -> None:
    # a point is a vertex iff the facets through it meet only in that point
    for i, fs in enumerate(P.combinatorics.facets_of_vertex):
        if len(fs) < P.dim or rank(ExactMatrix([P.facets[j] for j in fs], P.dim)) < P.dim:
            raise ValueError(f"point {i} is not a vertex of conv(V)")


def verify_realization(P, W, B) -> bool:
    """Check all incidence equalities and strict non-incidence inequalities.

    ``W`` and ``B`` are d x n and d x m matrices (or sequences of columns).
    """
    comb = P.combinatorics if isinstance(P, LabeledPolytope) else P
    Wc = _columns(W, comb.dim)
    Bc = _columns(B, comb.dim)
    if len(Wc) != comb.n or len(Bc) != comb.m:
        raise ValueError(f"shape mismatch: expected {comb.n} vertex and {comb.m} facet columns")
    inc = comb.incidence_set
    for i, w in enumerate(Wc):
        for j, b in enumerate(Bc):
            val = _dot(w, b)
            if (i, j) in inc:
                if val != 1:
                    return False
            elif not val < 1:
                return False
    return True


def _columns(M, d: int) -> list[Vector]:
    if isinstance(M, ExactMatrix):
        if M.nrows != d:
            raise ValueError(f"expected {d} rows, got {M.nrows}")
        return [M.column(i) for i in range(M.ncols)]
    cols = [tuple(c) for c in M]
    if any(len(c) != d for c in cols):
        raise ValueError("column of wrong length")
    return cols


def polar(P: LabeledPolytope) -> LabeledPolytope:
    """Swap vertices and facet normals; labels carry over."""
    return LabeledPolytope(P.dim, P.facets, P.vertices, [(j, i) for i, j in P.incidences],
                           f"polar({P.name})" if P.name else "")


# ---------------------------------------------------------------------------


def _primitive_int(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = reduce(math.lcm, (c.denominator for c in v), 1)
    ints = [int(c * den) for c in v]
    g = reduce(math.gcd, ints, 0)
    return tuple(c // g for c in ints) if g > 1 else tuple(ints)


@dataclass(frozen=True)
class PolyCone:
    """Pointed (d+1)-cone with rays ``w_i`` and normals ``b_j`` (``b . x <= 0``)."""

    dim: int
    rays: tuple[tuple[int, ...], ...]
    normals: tuple[tuple[int, ...], ...]
    incidences: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.rays)

    @property
    def m(self) -> int:
        return len(self.normals)

    @property
    def mu(self) -> int:
        return len(self.incidences)

    @property
    def W(self) -> ExactMatrix:
        return ExactMatrix(list(zip(*self.rays)), self.n)

    @property
    def B(self) -> ExactMatrix:
        return ExactMatrix(list(zip(*self.normals)), self.m)

    @property
    def ray_norms(self) -> tuple[int, ...]:
        return tuple(sum(c * c for c in w) for w in self.rays)

    @property
    def normal_norms(self) -> tuple[int, ...]:
        return tuple(sum(c * c for c in b) for b in self.normals)

    @cached_property
    def combinatorics(self) -> Combinatorics:
        # the incidence graph of the cone is the one of the polytope, so reuse the type
        return Combinatorics(self.dim - 1, self.n, self.m, self.incidences)

    def is_pointed(self) -> bool:
        return rank(ExactMatrix(self.normals, self.dim)) == self.dim


def homogenize(P: LabeledPolytope) -> PolyCone:
    """Cone over ``{1} x P``: rays ``(1, v_i)``, normals ``(-1, a_j)``, primitive integers."""
    rays = tuple(_primitive_int((Fraction(1),) + v) for v in P.vertices)
    normals = tuple(_primitive_int((Fraction(-1),) + a) for a in P.facets)
    C = PolyCone(P.dim + 1, rays, normals, P.incidences)
    inc = set(P.incidences)
    for i, w in enumerate(rays):
        for j, b in enumerate(normals):
            s = sum(x * y for x, y in zip(w, b))
            if ((i, j) in inc) != (s == 0) or s > 0:
                raise RealizationError(f"homogenization sign check failed at {(i, j)}")
    return C


# ---------------------------------------------------------------------------
# face queries


def _comb(P) -> Combinatorics:
    return P.combinatorics if isinstance(P, (LabeledPolytope, PolyCone)) else P


def containing_facets(P, S: Iterable[int]) -> frozenset[int]:
    comb = _comb(P)
    S = list(S)
    if not S:
        return frozenset(range(comb.m))
    fv = comb.facets_of_vertex
    return frozenset.intersection(*(fv[i] for i in S))


def face_closure(P, S: Iterable[int]) -> frozenset[int]:
    """Vertices lying on every facet that contains ``S`` (all vertices if none does)."""
    S = frozenset(S)
    if not S:
        raise ValueError("face_closure needs a nonempty vertex set")
    comb = _comb(P)
    fs = containing_facets(comb, S)
    if not fs:
        return frozenset(range(comb.n))
    vf = comb.vertices_of_facet
    return frozenset.intersection(*(vf[j] for j in fs))


def is_face(P, S: Iterable[int]) -> bool:
    S = frozenset(S)
    return bool(S) and bool(containing_facets(P, S)) and face_closure(P, S) == S


def face_dimension(P: LabeledPolytope, S: Iterable[int]) -> int:
    """Affine dimension of a face given by its vertex set."""
    S = frozenset(S)
    if face_closure(P, S) != S:
        raise ValueError("vertex set is not closed, so not a face")
    return _affine_rank([P.vertices[i] for i in sorted(S)])


def facet_set_face(P: LabeledPolytope, facets: Iterable[int]) -> frozenset[int] | None:
    """Vertex set of the face cut out by ``facets`` when they form its full facet set."""
    facets = frozenset(facets)
    comb = _comb(P)
    if not facets:
        return None
    verts = frozenset.intersection(*(comb.vertices_of_facet[j] for j in facets))
    if not verts or containing_facets(comb, verts) != facets:
        return None
    return verts


def edges(P: LabeledPolytope) -> list[tuple[int, int]]:
    """Vertex pairs that form 1-faces."""
    out = []
    for u, v in combinations(range(P.n), 2):
        if containing_facets(P, (u, v)) and face_closure(P, (u, v)) == {u, v}:
            out.append((u, v))
    return out


def ridges(P: LabeledPolytope) -> list[tuple[int, int]]:
    """Facet pairs meeting in a (d-2)-face."""
    comb = P.combinatorics
    out = []
    for F, G in combinations(range(P.m), 2):
        S = comb.vertices_of_facet[F] & comb.vertices_of_facet[G]
        if len(S) < P.dim - 1:
            continue
        if containing_facets(comb, S) != {F, G}:
            continue
        if _affine_rank([P.vertices[i] for i in sorted(S)]) == P.dim - 2:
            out.append((F, G))
    return out


def classify_point(P: LabeledPolytope, p: Sequence) -> list[str]:
    """Per facet: ``"beneath"``, ``"on"`` or ``"beyond"``."""
    p = _vec(p)
    if len(p) != P.dim:
        raise ValueError("point of wrong dimension")
    out = []
    for a in P.facets:
        val = _dot(a, p)
        out.append("beneath" if val < 1 else ("on" if val == 1 else "beyond"))
    return out


def slack_matrix(P: LabeledPolytope) -> ExactMatrix:
    """n x m matrix of ``1 - v_i . a_j``."""
    return ExactMatrix([[1 - _dot(v, a) for a in P.facets] for v in P.vertices], P.m)
