"""Exact constructors for the example polytopes and the 24-cell families."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Sequence

from .exact_arith import RatFunc, UniPoly, as_rational
from .linalg import ExactMatrix, rref
from .polytope import (
    LabeledPolytope,
    NotCenteredError,
    classify_point,
    facets_from_vertices,
    polar,
    verify_realization,
)

__all__ = [
    "FamilyPoint24",
    "SymbolicRealization",
    "centered",
    "cube",
    "simplex",
    "cross_polytope",
    "hypersimplex",
    "pyramid",
    "bipyramid",
    "prism",
    "cyclic",
    "polygon",
    "p1",
    "p2",
    "p3",
    "P3_APEX",
    "search_p3_apex",
    "regular_24cell",
    "paffenholz_24cell",
    "family_24cell",
    "family_24cell_symbolic",
    "FAMILY_SIGNS",
    "ncp_counts",
    "build",
    "CONSTRUCTORS",
]


def _barycenter(pts):
    n = len(pts)
    return tuple(sum(p[k] for p in pts) / n for k in range(len(pts[0])))


def centered(dim: int, pts, name: str = "") -> LabeledPolytope:
    """Facet description of conv(pts), translating by the barycenter if the origin is not interior."""
    pts = [tuple(as_rational(c) for c in p) for p in pts]
    try:
        P = facets_from_vertices(dim, pts)
    except NotCenteredError:
        b = _barycenter(pts)
        P = facets_from_vertices(dim, [tuple(c - o for c, o in zip(p, b)) for p in pts])
    return P.with_name(name)


def cube(d: int) -> LabeledPolytope:
    if d < 1:
        raise ValueError("d >= 1 required")
    return centered(d, list(product((-1, 1), repeat=d)), f"cube({d})")


def simplex(d: int) -> LabeledPolytope:
    """e_1, ..., e_d and -(1,...,1); the vertex sum is zero, so it is centered."""
    if d < 1:
        raise ValueError("d >= 1 required")
    pts = [tuple(int(i == k) for k in range(d)) for i in range(d)]
    pts.append(tuple(-1 for _ in range(d)))
    return centered(d, pts, f"simplex({d})")


def cross_polytope(d: int) -> LabeledPolytope:
    if d < 1:
        raise ValueError("d >= 1 required")
    pts = []
    for i in range(d):
        for s in (1, -1):
            pts.append(tuple(s if k == i else 0 for k in range(d)))
    return centered(d, pts, f"cross_polytope({d})")


def polygon(k: int) -> LabeledPolytope:
    """A k-gon: a fixed lattice triangle for k = 3, points on a parabola otherwise."""
    if k < 3:
        raise ValueError("polygon needs k >= 3")
    if k == 3:
        pts = [(1, 0), (0, 1), (-1, -1)]
    else:
        pts = [(t, t * t) for t in range(k)]
    return centered(2, pts, f"polygon({k})")


def hypersimplex(d: int, k: int) -> LabeledPolytope:
    """Delta_d(k) mapped into R^(d-1): subtract the barycenter, drop the last coordinate."""
    if not 1 <= k <= d - 1:
        raise ValueError("hypersimplex needs 1 <= k <= d-1")
    raw = []
    for S in combinations(range(d), k):
        raw.append(tuple(1 if i in S else 0 for i in range(d)))
    c = Fraction(k, d)
    pts = [tuple(Fraction(v) - c for v in p[:-1]) for p in raw]
    return centered(d - 1, pts, f"hypersimplex({d},{k})")


def _lift(Q: LabeledPolytope, h) -> list[tuple]:
    return [v + (as_rational(h),) for v in Q.vertices]


def pyramid(Q: LabeledPolytope, apex: Sequence | None = None) -> LabeledPolytope:
    d = Q.dim + 1
    apex = tuple(as_rational(c) for c in (apex if apex is not None else (0,) * Q.dim + (1,)))
    if len(apex) != d:
        raise ValueError("apex has wrong dimension")
    if apex[-1] == 0:
        raise ValueError("apex lies in the hyperplane of the base")
    return centered(d, _lift(Q, 0) + [apex], f"pyr({Q.name})")


def bipyramid(Q: LabeledPolytope, apex_plus: Sequence | None = None,
              apex_minus: Sequence | None = None) -> LabeledPolytope:
    d = Q.dim + 1
    top = tuple(as_rational(c) for c in (apex_plus if apex_plus is not None else (0,) * Q.dim + (1,)))
    bot = tuple(as_rational(c) for c in (apex_minus if apex_minus is not None else (0,) * Q.dim + (-1,)))
    if not (top[-1] > 0 > bot[-1]):
        raise ValueError("apexes must lie strictly on opposite sides of the base")
    # the segment must cross the base hyperplane in the interior of Q
    lam = top[-1] / (top[-1] - bot[-1])
    cross = tuple(t + lam * (b - t) for t, b in zip(top[:-1], bot[:-1]))
    for j, where in enumerate(classify_point(Q, cross)):
        if where != "beneath":
            raise ValueError(f"apex segment meets the base outside its interior (facet {j} is {where})")
    return centered(d, _lift(Q, 0) + [top, bot], f"bipyr({Q.name})")


def prism(Q: LabeledPolytope) -> LabeledPolytope:
    return centered(Q.dim + 1, _lift(Q, -1) + _lift(Q, 1), f"prism({Q.name})")


def cyclic(d: int, n: int) -> LabeledPolytope:
    """Moment-curve points (t, t^2, ..., t^d) for t = 1..n, centered at the barycenter."""
    if not n > d >= 2:
        raise ValueError("cyclic polytope needs n > d >= 2")
    pts = [tuple(Fraction(t) ** e for e in range(1, d + 1)) for t in range(1, n + 1)]
    b = _barycenter(pts)
    pts = [tuple(c - o for c, o in zip(p, b)) for p in pts]
    return centered(d, pts, f"cyclic({d},{n})")


# ---------------------------------------------------------------------------
# the three 8-vertex examples


def _from_rows(rows: Sequence[Sequence]) -> list[tuple]:
    """Columns of a matrix given by rows."""
    return [tuple(as_rational(c) for c in col) for col in zip(*rows)]


_PRISM_ROWS = (
    (-1, -1, -1, 1, 1, 1),
    (1, -1, 0, 1, -1, 0),
    (1, 1, -1, 1, 1, -1),
    (0, 0, 0, 0, 0, 0),
)


def p1() -> LabeledPolytope:
    rows = [r + e for r, e in zip(_PRISM_ROWS, ((1, 1), (0, 0), (0, 0), (-1, 1)))]
    P = centered(4, _from_rows(rows), "P1")
    _expect_counts(P, 8, 9, 43)
    return P


def p2() -> LabeledPolytope:
    rows = [r + e for r, e in zip(_PRISM_ROWS, ((0, 0), (0, 0), (0, 0), (-1, 1)))]
    P = centered(4, _from_rows(rows), "P2")
    _expect_counts(P, 8, 10, 46)
    return P


def _pyr_prism_base() -> list[tuple]:
    rows = [r + e for r, e in zip(_PRISM_ROWS, ((0,), (0,), (0,), (-1,)))]
    return _from_rows(rows)


# Found by search_p3_apex() and frozen here.
P3_APEX = (Fraction(-2), Fraction(0), Fraction(0), Fraction(1, 2))


def _p3_signature(base: LabeledPolytope, point) -> bool:
    """Beyond the prism facet, beyond exactly one simplex facet, beneath the rest."""
    where = classify_point(base, point)
    comb_ = base.combinatorics
    prism_facets = [j for j in range(base.m) if len(comb_.vertices_of_facet[j]) == 6]
    simplex_facets = [j for j in range(base.m) if len(comb_.vertices_of_facet[j]) == 4]
    if len(prism_facets) != 1 or len(simplex_facets) != 2:
        raise AssertionError("base is not a pyramid over a triangular prism")
    beyond = {j for j, w in enumerate(where) if w == "beyond"}
    if "on" in where:
        return False
    return (prism_facets[0] in beyond and len(beyond & set(simplex_facets)) == 1 and len(beyond) == 2)


def search_p3_apex(max_shift: int = 3):
    """Scan the P2 apex shifted along the last axis and by small lattice vectors.

    Candidates are ordered by the L1 norm of the lattice shift, then
    lexicographically, then by the vertical offset.
    """
    base_pts = _pyr_prism_base()
    b = _barycenter(base_pts)
    shifted = [tuple(c - o for c, o in zip(p, b)) for p in base_pts]
    base = facets_from_vertices(4, shifted)
    apex = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
    offsets = [Fraction(t, 2) for t in (0, -1, 1, 2, 4)]
    shifts = sorted(
        (s for s in product(range(-max_shift, max_shift + 1), repeat=4) if sum(map(abs, s)) <= max_shift),
        key=lambda s: (sum(map(abs, s)), s),
    )
    for s in shifts:
        for t in offsets:
            p = tuple(a + c for a, c in zip(apex, s))
            p = p[:3] + (p[3] + t,)
            if not _p3_signature(base, tuple(c - o for c, o in zip(p, b))):
                continue
            P = centered(4, base_pts + [p])
            if (P.n, P.m, P.mu) == (8, 11, 50):
                return p
    return None


def p3() -> LabeledPolytope:
    P = centered(4, _pyr_prism_base() + [P3_APEX], "P3")
    _expect_counts(P, 8, 11, 50)
    return P


def _expect_counts(P: LabeledPolytope, n: int, m: int, mu: int) -> None:
    if (P.n, P.m, P.mu) != (n, m, mu):
        raise ValueError(f"{P.name}: expected counts {(n, m, mu)}, got {(P.n, P.m, P.mu)}")


# ---------------------------------------------------------------------------
# 24-cells


def regular_24cell() -> LabeledPolytope:
    pts = []
    for i, j in combinations(range(4), 2):
        for si, sj in product((1, -1), repeat=2):
            v = [0, 0, 0, 0]
            v[i], v[j] = si, sj
            pts.append(tuple(v))
    P = centered(4, pts, "24cell-regular")
    _expect_counts(P, 24, 24, 144)
    return P


_PAFFENHOLZ_CUBE = (
    (-1, -1, -1, -1), (1, 1, -1, -1), (1, -1, 1, -1), (-1, 1, 1, -1),
    (1, -1, -1, 1), (-1, 1, -1, 1), (-1, -1, 1, 1), (1, 1, 1, 1),
    (1, -1, -1, -1), (-1, 1, -1, -1), (-1, -1, 1, -1), (1, 1, 1, -1),
    (-1, -1, -1, 1), (1, 1, -1, 1), (1, -1, 1, 1), (-1, 1, 1, 1),
)


def paffenholz_24cell(a=0, b=0, c=0, d=0) -> LabeledPolytope:
    """Cube vertices plus the reflections of (a,b,c,d) in the 8 facet hyperplanes of [-1,1]^4."""
    a, b, c, d = (as_rational(v) for v in (a, b, c, d))
    if not all(-1 < v < 1 for v in (a, b, c, d)):
        raise ValueError("Paffenholz parameters must lie in (-1, 1)^4")
    extra = [
        (a, b, c, -d - 2), (a, b, -c + 2, d), (a, b, c, -d + 2), (a, b, -c - 2, d),
        (a, -b + 2, c, d), (-a - 2, b, c, d), (a, -b - 2, c, d), (-a + 2, b, c, d),
    ]
    pts = list(_PAFFENHOLZ_CUBE) + extra
    P = centered(4, pts, f"24cell-paffenholz({a},{b},{c},{d})")
    if (P.n, P.m, P.mu) != (24, 24, 144):
        raise ValueError(f"parameters {(a, b, c, d)} do not give a 24-cell: counts {(P.n, P.m, P.mu)}")
    _check_24cell_type(P)
    return P


FAMILY_SIGNS = tuple(product((1, -1), repeat=3))


@dataclass(frozen=True)
class FamilyPoint24:
    signs: tuple[int, int, int]
    x: Fraction

    def __post_init__(self):
        s = tuple(int(v) for v in self.signs)
        if len(s) != 3 or any(v not in (-1, 1) for v in s):
            raise ValueError("signs must be three values in {-1, +1}")
        x = as_rational(self.x)
        if not 0 <= x < 1:
            raise ValueError("family parameter must satisfy 0 <= x < 1")
        object.__setattr__(self, "signs", s)
        object.__setattr__(self, "x", x)

    @property
    def a(self) -> Fraction:
        return 2 / (self.x * self.x + 1)

    @property
    def t(self) -> Fraction:
        return 2 * self.x / (self.x * self.x + 1)


def _family_rows(signs, a, t):
    s1, s2, s3 = signs
    cube_pts = [tuple(p) for p in product((-1, 1), repeat=4)]
    extra = [
        (-a, -s1 * t, -s2 * t, -s3 * t),
        (a, s1 * t, s2 * t, s3 * t),
        (s1 * t, -a, s3 * t, -s2 * t),
        (-s1 * t, a, -s3 * t, s2 * t),
        (s2 * t, -s3 * t, -a, s1 * t),
        (-s2 * t, s3 * t, a, -s1 * t),
        (s3 * t, s2 * t, -s1 * t, -a),
        (-s3 * t, -s2 * t, s1 * t, a),
    ]
    return cube_pts, extra


def _check_24cell_type(P: LabeledPolytope) -> None:
    comb_ = P.combinatorics
    if not all(len(s) == 6 for s in comb_.vertices_of_facet) or not all(len(s) == 6 for s in comb_.facets_of_vertex):
        raise ValueError("not combinatorially a 24-cell")


def family_24cell(signs=(1, 1, 1), x=Fraction(1, 2)) -> LabeledPolytope:
    """One member of the eight 1-parameter families; x = 0 is a regular realization."""
    pt = signs if isinstance(signs, FamilyPoint24) else FamilyPoint24(tuple(signs), x)
    cube_pts, extra = _family_rows(pt.signs, pt.a, pt.t)
    tag = ",".join("+" if s > 0 else "-" for s in pt.signs)
    P = centered(4, [tuple(Fraction(c) for c in p) for p in cube_pts] + extra,
                 f"24cell-family({tag};x={pt.x})")
    _expect_counts(P, 24, 24, 144)
    _check_24cell_type(P)
    return P


@dataclass(frozen=True)
class SymbolicRealization:
    """Vertex and facet columns over Q(x) with a fixed incidence structure."""

    dim: int
    vertices: tuple[tuple[RatFunc, ...], ...]
    facets: tuple[tuple[RatFunc, ...], ...]
    incidences: tuple[tuple[int, int], ...]
    name: str = ""

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.facets)

    @property
    def combinatorics(self):
        from .polytope import Combinatorics

        return Combinatorics(self.dim, self.n, self.m, self.incidences)

    @property
    def V(self) -> ExactMatrix:
        return ExactMatrix(list(zip(*self.vertices)), self.n, "Q(x)")

    @property
    def A(self) -> ExactMatrix:
        return ExactMatrix(list(zip(*self.facets)), self.m, "Q(x)")

    def at(self, x0) -> LabeledPolytope:
        x0 = as_rational(x0)
        return LabeledPolytope(
            self.dim,
            [tuple(v(x0) for v in col) for col in self.vertices],
            [tuple(v(x0) for v in col) for col in self.facets],
            self.incidences,
            f"{self.name}@{x0}",
        )


def family_24cell_symbolic(signs=(1, 1, 1), sample=Fraction(1, 2)) -> SymbolicRealization:
    """Vertex and facet matrices over Q(x) for one sign family.

    Facet labels follow the incidence sets at ``sample``; each facet normal is
    solved over Q(x) from four incident vertices that are independent there.
    """
    X = RatFunc.x()
    a = RatFunc(UniPoly.constant(2), UniPoly((1, 0, 1)))
    t = a * X
    signs = FamilyPoint24(tuple(signs), sample).signs
    cube_pts, extra = _family_rows(signs, a, t)
    verts = [tuple(RatFunc.constant(c) for c in p) for p in cube_pts] + [tuple(p) for p in extra]
    ref = family_24cell(signs, sample)
    one = RatFunc.constant(1)
    facets = []
    for j, vs in enumerate(ref.combinatorics.vertices_of_facet):
        for S in combinations(sorted(vs), 4):
            M = ExactMatrix([verts[i] + (one,) for i in S], 5, "Q(x)")
            R, r, piv = rref(M)
            if r == 4 and list(piv) == [0, 1, 2, 3]:
                facets.append(tuple(R[k, 4] for k in range(4)))
                break
        else:
            raise ArithmeticError(f"no independent vertex quadruple on facet {j}")
    tag = ",".join("+" if s > 0 else "-" for s in signs)
    S = SymbolicRealization(4, tuple(verts), tuple(facets), ref.incidences, f"24cell-family({tag})")
    # the incidence equations must hold identically in x
    for i, j in S.incidences:
        val = sum((p * q for p, q in zip(S.vertices[i], S.facets[j])), RatFunc.constant(0))
        if val != one:
            raise ArithmeticError(f"incidence {(i, j)} does not hold identically")
    if not verify_realization(S.at(sample), S.at(sample).vertices, S.at(sample).facets):
        raise ArithmeticError("symbolic realization fails at the sample point")
    return S


def ncp_counts(d: int, n: int) -> dict:
    """Vertex, facet and incidence counts of the neighborly cubical d-polytope with 2^n vertices.

    Only the counts are produced; the polytope itself is not built.
    """
    if not n >= d >= 2:
        raise ValueError("need n >= d >= 2")
    fd1 = 2 * d + 4 * sum(
        (comb(d // 2 + p + 1, p + 2) + comb((d + 1) // 2 + p, p + 2)) * 2 ** p for p in range(n - d)
    )
    f0 = 2 ** n
    mu = 2 ** (d - 1) * fd1
    return {"d": d, "n": f0, "m": fd1, "mu": mu, "ng": d * (f0 + fd1) - mu}


# ---------------------------------------------------------------------------
# name registry for the command line


def _signs_arg(text) -> tuple:
    if isinstance(text, (tuple, list)):
        return tuple(int(v) for v in text)
    out = []
    for tok in str(text).split(","):
        tok = tok.strip()
        out.append({"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}[tok])
    return tuple(out)


def build(name: str, **params) -> LabeledPolytope:
    """Construct a polytope by registry name with string or numeric parameters."""
    if name not in CONSTRUCTORS:
        raise KeyError(f"unknown construction {name!r}; choose from {sorted(CONSTRUCTORS)}")
    return CONSTRUCTORS[name](**params)


def _int(p, key, default):
    return int(p.get(key, default))


CONSTRUCTORS = {
    "cube": lambda **p: cube(_int(p, "d", 3)),
    "simplex": lambda **p: simplex(_int(p, "d", 3)),
    "cross-polytope": lambda **p: cross_polytope(_int(p, "d", 3)),
    "hypersimplex": lambda **p: hypersimplex(_int(p, "d", 5), _int(p, "k", 2)),
    "cyclic": lambda **p: cyclic(_int(p, "d", 4), _int(p, "n", 8)),
    "cyclic-polar": lambda **p: polar(cyclic(_int(p, "d", 3), _int(p, "n", 6))),
    "polygon": lambda **p: polygon(_int(p, "k", 3)),
    "prism-triangle": lambda **p: prism(polygon(3)),
    "pyr-prism-triangle": lambda **p: pyramid(prism(polygon(3))),
    "bipyr-prism-triangle": lambda **p: bipyramid(prism(polygon(3))),
    "p1": lambda **p: p1(),
    "p2": lambda **p: p2(),
    "p3": lambda **p: p3(),
    "24cell-regular": lambda **p: regular_24cell(),
    "24cell-paffenholz": lambda **p: paffenholz_24cell(
        *(as_rational(v) for v in (p.get("params") or "0,0,0,0").split(","))
        if isinstance(p.get("params"), str) else (p.get("params") or (0, 0, 0, 0))),
    "24cell-family": lambda **p: family_24cell(_signs_arg(p.get("signs", "+,+,+")), as_rational(p.get("x", "1/2"))),
}
