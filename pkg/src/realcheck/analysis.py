"""Reports, tangent-space limits along the 24-cell families, and batch screening."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .constructions import FAMILY_SIGNS, family_24cell, family_24cell_symbolic
from .degeneracy import almost3_ordering, check_criterion, degeneracy_order, IncidenceGraph
from .exact_arith import format_rational, limit_at_zero, order_at_zero, scale_by_x_power
from .jacobian import build_jacobian, jacobian_verdict, natural_guess
from .linalg import (
    ExactMatrix,
    LimitDegenerateError,
    Subspace,
    gram_schmidt,
    intersect,
    kernel_basis,
    kernel_limit_at_zero,
    limit_of_row_span,
    rank_via_interpolation,
)
from .polytope import LabeledPolytope

__all__ = [
    "AnalysisReport",
    "analyze",
    "symbolic_family_jacobian",
    "tangent_limit",
    "nonsmoothness_certificate",
    "RG_POINTS",
    "rg_vertices",
    "lin_L",
    "rg_section",
    "batch_screen",
    "LimitDegenerateError",
]

LIMIT_DIM = 48


@dataclass(frozen=True)
class AnalysisReport:
    counts: dict
    ng: int
    jacobian_rank: int
    verdicts: dict
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "counts": dict(self.counts),
            "ng": self.ng,
            "jacobian_rank": self.jacobian_rank,
            "verdicts": dict(self.verdicts),
            "provenance": dict(self.provenance),
        }


def analyze(P: LabeledPolytope, provenance: dict | None = None) -> AnalysisReport:
    """Counts, natural guess, Jacobian rank and the degeneracy verdicts for P."""
    v = jacobian_verdict(P, tangent=False)
    ng = natural_guess(P.n, P.m, P.mu, P.dim)
    order = almost3_ordering(P)
    checked = None
    if order is None:
        # fall back to a minimum-degree order when it is d-degenerate
        cand = degeneracy_order(IncidenceGraph.from_polytope(P))
        if cand.k <= P.dim:
            order = cand
    if order is not None:
        checked = check_criterion(P, order).passed
    counts = {"d": P.dim, "n": P.n, "m": P.m, "mu": P.mu, "f0": P.n, "f_d-1": P.m}
    verdicts = {
        "jacobian_full": v.full_rank,
        "almost3": almost3_ordering(P) is not None,
        "degeneracy_checked": checked,
        "upper_bound": v.upper_bound,
    }
    prov = {"name": P.name} if provenance is None else dict(provenance)
    return AnalysisReport(counts, ng, v.rank, verdicts, prov)


# ---------------------------------------------------------------------------
# tangent limits along the eight families


def symbolic_family_jacobian(signs) -> ExactMatrix:
    S = family_24cell_symbolic(tuple(signs))
    return build_jacobian(S.combinatorics, S.vertices, S.facets).matrix


def _normalized_limit(K: ExactMatrix) -> ExactMatrix:
    """Scale each row by x^(-min order) and evaluate at 0."""
    out = []
    for row in K.rows():
        v = min(order_at_zero(e) for e in row if e)
        out.append(tuple(limit_at_zero(scale_by_x_power(e, -v)) if e else Fraction(0) for e in row))
    return ExactMatrix(out, K.ncols)


def tangent_limit(signs, method: str = "series", *, orthogonalize: bool = False,
                  reduce: bool = True, degree_bound: int | None = None, jobs: int = 1) -> Subspace:
    """Limit at x = 0 of the 48-dimensional tangent spaces of one sign family.

    ``method="series"`` computes the limit exactly from truncated power
    series solutions.  ``method="interpolation"`` reconstructs a kernel basis
    over Q(x), order-normalizes each row and evaluates at 0; with
    ``orthogonalize`` the basis is first Gram-Schmidt orthogonalized.  When
    the values at 0 are dependent, ``reduce`` repairs the basis with
    :func:`limit_of_row_span`; with ``reduce=False`` the plain evaluation is
    kept as is.  Raises :class:`LimitDegenerateError` if the limit has dimension below 48.
    """
    if method not in ("series", "interpolation"):
        raise ValueError(f"unknown method {method!r}")
    J = symbolic_family_jacobian(signs)
    r, _ = rank_via_interpolation(J, degree_bound, jobs=jobs)
    if J.ncols - r != LIMIT_DIM:
        raise LimitDegenerateError(f"generic kernel has dimension {J.ncols - r}, expected {LIMIT_DIM}")
    if method == "series":
        return kernel_limit_at_zero(J, generic_rank=r)
    _, K = rank_via_interpolation(J, degree_bound, kernel=True, jobs=jobs)
    if orthogonalize:
        K = gram_schmidt(K)
    L = limit_of_row_span(K)[0] if reduce else Subspace(_normalized_limit(K))
    if L.dim < LIMIT_DIM:
        raise LimitDegenerateError(f"limit degenerates: rank {L.dim} < {LIMIT_DIM}")
    return L


def _limit_job(args):
    signs, method = args
    return tangent_limit(signs, method)


def _sign_tag(signs) -> str:
    return ",".join("+" if s > 0 else "-" for s in signs)


def _basis_json(S: Subspace) -> list:
    return [[format_rational(v) for v in r] for r in S.basis.rows()]


def nonsmoothness_certificate(method: str = "series", jobs: int = 1, limits: dict | None = None) -> dict:
    """Compare the eight limit tangent spaces at the regular point x = 0."""
    if limits is None:
        args = [(s, method) for s in FAMILY_SIGNS]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                res = list(ex.map(_limit_job, args))
        else:
            res = [_limit_job(a) for a in args]
        limits = dict(zip(FAMILY_SIGNS, res))
    regular = family_24cell(FAMILY_SIGNS[0], 0)
    K0 = kernel_basis(build_jacobian(regular).matrix)
    # classes numbered by first appearance in the fixed sign order
    classes: dict = {}
    families = []
    for s in FAMILY_SIGNS:
        L = limits[s]
        cls = classes.setdefault(L.basis, len(classes))
        families.append({
            "signs": _sign_tag(s),
            "dim": L.dim,
            "class": cls,
            "contained_in_regular_kernel": L.is_subspace_of(K0),
            "basis": _basis_json(L),
        })
    dims = {f["dim"] for f in families}
    distinct = len(classes)
    contained = all(f["contained_in_regular_kernel"] for f in families)
    ok = dims == {LIMIT_DIM} and contained and distinct >= 2
    return {
        "dimension": LIMIT_DIM,
        "ambient": K0.ambient,
        "regular_kernel_dim": K0.dim,
        "limit_dims": sorted(dims),
        "distinct_limit_subspaces": distinct,
        "all_contained_in_regular_kernel": contained,
        "not_smooth": ok,
        "conclusion": (
            f"{distinct} distinct {LIMIT_DIM}-dimensional limit tangent spaces at the regular point; "
            "not a smooth point of a 48-dimensional manifold" if ok else "no certificate"
        ),
        "families": families,
    }


# ---------------------------------------------------------------------------
# affine section through five fixed vertices

RG_POINTS = (
    (-1, 1, 1, 1),
    (1, 1, 1, 1),
    (0, 2, 0, 0),
    (0, 0, 2, 0),
    (0, 0, 0, 2),
)


def rg_vertices(P: LabeledPolytope | None = None, affine=None) -> list[int]:
    """Labels of the vertices of P at the five section points.

    ``affine = (M, t)`` maps the section points by ``p -> M p + t`` before the
    lookup; the default is the identity, which fits the family labels at x = 0.
    """
    if P is None:
        P = family_24cell(FAMILY_SIGNS[0], 0)
    pts = [tuple(Fraction(c) for c in p) for p in RG_POINTS]
    if affine is not None:
        M, t = affine
        pts = [tuple(sum(Fraction(M[i][k]) * p[k] for k in range(len(p))) + Fraction(t[i])
                     for i in range(len(t))) for p in pts]
    index = {tuple(v): i for i, v in enumerate(P.vertices)}
    out = []
    for p in pts:
        if p not in index:
            raise LookupError(f"no vertex at {tuple(format_rational(c) for c in p)}")
        out.append(index[p])
    return out


def lin_L(P: LabeledPolytope | None = None, affine=None) -> Subspace:
    """Coordinate subspace where the five section vertices do not move."""
    if P is None:
        P = family_24cell(FAMILY_SIGNS[0], 0)
    d = P.dim
    fixed = {d * i + k for i in rg_vertices(P, affine) for k in range(d)}
    N = d * (P.n + P.m)
    rows = [tuple(Fraction(int(c == j)) for c in range(N)) for j in range(N) if j not in fixed]
    return Subspace(ExactMatrix(rows, N))


def rg_section(limits: Sequence[Subspace], P: LabeledPolytope | None = None, affine=None) -> list[Subspace]:
    """Intersect each limit with lin(L)."""
    lin = lin_L(P, affine)
    for L in limits:
        if L.ambient != lin.ambient:
            raise ValueError("limit lives in the wrong ambient space")
    return [intersect(L, lin) for L in limits]


# ---------------------------------------------------------------------------
# batch screening


def _load(path) -> LabeledPolytope:
    with open(path) as fh:
        return LabeledPolytope.from_json(json.load(fh))


def batch_screen(corpus: Iterable) -> list[dict]:
    """One row per file (or polytope); failures are recorded in the row."""
    rows = []
    for item in corpus:
        label = str(item) if not isinstance(item, LabeledPolytope) else item.name
        try:
            P = item if isinstance(item, LabeledPolytope) else _load(item)
            rep = analyze(P, {"name": P.name, "source": label})
            rows.append({"source": label, "almost3": rep.verdicts["almost3"], "report": rep.to_json()})
        except (OSError, ValueError, KeyError, ArithmeticError) as exc:
            rows.append({"source": label, "error": f"{type(exc).__name__}: {exc}"})
    return rows
