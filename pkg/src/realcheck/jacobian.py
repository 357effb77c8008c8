"""Characteristic map of a labeled polytope and its Jacobian.

For incidence ``[i, j]`` the map has the coordinate ``w_i . b_j - 1``.  Its
Jacobian row has ``b_j`` in the columns of vertex ``i`` and ``w_i`` in the
columns of facet ``j``; columns are ordered ``v_1..v_n`` then ``a_1..a_m``.
The same code builds Jacobians over Q and over Q(x).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_arith import RatFunc
from .linalg import ExactMatrix, Subspace, kernel_basis, rank
from .polytope import Combinatorics, LabeledPolytope, PolyCone, RealizationError, verify_realization

__all__ = [
    "CharJacobian",
    "JacobianVerdict",
    "characteristic_map",
    "build_jacobian",
    "natural_guess",
    "jacobian_verdict",
    "homogeneous_jacobian",
    "homogeneous_rank",
]


def natural_guess(f0: int, fd1: int, mu: int, d: int) -> int:
    """d(f_0 + f_{d-1}) - f_{0,d-1}; may be negative."""
    return d * (f0 + fd1) - mu


def _comb(P) -> Combinatorics:
    if isinstance(P, Combinatorics):
        return P
    return P.combinatorics


def _columns(M, d: int, count: int, what: str) -> list[tuple]:
    if isinstance(M, ExactMatrix):
        if M.shape != (d, count):
            raise ValueError(f"{what} must be {d}x{count}, got {M.nrows}x{M.ncols}")
        return [M.column(i) for i in range(count)]
    cols = [tuple(c) for c in M]
    if len(cols) != count or any(len(c) != d for c in cols):
        raise ValueError(f"{what} must have {count} columns of length {d}")
    return cols


def _defaults(P, W, B):
    if W is None:
        W = P.vertices if isinstance(P, LabeledPolytope) else P.rays
    if B is None:
        B = P.facets if isinstance(P, LabeledPolytope) else P.normals
    return W, B


def _dot(u, v):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return Fraction(acc) if isinstance(acc, int) else acc


def characteristic_map(P, W=None, B=None) -> tuple:
    """Vector of ``w_i . b_j - 1`` over incidences in lexicographic order."""
    comb = _comb(P)
    W, B = _defaults(P, W, B)
    Wc = _columns(W, comb.dim, comb.n, "W")
    Bc = _columns(B, comb.dim, comb.m, "B")
    return tuple(_dot(Wc[i], Bc[j]) - 1 for i, j in comb.incidences)


@dataclass(frozen=True)
class CharJacobian:
    """Jacobian of the characteristic map; row k belongs to ``incidences[k]``."""

    dim: int
    n: int
    m: int
    incidences: tuple[tuple[int, int], ...]
    matrix: ExactMatrix

    @property
    def mu(self) -> int:
        return len(self.incidences)

    @property
    def ambient(self) -> int:
        return self.dim * (self.n + self.m)

    def vertex_columns(self, i: int) -> range:
        return range(self.dim * i, self.dim * (i + 1))

    def facet_columns(self, j: int) -> range:
        off = self.dim * self.n
        return range(off + self.dim * j, off + self.dim * (j + 1))

    def to_json(self) -> dict:
        out = self.matrix.to_json()
        out["row_order"] = [list(p) for p in self.incidences]
        out["column_blocks"] = {"vertices": self.n, "facets": self.m, "block_size": self.dim}
        return out


def _jacobian_rows(d, n, m, incidences, Wc, Bc, zero):
    ncols = d * (n + m)
    off = d * n
    rows = []
    for i, j in incidences:
        row = [zero] * ncols
        row[d * i:d * (i + 1)] = Bc[j]
        row[off + d * j:off + d * (j + 1)] = Wc[i]
        rows.append(tuple(row))
    return rows


def _field_zero(cols) -> tuple:
    for c in cols:
        for v in c:
            if isinstance(v, RatFunc):
                return RatFunc.constant(0), "Q(x)"
    return Fraction(0), "Q"


def build_jacobian(P, W=None, B=None) -> CharJacobian:
    """mu x d(n+m) Jacobian at ``(W, B)``; defaults to P's own realization."""
    comb = _comb(P)
    W, B = _defaults(P, W, B)
    d = comb.dim
    Wc = _columns(W, d, comb.n, "W")
    Bc = _columns(B, d, comb.m, "B")
    zero, field = _field_zero(Wc + Bc)
    if field == "Q(x)":
        Wc = [tuple(v if isinstance(v, RatFunc) else RatFunc.constant(v) for v in c) for c in Wc]
        Bc = [tuple(v if isinstance(v, RatFunc) else RatFunc.constant(v) for v in c) for c in Bc]
    else:
        Wc = [tuple(Fraction(v) for v in c) for c in Wc]
        Bc = [tuple(Fraction(v) for v in c) for c in Bc]
    rows = _jacobian_rows(d, comb.n, comb.m, comb.incidences, Wc, Bc, zero)
    M = ExactMatrix._wrap(tuple(rows), d * (comb.n + comb.m), field)
    return CharJacobian(d, comb.n, comb.m, comb.incidences, M)


@dataclass(frozen=True)
class JacobianVerdict:
    rank: int
    mu: int
    ambient: int
    natural_guess: int
    tangent: Subspace | None = None

    @property
    def full_rank(self) -> bool:
        return self.rank == self.mu

    @property
    def local_dim_if_full(self) -> int | None:
        """Certified local dimension NG when the Jacobian has full row rank."""
        return self.natural_guess if self.full_rank else None

    @property
    def upper_bound(self) -> int:
        return self.ambient - self.rank

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "mu": self.mu,
            "ambient": self.ambient,
            "natural_guess": self.natural_guess,
            "full_rank": self.full_rank,
            "local_dim_if_full": self.local_dim_if_full,
            "upper_bound": self.upper_bound,
        }
        if self.tangent is not None:
            out["tangent_dim"] = self.tangent.dim
        return out


def jacobian_verdict(P, W=None, B=None, *, tangent: bool = True) -> JacobianVerdict:
    """Jacobian Criterion at a point of the realization space.

    Raises :class:`RealizationError` if ``(W, B)`` does not realize ``P``.
    """
    comb = _comb(P)
    W, B = _defaults(P, W, B)
    if not verify_realization(comb, W, B):
        raise RealizationError("(W, B) is not a centered realization of the incidence structure")
    J = build_jacobian(comb, W, B)
    ng = natural_guess(comb.n, comb.m, comb.mu, comb.dim)
    if tangent:
        K = kernel_basis(J.matrix)
        r = J.ambient - K.dim
    else:
        K = None
        r = rank(J.matrix)
    return JacobianVerdict(r, comb.mu, J.ambient, ng, K)


# ---------------------------------------------------------------------------
# homogeneous model


def homogeneous_jacobian(C: PolyCone, W=None, B=None) -> ExactMatrix:
    """(mu + n + m) x (d+1)(n+m) Jacobian of the cone equations.

    Incidence rows as in :func:`build_jacobian`, then one row ``2 w_i`` per
    ray and one row ``2 b_j`` per facet normal.
    """
    D = C.dim
    W = C.rays if W is None else W
    B = C.normals if B is None else B
    Wc = [tuple(Fraction(v) for v in c) for c in _columns(W, D, C.n, "W")]
    Bc = [tuple(Fraction(v) for v in c) for c in _columns(B, D, C.m, "B")]
    inc = set(C.incidences)
    for i, w in enumerate(Wc):
        for j, b in enumerate(Bc):
            s = _dot(w, b)
            if ((i, j) in inc and s != 0) or ((i, j) not in inc and not s < 0):
                raise RealizationError(f"sign condition violated at {(i, j)}")
    zero = Fraction(0)
    rows = _jacobian_rows(D, C.n, C.m, sorted(inc), Wc, Bc, zero)
    ncols = D * (C.n + C.m)
    for i, w in enumerate(Wc):
        row = [zero] * ncols
        row[D * i:D * (i + 1)] = [2 * v for v in w]
        rows.append(tuple(row))
    off = D * C.n
    for j, b in enumerate(Bc):
        row = [zero] * ncols
        row[off + D * j:off + D * (j + 1)] = [2 * v for v in b]
        rows.append(tuple(row))
    return ExactMatrix._wrap(tuple(rows), ncols, "Q")


def homogeneous_rank(C: PolyCone) -> dict:
    """Rank of the homogeneous Jacobian and the dimension it certifies when full."""
    H = homogeneous_jacobian(C)
    r = rank(H)
    return {
        "rank": r,
        "rows": H.nrows,
        "cols": H.ncols,
        "full_rank": r == H.nrows,
        "dimension_if_full": H.ncols - H.nrows if r == H.nrows else None,
        "upper_bound": H.ncols - r,
    }
