"""Dense exact linear algebra over Q and Q(x).

Matrices are immutable row-major tables of :class:`fractions.Fraction` or
:class:`~realcheck.exact_arith.RatFunc` entries.  Elimination is
fraction-free: rows over Q are scaled to primitive integer vectors and rows
over Q(x) to integer polynomial vectors, and only the final pass divides by
pivots.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .exact_arith import (
    RatFunc,
    UniPoly,
    as_rational,
    format_rational,
    parse_rational,
    poly_gcd,
)

__all__ = [
    "ExactMatrix",
    "Subspace",
    "IsotropicRowError",
    "rref",
    "rank",
    "kernel_basis",
    "kernel_matrix",
    "gram_schmidt",
    "row_span_equal",
    "intersect",
    "subspace_sum",
]


class IsotropicRowError(ArithmeticError):
    """Gram-Schmidt met a row whose self inner product vanishes."""


def _is_ratfunc_entry(v) -> bool:
    return isinstance(v, RatFunc)


def _coerce_entry(v):
    if isinstance(v, (Fraction, RatFunc)):
        return v
    if isinstance(v, (int, str)):
        return as_rational(v)
    if isinstance(v, UniPoly):
        return RatFunc(v)
    raise TypeError(f"unsupported matrix entry {v!r}")


class ExactMatrix:
    """Immutable dense matrix over Q or Q(x)."""

    __slots__ = ("nrows", "ncols", "_rows", "field")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None, field: str | None = None):
        data = tuple(tuple(_coerce_entry(v) for v in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("empty matrix needs an explicit column count")
            ncols = len(data[0])
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        if field is None:
            field = "Q(x)" if any(_is_ratfunc_entry(v) for r in data for v in r) else "Q"
        if field == "Q(x)":
            data = tuple(tuple(v if isinstance(v, RatFunc) else RatFunc.constant(v) for v in r) for r in data)
        self.nrows = len(data)
        self.ncols = ncols
        self._rows = data
        self.field = field

    @classmethod
    def _wrap(cls, rows: tuple, ncols: int, field: str) -> "ExactMatrix":
        m = cls.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m.field = field
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: str = "Q") -> "ExactMatrix":
        z = RatFunc.constant(0) if field == "Q(x)" else Fraction(0)
        return cls._wrap(tuple((z,) * ncols for _ in range(nrows)), ncols, field)

    @classmethod
    def identity(cls, n: int, field: str = "Q") -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, field)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> tuple:
        """Row-major flat tuple of entries."""
        return tuple(v for r in self._rows for v in r)

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def rows(self) -> tuple:
        return self._rows

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self):
        return self.nrows

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols} over {self.field})"

    def transpose(self) -> "ExactMatrix":
        if not self.nrows:
            return ExactMatrix.zeros(self.ncols, 0, self.field)
        return ExactMatrix._wrap(tuple(zip(*self._rows)), self.nrows, self.field)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.transpose()._rows if other.nrows else ((),) * other.ncols
            field = "Q(x)" if "Q(x)" in (self.field, other.field) else "Q"
            out = []
            for r in self._rows:
                out.append(tuple(_dot(r, c) for c in cols))
            return ExactMatrix(out, other.ncols, field)
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vec) for r in self._rows)

    def select_rows(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._wrap(tuple(self._rows[i] for i in idx), self.ncols, self.field)

    def select_columns(self, idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix._wrap(tuple(tuple(r[j] for j in idx) for r in self._rows), len(idx), self.field)

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in vstack")
        field = "Q(x)" if "Q(x)" in (self.field, other.field) else "Q"
        return ExactMatrix(self._rows + other._rows, self.ncols, field)

    def evaluate(self, x0) -> "ExactMatrix":
        """Substitute x = x0 in a matrix over Q(x)."""
        if self.field == "Q":
            return self
        x0 = as_rational(x0)
        return ExactMatrix._wrap(tuple(tuple(v(x0) for v in r) for r in self._rows), self.ncols, "Q")

    def is_zero(self) -> bool:
        return all(not v for r in self._rows for v in r)

    def nonzeros(self) -> int:
        return sum(1 for r in self._rows for v in r if v)

    # -- JSON
    def to_json(self) -> dict:
        if self.field == "Q(x)":
            entries = [[v.to_json() for v in r] for r in self._rows]
        else:
            entries = [[format_rational(v) for v in r] for r in self._rows]
        return {"rows": self.nrows, "cols": self.ncols, "entries": entries}

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        rows = data["entries"]
        ncols = int(data["cols"])
        if len(rows) != int(data["rows"]):
            raise ValueError("row count does not match 'rows'")
        symbolic = any(isinstance(v, dict) for r in rows for v in r)
        if symbolic:
            parsed = [[RatFunc.from_json(v) for v in r] for r in rows]
            return cls(parsed, ncols, "Q(x)")
        return cls([[parse_rational(v) for v in r] for r in rows], ncols, "Q")


def _dot(u: Sequence, v: Sequence):
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    if isinstance(acc, int):
        return Fraction(acc)
    return acc


# ---------------------------------------------------------------------------
# elimination over Q


def _int_row(row: Sequence[Fraction]) -> list[int]:
    den = reduce(math.lcm, (v.denominator for v in row if v), 1)
    out = [v.numerator * (den // v.denominator) if v else 0 for v in row]
    g = 0
    for v in out:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return out
    if g > 1:
        out = [v // g for v in out]
    return out


def _rref_integer(rows: list[list[int]], ncols: int):
    """Fraction-free Gauss-Jordan on integer rows with primitive-part reduction.

    Returns ``(rows, pivots)`` where ``rows[k][pivots[k]]`` is the k-th pivot.
    """
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    rk = 0
    nrows = len(rows)
    gcd = math.gcd
    for c in range(ncols):
        if rk == nrows:
            break
        best = -1
        best_size = 0
        for r in range(rk, nrows):
            v = rows[r][c]
            if v:
                size = sum(abs(u).bit_length() for u in rows[r] if u)
                if best < 0 or size < best_size:
                    best, best_size = r, size
        if best < 0:
            continue
        rows[rk], rows[best] = rows[best], rows[rk]
        prow = rows[rk]
        a = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for r in range(nrows):
            if r == rk:
                continue
            row = rows[r]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            aa, bb = a // g, b // g
            if aa != 1:
                row = [aa * u for u in row]
            for j in nz:
                row[j] -= bb * prow[j]
            cg = 0
            for u in row:
                if u:
                    cg = gcd(cg, u)
                    if cg == 1:
                        break
            if cg > 1:
                row = [u // cg for u in row]
            rows[r] = row
        pivots.append(c)
        rk += 1
    return rows[:rk], pivots


def _rref_q(m: ExactMatrix):
    ints = [_int_row(r) for r in m.rows()]
    rows, pivots = _rref_integer(ints, m.ncols)
    out = []
    for k, c in enumerate(pivots):
        a = rows[k][c]
        if a < 0:
            out.append(tuple(Fraction(-u, -a) if u else Fraction(0) for u in rows[k]))
        else:
            out.append(tuple(Fraction(u, a) if u else Fraction(0) for u in rows[k]))
    return out, pivots


# ---------------------------------------------------------------------------
# elimination over Q(x): Bareiss over Z[x]


def _ip_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def _ip_sub(a: list[int], b: list[int]) -> list[int]:
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    out = list(a)
    for i, v in enumerate(b):
        out[i] -= v
    while out and not out[-1]:
        out.pop()
    return out


def _ip_exact_div(a: list[int], b: list[int]) -> list[int]:
    if not a:
        return []
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        t = r[k + db]
        if t:
            f, rem = divmod(t, lb)
            if rem:
                raise ArithmeticError("inexact division in Bareiss step")
            q[k] = f
            for i, bv in enumerate(b):
                r[i + k] -= f * bv
    if any(r):
        raise ArithmeticError("inexact division in Bareiss step")
    while q and not q[-1]:
        q.pop()
    return q


def _poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.degree <= 0:
        return b
    if b.degree <= 0:
        return a
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def clear_row_denominators(row: Sequence[RatFunc]) -> tuple[list[list[int]], UniPoly]:
    """Scale a row over Q(x) to integer polynomials.

    Returns the integer coefficient lists and the polynomial multiplier that
    was applied (up to a rational constant).
    """
    L = UniPoly.constant(1)
    for v in row:
        if v and v.den.degree > 0:
            L = _poly_lcm(L, v.den)
    polys = [(v.num * L.exact_div(v.den)) if v else UniPoly() for v in row]
    den = 1
    for p in polys:
        for c in p.coeffs:
            den = math.lcm(den, c.denominator)
    ints = [[int(c * den) for c in p.coeffs] for p in polys]
    g = 0
    for p in ints:
        for c in p:
            if c:
                g = math.gcd(g, c)
    if g > 1:
        ints = [[c // g for c in p] for p in ints]
    return ints, L


def _poly_size(p: list[int]) -> tuple[int, int]:
    return (len(p), sum(abs(c).bit_length() for c in p))


def _rref_polynomial(rows: list[list[list[int]]], ncols: int):
    """Fraction-free Gauss-Jordan (Bareiss) on rows of integer polynomials."""
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    prev = [1]
    rk = 0
    nrows = len(rows)
    for c in range(ncols):
        if rk == nrows:
            break
        best = -1
        best_size = None
        for r in range(rk, nrows):
            if rows[r][c]:
                size = _poly_size(rows[r][c])
                if best < 0 or size < best_size:
                    best, best_size = r, size
        if best < 0:
            continue
        rows[rk], rows[best] = rows[best], rows[rk]
        prow = rows[rk]
        p = prow[c]
        for r in range(nrows):
            if r == rk:
                continue
            row = rows[r]
            b = row[c]
            new = []
            for j in range(ncols):
                t = _ip_sub(_ip_mul(p, row[j]), _ip_mul(b, prow[j])) if (row[j] or (b and prow[j])) else []
                new.append(_ip_exact_div(t, prev) if t else [])
            rows[r] = new
        prev = p
        pivots.append(c)
        rk += 1
    return rows[:rk], pivots


def _rref_qx(m: ExactMatrix):
    rows = [clear_row_denominators(r)[0] for r in m.rows()]
    rows, pivots = _rref_polynomial(rows, m.ncols)
    out = []
    for k, c in enumerate(pivots):
        d = UniPoly(rows[k][c])
        out.append(tuple(RatFunc(UniPoly(v), d) if v else RatFunc.constant(0) for v in rows[k]))
    return out, pivots


def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.

    Zero rows are dropped from the returned matrix, so its row count is the
    rank.
    """
    if m.field == "Q(x)":
        rows, pivots = _rref_qx(m)
    else:
        rows, pivots = _rref_q(m)
    return ExactMatrix._wrap(tuple(rows), m.ncols, m.field), len(pivots), pivots


def rank(m: ExactMatrix) -> int:
    if m.field == "Q":
        return len(_rref_integer([_int_row(r) for r in m.rows()], m.ncols)[1])
    return rref(m)[1]


def _kernel_rows(R: ExactMatrix, pivots: Sequence[int], field: str) -> list[tuple]:
    n = R.ncols
    zero = RatFunc.constant(0) if field == "Q(x)" else Fraction(0)
    one = RatFunc.constant(1) if field == "Q(x)" else Fraction(1)
    pivset = set(pivots)
    out = []
    for f in range(n):
        if f in pivset:
            continue
        v = [zero] * n
        v[f] = one
        for k, c in enumerate(pivots):
            e = R[k, f]
            if e:
                v[c] = -e
        out.append(tuple(v))
    return out


def kernel_matrix(m: ExactMatrix) -> ExactMatrix:
    """Rows spanning the right kernel, one per non-pivot column (not canonicalized)."""
    R, _, pivots = rref(m)
    return ExactMatrix._wrap(tuple(_kernel_rows(R, pivots, m.field)), m.ncols, m.field)


def kernel_basis(m: ExactMatrix) -> "Subspace":
    """The right kernel ``{v : m v = 0}`` as a canonical :class:`Subspace`."""
    return Subspace(kernel_matrix(m))


# ---------------------------------------------------------------------------


class Subspace:
    """Row space of a matrix, stored as its RREF basis.

    Two subspaces are equal exactly when their stored bases are identical.
    """

    __slots__ = ("basis", "ambient")

    def __init__(self, generators: ExactMatrix | Sequence[Sequence], ambient: int | None = None):
        if not isinstance(generators, ExactMatrix):
            rows = [tuple(r) for r in generators]
            if not rows:
                if ambient is None:
                    raise ValueError("ambient dimension required for an empty generator list")
                generators = ExactMatrix.zeros(0, ambient)
            else:
                generators = ExactMatrix(rows)
        if ambient is not None and generators.ncols != ambient:
            raise ValueError("generator length does not match ambient dimension")
        self.ambient = generators.ncols
        if generators.nrows == 0:
            self.basis = generators
        else:
            self.basis = rref(generators)[0]

    @classmethod
    def _from_rref(cls, basis: ExactMatrix) -> "Subspace":
        s = cls.__new__(cls)
        s.basis = basis
        s.ambient = basis.ncols
        return s

    @property
    def dim(self) -> int:
        return self.basis.nrows

    @property
    def field(self) -> str:
        return self.basis.field

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field})"

    def contains(self, vector: Sequence) -> bool:
        v = tuple(_coerce_entry(x) for x in vector)
        if len(v) != self.ambient:
            raise ValueError("vector length does not match ambient dimension")
        if self.dim == 0:
            return all(not x for x in v)
        return rank(self.basis.vstack(ExactMatrix([v], self.ambient))) == self.dim

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        if self.dim == 0:
            return True
        return subspace_sum(self, other).dim == other.dim

    def orthogonal_complement(self) -> "Subspace":
        if self.dim == 0:
            return Subspace(ExactMatrix.identity(self.ambient, self.field))
        return kernel_basis(self.basis)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "dim": self.dim, "basis": self.basis.to_json()}


def _check_ambient(S: Subspace, T: Subspace) -> None:
    if S.ambient != T.ambient:
        raise ValueError(f"ambient mismatch: {S.ambient} vs {T.ambient}")


def row_span_equal(S: Subspace, T: Subspace) -> bool:
    _check_ambient(S, T)
    return S.basis == T.basis


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    _check_ambient(S, T)
    if S.dim == 0:
        return T
    if T.dim == 0:
        return S
    return Subspace(S.basis.vstack(T.basis))


def intersect(S: Subspace, T: Subspace) -> Subspace:
    """``S ∩ T`` from the relations among the stacked bases."""
    _check_ambient(S, T)
    if S.dim == 0 or T.dim == 0:
        return Subspace(ExactMatrix.zeros(0, S.ambient, S.field))
    stacked = S.basis.vstack(T.basis)
    relations = kernel_matrix(stacked.transpose())
    if relations.nrows == 0:
        return Subspace(ExactMatrix.zeros(0, S.ambient, stacked.field))
    k = S.dim
    coeffs = relations.select_columns(range(k))
    return Subspace(coeffs @ S.basis)


def gram_schmidt(B: ExactMatrix) -> ExactMatrix:
    """Orthogonalize rows under the coordinate dot product, without normalizing."""
    done: list[tuple] = []
    norms: list = []
    for r in B.rows():
        u = list(r)
        for w, nw in zip(done, norms):
            c = _dot(u, w)
            if c:
                f = c / nw
                u = [a - f * b if b else a for a, b in zip(u, w)]
        nu = _dot(u, u)
        if not nu:
            raise IsotropicRowError(
                "row has zero self inner product; rows dependent or isotropic over Q(x)"
            )
        done.append(tuple(u))
        norms.append(nu)
    return ExactMatrix(done, B.ncols, B.field) if done else ExactMatrix.zeros(0, B.ncols, B.field)


# ---------------------------------------------------------------------------
# limit of a kernel at x = 0


class LimitDegenerateError(ArithmeticError):
    """The limit at x = 0 did not reach the generic kernel dimension."""


def kernel_limit_at_zero(m: ExactMatrix, generic_rank: int | None = None, max_order: int | None = None) -> "Subspace":
    """Limit at x = 0 of the kernels of ``m(x)`` over Q(x).

    The limit is ``{v(0) : v in Q[[x]]^n, m(x) v(x) = 0}``.  It is contained in
    ``L_k``, the set of ``v_0`` extendable to ``v_0 + ... + v_k x^k`` solving
    the equations modulo ``x^(k+1)``; once ``dim L_k`` equals the generic
    kernel dimension the two coincide.
    """
    if m.field != "Q(x)":
        m = ExactMatrix([[RatFunc.constant(v) for v in r] for r in m.rows()], m.ncols, "Q(x)")
    n = m.ncols
    if generic_rank is None:
        generic_rank = rank_via_interpolation(m)[0]
    target = n - generic_rank
    polys = [clear_row_denominators(r)[0] for r in m.rows()]
    # strip common powers of x from each row so the constant term is informative
    stripped = []
    for row in polys:
        low = min((next(i for i, c in enumerate(p) if c) for p in row if p), default=0)
        stripped.append([p[low:] if p else [] for p in row])
    top = max((len(p) for r in stripped for p in r), default=1)
    coeff = [[[p[k] if k < len(p) else 0 for p in r] for r in stripped] for k in range(top)]
    if max_order is None:
        max_order = 2 * min(m.nrows, n) + 1
    for order in range(max_order + 1):
        N = (order + 1) * n
        rows = []
        for level in range(order + 1):
            for r in range(m.nrows):
                row = [0] * N
                for j in range(level + 1):
                    k = level - j
                    if k >= top:
                        continue
                    # unknown v_j sits in block (order - j), so v_0 is last
                    off = (order - j) * n
                    row[off:off + n] = coeff[k][r]
                rows.append(row)
        red, piv = _rref_integer(rows, N)
        cons = [red[k][order * n:] for k, c in enumerate(piv) if c >= order * n]
        if n - len(cons) == target:
            if not cons:
                return Subspace(ExactMatrix.identity(n))
            return Subspace(ExactMatrix([[Fraction(v) for v in r] for r in cons], n)).orthogonal_complement()
        if n - len(cons) < target:
            raise LimitDegenerateError("truncated limit fell below the generic kernel dimension")
    raise LimitDegenerateError(f"limit not determined up to order {max_order}")



def limit_of_row_span(m: ExactMatrix, max_steps: int | None = None) -> tuple["Subspace", int]:
    """Limit at x = 0 of the row space of ``m(x)``, with the number of reduction steps.

    Rows are scaled by ``x^(-order)`` and evaluated at 0.  While the values
    are dependent, a constant combination of rows vanishing at 0 replaces one
    of them and is divided by x.  Each step lowers the order at 0 of the
    maximal minors, so the loop ends.
    """
    if m.field != "Q(x)":
        return Subspace(m), 0
    rows = []
    for r in m.rows():
        polys, _ = clear_row_denominators(r)
        if any(polys):
            rows.append([UniPoly(p) for p in polys])
    steps = 0
    while True:
        for k, row in enumerate(rows):
            low = min(p.low_order() for p in row if not p.is_zero())
            if low:
                rows[k] = [p.shift_down(low) for p in row]
        vals = [[p.coeffs[0] if not p.is_zero() else Fraction(0) for p in row] for row in rows]
        V = ExactMatrix(vals, m.ncols) if vals else ExactMatrix.zeros(0, m.ncols)
        dep = kernel_matrix(V.transpose()) if vals else ExactMatrix.zeros(0, 0)
        if dep.nrows == 0:
            return Subspace(V) if vals else Subspace([], m.ncols), steps
        if max_steps is not None and steps >= max_steps:
            raise LimitDegenerateError(f"limit not reached after {steps} reduction steps")
        c = dep.rows()[0]
        # replace the last row taking part in the relation
        i = max(k for k, v in enumerate(c) if v)
        combo = [UniPoly(())] * m.ncols
        for k, v in enumerate(c):
            if v:
                combo = [a + rows[k][j] * v for j, a in enumerate(combo)]
        # a combination can vanish only if the input rows were dependent
        rows[i:i + 1] = [combo] if any(not p.is_zero() for p in combo) else []
        steps += 1


from .interpolation import DegreeBoundError, rank_via_interpolation  # noqa: E402

__all__ += ["rank_via_interpolation", "DegreeBoundError", "kernel_limit_at_zero", "limit_of_row_span", "LimitDegenerateError"]
