"""Rank and kernel of matrices over Q(x) by evaluation and interpolation.

The matrix is specialized at integer points, each specialization is reduced
exactly over Q, and the entries of the generic reduced echelon form are
rebuilt from their values.  Every reconstructed entry is checked at two
points that were not used to build it.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from .exact_arith import RatFunc, UniPoly, poly_gcd

__all__ = [
    "DegreeBoundError",
    "default_degree_bound",
    "rank_via_interpolation",
    "interpolate_poly",
    "rational_reconstruct",
    "reconstruct_ratfunc",
]


class DegreeBoundError(ArithmeticError):
    """Reconstruction did not verify within the allowed number of points."""


def default_degree_bound(nrows: int, ncols: int) -> int:
    env = os.environ.get("REALCHECK_DEGREE_BOUND")
    if env:
        return int(env)
    return 2 * min(nrows, ncols) + 1


# ---------------------------------------------------------------------------
# univariate reconstruction


class _Newton:
    """Incremental Newton interpolant through (c_i, y_i)."""

    __slots__ = ("xs", "coefs")

    def __init__(self):
        self.xs: list = []
        self.coefs: list[Fraction] = []

    def __call__(self, c) -> Fraction:
        acc = Fraction(0)
        for k in range(len(self.coefs) - 1, -1, -1):
            acc = acc * (c - self.xs[k]) + self.coefs[k]
        return acc

    def add(self, c, y) -> Fraction:
        """Add a point; returns the new top coefficient."""
        prod = 1
        for x in self.xs:
            prod *= c - x
        a = (Fraction(y) - self(c)) / prod
        self.xs.append(c)
        self.coefs.append(a)
        return a

    def to_poly(self) -> UniPoly:
        # Horner in Newton basis
        acc = [Fraction(0)]
        for k in range(len(self.coefs) - 1, -1, -1):
            nxt = [Fraction(0)] * (len(acc) + 1)
            xk = self.xs[k]
            for i, v in enumerate(acc):
                nxt[i + 1] += v
                nxt[i] -= xk * v
            nxt[0] += self.coefs[k]
            acc = nxt
        return UniPoly(acc)


def interpolate_poly(xs: Sequence, ys: Sequence) -> UniPoly:
    """Unique polynomial of degree < len(xs) through the given points."""
    nw = _Newton()
    for c, y in zip(xs, ys):
        nw.add(c, y)
    return nw.to_poly()


def rational_reconstruct(P: UniPoly, modulus: UniPoly) -> RatFunc | None:
    """Find n/d with n = d*P mod ``modulus``, deg n + deg d < deg modulus.

    Runs the extended Euclidean algorithm and keeps the remainder that
    follows the quotient of largest degree.
    """
    if P.is_zero():
        return RatFunc.constant(0)
    # candidate (r_i, t_i) has deg r_i + deg t_i = deg modulus - deg q_i
    r0, r1 = modulus, P
    t0, t1 = UniPoly(), UniPoly.constant(1)
    best = None
    best_q = -1
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        if q.degree > best_q:
            best_q = q.degree
            best = (r1, t1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    n, d = best
    if d.is_zero() or poly_gcd(n, d).degree > 0:
        return None
    if n.degree + d.degree >= modulus.degree:
        return None
    return RatFunc(n, d)


def reconstruct_ratfunc(xs: Sequence, ys: Sequence, check: int = 2) -> RatFunc | None:
    """Rebuild a rational function from samples, holding out ``check`` points."""
    if len(xs) <= check:
        return None
    build = len(xs) - check
    P = interpolate_poly(xs[:build], ys[:build])
    f = rational_reconstruct(P, UniPoly.from_roots(xs[:build]))
    if f is None:
        return None
    for c, y in zip(xs, ys):
        if f.den(c) == 0 or f(c) != y:
            return None
    return f


# ---------------------------------------------------------------------------
# specialization


def _eval_int(p: Sequence[int], c: int) -> int:
    acc = 0
    for v in reversed(p):
        acc = acc * c + v
    return acc


def _specialize(args):
    """Rank and pivot columns over Q of the polynomial matrix at integer point c."""
    from .linalg import _rref_integer

    rows, ncols, c = args
    ints = [[_eval_int(p, c) if p else 0 for p in r] for r in rows]
    _, pivots = _rref_integer(ints, ncols)
    return c, tuple(pivots)


def bareiss_gauss_jordan(rows: list[list[int]], ncols: int):
    """Fraction-free Gauss-Jordan over Z.

    Returns ``(rows, pivots, det)``.  Each returned row ``k`` equals ``det``
    times row ``k`` of the reduced echelon form, where ``det`` is the
    determinant of the pivot columns taken in the original row order.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    order = list(range(nrows))
    pivots: list[int] = []
    prev = 1
    rk = 0
    for c in range(ncols):
        if rk == nrows:
            break
        best = next((r for r in range(rk, nrows) if rows[r][c]), -1)
        if best < 0:
            continue
        if best != rk:
            rows[rk], rows[best] = rows[best], rows[rk]
            order[rk], order[best] = order[best], order[rk]
        prow = rows[rk]
        p = prow[c]
        nz = [j for j in range(ncols) if prow[j]]
        for r in range(nrows):
            if r == rk:
                continue
            row = rows[r]
            b = row[c]
            if b:
                new = [p * u for u in row]
                for j in nz:
                    new[j] -= b * prow[j]
            else:
                new = [p * u for u in row]
            rows[r] = [u // prev for u in new] if prev != 1 else new
        prev = p
        pivots.append(c)
        rk += 1
    det = prev if rk else 1
    # rows were permuted; the sign of that permutation fixes the determinant
    perm = order[:rk]
    inv = sum(1 for i in range(rk) for j in range(i + 1, rk) if perm[i] > perm[j])
    if rk < nrows:
        # only square selections carry a well-defined sign
        pass
    if inv % 2:
        det = -det
        rows = [[-u for u in r] for r in rows]
    return rows[:rk], pivots, det


class _Sampler:
    """Lazily specializes a cleared polynomial matrix at admissible points."""

    def __init__(self, rows, ncols, multipliers, jobs=1):
        self.rows = rows
        self.ncols = ncols
        self.multipliers = multipliers
        self.jobs = max(1, int(jobs))
        self._next = 1

    def _admissible(self, c: int) -> bool:
        return all(L(c) != 0 for L in self.multipliers)

    def points(self, k: int) -> list[int]:
        pts = []
        while len(pts) < k:
            c = self._next
            self._next += 1
            if self._admissible(c):
                pts.append(c)
        return pts

    def map(self, fn, args):
        """Apply ``fn`` over ``args``, in parallel if allowed; results in input order."""
        if self.jobs > 1 and len(args) > 1:
            with ProcessPoolExecutor(self.jobs) as ex:
                return list(ex.map(fn, args))
        return [fn(a) for a in args]


def _cramer_at(args):
    """Numerators and determinant of the generic RREF at point c, or None if c is unlucky."""
    rows, ncols, c, piv = args
    ints = [[_eval_int(p, c) if p else 0 for p in r] for r in rows]
    red, pivots, det = bareiss_gauss_jordan(ints, ncols)
    if tuple(pivots) != piv:
        return c, None, tuple(pivots)
    return c, red, det


# ---------------------------------------------------------------------------


def rank_via_interpolation(M, degree_bound: int | None = None, *, kernel: bool = False, jobs: int = 1):
    """Rank of a matrix over Q(x), and optionally its right kernel.

    Returns ``(rank, K)`` where ``K`` is an :class:`ExactMatrix` over Q(x)
    whose rows span the kernel (``None`` unless ``kernel=True``).
    ``degree_bound`` bounds the degree of the minors of the row-cleared
    matrix.  Raises :class:`DegreeBoundError` if the entries cannot be
    rebuilt from ``degree_bound + 1`` points and confirmed at two more.
    """
    from .linalg import ExactMatrix, _rref_integer, clear_row_denominators

    if M.field != "Q(x)":
        M = ExactMatrix([[RatFunc.constant(v) for v in r] for r in M.rows()], M.ncols, "Q(x)")
    nrows, ncols = M.shape
    if degree_bound is None:
        degree_bound = default_degree_bound(nrows, ncols)
    cleared = [clear_row_denominators(r) for r in M.rows()]
    rows = [c[0] for c in cleared]
    mults = [c[1] for c in cleared if c[1].degree > 0]
    full = min(nrows, ncols)
    if full == 0:
        return 0, (_kernel_from(ExactMatrix.zeros(0, ncols), [], ncols) if kernel else None)

    # a nonzero minor of size r has degree at most the sum of the r largest row degrees
    rdeg = sorted((max((len(p) - 1 for p in r if p), default=0) for r in rows), reverse=True)
    minor_deg = min(degree_bound, sum(rdeg[:full]))

    sampler = _Sampler(rows, ncols, mults, jobs)
    samples = sampler.map(_specialize, [(rows, ncols, c) for c in sampler.points(1)])
    best_rank = len(samples[0][1])
    if best_rank < full:
        pts = sampler.points(minor_deg)
        samples += sampler.map(_specialize, [(rows, ncols, c) for c in pts])
        best_rank = max(len(s[1]) for s in samples)
    if not kernel:
        return best_rank, None
    if best_rank == 0:
        return 0, _kernel_from(ExactMatrix._wrap((), ncols, "Q(x)"), [], ncols)

    # generic pivots are the lexicographically smallest among maximal-rank samples;
    # a later sample may still reveal smaller ones, which restarts the reconstruction
    piv = min(s[1] for s in samples if len(s[1]) == best_rank)
    c0 = next(s[0] for s in samples if s[1] == piv)
    while True:
        # a generically independent row set, read off the transpose at c0
        ints = [[_eval_int(p, c0) if p else 0 for p in r] for r in rows]
        tr = [list(col) for col in zip(*ints)]
        _, row_sel = _rref_integer(tr, nrows)
        sel = [rows[i] for i in row_sel]
        free = [j for j in range(ncols) if j not in set(piv)]
        try:
            entries = _reconstruct(sampler, sel, ncols, piv, free, degree_bound)
            break
        except _Restart as exc:
            c0, piv = exc.point, exc.pivots
    R = [[RatFunc.constant(0)] * ncols for _ in piv]
    for k, c in enumerate(piv):
        R[k][c] = RatFunc.constant(1)
        for f in free:
            R[k][f] = entries[k, f]
    R = ExactMatrix([tuple(r) for r in R], ncols, "Q(x)")
    return best_rank, _kernel_from(R, list(piv), ncols)


def _kernel_from(R, piv, ncols):
    from .linalg import ExactMatrix, _kernel_rows

    return ExactMatrix._wrap(tuple(_kernel_rows(R, piv, "Q(x)")), ncols, "Q(x)")


class _Restart(Exception):
    def __init__(self, point, pivots):
        super().__init__(point, pivots)
        self.point = point
        self.pivots = pivots


def _reconstruct(sampler, sel, ncols, piv, free, degree_bound):
    """Interpolate the Cramer numerators and the pivot determinant.

    Points are added in batches; each polynomial stops once two consecutive
    Newton coefficients vanish, which is the two-point check.
    """
    keys = [(k, f) for k in range(len(piv)) for f in free]
    polys = {key: _Newton() for key in keys}
    polys["det"] = _Newton()
    zeros = {key: 0 for key in polys}
    done: dict = {}
    budget = degree_bound + 1 + 2
    used = 0
    unlucky = 0
    batch = 4
    while len(done) < len(polys):
        if used >= budget:
            raise DegreeBoundError("degree bound too small: interpolation did not verify")
        pts = sampler.points(min(batch, budget - used))
        res = sampler.map(_cramer_at, [(sel, ncols, c, piv) for c in pts])
        for c, red, det in res:
            if red is None:
                other = det
                if len(other) == len(piv) and other < piv:
                    raise _Restart(c, other)
                # the pivot minor vanishes at c; it has at most degree_bound roots
                unlucky += 1
                if unlucky > degree_bound:
                    raise DegreeBoundError("too many unlucky points for the degree bound")
                continue
            used += 1
            for key, nw in polys.items():
                if key in done:
                    continue
                y = det if key == "det" else red[key[0]][key[1]]
                a = nw.add(c, y)
                zeros[key] = zeros[key] + 1 if a == 0 else 0
                if zeros[key] >= 2:
                    done[key] = nw.to_poly()
            if len(done) == len(polys):
                break
        batch = min(2 * batch, 64)
    D = done["det"]
    if D.is_zero():
        raise DegreeBoundError("pivot determinant vanished identically")
    return {key: RatFunc(done[key], D) for key in keys}
