"""Hypothesis generators shared by the property suites."""
from fractions import Fraction

from hypothesis import strategies as st

from realcheck.exact_arith import RatFunc, UniPoly
from realcheck.linalg import ExactMatrix

small_int = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
polys = st.lists(rationals, max_size=4).map(UniPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuncs = st.builds(RatFunc, polys, nonzero_polys)
nonzero_ratfuncs = ratfuncs.filter(lambda f: not f.is_zero())


@st.composite
def q_matrices(draw, max_rows=6, max_cols=6, entries=small_int):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    # low-rank products show up often enough to exercise the degenerate cases
    if draw(st.booleans()):
        k = draw(st.integers(1, min(r, c)))
        left = draw(st.lists(st.lists(small_int, min_size=k, max_size=k), min_size=r, max_size=r))
        right = draw(st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=k, max_size=k))
        rows = [[sum(left[i][t] * right[t][j] for t in range(k)) for j in range(c)] for i in range(r)]
    return ExactMatrix([[Fraction(v) for v in row] for row in rows], c)


@st.composite
def qx_matrices(draw, max_rows=4, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    ent = st.lists(st.integers(-3, 3), max_size=3).map(lambda cs: RatFunc(UniPoly(cs)))
    rows = draw(st.lists(st.lists(ent, min_size=c, max_size=c), min_size=r, max_size=r))
    if r > 1 and draw(st.booleans()):
        # make the last row a combination of the others
        coef = draw(st.lists(st.integers(-2, 2).map(RatFunc.constant), min_size=r - 1, max_size=r - 1))
        last = [sum((coef[i] * rows[i][j] for i in range(r - 1)), RatFunc.constant(0)) for j in range(c)]
        rows[-1] = last
    return ExactMatrix(rows, c, "Q(x)")
