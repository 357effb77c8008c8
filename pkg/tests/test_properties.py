"""Randomized suites over the exact core, 1000 cases each."""
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from realcheck.constructions import cross_polytope, cube, p1, polygon, prism, pyramid, regular_24cell
from realcheck.exact_arith import RatFunc
from realcheck.jacobian import build_jacobian, characteristic_map
from realcheck.linalg import ExactMatrix, kernel_matrix, rank, rref
from realcheck.polytope import containing_facets, face_closure
from strategies import nonzero_ratfuncs, q_matrices, ratfuncs

CASES = 1000
ZERO = RatFunc.constant(0)
ONE = RatFunc.constant(1)

_POOL = [cube(3), cross_polytope(3), pyramid(prism(polygon(3))), p1(), regular_24cell()]


@settings(max_examples=CASES)
@given(ratfuncs, ratfuncs, ratfuncs, nonzero_ratfuncs)
def test_field_axioms(a, b, c, u):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a + (-a) == ZERO
    assert u * u.inverse() == ONE
    assert (a / u) * u == a


@settings(max_examples=CASES)
@given(q_matrices())
def test_rank_nullity(M):
    K = kernel_matrix(M)
    assert rank(M) + K.nrows == M.ncols
    if K.nrows:
        assert (M @ K.transpose()).is_zero()
        assert rank(K) == K.nrows


@settings(max_examples=CASES)
@given(q_matrices())
def test_rref_idempotent(M):
    R, r, piv = rref(M)
    assert r == rank(M) == rank(M.transpose())
    if r:
        R2, r2, piv2 = rref(R)
        assert R2 == R and piv2 == piv
        for k, c in enumerate(piv):
            assert R[k, c] == 1
            assert all(R[t, c] == 0 for t in range(r) if t != k)


@st.composite
def _vertex_sets(draw):
    P = draw(st.sampled_from(_POOL))
    S = draw(st.sets(st.integers(0, P.n - 1), min_size=1, max_size=P.n))
    T = draw(st.sets(st.integers(0, P.n - 1), max_size=P.n))
    return P, frozenset(S), frozenset(S | T)


@settings(max_examples=CASES)
@given(_vertex_sets())
def test_closure_laws(case):
    P, S, T = case
    cS = face_closure(P, S)
    assert S <= cS
    assert face_closure(P, cS) == cS
    assert cS <= face_closure(P, T)
    assert containing_facets(P, cS) == containing_facets(P, S)


@st.composite
def _perturbations(draw):
    P = draw(st.sampled_from(_POOL[:4]))
    vec = st.lists(st.integers(-4, 4).map(Fraction), min_size=P.dim, max_size=P.dim).map(tuple)
    H = draw(st.lists(vec, min_size=P.n, max_size=P.n))
    K = draw(st.lists(vec, min_size=P.m, max_size=P.m))
    return P, H, K


def _add(cols, delta):
    return [tuple(a + b for a, b in zip(c, d)) for c, d in zip(cols, delta)]


@settings(max_examples=CASES)
@given(_perturbations())
def test_quadratic_expansion(case):
    P, H, K = case
    W, B = list(P.vertices), list(P.facets)
    lhs = characteristic_map(P, _add(W, H), _add(B, K))
    base = characteristic_map(P, W, B)
    J = build_jacobian(P, W, B).matrix
    step = [c for h in H for c in h] + [c for k in K for c in k]
    lin = (J @ ExactMatrix([[c] for c in step], 1)).column(0)
    quad = [sum(a * b for a, b in zip(H[i], K[j])) for i, j in P.incidences]
    assert list(lhs) == [b + l + q for b, l, q in zip(base, lin, quad)]
