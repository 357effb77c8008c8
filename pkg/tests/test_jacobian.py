from fractions import Fraction

import pytest

from realcheck.constructions import ncp_counts, cube, family_24cell, p1, paffenholz_24cell, regular_24cell, simplex
from realcheck.jacobian import (
    build_jacobian,
    characteristic_map,
    homogeneous_jacobian,
    homogeneous_rank,
    jacobian_verdict,
    natural_guess,
)
from realcheck.linalg import ExactMatrix
from realcheck.polytope import RealizationError, facets_from_vertices, homogenize


def test_natural_guess():
    assert natural_guess(24, 24, 144, 4) == 48
    assert natural_guess(8, 6, 24, 3) == 18
    for n in range(4, 12):
        c = ncp_counts(4, n)
        assert c["m"] == (n - 2) * 2 ** (n - 2)
        assert c["ng"] == natural_guess(c["n"], c["m"], c["mu"], 4) == (6 - n) * 2 ** n
    assert ncp_counts(4, 7)["ng"] == -128
    # the cube is NCP_d(d)
    assert ncp_counts(3, 3)["m"] == 6 and ncp_counts(3, 3)["ng"] == 18
    assert all(ncp_counts(d, n)["ng"] < 0 for d in range(5, 8) for n in range(d + 1, d + 4))


def test_square_jacobian():
    P = facets_from_vertices(2, [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    J = build_jacobian(P)
    assert J.matrix.shape == (8, 16)
    i, j = P.incidences[0]
    row = J.matrix.rows()[0]
    assert tuple(row[2 * i:2 * i + 2]) == P.facets[j]
    assert tuple(row[8 + 2 * j:8 + 2 * j + 2]) == P.vertices[i]
    assert all(v == 0 for v in characteristic_map(P))
    v = jacobian_verdict(P)
    assert v.full_rank and v.local_dim_if_full == 8 and v.tangent.dim == 8


def test_ranks():
    assert jacobian_verdict(cube(3), tangent=False).rank == 24
    assert jacobian_verdict(regular_24cell(), tangent=False).rank == 140
    assert jacobian_verdict(p1(), tangent=False).upper_bound == 26
    P = paffenholz_24cell(Fraction(1, 3), Fraction(1, 5), Fraction(-1, 7), Fraction(1, 2))
    assert jacobian_verdict(P, tangent=False).rank == 142
    assert jacobian_verdict(family_24cell((1, -1, 1), Fraction(1, 4)), tangent=False).full_rank


def test_rank_is_translation_invariant():
    P = cube(3)
    Q = P.translate((Fraction(1, 3), Fraction(-1, 5), 0))
    assert jacobian_verdict(Q, tangent=False).rank == jacobian_verdict(P, tangent=False).rank


def test_rejects_non_realization():
    P = cube(3)
    with pytest.raises(RealizationError):
        jacobian_verdict(P, P.vertices, [tuple(2 * c for c in a) for a in P.facets])


def test_tangent_contains_scaling_directions():
    # v -> (1 + t) v, a -> a / (1 + t) has derivative (v, -a)
    P = simplex(3)
    v = jacobian_verdict(P)
    direction = [c for w in P.vertices for c in w] + [-c for a in P.facets for c in a]
    assert v.tangent.contains(direction)


def test_homogeneous():
    C = homogenize(cube(3))
    H = homogeneous_jacobian(C)
    assert H.shape == (24 + 14, 4 * 14)
    info = homogeneous_rank(C)
    assert info["rows"] == 38 and info["upper_bound"] == 56 - info["rank"]
    with pytest.raises(RealizationError):
        homogeneous_jacobian(C, W=[tuple(-c for c in w) for w in C.rays])
