from fractions import Fraction

import pytest

from realcheck.constructions import (
    FAMILY_SIGNS,
    P3_APEX,
    FamilyPoint24,
    bipyramid,
    build,
    cross_polytope,
    cube,
    cyclic,
    family_24cell,
    family_24cell_symbolic,
    hypersimplex,
    p1,
    p2,
    p3,
    paffenholz_24cell,
    polygon,
    prism,
    pyramid,
    search_p3_apex,
    simplex,
)
from realcheck.polytope import verify_realization

F = Fraction


def counts(P):
    return P.n, P.m, P.mu


def test_basic_counts():
    assert counts(prism(polygon(3))) == (6, 5, 18)
    assert counts(pyramid(prism(polygon(3)))) == (7, 6, 29)
    assert counts(bipyramid(prism(polygon(3)))) == (8, 10, 46)
    assert counts(cyclic(4, 7)) == (7, 14, 56)
    assert counts(hypersimplex(5, 2)) == (10, 10, 50)
    assert counts(cross_polytope(4)) == (8, 16, 64)
    assert counts(simplex(3)) == (4, 4, 12)


def test_three_counterexamples():
    assert counts(p1()) == (8, 9, 43)
    assert counts(p2()) == (8, 10, 46)
    assert counts(p3()) == (8, 11, 50)


def test_p3_apex_search_is_reproducible():
    assert search_p3_apex() == P3_APEX


def test_bipyramid_validation():
    with pytest.raises(ValueError):
        bipyramid(polygon(3), (5, 5, 1), (0, 0, -1))
    with pytest.raises(ValueError):
        bipyramid(polygon(3), (0, 0, 1), (0, 0, 1))


def test_paffenholz_validation():
    assert counts(paffenholz_24cell(F(1, 3), 0, 0, 0)) == (24, 24, 144)
    with pytest.raises(ValueError):
        paffenholz_24cell(1, 0, 0, 0)


def test_family_point():
    pt = FamilyPoint24((1, -1, 1), F(1, 2))
    assert pt.a == F(8, 5) and pt.t == F(4, 5)
    with pytest.raises(ValueError):
        FamilyPoint24((1, 0, 1), F(1, 2))
    with pytest.raises(ValueError):
        FamilyPoint24((1, 1, 1), 1)


def test_families_share_combinatorics():
    ref = family_24cell(FAMILY_SIGNS[0], F(1, 2)).incidences
    for s in FAMILY_SIGNS:
        for x in (0, F(1, 4), F(3, 4)):
            assert family_24cell(s, x).incidences == ref


def test_symbolic_family_specializes():
    S = family_24cell_symbolic((1, -1, -1))
    for x in (0, F(1, 3), F(2, 3)):
        P = S.at(x)
        Q = family_24cell((1, -1, -1), x)
        assert P.vertices == Q.vertices and P.facets == Q.facets
        assert verify_realization(P, P.vertices, P.facets)


def test_registry():
    assert counts(build("cube", d=4)) == (16, 8, 64)
    assert counts(build("24cell-family", signs="-,+,-", x="1/3")) == (24, 24, 144)
    assert counts(build("24cell-paffenholz", params="1/3,1/5,-1/7,1/2")) == (24, 24, 144)
    with pytest.raises(KeyError):
        build("dodecahedron")
