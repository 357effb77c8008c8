"""Polytopes used by the soundness suites."""
from realcheck.constructions import (
    bipyramid,
    cross_polytope,
    cube,
    cyclic,
    hypersimplex,
    polygon,
    prism,
    pyramid,
    simplex,
)
from realcheck.degeneracy import hypersimplex_ordering
from realcheck.polytope import polar


def corpus():
    """Pairs (polytope, extra orderings to check)."""
    out = []
    for d in (2, 3, 4):
        out.append((cube(d), []))
    for d in (2, 3, 4, 5):
        out.append((simplex(d), []))
    for d in (3, 4):
        out.append((cross_polytope(d), []))
    for k in (3, 4, 5, 6):
        out.append((prism(polygon(k)), []))
        out.append((pyramid(polygon(k)), []))
        out.append((bipyramid(polygon(k)), []))
    out.append((prism(prism(polygon(3))), []))
    out.append((pyramid(prism(polygon(3))), []))
    out.append((bipyramid(prism(polygon(3))), []))
    out.append((pyramid(cube(3)), []))
    out.append((bipyramid(cube(3)), []))
    for d in (4, 5, 6, 7):
        H = hypersimplex(d, 2)
        out.append((H, [hypersimplex_ordering(H)]))
    for n in (5, 6, 7, 8):
        out.append((polar(cyclic(3, n)), []))
        out.append((cyclic(3, n), []))
    return out
