import pytest

from realcheck.constructions import (
    cross_polytope,
    cube,
    family_24cell,
    hypersimplex,
    p1,
    p2,
    p3,
    polygon,
    prism,
    regular_24cell,
    simplex,
)
from realcheck.degeneracy import (
    DegeneracyOrdering,
    IncidenceGraph,
    Node,
    almost3_ordering,
    almost3_test,
    check_criterion,
    degeneracy_order,
    edge_removal_bound,
    edge_ridge_order,
    hypersimplex_ordering,
    lick_white_check,
)
from realcheck.jacobian import jacobian_verdict


def test_degeneracy_order_small():
    G = IncidenceGraph.from_polytope(cube(3))
    order = degeneracy_order(G)
    assert order.k == 3 and order.back_degree(G) == 3
    assert len(order.order) == 14
    assert lick_white_check(G, 3) == 3 * 14 - 6 - 24
    assert DegeneracyOrdering.from_json(order.to_json()) == order


def test_lick_white_rejects():
    G = IncidenceGraph.from_polytope(regular_24cell())
    with pytest.raises(ValueError):
        lick_white_check(G, 3)
    assert lick_white_check(G, degeneracy_order(G).k) >= 0


def test_almost3():
    for P in (cube(3), simplex(4), cross_polytope(4), prism(polygon(5)), hypersimplex(5, 2)):
        assert almost3_test(P)
    for P in (p1(), p2(), p3(), regular_24cell(), hypersimplex(6, 2)):
        assert not almost3_test(P)


def test_criterion_on_simple_polytopes():
    for P in (cube(3), cube(4), simplex(3)):
        order = almost3_ordering(P)
        v = check_criterion(P, order)
        assert v.passed and v.combinatorial and v.degenerate_ok
        assert jacobian_verdict(P, tangent=False).full_rank


def test_criterion_requires_complete_ordering():
    P = cube(3)
    order = almost3_ordering(P)
    with pytest.raises(ValueError):
        check_criterion(P, DegeneracyOrdering(order.order[:-1], order.k))


def test_24cell_edge_ridge_bound():
    P = regular_24cell()
    order = edge_ridge_order(P)
    assert len(order.removed_edges) == 4
    assert edge_removal_bound(P, order) == 52
    assert edge_removal_bound(family_24cell((1, 1, 1), 0), edge_ridge_order(family_24cell((1, 1, 1), 0))) == 52


def test_cube_edge_ridge():
    P = cube(3)
    order = edge_ridge_order(P)
    assert edge_removal_bound(P, order) == 18 + len(order.removed_edges)


def test_hypersimplex_orderings():
    for d in (4, 5, 6):
        P = hypersimplex(d, 2)
        order = hypersimplex_ordering(P)
        assert check_criterion(P, order).passed
        assert jacobian_verdict(P, tangent=False).rank == P.mu


def test_node_json():
    v = Node(1, 4)
    assert Node.from_json(v.to_json()) == v
