"""Acceptance criteria 1-9.

Each test prints one line ``criterion N: PASS|FAIL ...``.  Run standalone with
``python3 tests/test_acceptance.py`` or through pytest.
"""
import os
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from corpus import corpus  # noqa: E402
from shared import certificate, limits  # noqa: E402

from realcheck.analysis import lin_L, rg_section, rg_vertices, symbolic_family_jacobian  # noqa: E402
from realcheck.constructions import (  # noqa: E402
    FAMILY_SIGNS,
    cube,
    family_24cell,
    hypersimplex,
    ncp_counts,
    p1,
    p2,
    p3,
    paffenholz_24cell,
    regular_24cell,
)
from realcheck.degeneracy import (  # noqa: E402
    IncidenceGraph,
    almost3_ordering,
    check_criterion,
    degeneracy_order,
    edge_removal_bound,
    edge_ridge_order,
    lick_white_check,
)
from realcheck.jacobian import jacobian_verdict  # noqa: E402
from realcheck.linalg import Subspace, kernel_basis, rank, rank_via_interpolation  # noqa: E402
from realcheck.polytope import edges  # noqa: E402

F = Fraction


def _line(n, ok, detail, capsys=None):
    text = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + text)
    else:
        print(text)
    return ok


def criterion_1():
    got = {
        "24-cell": regular_24cell().natural_guess(),
        "cube": cube(3).natural_guess(),
        "P1": p1().natural_guess(),
        "P2": p2().natural_guess(),
        "P3": p3().natural_guess(),
        "NCP_4(7)": ncp_counts(4, 7)["ng"],
    }
    want = {"24-cell": 48, "cube": 18, "P1": 25, "P2": 26, "P3": 26, "NCP_4(7)": -128}
    for d in range(4, 8):
        got[f"D_{d}(2)"] = hypersimplex(d, 2).natural_guess()
        want[f"D_{d}(2)"] = 3 * (d * d - d) // 2
    return got == want, f"NG {got}"


def criterion_2():
    r_reg = jacobian_verdict(regular_24cell(), tangent=False).rank
    r_paf = jacobian_verdict(paffenholz_24cell(F(1, 3), F(1, 5), F(-1, 7), F(1, 2)), tangent=False).rank
    fam = [jacobian_verdict(family_24cell(s, x), tangent=False).rank
           for s in FAMILY_SIGNS for x in (F(1, 4), F(1, 2), F(3, 4))]
    ok = r_reg == 140 and r_paf == 142 and fam == [144] * 24
    return ok, f"regular {r_reg}, Paffenholz {r_paf}, family ranks {sorted(set(fam))} over {len(fam)} points"


def criterion_3():
    ranks = []
    for s in FAMILY_SIGNS:
        J = symbolic_family_jacobian(s)
        r = rank_via_interpolation(J)[0]
        # rank over Q(x) is at least the rank at any admissible point, and at most 144 rows
        at_half = rank(J.evaluate(F(1, 2)))
        ranks.append((r, at_half))
    # agreement with direct elimination over Q(x) on a leading block of rows
    J = symbolic_family_jacobian((1, 1, 1))
    blk = J.select_rows(range(48))
    cols = [c for c in range(J.ncols) if any(row[c] for row in blk.rows())]
    blk = blk.select_columns(cols)
    direct = rank(blk)
    interp = rank_via_interpolation(blk)[0]
    small = J.select_rows(range(24))
    small = small.select_columns([c for c in range(J.ncols) if any(row[c] for row in small.rows())])
    _, K = rank_via_interpolation(small, kernel=True)
    kernels_agree = Subspace(K) == kernel_basis(small)
    ok = all(r == 144 and sp == 144 for r, sp in ranks) and direct == interp == 48 and kernels_agree
    return ok, (f"Q(x) ranks {sorted({r for r, _ in ranks})} for 8 families (specialization 144); "
                f"48-row block direct {direct} = interpolated {interp}; 24-row block kernels agree {kernels_agree}")


def criterion_4():
    t = time.time()
    c = certificate()
    dt = time.time() - t
    ok = (c["limit_dims"] == [48] and len(c["families"]) == 8 and c["distinct_limit_subspaces"] == 4
          and c["all_contained_in_regular_kernel"] and c["regular_kernel_dim"] == 52)
    return ok, (f"8 limits of dim {c['limit_dims']}, {c['distinct_limit_subspaces']} distinct, "
                f"contained in {c['regular_kernel_dim']}-dim kernel: {c['all_contained_in_regular_kernel']} "
                f"({dt:.1f}s)")


def criterion_5():
    secs = rg_section([limits()[s] for s in FAMILY_SIGNS])
    dims = [S.dim for S in secs]
    distinct = len({S.basis for S in secs})
    lin = lin_L().dim
    ok = dims == [28] * 8 and distinct == 4 and lin == 172
    return ok, f"fixed vertices {rg_vertices()}, lin(L) dim {lin}, section dims {sorted(set(dims))}, {distinct} distinct"


def criterion_6():
    P = regular_24cell()
    order = edge_ridge_order(P)
    r = len(order.removed_edges)
    bound = edge_removal_bound(P, order)
    fam = jacobian_verdict(family_24cell((1, 1, 1), F(1, 2)), tangent=False)
    ok = r == 4 and bound == 52 and fam.full_rank and fam.local_dim_if_full == 48
    return ok, f"edge-ridge r = {r}, upper bound {bound}; lower bound {fam.local_dim_if_full} from a full-rank family point"


def criterion_7():
    rows = []
    for P, rk, ub in ((p1(), 42, 26), (p2(), 45, 27), (p3(), 49, 27)):
        v = jacobian_verdict(P, tangent=False)
        rows.append((P.name, v.rank, v.upper_bound, P.natural_guess(), (v.rank, v.upper_bound) == (rk, ub)))
    ok = all(r[4] and r[2] == r[3] + 1 for r in rows)
    return ok, "; ".join(f"{name} rank {rk}, upper bound {ub} = NG {ng} + 1" for name, rk, ub, ng, _ in rows)


def criterion_8():
    checked = full_by_a3 = full_by_crit = 0
    bad = []
    for P, extra in corpus():
        G = IncidenceGraph.from_polytope(P)
        full = jacobian_verdict(P, tangent=False).full_rank
        orders = [degeneracy_order(G)] + list(extra)
        a3 = almost3_ordering(P)
        if a3 is not None:
            orders.append(a3)
            full_by_a3 += 1
            if not full:
                bad.append(f"{P.name}: almost3 but rank deficient")
        for order in orders:
            k = order.back_degree(G)
            if lick_white_check(G, k) < 0:
                bad.append(f"{P.name}: Lick-White")
            if k <= P.dim and check_criterion(P, order).passed:
                full_by_crit += 1
                if not full:
                    bad.append(f"{P.name}: criterion passed but rank deficient")
        if P.dim == 3 and P.natural_guess() != len(edges(P)) + 6:
            bad.append(f"{P.name}: NG != f1 + 6")
        checked += 1
    return not bad, f"{checked} polytopes, {full_by_a3} almost-3, {full_by_crit} criterion passes, failures {bad}"


def criterion_9():
    import test_properties as tp

    suites = [tp.test_field_axioms, tp.test_rank_nullity, tp.test_rref_idempotent,
              tp.test_closure_laws, tp.test_quadratic_expansion]
    failed = []
    for fn in suites:
        try:
            fn()
        except Exception as exc:  # report the failing suite, then fail
            failed.append(f"{fn.__name__}: {type(exc).__name__}")
    return not failed, f"{len(suites)} suites x {tp.CASES} cases, failures {failed}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    _line(n, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(_line(n, ok, detail))
    sys.exit(0 if all(results) else 1)
