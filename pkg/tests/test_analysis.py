import json
from fractions import Fraction

import pytest

from realcheck.analysis import (
    LIMIT_DIM,
    analyze,
    batch_screen,
    lin_L,
    rg_section,
    rg_vertices,
    symbolic_family_jacobian,
    tangent_limit,
)
from realcheck.constructions import FAMILY_SIGNS, cube, cross_polytope, family_24cell, p1, p2, p3, regular_24cell, simplex
from realcheck.jacobian import build_jacobian
from realcheck.linalg import ExactMatrix, Subspace, kernel_basis, kernel_limit_at_zero
from shared import certificate, limits


def test_analyze_examples():
    r = analyze(cube(3))
    assert (r.ng, r.jacobian_rank) == (18, 24)
    assert r.verdicts["jacobian_full"] and r.verdicts["almost3"] and r.verdicts["degeneracy_checked"]
    r = analyze(regular_24cell())
    assert (r.ng, r.jacobian_rank, r.verdicts["upper_bound"]) == (48, 140, 52)
    assert not r.verdicts["almost3"]
    r = analyze(p1())
    assert (r.ng, r.jacobian_rank, r.verdicts["upper_bound"]) == (25, 42, 26)
    c = r.counts
    assert r.ng == c["d"] * (c["n"] + c["m"]) - c["mu"]
    assert r.verdicts["upper_bound"] >= r.ng


def test_analyze_is_deterministic_and_roundtrips():
    P = p2()
    from realcheck.polytope import LabeledPolytope

    Q = LabeledPolytope.from_json(json.loads(json.dumps(P.to_json())))
    assert analyze(P).to_json() == analyze(Q).to_json()


def test_counterexample_bounds():
    for P, bound in ((p1(), 26), (p2(), 27), (p3(), 27)):
        assert analyze(P).verdicts["upper_bound"] == bound == P.natural_guess() + 1


def test_symbolic_jacobian_shape():
    J = symbolic_family_jacobian((1, 1, 1))
    assert J.shape == (144, 192) and J.field == "Q(x)"
    # specializing the symbolic matrix agrees with the numeric family
    x = Fraction(1, 3)
    assert J.evaluate(x) == build_jacobian(family_24cell((1, 1, 1), x)).matrix


def test_limits():
    L = limits()
    K0 = kernel_basis(build_jacobian(family_24cell((1, 1, 1), 0)).matrix)
    assert K0.dim == 52
    for s, S in L.items():
        assert S.dim == LIMIT_DIM and S.ambient == 192
        assert S.is_subspace_of(K0)
    assert len({S.basis for S in L.values()}) == 4


def test_limit_is_basis_independent():
    # permute columns (swap the first two vertex blocks), recompute, permute back
    J = symbolic_family_jacobian((1, -1, 1))
    perm = list(range(4, 8)) + list(range(0, 4)) + list(range(8, 192))
    Jp = J.select_columns(perm)
    Lp = kernel_limit_at_zero(Jp, generic_rank=144)
    inv = [perm.index(c) for c in range(192)]
    back = Subspace(Lp.basis.select_columns(inv))
    assert back == limits()[(1, -1, 1)]


def test_certificate():
    c = certificate()
    assert c["distinct_limit_subspaces"] == 4
    assert c["limit_dims"] == [48] and c["regular_kernel_dim"] == 52
    assert c["all_contained_in_regular_kernel"] and c["not_smooth"]
    assert len(c["families"]) == 8 and all(len(f["basis"]) == 48 for f in c["families"])


def test_rg_section():
    assert rg_vertices() == [7, 15, 19, 21, 23]
    assert lin_L().dim == 172
    secs = rg_section([limits()[s] for s in FAMILY_SIGNS])
    assert [S.dim for S in secs] == [28] * 8
    assert len({S.basis for S in secs}) == 4


def test_rg_vertices_with_affine_map():
    P = family_24cell((1, 1, 1), 0)
    M = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert rg_vertices(P, (M, (0, 0, 0, 0))) == [7, 15, 19, 21, 23]
    with pytest.raises(LookupError):
        rg_vertices(regular_24cell())


def test_batch_screen(tmp_path):
    files = []
    for P in (p1(), p2(), p3()):
        f = tmp_path / f"{P.name}.json"
        f.write_text(json.dumps(P.to_json()))
        files.append(f)
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    rows = batch_screen(files + [bad])
    assert [r.get("almost3") for r in rows[:3]] == [False, False, False]
    assert "error" in rows[3]
    assert all(r["almost3"] for r in batch_screen([cube(3), simplex(3), cross_polytope(3)]))
    assert batch_screen([]) == []


def test_interpolation_path_rejects_bad_method():
    with pytest.raises(ValueError):
        tangent_limit((1, 1, 1), method="magic")
