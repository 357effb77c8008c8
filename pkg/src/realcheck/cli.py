"""Command line front end.

    realcheck construct 24cell-regular -o c24.json
    realcheck rank c24.json --expect-full
    realcheck certify-24cell --jobs 2

Exit status: 0 when the command succeeds and its assertion (if any) holds,
1 when a mathematical assertion fails, 2 for unreadable input or bad flags.
"""
from __future__ import annotations

import argparse
import json
import sys

from .analysis import (
    LimitDegenerateError,
    analyze,
    batch_screen,
    lin_L,
    nonsmoothness_certificate,
    rg_section,
    rg_vertices,
    symbolic_family_jacobian,
    tangent_limit,
)
from .constructions import CONSTRUCTORS, FAMILY_SIGNS, _signs_arg, build
from .degeneracy import (
    CriterionError,
    DegeneracyOrdering,
    EdgeRidgeError,
    IncidenceGraph,
    almost3_ordering,
    check_criterion,
    degeneracy_order,
    edge_removal_bound,
    edge_ridge_order,
    hypersimplex_ordering,
    lick_white_check,
)
from .exact_arith import format_rational
from .interpolation import DegreeBoundError
from .jacobian import build_jacobian, jacobian_verdict
from .linalg import rank_via_interpolation
from .polytope import LabeledPolytope, NotCenteredError, RealizationError, facets_from_vertices


class ParseError(Exception):
    pass


class AssertionFailed(Exception):
    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _emit(obj, path: str | None) -> None:
    text = _dumps(obj)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def _load(path: str) -> LabeledPolytope:
    data = _read_json(path)
    try:
        return LabeledPolytope.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, (RealizationError, NotCenteredError)):
            raise
        raise ParseError(f"{path}: not a polytope description ({exc})") from exc


# ---------------------------------------------------------------------------
# verbs


def cmd_construct(args) -> int:
    params = {}
    for key in ("d", "n", "k", "signs", "x", "params"):
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    try:
        P = build(args.name, **params)
    except KeyError as exc:
        raise ParseError(str(exc.args[0])) from exc
    except (TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad parameters for {args.name}: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, (RealizationError, NotCenteredError)):
            raise
        raise ParseError(f"bad parameters for {args.name}: {exc}") from exc
    out = P.to_json()
    out["provenance"] = {"construction": args.name, "parameters": params}
    _emit(out, args.output)
    return 0


def cmd_facets(args) -> int:
    data = _read_json(args.input)
    try:
        d = int(data["dim"])
        P = facets_from_vertices(d, [tuple(v) for v in _vertices(data)])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (RealizationError, NotCenteredError)):
            raise
        raise ParseError(f"{args.input}: {exc}") from exc
    _emit(P.with_name(data.get("name", "")).to_json(), args.output)
    return 0


def _vertices(data):
    from .exact_arith import parse_rational

    return [[parse_rational(c) for c in v] for v in data["vertices"]]


def cmd_verify(args) -> int:
    P = _load(args.input)
    print(f"{P.name or args.input}: valid centered realization, n={P.n} m={P.m} mu={P.mu}")
    return 0


def cmd_ng(args) -> int:
    P = _load(args.input)
    print(f"NG {P.natural_guess()} = {P.dim}*({P.n}+{P.m}) - {P.mu}")
    return 0


def _signs(text) -> tuple:
    try:
        return _signs_arg(text or "+,+,+")
    except KeyError as exc:
        raise ParseError(f"signs must look like +,-,+ (got {text!r})") from exc


def _rank_line(rank: int, mu: int, bound: int) -> str:
    state = "full" if rank == mu else "not full"
    return f"rank {rank} / {mu}, {state}, upper bound {bound}"


def cmd_rank(args) -> int:
    if args.symbolic:
        signs = _signs(args.signs)
        J = symbolic_family_jacobian(signs)
        r, _ = rank_via_interpolation(J, jobs=args.jobs)
        print(_rank_line(r, J.nrows, J.ncols - r) + " (over Q(x))")
        full = r == J.nrows
        if args.dump_jacobian:
            _emit(J.to_json(), args.dump_jacobian)
    else:
        if not args.input:
            raise ParseError("rank needs an input file unless --symbolic is given")
        P = _load(args.input)
        v = jacobian_verdict(P, tangent=False)
        print(_rank_line(v.rank, v.mu, v.upper_bound))
        full = v.full_rank
        if args.dump_jacobian:
            _emit(build_jacobian(P).to_json(), args.dump_jacobian)
    if args.expect_full and not full:
        raise AssertionFailed("Jacobian is not of full row rank")
    return 0


def _ordering(P: LabeledPolytope, mode: str) -> DegeneracyOrdering | None:
    if mode == "almost3":
        return almost3_ordering(P)
    if mode == "min-degree":
        return degeneracy_order(IncidenceGraph.from_polytope(P))
    if mode == "edge-ridge":
        return edge_ridge_order(P)
    if mode == "hypersimplex":
        return hypersimplex_ordering(P)
    raise ParseError(f"unknown ordering mode {mode!r}")


def cmd_degeneracy(args) -> int:
    P = _load(args.input)
    G = IncidenceGraph.from_polytope(P)
    if args.ordering_in:
        order = DegeneracyOrdering.from_json(_read_json(args.ordering_in))
    else:
        order = _ordering(P, args.mode)
    out = {"almost3": almost3_ordering(P) is not None, "mode": args.mode}
    if order is None:
        out["ordering"] = None
        print(f"no {args.mode} ordering")
    else:
        verdict = check_criterion(P, order)
        out["ordering"] = order.to_json()
        out["criterion"] = verdict.to_json()
        removed = set(map(tuple, order.removed_edges))
        H = IncidenceGraph(G.n, G.m, tuple(e for e in G.edges if tuple(e) not in removed))
        if H.node_count >= verdict.back_degree:
            out["lick_white_slack"] = lick_white_check(H, verdict.back_degree)
        print(f"{args.mode}: back degree {verdict.back_degree}, criterion {'passes' if verdict.passed else 'fails'}")
        if args.ordering_out:
            _emit(order.to_json(), args.ordering_out)
    if args.output:
        _emit(out, args.output)
    if args.expect_pass and not (order is not None and out["criterion"]["passed"]):
        raise AssertionFailed("degeneracy criterion does not certify full rank", out)
    return 0


def cmd_bound(args) -> int:
    P = _load(args.input)
    try:
        order = _ordering(P, args.mode)
        if order is None:
            raise CriterionError(f"no {args.mode} ordering")
        bound = edge_removal_bound(P, order)
    except (CriterionError, EdgeRidgeError) as exc:
        raise AssertionFailed(str(exc)) from exc
    r = len(order.removed_edges)
    print(f"{args.mode} ordering: r = {r}, upper bound {bound} (NG {P.natural_guess()})")
    if args.ordering_out:
        _emit(order.to_json(), args.ordering_out)
    if args.output:
        _emit({"r": r, "upper_bound": bound, "ng": P.natural_guess(), "ordering": order.to_json()}, args.output)
    return 0


def cmd_tangent_limit(args) -> int:
    signs = _signs(args.signs)
    L = tangent_limit(signs, args.method, orthogonalize=args.orthogonalize, jobs=args.jobs)
    out = {
        "signs": ",".join("+" if s > 0 else "-" for s in signs),
        "dim": L.dim,
        "ambient": L.ambient,
        "basis": [[format_rational(v) for v in r] for r in L.basis.rows()],
    }
    print(f"limit subspace of dimension {L.dim} in ambient {L.ambient}", file=sys.stderr)
    _emit(out, args.output)
    return 0


def cmd_certify(args) -> int:
    limits = {s: tangent_limit(s, args.method) for s in FAMILY_SIGNS} if args.jobs <= 1 else None
    cert = nonsmoothness_certificate(args.method, args.jobs, limits)
    if limits is None:
        from .linalg import Subspace, ExactMatrix
        from .exact_arith import parse_rational

        limits = {
            s: Subspace(ExactMatrix([[parse_rational(c) for c in r] for r in f["basis"]], cert["ambient"]))
            for s, f in zip(FAMILY_SIGNS, cert["families"])
        }
    sections = rg_section([limits[s] for s in FAMILY_SIGNS])
    cert["rg_section"] = {
        "fixed_vertices": rg_vertices(),
        "lin_dim": lin_L().dim,
        "dims": [S.dim for S in sections],
        "distinct": len({S.basis for S in sections}),
    }
    _emit(cert, args.output)
    if not cert["not_smooth"]:
        raise AssertionFailed("no non-smoothness certificate", {k: v for k, v in cert.items() if k != "families"})
    return 0


def cmd_report(args) -> int:
    P = _load(args.input)
    data = _read_json(args.input)
    prov = data.get("provenance") or {"name": P.name, "source": args.input}
    _emit(analyze(P, prov).to_json(), args.output)
    return 0


def cmd_batch(args) -> int:
    _emit(batch_screen(args.inputs), args.output)
    return 0


# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realcheck", description="Exact realization-space checks for polytopes.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("construct", help="build a named polytope")
    c.add_argument("name", help="one of: " + ", ".join(sorted(CONSTRUCTORS)))
    c.add_argument("--d", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--signs")
    c.add_argument("--x")
    c.add_argument("--params", help="a,b,c,d for 24cell-paffenholz")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    f = sub.add_parser("facets", help="compute facets from vertices")
    f.add_argument("input")
    f.add_argument("-o", "--output")
    f.set_defaults(func=cmd_facets)

    v = sub.add_parser("verify", help="check a stored realization")
    v.add_argument("input")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("ng", help="natural guess")
    n.add_argument("input")
    n.set_defaults(func=cmd_ng)

    r = sub.add_parser("rank", help="Jacobian rank of the characteristic map")
    r.add_argument("input", nargs="?")
    r.add_argument("--expect-full", action="store_true")
    r.add_argument("--dump-jacobian", metavar="PATH")
    r.add_argument("--symbolic", action="store_true", help="rank over Q(x) of a 24-cell family")
    r.add_argument("--signs")
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=cmd_rank)

    modes = ["almost3", "min-degree", "edge-ridge", "hypersimplex"]
    d = sub.add_parser("degeneracy", help="orderings and the degeneracy criterion")
    d.add_argument("input")
    d.add_argument("--mode", choices=modes, default="almost3")
    d.add_argument("--ordering-in", metavar="PATH")
    d.add_argument("--ordering-out", metavar="PATH")
    d.add_argument("--expect-pass", action="store_true")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_degeneracy)

    b = sub.add_parser("bound", help="upper bound NG + r from an ordering with removed edges")
    b.add_argument("input")
    b.add_argument("--mode", choices=modes, default="edge-ridge")
    b.add_argument("--ordering-out", metavar="PATH")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bound)

    t = sub.add_parser("tangent-limit", help="limit tangent space of a 24-cell family at x = 0")
    t.add_argument("--signs", default="+,+,+")
    t.add_argument("--method", choices=["series", "interpolation"], default="series")
    t.add_argument("--orthogonalize", action="store_true")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("-o", "--output")
    t.set_defaults(func=cmd_tangent_limit)

    cc = sub.add_parser("certify-24cell", help="non-smoothness certificate at the regular 24-cell")
    cc.add_argument("--method", choices=["series", "interpolation"], default="series")
    cc.add_argument("--jobs", type=int, default=1)
    cc.add_argument("-o", "--output")
    cc.set_defaults(func=cmd_certify)

    rp = sub.add_parser("report", help="full analysis report")
    rp.add_argument("input")
    rp.add_argument("-o", "--output")
    rp.set_defaults(func=cmd_report)

    bt = sub.add_parser("batch", help="screen several polytope files")
    bt.add_argument("inputs", nargs="*")
    bt.add_argument("-o", "--output")
    bt.set_defaults(func=cmd_batch)
    return p


def main(argv=None) -> int:
    parser = _parser()
    raw = list(sys.argv[1:] if argv is None else argv)
    # values such as "-,+,-" would otherwise be read as options
    argv, k = [], 0
    while k < len(raw):
        if raw[k] in ("--signs", "--params") and k + 1 < len(raw):
            argv.append(f"{raw[k]}={raw[k + 1]}")
            k += 2
        else:
            argv.append(raw[k])
            k += 1
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionFailed as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        if exc.payload is not None:
            print(_dumps(exc.payload), file=sys.stderr)
        return 1
    except (RealizationError, NotCenteredError, LimitDegenerateError, DegreeBoundError) as exc:
        print(f"assertion failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
