"""Command line interface.

Every subcommand prints a JSON object on stdout (deterministic key order);
``orbits`` can emit CSV instead via ``--format csv``.  Exit codes: 0 on
success, 1 when a verification fails, 2 on usage errors, 3 when a
computation would exceed its budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Sequence

from . import io as rio
from .cliques import (
    CanonicalCliqueSpec,
    build_canonical_clique,
    classify_max_clique,
    is_clique,
    verify_ekr,
)
from .codes import (
    RankCode,
    certify_graph_parameters,
    clique_cover_complement,
    color_graph,
    mrd_code,
    verify_distance,
)
from .errors import (
    DEFAULT_ENUMERATION_BUDGET,
    DEFAULT_EXACT_SEARCH_BUDGET,
    DEFAULT_PAIR_BUDGET,
    DEFAULT_VERTEX_BUDGET,
    BudgetExceededError,
    NotIntersectingError,
    UsageError,
    VerificationError,
)
from .graph import (
    GraphSpec,
    build_graph,
    check_connectivity,
    check_vertex_transitivity,
    exact_clique_number,
    exact_independence_number,
    sandwich_inequality,
)
from .matrix import Mat
from .orbits import census_by_enumeration, expected_label_count, verify_orbit_product
from .oracle import exact_clique, exact_mis, inner_rank_by_factorization, omega_via_minors
from .ring import RingSpec, ring_spec
from .smith import inner_rank, rank_via_projections, snf, verify_smith_form


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

_dumps = rio.dumps_compact


def _emit(obj: Any) -> None:
    sys.stdout.write(_dumps(obj) + "\n")


def _mat_rows(mat: Mat | None) -> list[list[int]] | None:
    if mat is None:
        return None
    return [list(mat.row(i)) for i in range(mat.rows)]


def _resolve_threads(args: argparse.Namespace) -> int:
    raw = getattr(args, "threads", None)
    if raw is None:
        raw = os.environ.get("RINGMAT_THREADS", "1")
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise UsageError(f"--threads must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError("--threads must be at least 1")
    return value


def _resolve_seed(args: argparse.Namespace, randomized: bool) -> int:
    seed = getattr(args, "seed", None)
    if seed is None:
        if randomized:
            print("note: --seed not given; using seed 0", file=sys.stderr)
        return 0
    return seed


def _read_matrix(args: argparse.Namespace) -> Mat:
    path = args.matrix
    if path.endswith(".csv"):
        if args.h is None or args.rows is None or args.cols is None:
            raise UsageError("CSV matrix input needs --h, --rows and --cols")
        mats = rio.load_matrices_csv(path, args.h, args.rows, args.cols)
        if len(mats) != 1:
            raise UsageError(f"{path} holds {len(mats)} matrices; expected exactly one")
        return mats[0]
    return rio.load_matrix(path, expect_h=args.h)


def _graph_spec(args: argparse.Namespace) -> GraphSpec:
    return GraphSpec(ring_spec(args.h), args.m, args.n, args.r)


def _parse_alpha(ring: RingSpec, text: str) -> tuple[int, ...]:
    try:
        alpha = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--alpha must be comma-separated integers, got {text!r}")
    if len(alpha) != ring.t:
        raise UsageError(
            f"--alpha needs one exponent per prime component ({ring.t}), got {len(alpha)}"
        )
    return alpha


def _write_or_emit(args: argparse.Namespace, obj: Any) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(_dumps(obj) + "\n")
        _emit({"written": out})
    else:
        _emit(obj)


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h", type=int, required=True, help="ring modulus")
    p.add_argument("--m", type=int, required=True, help="matrix rows")
    p.add_argument("--n", type=int, required=True, help="matrix cols")
    p.add_argument("--r", type=int, required=True, help="adjacency radius (1 <= r <= m <= n)")


def _add_common(p: argparse.ArgumentParser, budget_default: int | None = None) -> None:
    p.add_argument("--budget", type=int, default=budget_default,
                   help="work cap for this command (see --help of the command)")
    p.add_argument("--threads", type=int, default=None,
                   help="upper bound on worker threads (default: RINGMAT_THREADS or 1);"
                        " computations are deterministic regardless")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_snf(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    a = _read_matrix(args)
    f = snf(a)
    verify_smith_form(a, f)
    _emit({
        "h": a.ring.h,
        "rows": a.rows,
        "cols": a.cols,
        "S": _mat_rows(f.S),
        "D": _mat_rows(f.D),
        "T": _mat_rows(f.T),
        "omega": [list(row) for row in f.omega.omega],
        "diagonal": list(f.omega.diagonal_values()),
        "inner_rank": f.inner_rank,
    })
    return 0


def cmd_rank(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    a = _read_matrix(args)
    rp = rank_via_projections(a)
    _emit({
        "h": a.ring.h,
        "rows": a.rows,
        "cols": a.cols,
        "inner_rank": inner_rank(a),
        "via_components": rp.via_pi,
        "via_quotients": rp.via_theta,
        "omega": [list(row) for row in snf(a).omega.omega],
    })
    return 0


def cmd_orbits(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    ring = ring_spec(args.h)
    budget = args.budget if args.budget is not None else DEFAULT_ENUMERATION_BUDGET
    rep = census_by_enumeration(ring, args.m, args.n, budget)
    if args.format == "csv":
        sys.stdout.write("label,length\n")
        for label, length in rep.entries:
            text = "|".join(" ".join(str(x) for x in row) for row in label)
            sys.stdout.write(f"{text},{length}\n")
        return 0
    obj: dict[str, Any] = {
        "h": args.h,
        "m": args.m,
        "n": args.n,
        "total": rep.total,
        "label_count": rep.label_count,
        "expected_label_count": expected_label_count(ring, args.m, args.n),
        "labels": [
            {"omega": [list(row) for row in label], "length": length}
            for label, length in rep.entries
        ],
    }
    if args.verify_product:
        prod = verify_orbit_product(ring, args.m, args.n, budget)
        obj["product_ok"] = prod.ok
        if not prod.ok:
            label, length, comps, expect = prod.first_violation()
            obj["product_violation"] = {
                "omega": [list(row) for row in label],
                "length": length,
                "component_lengths": list(comps),
                "product": expect,
            }
    _emit(obj)
    if args.verify_product and not obj["product_ok"]:
        return 1
    return 0


def cmd_graph_stats(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    spec = _graph_spec(args)
    budget = args.budget if args.budget is not None else DEFAULT_VERTEX_BUDGET
    obj: dict[str, Any] = {
        "h": args.h,
        "m": args.m,
        "n": args.n,
        "r": args.r,
        "vertices": spec.n_vertices,
        "sandwich_tight": sandwich_inequality(spec).tight,
    }
    if args.exact:
        search_budget = args.budget if args.budget is not None else DEFAULT_EXACT_SEARCH_BUDGET
        obj["omega"] = exact_clique_number(spec, search_budget)
        obj["alpha"] = exact_independence_number(spec, search_budget)
        obj["chi"] = spec.clique_bound
        obj["method"] = "exact-search"
    else:
        cert = certify_graph_parameters(spec, vertex_budget=budget)
        obj["omega"] = cert.omega
        obj["alpha"] = cert.alpha
        obj["chi"] = cert.chi
        obj["method"] = "certificate"
        obj["code_distance"] = rio.distance_value(cert.code_distance)
        obj["coloring_verification"] = cert.coloring_verification
    if spec.n_vertices <= budget:
        obj["degree"] = build_graph(spec, vertex_budget=budget).degree
    if args.connectivity:
        obj["connected"] = check_connectivity(spec, vertex_budget=budget)
    if args.transitivity_samples:
        seed = _resolve_seed(args, randomized=True)
        obj["transitivity_ok"] = check_vertex_transitivity(
            spec, samples=args.transitivity_samples, seed=seed
        )
    _emit(obj)
    return 0


def cmd_build_clique(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    spec = _graph_spec(args)
    ring = spec.ring
    alpha = _parse_alpha(ring, args.alpha)
    family = build_canonical_clique(CanonicalCliqueSpec(spec, alpha))
    s_mat = rio.load_matrix(args.S, expect_h=args.h) if args.S else None
    t_mat = rio.load_matrix(args.T, expect_h=args.h) if args.T else None
    b0 = rio.load_matrix(args.B0, expect_h=args.h) if args.B0 else None
    if s_mat is not None:
        if s_mat.rows != spec.m or s_mat.cols != spec.m or not s_mat.is_invertible():
            raise UsageError("--S must be an invertible m x m matrix")
        family = frozenset(s_mat @ x for x in family)
    if t_mat is not None:
        if t_mat.rows != spec.n or t_mat.cols != spec.n or not t_mat.is_invertible():
            raise UsageError("--T must be an invertible n x n matrix")
        family = frozenset(x @ t_mat for x in family)
    if b0 is not None:
        if b0.rows != spec.m or b0.cols != spec.n:
            raise UsageError("--B0 must be an m x n matrix")
        family = frozenset(x + b0 for x in family)
    pair_budget = args.budget if args.budget is not None else DEFAULT_PAIR_BUDGET
    if not is_clique(spec, family, pair_budget):
        raise VerificationError("built family is not a clique")
    obj = rio.family_to_obj(ring, spec.m, spec.n, family, {
        "r": spec.r,
        "alpha": list(alpha),
        "size": len(family),
        "bound": spec.clique_bound,
    })
    _write_or_emit(args, obj)
    return 0


def cmd_classify_clique(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    ring, rows, cols, members, _ = rio.load_family(args.family, expect_h=args.h)
    spec = GraphSpec(ring, rows, cols, args.r)
    form = classify_max_clique(spec, members)
    _emit({
        "h": ring.h,
        "m": rows,
        "n": cols,
        "r": args.r,
        "size": len(members),
        "tag": form.tag,
        "alpha": list(form.alpha),
        "S": _mat_rows(form.S),
        "T": _mat_rows(form.T),
        "B0": _mat_rows(form.B0),
    })
    return 0


def cmd_verify_ekr(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    ring, rows, cols, members, _ = rio.load_family(args.family, expect_h=args.h)
    spec = GraphSpec(ring, rows, cols, args.r)
    pair_budget = args.budget if args.budget is not None else DEFAULT_PAIR_BUDGET
    try:
        rep = verify_ekr(spec, members, pair_budget)
    except NotIntersectingError as exc:
        _emit({
            "intersecting": False,
            "size": len(members),
            "bound": spec.clique_bound,
            "reason": str(exc),
        })
        return 1
    obj: dict[str, Any] = {
        "intersecting": True,
        "size": rep.size,
        "bound": rep.bound,
        "within_bound": rep.within_bound,
        "extremal": rep.extremal,
    }
    if rep.form is not None:
        obj["form"] = {
            "tag": rep.form.tag,
            "alpha": list(rep.form.alpha),
            "S": _mat_rows(rep.form.S),
            "T": _mat_rows(rep.form.T),
            "B0": _mat_rows(rep.form.B0),
        }
    else:
        obj["form"] = None
    _emit(obj)
    return 0


def cmd_build_mrd(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    spec = _graph_spec(args)
    pair_budget = args.budget if args.budget is not None else DEFAULT_PAIR_BUDGET
    code = mrd_code(spec, pair_budget)
    verified = verify_distance(code, pair_budget)
    obj = rio.code_to_obj(code, verified)
    obj["r"] = spec.r
    obj["bound"] = spec.independence_bound
    _write_or_emit(args, obj)
    return 0


def cmd_verify_code(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    ring, rows, cols, members, _ = rio.load_family(args.family, expect_h=args.h)
    pair_budget = args.budget if args.budget is not None else DEFAULT_PAIR_BUDGET
    # metadata is not trusted: the family is checked as a plain set of words
    code = RankCode(ring, rows, cols, frozenset(members), args.d, False, None)
    computed = verify_distance(code, pair_budget)
    meets = computed >= args.d
    _emit({
        "h": ring.h,
        "rows": rows,
        "cols": cols,
        "size": len(members),
        "d": args.d,
        "computed_min_distance": rio.distance_value(computed),
        "meets": meets,
        "exact": computed == args.d,
    })
    return 0 if meets else 1


def cmd_color(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    spec = _graph_spec(args)
    budget = args.budget if args.budget is not None else DEFAULT_VERTEX_BUDGET
    if getattr(args, "complement", False):
        return _run_cover(args, spec, budget)
    sampled = spec.n_vertices > budget
    seed = _resolve_seed(args, randomized=sampled)
    col = color_graph(spec, vertex_budget=budget, sample_seed=seed, samples=args.samples)
    obj = {
        "h": args.h,
        "m": args.m,
        "n": args.n,
        "r": args.r,
        "vertices": spec.n_vertices,
        "n_colors": col.n_colors,
        "verification": col.verification,
    }
    if args.out:
        full = dict(obj)
        full["colors"] = list(col.colors)
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dumps(full) + "\n")
        obj["written"] = args.out
    _emit(obj)
    return 0


def _run_cover(args: argparse.Namespace, spec: GraphSpec, budget: int) -> int:
    cov = clique_cover_complement(spec, vertex_budget=budget)
    sizes = sorted({len(p) for p in cov.parts})
    obj: dict[str, Any] = {
        "h": spec.ring.h,
        "m": spec.m,
        "n": spec.n,
        "r": spec.r,
        "vertices": spec.n_vertices,
        "parts": len(cov.parts),
        "part_sizes": sizes,
        "partition": True,
    }
    out = getattr(args, "out", None)
    if out:
        full = dict(obj)
        full["families"] = [
            [[list(mat.row(i)) for i in range(mat.rows)]
             for mat in sorted(part, key=lambda mm: mm.entries)]
            for part in cov.parts
        ]
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(_dumps(full) + "\n")
        obj["written"] = out
    _emit(obj)
    return 0


def cmd_cover_complement(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    spec = _graph_spec(args)
    budget = args.budget if args.budget is not None else DEFAULT_VERTEX_BUDGET
    return _run_cover(args, spec, budget)


def cmd_oracle(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    which = args.oracle_cmd
    if which == "omega":
        a = _read_matrix(args)
        _emit({
            "h": a.ring.h,
            "omega": [list(row) for row in omega_via_minors(a)],
        })
        return 0
    if which == "rank":
        a = _read_matrix(args)
        budget = args.budget if args.budget is not None else 4 * 10**6
        _emit({
            "h": a.ring.h,
            "inner_rank": inner_rank_by_factorization(a, budget),
        })
        return 0
    # exact clique / independent-set search on the full graph
    spec = _graph_spec(args)
    budget = args.budget if args.budget is not None else DEFAULT_EXACT_SEARCH_BUDGET
    if spec.n_vertices > budget:
        raise BudgetExceededError(
            f"{spec.n_vertices} vertices exceed the search budget {budget}"
        )
    g = build_graph(spec, vertex_budget=spec.n_vertices)
    masks = g.adjacency_masks(budget)
    ids = exact_clique(masks) if which == "clique" else exact_mis(masks)
    _emit({
        "h": args.h,
        "m": args.m,
        "n": args.n,
        "r": args.r,
        "kind": which,
        "size": len(ids),
        "vertex_ids": sorted(ids),
    })
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    _resolve_threads(args)
    from .selftest import run_all

    only = set(args.only) if args.only else None
    results = run_all(level=args.level, only=only)
    for res in results:
        print(res.line)
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ringmat",
        description="Matrices over residue class rings: diagonal forms, orbit"
                    " censuses, low-rank-difference graphs, extremal cliques,"
                    " and rank-distance codes.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="diagonalize a matrix (A = S D T)")
    p.add_argument("--matrix", required=True, help="matrix file (JSON, or CSV with --rows/--cols)")
    p.add_argument("--h", type=int, default=None, help="ring modulus (required for CSV input)")
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("rank", help="inner rank by three routes")
    p.add_argument("--matrix", required=True)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("orbits", help="orbit census over all m x n matrices")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify-product", action="store_true",
                   help="also check lengths against the per-component product")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(p, budget_default=None)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("graph-stats", help="graph parameters (certified or exact)")
    _add_graph_args(p)
    p.add_argument("--exact", action="store_true",
                   help="use exhaustive search instead of certificates (small graphs)")
    p.add_argument("--connectivity", action="store_true")
    p.add_argument("--transitivity-samples", type=int, default=0, metavar="K",
                   help="check K sampled symmetries preserve adjacency")
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_graph_stats)

    p = sub.add_parser("build-clique", help="build a maximum clique from parameters")
    _add_graph_args(p)
    p.add_argument("--alpha", required=True,
                   help="comma-separated ideal exponents, one per prime component")
    p.add_argument("--S", default=None, help="optional invertible m x m matrix file")
    p.add_argument("--T", default=None, help="optional invertible n x n matrix file")
    p.add_argument("--B0", default=None, help="optional m x n shift matrix file")
    p.add_argument("--out", default=None, help="write the family JSON here instead of stdout")
    _add_common(p)
    p.set_defaults(func=cmd_build_clique)

    p = sub.add_parser("classify-clique", help="recover parameters from a maximum clique")
    p.add_argument("--family", required=True, help="family file (JSON)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--h", type=int, default=None, help="consistency check against the file")
    _add_common(p)
    p.set_defaults(func=cmd_classify_clique)

    p = sub.add_parser("verify-ekr", help="check a family against the extremal bound")
    p.add_argument("--family", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--h", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify_ekr)

    p = sub.add_parser("build-mrd", help="build a maximum rank-distance code")
    _add_graph_args(p)
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_build_mrd)

    p = sub.add_parser("verify-code", help="exhaustively verify a code's minimum distance")
    p.add_argument("--family", required=True)
    p.add_argument("--d", type=int, required=True, help="required minimum distance")
    p.add_argument("--h", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify_code)

    p = sub.add_parser("color", help="proper coloring by code cosets")
    _add_graph_args(p)
    p.add_argument("--complement", action="store_true",
                   help="cover the complement by cliques instead")
    p.add_argument("--samples", type=int, default=1000,
                   help="sampled pair checks when the graph exceeds the budget")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="write the full color map here")
    _add_common(p)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("cover-complement", help="partition the vertices into cliques")
    _add_graph_args(p)
    p.add_argument("--out", default=None, help="write the parts here")
    _add_common(p)
    p.set_defaults(func=cmd_cover_complement)

    p = sub.add_parser("oracle", help="independent slow reference computations")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)
    for name, needs_matrix in (("omega", True), ("rank", True),
                               ("clique", False), ("mis", False)):
        q = osub.add_parser(name)
        if needs_matrix:
            q.add_argument("--matrix", required=True)
            q.add_argument("--h", type=int, default=None)
            q.add_argument("--rows", type=int, default=None)
            q.add_argument("--cols", type=int, default=None)
        else:
            _add_graph_args(q)
        _add_common(q)
        q.set_defaults(func=cmd_oracle)

    p = sub.add_parser("selftest", help="run the built-in verification suite")
    p.add_argument("--level", choices=("desk", "quick"), default="desk")
    p.add_argument("--only", type=int, nargs="*", default=None,
                   help="run only these check numbers")
    _add_common(p)
    p.set_defaults(func=cmd_selftest)

    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
