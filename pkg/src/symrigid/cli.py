"""Command-line interface.

Subcommands: expand, quotient, check-mixed-conn, check-gain-mixed-conn,
rank, rigidity, cover, verify-paper.  Graph arguments accept a JSON file
path or the name of a bundled fixture (fig1b, fig2a, fig2b, fig3, fig4).
Exit codes: 0 success / positive verdict, 1 negative verdict of a
predicate, 2 malformed input or internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .connectivity import (
    edge_connectivity,
    is_n_gain_mixed_connected,
    is_n_mixed_connected,
    symmetric_separation,
)
from .covering import CoveringGraph, expand, quotient_of
from .fixtures import FIXTURE_NAMES, Fixture, load_fixture
from .gain_graph import GainGraph, InvalidGainGraphError
from .matroid import (
    CharacterizationUnknownError,
    InstanceTooLargeError,
    CountFamily,
    iota_rigidity_threshold,
    forced_rigidity_threshold,
    is_forced_rigid_combinatorial,
    is_iota_rigid_combinatorial,
    mu,
    nu,
    rank,
    rho,
)
from .numeric import (
    IndeterminateRankError,
    full_rank_report,
    is_rigid_numeric,
    motion_space,
)
from .symcover import check_cover_lower_bound, cover_from_partition
from .verify import run_checks


class CliError(Exception):
    pass


def _load_graph(arg: str):
    """A gain graph from a JSON file or a bundled fixture name.

    Returns (graph, fixture-or-None)."""
    path = Path(arg)
    if path.exists():
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            return GainGraph.from_json(data), None
        except (KeyError, ValueError, InvalidGainGraphError) as exc:
            raise CliError(f"cannot load gain graph from {arg}: {exc}") from exc
    name = path.stem
    if name in FIXTURE_NAMES:
        fx = load_fixture(name)
        return fx.graph, fx
    raise CliError(f"no such file or fixture: {arg}")


def _load_partition(args, fx: Fixture | None):
    parts = []
    if args.candidate_partition:
        data = json.loads(Path(args.candidate_partition).read_text(encoding="utf-8"))
        parts.append(tuple(frozenset(p) for p in data))
    if fx is not None:
        for name in fx.partitions:
            parts.append(fx.partition(name))
    return parts


def _emit(args, payload: dict, text_lines) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, default=_jsonable))
    else:
        for line in text_lines:
            print(line)


def _jsonable(obj):
    if isinstance(obj, frozenset):
        return sorted(str(x) for x in obj)
    if isinstance(obj, (set, tuple)):
        return list(obj)
    return str(obj)


def _cover_edge(e) -> list:
    return sorted(str(x) for x in e)


# -- subcommands ----------------------------------------------------------------


def cmd_expand(args) -> int:
    g, _ = _load_graph(args.graph)
    cov = expand(g)
    if args.dot:
        print(cov.to_dot())
        return 0
    payload = cov.to_json()
    payload["n_vertices"] = cov.n_vertices
    payload["n_edges"] = cov.n_edges
    _emit(args, payload, [
        f"covering graph: {cov.n_vertices} vertices, {cov.n_edges} edges",
    ])
    return 0


def cmd_quotient(args) -> int:
    data = json.loads(Path(args.covering).read_text(encoding="utf-8"))
    cov = CoveringGraph.from_json(data)
    result = quotient_of(cov)
    payload = result.graph.to_json()
    _emit(args, payload, [
        f"quotient: {result.graph.n_vertices} vertices, {result.graph.n_edges} edges",
        *(f"  {e.tail} -> {e.head}  [{e.gain}]" for e in result.graph.edges),
    ])
    return 0


def cmd_check_mixed(args) -> int:
    g, _ = _load_graph(args.graph)
    cov = expand(g)
    ok, cut = is_n_mixed_connected(cov, args.n)
    payload = {"n": args.n, "mixed_connected": ok}
    lines = [f"{args.n}-mixed-connected: {ok}"]
    if cut is not None:
        payload["witness"] = {
            "vertices": sorted(str(v) for v in cut.removed_vertices),
            "edges": [_cover_edge(e) for e in sorted(cut.removed_edges, key=_cover_edge)],
            "cost": cut.cost,
        }
        lines.append(f"witness cut of cost {cut.cost}")
    _emit(args, payload, lines)
    return 0 if ok else 1


def cmd_check_gain_mixed(args) -> int:
    g, _ = _load_graph(args.graph)
    ok, block = is_n_gain_mixed_connected(g, args.n)
    payload = {"n": args.n, "gain_mixed_connected": ok}
    lines = [f"{args.n}-gain-mixed-connected: {ok}"]
    if block is not None:
        sep = symmetric_separation(block)
        payload["witness"] = {
            "k": block.k,
            "component_vertices": list(block.h_vertices),
            "component_edges": sorted(block.h_edges),
            "removed_vertices": sorted(block.removed_vertices),
            "removed_edges": sorted(block.removed_edges),
            "separation_vertices": sorted(str(v) for v in sep.removed_vertices),
            "separation_edges": [
                _cover_edge(e) for e in sorted(sep.removed_edges, key=_cover_edge)
            ],
        }
        lines.append(
            f"witness {block.k}-block on component {block.h_vertices}"
            f" (U={sorted(block.removed_vertices)}, D={sorted(block.removed_edges)})"
        )
    _emit(args, payload, lines)
    return 0 if ok else 1


def _family(args) -> CountFamily:
    if args.family == "rho":
        return rho()
    if args.family == "mu":
        return mu()
    if args.t is None:
        raise CliError("--family nu requires --t")
    return nu(args.t)


def cmd_rank(args) -> int:
    g, fx = _load_graph(args.graph)
    family = _family(args)
    candidates = _load_partition(args, fx)
    result = rank(family, g, g.all_edge_ids(), candidate_partitions=candidates)
    if args.family == "rho":
        threshold = forced_rigidity_threshold(g.group, g.n_vertices)
        kind = "forced-rigid"
    else:
        t = 1 if args.family == "mu" else args.t
        threshold = iota_rigidity_threshold(g.group, t, g.n_vertices)
        kind = f"iota_{t}-rigid"
    if result.exact:
        verdict = kind if result.value >= threshold else f"not {kind}"
    elif result.upper < threshold:
        verdict = f"not {kind}"
    elif result.lower >= threshold:
        verdict = kind
    else:
        verdict = "undetermined"
    payload = {
        "family": family.label(),
        "edges": g.n_edges,
        "exact": result.exact,
        "rank": result.value,
        "lower_bound": result.lower,
        "upper_bound": result.upper,
        "threshold": threshold,
        "verdict": verdict,
        "notes": list(result.notes),
    }
    _emit(args, payload, [
        f"family {family.label()}: rank"
        + (f" {result.value}" if result.exact else f" in [{result.lower}, {result.upper}]"),
        f"threshold {threshold}  ->  {verdict}",
    ])
    return 0


def cmd_rigidity(args) -> int:
    g, fx = _load_graph(args.graph)
    candidates = _load_partition(args, fx)
    payload: dict = {"mode": args.mode}
    lines = []
    if args.mode == "forced":
        ts = [0]
    elif args.mode == "iota":
        if args.t is None:
            raise CliError("--mode iota requires --t")
        ts = [args.t]
    else:
        from .numeric import character_modulus

        ts = list(range(character_modulus(g.group)))
    reports = []
    for t in ts:
        rep = motion_space(g, t, seed=args.seed, seeds=args.seeds, rel_tol=args.tol)
        entry = {
            "t": t,
            "rank": rep.rank,
            "kernel_dim": rep.kernel_dim,
            "trivial_dim": rep.trivial_dim,
            "numeric": rep.verdict,
        }
        try:
            comb = (
                is_forced_rigid_combinatorial(g, candidate_partitions=candidates)
                if t == 0
                else is_iota_rigid_combinatorial(g, t, candidate_partitions=candidates)
            )
            entry["combinatorial"] = "rigid" if comb else "flexible"
            if comb != rep.is_rigid:
                raise CliError(
                    f"t={t}: combinatorial and numeric verdicts disagree"
                )
        except (CharacterizationUnknownError, InstanceTooLargeError) as exc:
            entry["combinatorial"] = f"unavailable ({exc.__class__.__name__})"
        reports.append(entry)
        lines.append(
            f"t={t}: numeric {entry['numeric']}"
            f" (kernel {rep.kernel_dim}, trivial {rep.trivial_dim});"
            f" combinatorial {entry['combinatorial']}"
        )
    payload["characters"] = reports
    if args.mode == "full":
        rank_value, n = full_rank_report(g, seed=args.seed, seeds=args.seeds, rel_tol=args.tol)
        rigid = rank_value == 2 * n - 3
        payload["full"] = {"rank": rank_value, "needed": 2 * n - 3, "rigid": rigid}
        lines.append(f"full rank {rank_value} / {2 * n - 3}: {'rigid' if rigid else 'flexible'}")
        verdict = rigid
    else:
        verdict = all(r["numeric"] == "rigid" for r in reports)
    payload["rigid"] = verdict
    _emit(args, payload, lines)
    return 0 if verdict else 1


def cmd_cover(args) -> int:
    g, fx = _load_graph(args.graph)
    if args.partition:
        data = json.loads(Path(args.partition).read_text(encoding="utf-8"))
        partition = tuple(frozenset(p) for p in data)
    elif fx is not None and args.partition_name:
        partition = fx.partition(args.partition_name)
    elif fx is not None and len(fx.partitions) == 1:
        partition = fx.partition(next(iter(fx.partitions)))
    else:
        raise CliError("provide --partition FILE (or --partition-name for a fixture)")
    sc = cover_from_partition(g, partition)
    report = check_cover_lower_bound(g, sc, variant=args.variant)
    payload = {
        "sets": [
            {
                "vertices": sorted(str(v) for v in s.vertices),
                "part": sorted(s.part_edges),
                "group_order": s.group_order,
                "unbalanced": s.unbalanced,
            }
            for s in sc.sets
        ],
        "variant": report.variant,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "inequality_holds": report.holds,
        "hypotheses_satisfied": report.hypotheses_satisfied,
        "hypothesis_detail": report.hypothesis_detail,
    }
    lines = [f"symmetric cover with {len(sc.sets)} sets"]
    for s in sc.sets:
        lines.append("  {" + ", ".join(sorted(str(v) for v in s.vertices)) + "}")
    lines.append(
        f"{report.variant} bound: lhs {report.lhs} >= rhs {report.rhs}: {report.holds}"
        f" (hypotheses: {report.hypothesis_detail})"
    )
    _emit(args, payload, lines)
    return 0


def cmd_verify_paper(args) -> int:
    results = run_checks(only=args.only)
    width = max(len(r.name) for r in results)
    failures = 0
    for r in results:
        mark = "PASS" if r.ok else "FAIL"
        if not r.ok:
            failures += 1
        print(f"{mark}  {r.name:<{width}}  {r.detail}")
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symrigid",
        description="Rigidity of symmetric plane frameworks from quotient gain graphs",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a gain graph to its covering graph")
    p.add_argument("graph")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of JSON")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("quotient", help="collapse a covering graph (JSON) to a gain graph")
    p.add_argument("covering")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("check-mixed-conn", help="mixed connectivity of the covering graph")
    p.add_argument("graph")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_check_mixed)

    p = sub.add_parser("check-gain-mixed-conn", help="gain-mixed connectivity of a gain graph")
    p.add_argument("graph")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_check_gain_mixed)

    p = sub.add_parser("rank", help="matroid rank of the edge set")
    p.add_argument("graph")
    p.add_argument("--family", choices=("rho", "mu", "nu"), required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--candidate-partition", help="JSON file: list of edge-id lists")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("rigidity", help="numeric and combinatorial rigidity verdicts")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("forced", "iota", "full"), default="forced")
    p.add_argument("--t", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--seeds", type=int, default=3)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--candidate-partition", help="JSON file: list of edge-id lists")
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("cover", help="symmetric cover from an edge partition")
    p.add_argument("graph")
    p.add_argument("--partition", help="JSON file: list of edge-id lists")
    p.add_argument("--partition-name", help="named partition of a fixture")
    p.add_argument("--variant", choices=("forced", "iota1"), default="forced")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify-paper", help="re-run all bundled reproduction checks")
    p.add_argument("--only", choices=FIXTURE_NAMES)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        CliError,
        InvalidGainGraphError,
        CharacterizationUnknownError,
        InstanceTooLargeError,
        IndeterminateRankError,
        ValueError,
        FileNotFoundError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
