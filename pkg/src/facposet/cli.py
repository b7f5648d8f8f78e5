"""Command-line frontend.

Exit codes: 0 analysis complete, 2 input error, 3 budget exceeded,
4 internal consistency failure (a proved fact was violated: a bug).
"""

from __future__ import annotations

import argparse
import json
import sys

from .analyze import AnalysisOptions, run_analysis
from .connectivity import chain_graph, chain_graph_dot
from .cyclegraph import (
    build_cycle_graph,
    cycle_graph_dot,
    min_feedback_arc_set,
    reduced_cycle_graph,
    reduced_graph_dot,
)
from .errors import (
    ChainBudgetExceeded,
    ExtensionBudgetExceeded,
    FacposetError,
    InternalCheckFailed,
    SearchBudgetExceeded,
)
from .fixtures import fixture_names, generate_family, load_fixture
from .groups import (
    interval_from_files,
    interval_from_table_json,
    load_table_file,
    validate_generating_set,
)
from .hurwitz import hurwitz_graph, hurwitz_orbits
from .interval import (
    chain_word,
    hasse_dot,
    load_interval,
    maximal_chains,
    to_json_dict,
    validate_interval,
)
from .orders import enumerate_compatible_orders, normalize_order, order_names
from .shelling import search_shelling

BUDGET_ERRORS = (ChainBudgetExceeded, SearchBudgetExceeded, ExtensionBudgetExceeded)


def _instance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--fixture", help="fixture name (see `fixtures list`)")
    parser.add_argument("--family", help="family spec like sym_long_cycle:5 or boolean:3")
    parser.add_argument("--interval", help="interval JSON file")
    parser.add_argument("--group", help="permutation generators file (cycle notation)")
    parser.add_argument("--table", help="multiplication table JSON file")
    parser.add_argument("--target", help="target element (cycle notation or table id)")
    parser.add_argument("--max-elements", type=int, default=None,
                        help="override the group materialization cap")


def _budget_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget-chains", type=int, default=None)
    parser.add_argument("--budget-search", type=int, default=None)
    parser.add_argument("--order", action="append", default=[],
                        help="comma-separated label names; repeatable")
    parser.add_argument("--json", dest="json_out", help="write the report as JSON here")


def _load_instance(args):
    picked = [
        bool(args.fixture),
        bool(args.family),
        bool(args.interval),
        bool(args.group or args.table),
    ]
    if sum(picked) != 1:
        raise FacposetError(
            "pick exactly one of --fixture / --family / --interval / --group / --table"
        )
    if args.fixture:
        fx = load_fixture(args.fixture)
        return fx.name, fx.interval
    if args.family:
        family, _, n = args.family.partition(":")
        fx = generate_family(family, int(n))
        return fx.name, fx.interval
    if args.interval:
        return args.interval, load_interval(args.interval)
    if not args.target:
        raise FacposetError("--group/--table need --target")
    if args.group:
        with open(args.group) as fh:
            text = fh.read()
        kwargs = {}
        if args.max_elements:
            kwargs["max_elements"] = args.max_elements
        return (
            f"{args.group}:{args.target}",
            interval_from_files(text, args.target, **kwargs),
        )
    data = load_table_file(args.table)
    return (
        f"{args.table}:{args.target}",
        interval_from_table_json(data, int(args.target)),
    )


def _options(args) -> AnalysisOptions:
    opts = AnalysisOptions()
    if getattr(args, "budget_chains", None):
        opts.budget_chains = args.budget_chains
    if getattr(args, "budget_search", None):
        opts.budget_search = args.budget_search
        opts.budget_shelling = args.budget_search
    opts.orders = [item.split(",") for item in getattr(args, "order", [])]
    return opts


def _emit(payload: dict, json_out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if json_out:
        with open(json_out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_build(args) -> int:
    name, L = _load_instance(args)
    report = validate_interval(L)
    payload = {
        "instance": name,
        "valid": report.ok,
        "checks": [
            {"check": c.name, "passed": c.passed, "witness": repr(c.witness)}
            for c in report.checks
        ],
        "interval": to_json_dict(L),
    }
    _emit(payload, args.json_out)
    return 0 if report.ok else 2


def cmd_validate_group(args) -> int:
    from .groups import GroupOracle, load_permutation_group

    if args.group:
        with open(args.group) as fh:
            oracle = GroupOracle.from_permutations(load_permutation_group(fh.read()))
    else:
        oracle = GroupOracle.from_table_json(load_table_file(args.table))
    report = validate_generating_set(oracle)
    payload = {
        "order": oracle.order,
        "valid": report.ok,
        "checks": [
            {"check": c.name, "passed": c.passed, "witness": repr(c.witness)}
            for c in report.checks
        ],
    }
    _emit(payload, args.json_out)
    return 0


def cmd_analyze(args) -> int:
    name, L = _load_instance(args)
    report = run_analysis(L, name=name, options=_options(args))
    _emit(report, args.json_out)
    if report.get("violations"):
        return 4
    return 0


def cmd_orbits(args) -> int:
    name, L = _load_instance(args)
    orbits = hurwitz_orbits(L)
    payload = {
        "instance": name,
        "orbits": [
            sorted("".join(L.word_names(chain_word(L, c))) for c in orbit)
            for orbit in orbits
        ],
    }
    _emit(payload, args.json_out)
    return 0


def cmd_orders(args) -> int:
    name, L = _load_instance(args)
    orders = enumerate_compatible_orders(L, budget=args.budget_search or 10**6)
    payload = {
        "instance": name,
        "count": len(orders),
        "orders": [list(order_names(L, o)) for o in orders],
    }
    _emit(payload, args.json_out)
    return 0


def cmd_cycle_graph(args) -> int:
    name, L = _load_instance(args)
    gamma = build_cycle_graph(L)
    fas, certificate = min_feedback_arc_set(gamma)
    payload = {
        "instance": name,
        "vertices": list(L.alphabet),
        "edges": [
            [L.alphabet[a], L.alphabet[b], L.names[g]] for a, b, g in gamma.edges
        ],
        "rank2_count": len(gamma.cycles_by_label),
        "min_feedback_arc_set": fas,
        "feedback_edges": [[L.alphabet[a], L.alphabet[b]] for a, b in certificate],
    }
    _emit(payload, args.json_out)
    return 0


def cmd_shelling(args) -> int:
    name, L = _load_instance(args)
    result = search_shelling(L, budget=args.budget_search or 6_000_000)
    payload = {
        "instance": name,
        "status": result.status,
        "reason": result.reason,
        "explored": result.explored,
    }
    if result.order is not None and L.is_labeled:
        payload["order"] = [
            "".join(L.word_names(chain_word(L, c))) for c in result.order
        ]
    _emit(payload, args.json_out)
    return 0


def cmd_scan(args) -> int:
    from .scan import (
        conjugation_closed_subset_specs,
        directory_specs,
        family_specs,
        fixture_specs,
        scan,
    )

    specs = []
    for item in args.family or []:
        family, _, rng = item.partition(":")
        lo, _, hi = rng.partition("-")
        specs += family_specs(family, int(lo), int(hi or lo))
    for item in args.fixtures or []:
        specs += fixture_specs(item.split(","))
    for item in args.group_subsets or []:
        specs += conjugation_closed_subset_specs(
            item, max_target_len=args.max_target_len
        )
    if args.dir:
        specs += directory_specs(args.dir)
    opts = _options(args)
    opts.with_shelling = not args.no_shelling
    findings = scan(specs, options=opts, replay_dir=args.replay_dir)
    payload = {
        "instances": findings["instances"],
        "counterexample_candidates": findings["counterexample_candidates"],
        "budget_errors": findings["budget_errors"],
    }
    if args.full:
        payload["records"] = findings["records"]
    _emit(payload, args.json_out)
    return 3 if findings["budget_errors"] else 0


def cmd_fixtures(args) -> int:
    if args.action == "list":
        for name in fixture_names():
            print(name)
        return 0
    raise FacposetError(f"unknown fixtures action {args.action!r}")


def cmd_export(args) -> int:
    name, L = _load_instance(args)
    kind = args.dot
    if kind == "hasse":
        text = hasse_dot(L)
    elif kind == "chain":
        text = chain_graph_dot(L, chain_graph(L))
    elif kind == "hurwitz":
        graph = hurwitz_graph(L)
        lines = ["graph hurwitz {"]
        for k, c in enumerate(graph.chains):
            word = "".join(L.word_names(chain_word(L, c)))
            lines.append(f'  c{k} [label="{word}"];')
        for a, b in sorted(graph.edges):
            lines.append(f"  c{a} -- c{b};")
        lines.append("}")
        text = "\n".join(lines)
    elif kind == "cycle":
        text = cycle_graph_dot(build_cycle_graph(L))
    elif kind == "reduced":
        if not args.order:
            raise FacposetError("--dot reduced needs --order")
        order = normalize_order(L, args.order[0].split(","))
        text = reduced_graph_dot(reduced_cycle_graph(L, order))
    else:
        raise FacposetError(f"unknown dot kind {kind!r}")
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="facposet",
        description="factorization posets: connectivity, Hurwitz orbits, shellability",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn, extra in [
        ("build", cmd_build, ()),
        ("analyze", cmd_analyze, ()),
        ("orbits", cmd_orbits, ()),
        ("orders", cmd_orders, ()),
        ("cycle-graph", cmd_cycle_graph, ()),
        ("shelling", cmd_shelling, ()),
    ]:
        p = sub.add_parser(name)
        _instance_args(p)
        _budget_args(p)
        p.set_defaults(func=fn)

    p = sub.add_parser("validate-group")
    p.add_argument("--group")
    p.add_argument("--table")
    p.add_argument("--json", dest="json_out")
    p.set_defaults(func=cmd_validate_group)

    p = sub.add_parser("scan")
    p.add_argument("--family", action="append", help="e.g. sym_long_cycle:3-5")
    p.add_argument("--fixtures", action="append", help="comma-separated fixture names")
    p.add_argument("--group-subsets", action="append",
                   help="builtin group name (dihedral4, sym3, sym4)")
    p.add_argument("--max-target-len", type=int, default=3)
    p.add_argument("--dir", help="directory of interval JSON files")
    p.add_argument("--replay-dir", help="write counterexample replay files here")
    p.add_argument("--no-shelling", action="store_true")
    p.add_argument("--full", action="store_true", help="include per-instance reports")
    _budget_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fixtures")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_fixtures)

    p = sub.add_parser("export")
    _instance_args(p)
    _budget_args(p)
    p.add_argument("--dot", required=True,
                   choices=["hasse", "chain", "hurwitz", "cycle", "reduced"])
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except BUDGET_ERRORS as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except InternalCheckFailed as exc:
        print(f"internal consistency failure (bug): {exc}", file=sys.stderr)
        return 4
    except (FacposetError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
