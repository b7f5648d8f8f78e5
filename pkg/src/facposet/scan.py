"""Counterexample scan harness over instance generators.

Each instance gets the full analysis; proved implications are hard
assertions (a violation aborts the scan as a bug), conjectured ones are
recorded and flagged as counterexample candidates with a replay file.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Optional

from .analyze import AnalysisOptions, run_analysis
from .errors import FacposetError, InternalCheckFailed
from .fixtures import (
    dihedral8_oracle,
    generate_family,
    load_fixture,
    sym_transposition_oracle,
)
from .groups import GroupOracle, build_labeled_interval, length_bfs
from .interval import LabeledInterval, load_interval, to_json_dict

BUILTIN_GROUPS = {
    "dihedral4": dihedral8_oracle,
    "sym3": lambda: sym_transposition_oracle(3),
    "sym4": lambda: sym_transposition_oracle(4),
}

InstanceSpec = dict


def family_specs(family: str, lo: int, hi: int) -> list[InstanceSpec]:
    return [
        {"kind": "family", "family": family, "n": n} for n in range(lo, hi + 1)
    ]


def fixture_specs(names: Iterable[str]) -> list[InstanceSpec]:
    return [{"kind": "fixture", "name": name} for name in names]


def directory_specs(path) -> list[InstanceSpec]:
    return [
        {"kind": "file", "path": str(p)}
        for p in sorted(Path(path).glob("*.json"))
    ]


def conjugation_closed_subset_specs(
    group: str, max_target_len: int = 3, max_subset_size: Optional[int] = None
) -> list[InstanceSpec]:
    """All unions of nontrivial conjugacy classes that generate the group,
    paired with one target per conjugacy class and length in 2..cap."""
    oracle = BUILTIN_GROUPS[group]()
    classes = [c for c in oracle.conjugacy_classes() if c != (oracle.identity,)]
    specs = []
    for mask in range(1, 1 << len(classes)):
        gens: list[int] = []
        for i, cls in enumerate(classes):
            if mask & (1 << i):
                gens.extend(cls)
        if max_subset_size is not None and len(gens) > max_subset_size:
            continue
        reached = {oracle.identity}
        frontier = [oracle.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for a in gens:
                    y = oracle.mul(x, a)
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(reached) != oracle.order:
            continue
        sub = GroupOracle(
            order=oracle.order,
            identity=oracle.identity,
            generators=sorted(gens),
            source=oracle.source,
            names=oracle.names,
            table=oracle._table,
            perms=oracle._perms,
        )
        lengths = {}
        frontier = [oracle.identity]
        lengths[oracle.identity] = 0
        depth = 0
        while frontier and depth < max_target_len:
            depth += 1
            nxt = []
            for x in frontier:
                for a in sub.generators:
                    y = oracle.mul(x, a)
                    if y not in lengths:
                        lengths[y] = depth
                        nxt.append(y)
            frontier = nxt
        seen_classes = set()
        for target, dist in sorted(lengths.items()):
            if dist < 2:
                continue
            cls_key = tuple(sorted({oracle.conjugate(g, target) for g in range(oracle.order)}))
            if cls_key in seen_classes:
                continue  # conjugate targets give isomorphic labeled posets
            seen_classes.add(cls_key)
            specs.append(
                {
                    "kind": "group_subset",
                    "group": group,
                    "generators": sorted(gens),
                    "target": target,
                }
            )
    return specs


def build_instance(spec: InstanceSpec) -> tuple[str, LabeledInterval]:
    kind = spec["kind"]
    if kind == "fixture":
        fx = load_fixture(spec["name"])
        return fx.name, fx.interval
    if kind == "family":
        fx = generate_family(spec["family"], spec["n"])
        return fx.name, fx.interval
    if kind == "file":
        return Path(spec["path"]).stem, load_interval(spec["path"])
    if kind == "group_subset":
        oracle = BUILTIN_GROUPS[spec["group"]]()
        sub = GroupOracle(
            order=oracle.order,
            identity=oracle.identity,
            generators=list(spec["generators"]),
            source=oracle.source,
            names=oracle.names,
            table=oracle._table,
            perms=oracle._perms,
        )
        target = spec["target"]
        name = "{}/A{}/t{}".format(
            spec["group"], "-".join(map(str, spec["generators"])), target
        )
        return name, build_labeled_interval(sub, target)
    raise FacposetError(f"unknown instance spec {spec!r}")


def _scan_one(args: tuple[InstanceSpec, dict]) -> dict:
    spec, opt_kwargs = args
    name, interval = build_instance(spec)
    options = AnalysisOptions(**opt_kwargs)
    try:
        report = run_analysis(interval, name=name, options=options)
        record = {
            "instance": name,
            "spec": spec,
            "ok": True,
            "report": report,
        }
    except FacposetError as exc:
        record = {
            "instance": name,
            "spec": spec,
            "ok": False,
            "error": f"{type(exc).__name__}: {exc}",
        }
    return record


def scan(
    specs: list[InstanceSpec],
    options: Optional[AnalysisOptions] = None,
    replay_dir: Optional[str] = None,
    threads: Optional[int] = None,
) -> dict:
    """Analyze every instance; return findings with candidates and errors."""
    opts = options or AnalysisOptions()
    opt_kwargs = {
        "budget_chains": opts.budget_chains,
        "budget_search": opts.budget_search,
        "budget_fas": opts.budget_fas,
        "budget_shelling": opts.budget_shelling,
        "max_orders": opts.max_orders,
        "with_shelling": opts.with_shelling,
    }
    if threads is None:
        threads = int(os.environ.get("FACPOSET_THREADS", "1") or "1")

    jobs = [(spec, opt_kwargs) for spec in specs]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(_scan_one, jobs))
    else:
        records = [_scan_one(job) for job in jobs]
    records.sort(key=lambda r: r["instance"])

    candidates = []
    violations = []
    budget_errors = []
    for record in records:
        if not record["ok"]:
            budget_errors.append(
                {"instance": record["instance"], "error": record["error"]}
            )
            continue
        report = record["report"]
        if report.get("violations"):
            violations.append(
                {"instance": record["instance"], "violated": report["violations"]}
            )
        for conj in report.get("counterexample_candidates", []):
            entry = {"instance": record["instance"], "conjecture": conj}
            if replay_dir is not None:
                path = Path(replay_dir)
                path.mkdir(parents=True, exist_ok=True)
                _, interval = build_instance(record["spec"])
                fname = record["instance"].replace("/", "_") + ".json"
                with open(path / fname, "w") as fh:
                    json.dump(to_json_dict(interval), fh, indent=1, sort_keys=True)
                entry["replay"] = str(path / fname)
            candidates.append(entry)

    if violations:
        raise InternalCheckFailed(
            "proved implication violated (bug): "
            + "; ".join(f"{v['instance']}: {v['violated']}" for v in violations)
        )
    return {
        "instances": len(records),
        "records": records,
        "counterexample_candidates": candidates,
        "budget_errors": budget_errors,
    }
