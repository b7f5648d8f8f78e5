"""Full per-instance analysis: one report aggregating every module's verdicts.

The consistency section re-checks every proved implication between the
properties on the instance at hand; a violated proved implication is a bug
and surfaces in ``report["violations"]``.  Conjectured implications are
only recorded, with violations flagged as counterexample candidates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .connectivity import chain_graph, is_totally_chain_connected
from .cyclegraph import (
    DEFAULT_FAS_BUDGET,
    analyze_reduced,
    build_cycle_graph,
    min_feedback_arc_set,
    reduced_cycle_graph,
)
from .errors import FacposetError, SearchBudgetExceeded
from .hurwitz import hurwitz_graph, is_locally_hurwitz_connected
from .interval import (
    DEFAULT_CHAIN_BUDGET,
    LabeledInterval,
    duality_check,
    maximal_chains,
    mobius_invariant,
    validate_interval,
)
from .orders import (
    BRUTE_FORCE_ALPHABET,
    DEFAULT_ORDER_BUDGET,
    GeneratorOrder,
    enumerate_compatible_orders,
    find_compatible_order,
    is_compatible,
    is_el_labeling,
    is_totally_well_covered,
    is_well_covered,
    min_rise_rank2,
    normalize_order,
    order_names,
    rising_factorizations,
)
from .interval import chain_word as _word
from .shelling import DEFAULT_SHELLING_BUDGET, search_shelling, shelling_from_el

REPORT_VERSION = 1
MAX_REPORTED_ORDERS = 24


@dataclass
class AnalysisOptions:
    budget_chains: int = DEFAULT_CHAIN_BUDGET
    budget_search: int = DEFAULT_ORDER_BUDGET
    budget_fas: int = DEFAULT_FAS_BUDGET
    budget_shelling: int = DEFAULT_SHELLING_BUDGET
    orders: Sequence[Sequence[str]] = field(default_factory=list)
    max_orders: int = MAX_REPORTED_ORDERS
    with_shelling: bool = True


def _implication(name: str, premise: bool, conclusion: Optional[bool]) -> dict:
    holds = (not premise) or bool(conclusion) if conclusion is not None else None
    return {
        "name": name,
        "premise": premise,
        "conclusion": conclusion,
        "ok": holds,
    }


def run_analysis(
    L: LabeledInterval, name: str = "", options: Optional[AnalysisOptions] = None
) -> dict:
    opts = options or AnalysisOptions()
    report: dict = {"report_version": REPORT_VERSION, "instance": name}

    valid = validate_interval(L)
    report["valid"] = valid.ok
    if not valid.ok:
        report["validation_failures"] = [
            {"check": c.name, "witness": repr(c.witness)} for c in valid.failures()
        ]
        return report

    chains = maximal_chains(L, budget=opts.budget_chains)
    try:
        self_dual, dual_witness = duality_check(L)
    except SearchBudgetExceeded:
        self_dual, dual_witness = None, "search budget"
    report["summary"] = {
        "nodes": len(L),
        "rank": L.rank,
        "alphabet": list(L.alphabet),
        "chains": len(chains),
        "mobius": mobius_invariant(L),
        "self_dual": self_dual,
        "self_dual_witness": dual_witness and list(map(str, dual_witness)),
    }

    cg = chain_graph(L, budget=opts.budget_chains)
    chain_components = len(cg.components())
    totally_cc, tcc_witness = is_totally_chain_connected(L, budget=opts.budget_chains)
    report["chain_connectivity"] = {
        "connected": chain_components == 1,
        "components": chain_components,
        "totally": totally_cc,
        "witness": tcc_witness and [L.names[tcc_witness[0]], L.names[tcc_witness[1]]],
    }

    labeled = L.is_labeled
    report["labeled"] = labeled
    if labeled:
        hg = hurwitz_graph(L, budget=opts.budget_chains)
        orbit_sizes = sorted(len(c) for c in hg.components())
        locally, local_witness = is_locally_hurwitz_connected(L)
        report["hurwitz"] = {
            "orbits": len(orbit_sizes),
            "orbit_sizes": orbit_sizes,
            "connected": len(orbit_sizes) == 1,
            "locally_connected": locally,
            "local_witness": None if local_witness is None else L.names[local_witness],
        }

        report["compatible_orders"] = _compatible_section(L, opts)
        report["orders_tried"] = _orders_section(L, opts, report)
        report["cycle_graph"] = _cycle_graph_section(L, opts)
        if L.rank == 2:
            rise_min, order = min_rise_rank2(L)
            report["min_rise_rank2"] = {
                "value": rise_min,
                "order": list(order_names(L, order)),
            }

    if opts.with_shelling:
        el_order = next(
            (
                normalize_order(L, e["order"])
                for e in report.get("orders_tried", [])
                if e["el_labeling"]
            ),
            None,
        )
        if el_order is not None:
            order = shelling_from_el(L, el_order)
            report["shelling"] = {
                "status": "shellable",
                "reason": "lexicographic order of an EL-labeling",
                "explored": 0,
                "budget": 0,
                "order_words": [
                    "".join(L.word_names(_word(L, c))) for c in order
                ],
            }
        else:
            result = search_shelling(
                L, budget=opts.budget_shelling, chain_budget=opts.budget_chains
            )
            report["shelling"] = {
                "status": result.status,
                "reason": result.reason,
                "explored": result.explored,
                "budget": result.budget,
                "order_words": _shelling_words(L, result),
            }

    report["consistency"] = _consistency_section(L, report)
    report["violations"] = [
        c["name"]
        for c in report["consistency"]["proved"]
        if c["ok"] is False
    ]
    report["counterexample_candidates"] = [
        c["name"]
        for c in report["consistency"]["conjectures"]
        if c["ok"] is False
    ]
    return report


def _shelling_words(L: LabeledInterval, result) -> Optional[list[str]]:
    if result.order is None or not L.is_labeled:
        return None
    from .interval import chain_word

    return ["".join(L.word_names(chain_word(L, c))) for c in result.order]


def _compatible_section(L: LabeledInterval, opts: AnalysisOptions) -> dict:
    out: dict = {"method": None, "exists": None, "count": None, "orders": []}
    try:
        if len(L.alphabet) <= BRUTE_FORCE_ALPHABET:
            orders = enumerate_compatible_orders(L, budget=opts.budget_search)
            out["method"] = "exhaustive"
            out["exists"] = bool(orders)
            out["count"] = len(orders)
            out["orders"] = [list(order_names(L, o)) for o in orders[: opts.max_orders]]
            out["truncated"] = len(orders) > opts.max_orders
        else:
            first = find_compatible_order(L, budget=opts.budget_search)
            out["method"] = "first-found"
            out["exists"] = first is not None
            out["orders"] = [] if first is None else [list(order_names(L, first))]
            out["truncated"] = first is not None
    except SearchBudgetExceeded as exc:
        out["error"] = str(exc)
    return out


def _orders_section(L: LabeledInterval, opts: AnalysisOptions, report: dict) -> list[dict]:
    tried: list[GeneratorOrder] = []
    for item in opts.orders:
        tried.append(normalize_order(L, item))
    for names in report["compatible_orders"]["orders"][: opts.max_orders]:
        order = normalize_order(L, names)
        if order not in tried:
            tried.append(order)

    out = []
    for order in tried:
        compatible, _ = is_compatible(L, order)
        rise = len(rising_factorizations(L, order, budget=opts.budget_chains))
        well = is_well_covered(L, order, _compatible=compatible)
        twc, _ = is_totally_well_covered(L, order, budget=opts.budget_chains)
        el, _ = is_el_labeling(L, order, budget=opts.budget_chains)
        entry = {
            "order": list(order_names(L, order)),
            "compatible": compatible,
            "rise": rise,
            "well_covered": well,
            "totally_well_covered": twc,
            "el_labeling": el,
        }
        if compatible:
            rg = reduced_cycle_graph(L, order)
            analysis = analyze_reduced(rg)
            entry["reduced_graph"] = {
                "edges": len(rg.edges),
                "induced_order_is_linear": analysis["induced_order_is_linear"],
                "unique_sink": analysis["unique_sink"],
                "sinks": analysis["sinks"],
                "linear_extensions": len(analysis["linear_extensions"]),
            }
        out.append(entry)
    return out


def _cycle_graph_section(L: LabeledInterval, opts: AnalysisOptions) -> dict:
    gamma = build_cycle_graph(L)
    out = {
        "vertices": len(L.alphabet),
        "edges": len(gamma.edges),
        "loops": len(gamma.loops()),
        "rank2_count": len(gamma.cycles_by_label),
    }
    try:
        fas, certificate = min_feedback_arc_set(gamma, budget=opts.budget_fas)
        out["min_feedback_arc_set"] = fas
        out["feedback_edges"] = [
            [L.alphabet[a], L.alphabet[b]] for a, b in certificate
        ]
    except SearchBudgetExceeded as exc:
        out["error"] = str(exc)
    return out


def _consistency_section(L: LabeledInterval, report: dict) -> dict:
    proved: list[dict] = []
    conjectures: list[dict] = []
    questions: dict = {}

    cc = report["chain_connectivity"]["connected"]
    tcc = report["chain_connectivity"]["totally"]
    shelling_status = report.get("shelling", {}).get("status")
    shellable = {"shellable": True, "not_shellable": False}.get(shelling_status)

    proved.append(_implication("totally_chain_connected_implies_chain_connected", tcc, cc))
    if shellable is not None:
        proved.append(_implication("shellable_implies_chain_connected", bool(shellable), cc))
        proved.append(
            _implication("shellable_implies_totally_chain_connected", bool(shellable), tcc)
        )

    if report.get("labeled"):
        hz = report["hurwitz"]
        compat = report["compatible_orders"].get("exists")
        proved.append(
            _implication("hurwitz_connected_implies_chain_connected", hz["connected"], cc)
        )
        if compat is not None:
            proved.append(
                _implication(
                    "compatible_order_implies_locally_hurwitz",
                    compat,
                    hz["locally_connected"],
                )
            )
            proved.append(
                _implication(
                    "chain_connected_and_compatible_implies_hurwitz",
                    cc and compat,
                    hz["connected"],
                )
            )
            if L.rank == 2:
                proved.append(
                    _implication(
                        "rank2_compatible_iff_hurwitz_forward",
                        compat,
                        hz["connected"],
                    )
                )
                proved.append(
                    _implication(
                        "rank2_compatible_iff_hurwitz_backward",
                        hz["connected"],
                        compat,
                    )
                )
        proved.append(
            _implication(
                "chain_connected_and_locally_hurwitz_implies_hurwitz",
                cc and hz["locally_connected"],
                hz["connected"],
            )
        )

        cg_stats = report.get("cycle_graph", {})
        fas = cg_stats.get("min_feedback_arc_set")
        if fas is not None and compat is not None:
            proved.append(
                _implication(
                    "feedback_arc_lower_bound", True, fas >= cg_stats["rank2_count"]
                )
            )
            proved.append(
                _implication(
                    "feedback_arc_equality_iff_compatible",
                    True,
                    (fas == cg_stats["rank2_count"]) == compat,
                )
            )

        rises = []
        for entry in report.get("orders_tried", []):
            proved.append(
                _implication(
                    "orbits_at_most_rising",
                    True,
                    hz["orbits"] <= entry["rise"],
                )
            )
            proved.append(
                _implication(
                    "el_iff_compatible_and_totally_well_covered",
                    True,
                    entry["el_labeling"]
                    == (entry["compatible"] and entry["totally_well_covered"]),
                )
            )
            proved.append(
                _implication(
                    "totally_well_covered_implies_totally_chain_connected",
                    entry["totally_well_covered"],
                    tcc,
                )
            )
            if shellable is not None:
                proved.append(
                    _implication(
                        "compatible_and_totally_well_covered_implies_shellable",
                        entry["compatible"] and entry["totally_well_covered"],
                        shellable,
                    )
                )
            if entry["el_labeling"] and shellable is not None:
                proved.append(
                    _implication("el_implies_shellable", True, shellable)
                )
            if "reduced_graph" in entry:
                proved.append(
                    _implication(
                        "unique_sink_iff_well_covered",
                        True,
                        entry["reduced_graph"]["unique_sink"] == entry["well_covered"],
                    )
                )
                proved.append(
                    _implication(
                        "reduced_linear_implies_well_covered",
                        entry["reduced_graph"]["induced_order_is_linear"],
                        entry["well_covered"],
                    )
                )
            if entry["compatible"]:
                rises.append(entry["rise"])

        if compat is not None and shellable is not None:
            conjectures.append(
                _implication(
                    "totally_chain_connected_and_compatible_implies_shellable",
                    tcc and compat,
                    shellable,
                )
            )
        for entry in report.get("orders_tried", []):
            if entry["compatible"]:
                conjectures.append(
                    _implication(
                        "totally_chain_connected_and_compatible_implies_el",
                        tcc and entry["compatible"],
                        entry["el_labeling"],
                    )
                )
                conjectures.append(
                    _implication(
                        "totally_chain_connected_and_compatible_implies_totally_well_covered",
                        tcc and entry["compatible"],
                        entry["totally_well_covered"],
                    )
                )
                if "reduced_graph" in entry:
                    conjectures.append(
                        _implication(
                            "totally_chain_connected_and_compatible_implies_reduced_linear",
                            tcc and entry["compatible"],
                            entry["reduced_graph"]["induced_order_is_linear"],
                        )
                    )
        if compat is not None:
            conjectures.append(
                _implication(
                    "chain_connected_and_compatible_implies_totally_chain_connected",
                    cc and compat,
                    tcc,
                )
            )

        questions["rise_per_compatible_order"] = sorted(set(rises))
        questions["chain_components"] = report["chain_connectivity"]["components"]

    if shellable is False:
        questions["totally_chain_connected_but_not_shellable"] = tcc

    return {"proved": proved, "conjectures": conjectures, "questions": questions}
