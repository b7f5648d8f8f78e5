"""Report assembly and the consistency section."""

from facposet.analyze import AnalysisOptions, run_analysis
from facposet.fixtures import generate_family, load_fixture
from facposet.interval import LabeledInterval


def test_report_sym4():
    fx = load_fixture("sym4_long_cycle")
    report = run_analysis(fx.interval, name=fx.name)
    assert report["instance"] == "sym4_long_cycle"
    assert report["summary"] == {
        "nodes": 14,
        "rank": 3,
        "alphabet": ["(1 2)", "(1 3)", "(1 4)", "(2 3)", "(2 4)", "(3 4)"],
        "chains": 16,
        "mobius": -5,
        "self_dual": True,
        "self_dual_witness": None,
    }
    assert report["compatible_orders"]["count"] == 48
    assert report["chain_connectivity"]["totally"]
    assert report["hurwitz"]["connected"] and report["hurwitz"]["locally_connected"]
    assert report["cycle_graph"]["min_feedback_arc_set"] == 6
    assert report["shelling"]["status"] == "shellable"
    assert report["violations"] == []
    assert report["counterexample_candidates"] == []
    first = report["orders_tried"][0]
    assert first["rise"] == 1 and first["el_labeling"]


def test_report_ex44():
    report = run_analysis(load_fixture("ex44_rrrt").interval, name="ex44")
    assert report["hurwitz"]["connected"]
    assert not report["chain_connectivity"]["totally"]
    assert report["chain_connectivity"]["witness"] == ["id", "rrr"]
    assert report["compatible_orders"]["exists"] is False
    assert report["shelling"]["status"] == "not_shellable"
    assert report["violations"] == []
    assert report["cycle_graph"]["min_feedback_arc_set"] == 9


def test_report_dunce_without_shelling():
    report = run_analysis(
        load_fixture("dunce_hat").interval,
        name="dunce",
        options=AnalysisOptions(with_shelling=False),
    )
    assert not report["labeled"]
    assert "hurwitz" not in report
    assert report["chain_connectivity"]["totally"]
    assert report["summary"]["self_dual"] is False


def test_report_rank2_section():
    report = run_analysis(load_fixture("dihedral8_rt").interval, name="d8")
    assert report["min_rise_rank2"]["value"] == 2
    names = {c["name"]: c for c in report["consistency"]["proved"]}
    assert names["rank2_compatible_iff_hurwitz_backward"]["ok"]
    assert report["violations"] == []


def test_report_invalid_interval_short_circuits():
    L = LabeledInterval(
        names=["a", "b"], ranks=[0, 2], edges=[(0, 1, None)], bottom=0, top=1
    )
    report = run_analysis(L, name="broken")
    assert report["valid"] is False
    assert "validation_failures" in report


def test_boolean_reports_clean():
    for n in range(1, 5):
        report = run_analysis(generate_family("boolean", n).interval, name=f"b{n}")
        assert report["violations"] == []
        assert report["shelling"]["status"] == "shellable"
