"""Shared instance pools for the test suite."""

from __future__ import annotations

import pytest

from facposet.fixtures import generate_family, load_fixture
from facposet.scan import build_instance, conjugation_closed_subset_specs

CATALOG = [
    "sym4_long_cycle",
    "dihedral8_rt",
    "ex44_rrrt",
    "ex46_rrt",
    "ex513_rst",
    "dunce_hat",
    "ex611_abb",
    "thm612_n3",
    "thm612_n4",
]


def _instances():
    out = []
    for name in CATALOG:
        out.append((name, load_fixture(name).interval))
    for n in range(1, 7):
        out.append((f"boolean_{n}", generate_family("boolean", n).interval))
    for n in range(2, 6):
        out.append((f"sym{n}", generate_family("sym_long_cycle", n).interval))
    for spec in conjugation_closed_subset_specs("dihedral4", max_target_len=2):
        out.append(build_instance(spec))
    for spec in conjugation_closed_subset_specs("sym3", max_target_len=3):
        out.append(build_instance(spec))
    return out


_ALL = _instances()
ALL_INSTANCES = _ALL
LABELED_INSTANCES = [(n, L) for n, L in _ALL if L.is_labeled]
# instances small enough for exhaustive per-order sweeps
SMALL_LABELED = [
    (n, L) for n, L in LABELED_INSTANCES if len(L.alphabet) <= 6 and len(L) > 1
]
GROUP_BACKED = [(n, L) for n, L in _ALL if L.group is not None]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running searches")


@pytest.fixture(scope="session")
def sym4():
    return load_fixture("sym4_long_cycle").interval
