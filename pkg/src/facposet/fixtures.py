"""Fixture catalog: every shipped instance, as group oracles or interval data.

Interval fixtures transcribed from diagrams ship as JSON files under
``data/`` (regenerated by ``scripts/make_fixtures.py``); node display names
are kept verbatim from the source diagrams so instances can be diffed by
eye.  Group-backed fixtures and the parameterized families are built on
demand.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .errors import SizeCap, UnknownFixture
from .groups import GroupOracle, build_labeled_interval, parse_cycles
from .interval import GroupContext, LabeledInterval, from_json_dict
from .wordposet import interval_from_word_classes

SYM_CAP = 7
BOOLEAN_CAP = 10
BOOLEAN_LETTERS = list("rstuvwxyz") + ["q"]


@dataclass
class Fixture:
    name: str
    description: str
    oracle: Optional[GroupOracle]
    target: Optional[int]
    interval: LabeledInterval


# -- transcribed interval fixtures -------------------------------------------
#
# Each entry: (classes, seeds, letters, extra_merges, name_overrides).
# A class lists the label cycles of one length-2 element; a seed is one
# reduced word of the top element per Hurwitz component.

WORD_FIXTURES = {
    # rank-4 interval over r,s,t,u,v: Hurwitz-connected but its length-3
    # prefix "rrr" has a disconnected chain graph (hence not shellable).
    "ex44_rrrt": dict(
        bottom_name="id",
        classes=[
            [("r", "t", "s", "v")],
            [("r", "v", "s", "u")],
            [("r", "u", "s", "t")],
            [("r", "s")],
            [("r",)],
            [("s",)],
        ],
        seeds=[("r", "r", "r", "t")],
        letters=["r", "s", "t", "u", "v"],
        extra_merges=[(("r", "r", "r"), ("s", "s", "s"))],
        name_overrides={},
    ),
    # rank-3 interval over r,s,t,u: Hurwitz-connected, but the element
    # rr = ss splits into two one-word orbits (not locally Hurwitz-connected).
    "ex46_rrt": dict(
        bottom_name="id",
        classes=[
            [("r",), ("s",)],
            [("r", "t", "s", "u")],
            [("r", "u", "s", "t")],
            [("r", "s")],
        ],
        seeds=[("r", "r", "t")],
        letters=["r", "s", "t", "u"],
        extra_merges=[],
        name_overrides={},
    ),
    # six commuting letters with rst = uvw: two chain-graph components,
    # every order compatible, never well-covered.
    "ex513_rst": dict(
        bottom_name="e",
        classes=[
            [("r", "s")],
            [("r", "t")],
            [("s", "t")],
            [("u", "v")],
            [("u", "w")],
            [("v", "w")],
        ],
        seeds=[("r", "s", "t"), ("u", "v", "w")],
        letters=["r", "s", "t", "u", "v", "w"],
        extra_merges=[],
        name_overrides={},
    ),
    # top = abb with one 3-cycle and one forced companion cycle; exactly
    # four compatible orders (the cyclic shifts of a < c < d < b).
    "thm612_n3": dict(
        bottom_name="id",
        classes=[
            [("a", "b", "c")],
            [("c", "b", "d")],
            [("b",)],
            [("c",)],
        ],
        seeds=[("a", "b", "b")],
        letters=["a", "b", "c", "d"],
        extra_merges=[],
        name_overrides={"bd": "bc"},
    ),
    # top = abbb, the next member of the same family; exactly six
    # compatible orders (the cyclic shifts of a < c < f < d < e < b).
    "thm612_n4": dict(
        bottom_name="id",
        classes=[
            [("a", "b", "c")],
            [("b", "e", "d")],
            [("d", "f", "c")],
            [("b", "d", "c")],
            [("b",)],
            [("c",)],
            [("d",)],
        ],
        seeds=[("a", "b", "b", "b")],
        letters=["a", "b", "c", "d", "e", "f"],
        extra_merges=[],
        name_overrides={"be": "db", "bd": "cb"},
    ),
    # top = a0 b0 b0 over nine letters, three linked 5-cycles: locally
    # Hurwitz-connected and Hurwitz-connected, yet no compatible order.
    "ex611_abb": dict(
        bottom_name="id",
        classes=[
            [("a0", "b0", "c0", "c2", "b2")],
            [("c0", "b0", "a1", "b1", "c1")],
            [("c1", "b1", "a2", "b2", "c2")],
            [("c1", "b2", "b0")],
            [("b0", "b1", "c2")],
            [("b2", "c0", "b1")],
            [("b0",)],
            [("b2",)],
            [("b1",)],
        ],
        seeds=[("a0", "b0", "b0")],
        letters=["a0", "b0", "c0", "a1", "b1", "c1", "a2", "b2", "c2"],
        extra_merges=[],
        name_overrides={
            "b0a1": "c0b0",
            "b1a2": "c1b1",
            "b0c1": "c1b2",
            "b0b1": "b1c2",
            "c0b1": "b1b2",
        },
    ),
}

# Unlabeled rank-4 poset whose proper part realizes a well-known
# contractible but non-shellable 2-complex; totally chain-connected and
# not self-dual.  Nodes named after their diagram positions.
DUNCE_HAT_RANKS = [0] + [1] * 3 + [2] * 8 + [3] * 6 + [4]
DUNCE_HAT_EDGES = [
    (1, 2), (1, 3), (1, 4),
    (2, 5), (2, 6), (2, 7), (2, 8), (2, 9),
    (3, 5), (3, 6), (3, 7), (3, 10), (3, 11), (3, 12),
    (4, 8), (4, 9), (4, 10), (4, 11), (4, 12),
    (5, 13), (5, 16), (6, 14), (6, 17), (7, 15), (7, 18),
    (8, 13), (8, 14), (8, 18), (9, 15), (9, 16), (9, 17),
    (10, 13), (10, 17), (11, 14), (11, 18), (12, 15), (12, 16),
    (13, 19), (14, 19), (15, 19), (16, 19), (17, 19), (18, 19),
]

FIXTURE_DESCRIPTIONS = {
    "sym4_long_cycle": "S4 with its six transpositions, top = (1 2 3 4)",
    "dihedral8_rt": "square reflections, top = the 180-degree rotation",
    "ex44_rrrt": "rank-4 interval with a non-chain-connected length-3 prefix",
    "ex46_rrt": "rank-3 interval that is Hurwitz- but not locally Hurwitz-connected",
    "ex513_rst": "six commuting letters with rst = uvw; two chain components",
    "dunce_hat": "totally chain-connected, non-shellable unlabeled poset",
    "ex611_abb": "nine letters, three linked 5-cycles, no compatible order",
    "thm612_n3": "top = abb over four letters; four compatible orders",
    "thm612_n4": "top = abbb over six letters; six compatible orders",
}


def build_word_fixture(name: str) -> LabeledInterval:
    spec = WORD_FIXTURES[name]
    return interval_from_word_classes(
        classes=spec["classes"],
        seeds=spec["seeds"],
        letters=spec["letters"],
        extra_merges=spec["extra_merges"],
        name_overrides=spec["name_overrides"],
        bottom_name=spec["bottom_name"],
    )


def build_dunce_hat() -> LabeledInterval:
    return LabeledInterval(
        names=[f"n{i}" for i in range(1, 20)],
        ranks=DUNCE_HAT_RANKS,
        edges=[(u - 1, v - 1, None) for u, v in DUNCE_HAT_EDGES],
        bottom=0,
        top=18,
        alphabet=(),
    )


# -- group-backed fixtures and families ----------------------------------------


def dihedral8_oracle() -> GroupOracle:
    gens = [parse_cycles(s, 4) for s in ["(1 3)", "(2 4)", "(1 2)(3 4)", "(1 4)(2 3)"]]
    return GroupOracle.from_permutations(gens)


def sym_transposition_oracle(n: int) -> GroupOracle:
    gens = [
        parse_cycles(f"({i} {j})", n) for i in range(1, n) for j in range(i + 1, n + 1)
    ]
    return GroupOracle.from_permutations(gens)


def xor_table_oracle(n: int) -> GroupOracle:
    """(Z/2)^n with the first n letters as generators; carrier for boolean(n)."""
    order = 1 << n
    table = [[a ^ b for b in range(order)] for a in range(order)]
    letters = BOOLEAN_LETTERS[:n]

    def elt_name(mask: int) -> str:
        if mask == 0:
            return "e"
        return "".join(letters[i] for i in range(n) if mask & (1 << i))

    return GroupOracle.from_table(
        order=order,
        mul_table=table,
        identity=0,
        generators=[1 << i for i in range(n)],
        names=[elt_name(m) for m in range(order)],
    )


def generate_family(family: str, n: int) -> Fixture:
    """sym_long_cycle(n): S_n over transpositions, top the long cycle;
    boolean(n): rank-n boolean interval over n commuting letters."""
    if family == "sym_long_cycle":
        if not 1 <= n <= SYM_CAP:
            raise SizeCap(f"sym_long_cycle supports 1 <= n <= {SYM_CAP}")
        oracle = sym_transposition_oracle(n) if n > 1 else GroupOracle.from_table(
            1, [[0]], 0, [0], names=["()"]
        )
        cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")" if n > 1 else "()"
        target = oracle.element_by_name(cycle)
        interval = build_labeled_interval(oracle, target)
        return Fixture(f"sym{n}_long_cycle", f"S{n} long cycle", oracle, target, interval)
    if family == "boolean":
        if not 1 <= n <= BOOLEAN_CAP:
            raise SizeCap(f"boolean supports 1 <= n <= {BOOLEAN_CAP}")
        oracle = xor_table_oracle(n)
        target = (1 << n) - 1
        interval = build_labeled_interval(oracle, target)
        return Fixture(f"boolean_{n}", f"rank-{n} boolean interval", oracle, target, interval)
    raise UnknownFixture(f"unknown family {family!r}")


# -- catalog ---------------------------------------------------------------------


def _data_text(filename: str) -> str:
    return resources.files("facposet").joinpath("data", filename).read_text()


def load_fixture(name: str) -> Fixture:
    if name.startswith("boolean_"):
        try:
            n = int(name.split("_", 1)[1])
        except ValueError:
            raise UnknownFixture(f"unknown fixture {name!r}") from None
        return generate_family("boolean", n)
    if name == "sym4_long_cycle":
        fx = generate_family("sym_long_cycle", 4)
        return Fixture(name, FIXTURE_DESCRIPTIONS[name], fx.oracle, fx.target, fx.interval)
    if name == "dihedral8_rt":
        oracle = dihedral8_oracle()
        target = oracle.element_by_name("(1 3)(2 4)")
        return Fixture(
            name,
            FIXTURE_DESCRIPTIONS[name],
            oracle,
            target,
            build_labeled_interval(oracle, target),
        )
    if name in WORD_FIXTURES or name == "dunce_hat":
        interval = from_json_dict(json.loads(_data_text(f"{name}.json")))
        return Fixture(name, FIXTURE_DESCRIPTIONS[name], None, None, interval)
    raise UnknownFixture(f"unknown fixture {name!r}")


def fixture_names() -> list[str]:
    return sorted(FIXTURE_DESCRIPTIONS) + ["boolean_<n> (generated)"]


def regenerate_data_files(out_dir) -> list[str]:
    """Rebuild the shipped JSON fixtures from their transcription data."""
    from pathlib import Path

    from .interval import to_json_dict

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(WORD_FIXTURES):
        L = build_word_fixture(name)
        path = out / f"{name}.json"
        path.write_text(json.dumps(to_json_dict(L), indent=1, sort_keys=True) + "\n")
        written.append(str(path))
    path = out / "dunce_hat.json"
    path.write_text(
        json.dumps(to_json_dict(build_dunce_hat()), indent=1, sort_keys=True) + "\n"
    )
    written.append(str(path))
    return written
