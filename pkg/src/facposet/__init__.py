"""Factorization posets over conjugation-closed generating sets.

Builds the prefix-order interval below a group element, decides and
certifies chain-connectivity, Hurwitz-connectivity and shellability, and
exposes the supporting machinery: compatible generator orders, the
well-covered property, and cycle graphs.
"""

from .interval import (
    LabeledInterval,
    ValidationReport,
    chain_word,
    duality_check,
    from_json_dict,
    maximal_chains,
    mobius_invariant,
    subinterval,
    to_json_dict,
    validate_interval,
    word_chain,
)
from .groups import GroupOracle, build_labeled_interval, length_bfs, validate_generating_set

__all__ = [
    "LabeledInterval",
    "ValidationReport",
    "GroupOracle",
    "build_labeled_interval",
    "chain_word",
    "duality_check",
    "from_json_dict",
    "length_bfs",
    "maximal_chains",
    "mobius_invariant",
    "subinterval",
    "to_json_dict",
    "validate_generating_set",
    "validate_interval",
    "word_chain",
]
