"""Partition-agreement metrics used for pipeline evaluation and tests."""

from __future__ import annotations

from collections import Counter
from math import comb
from typing import Hashable, Sequence


def adjusted_rand_index(labels_a: Sequence[Hashable], labels_b: Sequence[Hashable]) -> float:
    """Chance-corrected agreement between two labelings of the same items.

    1.0 means identical partitions (up to label renaming), ~0 means chance.
    """
    if len(labels_a) != len(labels_b):
        raise ValueError("labelings must cover the same items")
    n = len(labels_a)
    if n == 0:
        return 1.0

    contingency: Counter[tuple[Hashable, Hashable]] = Counter(zip(labels_a, labels_b))
    a_sizes = Counter(labels_a)
    b_sizes = Counter(labels_b)

    sum_cells = sum(comb(c, 2) for c in contingency.values())
    sum_a = sum(comb(c, 2) for c in a_sizes.values())
    sum_b = sum(comb(c, 2) for c in b_sizes.values())
    total = comb(n, 2)

    expected = sum_a * sum_b / total if total else 0.0
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        return 1.0
    return (sum_cells - expected) / (max_index - expected)
