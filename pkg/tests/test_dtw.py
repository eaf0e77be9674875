"""DTW distance tests: examples, oracles, properties, backend equivalence."""

from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srlboard import _kernels
from srlboard._kernels import dtw_py
from srlboard.distance import (
    DistanceMatrix,
    dimension_distance,
    dtw_distance,
    pairwise_distances,
)
from srlboard.errors import EmptySeries, LengthMismatch, RosterMismatch


def enumerate_paths(n, m):
    """All monotone warping paths from (0,0) to (n-1,m-1)."""
    paths = []

    def walk(i, j, acc):
        if i == n - 1 and j == m - 1:
            paths.append(tuple(acc))
            return
        if i + 1 < n:
            walk(i + 1, j, acc + [(i + 1, j)])
        if j + 1 < m:
            walk(i, j + 1, acc + [(i, j + 1)])
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, acc + [(i + 1, j + 1)])

    walk(0, 0, [(0, 0)])
    return paths


def brute_force_dtw(a, b):
    """Minimum cost over explicitly enumerated warping paths."""
    best = float("inf")
    for path in enumerate_paths(len(a), len(b)):
        cost = sum(abs(a[i] - b[j]) for i, j in path)
        best = min(best, cost)
    return best


@lru_cache(maxsize=None)
def memo_dtw_oracle(a, b):
    """Independent quadratic DTW (full-table recursion, not the kernel DP)."""

    @lru_cache(maxsize=None)
    def rec(i, j):
        cost = abs(a[i] - b[j])
        if i == 0 and j == 0:
            return cost
        options = []
        if i > 0:
            options.append(rec(i - 1, j))
        if j > 0:
            options.append(rec(i, j - 1))
        if i > 0 and j > 0:
            options.append(rec(i - 1, j - 1))
        return cost + min(options)

    return rec(len(a) - 1, len(b) - 1)


series_strategy = st.lists(
    st.floats(min_value=-50, max_value=50, allow_nan=False), min_size=1, max_size=8
)


class TestDtwDistance:
    def test_identical_series(self):
        assert dtw_distance([1, 2, 3], [1, 2, 3]) == 0.0

    def test_single_cell(self):
        assert dtw_distance([0], [5]) == 5.0

    def test_known_warp(self):
        assert dtw_distance([1, 3, 4], [1, 4]) == 1.0
        assert brute_force_dtw((1, 3, 4), (1, 4)) == 1.0

    def test_empty_raises(self):
        with pytest.raises(EmptySeries):
            dtw_distance([], [1])
        with pytest.raises(EmptySeries):
            dtw_distance([1], [])

    @given(a=series_strategy, b=series_strategy)
    @settings(max_examples=150)
    def test_matches_path_enumeration(self, a, b):
        if len(a) * len(b) > 30:
            a, b = a[:5], b[:5]
        assert dtw_distance(a, b) == pytest.approx(brute_force_dtw(tuple(a), tuple(b)))

    @given(a=series_strategy, b=series_strategy)
    @settings(max_examples=150)
    def test_symmetric_nonnegative(self, a, b):
        d = dtw_distance(a, b)
        assert d >= 0
        assert d == pytest.approx(dtw_distance(b, a))

    @given(a=series_strategy)
    @settings(max_examples=50)
    def test_self_distance_zero(self, a):
        assert dtw_distance(a, a) == 0.0

    @given(a=series_strategy, b=series_strategy)
    @settings(max_examples=100)
    def test_backends_agree(self, a, b):
        compiled = _kernels.dtw(a, b) if _kernels.BACKEND == "compiled" else None
        pure = dtw_py.dtw(list(map(float, a)), list(map(float, b)))
        if compiled is not None:
            assert compiled == pytest.approx(pure, rel=1e-12, abs=1e-12)
        assert dtw_distance(a, b) == pytest.approx(pure, rel=1e-12, abs=1e-12)


class TestPairwise:
    def test_single_student(self):
        m = pairwise_distances({"s1": np.array([1.0, 2.0])})
        assert m.values.shape == (1, 1)
        assert m.values[0, 0] == 0.0

    def test_identical_series_zero_offdiag(self):
        m = pairwise_distances({"a": np.array([1.0, 2.0]), "b": np.array([1.0, 2.0])})
        assert m.values[0, 1] == 0.0

    def test_matches_independent_oracle(self):
        series = {
            "a": (0.0, 1.0, 2.0, 1.0),
            "b": (2.0, 2.0, 0.0, 0.0),
            "c": (5.0, 4.0, 3.0, 2.0),
        }
        m = pairwise_distances({k: np.array(v) for k, v in series.items()})
        names = list(series)
        for i, x in enumerate(names):
            for j, y in enumerate(names):
                expected = 0.0 if i == j else memo_dtw_oracle(series[x], series[y])
                assert m.values[i, j] == pytest.approx(expected)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            pairwise_distances({"a": np.array([1.0]), "b": np.array([1.0, 2.0])})

    @given(
        data=st.lists(
            st.lists(st.floats(min_value=0, max_value=20, allow_nan=False),
                     min_size=4, max_size=4),
            min_size=1,
            max_size=6,
        )
    )
    @settings(max_examples=50)
    def test_matrix_invariants(self, data):
        m = pairwise_distances({f"s{i}": np.array(v) for i, v in enumerate(data)})
        m.validate()


class TestDimensionDistance:
    def _matrix(self, values, roster=("a", "b")):
        return DistanceMatrix(tuple(roster), np.array(values, dtype=float))

    def test_sum_with_zero_identity(self):
        m = self._matrix([[0, 3], [3, 0]])
        z = self._matrix([[0, 0], [0, 0]])
        out = dimension_distance([m, z], normalize=False)
        np.testing.assert_array_equal(out.values, m.values)

    def test_doubling_without_normalization(self):
        m = self._matrix([[0, 3], [3, 0]])
        out = dimension_distance([m, m], normalize=False)
        np.testing.assert_array_equal(out.values, 2 * m.values)

    def test_normalization_balances_scales(self):
        big = self._matrix([[0, 10], [10, 0]])
        small = self._matrix([[0, 0.1], [0.1, 0]])
        out = dimension_distance([big, small], normalize=True)
        # each contributes exactly 1.0 at its own maximum
        assert out.values[0, 1] == pytest.approx(2.0)
        for m in (big, small):
            scaled = m.values / m.values.max()
            assert scaled.max() == pytest.approx(1.0)

    def test_zero_matrix_passes_through_normalization(self):
        z = self._matrix([[0, 0], [0, 0]])
        out = dimension_distance([z, z], normalize=True)
        np.testing.assert_array_equal(out.values, z.values)

    def test_roster_mismatch(self):
        a = self._matrix([[0, 1], [1, 0]], roster=("a", "b"))
        b = self._matrix([[0, 1], [1, 0]], roster=("b", "a"))
        with pytest.raises(RosterMismatch):
            dimension_distance([a, b])
