from __future__ import annotations

from itertools import permutations, product

import pytest

from labcount.directed import (
    directed_magic_scan,
    directed_period_experiment,
    is_directed_exception,
    path_interior_sequence,
    search_directed_antimagic,
)
from labcount.errors import UsageError
from labcount.labelings import vertex_sums
from labcount.multigraph import Multigraph, directed_path
from labcount.suites import directed_family


def path_oracle(length, k):
    """Labelings of a directed path with equal oriented sums on the interior."""
    total = 0
    for labels in product(range(k + 1), repeat=length):
        inner = {labels[i + 1] - labels[i] for i in range(length - 1)}
        total += len(inner) <= 1
    return total


class TestMagicScan:
    def test_cyclic_k3(self, cyclic_k3):
        rep = directed_magic_scan(cyclic_k3, 3)
        assert rep["common_values"] == {"0": 4} and rep["status"] == "pass"

    def test_undirected_refused(self, p3):
        with pytest.raises(UsageError):
            directed_magic_scan(p3, 2)

    def test_family_only_zero(self):
        for d in directed_family(3):
            assert directed_magic_scan(d, 3)["nonzero_common_values"] == []


class TestPathPeriods:
    @pytest.mark.parametrize("length", [1, 2, 3, 4])
    def test_sequence_matches_oracle(self, length):
        assert path_interior_sequence(length, 6) == [path_oracle(length, k) for k in range(7)]

    def test_golden(self):
        assert path_interior_sequence(3, 4) == [1, 2, 5, 8, 13]
        assert path_interior_sequence(4, 9) == [1, 2, 3, 6, 9, 12, 17, 22, 27, 34]

    @pytest.mark.parametrize("length, period", [(2, 1), (3, 2), (4, 3), (5, 4)])
    def test_periods(self, length, period):
        rep = directed_period_experiment(length)
        assert rep["period"] == period and rep["degree"] == 2

    def test_range(self):
        with pytest.raises(UsageError):
            directed_period_experiment(0)


class TestAntimagic:
    def test_exceptions_fail(self, oriented_k12, cyclic_k3):
        assert search_directed_antimagic(oriented_k12) is None
        assert search_directed_antimagic(cyclic_k3) is None
        assert is_directed_exception(oriented_k12) and is_directed_exception(cyclic_k3)

    def test_single_edge(self):
        d = Multigraph(2, ((0, 1),), True)
        assert search_directed_antimagic(d) == (1,)
        assert not is_directed_exception(d)

    def test_out_star_is_not_exception(self):
        d = Multigraph(3, ((0, 1), (0, 2)), True)
        assert not is_directed_exception(d) and search_directed_antimagic(d) is not None

    def test_matches_permutation_oracle(self):
        for d in directed_family(3):
            exists = any(
                len(set(vertex_sums(d, p))) == d.n for p in permutations(range(1, d.num_edges + 1))
            )
            assert (search_directed_antimagic(d) is not None) == exists
            assert exists != is_directed_exception(d)

    def test_undirected_refused(self, p3):
        with pytest.raises(UsageError):
            search_directed_antimagic(p3)

    def test_directed_path_helper(self):
        assert directed_path(2) == Multigraph(3, ((0, 1), (1, 2)), True)
