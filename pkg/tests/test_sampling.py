from __future__ import annotations

import pytest

from conjfields.sampling import (DuplicateNode, SamplePlan, borel_grid, interpolation_nodes,
                                 sample_direction, sample_slg, slg_element)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_samples_lie_in_sl_n(plan, n):
    for g in sample_slg(plan, n):
        assert g.det() == 1


def test_samples_are_reproducible_and_order_free(plan):
    a = sample_slg(plan, 3)
    assert a == sample_slg(SamplePlan(42, 10, 5), 3)
    assert slg_element(plan, 3, 7) == a[7]
    assert sample_slg(SamplePlan(43, 10, 5), 3) != a


def test_directions_are_traceless(plan):
    for x in sample_direction(plan, 4):
        assert x.trace() == 0


def test_borel_grid_rejects_duplicates():
    with pytest.raises(DuplicateNode):
        borel_grid([2, 3, 2], 1)


def test_interpolation_nodes_have_no_reciprocal_pairs():
    nodes = interpolation_nodes(40)
    assert len(set(nodes) | {1 / x for x in nodes}) == 80
