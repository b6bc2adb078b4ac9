import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from continuum_lab.errors import DomainError
from continuum_lab.metric_core import (DistanceReport,
                                       FinitePointSet, closed_neighborhood,
                                       hausdorff_distance)


def test_singleton_pair_is_euclidean_distance():
    k = FinitePointSet(points=[(0.0, 0.0)])
    l = FinitePointSet(points=[(3.0, 4.0)])
    rep = hausdorff_distance(k, l)
    assert rep.value == 5.0


def test_known_asymmetric_pair():
    # the far point 0.4 of L is 0.4 away from K = {0, 1}
    k = FinitePointSet(points=[(0.0, 0.0), (1.0, 0.0)])
    l = FinitePointSet(points=[(0.0, 0.0), (0.4, 0.0), (1.0, 0.0)])
    rep = hausdorff_distance(k, l)
    assert rep.value == pytest.approx(0.4, abs=1e-15)
    assert rep.direction == 1
    assert rep.witness == (1, 0)


def test_identical_sets_distance_zero():
    k = FinitePointSet(points=[(0.0, 1.0), (2.0, 3.0)])
    assert hausdorff_distance(k, k).value == 0.0


def test_constructor_validation():
    with pytest.raises(DomainError):
        FinitePointSet()
    with pytest.raises(DomainError):
        FinitePointSet(points=[])
    with pytest.raises(DomainError):
        FinitePointSet(points=[(0.0, 0.0)], matrix=[[0.0]])
    with pytest.raises(DomainError):
        FinitePointSet(matrix=[[0.0, 1.0], [2.0, 0.0]])  # asymmetric
    with pytest.raises(DomainError):
        FinitePointSet(matrix=[[0.0, 5.0, 1.0],
                               [5.0, 0.0, 1.0],
                               [1.0, 1.0, 0.0]])  # triangle violation


def test_matrix_backed_sets_and_subsets():
    m = [[0.0, 1.0, 2.0], [1.0, 0.0, 1.0], [2.0, 1.0, 0.0]]
    amb = FinitePointSet(matrix=m)
    sub = amb.subset([0, 2])
    rep = hausdorff_distance(sub, amb)
    assert rep.value == 1.0


def test_json_roundtrip():
    k = FinitePointSet(points=[(0.0, 0.5), (1.25, -3.0)])
    k2 = FinitePointSet.from_json(k.to_json())
    assert np.array_equal(k.points, k2.points)
    data = json.loads(k.to_json())
    assert "points" in data


def test_closed_neighborhood_includes_boundary():
    amb = FinitePointSet(points=[(float(i), 0.0) for i in range(5)])
    k = amb.subset([0])
    nb = closed_neighborhood(k, 2.0, amb)
    assert len(nb) == 3  # 0, 1, and the boundary point at distance exactly 2


def test_closed_neighborhood_requires_subset():
    amb = FinitePointSet(points=[(0.0, 0.0), (1.0, 0.0)])
    k = FinitePointSet(points=[(0.5, 0.0)])
    with pytest.raises(DomainError):
        closed_neighborhood(k, 1.0, amb)


def test_negative_distance_report_rejected():
    with pytest.raises(DomainError):
        DistanceReport(value=-1.0, witness=(0, 0), direction=0)


coords = st.floats(min_value=-50, max_value=50, allow_nan=False,
                   allow_infinity=False)
point_sets = st.lists(st.tuples(coords, coords), min_size=1, max_size=8)


@settings(max_examples=100, deadline=None)
@given(point_sets, point_sets)
def test_hausdorff_symmetry(p, q):
    k, l = FinitePointSet(points=p), FinitePointSet(points=q)
    assert hausdorff_distance(k, l).value == \
        pytest.approx(hausdorff_distance(l, k).value, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(point_sets, point_sets, point_sets)
def test_hausdorff_triangle_inequality(p, q, r):
    k = FinitePointSet(points=p)
    l = FinitePointSet(points=q)
    m = FinitePointSet(points=r)
    d_km = hausdorff_distance(k, m).value
    d_kl = hausdorff_distance(k, l).value
    d_lm = hausdorff_distance(l, m).value
    assert d_km <= d_kl + d_lm + 1e-9


@settings(max_examples=100, deadline=None)
@given(point_sets, point_sets)
def test_hausdorff_witness_attains_value(p, q):
    k, l = FinitePointSet(points=p), FinitePointSet(points=q)
    rep = hausdorff_distance(k, l)
    far, near = (k, l) if rep.direction == 0 else (l, k)
    i, j = rep.witness
    d = math.dist(far.points[i], near.points[j])
    assert d == pytest.approx(rep.value, abs=1e-12)
