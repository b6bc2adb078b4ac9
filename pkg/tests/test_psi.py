import math

import pytest

from continuum_lab.errors import DomainError, ResourceError
from continuum_lab.psi import (Arc, Piece, PsiPathspace, build_psi_model,
                               closed_form_element_count,
                               component_cyclic_arrangement, curvature_check,
                               distinct_element_count, level_structure_report,
                               normalize_to_psi0, order_arc_path,
                               planck_report, raw_values)

TOL = 1e-12


@pytest.fixture(scope="module")
def model():
    return build_psi_model()


@pytest.fixture(scope="module")
def pv(model):
    return normalize_to_psi0(model)


def test_fiber_chain_shape(model):
    assert model.m == 6
    assert model.k == 6
    for pat in model.patterns:
        assert len(pat) == 6


def test_element_census(model):
    pieces = [e for e in model.elements if isinstance(e, Piece)]
    arcs = [e for e in model.elements if isinstance(e, Arc)]
    assert len(pieces) == 120  # 20 proper subintervals per fiber
    assert len(arcs) == 31     # 5 lengths x 6 starts, plus the whole
    assert len(model.elements) == distinct_element_count(model.m, model.k)
    assert len(model.elements) == 151
    # the closed-form census counts full fibers twice (as length-1 arcs
    # and again as fibers); the distinct census removes the overlap
    assert closed_form_element_count(6, 6) == 157
    assert closed_form_element_count(6, 6) - distinct_element_count(6, 6) == 6


def test_golden_size_constants(model):
    assert model.l == 0.0335744354939384
    assert model.L == 0.2284301695440301
    assert model.mu[model.whole] == 0.7068619848690658
    assert 0.0 < model.l <= model.L < model.mu[model.whole]


def test_containment_order(model):
    piece = Piece(fiber=2, i=2, j=4)
    inner = Piece(fiber=2, i=3, j=4)
    fiber = Arc(start=2, length=1)
    assert model.leq(inner, piece)
    assert model.leq(piece, fiber)
    assert not model.leq(piece, Arc(start=3, length=1))
    assert model.leq(fiber, Arc(start=1, length=3))
    assert all(model.leq(e, model.whole) for e in model.elements)


def test_strict_size_monotonicity(model):
    for a in model.elements:
        for b in model.elements:
            if a != b and model.leq(a, b):
                assert model.mu[a] < model.mu[b]


def test_classification_split(model):
    for e in model.elements:
        expected = "filament" if isinstance(e, Piece) else "ample"
        assert model.classify(e) == expected


def test_planck_boundary_is_the_full_fibers(model):
    rep = planck_report(model)
    assert set(rep.boundary) == {Arc(start=s, length=1) for s in range(6)}
    assert rep.l == model.l and rep.L == model.L


def test_invalid_elements_rejected(model):
    with pytest.raises(DomainError):
        Piece(fiber=0, i=3, j=2)
    with pytest.raises(DomainError):
        Arc(start=0, length=0)
    # the full fiber is represented as an Arc, never as a Piece
    assert Piece(fiber=0, i=1, j=6) not in model.index
    assert Arc(start=0, length=1) in model.index


def test_element_cap():
    with pytest.raises(ResourceError):
        build_psi_model(max_elements=50)


# -- normalization ----------------------------------------------------------


def test_normalized_fibers_all_at_l(pv):
    for s in range(6):
        assert abs(pv.values[Arc(start=s, length=1)] - pv.l) <= TOL


def test_normalization_keeps_strict_monotonicity(pv):
    model = pv.model
    for a in model.elements:
        for b in model.elements:
            if a != b and model.leq(a, b):
                assert pv.values[a] < pv.values[b]


def test_equal_length_arcs_get_equal_value(pv):
    for length in range(2, 6):
        vals = {pv.values[Arc(start=s, length=length)] for s in range(6)}
        assert len(vals) == 1


def test_level_set_at_l_is_the_boundary(pv):
    level = {e for e in pv.model.elements
             if abs(pv.values[e] - pv.l) <= TOL}
    assert level == {Arc(start=s, length=1) for s in range(6)}


def test_raw_values_match_model(model):
    rv = raw_values(model)
    assert rv.values[model.whole] == model.mu[model.whole]
    assert rv.l == model.l


# -- level structure --------------------------------------------------------

def test_sub_planck_level_has_m_components(pv):
    rep = level_structure_report(pv, 0.4 * pv.l)
    assert len(rep.components) == 6
    assert not rep.is_cycle
    fibers = [pv.model.fibers_of(comp[0]) for comp in rep.components]
    assert sorted(f for fs in fibers for f in fs) == list(range(6))
    assert component_cyclic_arrangement(pv, rep)


def test_level_at_l_is_a_cycle_of_fibers(pv):
    rep = level_structure_report(pv, pv.l)
    assert set(rep.elements) == {Arc(start=s, length=1) for s in range(6)}
    assert len(rep.components) == 1
    assert rep.is_cycle
    assert rep.epsilon == 0.21875


def test_level_above_l_is_a_single_cycle(pv):
    t = pv.values[Arc(start=0, length=2)]
    rep = level_structure_report(pv, t)
    assert len(rep.components) == 1
    assert rep.is_cycle
    assert all(isinstance(e, Arc) for e in rep.elements)


# -- paths and curvature ----------------------------------------------------

def test_cross_fiber_path_passes_ample_element(pv):
    a = Piece(fiber=0, i=2, j=3)
    b = Piece(fiber=3, i=2, j=3)
    dist, path = order_arc_path(pv, a, b)
    assert math.isfinite(dist)
    assert path[0] == a and path[-1] == b
    assert any(isinstance(e, Arc) for e in path)


def test_filament_only_space_is_fiberwise(pv):
    space = PsiPathspace(pv, filament_only=True)
    a = Piece(fiber=0, i=2, j=3)
    same, _ = space.path_between(a, Piece(fiber=0, i=1, j=4))
    cross, path = space.path_between(a, Piece(fiber=1, i=2, j=3))
    assert math.isfinite(same)
    assert math.isinf(cross) and path == []


def test_path_distance_lower_bound(pv):
    # a geodesic can never be shorter than the direct value gap
    a = Piece(fiber=0, i=1, j=1)
    b = pv.model.whole
    dist, path = order_arc_path(pv, a, b)
    assert dist >= abs(pv.values[b] - pv.values[a]) - TOL


def test_nested_pair_distance_is_value_gap(pv):
    a = Piece(fiber=2, i=2, j=3)
    b = Arc(start=2, length=1)
    dist, path = order_arc_path(pv, a, b)
    assert dist == pytest.approx(pv.values[b] - pv.values[a], abs=TOL)
    assert path == [a, b]


def test_curvature_triples_additive(pv):
    rep = curvature_check(pv, trials=1000, seed=0, tol=TOL)
    assert rep.trials == 1000
    assert rep.degenerate == 41
    assert rep.all_additive
    assert rep.worst_defect <= 1e-15


def test_curvature_deterministic_per_seed(pv):
    a = curvature_check(pv, trials=200, seed=5)
    b = curvature_check(pv, trials=200, seed=5)
    assert (a.degenerate, a.additive, a.worst_defect) == \
        (b.degenerate, b.additive, b.worst_defect)


# -- terminality granularity ------------------------------------------------

def test_closed_vertices_overlap_between_adjacent_pieces(model):
    a = model.closed_vertices(Piece(fiber=0, i=1, j=2))
    b = model.closed_vertices(Piece(fiber=0, i=4, j=5))
    c = model.closed_vertices(Piece(fiber=0, i=2, j=3))
    # links two apart are disjoint; consecutive links share a point
    assert a & b == frozenset()
    assert a & c and not (a <= c or c <= a)
