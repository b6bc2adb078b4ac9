import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from continuum_lab.continua import build_continuum, enumerate_subcontinua
from continuum_lab.errors import DomainError
from continuum_lab.metric_core import DEFAULT_TOL
from continuum_lab.whitney import (build_whitney_map, check_whitney_axioms,
                                   continuity_modulus_table,
                                   equal_level_refinement,
                                   hyperspace_distance_matrices,
                                   whitney_distance, whitney_level)


@pytest.fixture(scope="module")
def path10():
    g = build_continuum("path", n=10)
    return g, enumerate_subcontinua(g), build_whitney_map(g)


def test_golden_whole_value_path5():
    g = build_continuum("path", n=5)
    mu = build_whitney_map(g)
    assert mu(frozenset(range(5))) == 0.7427083333333334


def test_axioms_hold_exhaustively(path10):
    g, subs, mu = path10
    rep = check_whitney_axioms(mu, subs, tol=DEFAULT_TOL)
    assert rep.all_ok


def test_singletons_are_zero(path10):
    g, subs, mu = path10
    for v in range(g.n):
        assert mu(frozenset([v])) == 0.0


def test_strict_monotonicity(path10):
    g, subs, mu = path10
    for a in subs:
        for b in subs:
            if a < b:
                assert mu(a) < mu(b)


def test_values_in_unit_range(path10):
    g, subs, mu = path10
    whole = frozenset(range(g.n))
    assert 0.0 < mu(whole) < 1.0
    for s in subs:
        assert 0.0 <= mu(s) <= mu(whole)


def test_seeded_maps_differ_but_stay_whitney():
    g = build_continuum("path", n=6)
    subs = enumerate_subcontinua(g)
    mu0 = build_whitney_map(g, ordering_seed=0)
    mu3 = build_whitney_map(g, ordering_seed=3)
    assert any(mu0(s) != mu3(s) for s in subs)
    assert check_whitney_axioms(mu3, subs).all_ok


def test_distance_nested_pair_is_size_difference(path10):
    g, subs, mu = path10
    a, b = frozenset([3]), frozenset([2, 3, 4])
    assert whitney_distance(mu, a, b) == mu(b) - mu(a)


def test_distance_to_inner_point_is_size(path10):
    g, subs, mu = path10
    for a in subs[:20]:
        for x in a:
            assert abs(whitney_distance(mu, a, frozenset([x])) - mu(a)) \
                <= DEFAULT_TOL


def test_cx_mode_rejects_disconnected_union():
    g = build_continuum("path", n=6)
    mu = build_whitney_map(g)
    with pytest.raises(DomainError):
        whitney_distance(mu, frozenset([0]), frozenset([5]), mode="CX",
                         connected_check=g.is_connected)
    # ... but the same pair is fine in the ambient-union mode
    assert whitney_distance(mu, frozenset([0]), frozenset([5])) > 0


def test_whitney_level_membership():
    g = build_continuum("path", n=8)
    subs = enumerate_subcontinua(g)
    mu = build_whitney_map(g)
    t = mu(frozenset([2, 3]))
    members = whitney_level(mu, subs, t)
    assert frozenset([2, 3]) in members
    assert frozenset(range(8)) not in members


def test_equal_level_refinement_covers_each_member():
    g = build_continuum("path", n=8)
    mu = build_whitney_map(g)
    halves = [frozenset(range(4)), frozenset(range(4, 8))]
    t0 = min(mu(h) for h in halves) / 2
    out = equal_level_refinement(g, mu, halves, t0)
    for piece in out:
        covered = set()
        for s in piece.pieces:
            assert s <= piece.member
            assert abs(mu(s) - t0) <= piece.tol + DEFAULT_TOL
            covered |= s
        assert covered == set(piece.member)


def test_equal_level_refinement_validates_input():
    g = build_continuum("path", n=6)
    mu = build_whitney_map(g)
    with pytest.raises(DomainError):
        equal_level_refinement(g, mu, [frozenset(range(5))], 0.1)
    with pytest.raises(DomainError):
        equal_level_refinement(g, mu, [frozenset(range(6))], 2.0)


def test_metrics_uniformly_comparable():
    g = build_continuum("path", n=8)
    subs = enumerate_subcontinua(g)
    mu = build_whitney_map(g)
    dh, dm = hyperspace_distance_matrices(g, mu, subs)
    for eps in (0.05, 0.1, 0.5):
        (_, delta1), = continuity_modulus_table(dh, dm, [eps])
        (_, delta2), = continuity_modulus_table(dm, dh, [eps])
        assert delta1 > 0 and delta2 > 0


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=9), st.integers(min_value=0,
                                                          max_value=100))
def test_axioms_hold_for_any_seed_and_size(n, seed):
    g = build_continuum("path", n=n)
    subs = enumerate_subcontinua(g)
    mu = build_whitney_map(g, ordering_seed=seed)
    assert check_whitney_axioms(mu, subs, tol=DEFAULT_TOL).all_ok


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=3, max_value=8))
def test_cycle_maps_are_whitney(n):
    g = build_continuum("cycle", n=n)
    subs = enumerate_subcontinua(g)
    mu = build_whitney_map(g)
    assert check_whitney_axioms(mu, subs, tol=DEFAULT_TOL).all_ok
