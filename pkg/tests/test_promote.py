"""Conflict promotion: allowed lists, vetoes, incremental requested tracking."""

from dataclasses import replace

import pytest

from conftest import desk_params, naive_requested, random_lists, random_proper_partial

from cubecolor.cube import Edge
from cubecolor.errors import PromotionFailedError
from cubecolor.model import (
    ListAssignment,
    PartialColoring,
    conflict_edges,
    requested_edges,
    standard_coloring,
)
from cubecolor.promote import (
    RequestedTracker,
    allowed_colors,
    check_promotion,
    promote_conflicts,
)

import random


def test_single_conflict_gets_smallest_free_color():
    d = 2
    h = standard_coloring(d)
    lists = ListAssignment(d, {Edge(0, 0): frozenset({0})})
    phi_prime, promos = promote_conflicts(h, PartialColoring(d), lists, desk_params())
    assert promos == [(Edge(0, 0), 1)]
    assert phi_prime.assignment == {Edge(0, 0): 1}


def test_stuck_edge_raises():
    d = 4
    h = standard_coloring(d)
    # endpoint prescriptions occupy 1 and 2, the list bans 0 and 3
    phi = PartialColoring(d, {Edge(0, 1): 1, Edge(0, 2): 2})
    lists = ListAssignment(d, {Edge(0, 0): frozenset({0, 3})})
    with pytest.raises(PromotionFailedError) as exc:
        promote_conflicts(h, phi, lists, desk_params())
    assert exc.value.edge == Edge(0, 0)


def test_color_overload_veto():
    d = 3
    h = standard_coloring(d)
    # both prescriptions carry their own standard color: no requested edges
    phi = PartialColoring(d, {Edge(4, 1): 1, Edge(5, 1): 1})
    lists = ListAssignment(d, {Edge(0, 0): frozenset({0})})
    _, tight = promote_conflicts(h, phi, lists, desk_params(epsilon0=0.5))
    assert tight == [(Edge(0, 0), 2)]  # color 1 already used twice, cutoff 2
    _, loose = promote_conflicts(h, phi, lists, desk_params(epsilon0=0.9))
    assert loose == [(Edge(0, 0), 1)]


def test_requested_overload_veto():
    d = 3
    h = standard_coloring(d)
    phi = PartialColoring(d, {Edge(0, 1): 2, Edge(0, 2): 1})
    tracker = RequestedTracker(h, phi)
    assert dict(sorted(tracker.per_vertex.items())) == {0: 2, 2: 2, 4: 2, 6: 2}
    lists = ListAssignment(d, {Edge(2, 0): frozenset({0})})
    with pytest.raises(PromotionFailedError):
        promote_conflicts(h, phi, lists, desk_params(epsilon0=0.4))  # cutoff 2
    _, promos = promote_conflicts(h, phi, lists, desk_params(epsilon0=0.7))  # cutoff 3
    assert promos == [(Edge(2, 0), 1)]


def test_tracker_shifts_later_promotion():
    d = 3
    h = standard_coloring(d)
    lists = ListAssignment(
        d, {Edge(0, 0): frozenset({0}), Edge(2, 0): frozenset({0})}
    )
    p = desk_params(epsilon0=0.3)  # cutoff 1: any requested endpoint is overloaded
    p = replace(p, radii=replace(p.radii, color_overload=0))
    phi_prime, promos = promote_conflicts(h, PartialColoring(d), lists, p)
    # promoting (0,d0) to 1 makes (0,d1)/(1,d1) requested, pushing (2,d0) to 2
    assert promos == [(Edge(0, 0), 1), (Edge(2, 0), 2)]
    rep = check_promotion(h, PartialColoring(d), phi_prime, lists, p)
    assert rep.passed


def test_prescribed_conflict_is_skipped():
    d = 3
    h = standard_coloring(d)
    phi = PartialColoring(d, {Edge(0, 0): 1})
    lists = ListAssignment(d, {Edge(0, 0): frozenset({0})})
    phi_prime, promos = promote_conflicts(h, phi, lists, desk_params())
    assert promos == []
    assert phi_prime.assignment == phi.assignment


def test_tracker_matches_batch_recomputation():
    d = 4
    h = standard_coloring(d)
    rng = random.Random(7)
    phi = random_proper_partial(d, rng, 3)
    tracker = RequestedTracker(h, phi)
    grown = PartialColoring(d, dict(phi.assignment))
    for e, c in [(Edge(8, 0), 1), (Edge(5, 1), 3)]:
        if e in grown.assignment:
            continue
        grown.assignment[e] = c
        tracker.note_prescription(e, c)
    assert tracker.edges == requested_edges(h, grown)
    assert tracker.edges == naive_requested(d, h, grown)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_promotions_avoid_lists_and_stay_proper(seed):
    d = 6
    h = standard_coloring(d)
    rng = random.Random(seed)
    phi = random_proper_partial(d, rng, 4)
    lists = random_lists(d, rng, 6, 2)
    try:
        phi_prime, promos = promote_conflicts(h, phi, lists, desk_params())
    except PromotionFailedError:
        pytest.skip("instance happened to be stuck")
    from cubecolor.model import is_proper

    assert is_proper(phi_prime)
    for e, c in promos:
        assert c not in lists.forbidden(e)
        assert h.get(e) in lists.forbidden(e)
    promoted = {e for e, _ in promos}
    assert promoted == {
        e for e in conflict_edges(h, lists) if e not in phi.assignment
    }
    rep = check_promotion(h, phi, phi_prime, lists, desk_params())
    assert rep.clause("extends").passed
    assert rep.clause("respects-lists").passed


def test_check_promotion_flags_non_extension():
    d = 3
    h = standard_coloring(d)
    phi = PartialColoring(d, {Edge(0, 1): 2})
    mangled = PartialColoring(d, {Edge(0, 1): 0})
    rep = check_promotion(h, phi, mangled, ListAssignment(d), desk_params())
    assert not rep.passed
    assert not rep.clause("extends").passed


def test_allowed_colors_ascending_and_endpoint_aware():
    d = 4
    h = standard_coloring(d)
    phi = PartialColoring(d, {Edge(0, 2): 3})
    tracker = RequestedTracker(h, phi)
    lists = ListAssignment(d, {Edge(0, 0): frozenset({1})})
    out = allowed_colors(h, phi, lists, Edge(0, 0), tracker, desk_params())
    assert out == sorted(out)
    assert 1 not in out  # listed
    assert 3 not in out  # prescribed at vertex 0
