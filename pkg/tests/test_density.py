"""Sparsity validators: clause semantics, saturation, windowed counting."""

import random
from collections import Counter

import pytest

from conftest import naive_neighborhood, random_lists, random_proper_partial

from cubecolor.cube import Edge, all_edges
from cubecolor.density import check_alpha_dense, check_beta_sparse
from cubecolor.model import ListAssignment, PartialColoring


def star_precoloring(d, v, k):
    """k edges at vertex v, colors 0..k-1."""
    return PartialColoring(d, {Edge(v & ~(1 << i), i): i for i in range(k)})


def test_alpha_vertex_clause_fails_on_heavy_star():
    d = 6
    phi = star_precoloring(d, 0, 3)  # ceil(d/2) edges at one vertex
    rep = check_alpha_dense(phi, 0.49, 27)
    assert not rep.passed
    c = rep.clause("vertex")
    assert not c.passed and c.bound == 2 and c.worst_count == 3
    assert any(v["clause"] == "vertex" and v["vertex"] == 0 for v in rep.violations)


def test_alpha_passes_sparse():
    d = 6
    phi = PartialColoring(d, {Edge(0, 0): 0, Edge(12, 2): 1})
    rep = check_alpha_dense(phi, 0.49, 27)
    assert rep.passed
    assert rep.violations == []


def test_alpha_color_clause_counts_globally_when_saturated():
    d = 4
    # three edges of color 0 anywhere in the cube all land in one saturated window
    phi = PartialColoring(d, {Edge(0, 0): 0, Edge(12, 0): 0, Edge(10, 1): 0})
    rep = check_alpha_dense(phi, 0.6, 27)
    c = rep.clause("color")
    assert c.worst_count == 3
    assert not c.passed  # bound floor(2.4) = 2


def test_alpha_matching_clause():
    d = 4
    phi = PartialColoring(d, {Edge(0, 1): 0, Edge(12, 1): 2, Edge(3, 1): 1})
    rep = check_alpha_dense(phi, 0.6, 27)
    m = rep.clause("matching")
    assert m.worst_count == 3 and not m.passed


@pytest.mark.parametrize("k", [0, 1, 5])
def test_alpha_saturation_equivalence(k):
    d = 5
    rng = random.Random(17)
    phi = random_proper_partial(d, rng, 7)
    base = check_alpha_dense(phi, 0.4, d - 1)
    wider = check_alpha_dense(phi, 0.4, d - 1 + k)
    assert base.passed == wider.passed
    for name in ("vertex", "color", "matching"):
        assert base.clause(name).worst_count == wider.clause(name).worst_count


def test_alpha_windowed_matches_naive():
    d = 4
    radius = 1
    rng = random.Random(5)
    phi = random_proper_partial(d, rng, 6)
    rep = check_alpha_dense(phi, 0.26, radius)  # bound floor(1.04) = 1
    # recompute the color clause by brute force
    worst = 0
    for center in all_edges(d):
        hood = naive_neighborhood(d, center, radius)
        counts = Counter(c for e, c in phi.assignment.items() if e in hood)
        if counts:
            worst = max(worst, max(counts.values()))
    assert rep.clause("color").worst_count == worst


def test_beta_size_clause():
    d = 8
    lists = ListAssignment(d, {Edge(0, 0): frozenset({1, 2})})
    assert check_beta_sparse(lists, 0.3, 27).passed  # bound floor(2.4) = 2
    rep = check_beta_sparse(lists, 0.1, 27)
    assert not rep.passed
    assert not rep.clause("size").passed


def test_beta_vertex_color_clause():
    d = 4
    # color 3 forbidden on three edges at vertex 0
    lists = ListAssignment(
        d,
        {
            Edge(0, 0): frozenset({3}),
            Edge(0, 1): frozenset({3}),
            Edge(0, 2): frozenset({3}),
        },
    )
    rep = check_beta_sparse(lists, 0.6, 27)
    vc = rep.clause("vertex-color")
    assert vc.worst_count == 3 and not vc.passed
    assert vc.witness == {"vertex": 0, "color": 3}


def test_beta_matching_color_clause():
    d = 4
    lists = ListAssignment(
        d,
        {
            Edge(0, 2): frozenset({1}),
            Edge(1, 2): frozenset({1}),
            Edge(10, 2): frozenset({1}),
        },
    )
    rep = check_beta_sparse(lists, 0.6, 27)
    mc = rep.clause("matching-color")
    assert mc.worst_count == 3 and not mc.passed


def test_beta_saturation_equivalence():
    d = 5
    rng = random.Random(23)
    lists = random_lists(d, rng, 8, 2)
    a = check_beta_sparse(lists, 0.45, d - 1)
    b = check_beta_sparse(lists, 0.45, d + 7)
    assert a.passed == b.passed
    for name in ("size", "vertex-color", "matching-color"):
        assert a.clause(name).worst_count == b.clause(name).worst_count


def test_empty_inputs_pass():
    assert check_alpha_dense(PartialColoring(4), 0.25, 27).passed
    assert check_beta_sparse(ListAssignment(4), 0.25, 27).passed


def test_violation_cap():
    d = 4
    phi = PartialColoring(d, {e: 0 for e in all_edges(d) if e.dim == 0})
    rep = check_alpha_dense(phi, 0.1, 2)  # bound 0, masses of violations
    assert not rep.passed
    assert len(rep.violations) <= 16
