"""Adversarial construction shapes, their infeasibility, and random sampling."""

from collections import Counter
from fractions import Fraction

import pytest

from cubecolor.cube import Edge
from cubecolor.density import check_alpha_dense
from cubecolor.errors import OutOfRangeError, ParameterWindowError
from cubecolor.generators import (
    density_profile,
    gen_combined,
    gen_random_instance,
    gen_unavoidable_lists,
    gen_unextendable_precoloring,
)
from cubecolor.model import (
    Instance,
    ListAssignment,
    PartialColoring,
    validate_instance,
    verify_solution,
)
from cubecolor.oracle import INFEASIBLE, brute_force_solve, exact_solve


def as_pre(inst):
    return {tuple(e): c for e, c in inst.precoloring.assignment.items()}


def as_lists(inst):
    return {tuple(e): set(s) for e, s in inst.lists.lists.items()}


def test_unextendable_structure():
    assert as_pre(gen_unextendable_precoloring(2)) == {(0, 1): 0, (1, 1): 1}
    assert as_pre(gen_unextendable_precoloring(3)) == {(0, 1): 0, (0, 2): 1, (1, 1): 2}
    assert as_pre(gen_unextendable_precoloring(4)) == {
        (0, 1): 0,
        (0, 2): 1,
        (1, 1): 2,
        (1, 2): 3,
    }
    assert len(gen_unextendable_precoloring(4).lists) == 0


def test_unextendable_is_infeasible():
    for d in (2, 3, 4, 5):
        inst = gen_unextendable_precoloring(d)
        validate_instance(inst)
        assert exact_solve(inst).status == INFEASIBLE


def test_unavoidable_structure():
    assert as_lists(gen_unavoidable_lists(2)) == {(0, 1): {0}, (1, 1): {1}}
    assert as_lists(gen_unavoidable_lists(3)) == {
        (0, 1): {0, 1},
        (0, 2): {0, 1},
        (1, 1): {2},
    }
    assert as_lists(gen_unavoidable_lists(4)) == {
        (0, 1): {0, 1},
        (0, 2): {0, 1},
        (1, 1): {2, 3},
        (1, 2): {2, 3},
    }
    assert len(gen_unavoidable_lists(4).precoloring) == 0


def test_unavoidable_is_infeasible():
    for d in (2, 3, 4, 5):
        assert exact_solve(gen_unavoidable_lists(d)).status == INFEASIBLE


def test_generators_agree_with_brute_force():
    for d in (2, 3):
        assert brute_force_solve(gen_unextendable_precoloring(d)).status == INFEASIBLE
        assert brute_force_solve(gen_unavoidable_lists(d)).status == INFEASIBLE


def test_unavoidable_minus_any_edge_is_feasible():
    base = gen_unavoidable_lists(4)
    for drop in sorted(base.lists.lists):
        trimmed = dict(base.lists.lists)
        del trimmed[drop]
        inst = Instance(4, PartialColoring(4), ListAssignment(4, trimmed))
        res = exact_solve(inst)
        assert res.feasible, drop
        assert verify_solution(inst, res.coloring).ok


def test_combined_structure_d4():
    inst = gen_combined(4, Fraction(1, 4), Fraction(2, 4))
    assert as_pre(inst) == {(0, 1): 3, (1, 1): 0}
    assert as_lists(inst) == {
        (0, 2): {0, 1},
        (0, 3): {0, 1},
        (1, 2): {2, 3},
        (1, 3): {2, 3},
    }


def test_combined_accepts_dyadic_floats():
    assert as_pre(gen_combined(4, 0.25, 0.5)) == as_pre(gen_combined(4, Fraction(1, 4), Fraction(2, 4)))


def test_combined_infeasible_in_window():
    for d, ad, bd in ((4, 1, 2), (5, 1, 2), (6, 1, 3)):
        inst = gen_combined(d, Fraction(ad, d), Fraction(bd, d))
        validate_instance(inst)
        assert exact_solve(inst).status == INFEASIBLE


def test_combined_window_rejections():
    with pytest.raises(ParameterWindowError, match="4 > beta"):
        gen_combined(6, Fraction(1, 6), Fraction(1, 6))
    with pytest.raises(ParameterWindowError, match="3 > d - beta"):
        gen_combined(4, Fraction(1, 4), Fraction(3, 4))
    with pytest.raises(ParameterWindowError, match="star size"):
        gen_combined(4, Fraction(1, 2), Fraction(1, 2))


def test_combined_share_must_be_integral():
    with pytest.raises(OutOfRangeError):
        gen_combined(6, Fraction(1, 5), Fraction(1, 2))
    with pytest.raises(OutOfRangeError):
        gen_combined(4, 0, Fraction(1, 2))


def test_generators_reject_d1():
    for gen in (gen_unextendable_precoloring, gen_unavoidable_lists):
        with pytest.raises(OutOfRangeError):
            gen(1)


def test_random_zero_caps_empty():
    inst = gen_random_instance(5, 0, 0, 3)
    assert len(inst.precoloring) == 0
    assert len(inst.lists) == 0


def test_random_deterministic():
    a = gen_random_instance(8, 1, 1, 7)
    b = gen_random_instance(8, 1, 1, 7)
    assert a.precoloring.assignment == b.precoloring.assignment
    assert a.lists.lists == b.lists.lists
    c = gen_random_instance(8, 1, 1, 8)
    assert a.precoloring.assignment != c.precoloring.assignment


def test_random_respects_caps_and_compatibility():
    for seed in range(10):
        inst = gen_random_instance(6, 2, 3, seed)
        validate_instance(inst)
        load = Counter()
        for e in inst.precoloring.assignment:
            load[e.base] += 1
            load[e.base ^ (1 << e.dim)] += 1
        assert all(n <= 2 for n in load.values())
        assert all(1 <= len(s) <= 3 for s in inst.lists.lists.values())
        assert all(inst.precoloring.get(e) not in s for e, s in inst.lists.lists.items())


def test_random_d8_density_profile():
    inst = gen_random_instance(8, 1, 1, 7)
    assert len(inst.precoloring) == 8
    assert len(inst.lists) == 8
    rep = check_alpha_dense(inst.precoloring, 0.2, 8)
    assert not rep.passed
    assert [(c.name, c.worst_count) for c in rep.clauses] == [
        ("vertex", 1),
        ("color", 3),
        ("matching", 3),
    ]
    prof = density_profile(inst)
    assert prof == density_profile(inst)
    assert set(prof) == {"alpha", "beta"}
