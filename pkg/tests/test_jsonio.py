"""Wire-format round trips and strict schema rejection."""

import pytest

from conftest import desk_params, mk_instance

from cubecolor import jsonio
from cubecolor.errors import InputFormatError
from cubecolor.generators import gen_random_instance, gen_unextendable_precoloring
from cubecolor.model import ParamSet, standard_coloring
from cubecolor.pipeline import replay, solve


def test_instance_round_trip_preserves_everything():
    inst = mk_instance(4, pre={(0, 1): 0, (3, 2): 3}, lists={(5, 3): {1, 2}})
    back = jsonio.instance_from_json(jsonio.instance_to_json(inst))
    assert back.d == inst.d
    assert back.precoloring.assignment == inst.precoloring.assignment
    assert back.lists.lists == inst.lists.lists
    assert back.params == inst.params


def test_generator_instance_round_trip_keeps_default_params():
    inst = gen_unextendable_precoloring(4)
    obj = jsonio.instance_to_json(inst)
    assert obj["params"] == {}
    back = jsonio.instance_from_json(obj)
    assert back.params == ParamSet()
    assert back.precoloring.assignment == inst.precoloring.assignment


def test_random_instance_round_trip():
    inst = gen_random_instance(6, 2, 3, seed=11)
    back = jsonio.instance_from_json(jsonio.instance_to_json(inst))
    assert back.precoloring.assignment == inst.precoloring.assignment
    assert back.lists.lists == inst.lists.lists


def test_wire_bytes_are_frozen():
    inst = mk_instance(2, pre={(0, 0): 1}, lists={(1, 1): {0}}, params=ParamSet(seed=3))
    assert jsonio.dumps(jsonio.instance_to_json(inst)) == (
        '{"d":2,"lists":[{"base":1,"colors":[1],"dim":1}],'
        '"params":{"seed":3},'
        '"precoloring":[{"base":0,"color":2,"dim":0}]}'
    )


def test_colors_are_one_based_on_the_wire():
    obj = jsonio.coloring_to_json(standard_coloring(3))
    assert min(obj["colors"]) == 1
    assert max(obj["colors"]) == 3
    assert jsonio.coloring_from_json(obj) == standard_coloring(3)


def test_trace_round_trips_both_routes():
    staged = solve(mk_instance(4, pre={(0, 1): 0, (3, 2): 0}))
    fast = solve(mk_instance(3, pre={(0, 0): 2}))
    for sol in (staged, fast):
        back = jsonio.trace_from_json(jsonio.trace_to_json(sol.trace))
        assert back == sol.trace
        assert replay(back) == sol.coloring


def test_params_serialization_is_overrides_only():
    assert jsonio.params_to_json(ParamSet()) == {}
    desk = jsonio.params_to_json(desk_params())
    assert desk["kappa"] == 0.75 and desk["max_tries"] == 64
    assert "seed" not in desk
    again = jsonio.params_from_json(desk)
    assert again == desk_params()


def test_fraction_params_survive_as_strings():
    from fractions import Fraction

    p = ParamSet(alpha=Fraction(1, 3), beta=Fraction(1, 2))
    obj = jsonio.params_to_json(p)
    assert obj == {"alpha": "1/3", "beta": "1/2"}
    assert jsonio.params_from_json(obj) == p


@pytest.mark.parametrize(
    "doc",
    [
        {"d": 4, "bogus": 1},
        {"bogus": 1},
        {"d": True},
        {"d": 0},
        {"d": 4, "precoloring": [{"base": 0, "dim": 1, "color": 0}]},
        {"d": 4, "precoloring": [{"base": 0, "dim": 1, "color": 5}]},
        {"d": 4, "precoloring": [{"base": 0, "dim": 1}]},
        {"d": 4, "precoloring": [{"base": 0, "dim": 1, "color": 1, "x": 2}]},
        {
            "d": 4,
            "precoloring": [
                {"base": 0, "dim": 1, "color": 1},
                {"base": 0, "dim": 1, "color": 2},
            ],
        },
        {"d": 4, "lists": [{"base": 0, "dim": 1, "colors": [1], "x": 2}]},
        {"d": 4, "lists": [{"base": 0, "dim": 1, "colors": [True]}]},
        {
            "d": 4,
            "lists": [
                {"base": 0, "dim": 1, "colors": [1]},
                {"base": 0, "dim": 1, "colors": [2]},
            ],
        },
        {"d": 4, "params": {"zeta": 1}},
        {"d": 4, "params": {"kappa": "1/0"}},
        {"d": 4, "params": {"kappa": True}},
        {"d": 4, "params": {"radii": {"density": 1.5}}},
        {"d": 4, "params": {"radii": {"nope": 1}}},
        {"d": 4, "params": {"max_tries": "many"}},
    ],
)
def test_malformed_instances_rejected(doc):
    with pytest.raises(InputFormatError):
        jsonio.instance_from_json(doc)


@pytest.mark.parametrize(
    "doc",
    [
        {"d": 3, "colors": [1] * 11},
        {"d": 3, "colors": [1] * 12, "x": 1},
        {"d": 3, "colors": [0] + [1] * 11},
        {"d": 3, "colors": [4] + [1] * 11},
        {"d": 3},
    ],
)
def test_malformed_colorings_rejected(doc):
    with pytest.raises(InputFormatError):
        jsonio.coloring_from_json(doc)


def test_malformed_trace_rejected():
    sol = solve(mk_instance(3, pre={(0, 0): 2}))
    obj = jsonio.trace_to_json(sol.trace)
    obj["surprise"] = 1
    with pytest.raises(InputFormatError):
        jsonio.trace_from_json(obj)
    del obj["surprise"]
    obj["final_colors"][0] = 0
    with pytest.raises(InputFormatError):
        jsonio.trace_from_json(obj)
