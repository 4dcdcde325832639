"""Instance generators: adversarial constructions and seeded random sampling.

The three adversarial generators build the classic infeasible families
around one fixed edge u1u2 = (0, 0): split palettes, unavoidable lists,
and the combined precoloring-plus-lists construction. All of them place
neighbor edges in increasing dimension order so output is deterministic.
"""

import random
from fractions import Fraction

from .cube import Edge, all_edges
from .density import check_alpha_dense, check_beta_sparse
from .errors import OutOfRangeError, ParameterWindowError
from .model import Instance, ListAssignment, ParamSet, PartialColoring


def _check_small_d(d: int) -> None:
    if d < 2:
        raise OutOfRangeError(f"the construction needs d >= 2, got {d}")


def gen_unextendable_precoloring(d: int) -> Instance:
    """Split the palette across the two endpoints of edge (0, 0).

    ceil(d/2) edges at vertex 0 take colors 0..ceil(d/2)-1; floor(d/2)
    edges at vertex 1 take the remaining colors. Every color is then
    blocked on (0, 0) from one side or the other, so no proper extension
    exists. For odd d the second star gets one edge fewer than the first,
    which keeps the precoloring proper without losing the contradiction.
    """
    _check_small_d(d)
    half_up = (d + 1) // 2
    pre: dict[Edge, int] = {}
    for i in range(1, half_up + 1):
        pre[Edge(0, i)] = i - 1
    for i in range(1, d - half_up + 1):
        pre[Edge(1, i)] = half_up + i - 1
    return Instance(d, PartialColoring(d, pre), ListAssignment(d))


def gen_unavoidable_lists(d: int) -> Instance:
    """Forbid the low half of the palette at vertex 0 and the high half at vertex 1.

    ceil(d/2) edges at vertex 0 all carry the list {0..ceil(d/2)-1} and
    floor(d/2) edges at vertex 1 all carry {ceil(d/2)..d-1}. The low colors
    then have fewer homes at vertex 0 than colors, or must land on (0, 0)
    while the high colors claim it from the other side. No precoloring.
    """
    _check_small_d(d)
    half_up = (d + 1) // 2
    low = frozenset(range(half_up))
    high = frozenset(range(half_up, d))
    lists: dict[Edge, frozenset[int]] = {}
    for i in range(1, half_up + 1):
        lists[Edge(0, i)] = low
    for i in range(1, d - half_up + 1):
        lists[Edge(1, i)] = high
    return Instance(d, PartialColoring(d), ListAssignment(d, lists))


def _exact_count(share, d: int, name: str) -> int:
    value = Fraction(share) * d
    if value.denominator != 1 or value < 1:
        raise OutOfRangeError(f"{name}*d must be a positive integer, got {value}")
    return int(value)


def gen_combined(d: int, alpha, beta) -> Instance:
    """Precoloring plus lists around edge (0, 0), infeasible inside the window.

    With a = alpha*d and b = beta*d: vertex 0 gets a precolored edges on the
    top colors {d-a..d-1} and b listed edges forbidding {0..b-1}; vertex 1
    mirrors with the bottom colors {0..a-1} precolored and lists {d-b..d-1}.
    Inside the window d-a-b <= b, both low and high color blocks are forced
    onto (0, 0), and b <= d-b+1 keeps those blocks disjoint.

    Pass exact fractions (Fraction(1, 6), not 1/6) when d*share is not a
    dyadic product; the counts must come out as integers.
    """
    _check_small_d(d)
    a = _exact_count(alpha, d, "alpha")
    b = _exact_count(beta, d, "beta")
    if d - a - b > b:
        raise ParameterWindowError(f"window violated: d - alpha*d - beta*d = {d - a - b} > beta*d = {b}")
    if b > d - b + 1:
        raise ParameterWindowError(f"window violated: beta*d = {b} > d - beta*d + 1 = {d - b + 1}")
    if a + b > d - 1:
        # each star holds d-1 edges besides (0, 0) itself
        raise ParameterWindowError(f"alpha*d + beta*d = {a + b} exceeds the star size {d - 1}")
    pre: dict[Edge, int] = {}
    lists: dict[Edge, frozenset[int]] = {}
    for i in range(1, a + 1):
        pre[Edge(0, i)] = d - a + i - 1
        pre[Edge(1, i)] = i - 1
    low = frozenset(range(b))
    high = frozenset(range(d - b, d))
    for i in range(a + 1, a + b + 1):
        lists[Edge(0, i)] = low
        lists[Edge(1, i)] = high
    return Instance(d, PartialColoring(d, pre), ListAssignment(d, lists))


def gen_random_instance(
    d: int, precolor_per_vertex_cap: int, list_size_cap: int, seed: int
) -> Instance:
    """Seeded compatible instance under per-vertex and per-edge caps.

    Two passes over about d candidate edges each: the first precolors
    properly while no endpoint exceeds the vertex cap, the second attaches
    lists of up to list_size_cap colors that never include the edge's own
    prescription. Cap 0 disables a pass, so caps (0, 0) give the empty
    instance. Identical arguments always produce the identical instance.
    """
    if d < 1:
        raise OutOfRangeError(f"d={d} must be at least 1")
    if precolor_per_vertex_cap < 0 or list_size_cap < 0:
        raise OutOfRangeError("caps must be nonnegative")
    rng = random.Random(seed)
    edges = list(all_edges(d))
    pre: dict[Edge, int] = {}
    lists: dict[Edge, frozenset[int]] = {}
    used: dict[int, int] = {}
    load: dict[int, int] = {}
    if precolor_per_vertex_cap > 0:
        for e in rng.sample(edges, min(d, len(edges))):
            u, v = e.base, e.base ^ (1 << e.dim)
            if load.get(u, 0) >= precolor_per_vertex_cap:
                continue
            if load.get(v, 0) >= precolor_per_vertex_cap:
                continue
            taken = used.get(u, 0) | used.get(v, 0)
            free = [c for c in range(d) if not (taken >> c) & 1]
            if not free:
                continue
            c = rng.choice(free)
            pre[e] = c
            used[u] = used.get(u, 0) | 1 << c
            used[v] = used.get(v, 0) | 1 << c
            load[u] = load.get(u, 0) + 1
            load[v] = load.get(v, 0) + 1
    if list_size_cap > 0:
        for e in rng.sample(edges, min(d, len(edges))):
            pool = [c for c in range(d) if c != pre.get(e)]
            size = min(rng.randint(1, list_size_cap), len(pool))
            if size <= 0 or e in lists:
                continue
            lists[e] = frozenset(rng.sample(pool, size))
    return Instance(d, PartialColoring(d, pre), ListAssignment(d, lists))


def density_profile(inst: Instance, params: ParamSet | None = None) -> dict:
    """Measured density reports for an instance, as plain dicts."""
    p = params or inst.params
    radius = p.radii.density
    return {
        "alpha": check_alpha_dense(inst.precoloring, p.alpha, radius).as_dict(),
        "beta": check_beta_sparse(inst.lists, p.beta, radius).as_dict(),
    }
