"""Direct solver for instances whose constrained edges are far apart.

When the prescribed and list-carrying edges form a matching with pairwise
distance at least three, each one can be fixed independently: starting from
the dimension coloring, swap the unique two-colored square spanned by the
edge's own dimension and its wanted color.  The squares of different
constrained edges cannot share an edge at that separation, and the companion
edges a square recolors are unconstrained, so no list is ever violated.
"""

from __future__ import annotations

from itertools import combinations

from .cube import Edge, FourCycle, edge_distance, four_cycle_through
from .errors import FastpathFailedError, FastpathInapplicableError, NotTwoColoredError
from .model import Instance, TotalColoring, edges_sorted, standard_coloring, swap_inplace

DEFAULT_MIN_DISTANCE = 3


def is_distance_matching(d: int, edges, min_distance: int = DEFAULT_MIN_DISTANCE) -> bool:
    """True when the edges are pairwise at least min_distance apart."""
    items = list(edges)
    return all(
        edge_distance(d, a, b) >= min_distance for a, b in combinations(items, 2)
    )


def _target_color(inst: Instance, e: Edge, current: int) -> int:
    prescribed = inst.precoloring.assignment.get(e)
    if prescribed is not None:
        return prescribed
    forbidden = inst.lists.forbidden(e)
    if current not in forbidden:
        return current
    for c in range(inst.d):
        if c not in forbidden:
            return c
    raise FastpathFailedError(
        f"edge {tuple(e)} forbids all {inst.d} colors"
    )


def solve_matching_instance(
    inst: Instance, min_distance: int = DEFAULT_MIN_DISTANCE
) -> tuple[TotalColoring, list[FourCycle]]:
    """Solve a far-apart instance by one square swap per constrained edge.

    min_distance below 3 is accepted for experiments but loses the
    disjointness guarantee.  Raises FastpathInapplicableError when the
    constrained edges are too close, FastpathFailedError when some edge
    forbids every color.
    """
    constrained = edges_sorted(inst.constrained_edges())
    if not is_distance_matching(inst.d, constrained, min_distance):
        raise FastpathInapplicableError(
            f"constrained edges are not a distance-{min_distance} matching"
        )
    h = standard_coloring(inst.d)
    cycles: list[FourCycle] = []
    for e in constrained:
        target = _target_color(inst, e, h.get(e))
        if target == h.get(e):
            continue
        cyc = four_cycle_through(inst.d, e, target)
        try:
            swap_inplace(h, cyc)
        except NotTwoColoredError as ex:
            # only reachable below the guaranteed separation: squares collided
            raise FastpathFailedError(
                f"square for edge {tuple(e)} was disturbed by an earlier swap"
            ) from ex
        cycles.append(cyc)
    return h, cycles
