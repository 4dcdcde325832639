"""Completion stage: deliver every prescribed color by laddered cycle swaps.

Each mis-colored prescribed edge v2v3 gets a private configuration: the two
edges carrying the wanted color at v2 and v3 extend it to a path v1..v4, a
fresh dimension lifts the path to an eight-vertex ladder, and up to three
pendant gadgets precondition the far row so that three rolling swaps can walk
the wanted color onto the target.  Configurations are all built against the
unswapped coloring and executed afterwards; a shared used-edge set keeps them
pairwise edge-disjoint, so every swap is still two-colored when its turn
comes.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .cube import (
    Edge,
    FourCycle,
    all_edges,
    cycle_edges,
    edge_distance,
    edge_through,
    four_cycle_through,
)
from .density import ClauseResult, DensityReport, _assemble
from .errors import CompletionFailedError, InvalidConfigError, NotTwoColoredError
from .model import (
    ListAssignment,
    ParamSet,
    PartialColoring,
    TotalColoring,
    ceil_share,
    edges_sorted,
    is_proper,
    requested_edges,
    swap_inplace,
)


@dataclass(frozen=True)
class Gadget:
    """Pendant swap that recolors one far-row edge before the rolling swaps."""

    row_edge: Edge
    cycle: FourCycle
    pendant_dim: int
    needed: int


@dataclass
class TargetConfig:
    """One prescribed edge's ladder: its swaps in execution order."""

    target: Edge
    c1: int  # current color of the target
    c2: int  # prescribed color the target must end with
    c3: int  # shared color of the four rung edges
    rung_dim: int
    gadgets: list[Gadget]
    swaps: list[FourCycle]
    claimed: list[Edge]  # every edge some swap touches


def _color_neighbor(h: TotalColoring, v: int, color: int) -> tuple[int, Edge]:
    """The neighbor reached from v along the unique edge of the given color."""
    for dim in range(h.d):
        f = edge_through(v, dim)
        if h.get(f) == color:
            return v ^ (1 << dim), f
    raise InvalidConfigError(f"vertex {v} sees no edge of color {color}")


def _edge_between(u: int, v: int) -> Edge:
    dim = (u ^ v).bit_length() - 1
    return Edge(min(u, v), dim)


def _window_count(d: int, center: Edge, edges, radius: int) -> int:
    if radius >= d - 1:
        return len(edges)
    return sum(1 for f in edges if edge_distance(d, center, f) <= radius)


class _UsedState:
    """Edges claimed by accepted configurations, with per-vertex and per-dim tallies."""

    def __init__(self) -> None:
        self.edges: set[Edge] = set()
        self.at_vertex: Counter = Counter()
        self.by_dim: dict[int, list[Edge]] = defaultdict(list)

    def claim(self, claimed) -> None:
        for f in claimed:
            if f in self.edges:
                continue
            self.edges.add(f)
            self.at_vertex[f.base] += 1
            self.at_vertex[f.base ^ (1 << f.dim)] += 1
            self.by_dim[f.dim].append(f)


def _fresh(
    f: Edge,
    phi_prime: PartialColoring,
    requested: set[Edge],
    s_used: set[Edge],
    t_state: _UsedState,
    local: set[Edge],
) -> bool:
    return (
        f not in phi_prime.assignment
        and f not in requested
        and f not in s_used
        and f not in t_state.edges
        and f not in local
    )


def _find_gadget(
    row_edge: Edge,
    needed: int,
    rung_dim: int,
    h: TotalColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    requested: set[Edge],
    s_used: set[Edge],
    t_state: _UsedState,
    local_edges: set[Edge],
    local_vertices: set[int],
    target: Edge,
    cutoff: int,
    params: ParamSet,
) -> Gadget | None:
    """Pendant swap turning row_edge's color into needed, or None.

    The pendant square hangs off both endpoints of row_edge in a scan
    dimension: its side edges must already carry the needed color and its far
    edge must mirror row_edge's current color, so the square is two-colored.
    """
    d = h.d
    current = h.get(row_edge)
    x, y = row_edge.base, row_edge.base ^ (1 << row_edge.dim)
    for k in range(d):
        if k == row_edge.dim or k == rung_dim:
            continue
        xk, yk = x ^ (1 << k), y ^ (1 << k)
        if xk in local_vertices or yk in local_vertices:
            continue
        if t_state.at_vertex[xk] >= cutoff or t_state.at_vertex[yk] >= cutoff:
            continue
        if _window_count(d, target, t_state.by_dim.get(k, ()), params.radii.used_window) >= cutoff:
            continue
        p1 = _edge_between(x, xk)
        p2 = _edge_between(y, yk)
        mid = _edge_between(xk, yk)
        if h.get(p1) != needed or h.get(p2) != needed or h.get(mid) != current:
            continue
        if not all(
            _fresh(f, phi_prime, requested, s_used, t_state, local_edges)
            for f in (p1, p2, mid)
        ):
            continue
        if current in lists.forbidden(p1) or current in lists.forbidden(p2):
            continue  # pendants end with the row edge's old color
        if needed in lists.forbidden(mid):
            continue
        return Gadget(row_edge, four_cycle_through(d, row_edge, k), k, needed)
    return None


def build_config(
    e: Edge,
    h: TotalColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    requested: set[Edge],
    s_used: set[Edge],
    t_state: _UsedState,
    params: ParamSet,
) -> TargetConfig | None:
    """Ladder configuration recoloring prescribed edge e, or None if stuck."""
    d = h.d
    c1 = h.get(e)
    c2 = phi_prime.assignment[e]
    cutoff = ceil_share(params.epsilon, d)
    v2, v3 = e.base, e.base ^ (1 << e.dim)
    v1, e12 = _color_neighbor(h, v2, c2)
    v4, e34 = _color_neighbor(h, v3, c2)

    # after elimination no prescribed edge is requested, so the flanks are
    # plain edges; they are requested (by e itself), hence exempt below
    if e in t_state.edges or e12 in t_state.edges or e34 in t_state.edges:
        return None
    if e12 in phi_prime.assignment or e34 in phi_prime.assignment:
        return None
    if e12 == e34:
        return None

    forbidden_dims = {e12.dim, e.dim, e34.dim}
    for j in range(d):
        if j in forbidden_dims:
            continue
        bit = 1 << j
        v5, v6, v7, v8 = v1 ^ bit, v2 ^ bit, v3 ^ bit, v4 ^ bit
        if t_state.at_vertex[v5] >= cutoff or t_state.at_vertex[v6] >= cutoff:
            continue
        if t_state.at_vertex[v7] >= cutoff or t_state.at_vertex[v8] >= cutoff:
            continue
        if _window_count(d, e, t_state.by_dim.get(j, ()), params.radii.used_window) >= cutoff:
            continue

        rungs = [_edge_between(a, a ^ bit) for a in (v1, v2, v3, v4)]
        c3 = h.get(rungs[0])
        if any(h.get(r) != c3 for r in rungs[1:]):
            continue
        rows = [_edge_between(v5, v6), _edge_between(v6, v7), _edge_between(v7, v8)]
        fresh_needed = rungs + rows
        if not all(
            _fresh(f, phi_prime, requested, s_used, t_state, set()) for f in fresh_needed
        ):
            continue

        # final colors: e12/e34 and the outer rows end at c3, the outer rungs
        # at c2, the inner rungs at c1, the middle row at c2
        if c3 in lists.forbidden(e12) or c3 in lists.forbidden(e34):
            continue
        if c3 in lists.forbidden(rows[0]) or c3 in lists.forbidden(rows[2]):
            continue
        if c2 in lists.forbidden(rows[1]):
            continue
        if c2 in lists.forbidden(rungs[0]) or c2 in lists.forbidden(rungs[3]):
            continue
        if c1 in lists.forbidden(rungs[1]) or c1 in lists.forbidden(rungs[2]):
            continue

        local_vertices = {v1, v2, v3, v4, v5, v6, v7, v8}
        if len(local_vertices) != 8:
            continue
        local_edges = {e, e12, e34, *rungs, *rows}
        gadgets: list[Gadget] = []
        ok = True
        for row_edge, needed in zip(rows, (c2, c1, c2)):
            if h.get(row_edge) == needed:
                continue
            g = _find_gadget(
                row_edge, needed, j, h, phi_prime, lists, requested,
                s_used, t_state, local_edges, local_vertices, e, cutoff, params,
            )
            if g is None:
                ok = False
                break
            gadgets.append(g)
            gx, gy = row_edge.base ^ (1 << g.pendant_dim), (
                row_edge.base ^ (1 << row_edge.dim)
            ) ^ (1 << g.pendant_dim)
            local_vertices.update((gx, gy))
            local_edges.update(
                f for f in cycle_edges(d, g.cycle) if f != row_edge
            )
        if not ok:
            continue

        swaps = [g.cycle for g in gadgets]
        swaps.append(four_cycle_through(d, e12, j))
        swaps.append(four_cycle_through(d, e34, j))
        swaps.append(four_cycle_through(d, e, j))
        return TargetConfig(
            target=e, c1=c1, c2=c2, c3=c3, rung_dim=j,
            gadgets=gadgets, swaps=swaps, claimed=sorted(local_edges),
        )
    return None


def execute_config(h: TotalColoring, cfg: TargetConfig) -> None:
    """Apply the configuration's swaps in place.

    Raises InvalidConfigError when a swap is no longer two-colored, which is
    what re-execution or a corrupted coloring looks like.
    """
    for cyc in cfg.swaps:
        try:
            swap_inplace(h, cyc)
        except NotTwoColoredError as ex:
            raise InvalidConfigError(
                f"swap {tuple(cyc)} for target {tuple(cfg.target)} is not two-colored: {ex}"
            ) from ex
    if h.get(cfg.target) != cfg.c2:
        raise InvalidConfigError(
            f"target {tuple(cfg.target)} ended with color {h.get(cfg.target)}, wanted {cfg.c2}"
        )


def complete_extension(
    h: TotalColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    params: ParamSet,
    s_used: set[Edge] | None = None,
) -> tuple[TotalColoring, list[TargetConfig]]:
    """Recolor every mis-colored prescribed edge to its prescription.

    s_used holds the edges earlier elimination swaps touched; configurations
    avoid them.  Raises CompletionFailedError listing every stuck edge.
    """
    s_used = set(s_used or ())
    requested = requested_edges(h, phi_prime)
    t_state = _UsedState()
    configs: list[TargetConfig] = []
    stuck: list[Edge] = []
    for e in edges_sorted(phi_prime.assignment):
        if h.get(e) == phi_prime.assignment[e]:
            continue
        cfg = build_config(e, h, phi_prime, lists, requested, s_used, t_state, params)
        if cfg is None:
            stuck.append(e)
            continue
        t_state.claim(cfg.claimed)
        configs.append(cfg)
    if stuck:
        raise CompletionFailedError(
            f"{len(stuck)} prescribed edge(s) admit no configuration", stuck=stuck
        )
    out = h.copy()
    for cfg in configs:
        execute_config(out, cfg)
    return out, configs


def check_completion(
    h_before: TotalColoring,
    h_after: TotalColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    configs: list[TargetConfig],
    locality_radius: int = 2,
) -> DensityReport:
    """Postconditions of the completion stage, as named clauses."""
    d = h_before.d
    violations: list[dict] = []
    clauses: list[ClauseResult] = []

    proper = is_proper(h_after)
    clauses.append(ClauseResult("proper", proper, 0, 0 if proper else 1, None))

    bad_ext = [
        e for e, c in phi_prime.assignment.items() if h_after.get(e) != c
    ]
    clauses.append(
        ClauseResult(
            "extends-prescriptions", not bad_ext, 0, len(bad_ext),
            {"edge": tuple(bad_ext[0])} if bad_ext else None,
        )
    )
    for e in bad_ext[:4]:
        violations.append({"clause": "extends-prescriptions", "edge": tuple(e)})

    claimed: set[Edge] = set()
    for cfg in configs:
        claimed.update(cfg.claimed)

    # pre-existing conflicts on untouched edges are the promotion stage's job
    bad_lists = sorted(
        e for e in claimed if h_after.get(e) in lists.forbidden(e)
    )
    clauses.append(
        ClauseResult(
            "avoids-lists", not bad_lists, 0, len(bad_lists),
            {"edge": tuple(bad_lists[0])} if bad_lists else None,
        )
    )
    for e in bad_lists[:4]:
        violations.append({"clause": "avoids-lists", "edge": tuple(e)})
    stray = []
    for e in all_edges(d):
        if h_after.get(e) != h_before.get(e) and e not in claimed:
            stray.append(e)
    clauses.append(
        ClauseResult(
            "untouched-outside-configs", not stray, 0, len(stray),
            {"edge": tuple(stray[0])} if stray else None,
        )
    )
    for e in stray[:4]:
        violations.append({"clause": "untouched-outside-configs", "edge": tuple(e)})

    # every edge a configuration claims must hug its own target
    worst_far = 0
    far_witness = None
    for cfg in configs:
        for f in cfg.claimed:
            dist = edge_distance(d, cfg.target, f)
            if dist > worst_far:
                worst_far = dist
                far_witness = {"target": tuple(cfg.target), "edge": tuple(f), "distance": dist}
    local_ok = worst_far <= locality_radius
    clauses.append(
        ClauseResult(
            "config-locality", local_ok, locality_radius, worst_far,
            None if local_ok else far_witness,
        )
    )
    if not local_ok:
        violations.append({"clause": "config-locality", **far_witness})

    return _assemble(clauses, violations)
