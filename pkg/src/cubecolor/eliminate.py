"""Unexpected-edge elimination by disjoint four-cycle swaps.

Every unexpected edge of (h', phi') gets its own swap cycle, chosen against
the unswapped coloring; the whole set is validated first and executed after.
The selection rules keep the cycles edge-disjoint and guarantee the swapped
coloring has no unexpected edge at all: the three companion edges of a cycle
are never prescribed or requested, so neither swap color sits prescribed at
the vertices the swap touches.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .cube import Edge, FourCycle, cycle_edges, edge_distance, four_cycles_through
from .density import ClauseResult, DensityReport, _assemble, _grouped_clause
from .errors import EliminationFailedError
from .model import (
    ListAssignment,
    ParamSet,
    PartialColoring,
    TotalColoring,
    ceil_share,
    edges_sorted,
    floor_share,
    is_allowed_cycle,
    requested_edges,
    swap_inplace,
    unexpected_edges,
)


@dataclass
class SwapPlan:
    """Selected cycles in execution order, paired with the edges they fix."""

    cycles: list[FourCycle] = field(default_factory=list)
    centers: list[Edge] = field(default_factory=list)

    def used_edges(self, d: int) -> set[Edge]:
        out: set[Edge] = set()
        for cyc in self.cycles:
            out.update(cycle_edges(d, cyc))
        return out


def _matching_window_used(d, center: Edge, dim: int, used_by_dim, radius: int) -> int:
    edges = used_by_dim.get(dim, ())
    if radius >= d - 1:
        return len(edges)
    return sum(1 for f in edges if edge_distance(d, center, f) <= radius)


def select_cycle_for(
    e: Edge,
    h_prime: TotalColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    requested: set[Edge],
    used_edges: set[Edge],
    used_counts: Counter,
    used_by_dim: dict[int, list[Edge]],
    params: ParamSet,
) -> FourCycle | None:
    """Smallest-dimension admissible swap cycle through e, or None."""
    d = h_prime.d
    cutoff = ceil_share(params.epsilon, d)
    u = e.base
    v = e.base ^ (1 << e.dim)
    for cyc in four_cycles_through(d, e):
        j = cyc.dim_b if cyc.dim_b != e.dim else cyc.dim_a
        if used_counts[u ^ (1 << j)] >= cutoff or used_counts[v ^ (1 << j)] >= cutoff:
            continue
        if _matching_window_used(d, e, j, used_by_dim, params.radii.swap_overload) >= cutoff:
            continue
        companions = [f for f in cycle_edges(d, cyc) if f != e]
        if any(
            f in phi_prime.assignment or f in requested or f in used_edges
            for f in companions
        ):
            continue
        if not is_allowed_cycle(h_prime, lists, cyc):
            continue
        return cyc
    return None


def eliminate_unexpected(
    h_prime: TotalColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    params: ParamSet,
) -> tuple[TotalColoring, SwapPlan]:
    """Swap away every unexpected edge of (h', phi').

    Raises EliminationFailedError when some unexpected edge admits no cycle.
    """
    d = h_prime.d
    requested = requested_edges(h_prime, phi_prime)
    plan = SwapPlan()
    used_edges: set[Edge] = set()
    used_counts: Counter = Counter()
    used_by_dim: dict[int, list[Edge]] = defaultdict(list)

    for e in edges_sorted(unexpected_edges(h_prime, phi_prime)):
        cyc = select_cycle_for(
            e, h_prime, phi_prime, lists, requested,
            used_edges, used_counts, used_by_dim, params,
        )
        if cyc is None:
            raise EliminationFailedError(
                f"no admissible swap cycle for unexpected edge {tuple(e)}", edge=e
            )
        plan.cycles.append(cyc)
        plan.centers.append(e)
        for f in cycle_edges(d, cyc):
            used_edges.add(f)
            used_counts[f.base] += 1
            used_counts[f.base ^ (1 << f.dim)] += 1
            used_by_dim[f.dim].append(f)

    h_dd = h_prime.copy()
    for cyc in plan.cycles:
        swap_inplace(h_dd, cyc)
    return h_dd, plan


def check_elimination(
    h_prime: TotalColoring,
    h_dd: TotalColoring,
    phi_prime: PartialColoring,
    plan: SwapPlan,
    params: ParamSet,
) -> DensityReport:
    """Postconditions of the elimination stage, as named clauses."""
    d = h_prime.d
    violations: list[dict] = []
    clauses: list[ClauseResult] = []

    leftover = edges_sorted(unexpected_edges(h_dd, phi_prime))
    clauses.append(
        ClauseResult(
            "unexpected-empty",
            not leftover,
            0,
            len(leftover),
            {"edge": tuple(leftover[0])} if leftover else None,
        )
    )

    used = plan.used_edges(d)
    used_bound = floor_share(2 * params.kappa + params.epsilon, d) + 1
    per_vertex: Counter = Counter()
    for f in used:
        per_vertex[f.base] += 1
        per_vertex[f.base ^ (1 << f.dim)] += 1
    uv = ClauseResult("used-vertex", True, used_bound, 0)
    for w, n in sorted(per_vertex.items()):
        if n > uv.worst_count:
            uv = ClauseResult("used-vertex", n <= used_bound, used_bound, n, {"vertex": w})
        if n > used_bound:
            violations.append(
                {"clause": "used-vertex", "vertex": w, "count": n, "bound": used_bound}
            )
    clauses.append(uv)
    clauses.append(
        _grouped_clause(
            d, "used-matching", [(f, f.dim) for f in used], "dim",
            used_bound, params.radii.swap_matching, violations,
        )
    )

    mu = 3 * params.kappa + params.epsilon + 1
    req_bound = floor_share(mu, d)
    requested = requested_edges(h_dd, phi_prime)
    req_vertex: Counter = Counter()
    for f in requested:
        req_vertex[f.base] += 1
        req_vertex[f.base ^ (1 << f.dim)] += 1
    rv = ClauseResult("requested-vertex", True, req_bound, 0)
    for w, n in sorted(req_vertex.items()):
        if n > rv.worst_count:
            rv = ClauseResult("requested-vertex", n <= req_bound, req_bound, n, {"vertex": w})
        if n > req_bound:
            violations.append(
                {"clause": "requested-vertex", "vertex": w, "count": n, "bound": req_bound}
            )
    clauses.append(rv)
    clauses.append(
        _grouped_clause(
            d, "requested-matching", [(f, f.dim) for f in requested], "dim",
            req_bound, params.radii.swap_matching, violations,
        )
    )
    return _assemble(clauses, violations)
