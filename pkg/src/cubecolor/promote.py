"""Conflict promotion: prescribe a safe replacement color on every conflict edge.

Conflicts are handled in lexicographic edge order.  Each one receives the
smallest color that survives four vetoes: the edge's own list, colors already
prescribed at an endpoint, colors whose induced requested edge would touch a
requested-overloaded vertex, and colors already heavy among prescriptions in
the surrounding window.
"""

from __future__ import annotations

from collections import Counter

from .cube import Edge, edge_distance, edge_through
from .density import ClauseResult, DensityReport, _assemble, _grouped_clause
from .errors import PromotionFailedError
from .model import (
    ListAssignment,
    ParamSet,
    PartialColoring,
    TotalColoring,
    ceil_share,
    conflict_edges,
    edges_sorted,
    floor_share,
    requested_edges,
)


class RequestedTracker:
    """Incremental requested-edge bookkeeping as prescriptions accumulate."""

    __slots__ = ("h", "edges", "per_vertex")

    def __init__(self, h: TotalColoring, phi: PartialColoring):
        self.h = h
        self.edges: set[Edge] = requested_edges(h, phi)
        self.per_vertex: Counter = Counter()
        for f in self.edges:
            self.per_vertex[f.base] += 1
            self.per_vertex[f.base ^ (1 << f.dim)] += 1

    def overloaded(self, v: int, cutoff: int) -> bool:
        return self.per_vertex[v] >= cutoff

    def note_prescription(self, e: Edge, color: int) -> None:
        """Prescribing color on e makes the color-carrying edge at each endpoint requested."""
        d = self.h.d
        for u in (e.base, e.base ^ (1 << e.dim)):
            for dim in range(d):
                f = edge_through(u, dim)
                if f == e or self.h.get(f) != color:
                    continue
                if f not in self.edges:
                    self.edges.add(f)
                    self.per_vertex[f.base] += 1
                    self.per_vertex[f.base ^ (1 << f.dim)] += 1
                break  # properness: one such edge per endpoint


def _window_color_count(phi_prime: PartialColoring, e: Edge, color: int, radius: int) -> int:
    d = phi_prime.d
    if radius >= d - 1:
        return sum(1 for c in phi_prime.assignment.values() if c == color)
    return sum(
        1
        for f, c in phi_prime.assignment.items()
        if c == color and edge_distance(d, e, f) <= radius
    )


def allowed_colors(
    h_prime: TotalColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    e: Edge,
    tracker: RequestedTracker,
    params: ParamSet,
) -> list[int]:
    """Colors e may be promoted to, ascending.  Empty means the edge is stuck."""
    d = h_prime.d
    cutoff = ceil_share(params.epsilon0, d)
    u, v = e.base, e.base ^ (1 << e.dim)

    banned: set[int] = set(lists.forbidden(e))
    for f, c in phi_prime.assignment.items():
        if f.base == u or f.base == v or f.base ^ (1 << f.dim) in (u, v):
            banned.add(c)
    for w in (u, v):
        for dim in range(d):
            if tracker.overloaded(w ^ (1 << dim), cutoff):
                banned.add(h_prime.get(edge_through(w, dim)))

    out = []
    for c in range(d):
        if c in banned:
            continue
        if _window_color_count(phi_prime, e, c, params.radii.color_overload) >= cutoff:
            continue
        out.append(c)
    return out


def promote_conflicts(
    h_prime: TotalColoring,
    phi: PartialColoring,
    lists: ListAssignment,
    params: ParamSet,
) -> tuple[PartialColoring, list[tuple[Edge, int]]]:
    """Extend phi with one prescription per unprescribed conflict edge.

    Raises PromotionFailedError when some conflict edge has no allowed color.
    """
    phi_prime = PartialColoring(h_prime.d, dict(phi.assignment))
    tracker = RequestedTracker(h_prime, phi)
    promotions: list[tuple[Edge, int]] = []
    for e in edges_sorted(conflict_edges(h_prime, lists)):
        if e in phi_prime.assignment:
            continue  # a prescription already overrides the conflicting color
        colors = allowed_colors(h_prime, phi_prime, lists, e, tracker, params)
        if not colors:
            raise PromotionFailedError(f"no allowed color for conflict edge {tuple(e)}", edge=e)
        c = colors[0]
        phi_prime.assignment[e] = c
        tracker.note_prescription(e, c)
        promotions.append((e, c))
    return phi_prime, promotions


def check_promotion(
    h_prime: TotalColoring,
    phi: PartialColoring,
    phi_prime: PartialColoring,
    lists: ListAssignment,
    params: ParamSet,
) -> DensityReport:
    """Postconditions of the promotion stage, as named clauses."""
    d = h_prime.d
    violations: list[dict] = []
    clauses: list[ClauseResult] = []

    bad_extend = [e for e, c in phi.assignment.items() if phi_prime.assignment.get(e) != c]
    clauses.append(
        ClauseResult(
            "extends",
            not bad_extend,
            0,
            len(bad_extend),
            {"edge": tuple(bad_extend[0])} if bad_extend else None,
        )
    )
    bad_lists = [e for e, c in phi_prime.assignment.items() if c in lists.forbidden(e)]
    clauses.append(
        ClauseResult(
            "respects-lists",
            not bad_lists,
            0,
            len(bad_lists),
            {"edge": tuple(bad_lists[0])} if bad_lists else None,
        )
    )

    dense_bound = floor_share(params.alpha_prime, d)
    per_vertex: Counter = Counter()
    for e in phi_prime.assignment:
        per_vertex[e.base] += 1
        per_vertex[e.base ^ (1 << e.dim)] += 1
    vc = ClauseResult("prescribed-vertex", True, dense_bound, 0)
    for w, n in sorted(per_vertex.items()):
        if n > vc.worst_count:
            vc = ClauseResult("prescribed-vertex", n <= dense_bound, dense_bound, n, {"vertex": w})
        if n > dense_bound:
            violations.append(
                {"clause": "prescribed-vertex", "vertex": w, "count": n, "bound": dense_bound}
            )
    clauses.append(vc)

    colored = list(phi_prime.assignment.items())
    clauses.append(
        _grouped_clause(
            d, "prescribed-color", colored, "color", dense_bound,
            params.radii.promoted_density, violations,
        )
    )
    clauses.append(
        _grouped_clause(
            d, "prescribed-matching", [(e, e.dim) for e in phi_prime.assignment], "dim",
            dense_bound, params.radii.promoted_density, violations,
        )
    )

    req_bound = floor_share(params.kappa, d)
    requested = requested_edges(h_prime, phi_prime)
    clauses.append(
        _grouped_clause(
            d, "requested-matching", [(f, f.dim) for f in requested], "dim",
            req_bound, params.radii.promoted_requested, violations,
        )
    )
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

    return _assemble(clauses, violations)
