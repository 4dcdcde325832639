"""Sparsity validators for precolorings and forbidden-color lists.

Each clause compares a count against floor(x*d).  Clauses quantified over
neighborhoods run once per center edge; when the radius reaches d-1 every
neighborhood equals the whole edge set, so a single global count decides.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .cube import Edge, all_edges, edge_distance
from .model import ListAssignment, PartialColoring, VIOLATION_CAP, floor_share

_POPCOUNT: np.ndarray | None = None
_ENDPOINTS: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _popcount_table() -> np.ndarray:
    global _POPCOUNT
    if _POPCOUNT is None:
        values = np.arange(1 << 16, dtype=np.uint32)
        table = np.zeros(1 << 16, dtype=np.uint8)
        for shift in range(16):
            table += ((values >> shift) & 1).astype(np.uint8)
        _POPCOUNT = table
    return _POPCOUNT


def _endpoint_arrays(d: int) -> tuple[np.ndarray, np.ndarray]:
    if d not in _ENDPOINTS:
        base = np.fromiter((e.base for e in all_edges(d)), dtype=np.int64)
        other = np.fromiter((e.base ^ (1 << e.dim) for e in all_edges(d)), dtype=np.int64)
        _ENDPOINTS[d] = (base, other)
    return _ENDPOINTS[d]


@dataclass
class ClauseResult:
    name: str
    passed: bool
    bound: int
    worst_count: int
    witness: dict | None = None


@dataclass
class DensityReport:
    passed: bool
    clauses: list[ClauseResult]
    violations: list[dict] = field(default_factory=list)

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "clauses": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "bound": c.bound,
                    "worst_count": c.worst_count,
                    "witness": c.witness,
                }
                for c in self.clauses
            ],
            "violations": self.violations,
        }


def _assemble(clauses: list[ClauseResult], violations: list[dict]) -> DensityReport:
    return DensityReport(
        passed=all(c.passed for c in clauses),
        clauses=clauses,
        violations=violations[:VIOLATION_CAP],
    )


def _grouped_clause(
    d: int,
    name: str,
    items: list[tuple[Edge, int]],
    key_name: str,
    bound: int,
    radius: int,
    violations: list[dict],
) -> ClauseResult:
    """Bound the per-key count of items inside every radius-neighborhood.

    items are (edge, key) pairs; key is a color or a dimension.  Saturated
    radii need one global pass; otherwise every edge centers its own window.
    """
    worst = ClauseResult(name, True, bound, 0)
    if radius >= d - 1 or not items:
        counts = Counter(k for _, k in items)
        for k, n in sorted(counts.items()):
            if n > worst.worst_count:
                worst = ClauseResult(name, n <= bound, bound, n, {key_name: k, "center": None})
            if n > bound:
                violations.append({"clause": name, key_name: k, "center": None, "count": n, "bound": bound})
        return worst
    if d > 16:
        # beyond the popcount table; plain scan, centers outer, sorted keys inner
        for center in all_edges(d):
            counts = Counter()
            for f, k in items:
                if edge_distance(d, center, f) <= radius:
                    counts[k] += 1
            for k, n in sorted(counts.items()):
                if n > worst.worst_count:
                    worst = ClauseResult(
                        name, n <= bound, bound, n, {key_name: k, "center": tuple(center)}
                    )
                if n > bound:
                    violations.append(
                        {"clause": name, key_name: k, "center": tuple(center), "count": n, "bound": bound}
                    )
        return worst
    # one vectorized ball test per item; rows follow the sorted-key order the
    # scan above would visit, so witnesses and violation rows come out identical
    pop = _popcount_table()
    base, other = _endpoint_arrays(d)
    keys = sorted({k for _, k in items})
    row_of = {k: i for i, k in enumerate(keys)}
    per_center = np.zeros((len(keys), len(base)), dtype=np.int32)
    for f, k in items:
        a = f.base
        b = f.base ^ (1 << f.dim)
        dist = np.minimum(
            np.minimum(pop[base ^ a], pop[other ^ a]),
            np.minimum(pop[base ^ b], pop[other ^ b]),
        )
        per_center[row_of[k]] += dist <= radius
    top = int(per_center.max())
    if top > 0:
        col = int(np.nonzero((per_center == top).any(axis=0))[0][0])
        row = int(np.nonzero(per_center[:, col] == top)[0][0])
        center = all_edges(d)[col]
        worst = ClauseResult(
            name, top <= bound, bound, top, {key_name: keys[row], "center": tuple(center)}
        )
    if top > bound:
        edges = all_edges(d)
        for col, row in np.argwhere((per_center > bound).T)[:VIOLATION_CAP]:
            violations.append(
                {
                    "clause": name,
                    key_name: keys[row],
                    "center": tuple(edges[col]),
                    "count": int(per_center[row, col]),
                    "bound": bound,
                }
            )
    return worst


def check_alpha_dense(phi: PartialColoring, alpha, radius: int) -> DensityReport:
    """Three clauses: per-vertex load, per-window color load, per-window matching load."""
    d = phi.d
    bound = floor_share(alpha, d)
    violations: list[dict] = []

    per_vertex: Counter = Counter()
    for e in phi.assignment:
        per_vertex[e.base] += 1
        per_vertex[e.base ^ (1 << e.dim)] += 1
    vertex_clause = ClauseResult("vertex", True, bound, 0)
    for v, n in sorted(per_vertex.items()):
        if n > vertex_clause.worst_count:
            vertex_clause = ClauseResult("vertex", n <= bound, bound, n, {"vertex": v})
        if n > bound:
            violations.append({"clause": "vertex", "vertex": v, "count": n, "bound": bound})

    colored = [(e, c) for e, c in phi.assignment.items()]
    color_clause = _grouped_clause(d, "color", colored, "color", bound, radius, violations)
    dim_items = [(e, e.dim) for e in phi.assignment]
    matching_clause = _grouped_clause(d, "matching", dim_items, "dim", bound, radius, violations)
    return _assemble([vertex_clause, color_clause, matching_clause], violations)


def check_beta_sparse(lists: ListAssignment, beta, radius: int) -> DensityReport:
    """Three clauses: list size, per-vertex color usage, per-window matching-color usage."""
    d = lists.d
    bound = floor_share(beta, d)
    violations: list[dict] = []
    nonempty = lists.nonempty()

    size_clause = ClauseResult("size", True, bound, 0)
    for e, s in sorted(nonempty.items()):
        n = len(s)
        if n > size_clause.worst_count:
            size_clause = ClauseResult("size", n <= bound, bound, n, {"edge": tuple(e)})
        if n > bound:
            violations.append({"clause": "size", "edge": tuple(e), "count": n, "bound": bound})

    per_vertex_color: Counter = Counter()
    for e, s in nonempty.items():
        for w in (e.base, e.base ^ (1 << e.dim)):
            for color in s:
                per_vertex_color[(w, color)] += 1
    vc_clause = ClauseResult("vertex-color", True, bound, 0)
    for (v, color), n in sorted(per_vertex_color.items()):
        if n > vc_clause.worst_count:
            vc_clause = ClauseResult(
                "vertex-color", n <= bound, bound, n, {"vertex": v, "color": color}
            )
        if n > bound:
            violations.append(
                {"clause": "vertex-color", "vertex": v, "color": color, "count": n, "bound": bound}
            )

    # (matching, color) pairs keyed together: a list mentioning k colors counts once per color
    mc_items = [(e, (e.dim, color)) for e, s in nonempty.items() for color in s]
    mc_clause = _grouped_clause(d, "matching-color", mc_items, "dim_color", bound, radius, violations)
    return _assemble([size_clause, vc_clause, mc_clause], violations)
