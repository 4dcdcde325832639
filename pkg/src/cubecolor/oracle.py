"""Exact feasibility decision by exhaustive backtracking, for small cubes.

The solver answers whether an instance admits any proper d-edge coloring
that extends the precoloring and avoids every list. It is meant as an
independent referee for the swap pipeline at d <= 5; larger cubes work but
need a node budget.
"""

from dataclasses import dataclass

from .cube import all_edges, edge_index
from .errors import OutOfRangeError
from .model import Instance, TotalColoring, validate_instance

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
BUDGET_EXCEEDED = "budget_exceeded"

BRUTE_FORCE_MAX_D = 3


@dataclass
class OracleResult:
    """Verdict plus witness; nodes counts expanded search states."""

    status: str
    coloring: TotalColoring | None = None
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    @property
    def infeasible(self) -> bool:
        return self.status == INFEASIBLE

    def as_dict(self) -> dict:
        out: dict = {"status": self.status, "nodes": self.nodes}
        if self.coloring is not None:
            out["colors"] = self.coloring.tolist()
        return out


def _edge_arrays(inst: Instance):
    """Endpoint pairs, forbidden-color masks, and the seeded assignment."""
    d = inst.d
    edges = all_edges(d)
    ends = [(e.base, e.base ^ (1 << e.dim)) for e in edges]
    forbid = [0] * len(edges)
    for e, s in inst.lists.lists.items():
        mask = 0
        for c in s:
            mask |= 1 << c
        forbid[edge_index(d, e)] = mask
    colors = [-1] * len(edges)
    used = [0] * (1 << d)
    for e, c in inst.precoloring.assignment.items():
        i = edge_index(d, e)
        colors[i] = c
        used[ends[i][0]] |= 1 << c
        used[ends[i][1]] |= 1 << c
    return ends, forbid, colors, used


def exact_solve(inst: Instance, budget: int | None = None) -> OracleResult:
    """Complete backtracking search over all proper extensions.

    Edges are picked most-constrained-first (fewest colors open under the
    per-vertex used masks and the edge's own list), colors tried ascending,
    so the verdict and the witness are deterministic. An Infeasible answer
    means the whole tree was exhausted. With a budget, the search stops
    after that many expanded nodes and reports budget_exceeded instead.
    """
    validate_instance(inst)
    d = inst.d
    full = (1 << d) - 1
    ends, forbid, colors, used = _edge_arrays(inst)
    m = len(ends)
    remaining = sum(1 for c in colors if c < 0)
    nodes = 0
    over = False

    def pick():
        # returns (edge index, available mask); mask 0 signals a dead end
        best = -1
        best_av = 0
        best_n = d + 1
        for i in range(m):
            if colors[i] >= 0:
                continue
            a, b = ends[i]
            av = full & ~(used[a] | used[b] | forbid[i])
            n = av.bit_count()
            if n == 0:
                return i, 0
            if n < best_n:
                best, best_av, best_n = i, av, n
        return best, best_av

    def search(todo: int) -> bool:
        nonlocal nodes, over
        if todo == 0:
            return True
        nodes += 1
        if budget is not None and nodes > budget:
            over = True
            return False
        i, av = pick()
        if av == 0:
            return False
        a, b = ends[i]
        while av:
            bit = av & -av
            av ^= bit
            colors[i] = bit.bit_length() - 1
            used[a] |= bit
            used[b] |= bit
            if search(todo - 1):
                return True
            used[a] ^= bit
            used[b] ^= bit
            colors[i] = -1
            if over:
                return False
        return False

    if search(remaining):
        return OracleResult(FEASIBLE, TotalColoring(d, colors), nodes)
    if over:
        return OracleResult(BUDGET_EXCEEDED, None, nodes)
    return OracleResult(INFEASIBLE, None, nodes)


def brute_force_solve(inst: Instance) -> OracleResult:
    """Second, dumber referee: enumerate proper colorings in fixed edge order.

    No list or precoloring pruning at all; both constraints are checked only
    at the leaves. Tractable for d <= 3 and kept that way on purpose, so a
    bug in exact_solve's propagation cannot hide here too.
    """
    validate_instance(inst)
    if inst.d > BRUTE_FORCE_MAX_D:
        raise OutOfRangeError(f"brute force is capped at d={BRUTE_FORCE_MAX_D}, got {inst.d}")
    d = inst.d
    edges = all_edges(d)
    ends = [(e.base, e.base ^ (1 << e.dim)) for e in edges]
    m = len(edges)
    want = {edge_index(d, e): c for e, c in inst.precoloring.assignment.items()}
    banned = {edge_index(d, e): s for e, s in inst.lists.lists.items() if s}
    colors = [-1] * m
    used = [0] * (1 << d)
    nodes = 0

    def ok_leaf() -> bool:
        if any(colors[i] != c for i, c in want.items()):
            return False
        return all(colors[i] not in s for i, s in banned.items())

    def extend(i: int) -> bool:
        nonlocal nodes
        if i == m:
            return ok_leaf()
        nodes += 1
        a, b = ends[i]
        taken = used[a] | used[b]
        for c in range(d):
            bit = 1 << c
            if taken & bit:
                continue
            colors[i] = c
            used[a] |= bit
            used[b] |= bit
            if extend(i + 1):
                return True
            used[a] ^= bit
            used[b] ^= bit
            colors[i] = -1
        return False

    if extend(0):
        return OracleResult(FEASIBLE, TotalColoring(d, colors), nodes)
    return OracleResult(INFEASIBLE, None, nodes)
