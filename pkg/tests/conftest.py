"""Shared naive reference implementations and instance builders.

Everything here is deliberately dumb: BFS over the explicit vertex graph,
double loops over edge pairs, full enumerations.  The fast library code is
tested against these.
"""

from __future__ import annotations

import random
from collections import deque

from cubecolor.cube import Edge, all_edges, edge_endpoints
from cubecolor.model import (
    Instance,
    ListAssignment,
    ParamSet,
    PartialColoring,
    TotalColoring,
)


def desk_params(**overrides) -> ParamSet:
    """Workable fractions for small d; the documented defaults floor to zero here."""
    base = dict(
        alpha=0.49,
        beta=0.49,
        gamma=0.5,
        kappa=0.75,
        epsilon=0.3,
        epsilon0=0.3,
        tau=0.6,
        max_tries=64,
        seed=0,
    )
    base.update(overrides)
    return ParamSet(**base)


def mk_instance(d, pre=None, lists=None, params=None) -> Instance:
    phi = PartialColoring(d, {Edge(*k): v for k, v in (pre or {}).items()})
    la = ListAssignment(d, {Edge(*k): frozenset(v) for k, v in (lists or {}).items()})
    return Instance(d, phi, la, params or desk_params())


def vertex_adjacency(d):
    return {v: [v ^ (1 << i) for i in range(d)] for v in range(1 << d)}


def naive_vertex_distance(d, a, b):
    """BFS over the explicit hypercube graph."""
    adj = vertex_adjacency(d)
    dist = {a: 0}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            return dist[x]
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise AssertionError("disconnected cube?")


def naive_edge_distance(d, e1, e2):
    u1, v1 = edge_endpoints(d, e1)
    u2, v2 = edge_endpoints(d, e2)
    return min(
        naive_vertex_distance(d, a, b) for a in (u1, v1) for b in (u2, v2)
    )


def naive_neighborhood(d, e, t):
    return {f for f in all_edges(d) if naive_edge_distance(d, e, f) <= t}


def edges_adjacent(d, e, f):
    if e == f:
        return False
    se = set(edge_endpoints(d, e))
    sf = set(edge_endpoints(d, f))
    return bool(se & sf)


def naive_requested(d, h: TotalColoring, phi: PartialColoring):
    out = set()
    for e in all_edges(d):
        for f, c in phi.assignment.items():
            if edges_adjacent(d, e, f) and h.get(e) == c:
                out.add(e)
    return out


def naive_conflicts(d, h: TotalColoring, lists: ListAssignment):
    return {e for e in all_edges(d) if h.get(e) in lists.forbidden(e)}


def naive_clash(d, h, phi):
    return set(phi.assignment) & naive_requested(d, h, phi)


def naive_unexpected(d, h, phi):
    out = naive_clash(d, h, phi)
    for e in naive_requested(d, h, phi):
        backers = [
            f
            for f, c in phi.assignment.items()
            if edges_adjacent(d, e, f) and c == h.get(e)
        ]
        if len(backers) >= 2:
            out.add(e)
    return out


def random_proper_partial(d, rng: random.Random, n_edges: int) -> PartialColoring:
    """Greedy seeded sample of a proper partial coloring with n_edges entries."""
    used = {}
    assignment = {}
    edges = list(all_edges(d))
    rng.shuffle(edges)
    for e in edges:
        if len(assignment) >= n_edges:
            break
        u, v = edge_endpoints(d, e)
        free = [c for c in range(d) if c not in used.get(u, set()) and c not in used.get(v, set())]
        if not free:
            continue
        c = rng.choice(free)
        assignment[e] = c
        used.setdefault(u, set()).add(c)
        used.setdefault(v, set()).add(c)
    return PartialColoring(d, assignment)


def random_lists(d, rng: random.Random, n_edges: int, max_size: int) -> ListAssignment:
    edges = list(all_edges(d))
    rng.shuffle(edges)
    lists = {}
    for e in edges[:n_edges]:
        size = rng.randint(1, max(1, max_size))
        lists[e] = frozenset(rng.sample(range(d), min(size, d)))
    return ListAssignment(d, lists)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, name: str, ok: bool, detail: str) -> None:
    """One pass/fail line per acceptance criterion, echoed after the run."""
    line = f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
