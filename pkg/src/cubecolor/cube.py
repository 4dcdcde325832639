"""Bit-level core of the d-dimensional hypercube.

Vertices are integers in [0, 2^d); two vertices are adjacent when they differ
in exactly one bit.  An edge is referenced by its endpoint with the differing
bit clear, so every edge has exactly one canonical (base, dim) form.  No
explicit adjacency structure is ever built; everything is XOR arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import NonCanonicalEdgeError, OutOfRangeError


class Edge(NamedTuple):
    base: int
    dim: int


class FourCycle(NamedTuple):
    """A 4-cycle spanned by two dimensions; base has both bits clear."""

    base: int
    dim_a: int
    dim_b: int


def check_vertex(d: int, v: int) -> None:
    if not 0 <= v < (1 << d):
        raise OutOfRangeError(f"vertex {v} out of range for d={d}")


def check_dim(d: int, dim: int) -> None:
    if not 0 <= dim < d:
        raise OutOfRangeError(f"dimension {dim} out of range for d={d}")


def check_edge(d: int, e: Edge) -> None:
    """Validate an edge reference, raising on range or canonical-form violations."""
    check_dim(d, e.dim)
    check_vertex(d, e.base)
    if e.base & (1 << e.dim):
        raise NonCanonicalEdgeError(f"edge base {e.base} has bit {e.dim} set")


def edge_endpoints(d: int, e: Edge) -> tuple[int, int]:
    """Return the two endpoints of e, base first."""
    check_edge(d, e)
    return e.base, e.base ^ (1 << e.dim)


def edge_through(v: int, dim: int) -> Edge:
    """The unique edge in dimension dim incident to vertex v, in canonical form."""
    return Edge(v & ~(1 << dim), dim)


def num_edges(d: int) -> int:
    return d << (d - 1) if d > 0 else 0


def edge_index(d: int, e: Edge) -> int:
    """Canonical position of e: rank of base among dim-clear vertices, times d, plus dim."""
    low = e.base & ((1 << e.dim) - 1)
    rank = low | ((e.base >> (e.dim + 1)) << e.dim)
    return rank * d + e.dim


def edge_from_index(d: int, idx: int) -> Edge:
    if not 0 <= idx < num_edges(d):
        raise OutOfRangeError(f"edge index {idx} out of range for d={d}")
    rank, dim = divmod(idx, d)
    base = (rank & ((1 << dim) - 1)) | ((rank >> dim) << (dim + 1))
    return Edge(base, dim)


@lru_cache(maxsize=None)
def edge_tables(d: int) -> tuple[tuple[Edge, ...], np.ndarray, np.ndarray, np.ndarray]:
    """Per-dimension cache: edges in index order plus endpoint/dimension arrays."""
    edges = tuple(edge_from_index(d, i) for i in range(num_edges(d)))
    u = np.fromiter((e.base for e in edges), dtype=np.int64, count=len(edges))
    v = np.fromiter((e.base ^ (1 << e.dim) for e in edges), dtype=np.int64, count=len(edges))
    dims = np.fromiter((e.dim for e in edges), dtype=np.int64, count=len(edges))
    return edges, u, v, dims


def all_edges(d: int) -> tuple[Edge, ...]:
    return edge_tables(d)[0]


def dimensional_matching(d: int, i: int) -> list[Edge]:
    """All edges of dimension i: a perfect matching of 2^(d-1) edges."""
    check_dim(d, i)
    mask = 1 << i
    low = mask - 1
    # bases are the dim-clear vertices, enumerated via their (d-1)-bit rank
    return [Edge((r & low) | ((r >> i) << (i + 1)), i) for r in range(1 << (d - 1))]


def hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


def edge_distance(d: int, e1: Edge, e2: Edge) -> int:
    """Minimum hamming distance between an endpoint of e1 and one of e2."""
    check_edge(d, e1)
    check_edge(d, e2)
    u1, v1 = e1.base, e1.base ^ (1 << e1.dim)
    u2, v2 = e2.base, e2.base ^ (1 << e2.dim)
    return min(
        hamming(u1, u2),
        hamming(u1, v2),
        hamming(v1, u2),
        hamming(v1, v2),
    )


def t_neighborhood(d: int, e: Edge, t: int) -> list[Edge]:
    """Every edge at distance at most t from e (e itself included)."""
    check_edge(d, e)
    if t < 0:
        raise OutOfRangeError(f"radius {t} is negative")
    if t >= d - 1:
        return list(all_edges(d))
    u, v = e.base, e.base ^ (1 << e.dim)
    out = []
    for f in all_edges(d):
        a, b = f.base, f.base ^ (1 << f.dim)
        if (
            min(hamming(a, u), hamming(a, v)) <= t
            or min(hamming(b, u), hamming(b, v)) <= t
        ):
            out.append(f)
    return out


def four_cycle_through(d: int, e: Edge, other_dim: int) -> FourCycle:
    """The unique 4-cycle containing e whose second dimension is other_dim."""
    check_edge(d, e)
    check_dim(d, other_dim)
    if other_dim == e.dim:
        raise OutOfRangeError("a 4-cycle needs two distinct dimensions")
    base = e.base & ~(1 << other_dim)
    lo, hi = sorted((e.dim, other_dim))
    return FourCycle(base, lo, hi)


def four_cycles_through(d: int, e: Edge) -> list[FourCycle]:
    """All d-1 4-cycles containing e, by ascending second dimension."""
    return [four_cycle_through(d, e, j) for j in range(d) if j != e.dim]


def check_cycle(d: int, cyc: FourCycle) -> None:
    check_dim(d, cyc.dim_a)
    check_dim(d, cyc.dim_b)
    check_vertex(d, cyc.base)
    if cyc.dim_a == cyc.dim_b:
        raise OutOfRangeError("degenerate 4-cycle: equal dimensions")
    if cyc.base & ((1 << cyc.dim_a) | (1 << cyc.dim_b)):
        raise NonCanonicalEdgeError(
            f"cycle base {cyc.base} has bit {cyc.dim_a} or {cyc.dim_b} set"
        )


def cycle_edges(d: int, cyc: FourCycle) -> tuple[Edge, Edge, Edge, Edge]:
    """The cycle's edges: the dim_a pair first, then the dim_b pair."""
    check_cycle(d, cyc)
    a, b = cyc.dim_a, cyc.dim_b
    return (
        Edge(cyc.base, a),
        Edge(cyc.base ^ (1 << b), a),
        Edge(cyc.base, b),
        Edge(cyc.base ^ (1 << a), b),
    )


def cycle_vertices(d: int, cyc: FourCycle) -> tuple[int, int, int, int]:
    check_cycle(d, cyc)
    base = cyc.base
    return base, base ^ (1 << cyc.dim_a), base ^ (1 << cyc.dim_b), base ^ (1 << cyc.dim_a) ^ (1 << cyc.dim_b)
