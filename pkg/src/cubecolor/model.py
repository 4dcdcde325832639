"""Colorings, forbidden-color lists, instances, and the classifiers over them.

Colors are 0-based integers in [0, d) everywhere inside the library; the wire
formats translate to 1-based.  A partial coloring maps edges to colors, a list
assignment maps edges to forbidden color sets, and a total coloring stores one
color per canonical edge index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

import numpy as np

from .cube import (
    Edge,
    FourCycle,
    all_edges,
    check_edge,
    cycle_edges,
    edge_index,
    edge_tables,
    edge_through,
    four_cycles_through,
    num_edges,
)
from .errors import (
    DimensionMismatchError,
    IncompatibleInstanceError,
    NotTwoColoredError,
    OutOfRangeError,
)

VIOLATION_CAP = 16


def floor_share(x, d: int) -> int:
    """Largest count allowed by a bound of the form x*d."""
    return math.floor(x * d)


def ceil_share(x, d: int) -> int:
    """Smallest integer count that meets an 'at least x*d' threshold."""
    return math.ceil(x * d)


@dataclass(frozen=True)
class Radii:
    """Neighborhood radii used by the validators and the staged solver.

    At desk scale most of these exceed d-1, where a neighborhood saturates to
    the full edge set; the checks then collapse to single global counts.
    """

    density: int = 27
    requested: int = 26
    color_overload: int = 25
    promoted_density: int = 12
    promoted_requested: int = 11
    used_window: int = 10
    swap_overload: int = 9
    swap_matching: int = 3
    config_window: int = 2

    def scaled(self, factor: float) -> "Radii":
        if factor <= 0:
            raise OutOfRangeError(f"radius scale {factor} must be positive")
        return Radii(*(math.floor(r * factor) for r in self.as_tuple()))

    def as_tuple(self) -> tuple[int, ...]:
        return (
            self.density,
            self.requested,
            self.color_overload,
            self.promoted_density,
            self.promoted_requested,
            self.used_window,
            self.swap_overload,
            self.swap_matching,
            self.config_window,
        )


#: Published constants the asymptotic guarantees are stated for.  They are kept
#: exact (doubles underflow at 1e-622) and are not sensible at small d, where
#: floor(x*d) = 0 for every fractional bound; desk-scale runs supply their own.
PAPER_FRACTIONS = {
    "alpha": Fraction(1, 10**622),
    "beta": Fraction(2, 10**622),
    "gamma": Fraction(1, 2**11),
    "kappa": Fraction(9, 2**11),
    "epsilon": Fraction(1, 2**3),
    "epsilon0": Fraction(1, 2**8),
    "tau": Fraction(1, 2**7),
}


@dataclass(frozen=True)
class ParamSet:
    alpha: object = PAPER_FRACTIONS["alpha"]
    beta: object = PAPER_FRACTIONS["beta"]
    gamma: object = PAPER_FRACTIONS["gamma"]
    kappa: object = PAPER_FRACTIONS["kappa"]
    epsilon: object = PAPER_FRACTIONS["epsilon"]
    epsilon0: object = PAPER_FRACTIONS["epsilon0"]
    tau: object = PAPER_FRACTIONS["tau"]
    radii: Radii = field(default_factory=Radii)
    max_tries: int = 256
    seed: int = 0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "kappa", "epsilon", "epsilon0", "tau"):
            x = getattr(self, name)
            if not 0 < x < 1:
                raise OutOfRangeError(f"{name}={x} must lie strictly between 0 and 1")
        if self.max_tries < 1:
            raise OutOfRangeError("max_tries must be at least 1")
        if any(r < 0 for r in self.radii.as_tuple()):
            raise OutOfRangeError("radii must be non-negative")

    @property
    def alpha_prime(self):
        return max(self.alpha + self.gamma, self.alpha + self.epsilon0)

    def with_seed(self, seed: int) -> "ParamSet":
        return replace(self, seed=seed)


class TotalColoring:
    """A full edge coloring, stored as one color per canonical edge index."""

    __slots__ = ("d", "colors")

    def __init__(self, d: int, colors):
        arr = np.asarray(colors, dtype=np.int16)
        if arr.shape != (num_edges(d),):
            raise DimensionMismatchError(
                f"expected {num_edges(d)} colors for d={d}, got {arr.shape}"
            )
        self.d = d
        self.colors = arr

    def get(self, e: Edge) -> int:
        return int(self.colors[edge_index(self.d, e)])

    def set(self, e: Edge, color: int) -> None:
        self.colors[edge_index(self.d, e)] = color

    def copy(self) -> "TotalColoring":
        return TotalColoring(self.d, self.colors.copy())

    def tolist(self) -> list[int]:
        return self.colors.tolist()

    def __eq__(self, other):
        return (
            isinstance(other, TotalColoring)
            and self.d == other.d
            and np.array_equal(self.colors, other.colors)
        )

    def __repr__(self):
        return f"TotalColoring(d={self.d})"


@dataclass
class PartialColoring:
    d: int
    assignment: dict[Edge, int] = field(default_factory=dict)

    def copy(self) -> "PartialColoring":
        return PartialColoring(self.d, dict(self.assignment))

    def __contains__(self, e: Edge) -> bool:
        return e in self.assignment

    def get(self, e: Edge):
        return self.assignment.get(e)

    def __len__(self):
        return len(self.assignment)


@dataclass
class ListAssignment:
    d: int
    lists: dict[Edge, frozenset[int]] = field(default_factory=dict)

    def forbidden(self, e: Edge) -> frozenset[int]:
        return self.lists.get(e, frozenset())

    def nonempty(self) -> dict[Edge, frozenset[int]]:
        return {e: s for e, s in self.lists.items() if s}

    def __len__(self):
        return len(self.lists)


@dataclass(frozen=True)
class ColorPermutation:
    d: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.mapping) != list(range(self.d)):
            raise OutOfRangeError(f"mapping {self.mapping} is not a permutation of 0..{self.d - 1}")

    @classmethod
    def identity(cls, d: int) -> "ColorPermutation":
        return cls(d, tuple(range(d)))

    def apply(self, color: int) -> int:
        return self.mapping[color]

    def inverse(self) -> "ColorPermutation":
        inv = [0] * self.d
        for i, c in enumerate(self.mapping):
            inv[c] = i
        return ColorPermutation(self.d, tuple(inv))

    def compose_coloring(self, h: TotalColoring) -> TotalColoring:
        """Relabel every color of h through this permutation."""
        table = np.asarray(self.mapping, dtype=np.int16)
        return TotalColoring(h.d, table[h.colors])

    @property
    def is_identity(self) -> bool:
        return all(i == c for i, c in enumerate(self.mapping))


@dataclass
class Instance:
    d: int
    precoloring: PartialColoring
    lists: ListAssignment
    params: ParamSet = field(default_factory=ParamSet)

    def constrained_edges(self) -> set[Edge]:
        out = set(self.precoloring.assignment)
        out.update(e for e, s in self.lists.lists.items() if s)
        return out


def empty_instance(d: int, params: ParamSet | None = None) -> Instance:
    return Instance(d, PartialColoring(d), ListAssignment(d), params or ParamSet())


def standard_coloring(d: int) -> TotalColoring:
    """The coloring that gives every edge its own dimension as color."""
    dims = edge_tables(d)[3]
    return TotalColoring(d, dims.astype(np.int16))


def is_proper(c: TotalColoring | PartialColoring) -> bool:
    """Whether no two adjacent edges share a color."""
    if isinstance(c, TotalColoring):
        d = c.d
        if c.colors.size == 0:
            return True
        if int(c.colors.min()) < 0 or int(c.colors.max()) >= d:
            raise OutOfRangeError("color outside [0, d)")
        _, u, v, _ = edge_tables(d)
        cols = c.colors.astype(np.int64)
        keys = np.concatenate([u * d + cols, v * d + cols])
        return int(np.bincount(keys, minlength=d << d).max(initial=0)) <= 1
    seen: dict[tuple[int, int], Edge] = {}
    for e, color in c.assignment.items():
        check_edge(c.d, e)
        if not 0 <= color < c.d:
            raise OutOfRangeError(f"color {color} outside [0, {c.d})")
        for w in (e.base, e.base ^ (1 << e.dim)):
            if (w, color) in seen:
                return False
            seen[(w, color)] = e
    return True


def properness_witnesses(c: TotalColoring, cap: int = VIOLATION_CAP) -> list[tuple[Edge, Edge]]:
    """Pairs of adjacent same-colored edges, at most cap of them."""
    seen: dict[tuple[int, int], Edge] = {}
    out: list[tuple[Edge, Edge]] = []
    for e in all_edges(c.d):
        color = c.get(e)
        for w in (e.base, e.base ^ (1 << e.dim)):
            key = (w, color)
            if key in seen:
                out.append((seen[key], e))
                if len(out) >= cap:
                    return out
            else:
                seen[key] = e
    return out


def prescribed_color_map(phi: PartialColoring) -> dict[int, dict[int, Edge]]:
    """vertex -> {color -> prescribed edge} for fast adjacency lookups."""
    out: dict[int, dict[int, Edge]] = {}
    for e, color in phi.assignment.items():
        for w in (e.base, e.base ^ (1 << e.dim)):
            out.setdefault(w, {})[color] = e
    return out


def requested_edges(h: TotalColoring, phi: PartialColoring) -> set[Edge]:
    """Edges whose own color is prescribed on some adjacent edge."""
    out: set[Edge] = set()
    d = h.d
    for f, color in phi.assignment.items():
        for w in (f.base, f.base ^ (1 << f.dim)):
            for dim in range(d):
                g = edge_through(w, dim)
                if g != f and h.get(g) == color:
                    out.add(g)
    return out


def requested_multiplicity(h: TotalColoring, phi: PartialColoring, e: Edge, pmap=None) -> int:
    """How many adjacent prescribed edges carry e's own color (0, 1, or 2)."""
    if pmap is None:
        pmap = prescribed_color_map(phi)
    color = h.get(e)
    count = 0
    for w in (e.base, e.base ^ (1 << e.dim)):
        f = pmap.get(w, {}).get(color)
        if f is not None and f != e:
            count += 1
    return count


def conflict_edges(h: TotalColoring, lists: ListAssignment) -> set[Edge]:
    """Edges currently colored with one of their own forbidden colors."""
    return {e for e, s in lists.lists.items() if s and h.get(e) in s}


def clash_edges(h: TotalColoring, phi: PartialColoring) -> set[Edge]:
    """Prescribed edges that are also requested."""
    pmap = prescribed_color_map(phi)
    return {
        e
        for e in phi.assignment
        if requested_multiplicity(h, phi, e, pmap) >= 1
    }


def unexpected_edges(h: TotalColoring, phi: PartialColoring) -> set[Edge]:
    """Clash edges plus requested edges with two prescribed neighbors of their color."""
    pmap = prescribed_color_map(phi)
    out = set()
    for e in requested_edges(h, phi):
        if e in phi.assignment or requested_multiplicity(h, phi, e, pmap) >= 2:
            out.add(e)
    return out


def cycle_color_pair(h: TotalColoring, cyc: FourCycle) -> tuple[int, int] | None:
    """The (dim_a color, dim_b color) of a 2-colored cycle, or None."""
    ea0, ea1, eb0, eb1 = cycle_edges(h.d, cyc)
    ca = h.get(ea0)
    if h.get(ea1) != ca:
        return None
    cb = h.get(eb0)
    if h.get(eb1) != cb or ca == cb:
        return None
    return ca, cb


def apply_swap(h: TotalColoring, cyc: FourCycle) -> TotalColoring:
    """Exchange the two colors of a 2-colored cycle; every other edge is unchanged."""
    pair = cycle_color_pair(h, cyc)
    if pair is None:
        raise NotTwoColoredError(f"cycle {cyc} is not 2-colored")
    ca, cb = pair
    out = h.copy()
    ea0, ea1, eb0, eb1 = cycle_edges(h.d, cyc)
    out.set(ea0, cb)
    out.set(ea1, cb)
    out.set(eb0, ca)
    out.set(eb1, ca)
    return out


def swap_inplace(h: TotalColoring, cyc: FourCycle) -> None:
    """In-place variant of apply_swap for solver inner loops."""
    pair = cycle_color_pair(h, cyc)
    if pair is None:
        raise NotTwoColoredError(f"cycle {cyc} is not 2-colored")
    ca, cb = pair
    ea0, ea1, eb0, eb1 = cycle_edges(h.d, cyc)
    h.set(ea0, cb)
    h.set(ea1, cb)
    h.set(eb0, ca)
    h.set(eb1, ca)


def is_allowed_cycle(h: TotalColoring, lists: ListAssignment, cyc: FourCycle) -> bool:
    """2-colored, and swapping it lands no edge on a color its list forbids."""
    pair = cycle_color_pair(h, cyc)
    if pair is None:
        return False
    ca, cb = pair
    ea0, ea1, eb0, eb1 = cycle_edges(h.d, cyc)
    return (
        cb not in lists.forbidden(ea0)
        and cb not in lists.forbidden(ea1)
        and ca not in lists.forbidden(eb0)
        and ca not in lists.forbidden(eb1)
    )


def count_allowed_cycles(h: TotalColoring, lists: ListAssignment, e: Edge) -> int:
    return sum(1 for cyc in four_cycles_through(h.d, e) if is_allowed_cycle(h, lists, cyc))


@dataclass
class VerifyReport:
    ok: bool
    proper: bool
    extension_ok: bool
    avoidance_ok: bool
    violations: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "proper": self.proper,
            "extension_ok": self.extension_ok,
            "avoidance_ok": self.avoidance_ok,
            "violations": self.violations,
        }


def validate_instance(inst: Instance) -> None:
    """Structural and compatibility checks; raises on the first problem found."""
    if inst.d < 1:
        raise OutOfRangeError(f"d={inst.d} must be at least 1")
    if inst.precoloring.d != inst.d or inst.lists.d != inst.d:
        raise DimensionMismatchError("precoloring/lists dimension differs from instance d")
    for e, color in inst.precoloring.assignment.items():
        check_edge(inst.d, e)
        if not 0 <= color < inst.d:
            raise OutOfRangeError(f"prescribed color {color} outside [0, {inst.d}) on {e}")
    for e, s in inst.lists.lists.items():
        check_edge(inst.d, e)
        for color in s:
            if not 0 <= color < inst.d:
                raise OutOfRangeError(f"forbidden color {color} outside [0, {inst.d}) on {e}")
    if not is_proper(inst.precoloring):
        raise IncompatibleInstanceError("precoloring is not proper")
    for e, color in inst.precoloring.assignment.items():
        if color in inst.lists.forbidden(e):
            raise IncompatibleInstanceError(f"edge {e} is prescribed color {color} but forbids it")


def verify_solution(inst: Instance, coloring: TotalColoring) -> VerifyReport:
    """Properness, agreement with the precoloring, and avoidance of every list."""
    if coloring.d != inst.d:
        raise DimensionMismatchError("coloring dimension differs from instance d")
    violations: list[dict] = []
    proper = is_proper(coloring)
    if not proper:
        for e1, e2 in properness_witnesses(coloring):
            if len(violations) >= VIOLATION_CAP:
                break
            violations.append(
                {"kind": "improper", "edges": [tuple(e1), tuple(e2)], "color": coloring.get(e1)}
            )
    extension_ok = True
    for e, color in sorted(inst.precoloring.assignment.items()):
        got = coloring.get(e)
        if got != color:
            extension_ok = False
            if len(violations) < VIOLATION_CAP:
                violations.append(
                    {"kind": "extension", "edge": tuple(e), "want": color, "got": got}
                )
    avoidance_ok = True
    for e, s in sorted(inst.lists.lists.items()):
        got = coloring.get(e)
        if got in s:
            avoidance_ok = False
            if len(violations) < VIOLATION_CAP:
                violations.append({"kind": "avoidance", "edge": tuple(e), "got": got})
    return VerifyReport(
        ok=proper and extension_ok and avoidance_ok,
        proper=proper,
        extension_ok=extension_ok,
        avoidance_ok=avoidance_ok,
        violations=violations,
    )


def edges_sorted(edges: Iterable[Edge]) -> list[Edge]:
    """Deterministic processing order: lexicographic on (base, dim)."""
    return sorted(edges)
