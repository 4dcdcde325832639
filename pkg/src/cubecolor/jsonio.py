"""JSON wire formats: instances, colorings, traces, reports.

Colors are 1-based on the wire and 0-based in memory; dimensions are 0-based
in both. Writers sort every edge list by canonical edge index and emit
compact key-sorted JSON, so identical objects give identical bytes.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

from .cube import Edge, FourCycle, edge_index, num_edges
from .errors import InputFormatError
from .model import (
    Instance,
    ListAssignment,
    ParamSet,
    PartialColoring,
    Radii,
    TotalColoring,
)
from .pipeline import Trace, TraceConfig

SHARE_FIELDS = ("alpha", "beta", "gamma", "kappa", "epsilon", "epsilon0", "tau")
RADII_FIELDS = (
    "density",
    "requested",
    "color_overload",
    "promoted_density",
    "promoted_requested",
    "used_window",
    "swap_overload",
    "swap_matching",
    "config_window",
)


def _plain(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"not JSON serializable: {obj!r}")


def dumps(obj) -> str:
    """Canonical compact serialization; the byte-determinism contract."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_plain)


def _need(obj, key, kind, where):
    if key not in obj:
        raise InputFormatError(f"{where}: missing required field {key!r}")
    val = obj[key]
    if kind is int and isinstance(val, bool) or not isinstance(val, kind):
        raise InputFormatError(f"{where}: field {key!r} must be {kind.__name__}")
    return val


def _reject_unknown(obj, allowed, where):
    extra = set(obj) - set(allowed)
    if extra:
        raise InputFormatError(f"{where}: unknown fields {sorted(extra)}")


def _wire_color(val, d, where):
    if isinstance(val, bool) or not isinstance(val, int):
        raise InputFormatError(f"{where}: color must be an integer")
    if not 1 <= val <= d:
        raise InputFormatError(f"{where}: color {val} outside 1..{d}")
    return val - 1


def _edge_obj(obj, d, where):
    _reject_unknown(obj, ("base", "dim"), where)
    base = _need(obj, "base", int, where)
    dim = _need(obj, "dim", int, where)
    return Edge(base, dim)


def _share_from_wire(val, name):
    if isinstance(val, bool):
        raise InputFormatError(f"params.{name}: must be a number or a fraction string")
    if isinstance(val, (int, float)):
        return val
    if isinstance(val, str):
        try:
            return Fraction(val)
        except (ValueError, ZeroDivisionError) as ex:
            raise InputFormatError(f"params.{name}: bad fraction {val!r}") from ex
    raise InputFormatError(f"params.{name}: must be a number or a fraction string")


def _colored_edge(entry, d, where) -> tuple[Edge, int]:
    if not isinstance(entry, dict):
        raise InputFormatError(f"{where}: must be an object")
    _reject_unknown(entry, ("base", "dim", "color"), where)
    e = Edge(_need(entry, "base", int, where), _need(entry, "dim", int, where))
    return e, _wire_color(_need(entry, "color", int, where), d, where)


def params_from_json(obj) -> ParamSet:
    """Overrides on top of the documented defaults; unknown keys rejected."""
    if not isinstance(obj, dict):
        raise InputFormatError("params: must be an object")
    allowed = SHARE_FIELDS + ("radii", "max_tries", "seed")
    _reject_unknown(obj, allowed, "params")
    kwargs = {}
    for name in SHARE_FIELDS:
        if name in obj:
            kwargs[name] = _share_from_wire(obj[name], name)
    if "radii" in obj:
        robj = obj["radii"]
        if not isinstance(robj, dict):
            raise InputFormatError("params.radii: must be an object")
        _reject_unknown(robj, RADII_FIELDS, "params.radii")
        base = dataclasses.asdict(Radii())
        for name, val in robj.items():
            if isinstance(val, bool) or not isinstance(val, int):
                raise InputFormatError(f"params.radii.{name}: must be an integer")
            base[name] = val
        kwargs["radii"] = Radii(**base)
    for name in ("max_tries", "seed"):
        if name in obj:
            val = obj[name]
            if isinstance(val, bool) or not isinstance(val, int):
                raise InputFormatError(f"params.{name}: must be an integer")
            kwargs[name] = val
    return ParamSet(**kwargs)


def params_to_json(params: ParamSet) -> dict:
    """Only the fields that differ from the defaults."""
    default = ParamSet()
    out = {}
    for name in SHARE_FIELDS:
        val = getattr(params, name)
        if val != getattr(default, name):
            out[name] = str(val) if isinstance(val, Fraction) else val
    if params.radii != default.radii:
        out["radii"] = dataclasses.asdict(params.radii)
    if params.max_tries != default.max_tries:
        out["max_tries"] = params.max_tries
    if params.seed != default.seed:
        out["seed"] = params.seed
    return out


def instance_from_json(obj) -> Instance:
    if not isinstance(obj, dict):
        raise InputFormatError("instance: must be an object")
    _reject_unknown(obj, ("d", "precoloring", "lists", "params"), "instance")
    d = _need(obj, "d", int, "instance")
    if d < 1:
        raise InputFormatError(f"instance: d={d} must be at least 1")
    assignment: dict[Edge, int] = {}
    for i, entry in enumerate(obj.get("precoloring", [])):
        where = f"precoloring[{i}]"
        e, color = _colored_edge(entry, d, where)
        if e in assignment:
            raise InputFormatError(f"{where}: duplicate edge {tuple(e)}")
        assignment[e] = color
    lists: dict[Edge, frozenset] = {}
    for i, entry in enumerate(obj.get("lists", [])):
        where = f"lists[{i}]"
        if not isinstance(entry, dict):
            raise InputFormatError(f"{where}: must be an object")
        _reject_unknown(entry, ("base", "dim", "colors"), where)
        e = _edge_obj({k: entry[k] for k in ("base", "dim") if k in entry}, d, where)
        colors = _need(entry, "colors", list, where)
        if e in lists:
            raise InputFormatError(f"{where}: duplicate edge {tuple(e)}")
        lists[e] = frozenset(_wire_color(c, d, where) for c in colors)
    params = params_from_json(obj.get("params", {}))
    return Instance(d, PartialColoring(d, assignment), ListAssignment(d, lists), params)


def instance_to_json(inst: Instance) -> dict:
    d = inst.d
    pre = [
        {"base": e.base, "dim": e.dim, "color": c + 1}
        for e, c in sorted(inst.precoloring.assignment.items(), key=lambda kv: edge_index(d, kv[0]))
    ]
    lists = [
        {"base": e.base, "dim": e.dim, "colors": [c + 1 for c in sorted(s)]}
        for e, s in sorted(inst.lists.lists.items(), key=lambda kv: edge_index(d, kv[0]))
    ]
    return {"d": d, "precoloring": pre, "lists": lists, "params": params_to_json(inst.params)}


def coloring_to_json(col: TotalColoring) -> dict:
    return {"d": col.d, "colors": [c + 1 for c in col.tolist()]}


def coloring_from_json(obj) -> TotalColoring:
    if not isinstance(obj, dict):
        raise InputFormatError("coloring: must be an object")
    _reject_unknown(obj, ("d", "colors"), "coloring")
    d = _need(obj, "d", int, "coloring")
    if d < 1:
        raise InputFormatError(f"coloring: d={d} must be at least 1")
    colors = _need(obj, "colors", list, "coloring")
    if len(colors) != num_edges(d):
        raise InputFormatError(
            f"coloring: expected {num_edges(d)} colors for d={d}, got {len(colors)}"
        )
    return TotalColoring(d, [_wire_color(c, d, "coloring.colors") for c in colors])


def _cycle_to_json(cyc: FourCycle) -> dict:
    return {"base": cyc.base, "dim_a": cyc.dim_a, "dim_b": cyc.dim_b}


def _cycle_from_json(obj, where) -> FourCycle:
    if not isinstance(obj, dict):
        raise InputFormatError(f"{where}: must be an object")
    _reject_unknown(obj, ("base", "dim_a", "dim_b"), where)
    return FourCycle(
        _need(obj, "base", int, where),
        _need(obj, "dim_a", int, where),
        _need(obj, "dim_b", int, where),
    )


def trace_to_json(trace: Trace) -> dict:
    return {
        "d": trace.d,
        "mode": trace.mode,
        "seed": trace.seed,
        "attempt": trace.attempt,
        "rho": [c + 1 for c in trace.rho],
        "phi_prime": [
            {"base": e.base, "dim": e.dim, "color": c + 1} for e, c in trace.phi_prime
        ],
        "s_cycles": [_cycle_to_json(c) for c in trace.s_cycles],
        "t_configs": [
            {
                "target": {"base": cfg.target.base, "dim": cfg.target.dim},
                "rung_dim": cfg.rung_dim,
                "colors": [c + 1 for c in cfg.colors],
                "swaps": [_cycle_to_json(s) for s in cfg.swaps],
            }
            for cfg in trace.t_configs
        ],
        "fast_cycles": [_cycle_to_json(c) for c in trace.fast_cycles],
        "final_colors": [c + 1 for c in trace.final_colors],
    }


def trace_from_json(obj) -> Trace:
    if not isinstance(obj, dict):
        raise InputFormatError("trace: must be an object")
    fields = (
        "d", "mode", "seed", "attempt", "rho", "phi_prime",
        "s_cycles", "t_configs", "fast_cycles", "final_colors",
    )
    _reject_unknown(obj, fields, "trace")
    d = _need(obj, "d", int, "trace")
    mode = _need(obj, "mode", str, "trace")
    configs = []
    for i, centry in enumerate(obj.get("t_configs", [])):
        where = f"trace.t_configs[{i}]"
        if not isinstance(centry, dict):
            raise InputFormatError(f"{where}: must be an object")
        _reject_unknown(centry, ("target", "rung_dim", "colors", "swaps"), where)
        target = _edge_obj(_need(centry, "target", dict, where), d, where)
        colors = _need(centry, "colors", list, where)
        if len(colors) != 3:
            raise InputFormatError(f"{where}: colors must hold exactly 3 entries")
        configs.append(
            TraceConfig(
                target=target,
                rung_dim=_need(centry, "rung_dim", int, where),
                colors=tuple(_wire_color(c, d, where) for c in colors),
                swaps=tuple(
                    _cycle_from_json(s, f"{where}.swaps[{j}]")
                    for j, s in enumerate(_need(centry, "swaps", list, where))
                ),
            )
        )
    return Trace(
        d=d,
        mode=mode,
        seed=_need(obj, "seed", int, "trace"),
        attempt=_need(obj, "attempt", int, "trace"),
        rho=tuple(_wire_color(c, d, "trace.rho") for c in _need(obj, "rho", list, "trace")),
        phi_prime=tuple(
            _colored_edge(p, d, f"trace.phi_prime[{i}]")
            for i, p in enumerate(_need(obj, "phi_prime", list, "trace"))
        ),
        s_cycles=tuple(
            _cycle_from_json(c, f"trace.s_cycles[{i}]")
            for i, c in enumerate(obj.get("s_cycles", []))
        ),
        t_configs=tuple(configs),
        fast_cycles=tuple(
            _cycle_from_json(c, f"trace.fast_cycles[{i}]")
            for i, c in enumerate(obj.get("fast_cycles", []))
        ),
        final_colors=tuple(
            _wire_color(c, d, "trace.final_colors")
            for c in _need(obj, "final_colors", list, "trace")
        ),
    )
