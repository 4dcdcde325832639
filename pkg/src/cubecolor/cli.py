"""Command line front end: solving, verification, generation, oracle runs, benches.

All stdout is single-line canonical JSON, byte-identical for identical inputs;
progress notes go to stderr and --quiet silences them. Exit codes: 0 solved or
verified, 1 verification failed, 2 solver failure or exhausted oracle budget,
3 proven infeasible, 4 malformed input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from .errors import CubeColorError, InputFormatError
from .generators import (
    gen_combined,
    gen_random_instance,
    gen_unavoidable_lists,
    gen_unextendable_precoloring,
)
from .jsonio import (
    coloring_from_json,
    coloring_to_json,
    dumps,
    instance_from_json,
    instance_to_json,
    trace_to_json,
)
from .model import Instance, verify_solution
from .oracle import BUDGET_EXCEEDED, exact_solve
from .pipeline import Solution, solve

ORACLE_HINT_MAX_D = 5


class _Parser(argparse.ArgumentParser):
    """Usage problems are input problems: machine-readable object, exit 4."""

    def error(self, message):
        print(dumps({"error": {"type": "usage", "message": message}}))
        raise SystemExit(4)


def _emit(obj) -> None:
    print(dumps(obj))


def _note(args, msg: str) -> None:
    if not getattr(args, "quiet", False):
        print(msg, file=sys.stderr)


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as ex:
        raise InputFormatError(f"cannot read {path}: {ex}") from ex
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise InputFormatError(f"{path} is not valid JSON: {ex}") from ex


def _apply_flags(inst: Instance, args) -> Instance:
    params = inst.params
    if args.seed is not None:
        params = params.with_seed(args.seed)
    if args.radius_scale is not None:
        params = dataclasses.replace(params, radii=params.radii.scaled(args.radius_scale))
    if params is not inst.params:
        inst = Instance(inst.d, inst.precoloring, inst.lists, params)
    return inst


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad fraction {text!r}")


def _run_oracle(inst: Instance, budget, args) -> int:
    res = exact_solve(inst, budget=budget)
    if res.feasible:
        _note(args, f"feasible after {res.nodes} nodes")
        _emit(coloring_to_json(res.coloring))
        return 0
    _emit(res.as_dict())
    return 2 if res.status == BUDGET_EXCEEDED else 3


def _run_solve_obj(inst: Instance, args):
    """Shared by solve and bench: returns (exit_code, stdout_obj, solution_or_none)."""
    if args.mode == "oracle":
        res = exact_solve(inst, budget=getattr(args, "budget", None))
        if res.feasible:
            return 0, coloring_to_json(res.coloring), None
        code = 2 if res.status == BUDGET_EXCEEDED else 3
        return code, res.as_dict(), None
    out = solve(inst, mode=args.mode)
    if isinstance(out, Solution):
        return 0, coloring_to_json(out.coloring), out
    report = out.as_dict()
    if inst.d <= ORACLE_HINT_MAX_D:
        report["suggestion"] = (
            f"d={inst.d} is small; the oracle subcommand gives a definitive verdict"
        )
    return 2, report, None


def _cmd_solve(args) -> int:
    if args.mode == "oracle" and args.trace:
        raise InputFormatError("--trace needs a pipeline mode; the oracle records no trace")
    if args.mode != "oracle" and args.budget is not None:
        raise InputFormatError("--budget only applies to --mode oracle")
    inst = _apply_flags(instance_from_json(_load_json(args.instance)), args)
    t0 = time.perf_counter()
    code, obj, sol = _run_solve_obj(inst, args)
    _note(args, f"exit {code} in {time.perf_counter() - t0:.3f}s")
    if args.trace and sol is not None:
        Path(args.trace).write_text(dumps(trace_to_json(sol.trace)) + "\n")
    _emit(obj)
    return code


def _cmd_verify(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    col = coloring_from_json(_load_json(args.coloring))
    rep = verify_solution(inst, col)
    _emit(rep.as_dict())
    return 0 if rep.ok else 1


def _cmd_generate(args) -> int:
    if args.kind == "random":
        inst = gen_random_instance(args.d, args.pre_cap, args.list_cap, seed=args.seed)
    elif args.kind == "prop4i":
        inst = gen_unextendable_precoloring(args.d)
    elif args.kind == "prop4ii":
        inst = gen_unavoidable_lists(args.d)
    else:
        inst = gen_combined(args.d, args.alpha, args.beta)
    _emit(instance_to_json(inst))
    return 0


def _cmd_oracle(args) -> int:
    inst = instance_from_json(_load_json(args.instance))
    return _run_oracle(inst, args.budget, args)


def _bench_one(index: int, path: str, base_dir: Path, out_dir: Path, args):
    try:
        resolved = Path(path)
        if not resolved.is_absolute():
            resolved = base_dir / resolved
        inst = _apply_flags(instance_from_json(_load_json(str(resolved))), args)
        t0 = time.perf_counter()
        code, obj, _sol = _run_solve_obj(inst, args)
        elapsed = time.perf_counter() - t0
    except CubeColorError as ex:
        code, obj, elapsed = 4, {"error": {"type": type(ex).__name__, "message": str(ex)}}, 0.0
    name = f"{index:03d}_{Path(path).stem}.out.json"
    (out_dir / name).write_text(dumps(obj) + "\n")
    status = {0: "solved", 2: "failed", 3: "infeasible", 4: "input-error"}[code]
    return {"index": index, "instance": path, "exit": code, "status": status, "output": name}, elapsed


def _cmd_bench(args) -> int:
    cfg_path = Path(args.config)
    cfg = _load_json(args.config)
    if not isinstance(cfg, dict):
        raise InputFormatError("bench config: must be an object")
    extra = set(cfg) - {"instances", "out_dir", "jobs"}
    if extra:
        raise InputFormatError(f"bench config: unknown fields {sorted(extra)}")
    paths = cfg.get("instances")
    if not isinstance(paths, list) or not all(isinstance(p, str) for p in paths):
        raise InputFormatError("bench config: instances must be a list of paths")
    base_dir = cfg_path.parent
    out_dir = Path(cfg.get("out_dir", args.out_dir or "."))
    if not out_dir.is_absolute():
        out_dir = base_dir / out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = args.jobs or cfg.get("jobs", 1)
    if not isinstance(jobs, int) or jobs < 1:
        raise InputFormatError("bench config: jobs must be a positive integer")

    def work(pair):
        return _bench_one(pair[0], pair[1], base_dir, out_dir, args)

    items = list(enumerate(paths))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(work, items))
    else:
        done = [work(it) for it in items]
    results = []
    counts: dict[str, int] = {}
    for row, elapsed in done:
        _note(args, f"[{row['index']}] {row['instance']} -> {row['status']} ({elapsed:.3f}s)")
        counts[row["status"]] = counts.get(row["status"], 0) + 1
        results.append(row)
    _emit({"results": results, "counts": counts})
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="cubecolor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mode=True):
        p.add_argument("--seed", type=int, default=None, help="override params.seed")
        p.add_argument(
            "--radius-scale", type=float, default=None,
            help="multiply all neighborhood radii, flooring",
        )
        if mode:
            p.add_argument(
                "--mode", choices=("auto", "staged", "fastpath", "oracle"), default="auto",
            )
        p.add_argument("--quiet", action="store_true", help="suppress stderr notes")

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    common(p)
    p.add_argument("--trace", default=None, help="write the replayable trace here")
    p.add_argument("--budget", type=int, default=None, help="oracle node budget (mode=oracle)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a coloring against an instance")
    p.add_argument("instance")
    p.add_argument("coloring")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("generate", help="emit an instance file")
    kinds = p.add_subparsers(dest="kind", required=True)
    g = kinds.add_parser("random", help="seeded random compatible instance")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--pre-cap", type=int, default=1, help="precolored edges per vertex")
    g.add_argument("--list-cap", type=int, default=1, help="largest forbidden list")
    g.add_argument("--seed", type=int, default=0)
    for kind in ("prop4i", "prop4ii"):
        g = kinds.add_parser(kind, help="unextendable construction")
        g.add_argument("--d", type=int, required=True)
    g = kinds.add_parser("prop4iii", help="combined construction")
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--alpha", type=_fraction, required=True, help="precolored share, e.g. 1/4")
    g.add_argument("--beta", type=_fraction, required=True, help="listed share, e.g. 1/2")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("oracle", help="exact verdict by exhaustive search")
    p.add_argument("instance")
    p.add_argument("--budget", type=int, default=None, help="node budget; exceeding it exits 2")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="run every instance in a config file")
    p.add_argument("config")
    common(p)
    p.add_argument("--budget", type=int, default=None, help="oracle node budget (mode=oracle)")
    p.add_argument("--jobs", type=int, default=None, help="concurrent solves")
    p.add_argument("--out-dir", default=None, help="where per-instance outputs land")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    try:
        return args.func(args)
    except CubeColorError as ex:
        _emit({"error": {"type": type(ex).__name__, "message": str(ex)}})
        return 4
    except OSError as ex:
        _emit({"error": {"type": "io", "message": str(ex)}})
        return 4


if __name__ == "__main__":
    sys.exit(main())
