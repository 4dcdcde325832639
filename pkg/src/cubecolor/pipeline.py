"""End-to-end solving: routing, the staged swap campaign, and trace replay.

Instances whose constrained edges form a spread matching take the direct
route; everything else goes through the four stages with the postcondition
report of each stage required to pass. The only randomized ingredient is
the color permutation search, so outer restarts re-seed just that and the
rest replays deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complete import check_completion, complete_extension
from .cube import Edge, FourCycle
from .eliminate import check_elimination, eliminate_unexpected
from .errors import (
    CompletionFailedError,
    CorruptTraceError,
    CubeColorError,
    EliminationFailedError,
    FastpathFailedError,
    FastpathInapplicableError,
    NoPermutationFoundError,
    OutOfRangeError,
    PromotionFailedError,
)
from .fastpath import DEFAULT_MIN_DISTANCE, is_distance_matching, solve_matching_instance
from .model import (
    ColorPermutation,
    Instance,
    TotalColoring,
    is_proper,
    standard_coloring,
    swap_inplace,
    validate_instance,
    verify_solution,
)
from .permute import EXHAUSTIVE_LIMIT, find_permutation
from .promote import check_promotion, promote_conflicts

MODES = ("auto", "staged", "fastpath")


@dataclass(frozen=True)
class TraceConfig:
    """One completion configuration as recorded for replay."""

    target: Edge
    rung_dim: int
    colors: tuple[int, int, int]
    swaps: tuple[FourCycle, ...]


@dataclass(frozen=True)
class Trace:
    """Everything needed to rebuild the final coloring from scratch."""

    d: int
    mode: str
    seed: int
    attempt: int
    rho: tuple[int, ...]
    phi_prime: tuple[tuple[Edge, int], ...]
    s_cycles: tuple[FourCycle, ...]
    t_configs: tuple[TraceConfig, ...]
    fast_cycles: tuple[FourCycle, ...]
    final_colors: tuple[int, ...]

    def all_swaps(self) -> list[FourCycle]:
        """The executed cycles in order, whichever route produced them."""
        if self.mode == "fastpath":
            return list(self.fast_cycles)
        out = list(self.s_cycles)
        for cfg in self.t_configs:
            out.extend(cfg.swaps)
        return out


@dataclass
class Solution:
    coloring: TotalColoring
    trace: Trace
    reports: dict[str, dict] = field(default_factory=dict)


@dataclass
class Failure:
    step: str
    reason: str
    details: dict = field(default_factory=dict)
    attempts: int = 0

    def as_dict(self) -> dict:
        return {
            "step": self.step,
            "reason": self.reason,
            "details": self.details,
            "attempts": self.attempts,
        }


def solve(inst: Instance, mode: str = "auto") -> Solution | Failure:
    """Solve an instance, returning a verified Solution or a structured Failure.

    auto routes distance-3 matchings through the direct swap route and
    everything else through the four stages; staged and fastpath force
    their respective route. Raises IncompatibleInstanceError up front when
    the precoloring is improper or collides with its own lists.
    """
    if mode not in MODES:
        raise OutOfRangeError(f"mode must be one of {MODES}, got {mode!r}")
    validate_instance(inst)
    if mode == "fastpath" or (
        mode == "auto"
        and is_distance_matching(inst.d, inst.constrained_edges(), DEFAULT_MIN_DISTANCE)
    ):
        return _solve_fastpath(inst)
    return _solve_staged(inst)


def _solve_fastpath(inst: Instance) -> Solution | Failure:
    try:
        h, cycles = solve_matching_instance(inst)
    except FastpathInapplicableError as ex:
        return Failure("fastpath", "inapplicable", {"message": str(ex)})
    except FastpathFailedError as ex:
        return Failure("fastpath", "failed", {"message": str(ex)})
    vrep = verify_solution(inst, h)
    if not vrep.ok:
        return Failure("fastpath", "verification-failed", vrep.as_dict())
    trace = Trace(
        d=inst.d,
        mode="fastpath",
        seed=inst.params.seed,
        attempt=0,
        rho=tuple(range(inst.d)),
        phi_prime=tuple(sorted(inst.precoloring.assignment.items())),
        s_cycles=(),
        t_configs=(),
        fast_cycles=tuple(cycles),
        final_colors=tuple(h.tolist()),
    )
    return Solution(h, trace, {"verify": vrep.as_dict()})


def _solve_staged(inst: Instance) -> Solution | Failure:
    d = inst.d
    params = inst.params
    h0 = standard_coloring(d)
    seen: set[tuple[int, ...]] = set()
    last: Failure | None = None
    attempts = 0
    for attempt in range(max(1, params.max_tries)):
        attempts = attempt + 1
        try:
            rho, h1, rep1 = find_permutation(
                h0, inst.precoloring, inst.lists, params, seed=params.seed + attempt
            )
        except NoPermutationFoundError as ex:
            best = ex.best_report.as_dict() if ex.best_report else None
            last = Failure(
                "permute", "no-permutation",
                {"message": str(ex), "best_report": best}, attempts,
            )
            if d <= EXHAUSTIVE_LIMIT:
                break  # the search was exhaustive, more seeds cannot help
            continue
        if rho.mapping in seen:
            continue  # the tail is deterministic, same permutation same outcome
        seen.add(rho.mapping)
        outcome = _run_stages(inst, rho, h1, rep1, attempt)
        if isinstance(outcome, Solution):
            return outcome
        outcome.attempts = attempts
        last = outcome
    if last is None:
        last = Failure("permute", "no-permutation", {"message": "no attempts ran"}, attempts)
    last.attempts = attempts
    return last


def _run_stages(inst: Instance, rho, h1, rep1, attempt: int) -> Solution | Failure:
    params = inst.params
    phi, lists = inst.precoloring, inst.lists

    try:
        phi_prime, promotions = promote_conflicts(h1, phi, lists, params)
    except PromotionFailedError as ex:
        return Failure("promote", "no-allowed-color", {"edge": tuple(ex.edge)})
    rep2 = check_promotion(h1, phi, phi_prime, lists, params)
    if not rep2.passed:
        return Failure("promote", "postcondition-failed", rep2.as_dict())

    try:
        h2, plan = eliminate_unexpected(h1, phi_prime, lists, params)
    except EliminationFailedError as ex:
        return Failure("eliminate", "no-admissible-cycle", {"edge": tuple(ex.edge)})
    rep3 = check_elimination(h1, h2, phi_prime, plan, params)
    if not rep3.passed:
        return Failure("eliminate", "postcondition-failed", rep3.as_dict())

    try:
        h3, configs = complete_extension(
            h2, phi_prime, lists, params, s_used=plan.used_edges(inst.d)
        )
    except CompletionFailedError as ex:
        return Failure(
            "complete", "stuck-targets", {"edges": [tuple(e) for e in ex.stuck]}
        )
    rep4 = check_completion(
        h2, h3, phi_prime, lists, configs, locality_radius=params.radii.config_window
    )
    if not rep4.passed:
        return Failure("complete", "postcondition-failed", rep4.as_dict())

    vrep = verify_solution(inst, h3)
    if not vrep.ok:
        return Failure("verify", "verification-failed", vrep.as_dict())

    trace = Trace(
        d=inst.d,
        mode="staged",
        seed=params.seed + attempt,
        attempt=attempt,
        rho=rho.mapping,
        phi_prime=tuple(sorted(phi_prime.assignment.items())),
        s_cycles=tuple(plan.cycles),
        t_configs=tuple(
            TraceConfig(
                target=cfg.target,
                rung_dim=cfg.rung_dim,
                colors=(cfg.c1, cfg.c2, cfg.c3),
                swaps=tuple(cfg.swaps),
            )
            for cfg in configs
        ),
        fast_cycles=(),
        final_colors=tuple(h3.tolist()),
    )
    reports = {
        "permute": rep1.as_dict(),
        "promote": rep2.as_dict(),
        "eliminate": rep3.as_dict(),
        "complete": rep4.as_dict(),
        "verify": vrep.as_dict(),
    }
    return Solution(h3, trace, reports)


def replay(trace: Trace) -> TotalColoring:
    """Re-execute a trace from the standard coloring and re-validate every swap.

    Raises CorruptTraceError when the permutation is malformed, any recorded
    cycle is no longer two-colored at its turn, properness breaks, or the
    rebuilt coloring differs from the recorded one.
    """
    d = trace.d
    try:
        rho = ColorPermutation(d, tuple(trace.rho))
    except CubeColorError as ex:
        raise CorruptTraceError(f"bad permutation in trace: {ex}")
    h = rho.compose_coloring(standard_coloring(d))
    for cyc in trace.all_swaps():
        try:
            swap_inplace(h, cyc)
        except CubeColorError as ex:
            raise CorruptTraceError(f"swap {tuple(cyc)} failed during replay: {ex}")
        if not is_proper(h):
            raise CorruptTraceError(f"swap {tuple(cyc)} broke properness during replay")
    if tuple(h.tolist()) != tuple(trace.final_colors):
        raise CorruptTraceError("replayed coloring differs from the recorded final colors")
    return h
