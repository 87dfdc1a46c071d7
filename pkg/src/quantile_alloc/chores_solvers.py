"""Chores-side solvers: balanced egalitarian cost, greedy set-cover
utilitarian cost for pessimists, and exact egalitarian cost at the extreme
quantiles.

Sign convention, worth stating twice: a chore bundle's disutility is the
quantile of the *negated* values, so quantile 0 scores an agent on their
worst chore and quantile 1 on their best one.  Reading the quantile on the
raw disutilities instead would flip every statement below.

Egalitarian cost mirrors the goods machinery with the threshold reversed:
cost <= nu - 1 under the original disutilities iff cost 0 after rewriting
every disutility to 1-if->=nu-else-0, so the searches below minimize over
candidate cost levels instead of maximizing.

Note (observation, not an operation): a minimum egalitarian-cost balanced
allocation keeps every agent's bundle cost at most the largest single
disutility, so its utilitarian cost is within a factor of
max_{agent, chore} d(chore) of optimal.  We record this as documentation
only; no solver relies on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ._construct import all_to_first, balanced_blocks, owner_from_bundles, round_robin_pad
from .core import (
    CHORES,
    Instance,
    IntractableQuantileError,
    InvalidInstanceError,
    SolveReport,
    demand_quota,
    esc,
    threshold_binary,
    usc,
)
from .matching import bipartite_graph, max_cardinality_bipartite

BinaryDecider = Callable[[Instance], SolveReport]


def _require_chores(instance: Instance) -> None:
    if instance.kind != CHORES:
        raise InvalidInstanceError("chores solvers require a chores instance")


def balanced_esc_binary(instance: Instance) -> SolveReport:
    """Decide whether a balanced allocation can give every agent cost 0.

    Same copies-to-items matching as the balanced goods decision, except
    copies connect to chores the agent finds costless: an agent needs
    min(k, k - ceil(tau_i k) + 1) such chores to keep the quantile of a
    k-sized bundle at disutility 0 under any padding.
    """
    _require_chores(instance)
    if not instance.is_binary:
        raise InvalidInstanceError("entries must be binary")
    k = instance.items_per_agent()
    n, m = instance.n, instance.m
    quotas = [demand_quota(q, k) for q in instance.quantiles]

    copy_agent: list[int] = []
    for i in range(n):
        copy_agent.extend([i] * quotas[i])
    edges = [
        (c, g, 1)
        for c, i in enumerate(copy_agent)
        for g in range(m)
        if instance.values[i][g] == 0
    ]
    matching = max_cardinality_bipartite(bipartite_graph(len(copy_agent), m, edges))

    if matching.size == len(copy_agent):
        bundles: list[list[int]] = [[] for _ in range(n)]
        mate = matching.mate()
        matched_items: set[int] = set()
        for c, i in enumerate(copy_agent):
            partner = mate.get(c)
            if partner is not None:
                g = partner - len(copy_agent)
                bundles[i].append(g)
                matched_items.add(g)
        round_robin_pad(bundles, [g for g in range(m) if g not in matched_items], k)
        allocation = owner_from_bundles(bundles, m)
        feasible = True
    else:
        allocation = balanced_blocks(n, m)
        feasible = False
    return SolveReport(
        allocation=allocation,
        welfare=esc(instance, allocation),
        algorithm="balanced_esc_binary",
        feasible=feasible,
    )


def _smallest_feasible_cost(
    instance: Instance, decider: BinaryDecider
) -> tuple[int, SolveReport]:
    """Binary-search the candidate cost levels {0} + distinct disutilities for
    the smallest level c whose thresholded decision (at nu = c + 1) is
    feasible.  The largest candidate is always feasible, so this never
    fails."""
    levels = [0] + sorted({e for row in instance.values for e in row if e > 0})
    best: tuple[int, SolveReport] | None = None
    lo, hi = 0, len(levels) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        report = decider(threshold_binary(instance, levels[mid] + 1))
        if report.feasible:
            best = (levels[mid], report)
            hi = mid - 1
        else:
            lo = mid + 1
    assert best is not None, "maximum disutility level must be feasible"
    return best


def balanced_esc(instance: Instance) -> SolveReport:
    """Exact minimum egalitarian cost over balanced allocations, any
    quantiles, via threshold search over the matching decision."""
    _require_chores(instance)
    instance.items_per_agent()
    _, report = _smallest_feasible_cost(instance, balanced_esc_binary)
    allocation = report.allocation
    return SolveReport(
        allocation=allocation,
        welfare=esc(instance, allocation),
        algorithm="balanced_esc",
    )


@dataclass(frozen=True)
class CoverCandidate:
    """One agent's cheapest ``length`` chores (ties by item index); its weight
    is that agent's quantile-0 disutility for holding exactly those chores,
    i.e. the length-th lowest disutility in their row."""

    agent: int
    length: int
    items: tuple[int, ...]
    weight: int


def cover_candidates(instance: Instance) -> list[CoverCandidate]:
    out: list[CoverCandidate] = []
    for i in range(instance.n):
        row = instance.values[i]
        ranked = sorted(range(instance.m), key=lambda g: (row[g], g))
        for length in range(1, instance.m + 1):
            prefix = ranked[:length]
            out.append(
                CoverCandidate(
                    agent=i,
                    length=length,
                    items=tuple(sorted(prefix)),
                    weight=row[ranked[length - 1]],
                )
            )
    return out


def usc_tau0_setcover(instance: Instance) -> SolveReport:
    """Greedy weighted-set-cover allocation for pessimists (all quantiles 0);
    utilitarian cost at most (ln m + 1) times the optimum.

    Candidates are per-agent cheapest-prefix sets.  The greedy loop picks the
    candidate minimizing weight / newly-covered (exact rational comparison,
    ties by agent then prefix length), and every newly covered chore is owned
    by that pick's agent, so an agent's final bundle sits inside their
    largest chosen prefix and costs at most its weight.
    """
    _require_chores(instance)
    if any(not q.is_zero for q in instance.quantiles):
        raise IntractableQuantileError(
            "quantile mismatch: the set-cover route requires all quantiles 0"
        )
    n, m = instance.n, instance.m
    candidates = cover_candidates(instance)

    owner = [-1] * m
    uncovered = set(range(m))
    while uncovered:
        best: CoverCandidate | None = None
        best_new = 0
        for cand in candidates:
            new = sum(1 for g in cand.items if g in uncovered)
            if new == 0:
                continue
            # weight/new < best.weight/best_new, compared in integers.
            if best is None or cand.weight * best_new < best.weight * new:
                best, best_new = cand, new
        assert best is not None
        for g in best.items:
            if g in uncovered:
                owner[g] = best.agent
                uncovered.discard(g)

    allocation = owner_from_bundles(
        [[g for g in range(m) if owner[g] == i] for i in range(n)], m
    )
    return SolveReport(
        allocation=allocation,
        welfare=usc(instance, allocation),
        algorithm="usc_tau0_setcover",
    )


def _esc_tau0_binary(instance: Instance) -> SolveReport:
    """Pessimists and binary chores: cost 0 iff no chore is a universal bad;
    then every chore can go to the first agent who finds it costless."""
    algorithm = "esc_tau0"
    n, m = instance.n, instance.m
    owner: list[int] = []
    for g in range(m):
        holders = [i for i in range(n) if instance.values[i][g] == 0]
        if not holders:
            allocation = all_to_first(n, m)
            return SolveReport(allocation, esc(instance, allocation), algorithm, feasible=False)
        owner.append(holders[0])
    allocation = owner_from_bundles([[g for g in range(m) if owner[g] == i] for i in range(n)], m)
    return SolveReport(allocation, esc(instance, allocation), algorithm, feasible=True)


def _esc_tau1_binary(instance: Instance) -> SolveReport:
    """Optimists and binary chores: cost 0 iff some agent has a costless
    chore; that agent swallows all of them and everyone else takes nothing."""
    algorithm = "esc_tau1"
    n, m = instance.n, instance.m
    for i in range(n):
        if any(instance.values[i][g] == 0 for g in range(m)):
            bundles: list[list[int]] = [[] for _ in range(n)]
            bundles[i] = list(range(m))
            allocation = owner_from_bundles(bundles, m)
            return SolveReport(allocation, esc(instance, allocation), algorithm, feasible=True)
    allocation = all_to_first(n, m)
    return SolveReport(allocation, esc(instance, allocation), algorithm, feasible=False)


def _exact_esc_extreme(instance: Instance, decider: BinaryDecider, algorithm: str) -> SolveReport:
    _, report = _smallest_feasible_cost(instance, decider)
    allocation = report.allocation
    return SolveReport(
        allocation=allocation,
        welfare=esc(instance, allocation),
        algorithm=algorithm,
    )


def esc_tau0(instance: Instance) -> SolveReport:
    """Exact minimum egalitarian cost when all quantiles are 0 (worst-chore
    scoring), for general integer disutilities via threshold search."""
    _require_chores(instance)
    if any(not q.is_zero for q in instance.quantiles):
        raise IntractableQuantileError("quantile mismatch: solver requires quantile 0")
    return _exact_esc_extreme(instance, _esc_tau0_binary, "esc_tau0")


def esc_tau1(instance: Instance) -> SolveReport:
    """Exact minimum egalitarian cost when all quantiles are 1 (best-chore
    scoring), for general integer disutilities via threshold search."""
    _require_chores(instance)
    if any(not q.is_one for q in instance.quantiles):
        raise IntractableQuantileError("quantile mismatch: solver requires quantile 1")
    return _exact_esc_extreme(instance, _esc_tau1_binary, "esc_tau1")
