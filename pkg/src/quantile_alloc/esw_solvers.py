"""Egalitarian-welfare solvers for goods.

Everything here rides on one reduction: an allocation has egalitarian
welfare >= nu under integer values if and only if it has egalitarian welfare
1 after rewriting every value to 1-if->=nu-else-0.  So each solver is a
binary decision procedure ("can everyone get value 1?") wrapped in a binary
search over the distinct matrix values.

Balanced bundles are decided by a copies-to-items bipartite matching, for any
mix of quantiles.  Unbalanced bundles are only tractable for homogeneous
quantiles in {0, 1/3, 1} or of the form t/(t+1); each family gets its own
matching construction.  Requesting any other quantile raises
IntractableQuantileError rather than approximating, because no multiplicative
approximation is possible once the decision is NP-hard.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ._construct import all_to_first, balanced_blocks, owner_from_bundles, round_robin_pad
from .core import (
    GOODS,
    Instance,
    IntractableQuantileError,
    InvalidInstanceError,
    Quantile,
    SolveReport,
    demand_quota,
    esw,
    threshold_binary,
)
from .matching import Graph, bipartite_graph, max_cardinality_bipartite, max_weight_general

BinaryDecider = Callable[[Instance], SolveReport]


def _require_goods(instance: Instance) -> None:
    if instance.kind != GOODS:
        raise InvalidInstanceError("egalitarian-welfare solvers require a goods instance")


def _require_binary(instance: Instance) -> None:
    if not instance.is_binary:
        raise InvalidInstanceError("entries must be binary")


@dataclass(frozen=True)
class ZeroOnePartition:
    """Split of the items into universal zeros (valued 0 by every agent) and
    the complement (valued 1 by at least one agent)."""

    zeros: tuple[int, ...]
    ones: tuple[int, ...]

    @classmethod
    def of(cls, instance: Instance) -> "ZeroOnePartition":
        zeros = tuple(
            g for g in range(instance.m) if all(row[g] == 0 for row in instance.values)
        )
        zero_set = set(zeros)
        return cls(zeros=zeros, ones=tuple(g for g in range(instance.m) if g not in zero_set))


def _zero_one_split(instance: Instance) -> tuple[list[int], list[int]]:
    split = ZeroOnePartition.of(instance)
    return list(split.zeros), list(split.ones)


def _first_valuing_agent(instance: Instance, *items: int) -> int:
    for i in range(instance.n):
        if all(instance.values[i][g] == 1 for g in items):
            return i
    raise AssertionError(f"no agent values items {items}")


def balanced_esw_binary(instance: Instance) -> SolveReport:
    """Decide whether a balanced allocation can give every agent value 1.

    Each agent i gets min(k, k - ceil(tau_i k) + 1) copy-vertices; copies are
    matched to distinct items the agent values 1.  Saturating every copy is
    necessary and sufficient, and matched bundles stay at value 1 under any
    padding to k items.
    """
    _require_goods(instance)
    _require_binary(instance)
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
        if instance.values[i][g] == 1
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
        welfare=esw(instance, allocation),
        algorithm="balanced_esw_binary",
        feasible=feasible,
    )


def _distinct_positive_values(instance: Instance) -> list[int]:
    return sorted({entry for row in instance.values for entry in row if entry > 0})


def _largest_feasible_level(
    instance: Instance, decider: BinaryDecider
) -> tuple[int, SolveReport] | None:
    """Binary-search the distinct positive values for the largest level whose
    thresholded instance the decider accepts.  Sound because feasibility at a
    level implies feasibility at every smaller level."""
    levels = _distinct_positive_values(instance)
    best: tuple[int, SolveReport] | None = None
    lo, hi = 0, len(levels) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        report = decider(threshold_binary(instance, levels[mid]))
        if report.feasible:
            best = (levels[mid], report)
            lo = mid + 1
        else:
            hi = mid - 1
    return best


def balanced_esw(instance: Instance) -> SolveReport:
    """Exact maximum egalitarian welfare over balanced allocations, for any
    quantiles, via threshold search over the matching decision."""
    _require_goods(instance)
    instance.items_per_agent()
    best = _largest_feasible_level(instance, balanced_esw_binary)
    if best is None:
        allocation = balanced_blocks(instance.n, instance.m)
    else:
        allocation = best[1].allocation
    return SolveReport(
        allocation=allocation,
        welfare=esw(instance, allocation),
        algorithm="balanced_esw",
    )


def _saturating_matching(instance: Instance) -> dict[int, int] | None:
    """Agent -> item map from a maximum matching on value-1 edges, or None if
    some agent stays unmatched."""
    n, m = instance.n, instance.m
    edges = [
        (i, g, 1) for i in range(n) for g in range(m) if instance.values[i][g] == 1
    ]
    matching = max_cardinality_bipartite(bipartite_graph(n, m, edges))
    if matching.size < n:
        return None
    mate = matching.mate()
    return {i: mate[i] - n for i in range(n)}


def _infeasible_unbalanced(instance: Instance, algorithm: str) -> SolveReport:
    allocation = all_to_first(instance.n, instance.m)
    return SolveReport(
        allocation=allocation,
        welfare=esw(instance, allocation),
        algorithm=algorithm,
        feasible=False,
    )


def unbalanced_esw_binary_frac(instance: Instance, t: int) -> SolveReport:
    """Decide egalitarian welfare 1 for binary goods at quantile t/(t+1).

    A bundle with L value-1 items tolerates at most t*L - 1 value-0 items, so
    beyond one matched 1-item per agent, each further 1-item can escort up to
    t universally-worthless items, and each agent can carry t - 1 stragglers.
    Feasible iff an agent-saturating matching exists and
    |M_0| <= t*|M_1| - n.
    """
    _require_goods(instance)
    _require_binary(instance)
    if t < 1:
        raise InvalidInstanceError("t must be a positive integer")
    if any(q != Quantile(t, t + 1) for q in instance.quantiles):
        raise IntractableQuantileError(
            f"quantile mismatch: solver requires homogeneous quantile {t}/{t + 1}"
        )
    algorithm = "unbalanced_esw_binary_frac"
    zeros, ones = _zero_one_split(instance)
    assigned = _saturating_matching(instance)
    if assigned is None or len(zeros) > t * len(ones) - instance.n:
        return _infeasible_unbalanced(instance, algorithm)

    n = instance.n
    bundles: list[list[int]] = [[assigned[i]] for i in range(n)]
    matched_items = set(assigned.values())
    rem_ones = [g for g in ones if g not in matched_items]
    rem_zeros = list(zeros)

    pos1 = 0
    pos0 = 0
    while pos1 < len(rem_ones) and pos0 < len(rem_zeros):
        g = rem_ones[pos1]
        pos1 += 1
        carried = rem_zeros[pos0 : pos0 + t]
        pos0 += len(carried)
        i = _first_valuing_agent(instance, g)
        bundles[i].append(g)
        bundles[i].extend(carried)

    stragglers = rem_zeros[pos0:]
    cursor = 0
    for i in range(n):
        if cursor >= len(stragglers):
            break
        chunk = stragglers[cursor : cursor + (t - 1)]
        bundles[i].extend(chunk)
        cursor += len(chunk)
    assert cursor >= len(stragglers), "straggler zeros exceed capacity"

    for g in rem_ones[pos1:]:
        bundles[_first_valuing_agent(instance, g)].append(g)

    allocation = owner_from_bundles(bundles, instance.m)
    return SolveReport(allocation, esw(instance, allocation), algorithm, feasible=True)


def unbalanced_esw_binary_third(instance: Instance) -> SolveReport:
    """Decide egalitarian welfare 1 for binary goods at quantile 1/3.

    A bundle with z value-0 items needs at least 2z + 1 value-1 items, so two
    1-items offset one worthless item.  One maximum-weight matching on a
    general graph finds both at once: agent-item edges (weight |vertices|+1)
    match everyone to a first 1-item, item-item edges (weight 1, allowed when
    some agent values both endpoints) form the offset pairs.  Feasible iff
    the matching weight reaches |M_0| + n * (|vertices| + 1).
    """
    _require_goods(instance)
    _require_binary(instance)
    if any(q != Quantile(1, 3) for q in instance.quantiles):
        raise IntractableQuantileError(
            "quantile mismatch: solver requires homogeneous quantile 1/3"
        )
    algorithm = "unbalanced_esw_binary_third"
    n, m = instance.n, instance.m
    zeros, ones = _zero_one_split(instance)
    w_big = n + len(ones) + 1

    edges: list[tuple[int, int, int]] = []
    for i in range(n):
        for pos, g in enumerate(ones):
            if instance.values[i][g] == 1:
                edges.append((i, n + pos, w_big))
    for pa in range(len(ones)):
        for pb in range(pa + 1, len(ones)):
            ga, gb = ones[pa], ones[pb]
            if any(
                instance.values[i][ga] == 1 and instance.values[i][gb] == 1
                for i in range(n)
            ):
                edges.append((n + pa, n + pb, 1))

    matching = max_weight_general(Graph(num_vertices=n + len(ones), edges=tuple(edges)))
    if matching.weight < len(zeros) + n * w_big:
        return _infeasible_unbalanced(instance, algorithm)

    bundles: list[list[int]] = [[] for _ in range(n)]
    placed: set[int] = set()
    pairs: list[tuple[int, int]] = []
    for u, v, _ in matching.edges:
        if u < n or v < n:
            i, g = (u, ones[v - n]) if u < n else (v, ones[u - n])
            bundles[i].append(g)
            placed.add(g)
        else:
            pairs.append((ones[u - n], ones[v - n]))
    assert len(placed) == n and len(pairs) >= len(zeros)

    for z, (ga, gb) in zip(zeros, pairs):
        i = _first_valuing_agent(instance, ga, gb)
        bundles[i].extend((z, ga, gb))
        placed.update((ga, gb))

    for g in ones:
        if g not in placed:
            bundles[_first_valuing_agent(instance, g)].append(g)

    allocation = owner_from_bundles(bundles, m)
    return SolveReport(allocation, esw(instance, allocation), algorithm, feasible=True)


def unbalanced_esw_binary_tau0(instance: Instance) -> SolveReport:
    """Quantile 0 (pessimists): every bundle must be non-empty and all-ones,
    so feasibility needs no universally-worthless item plus an
    agent-saturating matching."""
    _require_goods(instance)
    _require_binary(instance)
    if any(not q.is_zero for q in instance.quantiles):
        raise IntractableQuantileError("quantile mismatch: solver requires quantile 0")
    algorithm = "unbalanced_esw_binary_tau0"
    zeros, _ = _zero_one_split(instance)
    assigned = _saturating_matching(instance)
    if zeros or assigned is None:
        return _infeasible_unbalanced(instance, algorithm)
    bundles: list[list[int]] = [[assigned[i]] for i in range(instance.n)]
    matched_items = set(assigned.values())
    for g in range(instance.m):
        if g not in matched_items:
            bundles[_first_valuing_agent(instance, g)].append(g)
    allocation = owner_from_bundles(bundles, instance.m)
    return SolveReport(allocation, esw(instance, allocation), algorithm, feasible=True)


def unbalanced_esw_binary_tau1(instance: Instance) -> SolveReport:
    """Quantile 1 (optimists): each agent just needs one 1-item somewhere in
    their bundle; leftovers can go anywhere (a max never drops)."""
    _require_goods(instance)
    _require_binary(instance)
    if any(not q.is_one for q in instance.quantiles):
        raise IntractableQuantileError("quantile mismatch: solver requires quantile 1")
    algorithm = "unbalanced_esw_binary_tau1"
    assigned = _saturating_matching(instance)
    if assigned is None:
        return _infeasible_unbalanced(instance, algorithm)
    bundles: list[list[int]] = [[assigned[i]] for i in range(instance.n)]
    matched_items = set(assigned.values())
    bundles[0].extend(g for g in range(instance.m) if g not in matched_items)
    allocation = owner_from_bundles(bundles, instance.m)
    return SolveReport(allocation, esw(instance, allocation), algorithm, feasible=True)


def binary_esw_decider_for(tau: Quantile) -> BinaryDecider:
    """The binary decision procedure for a homogeneous quantile, or raise
    IntractableQuantileError outside the tractable family
    {0, 1/3, 1} union {t/(t+1)}."""
    if tau.is_zero:
        return unbalanced_esw_binary_tau0
    if tau.is_one:
        return unbalanced_esw_binary_tau1
    if tau == Quantile(1, 3):
        return unbalanced_esw_binary_third
    if tau.denominator == tau.numerator + 1:
        t = tau.numerator
        return lambda inst: unbalanced_esw_binary_frac(inst, t)
    raise IntractableQuantileError(
        f"intractable quantile {tau}: maximizing egalitarian welfare is NP-hard here "
        "and admits no multiplicative approximation"
    )


def unbalanced_esw(instance: Instance) -> SolveReport:
    """Exact maximum egalitarian welfare over all allocations, for homogeneous
    quantiles in the tractable family; threshold search over the family's
    binary decider."""
    _require_goods(instance)
    tau = instance.homogeneous_quantile()
    if tau is None:
        raise IntractableQuantileError(
            "heterogeneous quantiles are not supported for unbalanced egalitarian welfare"
        )
    decider = binary_esw_decider_for(tau)
    best = _largest_feasible_level(instance, decider)
    allocation = all_to_first(instance.n, instance.m) if best is None else best[1].allocation
    return SolveReport(
        allocation=allocation,
        welfare=esw(instance, allocation),
        algorithm="unbalanced_esw",
    )


def _identical_binary_esw(instance: Instance) -> SolveReport:
    """Binary decision for identical valuations.

    A bundle holding z worthless items has value 1 iff its size strictly
    exceeds z / tau, i.e. it needs ``floor(z/tau) + 1 - z`` 1-items.  That
    requirement is a floor of a linear function, so an even split of the
    worthless items is NOT always cheapest (for tau = 2/3, splitting four
    zeros as 1 + 3 needs 1 + 2 = 3 ones while 2 + 2 needs 2 + 2 = 4); a small
    DP minimizes the total 1-items required over all splits exactly, in
    O(n * zeros^2).
    """
    algorithm = "identical_unbalanced_esw"
    n, m = instance.n, instance.m
    tau = instance.quantiles[0]
    row = instance.values[0]
    zeros = [g for g in range(m) if row[g] == 0]
    ones = [g for g in range(m) if row[g] == 1]

    if tau.is_zero:
        if zeros or m < n:
            return _infeasible_unbalanced(instance, algorithm)
        bundles: list[list[int]] = [[] for _ in range(n)]
        for i in range(n):
            bundles[i].append(i)
        bundles[0].extend(range(n, m))
        allocation = owner_from_bundles(bundles, m)
        return SolveReport(allocation, esw(instance, allocation), algorithm, feasible=True)

    def ones_needed(z: int) -> int:
        # Smallest bundle size strictly above z / tau, minus the z zeros.
        size = (z * tau.denominator) // tau.numerator + 1
        return size - z

    z_total = len(zeros)
    # ones_needed is non-decreasing, so no split can cost more than this.
    infinity = n * ones_needed(z_total) + 1
    # best[zz] = fewest 1-items needed when the agents so far hold zz zeros.
    best = [0] + [infinity] * z_total
    takes: list[list[int]] = []
    for _ in range(n):
        nxt = [infinity] * (z_total + 1)
        take_for = [0] * (z_total + 1)
        for total in range(z_total + 1):
            for take in range(total + 1):
                cost = best[total - take] + ones_needed(take)
                if cost < nxt[total]:
                    nxt[total] = cost
                    take_for[total] = take
        best = nxt
        takes.append(take_for)

    if best[z_total] > len(ones):
        return _infeasible_unbalanced(instance, algorithm)

    split = [0] * n
    remaining = z_total
    for i in range(n - 1, -1, -1):
        split[i] = takes[i][remaining]
        remaining -= split[i]

    bundles = [[] for _ in range(n)]
    z_cursor = 0
    o_cursor = 0
    for i in range(n):
        bundles[i].extend(zeros[z_cursor : z_cursor + split[i]])
        z_cursor += split[i]
        need = ones_needed(split[i])
        bundles[i].extend(ones[o_cursor : o_cursor + need])
        o_cursor += need
    bundles[0].extend(ones[o_cursor:])
    allocation = owner_from_bundles(bundles, m)
    return SolveReport(allocation, esw(instance, allocation), algorithm, feasible=True)


def identical_unbalanced_esw(instance: Instance) -> SolveReport:
    """Exact maximum egalitarian welfare for identical valuations (shared row
    and quantile), any quantile in [0, 1].

    Binary instances are decided directly; general values go through the
    usual threshold search over the binary decision.
    """
    _require_goods(instance)
    if not instance.has_identical_rows():
        raise InvalidInstanceError("value rows are not identical")
    if instance.homogeneous_quantile() is None:
        raise InvalidInstanceError("quantiles are not identical")
    if instance.is_binary:
        return _identical_binary_esw(instance)
    best = _largest_feasible_level(instance, _identical_binary_esw)
    allocation = all_to_first(instance.n, instance.m) if best is None else best[1].allocation
    return SolveReport(
        allocation=allocation,
        welfare=esw(instance, allocation),
        algorithm="identical_unbalanced_esw",
    )
