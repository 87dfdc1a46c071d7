"""Unbalanced egalitarian welfare: tractable quantile families and the wall.

With homogeneous quantiles the binary decision is polynomial exactly for
tau in {0, 1/3, 1} and tau = t/(t+1):

* tau = 0: no item may be universally worthless, plus a saturating matching;
* tau = 1: a saturating matching alone;
* tau = t/(t+1): one extra 1-item escorts up to t worthless items;
* tau = 1/3: two 1-items offset one worthless item, found by one
  maximum-weight matching on a general graph (item-item pair edges).

Everything else (e.g. tau = 1/4) is NP-hard with no multiplicative
approximation, so the dispatcher refuses instead of guessing.
"""

from quantile_alloc import (
    IntractableQuantileError,
    goods,
    opt_welfare,
    unbalanced_esw,
    unbalanced_esw_binary_frac,
    unbalanced_esw_binary_third,
)

half = goods(["1/2"] * 2, [[1, 0, 0, 1], [0, 1, 0, 1]])
report = unbalanced_esw_binary_frac(half, 1)
print("tau = 1/2 binary:", [list(r) for r in half.values])
print("  everyone satisfied?", report.feasible, "| bundles:", report.allocation.bundles(2))

third = goods(["1/3"] * 2, [[1, 1, 1, 0, 0], [0, 0, 0, 1, 0]])
report = unbalanced_esw_binary_third(third)
print("tau = 1/3 binary:", [list(r) for r in third.values])
print("  everyone satisfied?", report.feasible, "| bundles:", report.allocation.bundles(2))
print()

general = goods(["2/3"] * 2, [[5, 4, 1, 0, 2], [5, 1, 3, 2, 2]])
report = unbalanced_esw(general)
print("tau = 2/3 with general values:", [list(r) for r in general.values])
print("  max ESW:", report.welfare, "| oracle:", opt_welfare(general, "esw")[0])
print()

hard = goods(["1/4"] * 2, [[1, 1], [1, 1]])
try:
    unbalanced_esw(hard)
except IntractableQuantileError as exc:
    print("tau = 1/4 ->", exc)
