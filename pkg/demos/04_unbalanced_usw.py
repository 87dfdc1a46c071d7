"""Unbalanced utilitarian welfare: the scapegoat trick and the optimist
shortcut.

Scapegoat: try every agent as the one who absorbs all leftovers, match the
others one-to-one with items by maximum weight, keep the best of the n
candidates.  Guarantee: n * welfare >= (n-1) * optimum.  With at least one
quantile-1 agent the same construction is exactly optimal, because the
optimist absorbs leftovers for free.
"""

from quantile_alloc import goods, opt_welfare, optimistic_exact_usw, scapegoat_usw

inst = goods(["0/1"] * 3, [[10, 0, 0, 0], [0, 8, 0, 0], [0, 0, 6, 5]])
report = scapegoat_usw(inst)
print("pessimists, values:", [list(r) for r in inst.values])
print(
    "scapegoat welfare:", report.welfare,
    "| bundles:", report.allocation.bundles(3),
    "| optimum:", opt_welfare(inst, "usw")[0],
)
print()

# Spreading high values across two agents costs the scapegoat construction:
# whoever absorbs the leftovers eats a worthless item.
tight = goods(["0/1", "0/1"], [[5, 5, 0, 0], [0, 0, 5, 5]])
report = scapegoat_usw(tight)
opt = opt_welfare(tight, "usw")[0]
print("a strictly suboptimal case, values:", [list(r) for r in tight.values])
print(f"scapegoat {report.welfare} < optimum {opt}, yet 2*{report.welfare} >= 1*{opt} as proven")
print()

star = goods(["0/1", "1/1"], [[9, 0], [1, 8]])
report = optimistic_exact_usw(star)
print("with an optimist (quantiles 0/1 and 1/1), values:", [list(r) for r in star.values])
print("optimistic welfare:", report.welfare, "| optimum:", opt_welfare(star, "usw")[0])
