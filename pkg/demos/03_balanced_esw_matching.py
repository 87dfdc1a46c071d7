"""Balanced egalitarian welfare, solved exactly for any mix of quantiles.

The binary question "can every agent get value 1 with k items each?" is a
bipartite matching: agent i gets min(k, k - ceil(tau_i k) + 1) copy-vertices,
each of which must grab a distinct item the agent values 1; any padding to k
items then cannot drag the bundle below 1.  A binary search over the distinct
matrix values lifts the decision to general integers.
"""

from quantile_alloc import balanced_esw, balanced_esw_binary, esw, goods, opt_welfare, threshold_binary

inst = goods(["1/2", "1/2"], [[5, 4, 1, 0], [5, 1, 3, 2]])
print("values:", [list(r) for r in inst.values])

for nu in sorted({v for row in inst.values for v in row if v}):
    decision = balanced_esw_binary(threshold_binary(inst, nu))
    print(f"  level nu = {nu}: ESW >= nu achievable? {decision.feasible}")

report = balanced_esw(inst)
print("max balanced ESW:", report.welfare, "| oracle:", opt_welfare(inst, "esw", balanced=True)[0])
print("bundles:", report.allocation.bundles(inst.n))
print()

print("heterogeneous quantiles are fine: a pessimist needs all k items good,")
print("an optimist needs just one")
mixed = goods(["0/1", "1/1"], [[3, 3, 0, 0], [9, 0, 0, 1]])
report = balanced_esw(mixed)
print("values:", [list(r) for r in mixed.values], "quantiles: 0/1, 1/1")
print(
    "max balanced ESW:", report.welfare,
    "| bundles:", report.allocation.bundles(2),
    "| recomputed:", esw(mixed, report.allocation),
)
