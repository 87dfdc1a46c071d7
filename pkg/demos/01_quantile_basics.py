"""How quantile valuations score bundles, for goods and for chores.

An agent with quantile tau values a bundle at the ceil(tau * size)-th lowest
of their item values: tau = 0 reads the worst item, tau = 1 the best,
tau = 1/2 a lower median.  Chores flip the reading: the quantile applies to
the negated disutilities, so a pessimist (tau = 0) is scored on their most
painful chore.
"""

from quantile_alloc import Quantile, bundle_value, chores, goods, quantile_index, threshold_binary

values = [6, 2, 9, 4, 7]
bundle = range(len(values))

print("item values:", values)
print()
print("goods: value of the whole bundle by quantile")
for tau in ["0/1", "1/4", "1/2", "3/4", "1/1"]:
    inst = goods([tau], [values])
    idx = quantile_index(Quantile.parse(tau), len(values))
    print(f"  tau = {tau}: picks order statistic {idx} of 5 -> {bundle_value(inst, 0, bundle)}")

print()
print("chores: disutility of the whole bundle by quantile")
for tau in ["0/1", "1/2", "1/1"]:
    inst = chores([tau], [values])
    print(f"  tau = {tau}: -> {bundle_value(inst, 0, bundle)}")

print()
print("threshold reduction: a bundle is worth >= nu exactly when it is worth")
print("1 after rewriting each value to 1-if->=nu-else-0")
inst = goods(["1/2"], [values])
for nu in [4, 7]:
    reduced = threshold_binary(inst, nu)
    print(
        f"  nu = {nu}: binary row {reduced.values[0]}, "
        f"original value {bundle_value(inst, 0, bundle)}, "
        f"reduced value {bundle_value(reduced, 0, bundle)}"
    )
