"""The product-form weighting algebra.

A weighting is central when every confined walk with the same length, start
and end carries the same total weight; equivalently the weights factor as
beta * alpha1**s1 * alpha2**s2.  Centrality of a concrete weighting reduces
to finitely many two-path product relations, all checked in exact rational
arithmetic.
"""

from fractions import Fraction as F

from orthantwalks import (builtin_model, central_weights, check_gf_relation,
                          count_walks, find_path_pairs, is_central,
                          make_stepset, solve_central, step_matrix)

# ----------------------------------------------------------------------
# the defining relations come from pairs of paths with equal length and end

model = builtin_model("gb", 1, 1)
print("step matrix (one row per step, last column all ones):")
for row in step_matrix(model):
    print("  ", row)

base, pairs = find_path_pairs(model)
for pair in pairs:
    print("relation:", pair.describe())

# ----------------------------------------------------------------------
# checking weightings against the relations

good = builtin_model("gb", 2, 3)          # (a, 1/a, b/a, a/b) with a=2, b=3
bad = model.with_weights([2, F(1, 2), 3, 1])
print("\nproduct-form weighting central:", is_central(good)[0])
central, witness = is_central(bad)
print("ad-hoc weighting central:", central, "| violated:", witness.describe())

# ----------------------------------------------------------------------
# solving for (alpha, beta) exactly, even with longer steps

steps = ((2, 2), (1, 1), (-1, 0), (0, -1))
weighted = make_stepset(steps, central_weights(steps, (F(2), F(3)), beta=F(1)))
dec = solve_central(weighted, base=(0, 1, 3))
print("\n4-step model with a (2,2) step:")
print("  alpha exponent vectors:", [m.exponents for m in dec.alpha])
print("  alpha values:", dec.alpha_exact(), " beta:", dec.beta_exact())

# ----------------------------------------------------------------------
# the payoff: weighted coefficients are scaled unweighted coefficients,
# endpoint by endpoint and length by length, exactly

assert check_gf_relation(good, solve_central(good), 10)
print("\nweighted(i,j,n) == beta**n alpha1**i alpha2**j unweighted(i,j,n) for n <= 10")

unweighted_counts = count_walks(model, (0, 0), 10)
weighted_counts = count_walks(good, (0, 0), 10)
n, endpoint = 7, (1, 2)
lhs = weighted_counts.endpoint(endpoint, n)
rhs = 2 ** endpoint[0] * 3 ** endpoint[1] * unweighted_counts.endpoint(endpoint, n)
print(f"  spot check at n={n}, endpoint={endpoint}: {lhs} == {rhs}")
assert lhs == rhs
