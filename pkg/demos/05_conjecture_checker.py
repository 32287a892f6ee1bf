"""The finite null-space check behind kernel uniqueness.

If constants mu_s satisfy sum_s mu_s w_{i-s}(n-1) = 0 for every orthant
endpoint i and every length n, must all mu_s vanish?  For a concrete model
this is a linear system over the exact walk counts; the null space shrinks as
longer walks are added, and N_S is the first length at which it collapses.
"""

from orthantwalks import (builtin_model, conjecture2_nullspace, make_stepset,
                          minimal_refutation_length)

# ----------------------------------------------------------------------
# the four-step model: three lengths are needed

gb = builtin_model("gb", 1, 1)
print("null-space dimension by length cap (steps", gb.steps, "):")
for cap in (1, 2, 3):
    report = conjecture2_nullspace(gb, cap)
    free = [gb.steps[k] for vec in report.basis for k, q in enumerate(vec) if q]
    print(f"  cap={cap}: nullity={report.nullity}"
          + (f"  (still unconstrained: {sorted(set(free))})" if free else "  -- trivial"))
print("minimal refuting length N_S =", minimal_refutation_length(gb, 5))

# the step (1,-1) needs length-3 walks before it is pinned down: any walk
# using it must first climb to y=1, which takes two other steps

# ----------------------------------------------------------------------
# a model where one step forces length four

slow = make_stepset([(1, 0), (-1, 1), (-1, -1)], [1, 1, 1])
print("\nsteps", slow.steps, "-> N_S =", minimal_refutation_length(slow, 6))

# ----------------------------------------------------------------------
# containing the all-ones step collapses the system at length two

fast = make_stepset([(1, 1), (-1, 0), (0, -1), (-1, -1)], [1] * 4)
print("steps containing (1,1) -> N_S =", minimal_refutation_length(fast, 4))

for name in ("gb", "tandem", "gessel", "simple"):
    n_s = minimal_refutation_length(builtin_model(name, 1, 1), 4)
    print(f"{name:7s} N_S = {n_s}")
