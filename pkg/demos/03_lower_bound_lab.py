# coding: utf-8

# # How many queries does it take?
#
# A q-query detector sees a bad block of C_k with probability 1 - (1 - 1/k)^q.

# %%

from booleanity import distinguishing_experiment, empirical_min_fraction, exhaustive_boolean_audit

# %%

for q in (4, 16, 64):
    rep = distinguishing_experiment(16, 20, q, 5000, seed=q)
    print(f"q={q:>2}: rate {rep.detection_rate:.3f}  predicted {rep.analytic_prediction:.3f}")

# %%
# Sparse non-Boolean functions are non-Boolean on at least 2/(k+2)^2 of the cube.

for law in ("uniform", "near_boolean"):
    rep = empirical_min_fraction(10, 8, 2000, seed=3, coefficient_law=law)
    print(law, rep.metrics["min_fraction"], ">=", rep.analytic_prediction)

# %%

audit = exhaustive_boolean_audit(3)
print(audit.metrics)
