# coding: utf-8

# # Uncertainty and closeness

# %%

import math

import numpy as np

from booleanity import DenseFunction, check_closeness_theorem, check_entropy_uncertainty, check_support_uncertainty
from booleanity.io import load_function

# %%
# delta and the constant function sit exactly on the entropy bound.

for f in (DenseFunction.delta(6), DenseFunction.constant(6), DenseFunction(np.random.default_rng(1).standard_normal(64))):
    e = check_entropy_uncertainty(f)
    s = check_support_uncertainty(f)
    print(f"entropy slack {e.slack:.3f}  support slack {s.support_product.slack:.1f}")

# %%
# The boundary instance: distance exactly eps, and still at least 1/4 of the cube is non-Boolean.

f = load_function("data/x1_plus_x2_normalized.txt")
print(check_closeness_theorem(f, math.sqrt(2), 1.0).to_dict())
