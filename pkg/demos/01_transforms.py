# coding: utf-8

# # Fourier transforms on the hypercube
#
# Points are ints: bit j is coordinate j+1, clear means +1 and set means -1.

# %%

import numpy as np

from booleanity import DenseFunction, SparseFunction, point_from_bits, to_dense, wht_forward, wht_inverse
from booleanity.wht import convolve_fast, convolve_naive

# %%
# A sparse polynomial evaluated on all 8 points, then transformed back.

f = SparseFunction(3, {point_from_bits("100"): 1.0, point_from_bits("011"): -2.0,
                       point_from_bits("110"): 3.5})
table = to_dense(f)
print("values:", table.values)
print("spectrum:", wht_forward(table).values)

# %%
# The forward transform carries the 1/2^n factor, so the constant 1 maps to delta.

print(wht_forward(DenseFunction.constant(4)).values)

# %%
# Convolution becomes a pointwise product (times 2^n) after transforming.

rng = np.random.default_rng(0)
g = DenseFunction(rng.standard_normal(64))
h = DenseFunction(rng.standard_normal(64))
conv = convolve_fast(g, h)
print("fast vs naive:", np.max(np.abs(conv.values - convolve_naive(g, h).values)))
print("identity gap:", np.max(np.abs(wht_forward(conv).values - 64 * wht_forward(g).values * wht_forward(h).values)))

# %%

print("roundtrip:", np.max(np.abs(wht_inverse(wht_forward(g)).values - g.values)))
