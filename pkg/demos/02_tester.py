# coding: utf-8

# # Testing Booleanity of a sparse function
#
# The tester makes sample_count(k, 2, eps) uniform queries and rejects on the
# first value outside {-1, 1}.

# %%

from booleanity import DenseOracle, JuntaOracle, sample_ck, sample_count, test_booleanity, to_dense
from booleanity.io import load_function

# %%

for k in (1, 4, 16, 64):
    print(f"k={k:>2}: {sample_count(k, 2, 0.01)} queries at eps=0.01")

# %%
# A random 3-direction Boolean junta: sparsity 8, always accepted.

oracle = JuntaOracle(20, [0b101, 0b11000, 1 << 19], [1, -1, -1, 1, 1, 1, -1, -1])
print(test_booleanity(oracle, 8, 0.05, seed=1))

# %%
# x1 + x2 takes values 2, 0, 0, -2, so the first query is a witness.

f = to_dense(load_function("data/x1_plus_x2.txt"))
print(test_booleanity(DenseOracle(f), 2, 0.05, seed=1))

# %%
# C_k instances are non-Boolean on exactly 1/k of the cube.

rejected = sum(not test_booleanity(sample_ck(16, 20, s), 16, 0.05, seed=s).accepted for s in range(1000))
print("C_16 rejection rate:", rejected / 1000)
