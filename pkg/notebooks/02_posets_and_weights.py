# %% [markdown]
# # Poset weights
#
# A word is an s x r matrix. Under the NRT metric each column is a chain and
# the weight of a column is the depth of its lowest nonzero entry, counted
# from the top. The bottleneck poset glues all columns at one row.

# %%
import numpy as np

from posetcode import BottleneckShape, bottleneck, bottleneck_weight, chain_union, nrt_weight, p_weight
from posetcode.poset import flatten, flatten_chain

A = np.array([[0, 0, 0],
              [2, 0, 1],
              [0, 0, 3]])
print(nrt_weight(A))

P = chain_union(3, 3)
print(p_weight(P, flatten_chain(A)))

# %% [markdown]
# With b_row = 2 the second row must be constant. It becomes a single vertex
# that sits below every vertex of the top row.

# %%
shape = BottleneckShape(s=3, r=3, b_row=2)
U = bottleneck(shape)
print(U.hasse_edges())

B = np.array([[0, 1, 0],
              [4, 4, 4],
              [0, 0, 0]])
print(bottleneck_weight(B, shape), p_weight(U, flatten(B, shape)))

# %% [markdown]
# The fast path and the lower-ideal definition agree on random words.

# %%
rng = np.random.default_rng(0)
bad = 0
for _ in range(500):
    C = rng.integers(0, 5, size=(3, 3)) * (rng.random((3, 3)) < 0.4)
    C[1] = C[1, 0]
    bad += bottleneck_weight(C, shape) != p_weight(U, flatten(C, shape))
print("mismatches:", bad)

print(U.to_dot())
