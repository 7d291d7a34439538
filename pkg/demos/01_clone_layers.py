# %% [markdown]
# # Clone layers
# A clone is stored one arity at a time. The n-ary layer is the set of all
# n-ary tables obtained from projections by plugging members into generators.

# %%
import numpy as np

from clonegeo import CloneSpec, OpTable, find_malcev, generate_layer, term_oracle

xor = CloneSpec(2, {"xor": OpTable(2, 2, [0, 1, 1, 0])})
for n in (1, 2, 3):
    layer = generate_layer(xor, n)
    print(n, len(layer), [f.tolist() for f in layer][:4])

# %% [markdown]
# The slow oracle enumerates composition trees by height. At saturation it
# must agree with the layer.

# %%
lattice = CloneSpec(2, {"and": OpTable(2, 2, [0, 0, 0, 1]), "or": OpTable(2, 2, [0, 1, 1, 1])})
for n in (1, 2, 3):
    print(n, set(generate_layer(lattice, n)) == term_oracle(lattice, n))

# %% [markdown]
# Layers are rows of a uint8 matrix, sorted, so reductions are plain numpy.

# %%
layer = generate_layer(lattice, 3)
print(layer.matrix.shape, np.bincount(layer.matrix.sum(axis=1)))

# %%
xs = np.arange(3)
plus3 = CloneSpec(3, {"+": OpTable(3, 2, np.add.outer(xs, xs).ravel() % 3)})
d = find_malcev(plus3)
print("Mal'cev table:", d.tolist())
print("meet has one:", find_malcev(CloneSpec(2, {"and": OpTable(2, 2, [0, 0, 0, 1])})) is not None)
