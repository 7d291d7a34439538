# %% [markdown]
# # Algebraic closure
# A point lies in the closure of X when every two layer members that agree
# on X also agree there. Grouping the layer by its values on X makes this
# one pass of min/max reductions.

# %%
import numpy as np

from clonegeo import CloneSpec, OpTable, PointSet, closure, closure_via_equalizers, generate_layer, separating_pair

spec = CloneSpec(3, {"m": OpTable(3, 2, [0, 0, 0, 0, 1, 1, 0, 1, 2])})
layer = generate_layer(spec, 2)
X = PointSet.from_tuples(3, 2, [(0, 1), (1, 2)])
result = closure(layer, X)
print(len(layer), result.classes, result.closure.tuples())

# %% [markdown]
# The same set from the other side: intersect every equalizer that contains X.

# %%
print(result.closure == closure_via_equalizers(layer, X))

# %% [markdown]
# Points left out come with a witness pair.

# %%
outside = (PointSet.full(3, 2) - result.closure).tuples()
f, g = separating_pair(layer, X, outside[0])
print(outside[0], f.tolist(), g.tolist())

# %% [markdown]
# Random sets and how much they grow.

# %%
rng = np.random.default_rng(0)
for _ in range(5):
    Y = PointSet(3, 2, rng.random(9) < 0.3)
    print(len(Y), "->", len(closure(layer, Y).closure))
