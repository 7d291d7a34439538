# %% [markdown]
# # A point with no constraints
# Extend a clone on A by a point u and allow any values on tuples involving
# u. A set is closed for the extension iff its A-part is closed for the base,
# so the closure has a formula. Check it against brute force on all subsets.

# %%
import numpy as np

from clonegeo import CloneSpec, OpTable, PointSet, closure, generate_layer
from clonegeo.constructions import phi_closure, phi_layer

base = CloneSpec(2, {"xor": OpTable(2, 2, [0, 1, 1, 0])})
layer = generate_layer(base, 2)
full = phi_layer(layer)
print(len(layer), len(full))

# %%
mismatch = 0
for bits in range(512):
    B = PointSet(3, 2, ((bits >> np.arange(9)) & 1).astype(bool))
    mismatch += phi_closure(layer, B) != closure(full, B).closure
print("mismatches:", mismatch)
