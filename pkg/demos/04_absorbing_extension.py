# %% [markdown]
# # Adding an absorbing point
# Every base operation is lifted to send tuples touching the new point e to
# e. A binary `dot` swaps the roles of A and e. Random terms of the result
# behave on A-tuples either like a base member or like the constant e.

# %%
import numpy as np

from clonegeo import generate_layer, random_term
from clonegeo.constructions import build_oplus, check_extend_restriction, check_fprop, dot_table
from clonegeo.verify import affine_z4, run_case

base = affine_z4()
ext = build_oplus(base)
print(dot_table(4).table.reshape(5, 5))

# %%
rng = np.random.default_rng(1)
layers = {k: generate_layer(base, k) for k in (1, 2)}
kinds = {"base member": 0, "constant e": 0}
for _ in range(1000):
    k = int(rng.integers(1, 3))
    f = random_term(ext, k, 4, rng)
    assert check_fprop(f, base, layers[k]) and check_extend_restriction(f)
    on_a = f.table[np.all(np.indices((5,) * k).reshape(k, -1).T < 4, axis=1)]
    kinds["constant e" if np.all(on_a == 4) else "base member"] += 1
print(kinds)

# %% [markdown]
# Lifted separating pairs carry over to the extension.

# %%
print(run_case("prop8")["evidence"])
