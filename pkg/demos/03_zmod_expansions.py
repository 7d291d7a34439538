# %% [markdown]
# # Expanded groups on Z_4
# The clones A_d add the scaled product 2*x_1*...*x_d to the group Z_4.
# Q is the set of triples with a zero coordinate. A_2 closes Q to the whole
# cube, while A_3 keeps (1,1,1) out.

# %%
from clonegeo import closure, is_algebraic, separating_pair
from clonegeo.constructions import ModExpansionSpec, build_Q, enumerate_Cd_tables, is_absorbing
from clonegeo.verify import zmod_layer

Q = build_Q(4, 3)
low = zmod_layer(2, 1, 2, 3)
high = zmod_layer(2, 1, 3, 3)
print("layer sizes", len(low), len(high))
print("A_2 closure", len(closure(low, Q).closure))
print("A_3 closure", len(closure(high, Q).closure), (1, 1, 1) in closure(high, Q).closure)

# %%
f, g = separating_pair(high, Q, (1, 1, 1))
print("f(1,1,1) =", f(1, 1, 1), " g(1,1,1) =", g(1, 1, 1))

# %% [markdown]
# The A_3 layer is generated under a ceiling: every member is a sum of
# monomials of a restricted shape, and those sums are cheap to list. Among
# them at arity 3 for d = 2, only zero is absorbing.

# %%
tables = enumerate_Cd_tables(ModExpansionSpec(2, 1, 2), 3)
print(len(tables), sum(is_absorbing(t) for t in tables))
print("A_3-closed Q-closure algebraic under A_2:", is_algebraic(low, closure(high, Q).closure))
