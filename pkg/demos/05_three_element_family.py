# %% [markdown]
# # The g_i family on {0, 1, 2}
# g_i returns 1 on tuples with a single 1 and all other entries 2. The graph
# of g_i is algebraic for the clone generated by {g_j : j in I} exactly when
# i is in I.

# %%
from clonegeo import alg_equal_at_arity, generate_layer, is_algebraic
from clonegeo.constructions import build_janov, enumerate_F_prime, g_table, graph_of

for I in ([], [2], [3], [2, 3]):
    row = [is_algebraic(generate_layer(build_janov(I), i + 1), graph_of(g_table(i))) for i in (2, 3)]
    print(I, row)

# %%
v = alg_equal_at_arity(build_janov([2]), build_janov([3]), 4)
print(v.equal, v.direction, len(v.witness))

# %% [markdown]
# Every generated member sits in F', the projections plus the 0/1 tables
# supported on the g-pattern.

# %%
for n in (1, 2, 3):
    print(n, len(enumerate_F_prime(n)), len(generate_layer(build_janov([2, 3]), n)))
