import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonegeo import (
    Budget,
    BudgetExceeded,
    CloneSpec,
    DomainError,
    Layer,
    OpTable,
    PointSet,
    alg_equal_at_arity,
    closure,
    closure_via_equalizers,
    constant_op,
    equalizer,
    generate_layer,
    is_algebraic,
    projection,
    separating_pair,
)
from clonegeo.constructions import (
    ModExpansionSpec,
    build_janov,
    build_Q,
    build_zmod_expansion,
    expansion_upper_bound,
    g_table,
    graph_of,
    scaled_product,
)
from clonegeo.geometry import equalizer_family

from conftest import lattice_spec, xor_spec


def brute_closure(layer, X):
    """Closure straight from the agreeing-pairs condition, pair by pair."""
    members = list(layer)
    keep = np.ones(X.base**X.n, dtype=bool)
    for f, g in itertools.combinations(members, 2):
        if np.all(f.table[X.mask] == g.table[X.mask]):
            keep &= f.table == g.table
    return PointSet(X.base, X.n, keep)


@pytest.fixture(scope="module")
def a3_layer():
    spec = build_zmod_expansion(ModExpansionSpec(2, 1, 3))
    return generate_layer(spec, 3, upper_bound=expansion_upper_bound(spec, 3))


def test_full_space_closed(xor):
    layer = generate_layer(xor, 2)
    full = PointSet.full(2, 2)
    assert closure(layer, full).closure == full
    assert closure_via_equalizers(layer, full) == full
    assert is_algebraic(layer, full)


def test_empty_set_with_two_constants():
    layer = generate_layer(CloneSpec(3, {}, constantive=True), 2)
    empty = PointSet.empty(3, 2)
    assert closure(layer, empty).closure == empty
    assert brute_closure(layer, empty) == empty


def test_projections_only():
    layer = generate_layer(CloneSpec(2, {}), 1)
    assert closure(layer, PointSet.from_tuples(2, 1, [(0,)])).closure == PointSet.full(2, 1)


def test_q_closures_on_z4(a3_layer):
    Q = build_Q(4, 3)
    a2 = generate_layer(build_zmod_expansion(ModExpansionSpec(2, 1, 2)), 3)
    assert closure(a2, Q).closure == PointSet.full(4, 3)
    cl = closure(a3_layer, Q).closure
    assert (1, 1, 1) not in cl
    assert closure_via_equalizers(a3_layer, Q) == cl


def test_separating_pair_q(a3_layer):
    f, g = separating_pair(a3_layer, build_Q(4, 3), (1, 1, 1))
    assert f == scaled_product(ModExpansionSpec(2, 1, 3))
    assert g == constant_op(4, 0, 3)


def test_separating_pair_projections():
    layer = generate_layer(CloneSpec(2, {}), 2)
    X = PointSet.from_tuples(2, 2, [(0, 0)])
    f, g = separating_pair(layer, X, (0, 1))
    # g is the first layer member with a partner, f its first partner
    assert g == projection(2, 2, 0) == layer[0]
    assert f == projection(2, 2, 1)


def test_separating_pair_absent_inside_closure(xor):
    layer = generate_layer(CloneSpec(2, {}), 1)
    assert separating_pair(layer, PointSet.from_tuples(2, 1, [(0,)]), (1,)) is None
    with pytest.raises(DomainError):
        separating_pair(layer, PointSet.from_tuples(2, 1, [(0,)]), (0,))


def test_arity_mismatch(xor):
    with pytest.raises(DomainError):
        closure(generate_layer(xor, 2), PointSet.full(2, 3))


def test_graphs_under_janov():
    assert is_algebraic(generate_layer(build_janov([2]), 3), graph_of(g_table(2)))
    assert not is_algebraic(generate_layer(build_janov([2]), 4), graph_of(g_table(3)))


def test_alg_equal_examples():
    spec = build_janov([2])
    v = alg_equal_at_arity(spec, spec, 2)
    assert v.equal and v.witness is None
    a2 = build_zmod_expansion(ModExpansionSpec(2, 1, 2))
    a3 = build_zmod_expansion(ModExpansionSpec(2, 1, 3))
    l2 = generate_layer(a2, 3)
    l3 = generate_layer(a3, 3, upper_bound=expansion_upper_bound(a3, 3))
    v = alg_equal_at_arity(l2, l3)
    assert not v.equal
    assert v.direction == "D"
    assert is_algebraic(l3, v.witness)
    assert closure(l2, v.witness).closure != v.witness
    v = alg_equal_at_arity(build_janov([2]), build_janov([3]), 4)
    assert not v.equal
    assert is_algebraic(generate_layer(build_janov([3]) if v.direction == "D" else build_janov([2]), 4), v.witness)


def test_equalizers_are_algebraic(lattice):
    layer = generate_layer(lattice, 2)
    for f, g in itertools.product(layer, repeat=2):
        assert is_algebraic(layer, equalizer(f, g))
    fam = equalizer_family(layer)
    assert len({E.key for E in fam}) == len(fam)


# random instances ------------------------------------------------------------

def random_layer(rng, base, n, cap=400):
    """Layer of a random small clone; clones that blow past ``cap`` are redrawn."""
    while True:
        gens = {}
        for i in range(int(rng.integers(0, 3))):
            k = int(rng.integers(1, 3))
            gens[f"g{i}"] = OpTable(base, k, rng.integers(0, base, base**k))
        spec = CloneSpec(base, gens, constantive=bool(rng.integers(2)))
        try:
            return generate_layer(spec, n, Budget(max_layer_size=cap))
        except BudgetExceeded:
            continue


def random_points(rng, base, n):
    return PointSet(base, n, rng.random(base**n) < rng.random())


def test_closure_matches_equalizers_seeded():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        base, n = int(rng.integers(1, 4)), int(rng.integers(1, 3))
        layer = random_layer(rng, base, n)
        X = random_points(rng, base, n)
        assert closure(layer, X).closure == closure_via_equalizers(layer, X)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_closure_operator_laws(seed):
    rng = np.random.default_rng(seed)
    base, n = int(rng.integers(1, 4)), int(rng.integers(1, 4))
    if base**n > 9 and n == 3:
        base = 2
    layer = random_layer(rng, base, n)
    X = random_points(rng, base, n)
    Y = X | random_points(rng, base, n)
    cx = closure(layer, X).closure
    assert X <= cx
    assert cx <= closure(layer, Y).closure
    assert closure(layer, cx).closure == cx
    if len(layer) <= 64:
        assert cx == brute_closure(layer, X)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_separating_pair_iff_outside(seed):
    rng = np.random.default_rng(seed)
    base, n = int(rng.integers(2, 4)), int(rng.integers(1, 3))
    layer = random_layer(rng, base, n)
    X = random_points(rng, base, n)
    cx = closure_via_equalizers(layer, X)
    for r in np.flatnonzero(~X.mask):
        pair = separating_pair(layer, X, int(r))
        assert (pair is None) == bool(cx.mask[r])
        if pair is not None:
            f, g = pair
            assert np.all(f.table[X.mask] == g.table[X.mask]) and f.table[r] != g.table[r]


def test_larger_clone_finer_geometry():
    rng = np.random.default_rng(7)
    small = generate_layer(xor_spec(), 2)
    big = generate_layer(CloneSpec(2, {"xor": OpTable(2, 2, [0, 1, 1, 0])}, constantive=True), 2)
    assert set(small) <= set(big)
    for _ in range(50):
        X = random_points(rng, 2, 2)
        assert closure(big, X).closure <= closure(small, X).closure


def test_layer_from_matrix_roundtrip():
    layer = generate_layer(lattice_spec(), 2)
    again = Layer(None, 2, layer.matrix[::-1], base=2)
    assert np.array_equal(again.matrix, layer.matrix)
