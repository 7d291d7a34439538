import itertools

import numpy as np
import pytest

from clonegeo import (
    BudgetExceeded,
    CloneSpec,
    DomainError,
    OpTable,
    PointSet,
    closure,
    constant_op,
    generate_layer,
    minor,
    projection,
    random_term,
)
from clonegeo.constructions import (
    D_m,
    ModExpansionSpec,
    Monomial,
    OplusSpec,
    build_B0,
    build_janov,
    build_oplus,
    build_phi_spec,
    build_Q,
    build_zmod_expansion,
    check_extend_restriction,
    check_fprop,
    dot_table,
    enumerate_Cd_tables,
    enumerate_F,
    enumerate_F_prime,
    essential_restriction,
    g_table,
    graph_of,
    in_F,
    in_F_prime,
    is_absorbing,
    is_prime,
    lift,
    monomial_shape_ok,
    monomial_table,
    phi_closure,
    phi_layer,
    phi_membership,
    recognize_expansion,
    scaled_product,
)
from clonegeo.verify import affine_z4

from conftest import add_mod, xor_spec

Z4 = ModExpansionSpec(2, 1, 2)


# Z_{np^2} expansions -----------------------------------------------------------

def test_expansion_spec_checks():
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(DomainError):
        ModExpansionSpec(4, 1, 2)
    with pytest.raises(DomainError):
        ModExpansionSpec(2, 1, 1)
    assert ModExpansionSpec(3, 2, 2).size == 18


def test_scaled_product_values():
    f2 = scaled_product(Z4)
    assert f2(1, 1) == 2 and f2(3, 3) == 2 and f2(2, 1) == 0
    assert scaled_product(ModExpansionSpec(2, 1, 3))(1, 1, 1) == 2


def test_build_expansion():
    spec = build_zmod_expansion(Z4)
    assert spec.base == 4 and spec.constantive
    assert [name for name, _ in spec.generators] == ["+", "-", "0", "f2"]
    assert spec["-"].tolist() == [0, 3, 2, 1]
    assert recognize_expansion(spec) == Z4
    assert recognize_expansion(xor_spec()) is None


def test_is_absorbing():
    assert is_absorbing(scaled_product(Z4))
    assert not is_absorbing(add_mod(4))
    assert is_absorbing(constant_op(4, 0))
    with pytest.raises(DomainError):
        is_absorbing(add_mod(4), 4)


def test_monomial_shape():
    assert monomial_shape_ok(Monomial(2, {0: 1, 1: 1}), Z4)
    assert not monomial_shape_ok(Monomial(1, {0: 1, 1: 1}), Z4)
    assert monomial_shape_ok(Monomial(3, {0: 1}), Z4)
    assert monomial_shape_ok(Monomial(3), Z4)
    assert not monomial_shape_ok(Monomial(2, {0: 3}), Z4)
    with pytest.raises(DomainError):
        Monomial(1, {0: 0})


def test_monomial_table():
    t = monomial_table(Monomial(2, {0: 2}), 4, 1)
    assert t.tolist() == [0, 2, 0, 2]


def test_cd_census_arity_three():
    tables = enumerate_Cd_tables(Z4, 3)
    absorbing = [t for t in tables if is_absorbing(t)]
    assert absorbing == [constant_op(4, 0, 3)]


def test_cd_unary_contents():
    tables = enumerate_Cd_tables(Z4, 1)
    x = np.arange(4)
    expected = {
        tuple((c + a * x + 2 * b * x * x) % 4)
        for c in range(4) for a in range(4) for b in range(2)
    }
    assert {tuple(t.tolist()) for t in tables} == expected


@pytest.mark.parametrize("k", [1, 2])
def test_layer_inside_cd(k):
    layer = generate_layer(build_zmod_expansion(Z4), k)
    assert set(layer) <= enumerate_Cd_tables(Z4, k)


def test_cd_envelope():
    with pytest.raises(BudgetExceeded):
        enumerate_Cd_tables(Z4, 5)


def test_build_Q():
    assert len(build_Q(4, 3)) == 37
    assert len(build_Q(Z4, 2)) == 7
    assert (1, 1, 1) not in build_Q(4, 3)
    with pytest.raises(DomainError):
        build_Q(4, 1)


# one-point absorbing extension -------------------------------------------------

def test_dot_cases():
    dot = dot_table(4, one=1)
    e = 4
    assert dot(e, e) == 1
    for x in range(4):
        assert dot(x, e) == x and dot(e, x) == x
        for y in range(4):
            assert dot(x, y) == e


def test_lift():
    f = add_mod(4)
    g = lift(f)
    assert g(1, 2) == 3 and g(4, 1) == 4 and g(2, 4) == 4


def test_build_oplus():
    base = affine_z4()
    ext = build_oplus(OplusSpec(base))
    assert ext.base == 5 and ext.constantive
    assert ext["dot"] == dot_table(4)
    assert ext["++"] == lift(base["+"])
    with pytest.raises(DomainError):
        build_oplus(xor_spec())
    assert not OplusSpec(CloneSpec(2, {}, constantive=True)).hypothesis_ok


def test_fprop_examples():
    base = affine_z4()
    layer2 = generate_layer(base, 2)
    assert check_fprop(lift(base["+"]), base, layer2)
    assert check_fprop(dot_table(4), base, layer2)
    bad = np.full(25, 4, dtype=np.uint8)
    bad[0] = 1
    assert not check_fprop(OpTable(5, 2, bad), base, layer2)
    assert not check_extend_restriction(OpTable(5, 2, bad))
    assert check_extend_restriction(lift(base["+"]))
    assert check_extend_restriction(constant_op(5, 4))
    with pytest.raises(DomainError):
        check_fprop(lift(base["-"]), base, layer2)


def test_sampled_terms_pass_both_checks():
    base = affine_z4()
    ext = build_oplus(base)
    layers = {k: generate_layer(base, k) for k in (1, 2, 3)}
    rng = np.random.default_rng(5)
    for _ in range(500):
        k = int(rng.integers(1, 4))
        f = random_term(ext, k, 4, rng)
        assert check_fprop(f, base, layers[k])
        assert check_extend_restriction(f)


def test_build_B0_counts():
    B = build_Q(4, 3)
    assert len(build_B0(B, 3, 5)) == 98
    empty = build_B0(PointSet.empty(4, 3))
    assert len(empty) == 125 - 64
    assert build_B0(PointSet.full(4, 3)) == PointSet.full(5, 3)


# the g_i family --------------------------------------------------------------

def test_D_m():
    assert D_m(2).tuples() == [(1, 2), (2, 1)]
    assert len(D_m(1)) == 0
    assert [len(D_m(m)) for m in range(2, 6)] == [2, 3, 4, 5]


def test_g_tables():
    g2 = g_table(2)
    assert np.flatnonzero(g2.table).tolist() == [5, 7]
    assert g_table(3)(2, 2, 1) == 1 and g_table(3)(2, 2, 2) == 0
    with pytest.raises(DomainError):
        g_table(1)
    with pytest.raises(DomainError):
        build_janov([1, 2])
    spec = build_janov([3, 2, 2])
    assert [name for name, _ in spec.generators] == ["g2", "g3"] and not spec.constantive


def test_F_membership():
    assert in_F(g_table(2)) and in_F(g_table(4))
    assert in_F(constant_op(3, 0, 2))
    assert not in_F(constant_op(3, 1, 2))
    assert not in_F(projection(3, 2, 0))
    assert in_F_prime(projection(3, 2, 0))
    assert in_F_prime(minor(g_table(2), [0, 2], 3))
    assert in_F_prime(minor(g_table(2), [0, 0], 1))
    assert not in_F_prime(constant_op(3, 1, 2))
    assert not in_F_prime(OpTable(3, 1, [0, 1, 1]))
    with pytest.raises(DomainError):
        in_F(projection(2, 1, 0))


def test_essential_restriction():
    h = essential_restriction(minor(g_table(2), [2, 0], 3))
    assert h == minor(g_table(2), [1, 0], 2)
    assert essential_restriction(constant_op(3, 0, 2)) == constant_op(3, 0, 1)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 4), (3, 8)])
def test_enumerate_F(n, count):
    F = enumerate_F(n)
    assert len(F) == count and all(in_F(f) for f in F)


def test_F_prime_contains_F_and_projections():
    Fp = enumerate_F_prime(3)
    assert set(enumerate_F(3)) <= Fp
    assert all(projection(3, 3, k) in Fp for k in range(3))
    assert all(in_F_prime(f) for f in Fp)


def test_graph_of():
    G = graph_of(g_table(2))
    assert len(G) == 9
    assert (1, 2, 1) in G and (1, 1, 1) not in G


# extension by a free point ---------------------------------------------------

def test_phi_membership():
    base = xor_spec()
    layer = generate_layer(base, 2)
    f = OpTable(3, 2, [0, 1, 2, 1, 0, 2, 2, 2, 0])
    assert phi_membership(base, layer, f)
    g = OpTable(3, 2, [0, 0, 2, 0, 1, 2, 2, 2, 0])
    assert not phi_membership(base, layer, g)
    with pytest.raises(DomainError):
        phi_membership(base, layer, lift(projection(2, 1, 0)))


def test_phi_layer_count():
    layer = generate_layer(xor_spec(), 2)
    full = phi_layer(layer)
    assert len(full) == len(layer) * 3 ** (9 - 4) == 972
    assert all(phi_membership(2, layer, f) for f in full)


def test_phi_spec_presents_layer():
    layer = generate_layer(xor_spec(), 1)
    spec = build_phi_spec(layer)
    assert set(generate_layer(spec, 1)) == set(phi_layer(layer))


def test_phi_closure_examples():
    base = xor_spec()
    layer = generate_layer(base, 2)
    full = PointSet.full(3, 2)
    assert phi_closure(base, full) == full
    closed_part = PointSet.from_tuples(3, 2, [(0, 0), (1, 1)])
    B = closed_part | PointSet.from_tuples(3, 2, [(2, 0)])
    assert closure(layer, PointSet.from_tuples(2, 2, [(0, 0), (1, 1)])).closure == PointSet.from_tuples(2, 2, [(0, 0), (1, 1)])
    assert phi_closure(layer, B) == B
    open_part = PointSet.from_tuples(3, 2, [(0, 1), (1, 0)])
    assert phi_closure(layer, open_part) != open_part
    with pytest.raises(DomainError):
        phi_closure(layer, PointSet.full(2, 2))


def test_phi_closure_exhaustive_small():
    for base in (xor_spec(), CloneSpec(2, {"and": OpTable(2, 2, [0, 0, 0, 1])})):
        layer = generate_layer(base, 1)
        full = phi_layer(layer)
        for bits in itertools.product([False, True], repeat=3):
            B = PointSet(3, 1, np.array(bits))
            assert phi_closure(layer, B) == closure(full, B).closure
