"""Extension of a clone on A to A plus a fresh point u.

The extended clone consists of all operations whose restriction to A-tuples
belongs to the base clone; values on tuples involving u are unconstrained.
A set B is algebraic for the extension iff its A-part is algebraic for the
base clone, which gives :func:`phi_closure` in closed form.
"""

from __future__ import annotations

import numpy as np

from ..engine import Budget, CloneSpec, Layer, generate_layer, layer_contains
from ..errors import BudgetExceeded, DomainError
from ..geometry import closure
from ..tables import OpTable, PointSet, restrict_to, subcarrier_mask, tuple_grid
from .oplus import embed_points

__all__ = ["phi_membership", "phi_layer", "phi_closure", "build_phi_spec"]


def phi_membership(base: CloneSpec | int, base_layer: Layer, f: OpTable) -> bool:
    b = base.base if isinstance(base, CloneSpec) else int(base)
    if f.base != b + 1:
        raise DomainError("operation does not live on the extended carrier")
    if base_layer.n != f.arity or base_layer.base != b:
        raise DomainError("base layer does not match the operation's arity")
    part = restrict_to(f, b)
    if np.any(part == b):
        return False
    return layer_contains(base_layer, OpTable(b, f.arity, part))


def phi_layer(base_layer: Layer, budget: Budget | None = None) -> Layer:
    """Every n-ary operation on the extended carrier whose A-part is in the base layer."""
    budget = budget or Budget()
    b, n = base_layer.base, base_layer.n
    size = b + 1
    inside = subcarrier_mask(size, b, n)
    free = int((~inside).sum())
    total = len(base_layer) * size**free
    if total > budget.max_layer_size:
        raise BudgetExceeded(f"extended layer would have {total} members", partial_size=0)
    fills = tuple_grid(size, free)
    matrix = np.empty((total, size**n), dtype=np.uint8)
    for i, row in enumerate(base_layer.matrix):
        block = matrix[i * len(fills): (i + 1) * len(fills)]
        block[:, inside] = row
        block[:, ~inside] = fills
    return Layer(None, n, matrix, base=size)


def phi_closure(base: CloneSpec | Layer, B: PointSet, n: int | None = None, budget: Budget | None = None) -> PointSet:
    """Closure of B for the extended clone: the base closure of its A-part, plus the rest of B."""
    n = B.n if n is None else n
    if n != B.n:
        raise DomainError("B has the wrong arity")
    if isinstance(base, Layer):
        layer = base
    else:
        layer = generate_layer(base, n, budget)
    b = layer.base
    if B.base != b + 1 or layer.n != n:
        raise DomainError("B does not live over the extended carrier")
    inside = subcarrier_mask(b + 1, b, n)
    a_part = PointSet(b, n, B.mask[inside])
    closed = embed_points(closure(layer, a_part).closure, b + 1)
    return closed | PointSet(b + 1, n, B.mask & ~inside)


def build_phi_spec(base_layer: Layer, budget: Budget | None = None) -> CloneSpec:
    """A presentation of the extension that is exact up to the base layer's arity.

    The generators are all members of the extended layer at that arity; a
    clone's n-ary part generates all of its parts of arity at most n.
    """
    layer = phi_layer(base_layer, budget)
    gens = {f"phi{i}": op for i, op in enumerate(layer)}
    return CloneSpec(layer.base, gens, constantive=False)
