"""One-point extension of a constantive clone by an absorbing element.

The carrier ``A = {0..b-1}`` grows by the index ``b``, written ``e`` below.
Each operation f of the base clone lifts to ``f+``, which agrees with f on
A-tuples and returns ``e`` everywhere else.  A binary operation ``dot``
glues the two parts together.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..engine import CloneSpec, Layer, layer_contains
from ..errors import DomainError
from ..tables import OpTable, PointSet, projection, restrict_to, subcarrier_mask

__all__ = [
    "OplusSpec",
    "lift",
    "dot_table",
    "build_oplus",
    "check_fprop",
    "check_extend_restriction",
    "embed_points",
    "build_B0",
]


@dataclass(frozen=True)
class OplusSpec:
    base: CloneSpec
    one: int = 0

    def __post_init__(self):
        if not self.base.constantive:
            raise DomainError("the base clone must be constantive")
        if not 0 <= self.one < self.base.base:
            raise DomainError("the distinguished element must lie in the base carrier")

    @property
    def size(self) -> int:
        return self.base.base + 1

    @property
    def hypothesis_ok(self) -> bool:
        # the separation results for this construction need at least four base elements
        return self.base.base >= 4


def lift(f: OpTable) -> OpTable:
    b = f.base
    table = np.full((b + 1) ** f.arity, b, dtype=np.uint8)
    table[subcarrier_mask(b + 1, b, f.arity)] = f.table
    return OpTable(b + 1, f.arity, table)


def dot_table(b: int, one: int = 0) -> OpTable:
    e = b
    table = np.empty((b + 1, b + 1), dtype=np.uint8)
    table[:b, :b] = e
    table[e, e] = one
    table[:b, e] = np.arange(b)
    table[e, :b] = np.arange(b)
    return OpTable(b + 1, 2, table.ravel())


def build_oplus(spec: OplusSpec | CloneSpec, one: int = 0) -> CloneSpec:
    """Generators of the extended clone.

    Besides the lifted base generators and ``dot`` this includes the lifted
    base constants and the lifted binary projection; both are lifts of base
    members, and with them every lifted base member is generated.
    """
    if isinstance(spec, CloneSpec):
        spec = OplusSpec(spec, one)
    base = spec.base
    b = base.base
    gens: dict[str, OpTable] = {}
    for name, op in base.generators:
        gens[f"{name}+"] = lift(op)
    for c in base.constants(1):
        gens[f"c{int(c.table[0])}+"] = lift(c)
    gens["p+"] = lift(projection(b, 2, 0))
    gens["dot"] = dot_table(b, spec.one)
    return CloneSpec(b + 1, gens, constantive=True)


def check_fprop(f: OpTable, base: CloneSpec | int, base_layer: Layer) -> bool:
    """Is f on A-tuples either constantly ``e`` or a member of the base layer?"""
    b = base.base if isinstance(base, CloneSpec) else int(base)
    if f.base != b + 1:
        raise DomainError("operation does not live on the extended carrier")
    if base_layer.n != f.arity or base_layer.base != b:
        raise DomainError("base layer does not match the operation's arity")
    part = restrict_to(f, b)
    if np.all(part == b):
        return True
    if np.any(part == b):
        return False
    return layer_contains(base_layer, OpTable(b, f.arity, part))


def check_extend_restriction(f: OpTable, b: int | None = None) -> bool:
    """The A-tuples sent to ``e`` are either none or all of them."""
    b = f.base - 1 if b is None else b
    hits = restrict_to(f, b) == b
    return bool(hits.all() or not hits.any())


def embed_points(B: PointSet, size: int) -> PointSet:
    """The same tuples, re-ranked in a larger carrier."""
    if size < B.base:
        raise DomainError("target carrier is smaller")
    mask = np.zeros(size**B.n, dtype=bool)
    mask[subcarrier_mask(size, B.base, B.n)] = B.mask
    return PointSet(size, B.n, mask)


def build_B0(B: PointSet, k: int | None = None, oplus_size: int | None = None) -> PointSet:
    """B together with every k-tuple that involves the new element."""
    k = B.n if k is None else k
    if k != B.n:
        raise DomainError("B has the wrong arity")
    size = B.base + 1 if oplus_size is None else oplus_size
    outside = ~subcarrier_mask(size, B.base, k)
    return embed_points(B, size) | PointSet(size, k, outside)
