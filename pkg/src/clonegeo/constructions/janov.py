"""The operations g_i on {0,1,2} and the function families F and F'.

``g_i`` returns 1 exactly on the i-tuples with one entry 1 and all other
entries 2, and 0 elsewhere.  Distinct index sets I give clones with
distinct algebraic geometries.
"""

from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from ..engine import CloneSpec
from ..errors import DomainError
from ..tables import OpTable, PointSet, essential_coordinates, minor, projection, tuple_grid

__all__ = [
    "D_m",
    "g_table",
    "build_janov",
    "in_F",
    "in_F_prime",
    "essential_restriction",
    "enumerate_F",
    "enumerate_F_prime",
    "graph_of",
    "is_projection",
]

Z = 3


def _D_mask(m: int) -> np.ndarray:
    grid = tuple_grid(Z, m)
    if m < 2:
        return np.zeros(len(grid), dtype=bool)
    return (np.sum(grid == 1, axis=1) == 1) & (np.sum(grid == 2, axis=1) == m - 1)


def D_m(m: int) -> PointSet:
    if m < 1:
        raise DomainError("m must be positive")
    return PointSet(Z, m, _D_mask(m))


def g_table(i: int) -> OpTable:
    if i < 2:
        raise DomainError("g_i is defined for i >= 2")
    return OpTable(Z, i, _D_mask(i).astype(np.uint8))


def build_janov(I: Iterable[int]) -> CloneSpec:
    I = sorted(set(int(i) for i in I))
    if any(i < 2 for i in I):
        raise DomainError("indices must be at least 2")
    return CloneSpec(Z, {f"g{i}": g_table(i) for i in I}, constantive=False)


def _check_z(f: OpTable):
    if f.base != Z:
        raise DomainError("F and F' live on the 3-element carrier")


def in_F(f: OpTable) -> bool:
    _check_z(f)
    if np.any(f.table > 1):
        return False
    return not np.any((f.table == 1) & ~_D_mask(f.arity))


def is_projection(f: OpTable) -> bool:
    return any(
        np.array_equal(f.table, projection(f.base, f.arity, k).table) for k in range(f.arity)
    )


def essential_restriction(f: OpTable) -> OpTable:
    """f as a function of its essential arguments only (unary if it has none)."""
    ess = sorted(essential_coordinates(f))
    cube = f.table.reshape((f.base,) * f.arity)
    index = tuple(slice(None) if i in ess else 0 for i in range(f.arity))
    part = cube[index]
    if not ess:
        return OpTable(f.base, 1, np.full(f.base, part, dtype=np.uint8))
    return OpTable(f.base, len(ess), part.ravel())


def in_F_prime(f: OpTable) -> bool:
    _check_z(f)
    return is_projection(f) or in_F(essential_restriction(f))


def enumerate_F(n: int) -> list[OpTable]:
    """All n-ary members of F: one per subset of D_n."""
    points = np.flatnonzero(_D_mask(n))
    out = []
    for r in range(len(points) + 1):
        for chosen in itertools.combinations(points, r):
            table = np.zeros(Z**n, dtype=np.uint8)
            table[list(chosen)] = 1
            out.append(OpTable(Z, n, table))
    return out


def enumerate_F_prime(n: int) -> set[OpTable]:
    """Projections plus members of F composed with increasing coordinate selections."""
    out = {projection(Z, n, k) for k in range(n)}
    for r in range(1, n + 1):
        F_r = enumerate_F(r)
        for coords in itertools.combinations(range(n), r):
            out.update(minor(h, coords, n) for h in F_r)
    return out


def graph_of(f: OpTable) -> PointSet:
    """``{(x, f(x))}`` as a subset of ``A^(arity+1)``."""
    grid = tuple_grid(f.base, f.arity + 1)
    head = grid[:, :-1].astype(np.int64) @ (f.base ** np.arange(f.arity - 1, -1, -1))
    return PointSet(f.base, f.arity + 1, f.table[head] == grid[:, -1])
