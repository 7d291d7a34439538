"""Algebraic closure of point sets with respect to a clone layer.

A point ``a`` lies in the closure of ``X`` iff every two layer members that
agree on ``X`` also agree at ``a``.  :func:`closure` decides this by grouping
the layer by restriction to ``X``; :func:`closure_via_equalizers` intersects
the equalizers that contain ``X`` and is kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .engine import Budget, CloneSpec, Layer, generate_layer
from .errors import DomainError
from .tables import OpTable, PointSet, rank_tuple

__all__ = [
    "ClosureResult",
    "EquivalenceVerdict",
    "closure",
    "closure_via_equalizers",
    "is_algebraic",
    "separating_pair",
    "alg_equal_at_arity",
    "equalizer_family",
]


@dataclass(frozen=True)
class ClosureResult:
    closure: PointSet
    classes: int
    layer_size: int


@dataclass(frozen=True)
class EquivalenceVerdict:
    """Outcome of comparing two clones' algebraic sets at one arity.

    ``direction`` is ``"C"`` when ``witness`` is algebraic for the first
    clone but not closed under the second, ``"D"`` for the converse.
    """

    arity: int
    equal: bool
    witness: PointSet | None = None
    direction: Literal["C", "D"] | None = None


def _check(layer: Layer, X: PointSet):
    if (X.base, X.n) != (layer.base, layer.n):
        raise DomainError(
            f"point set in {X.base}^{X.n} does not match a layer on {layer.base} elements, arity {layer.n}"
        )


def _classes(layer: Layer, X: PointSet) -> tuple[np.ndarray, int]:
    """Label each layer member by its restriction to X."""
    M = layer.matrix
    if len(M) == 0:
        return np.zeros(0, dtype=np.intp), 0
    sig = np.ascontiguousarray(M[:, X.mask])
    if sig.shape[1] == 0:
        return np.zeros(len(M), dtype=np.intp), 1
    view = sig.view(np.dtype((np.void, sig.shape[1]))).ravel()
    _, labels = np.unique(view, return_inverse=True)
    labels = labels.ravel()
    return labels, int(labels.max()) + 1


def closure(layer: Layer, X: PointSet) -> ClosureResult:
    _check(layer, X)
    M = layer.matrix
    labels, k = _classes(layer, X)
    if len(M) == 0:
        return ClosureResult(PointSet.full(X.base, X.n), 0, 0)
    order = np.argsort(labels, kind="stable")
    starts = np.flatnonzero(np.r_[True, np.diff(labels[order]) != 0])
    sorted_rows = M[order]
    lo = np.minimum.reduceat(sorted_rows, starts, axis=0)
    hi = np.maximum.reduceat(sorted_rows, starts, axis=0)
    mask = np.all(lo == hi, axis=0)
    return ClosureResult(PointSet(X.base, X.n, mask), k, len(M))


def closure_via_equalizers(layer: Layer, X: PointSet) -> PointSet:
    """Intersection of all equalizers of layer members that contain X."""
    _check(layer, X)
    M = layer.matrix
    acc = np.ones(M.shape[1], dtype=bool)
    for i in range(len(M)):
        eq = M == M[i]
        holds = np.all(eq[:, X.mask], axis=1)
        acc &= np.all(eq[holds], axis=0)
    return PointSet(X.base, X.n, acc)


def is_algebraic(layer: Layer, X: PointSet) -> bool:
    return closure(layer, X).closure == X


def separating_pair(layer: Layer, X: PointSet, a) -> tuple[OpTable, OpTable] | None:
    """Two members agreeing on X but not at ``a``, or None if ``a`` is in the closure.

    Ties are broken by layer order: the smaller member ``g`` is the first one
    that has such a partner, ``f`` is its first partner.  Returned as ``(f, g)``.
    """
    _check(layer, X)
    r = a if isinstance(a, (int, np.integer)) else rank_tuple(X.base, a)
    r = int(r)
    if X.mask[r]:
        raise DomainError("the point already lies in X")
    labels, k = _classes(layer, X)
    vals = layer.matrix[:, r]
    # within each class, the value at a of its first member
    first = np.full(k, len(labels), dtype=np.intp)
    np.minimum.at(first, labels, np.arange(len(labels)))
    differs = vals != vals[first[labels]]
    if not differs.any():
        return None
    bad_classes = np.unique(labels[differs])
    lo = int(first[bad_classes].min())
    partners = np.flatnonzero((labels == labels[lo]) & (vals != vals[lo]))
    return layer[int(partners[0])], layer[lo]


def equalizer_family(layer: Layer) -> list[PointSet]:
    """Distinct equalizers of member pairs, in order of first pair ``(i, j)``, ``i <= j``."""
    M = layer.matrix
    seen: set[bytes] = set()
    out = []
    for i in range(len(M)):
        eq = M[i:] == M[i]
        packed = np.ascontiguousarray(np.packbits(eq, axis=1))
        view = packed.view(np.dtype((np.void, packed.shape[1]))).ravel()
        _, idx = np.unique(view, return_index=True)
        for j in np.sort(idx):
            key = packed[j].tobytes()
            if key not in seen:
                seen.add(key)
                out.append(PointSet(layer.base, layer.n, eq[j]))
    return out


def alg_equal_at_arity(
    spec_c: CloneSpec | Layer,
    spec_d: CloneSpec | Layer,
    n: int | None = None,
    budget: Budget | None = None,
) -> EquivalenceVerdict:
    """Compare the n-ary algebraic sets of two clones on the same carrier.

    Every n-ary algebraic set is an intersection of equalizers, and closed
    sets are stable under intersection, so the families agree iff each
    clone's equalizers are closed under the other clone.
    """
    lc = spec_c if isinstance(spec_c, Layer) else generate_layer(spec_c, n, budget)
    ld = spec_d if isinstance(spec_d, Layer) else generate_layer(spec_d, n, budget)
    if lc.base != ld.base or lc.n != ld.n:
        raise DomainError("clones must share carrier and arity")
    for src, other, tag in ((lc, ld, "C"), (ld, lc, "D")):
        for E in equalizer_family(src):
            if not is_algebraic(other, E):
                return EquivalenceVerdict(lc.n, False, E, tag)
    return EquivalenceVerdict(lc.n, True)
