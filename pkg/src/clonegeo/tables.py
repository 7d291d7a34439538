"""Operation tables and point sets over a finite carrier.

Carrier elements are the indices ``0 .. base-1``.  An n-tuple is ranked
base-``base`` with the leftmost coordinate most significant, so the table of
an n-ary operation lists its values at ``(0,..,0), (0,..,1), ...`` in order.
Argument positions are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CompositionError, DomainError

__all__ = [
    "OpTable",
    "PointSet",
    "rank_tuple",
    "unrank_tuple",
    "tuple_grid",
    "projection",
    "constant_op",
    "compose",
    "minor",
    "equalizer",
    "essential_coordinates",
    "agree_on",
    "rotate_args",
    "swap_first_args",
    "identify_first_args",
    "add_dummy_arg",
    "star_compose",
    "restrict_to",
    "subcarrier_mask",
]

# element indices are stored as uint8
MAX_BASE = 255


def _check_base(base: int) -> int:
    base = int(base)
    if not 1 <= base <= MAX_BASE:
        raise DomainError(f"carrier size must be in 1..{MAX_BASE}, got {base}")
    return base


def rank_tuple(base: int, elements: Sequence[int]) -> int:
    base = _check_base(base)
    rank = 0
    for e in elements:
        e = int(e)
        if not 0 <= e < base:
            raise DomainError(f"element {e} outside carrier of size {base}")
        rank = rank * base + e
    return rank


def unrank_tuple(base: int, n: int, rank: int) -> tuple[int, ...]:
    base = _check_base(base)
    if not 0 <= rank < base**n:
        raise DomainError(f"rank {rank} outside [0, {base}^{n})")
    out = []
    for _ in range(n):
        rank, e = divmod(rank, base)
        out.append(e)
    return tuple(reversed(out))


@lru_cache(maxsize=64)
def tuple_grid(base: int, n: int) -> np.ndarray:
    """All n-tuples over the carrier, one row per tuple, in rank order."""
    if n == 0:
        grid = np.zeros((1, 0), dtype=np.uint8)
    else:
        axes = np.indices((base,) * n, dtype=np.uint8)
        grid = axes.reshape(n, -1).T.copy()
    grid.setflags(write=False)
    return grid


def _weights(base: int, n: int) -> np.ndarray:
    return base ** np.arange(n - 1, -1, -1, dtype=np.int64)


def _frozen(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class OpTable:
    """A finitary operation stored as its value table."""

    base: int
    arity: int
    table: np.ndarray

    def __post_init__(self):
        base = _check_base(self.base)
        if self.arity < 1:
            raise DomainError("operations have arity >= 1; constants are unary")
        raw = np.asarray(self.table)
        if raw.shape != (base**self.arity,):
            raise DomainError(
                f"table of a {self.arity}-ary operation on {base} elements "
                f"needs {base**self.arity} entries, got shape {raw.shape}"
            )
        if raw.size and (raw.min() < 0 or raw.max() >= base):
            raise DomainError("table entry outside the carrier")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "table", _frozen(raw, np.uint8))

    @property
    def key(self) -> bytes:
        return self.table.tobytes()

    def __eq__(self, other):
        if not isinstance(other, OpTable):
            return NotImplemented
        return (self.base, self.arity) == (other.base, other.arity) and self.key == other.key

    def __hash__(self):
        return hash((self.base, self.arity, self.key))

    def __lt__(self, other: OpTable):
        return (self.arity, self.key) < (other.arity, other.key)

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise DomainError(f"expected {self.arity} arguments, got {len(args)}")
        return int(self.table[rank_tuple(self.base, args)])

    def __repr__(self):
        vals = "".join(map(str, self.table[:32])) if self.base <= 10 else "..."
        more = "..." if self.table.size > 32 else ""
        return f"OpTable(base={self.base}, arity={self.arity}, table={vals}{more})"

    def tolist(self) -> list[int]:
        return [int(v) for v in self.table]


@dataclass(frozen=True, eq=False)
class PointSet:
    """A subset of ``A^n`` stored as a boolean mask over tuple ranks."""

    base: int
    n: int
    mask: np.ndarray

    def __post_init__(self):
        base = _check_base(self.base)
        raw = np.asarray(self.mask, dtype=bool)
        if raw.shape != (base**self.n,):
            raise DomainError(f"mask must have {base**self.n} entries, got shape {raw.shape}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "mask", _frozen(raw, bool))

    @classmethod
    def empty(cls, base: int, n: int) -> PointSet:
        return cls(base, n, np.zeros(base**n, dtype=bool))

    @classmethod
    def full(cls, base: int, n: int) -> PointSet:
        return cls(base, n, np.ones(base**n, dtype=bool))

    @classmethod
    def from_ranks(cls, base: int, n: int, ranks: Iterable[int]) -> PointSet:
        mask = np.zeros(base**n, dtype=bool)
        idx = np.fromiter((int(r) for r in ranks), dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= mask.size):
            raise DomainError("rank outside the tuple space")
        mask[idx] = True
        return cls(base, n, mask)

    @classmethod
    def from_tuples(cls, base: int, n: int, points: Iterable[Sequence[int]]) -> PointSet:
        ranks = []
        for p in points:
            if len(p) != n:
                raise DomainError(f"point {tuple(p)} is not an {n}-tuple")
            ranks.append(rank_tuple(base, p))
        return cls.from_ranks(base, n, ranks)

    @property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def ranks(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def tuples(self) -> list[tuple[int, ...]]:
        grid = tuple_grid(self.base, self.n)
        return [tuple(int(v) for v in row) for row in grid[self.mask]]

    def __len__(self):
        return int(self.mask.sum())

    def __iter__(self):
        return iter(self.tuples())

    def __contains__(self, point) -> bool:
        if isinstance(point, (int, np.integer)):
            return bool(self.mask[int(point)])
        return bool(self.mask[rank_tuple(self.base, point)])

    def _check(self, other: PointSet):
        if (self.base, self.n) != (other.base, other.n):
            raise DomainError("point sets live in different spaces")

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.base, self.n) == (other.base, other.n) and bool(
            np.array_equal(self.mask, other.mask)
        )

    def __hash__(self):
        return hash((self.base, self.n, self.key))

    def __le__(self, other: PointSet) -> bool:
        self._check(other)
        return not bool(np.any(self.mask & ~other.mask))

    def __or__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.base, self.n, self.mask | other.mask)

    def __and__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.base, self.n, self.mask & other.mask)

    def __sub__(self, other: PointSet) -> PointSet:
        self._check(other)
        return PointSet(self.base, self.n, self.mask & ~other.mask)

    def complement(self) -> PointSet:
        return PointSet(self.base, self.n, ~self.mask)

    def __repr__(self):
        return f"PointSet(base={self.base}, n={self.n}, size={len(self)})"


def projection(base: int, n: int, k: int) -> OpTable:
    """The n-ary operation returning its k-th argument (k is 0-based)."""
    if not 0 <= k < n:
        raise DomainError(f"projection index {k} outside 0..{n - 1}")
    return OpTable(base, n, tuple_grid(base, n)[:, k])


def constant_op(base: int, value: int, arity: int = 1) -> OpTable:
    if not 0 <= value < base:
        raise DomainError(f"constant {value} outside carrier of size {base}")
    return OpTable(base, arity, np.full(base**arity, value, dtype=np.uint8))


def _ranks_of_columns(base: int, cols: Sequence[np.ndarray]) -> np.ndarray:
    rank = np.zeros(len(cols[0]), dtype=np.int64)
    for col in cols:
        rank *= base
        rank += col
    return rank


def compose(f: OpTable, args: Sequence[OpTable]) -> OpTable:
    """``x -> f(args[0](x), ..., args[m-1](x))``."""
    if len(args) != f.arity:
        raise CompositionError(f"{f.arity}-ary operation applied to {len(args)} arguments")
    if not args:
        raise CompositionError("no arguments")
    n = args[0].arity
    for a in args:
        if a.base != f.base:
            raise CompositionError("carrier mismatch")
        if a.arity != n:
            raise CompositionError("arguments have different arities")
    rank = _ranks_of_columns(f.base, [a.table for a in args])
    return OpTable(f.base, n, f.table[rank])


def minor(f: OpTable, sigma: Sequence[int], n: int) -> OpTable:
    """``(x_0..x_{n-1}) -> f(x_sigma[0], .., x_sigma[k-1])``."""
    sigma = [int(s) for s in sigma]
    if len(sigma) != f.arity:
        raise DomainError(f"sigma must have {f.arity} entries")
    if any(not 0 <= s < n for s in sigma):
        raise DomainError(f"sigma value outside 0..{n - 1}")
    grid = tuple_grid(f.base, n)
    rank = grid[:, sigma].astype(np.int64) @ _weights(f.base, f.arity)
    return OpTable(f.base, n, f.table[rank])


def _check_pair(f: OpTable, g: OpTable):
    if (f.base, f.arity) != (g.base, g.arity):
        raise DomainError("operations differ in carrier or arity")


def equalizer(f: OpTable, g: OpTable) -> PointSet:
    _check_pair(f, g)
    return PointSet(f.base, f.arity, f.table == g.table)


def essential_coordinates(f: OpTable) -> frozenset[int]:
    cube = f.table.reshape((f.base,) * f.arity)
    return frozenset(
        i for i in range(f.arity)
        if np.any(cube != np.take(cube, [0], axis=i))
    )


def agree_on(f: OpTable, g: OpTable, X: PointSet) -> bool:
    _check_pair(f, g)
    if (X.base, X.n) != (f.base, f.arity):
        raise DomainError("point set does not match the operations")
    return bool(np.all(f.table[X.mask] == g.table[X.mask]))


# The five primitive clone operations (cyclic shift, transposition,
# identification, dummy variable, substitution into the first argument).

def rotate_args(f: OpTable) -> OpTable:
    n = f.arity
    return minor(f, [(i + 1) % n for i in range(n)], n)


def swap_first_args(f: OpTable) -> OpTable:
    if f.arity < 2:
        return f
    return minor(f, [1, 0, *range(2, f.arity)], f.arity)


def identify_first_args(f: OpTable) -> OpTable:
    if f.arity < 2:
        return f
    return minor(f, [0, *range(f.arity - 1)], f.arity - 1)


def add_dummy_arg(f: OpTable) -> OpTable:
    return minor(f, [i + 1 for i in range(f.arity)], f.arity + 1)


def star_compose(f: OpTable, g: OpTable) -> OpTable:
    """``f(g(x_0..x_{m-1}), x_m, .., x_{m+n-2})`` for n-ary f and m-ary g."""
    if f.base != g.base:
        raise CompositionError("carrier mismatch")
    m, n = g.arity, f.arity
    total = m + n - 1
    inner = minor(g, list(range(m)), total)
    rest = [projection(f.base, total, m + j) for j in range(n - 1)]
    return compose(f, [inner, *rest])


def subcarrier_mask(base: int, sub: int, n: int) -> np.ndarray:
    """Mask of the n-tuples over ``base`` whose entries all lie below ``sub``."""
    return np.all(tuple_grid(base, n) < sub, axis=1)


def restrict_to(f: OpTable, sub: int) -> np.ndarray:
    """Values of f on the tuples of ``{0..sub-1}^n``, in the sub-carrier's rank order."""
    if not 1 <= sub <= f.base:
        raise DomainError("sub-carrier larger than carrier")
    return f.table[subcarrier_mask(f.base, sub, f.arity)]
