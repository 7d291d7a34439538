"""Generation of the n-ary part of a finitely generated clone.

A clone is presented by a :class:`CloneSpec`.  :func:`generate_layer`
computes the complete n-ary part of the generated clone as a least fixed
point over value tables; :func:`term_oracle` recomputes the same set by
plain enumeration of composition trees and serves as an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityCapError, BudgetExceeded, DomainError, OracleInfeasible
from .tables import OpTable, compose, constant_op, minor, projection, rank_tuple, tuple_grid

__all__ = [
    "CloneSpec",
    "Budget",
    "Layer",
    "generate_layer",
    "layer_contains",
    "find_malcev",
    "is_malcev",
    "is_constantive_layer",
    "term_oracle",
    "random_term",
]


@dataclass(frozen=True)
class CloneSpec:
    """Generators of a clone on ``{0..base-1}``.

    With ``constantive`` set, every unary constant operation is an implicit
    generator.
    """

    base: int
    generators: tuple[tuple[str, OpTable], ...] = ()
    constantive: bool = False

    def __post_init__(self):
        gens = self.generators
        if isinstance(gens, Mapping):
            gens = gens.items()
        gens = tuple((str(name), op) for name, op in gens)
        names = [name for name, _ in gens]
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate generator names in {names}")
        for name, op in gens:
            if not isinstance(op, OpTable):
                raise DomainError(f"generator {name!r} is not an OpTable")
            if op.base != self.base:
                raise DomainError(f"generator {name!r} lives on a carrier of size {op.base}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "constantive", bool(self.constantive))

    @property
    def ops(self) -> list[OpTable]:
        return [op for _, op in self.generators]

    def __getitem__(self, name: str) -> OpTable:
        for n, op in self.generators:
            if n == name:
                return op
        raise KeyError(name)

    def constants(self, arity: int = 1) -> list[OpTable]:
        return [constant_op(self.base, c, arity) for c in range(self.base)]


@dataclass(frozen=True)
class Budget:
    max_layer_size: int = 2**20
    max_arity: int = 4
    # cap on the number of generator applications; None means unlimited
    max_compositions: int | None = None

    def __post_init__(self):
        if self.max_layer_size < 1 or self.max_arity < 1:
            raise DomainError("budget limits must be positive")
        if self.max_compositions is not None and self.max_compositions < 1:
            raise DomainError("budget limits must be positive")


class Layer:
    """The deduplicated n-ary part of a clone, sorted lexicographically by table.

    ``spec`` may be None for layers enumerated directly rather than
    generated; ``base`` must then be given.
    """

    def __init__(self, spec: CloneSpec | None, n: int, matrix: np.ndarray, base: int | None = None):
        if base is None:
            if spec is None:
                raise DomainError("a layer without a spec needs an explicit carrier size")
            base = spec.base
        matrix = np.asarray(matrix, dtype=np.uint8)
        if matrix.ndim != 2 or matrix.shape[1] != base**n:
            raise DomainError("layer matrix has the wrong shape")
        order = np.lexsort(matrix.T[::-1]) if len(matrix) else np.arange(0)
        matrix = np.ascontiguousarray(matrix[order])
        matrix.setflags(write=False)
        self.spec = spec
        self.base = base
        self.n = n
        self.matrix = matrix
        self._index = {row.tobytes(): i for i, row in enumerate(matrix)}
        if len(self._index) != len(matrix):
            raise DomainError("layer rows are not distinct")

    def __len__(self):
        return len(self.matrix)

    def __getitem__(self, i: int) -> OpTable:
        return OpTable(self.base, self.n, self.matrix[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def __contains__(self, f: OpTable) -> bool:
        return layer_contains(self, f)

    def index(self, f: OpTable) -> int:
        return self._index[f.key]

    @property
    def members(self) -> list[OpTable]:
        return list(self)

    def keys(self) -> set[bytes]:
        return set(self._index)

    def __repr__(self):
        return f"Layer(base={self.base}, n={self.n}, size={len(self)})"


def _seed_rows(spec: CloneSpec, n: int) -> list[np.ndarray]:
    rows = [projection(spec.base, n, k).table for k in range(n)]
    if spec.constantive:
        rows += [c.table for c in spec.constants(n)]
    for op in spec.ops:
        for sigma in itertools.product(range(n), repeat=op.arity):
            rows.append(minor(op, sigma, n).table)
    return rows


class _Growth:
    """Append-only deduplicated row store used while generating a layer."""

    def __init__(self, width: int, budget: Budget, bound: set[bytes] | None):
        self.width = width
        self.budget = budget
        self.bound = bound
        self.data = np.empty((64, width), dtype=np.uint8)
        self.size = 0
        self.seen: set[bytes] = set()

    def add(self, row: np.ndarray, key: bytes | None = None) -> None:
        key = row.tobytes() if key is None else key
        if key in self.seen:
            return
        if self.bound is not None and key not in self.bound:
            raise DomainError("generated table lies outside the supplied upper bound")
        if self.size >= self.budget.max_layer_size:
            raise BudgetExceeded(
                f"layer exceeds {self.budget.max_layer_size} members",
                partial_size=self.size,
            )
        if self.size == len(self.data):
            self.data = np.concatenate([self.data, np.empty_like(self.data)])
        self.data[self.size] = row
        self.size += 1
        self.seen.add(key)

    def saturated(self) -> bool:
        return self.bound is not None and self.size == len(self.bound)


def _operand_chunks(radices: Sequence[int], offsets: Sequence[int], chunk: int):
    """Yield operand index arrays enumerating a mixed-radix box in order."""
    total = int(np.prod(radices, dtype=object))
    for start in range(0, total, chunk):
        flat = np.arange(start, min(start + chunk, total), dtype=np.int64)
        cols = []
        for r in reversed(radices):
            flat, d = np.divmod(flat, r)
            cols.append(d)
        yield [c + o for c, o in zip(reversed(cols), offsets)]


def generate_layer(
    spec: CloneSpec,
    n: int,
    budget: Budget | None = None,
    upper_bound: Iterable[OpTable] | None = None,
) -> Layer:
    """Compute the n-ary part of the clone generated by ``spec``.

    Starts from the projections, the constants (if constantive) and all
    n-ary minors of the generators, then closes under every generator
    applied to current members.  Generators are processed semi-naively:
    each keeps a watermark below which all operand tuples have been tried,
    and the lowest-arity generator with pending work goes first.

    ``upper_bound``, when given, must be a set of n-ary tables known to
    contain the whole layer.  Generation then stops as soon as every table
    of the bound has been produced; a table outside the bound is an error.
    """
    budget = budget or Budget()
    if n < 1:
        raise DomainError("arity must be positive")
    if n > budget.max_arity:
        raise ArityCapError(f"arity {n} exceeds the cap {budget.max_arity}")
    base = spec.base
    width = base**n
    bound = None
    if upper_bound is not None:
        bound = set()
        for f in upper_bound:
            if (f.base, f.arity) != (base, n):
                raise DomainError("upper bound contains a table of the wrong shape")
            bound.add(f.key)

    store = _Growth(width, budget, bound)
    for row in _seed_rows(spec, n):
        store.add(row)

    gens = [op for op in spec.ops if not _is_constant(op)]
    gens.sort(key=lambda op: op.arity)
    marks = [0] * len(gens)
    applied = 0
    chunk = max(1, (1 << 22) // max(width, 1))

    while not store.saturated():
        pending = [i for i, w in enumerate(marks) if w < store.size]
        if not pending:
            break
        gi = pending[0]
        g = gens[gi]
        m = g.arity
        old, top = marks[gi], store.size
        marks[gi] = top
        table = g.table
        for j in range(m):
            radices = [old] * j + [top - old] + [top] * (m - j - 1)
            offsets = [0] * j + [old] + [0] * (m - j - 1)
            if 0 in radices:
                continue
            for operands in _operand_chunks(radices, offsets, chunk):
                count = len(operands[0])
                applied += count
                if budget.max_compositions is not None and applied > budget.max_compositions:
                    raise BudgetExceeded(
                        f"more than {budget.max_compositions} compositions",
                        partial_size=store.size,
                    )
                rank = store.data[operands[0]].astype(np.intp)
                for op_idx in operands[1:]:
                    rank *= base
                    rank += store.data[op_idx]
                rows = table[rank]
                uniq = np.unique(rows.view(np.dtype((np.void, width))).ravel())
                for item in uniq:
                    key = item.tobytes()
                    if key not in store.seen:
                        store.add(np.frombuffer(key, dtype=np.uint8), key)
                if store.saturated():
                    break
            if store.saturated():
                break

    return Layer(spec, n, store.data[: store.size])


def _is_constant(op: OpTable) -> bool:
    return bool(np.all(op.table == op.table[0]))


def layer_contains(layer: Layer, f: OpTable) -> bool:
    if f.arity != layer.n or f.base != layer.base:
        raise DomainError(f"{f.arity}-ary table tested against a {layer.n}-ary layer")
    return f.key in layer._index


def _malcev_columns(base: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    a, b = np.divmod(np.arange(base * base), base)
    abb = (a * base + b) * base + b
    bba = (b * base + b) * base + a
    return a, abb, bba


def is_malcev(d: OpTable) -> bool:
    """Check ``d(a,b,b) = d(b,b,a) = a`` on every pair."""
    if d.arity != 3:
        return False
    a, abb, bba = _malcev_columns(d.base)
    return bool(np.all(d.table[abb] == a) and np.all(d.table[bba] == a))


def find_malcev(spec: CloneSpec | Layer, budget: Budget | None = None) -> OpTable | None:
    """The canonically first Mal'cev operation of the ternary layer, if any."""
    layer = spec if isinstance(spec, Layer) else generate_layer(spec, 3, budget)
    if layer.n != 3:
        raise DomainError("Mal'cev search needs the ternary layer")
    a, abb, bba = _malcev_columns(layer.base)
    M = layer.matrix
    ok = np.all(M[:, abb] == a, axis=1) & np.all(M[:, bba] == a, axis=1)
    hits = np.flatnonzero(ok)
    return layer[int(hits[0])] if hits.size else None


def is_constantive_layer(spec: CloneSpec, budget: Budget | None = None) -> bool:
    if spec.constantive:
        return True
    unary = generate_layer(spec, 1, budget)
    return all(c in unary for c in spec.constants(1))


# Hard cap on generator applications per oracle level.
ORACLE_CAP = 2_000_000


def term_oracle(spec: CloneSpec, n: int, depth: int | None = None) -> set[OpTable]:
    """Tables of all composition trees of height <= ``depth``.

    Leaves are the n-ary projections (and constants when the spec is
    constantive).  ``depth=None`` iterates until a level adds nothing.
    Intended for tiny instances only (carrier <= 3, n <= 3, depth <= 4).
    """
    base = spec.base
    size = base**n
    grid = [tuple(int(v) for v in row) for row in tuple_grid(base, n)]
    level = {tuple(x[k] for x in grid) for k in range(n)}
    if spec.constantive:
        level |= {(c,) * size for c in range(base)}
    gens = [(op.arity, op.tolist()) for op in spec.ops]
    height = 0
    while depth is None or height < depth:
        current = sorted(level)
        work = sum(len(current) ** m for m, _ in gens)
        if work > ORACLE_CAP:
            raise OracleInfeasible(
                f"oracle level {height + 1} needs {work} applications",
                partial_size=len(level),
            )
        nxt = set(level)
        for m, table in gens:
            for args in itertools.product(current, repeat=m):
                nxt.add(tuple(table[rank_tuple(base, col)] for col in zip(*args)))
        height += 1
        if nxt == level and depth is None:
            break
        level = nxt
    return {OpTable(base, n, np.array(t, dtype=np.uint8)) for t in level}


def random_term(spec: CloneSpec, n: int, depth: int, rng: np.random.Generator, leaf_prob: float = 0.3) -> OpTable:
    """Evaluate a random composition tree of height <= ``depth``.

    Leaves are n-ary projections, or constants when the spec is constantive.
    """
    base = spec.base
    gens = spec.ops
    if depth <= 0 or not gens or rng.random() < leaf_prob:
        if spec.constantive and rng.random() < 0.2:
            return constant_op(base, int(rng.integers(base)), n)
        return projection(base, n, int(rng.integers(n)))
    g = gens[int(rng.integers(len(gens)))]
    args = [random_term(spec, n, depth - 1, rng, leaf_prob) for _ in range(g.arity)]
    return compose(g, args)
