"""Expansions of the cyclic group of order n*p^2 by a scaled product."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..engine import Budget, CloneSpec
from ..errors import BudgetExceeded, DomainError
from ..tables import OpTable, PointSet, tuple_grid

__all__ = [
    "ModExpansionSpec",
    "Monomial",
    "is_prime",
    "build_zmod_expansion",
    "scaled_product",
    "is_absorbing",
    "monomial_shape_ok",
    "monomial_table",
    "enumerate_Cd_tables",
    "build_Q",
    "recognize_expansion",
    "expansion_upper_bound",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ModExpansionSpec:
    p: int
    n: int
    d: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.n < 1:
            raise DomainError("n must be positive")
        if self.d < 2:
            raise DomainError("d must be at least 2")

    @property
    def size(self) -> int:
        return self.n * self.p**2

    @property
    def np_(self) -> int:
        return self.n * self.p


def scaled_product(spec: ModExpansionSpec, arity: int | None = None) -> OpTable:
    """``(x_1..x_d) -> n*p*x_1*...*x_d`` modulo n*p^2."""
    arity = spec.d if arity is None else arity
    m = spec.size
    grid = tuple_grid(m, arity).astype(np.int64)
    prod = np.ones(len(grid), dtype=np.int64)
    for col in grid.T:
        prod = prod * col % m
    return OpTable(m, arity, spec.np_ * prod % m)


def build_zmod_expansion(spec: ModExpansionSpec) -> CloneSpec:
    """Polynomial clone of (Z_{np^2}; +, -, 0, f_d)."""
    m = spec.size
    xs = np.arange(m)
    plus = OpTable(m, 2, np.add.outer(xs, xs).ravel() % m)
    neg = OpTable(m, 1, (-xs) % m)
    zero = OpTable(m, 1, np.zeros(m, dtype=np.uint8))
    gens = {"+": plus, "-": neg, "0": zero, f"f{spec.d}": scaled_product(spec)}
    return CloneSpec(m, gens, constantive=True)


def is_absorbing(f: OpTable, zero: int = 0) -> bool:
    if not 0 <= zero < f.base:
        raise DomainError("zero outside the carrier")
    has_zero = np.any(tuple_grid(f.base, f.arity) == zero, axis=1)
    return bool(np.all(f.table[has_zero] == zero))


@dataclass(frozen=True)
class Monomial:
    """``coefficient * prod x_i^e_i`` with variables indexed from 0."""

    coefficient: int
    exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        exps = dict(self.exponents)
        if any(e < 1 for e in exps.values()):
            raise DomainError("exponents must be positive")
        object.__setattr__(self, "exponents", exps)

    @property
    def degree(self) -> int:
        return sum(self.exponents.values())


def monomial_shape_ok(mono: Monomial, spec: ModExpansionSpec) -> bool:
    r = len(mono.exponents)
    if r == 0:
        return True
    if r == 1 and mono.degree == 1:
        return True
    return 2 <= mono.degree <= spec.d and mono.coefficient % spec.np_ == 0


def monomial_table(mono: Monomial, m: int, k: int) -> OpTable:
    if any(not 0 <= v < k for v in mono.exponents):
        raise DomainError(f"variable outside x_0..x_{k - 1}")
    grid = tuple_grid(m, k).astype(np.int64)
    vals = np.full(len(grid), mono.coefficient % m, dtype=np.int64)
    for v, e in mono.exponents.items():
        vals = vals * pow_mod(grid[:, v], e, m) % m
    return OpTable(m, k, vals)


def pow_mod(x: np.ndarray, e: int, m: int) -> np.ndarray:
    out = np.ones_like(x)
    for _ in range(e):
        out = out * x % m
    return out


# carrier^k above this is refused by the enumeration
CD_MAX_WIDTH = 4**4


def enumerate_Cd_tables(spec: ModExpansionSpec, k: int, budget: Budget | None = None) -> set[OpTable]:
    """All k-ary tables induced by sums of monomials of admissible shape.

    The admissible coefficients of each monomial form a subgroup, so one
    coefficient per monomial suffices.  Exponents are capped at ``d``,
    which the degree bound forces anyway.
    """
    budget = budget or Budget()
    m = spec.size
    if m**k > CD_MAX_WIDTH:
        raise BudgetExceeded(f"{m}^{k} tuples is beyond the enumeration envelope")
    width = m**k
    terms: list[tuple[np.ndarray, list[int]]] = [
        (np.ones(width, dtype=np.int64), list(range(m)))
    ]
    for v in range(k):
        terms.append((monomial_table(Monomial(1, {v: 1}), m, k).table.astype(np.int64), list(range(m))))
    scaled = list(range(0, m, spec.np_))
    for r in range(1, k + 1):
        for vars_ in itertools.combinations(range(k), r):
            for exps in itertools.product(range(1, spec.d + 1), repeat=r):
                if not 2 <= sum(exps) <= spec.d:
                    continue
                mono = Monomial(1, dict(zip(vars_, exps)))
                table = monomial_table(mono, m, k).table.astype(np.int64)
                terms.append((table, scaled))

    sums = np.zeros((1, width), dtype=np.int64)
    for table, coeffs in terms:
        cand = (sums[:, None, :] + np.array(coeffs)[None, :, None] * table) % m
        cand = cand.reshape(-1, width).astype(np.uint8)
        sums = np.unique(cand, axis=0).astype(np.int64)
        if len(sums) > budget.max_layer_size:
            raise BudgetExceeded("C_d enumeration outgrew the budget", partial_size=len(sums))
    return {OpTable(m, k, row) for row in sums}


def build_Q(spec: ModExpansionSpec | int, l: int) -> PointSet:
    """l-tuples with at least one zero coordinate."""
    m = spec.size if isinstance(spec, ModExpansionSpec) else int(spec)
    if l < 2:
        raise DomainError("l must be at least 2")
    return PointSet(m, l, np.any(tuple_grid(m, l) == 0, axis=1))


def recognize_expansion(spec: CloneSpec) -> ModExpansionSpec | None:
    """The parameters of ``spec`` if it is exactly a ``build_zmod_expansion`` output."""
    names = [name for name, _ in spec.generators]
    if len(names) != 4 or not names[3].startswith("f") or not names[3][1:].isdigit():
        return None
    d = int(names[3][1:])
    for p in range(2, spec.base + 1):
        if spec.base % (p * p) or not is_prime(p) or d < 2:
            continue
        candidate = ModExpansionSpec(p, spec.base // (p * p), d)
        if build_zmod_expansion(candidate) == spec:
            return candidate
    return None


def expansion_upper_bound(spec: CloneSpec, k: int, budget: Budget | None = None) -> set[OpTable] | None:
    """Monomial-sum tables containing the k-ary layer, when ``spec`` is recognized and small enough."""
    params = recognize_expansion(spec)
    if params is None or params.size**k > CD_MAX_WIDTH:
        return None
    return enumerate_Cd_tables(params, k, budget)
