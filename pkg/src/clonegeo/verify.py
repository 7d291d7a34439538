"""Reproducible checks of the finite separation witnesses.

Each case returns a JSON-ready report ``{"case", "parameters", "verdict",
"evidence"}``.  Verdicts are ``pass``, ``fail``, ``budget-exceeded`` or
``not-found-within-budget``.  Reports contain no timings so that identical
parameters give byte-identical output.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable, Sequence

import numpy as np

from .constructions import (
    ModExpansionSpec,
    OplusSpec,
    build_B0,
    build_janov,
    build_oplus,
    build_Q,
    build_zmod_expansion,
    check_extend_restriction,
    check_fprop,
    D_m,
    enumerate_Cd_tables,
    enumerate_F,
    enumerate_F_prime,
    essential_restriction,
    g_table,
    graph_of,
    in_F_prime,
    is_absorbing,
    is_projection,
    lift,
    phi_closure,
    phi_layer,
    scaled_product,
)
from .engine import Budget, CloneSpec, Layer, is_malcev, random_term
from .errors import BudgetExceeded, DomainError
from .geometry import alg_equal_at_arity, closure, is_algebraic, separating_pair
from .io import cached_layer, op_to_json, points_to_json
from .tables import (
    OpTable,
    PointSet,
    add_dummy_arg,
    agree_on,
    constant_op,
    essential_coordinates,
    identify_first_args,
    minor,
    rotate_args,
    star_compose,
    swap_first_args,
    tuple_grid,
)

CASES = ("lemma4", "thm3", "lemma5-6", "prop8", "lemma9", "lemma10", "lemma11", "prop12", "eq21")

# cap on listed violations per report
MAX_EVIDENCE = 5


def _report(case: str, params: dict, ok: bool, evidence: dict) -> dict[str, Any]:
    return {"case": case, "parameters": params, "verdict": "pass" if ok else "fail", "evidence": evidence}


def _layer(spec: CloneSpec, n: int, budget: Budget | None, cache_dir, **kw) -> Layer:
    return cached_layer(spec, n, budget, cache_dir=cache_dir, **kw)


def zmod_layer(p: int, n: int, d: int, arity: int, budget=None, cache_dir=None, bounded: bool | None = None) -> Layer:
    """Layer of Pol(A_d) at ``arity``.

    With a generator of arity >= 3 an exhaustive fixed point is out of
    reach, so generation is bounded by the monomial-sum tables, which
    contain the whole clone.
    """
    mspec = ModExpansionSpec(p, n, d)
    spec = build_zmod_expansion(mspec)
    if bounded is None:
        bounded = d > 2
    bound = enumerate_Cd_tables(mspec, arity, budget) if bounded else None
    return _layer(spec, arity, budget, cache_dir, upper_bound=bound)


# -- Z_{np^2} expansions ------------------------------------------------------

def verify_lemma4(p: int = 2, n: int = 1, d: int = 2, k: int | None = None, budget=None, cache_dir=None, **_) -> dict:
    k = d + 1 if k is None else k
    mspec = ModExpansionSpec(p, n, d)
    tables = enumerate_Cd_tables(mspec, k, budget)
    absorbing = sorted(t for t in tables if is_absorbing(t, 0))
    zero = constant_op(mspec.size, 0, k)
    census_ok = absorbing == [zero]

    containment = {}
    for a in (1, 2):
        layer = zmod_layer(p, n, d, a, budget, cache_dir, bounded=False)
        cd = {t.key for t in enumerate_Cd_tables(mspec, a, budget)}
        missing = [i for i, row in enumerate(layer.matrix) if row.tobytes() not in cd]
        containment[str(a)] = {"layer_size": len(layer), "cd_size": len(cd), "outside_cd": len(missing)}
    contained = all(v["outside_cd"] == 0 for v in containment.values())
    evidence = {
        "cd_tables": len(tables),
        "absorbing": [op_to_json(t) for t in absorbing[:MAX_EVIDENCE]],
        "absorbing_count": len(absorbing),
        "layer_in_cd": containment,
    }
    return _report("lemma4", {"p": p, "n": n, "d": d, "k": k}, census_ok and contained, evidence)


def verify_thm3(p: int = 2, n: int = 1, i: int = 2, l: int = 3, budget=None, cache_dir=None, **_) -> dict:
    if not l > i >= 2:
        raise DomainError("need l > i >= 2")
    m = ModExpansionSpec(p, n, i).size
    Q = build_Q(m, l)
    low = zmod_layer(p, n, i, l, budget, cache_dir)
    high = zmod_layer(p, n, l, l, budget, cache_dir)
    cl_low = closure(low, Q).closure
    cl_high = closure(high, Q).closure
    ones = (1,) * l
    pair = separating_pair(high, Q, ones)
    f_l = scaled_product(ModExpansionSpec(p, n, l))
    zero = constant_op(m, 0, l)
    pair_ok = pair is not None and {pair[0], pair[1]} == {f_l, zero}
    ok = cl_low == PointSet.full(m, l) and ones not in cl_high and pair_ok
    evidence = {
        "layer_sizes": {f"A{i}": len(low), f"A{l}": len(high)},
        "closure_sizes": {f"A{i}": len(cl_low), f"A{l}": len(cl_high)},
        "ones_in_closure": {f"A{i}": ones in cl_low, f"A{l}": ones in cl_high},
        "separating_pair": None if pair is None else [op_to_json(f) for f in pair],
        "pair_is_f_l_and_zero": pair_ok,
    }
    return _report("thm3", {"p": p, "n": n, "i": i, "l": l}, ok, evidence)


# -- one-point absorbing extension --------------------------------------------

def affine_z4() -> CloneSpec:
    """Pol(Z_4, +, -, 0) with all constants."""
    m = 4
    xs = np.arange(m)
    return CloneSpec(m, {
        "+": OpTable(m, 2, np.add.outer(xs, xs).ravel() % m),
        "-": OpTable(m, 1, (-xs) % m),
        "0": OpTable(m, 1, np.zeros(m, dtype=np.uint8)),
    }, constantive=True)


def verify_lemma5_6(seed: int = 0, samples: int = 10_000, depth: int = 4, max_arity: int = 3,
                    malcev_samples: int = 2_000, budget=None, cache_dir=None, **_) -> dict:
    base = affine_z4()
    ospec = OplusSpec(base, 0)
    ext = build_oplus(ospec)
    layers = {k: _layer(base, k, budget, cache_dir) for k in range(1, max_arity + 1)}
    rng = np.random.default_rng(seed)
    bad = []
    branches = {"all_e": 0, "in_base": 0}
    for _ in range(samples):
        k = int(rng.integers(1, max_arity + 1))
        f = random_term(ext, k, depth, rng)
        fprop = check_fprop(f, base, layers[k])
        extend = check_extend_restriction(f)
        if not (fprop and extend):
            if len(bad) < MAX_EVIDENCE:
                bad.append({"table": op_to_json(f), "fprop": fprop, "extend": extend})
            continue
        part = f.table[np.all(tuple_grid(ext.base, k) < base.base, axis=1)]
        branches["all_e" if np.all(part == base.base) else "in_base"] += 1

    malcev = None
    for _ in range(malcev_samples):
        d = random_term(ext, 3, depth, rng)
        if is_malcev(d):
            malcev = op_to_json(d)
            break
    evidence = {
        "violations": bad,
        "branches": branches,
        "hypothesis_violated": not ospec.hypothesis_ok,
        "constantive": ext.constantive,
        "malcev_search": "found" if malcev else "not-found-within-budget",
        "malcev": malcev,
    }
    params = {"seed": seed, "samples": samples, "depth": depth, "max_arity": max_arity,
              "malcev_samples": malcev_samples}
    return _report("lemma5-6", params, not bad, evidence)


def verify_prop8(p: int = 2, n: int = 1, strong: int = 3, weak: int = 2, k: int = 3,
                 budget=None, cache_dir=None, **_) -> dict:
    """Lifted separating pairs for B_0 with B the strong clone's closure of Q."""
    l1 = zmod_layer(p, n, strong, k, budget, cache_dir)
    l2 = zmod_layer(p, n, weak, k, budget, cache_dir)
    m = l1.base
    B = closure(l1, build_Q(m, k)).closure
    B0 = build_B0(B, k, m + 1)
    weak_cl = closure(l2, B).closure
    extra = weak_cl - B
    failures = []
    checked = 0
    for c in (PointSet.full(m, k) - B).tuples():
        checked += 1
        pair = separating_pair(l1, B, c)
        ok = pair is not None
        if ok:
            p1, p2 = lift(pair[0]), lift(pair[1])
            ok = agree_on(p1, p2, B0) and p1(*c) != p2(*c)
        if not ok and len(failures) < MAX_EVIDENCE:
            failures.append(list(c))
    structure_ok = 0 < len(B) < m**k and len(extra) > 0
    evidence = {
        "B_size": len(B),
        "B0_size": len(B0),
        "points_outside_B": checked,
        "failures": failures,
        "weak_closure_adds": len(extra),
        "witness_a": list(extra.tuples()[0]) if len(extra) else None,
    }
    params = {"p": p, "n": n, "strong": strong, "weak": weak, "k": k}
    return _report("prop8", params, structure_ok and not failures, evidence)


# -- the g_i family on {0,1,2} --------------------------------------------------

def verify_lemma9(max_n: int = 4, **_) -> dict:
    issues: dict[str, list] = {str(i): [] for i in range(1, 6)}
    fprime = {n: enumerate_F_prime(n) for n in range(1, max_n + 1)}

    def note(item, f):
        if len(issues[item]) < MAX_EVIDENCE:
            issues[item].append(op_to_json(f))

    zero = {n: constant_op(3, 0, n) for n in range(1, max_n + 1)}
    for n in range(1, max_n + 1):
        for f in enumerate_F(n):
            ess = len(essential_coordinates(f))
            if ess <= 1 and f != zero[n]:
                note("1", f)
            if ess > 0 and not (ess == n and n >= 2):
                note("2", f)
        for f in fprime[n]:
            if len(essential_coordinates(f)) == 1 and not is_projection(f):
                note("3", f)
            if not in_F_prime(f):
                note("5", f)

    def minors_ok(f, item):
        for n in range(1, max_n + 1):
            for sigma in itertools.product(range(n), repeat=f.arity):
                h = minor(f, sigma, n)
                if not in_F_prime(h) or h not in fprime[n]:
                    note(item, h)
                    return

    for l in range(1, max_n + 1):
        for g in enumerate_F(l):
            minors_ok(g, "4")
    for k in range(1, max_n + 1):
        for f in fprime[k]:
            minors_ok(f, "5")
    sizes = {str(n): len(fprime[n]) for n in fprime}
    ok = not any(issues.values())
    return _report("lemma9", {"max_n": max_n}, ok, {"violations": issues, "F_prime_sizes": sizes})


def verify_lemma10(max_n: int = 3, **_) -> dict:
    fprime = {n: sorted(enumerate_F_prime(n)) for n in range(1, max_n + 1)}
    bad: dict[str, list] = {"zeta": [], "tau": [], "delta": [], "nabla": [], "star": []}
    unary = {"zeta": rotate_args, "tau": swap_first_args, "delta": identify_first_args, "nabla": add_dummy_arg}
    checked = 0
    for n, members in fprime.items():
        for f in members:
            for name, op in unary.items():
                checked += 1
                if not in_F_prime(op(f)) and len(bad[name]) < MAX_EVIDENCE:
                    bad[name].append(op_to_json(f))
    for f, g in itertools.product(itertools.chain(*fprime.values()), repeat=2):
        checked += 1
        if not in_F_prime(star_compose(f, g)) and len(bad["star"]) < MAX_EVIDENCE:
            bad["star"].append([op_to_json(f), op_to_json(g)])
    ok = not any(bad.values())
    return _report("lemma10", {"max_n": max_n}, ok, {"violations": bad, "checked": checked})


def _subsets(items: Sequence[int]) -> list[list[int]]:
    return [list(c) for r in range(len(items) + 1) for c in itertools.combinations(items, r)]


def verify_lemma11(index_set: Sequence[int] = (2, 3), max_k: int = 4, budget=None, cache_dir=None, **_) -> dict:
    bad = []
    sizes = {}
    for I in _subsets(sorted(index_set)):
        spec = build_janov(I)
        for k in range(1, max_k + 1):
            layer = _layer(spec, k, budget, cache_dir)
            sizes[f"{I}/{k}"] = len(layer)
            for g in layer:
                ess = sorted(essential_coordinates(g))
                if not in_F_prime(g):
                    problem = "not in F'"
                elif not ess:
                    problem = None if np.all(g.table == 0) else "nonzero constant"
                elif len(ess) == 1:
                    problem = None if is_projection(g) else "essentially unary non-projection"
                else:
                    h = essential_restriction(g)
                    if np.any(g.table == 2):
                        problem = "takes value 2"
                    elif np.any((h.table != 0) & ~D_m(len(ess)).mask):
                        problem = "nonzero off D_l"
                    else:
                        problem = None
                if problem and len(bad) < MAX_EVIDENCE:
                    bad.append({"I": I, "arity": k, "problem": problem, "table": op_to_json(g)})
    params = {"set": sorted(index_set), "max_k": max_k}
    return _report("lemma11", params, not bad, {"violations": bad, "layer_sizes": sizes})


def verify_prop12(index_set: Sequence[int] = (2, 3), budget=None, cache_dir=None, pairwise: bool = True, **_) -> dict:
    index_set = sorted(index_set)
    matrix = {}
    ok = True
    for I in _subsets(index_set):
        row = {}
        for i in index_set:
            layer = _layer(build_janov(I), i + 1, budget, cache_dir)
            alg = is_algebraic(layer, graph_of(g_table(i)))
            row[str(i)] = alg
            ok &= alg == (i in I)
        matrix[str(I)] = row
    evidence: dict[str, Any] = {"membership": matrix}
    if pairwise:
        top = max(index_set) + 1
        separated = {}
        for I, J in itertools.combinations(_subsets(index_set), 2):
            where = None
            for n in range(1, top + 1):
                v = alg_equal_at_arity(
                    _layer(build_janov(I), n, budget, cache_dir),
                    _layer(build_janov(J), n, budget, cache_dir),
                )
                if not v.equal:
                    where = {"arity": n, "direction": v.direction, "witness": points_to_json(v.witness)}
                    break
            separated[f"{I} vs {J}"] = where
            ok &= where is not None
        evidence["pairwise"] = separated
    return _report("prop12", {"set": index_set}, ok, evidence)


# -- the one-point extension with free values ---------------------------------

def boolean_specs() -> dict[str, CloneSpec]:
    return {
        "xor": CloneSpec(2, {"xor": OpTable(2, 2, [0, 1, 1, 0])}),
        "and": CloneSpec(2, {"and": OpTable(2, 2, [0, 0, 0, 1])}),
    }


def verify_eq21(base: CloneSpec | None = None, n: int = 2, budget=None, cache_dir=None, base_name=None, **_) -> dict:
    bases = {base_name or "base": base} if base is not None else boolean_specs()
    evidence = {}
    ok = True
    for name, spec in bases.items():
        size = spec.base + 1
        points = size**n
        if points > 12:
            raise BudgetExceeded(f"2^{points} subsets is beyond the exhaustive envelope")
        layer = _layer(spec, n, budget, cache_dir)
        full = phi_layer(layer, budget)
        mismatches = []
        algebraic = 0
        for bits in range(2**points):
            mask = (bits >> np.arange(points)) & 1
            B = PointSet(size, n, mask.astype(bool))
            formula = phi_closure(layer, B)
            brute = closure(full, B).closure
            algebraic += formula == B
            if formula != brute and len(mismatches) < MAX_EVIDENCE:
                mismatches.append(points_to_json(B))
        evidence[name] = {
            "subsets": 2**points,
            "phi_layer_size": len(full),
            "base_layer_size": len(layer),
            "algebraic_subsets": int(algebraic),
            "mismatches": mismatches,
        }
        ok &= not mismatches
    return _report("eq21", {"n": n, "bases": sorted(bases)}, ok, evidence)


RUNNERS: dict[str, Callable[..., dict]] = {
    "lemma4": verify_lemma4,
    "thm3": verify_thm3,
    "lemma5-6": verify_lemma5_6,
    "prop8": verify_prop8,
    "lemma9": verify_lemma9,
    "lemma10": verify_lemma10,
    "lemma11": verify_lemma11,
    "prop12": verify_prop12,
    "eq21": verify_eq21,
}


def run_case(case: str, **params) -> dict[str, Any]:
    if case not in RUNNERS:
        raise DomainError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
    try:
        return RUNNERS[case](**params)
    except BudgetExceeded as exc:
        clean = {k: v for k, v in params.items() if k not in ("budget", "cache_dir", "base")}
        return {
            "case": case,
            "parameters": clean,
            "verdict": "budget-exceeded",
            "evidence": {"message": str(exc), "partial_size": exc.partial_size},
        }
