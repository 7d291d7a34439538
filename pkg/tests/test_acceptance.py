"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line (with wall time against its
limit); the lines are printed in the terminal summary, or directly when the
module is run as a script: ``python tests/test_acceptance.py``.
"""

import time

import numpy as np

from clonegeo import (
    CloneSpec,
    OpTable,
    PointSet,
    closure,
    closure_via_equalizers,
    constant_op,
    generate_layer,
    is_algebraic,
    separating_pair,
    term_oracle,
    Budget,
    BudgetExceeded,
)
from clonegeo.constructions import (
    ModExpansionSpec,
    build_janov,
    build_Q,
    enumerate_Cd_tables,
    g_table,
    graph_of,
    is_absorbing,
    scaled_product,
)
from clonegeo.verify import run_case, zmod_layer

RESULTS: list[str] = []


class Criterion:
    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.checks: dict[str, bool] = {}

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def check(self, name: str, ok) -> None:
        self.checks[name] = bool(ok)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        self.check(f"runtime {elapsed:.1f}s < {self.limit:.0f}s", elapsed < self.limit)
        ok = exc_type is None and all(self.checks.values())
        failed = [k for k, v in self.checks.items() if not v]
        if exc_type is not None:
            failed.append(f"{exc_type.__name__}: {exc}")
        line = f"[{'PASS' if ok else 'FAIL'}] {self.number}. {self.title} ({elapsed:.1f}s)"
        if failed:
            line += " -- " + "; ".join(failed)
        RESULTS.append(line)
        print(line)
        assert exc_type is not None or ok, line
        return False


def test_1_q_separation():
    with Criterion(1, "Q on Z_4: full closure under A_2, (1,1,1) cut off by (f_3, 0) under A_3", 300) as c:
        Q = build_Q(4, 3)
        low = zmod_layer(2, 1, 2, 3)
        high = zmod_layer(2, 1, 3, 3)
        c.check("A_2 closure of Q has 64 points", len(closure(low, Q).closure) == 64)
        c.check("(1,1,1) outside A_3 closure", (1, 1, 1) not in closure(high, Q).closure)
        pair = separating_pair(high, Q, (1, 1, 1))
        expected = (scaled_product(ModExpansionSpec(2, 1, 3)), constant_op(4, 0, 3))
        c.check("separating pair is (f_3, 0)", pair == expected)


def test_2_absorbing_census():
    with Criterion(2, "monomial sums at arity 3 over Z_4: only the zero table is absorbing", 120) as c:
        spec = ModExpansionSpec(2, 1, 2)
        tables = enumerate_Cd_tables(spec, 3)
        absorbing = [t for t in tables if is_absorbing(t)]
        c.check("absorbing tables == {0}", absorbing == [constant_op(4, 0, 3)])
        for k in (1, 2):
            layer = zmod_layer(2, 1, 2, k, bounded=False)
            c.check(f"A_2 layer of arity {k} inside the sums", set(layer) <= enumerate_Cd_tables(spec, k))


def test_3_graph_membership_matrix():
    with Criterion(3, "graph of g_i algebraic for Z_I iff i in I; all four Z_I separated", 300) as c:
        for I in ([], [2], [3], [2, 3]):
            for i in (2, 3):
                layer = generate_layer(build_janov(I), i + 1)
                c.check(f"I={I}, i={i}", is_algebraic(layer, graph_of(g_table(i))) == (i in I))
        report = run_case("prop12", index_set=[2, 3])
        pairwise = report["evidence"]["pairwise"]
        c.check("six pairs separated at arity <= 4", len(pairwise) == 6 and all(
            v is not None and v["arity"] <= 4 for v in pairwise.values()))


def test_4_free_point_extension():
    with Criterion(4, "closure formula for the free-point extension on all 512 subsets", 120) as c:
        report = run_case("eq21")
        for name, ev in report["evidence"].items():
            c.check(f"{name}: 512 subsets, no mismatch", ev["subsets"] == 512 and not ev["mismatches"])
        c.check("verdict pass", report["verdict"] == "pass")


def test_5_three_element_family():
    with Criterion(5, "F and F' shape properties, F' closure, Z_I layers inside F'", 300) as c:
        for case, params in (("lemma9", {"max_n": 4}), ("lemma10", {"max_n": 3}),
                             ("lemma11", {"index_set": [2, 3], "max_k": 4})):
            report = run_case(case, **params)
            c.check(f"{case} no violations", report["verdict"] == "pass")


def test_6_absorbing_extension():
    with Criterion(6, "10,000 sampled terms keep both restriction properties; lifted pairs separate B_0", 600) as c:
        report = run_case("lemma5-6", seed=0, samples=10_000, depth=4)
        c.check("10,000 samples, no violation", report["verdict"] == "pass"
                and sum(report["evidence"]["branches"].values()) == 10_000)
        report = run_case("prop8", k=3)
        ev = report["evidence"]
        c.check("lifted pair for every point outside B_0",
                report["verdict"] == "pass" and ev["points_outside_B"] > 0 and not ev["failures"])


def _boolean(*names):
    ops = {"xor": [0, 1, 1, 0], "and": [0, 0, 0, 1], "or": [0, 1, 1, 1]}
    return CloneSpec(2, {n: OpTable(2, 2, ops[n]) for n in names})


def test_7_oracle_agreement():
    with Criterion(7, "layers match the term oracle; closure matches the equalizer meet on 200 instances", 120) as c:
        for names in (("xor",), ("and", "or")):
            spec = _boolean(*names)
            for n in (1, 2, 3):
                c.check(f"{'+'.join(names)} arity {n}", set(generate_layer(spec, n)) == term_oracle(spec, n))
        rng = np.random.default_rng(1)
        done = 0
        agree = True
        while done < 200:
            base, n = int(rng.integers(1, 4)), int(rng.integers(1, 3))
            gens = {f"g{j}": OpTable(base, k, rng.integers(0, base, base**k))
                    for j, k in enumerate(rng.integers(1, 3, int(rng.integers(0, 3))))}
            spec = CloneSpec(base, gens, constantive=bool(rng.integers(2)))
            try:
                layer = generate_layer(spec, n, Budget(max_layer_size=2000))
            except BudgetExceeded:
                continue
            X = PointSet(base, n, rng.random(base**n) < rng.random())
            agree &= closure(layer, X).closure == closure_via_equalizers(layer, X)
            done += 1
        c.check("200 random instances agree", agree)


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
