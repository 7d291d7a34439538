"""Command line interface: ``clonegeo <command> ...``.

Machine-readable JSON goes to stdout, a short summary to stderr.
Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .constructions import (
    ModExpansionSpec,
    OplusSpec,
    build_janov,
    build_oplus,
    build_phi_spec,
    build_zmod_expansion,
    phi_layer,
)
from .engine import Budget, find_malcev
from .errors import BudgetExceeded, DomainError
from .geometry import alg_equal_at_arity, closure, is_algebraic, separating_pair
from .io import (
    CACHE_ENV,
    LayerCache,
    cached_layer,
    closure_report,
    equivalence_report,
    op_to_json,
    points_from_json,
    read_json,
    spec_digest,
    spec_from_json,
    spec_to_json,
    write_json,
)
from .verify import CASES, run_case

EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 1, 2, 3


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _budget(args) -> Budget:
    return Budget(
        max_layer_size=args.budget_layer,
        max_arity=args.max_arity,
        max_compositions=args.budget_compositions,
    )


def _emit(data, out=None) -> None:
    if out:
        write_json(out, data)
    else:
        json.dump(data, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")


def _info(msg: str) -> None:
    print(msg, file=sys.stderr)


def _load_spec(path):
    return spec_from_json(read_json(path))


def cmd_layer(args) -> int:
    spec = _load_spec(args.spec)
    layer = cached_layer(spec, args.arity, _budget(args), args.cache_dir)
    _emit({"digest": spec_digest(spec), "arity": args.arity, "size": len(layer)})
    _info(f"layer of arity {args.arity}: {len(layer)} members")
    return 0


def _closure_inputs(args):
    spec = _load_spec(args.spec)
    X = points_from_json(read_json(args.points))
    if X.base != spec.base:
        raise DomainError("point set and clone live on different carriers")
    return cached_layer(spec, X.n, _budget(args), args.cache_dir), X


def cmd_closure(args) -> int:
    layer, X = _closure_inputs(args)
    result = closure(layer, X)
    point = pair = None
    if args.point:
        point = tuple(_ints(args.point))
        if len(point) != X.n:
            raise DomainError(f"--point must have {X.n} coordinates")
        if point not in X:
            pair = separating_pair(layer, X, point)
    _emit(closure_report(X, result, pair, point))
    _info(f"closure: {len(X)} -> {len(result.closure)} points ({result.classes} classes)")
    return 0


def cmd_algebraic(args) -> int:
    layer, X = _closure_inputs(args)
    alg = is_algebraic(layer, X)
    _emit({"algebraic": alg, "arity": X.n, "size": len(X)})
    _info("algebraic" if alg else "not algebraic")
    return 0


def cmd_equal(args) -> int:
    budget = _budget(args)
    c, d = _load_spec(args.spec), _load_spec(args.other)
    lc = cached_layer(c, args.arity, budget, args.cache_dir)
    ld = cached_layer(d, args.arity, budget, args.cache_dir)
    verdict = alg_equal_at_arity(lc, ld)
    _emit(equivalence_report(verdict))
    _info(f"arity {args.arity}: {'equal' if verdict.equal else 'different'}")
    return 0


def cmd_malcev(args) -> int:
    spec = _load_spec(args.spec)
    d = find_malcev(cached_layer(spec, 3, _budget(args), args.cache_dir))
    _emit({"found": d is not None, "malcev": None if d is None else op_to_json(d)})
    _info("Mal'cev operation found" if d is not None else "no Mal'cev operation in the ternary layer")
    return 0


def cmd_construct(args) -> int:
    budget = _budget(args)
    if args.kind == "ad":
        spec = build_zmod_expansion(ModExpansionSpec(args.p, args.n, args.d))
    elif args.kind == "oplus":
        ospec = OplusSpec(_load_spec(args.base), args.one)
        if not ospec.hypothesis_ok:
            _info("warning: base carrier has fewer than 4 elements")
        spec = build_oplus(ospec)
    elif args.kind == "janov":
        spec = build_janov(_ints(args.set))
    else:
        base = _load_spec(args.base)
        base_layer = cached_layer(base, args.arity, budget, args.cache_dir)
        spec = build_phi_spec(base_layer, budget)
        # the spec is exact up to this arity; prime the cache with the known layer
        cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
        if cache_dir:
            full = phi_layer(base_layer, budget)
            LayerCache(cache_dir).put(full, spec)
    _emit(spec_to_json(spec), args.output)
    _info(f"{args.kind}: {len(spec.generators)} generators on {spec.base} elements")
    return 0


def cmd_verify(args) -> int:
    params = {"budget": _budget(args), "cache_dir": args.cache_dir}
    for name in ("p", "n", "d", "k", "i", "l", "seed", "samples", "depth", "max_n", "max_k"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = value
    if args.set is not None:
        params["index_set"] = _ints(args.set)
    if args.base is not None:
        params["base"] = _load_spec(args.base)
        params["base_name"] = os.path.splitext(os.path.basename(args.base))[0]
    start = time.perf_counter()
    report = run_case(args.case, **params)
    _emit(report)
    _info(f"{args.case}: {report['verdict']} ({time.perf_counter() - start:.1f}s)")
    return EXIT_FAIL if report["verdict"] == "fail" else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clonegeo", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-layer", type=int, default=Budget.max_layer_size)
    common.add_argument("--max-arity", type=int, default=Budget.max_arity)
    common.add_argument("--budget-compositions", type=int, default=None)
    common.add_argument("--cache-dir", default=None, help=f"layer cache (default: ${CACHE_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layer", parents=[common], help="generate an n-ary layer")
    p.add_argument("--spec", required=True)
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=cmd_layer)

    for name, func in (("closure", cmd_closure), ("algebraic", cmd_algebraic)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--spec", required=True)
        p.add_argument("--points", required=True)
        if name == "closure":
            p.add_argument("--point", help="comma separated tuple to separate from the input")
        p.set_defaults(func=func)

    p = sub.add_parser("equal", parents=[common], help="compare algebraic sets at one arity")
    p.add_argument("--spec", required=True)
    p.add_argument("--other", required=True)
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("malcev", parents=[common])
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_malcev)

    p = sub.add_parser("construct", help="emit a clone spec file")
    kinds = p.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("ad", parents=[common])
    k.add_argument("--p", type=int, required=True)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--d", type=int, required=True)
    k = kinds.add_parser("oplus", parents=[common])
    k.add_argument("--base", required=True)
    k.add_argument("--one", type=int, default=0)
    k = kinds.add_parser("janov", parents=[common])
    k.add_argument("--set", required=True)
    k = kinds.add_parser("phi", parents=[common])
    k.add_argument("--base", required=True)
    k.add_argument("--arity", type=int, default=2)
    for k in kinds.choices.values():
        k.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="reproduce a witness")
    p.add_argument("case", choices=CASES)
    for flag in ("--p", "--n", "--d", "--k", "--i", "--l", "--seed", "--samples", "--depth", "--max-n", "--max-k"):
        p.add_argument(flag, type=int)
    p.add_argument("--set")
    p.add_argument("--base")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        partial = "" if exc.partial_size is None else f" (partial size {exc.partial_size})"
        _info(f"budget exceeded: {exc}{partial}")
        return EXIT_BUDGET
    except (DomainError, OSError, ValueError, KeyError) as exc:
        _info(f"invalid input: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
