"""JSON file formats, spec digests and the on-disk layer cache."""

from __future__ import annotations

import hashlib
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .engine import Budget, CloneSpec, Layer, generate_layer
from .errors import DomainError
from .geometry import ClosureResult, EquivalenceVerdict
from .tables import OpTable, PointSet

CACHE_ENV = "CLONEGEO_CACHE"


def op_to_json(op: OpTable) -> dict[str, Any]:
    return {"base": op.base, "arity": op.arity, "table": op.tolist()}


def op_from_json(data: dict[str, Any]) -> OpTable:
    try:
        return OpTable(int(data["base"]), int(data["arity"]), np.asarray(data["table"]))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed operation: {exc}") from exc


def points_to_json(X: PointSet) -> dict[str, Any]:
    return {"base": X.base, "n": X.n, "points": [list(t) for t in X.tuples()]}


def points_from_json(data: dict[str, Any]) -> PointSet:
    try:
        return PointSet.from_tuples(int(data["base"]), int(data["n"]), data["points"])
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed point set: {exc}") from exc


def spec_to_json(spec: CloneSpec) -> dict[str, Any]:
    return {
        "base": spec.base,
        "constantive": spec.constantive,
        "ops": [{"name": name, "arity": op.arity, "table": op.tolist()} for name, op in spec.generators],
    }


def spec_from_json(data: dict[str, Any]) -> CloneSpec:
    try:
        base = int(data["base"])
        ops = {}
        for entry in data.get("ops", []):
            ops[str(entry["name"])] = OpTable(base, int(entry["arity"]), np.asarray(entry["table"]))
        if len(ops) != len(data.get("ops", [])):
            raise DomainError("duplicate generator names")
        return CloneSpec(base, ops, bool(data.get("constantive", False)))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed clone spec: {exc}") from exc


def canonical_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def spec_digest(spec: CloneSpec) -> str:
    return hashlib.sha256(canonical_json(spec_to_json(spec)).encode()).hexdigest()


def read_json(path: str | os.PathLike) -> Any:
    with open(path) as fh:
        return json.load(fh)


def atomic_write(path: str | os.PathLike, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str | os.PathLike, data: Any) -> None:
    atomic_write(path, (json.dumps(data, indent=1, sort_keys=True) + "\n").encode())


class LayerCache:
    """Sorted layer tables stored as ``<digest>-<n>.npy``."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path(self, spec: CloneSpec, n: int) -> Path:
        return self.directory / f"{spec_digest(spec)}-{n}.npy"

    def get(self, spec: CloneSpec, n: int) -> Layer | None:
        path = self.path(spec, n)
        if not path.exists():
            return None
        matrix = np.load(path, allow_pickle=False)
        return Layer(spec, n, matrix)

    def put(self, layer: Layer, spec: CloneSpec | None = None) -> Path:
        spec = spec or layer.spec
        path = self.path(spec, layer.n)
        buf = io.BytesIO()
        np.save(buf, np.asarray(layer.matrix), allow_pickle=False)
        atomic_write(path, buf.getvalue())
        return path


def cached_layer(
    spec: CloneSpec,
    n: int,
    budget: Budget | None = None,
    cache_dir: str | os.PathLike | None = None,
    **kwargs,
) -> Layer:
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    cache = LayerCache(cache_dir) if cache_dir else None
    if cache is not None:
        hit = cache.get(spec, n)
        if hit is not None:
            return hit
    if "upper_bound" not in kwargs:
        from .constructions.zmod import expansion_upper_bound

        kwargs["upper_bound"] = expansion_upper_bound(spec, n, budget)
    layer = generate_layer(spec, n, budget, **kwargs)
    if cache is not None:
        cache.put(layer)
    return layer


def closure_report(
    X: PointSet,
    result: ClosureResult,
    pair: tuple[OpTable, OpTable] | None = None,
    point=None,
) -> dict[str, Any]:
    report = {
        "kind": "closure",
        "arity": X.n,
        "input": points_to_json(X),
        "closure": points_to_json(result.closure),
        "classes": result.classes,
        "layer_size": result.layer_size,
    }
    if point is not None:
        report["point"] = list(point)
        report["in_closure"] = pair is None
        report["separating_pair"] = None if pair is None else [op_to_json(p) for p in pair]
    return report


def equivalence_report(verdict: EquivalenceVerdict) -> dict[str, Any]:
    return {
        "kind": "equivalence",
        "arity": verdict.arity,
        "equal": verdict.equal,
        "witness": None if verdict.witness is None else points_to_json(verdict.witness),
        "direction": verdict.direction,
    }
