"""Manifold configuration files (JSON) and their conversion to :class:`HGManifold`.

See ``docs/schemas.md`` for the format.  Errors carry the offending field
path (``metric.diagonal[2]``) or, for malformed JSON, line and column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from hgman.exact_tensor import DOWN, UP, Tensor, scalar
from hgman.example import build_example_w4
from hgman.hg_structure import HGManifold, HGStructureError, standard_H, validate_hg
from hgman.lie_geometry import LieAlgebraSpec, validate_lie_algebra

__all__ = ["ConfigError", "ManifoldConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _scalar(value, where: str) -> Fraction:
    try:
        return scalar(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(where, f"expected an integer or a 'p/q' string, got {value!r} ({exc})") from None


def _index(value, dim: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not 1 <= value <= dim:
        raise ConfigError(where, f"expected an index in 1..{dim}, got {value!r}")
    return value - 1


def _matrix(value, dim: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        raise ConfigError(where, f"expected {dim} rows")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != dim:
            raise ConfigError(f"{where}[{i}]", f"expected {dim} entries")
        rows.append([_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    out = np.empty((dim, dim), dtype=object)
    out[...] = rows
    return out


@dataclass(frozen=True)
class ManifoldConfig:
    """Validated configuration: either explicit data or a point of the four-parameter family."""

    dim: int
    structure_constants: tuple[tuple[int, int, int, Fraction], ...] = ()
    metric: np.ndarray | None = None
    J: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None
    lambdas: tuple[Fraction, Fraction, Fraction, Fraction] | None = None

    def build(self) -> HGManifold:
        if self.lambdas is not None:
            return build_example_w4(self.lambdas)
        c = np.zeros((self.dim,) * 3, dtype=object)
        c[...] = Fraction(0)
        for i, j, k, v in self.structure_constants:
            c[i, j, k] += v
            c[j, i, k] -= v
        spec = LieAlgebraSpec(c)
        check = validate_lie_algebra(spec)
        if check.jacobi:
            i, j, l, t = (x + 1 for x in check.jacobi[0])
            raise ConfigError("structure_constants", f"Jacobi identity fails at ({i},{j},{l}) component {t}")
        J = self.J if self.J is not None else tuple(x.components for x in standard_H(self.dim // 4))
        try:
            return validate_hg(
                spec,
                Tensor(self.metric, (DOWN, DOWN)),
                tuple(Tensor(m, (UP, DOWN)) for m in J),
            )
        except HGStructureError as exc:
            raise ConfigError("metric/J", str(exc)) from None


def parse_config(data) -> ManifoldConfig:
    if not isinstance(data, dict):
        raise ConfigError("<root>", "expected a JSON object")
    known = {"dim", "structure_constants", "metric", "J", "lambdas", "description"}
    for key in data:
        if key not in known:
            raise ConfigError(key, "unknown field")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim <= 0 or dim % 4:
        raise ConfigError("dim", f"expected a positive multiple of 4, got {dim!r}")

    if "lambdas" in data:
        lam = data["lambdas"]
        if not isinstance(lam, list) or len(lam) != 4:
            raise ConfigError("lambdas", "expected a list of four scalars")
        if dim != 4:
            raise ConfigError("dim", "the lambda family is 4-dimensional")
        for key in ("structure_constants", "metric", "J"):
            if key in data:
                raise ConfigError(key, "not allowed together with lambdas")
        return ManifoldConfig(dim, lambdas=tuple(_scalar(x, f"lambdas[{i}]") for i, x in enumerate(lam)))

    entries = data.get("structure_constants", [])
    if not isinstance(entries, list):
        raise ConfigError("structure_constants", "expected a list of [i, j, k, value]")
    seen = set()
    consts = []
    for n, entry in enumerate(entries):
        where = f"structure_constants[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise ConfigError(where, "expected [i, j, k, value]")
        i, j, k = (_index(entry[p], dim, f"{where}[{p}]") for p in range(3))
        if i == j:
            raise ConfigError(where, "[e_i, e_i] is always zero")
        key = (min(i, j), max(i, j), k)
        if key in seen:
            raise ConfigError(where, "bracket component given twice (the (j,i) entry is implied)")
        seen.add(key)
        consts.append((i, j, k, _scalar(entry[3], f"{where}[3]")))

    if "metric" not in data:
        raise ConfigError("metric", "missing")
    metric = data["metric"]
    if isinstance(metric, dict):
        if set(metric) != {"diagonal"}:
            raise ConfigError("metric", "expected {'diagonal': [...]} or a dense matrix")
        diag = metric["diagonal"]
        if not isinstance(diag, list) or len(diag) != dim:
            raise ConfigError("metric.diagonal", f"expected {dim} entries")
        G = np.zeros((dim, dim), dtype=object)
        G[...] = Fraction(0)
        for i, x in enumerate(diag):
            G[i, i] = _scalar(x, f"metric.diagonal[{i}]")
    else:
        G = _matrix(metric, dim, "metric")

    J = data.get("J", "standard")
    if J == "standard":
        Js = None
    elif isinstance(J, list) and len(J) == 3:
        Js = tuple(_matrix(m, dim, f"J[{a}]") for a, m in enumerate(J))
    else:
        raise ConfigError("J", "expected \"standard\" or a list of three matrices")
    return ManifoldConfig(dim, tuple(consts), G, Js)


def load_config(path) -> ManifoldConfig:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_config(data)
