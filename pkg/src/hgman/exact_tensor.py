"""Dense exact-rational tensors over a frame.

Components are stored in numpy object arrays holding :class:`fractions.Fraction`
values, so every sum and product is exact.  Each slot carries a variance
flag, ``"u"`` (contravariant) or ``"d"`` (covariant), which contraction and
index raising check.

Frame indices are 0-based here; reports and config files use the
1-based labels ``X_1 .. X_{4n}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from hgman.exact_linalg import SingularMatrixError, inverse

__all__ = [
    "Scalar",
    "Tensor",
    "VarianceError",
    "scalar",
    "frac_array",
    "zeros",
    "identity",
    "tensor",
    "outer",
    "contract",
    "inverse_metric",
    "raise_lower",
    "kulkarni_nomizu",
    "cyclic_sum",
    "trace4",
    "circ",
    "circ_front",
    "apply_endo",
    "matmul_axis",
]

Scalar = Fraction
UP, DOWN = "u", "d"


class VarianceError(ValueError):
    """Slot variances or ranks are incompatible with the requested operation."""


def scalar(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and ``"p/q"`` / ``"p"`` strings.  Floats are
    rejected: they cannot be represented without rounding in general.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


_as_fraction = np.frompyfunc(scalar, 1, 1)


def frac_array(data) -> np.ndarray:
    """Return ``data`` as an object array whose entries are all Fractions."""
    arr = np.asarray(data, dtype=object)
    if arr.ndim == 0:
        return np.asarray(scalar(arr.item()), dtype=object)
    return _as_fraction(arr).astype(object)


@dataclass(frozen=True, eq=False)
class Tensor:
    """A dense tensor with exact components and per-slot variance."""

    components: np.ndarray
    variance: tuple[str, ...]

    def __post_init__(self):
        comps = frac_array(self.components)
        object.__setattr__(self, "components", comps)
        variance = tuple(self.variance)
        object.__setattr__(self, "variance", variance)
        if any(v not in (UP, DOWN) for v in variance):
            raise VarianceError(f"bad variance {variance!r}")
        if comps.ndim != len(variance):
            raise VarianceError(
                f"{comps.ndim} component axes but {len(variance)} variance flags"
            )
        if comps.ndim and len(set(comps.shape)) != 1:
            raise VarianceError(f"non-square component array {comps.shape}")
        comps.flags.writeable = False

    @property
    def rank(self) -> int:
        return len(self.variance)

    @property
    def dim(self) -> int:
        return self.components.shape[0] if self.rank else 0

    def __getitem__(self, idx):
        return self.components[idx]

    def __neg__(self) -> Tensor:
        return Tensor(-self.components, self.variance)

    def _check_compatible(self, other: Tensor):
        if not isinstance(other, Tensor):
            raise TypeError("expected a Tensor")
        if other.variance != self.variance or other.components.shape != self.components.shape:
            raise VarianceError(
                f"shape/variance mismatch {self.variance} vs {other.variance}"
            )

    def __add__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(self.components + other.components, self.variance)

    def __sub__(self, other: Tensor) -> Tensor:
        self._check_compatible(other)
        return Tensor(self.components - other.components, self.variance)

    def __mul__(self, k) -> Tensor:
        return Tensor(self.components * scalar(k), self.variance)

    __rmul__ = __mul__

    def __truediv__(self, k) -> Tensor:
        return Tensor(self.components / scalar(k), self.variance)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (
            self.variance == other.variance
            and self.components.shape == other.components.shape
            and bool(np.all(self.components == other.components))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.components != 0)

    def nonzero(self) -> dict[tuple[int, ...], Fraction]:
        """Map of 0-based index tuples to nonzero components."""
        return {
            tuple(int(i) for i in idx): self.components[idx]
            for idx in zip(*np.nonzero(self.components != 0))
        }

    def first_nonzero(self):
        """First (lexicographic) index tuple with a nonzero component, or None."""
        idx = np.argwhere(self.components != 0)
        return tuple(int(i) for i in idx[0]) if len(idx) else None

    def permute(self, order: Sequence[int]) -> Tensor:
        """Tensor whose slot ``k`` is slot ``order[k]`` of ``self``."""
        return Tensor(
            np.transpose(self.components, order),
            tuple(self.variance[i] for i in order),
        )

    def with_component(self, idx, value) -> Tensor:
        """Copy with one component replaced (used for negative controls)."""
        comps = self.components.copy()
        comps[idx] = scalar(value)
        return Tensor(comps, self.variance)


def zeros(dim: int, variance: Iterable[str]) -> Tensor:
    variance = tuple(variance)
    return Tensor(frac_array(np.zeros((dim,) * len(variance), dtype=int)), variance)


def identity(dim: int) -> Tensor:
    """The (1,1) Kronecker delta."""
    return Tensor(frac_array(np.eye(dim, dtype=int)), (UP, DOWN))


def tensor(data, variance: Iterable[str]) -> Tensor:
    return Tensor(frac_array(data), tuple(variance))


def outer(a: Tensor, b: Tensor) -> Tensor:
    if a.dim != b.dim and a.rank and b.rank:
        raise VarianceError("dimension mismatch")
    return Tensor(np.multiply.outer(a.components, b.components), a.variance + b.variance)


def contract(t: Tensor, pairs: Sequence[tuple[int, int]]) -> Tensor | Fraction:
    """Sum over each ``(slot, slot)`` pair; each pair must join an up and a down slot.

    The remaining slots keep their original order.  A full contraction
    returns a Fraction.
    """
    used: set[int] = set()
    for a, b in pairs:
        for s in (a, b):
            if not 0 <= s < t.rank:
                raise VarianceError(f"slot {s} out of range for rank {t.rank}")
            if s in used:
                raise VarianceError(f"slot {s} used twice")
            used.add(s)
        if {t.variance[a], t.variance[b]} != {UP, DOWN}:
            raise VarianceError(f"slots {a},{b} are not an up/down pair")
    letters = [chr(ord("a") + k) for k in range(t.rank)]
    for a, b in pairs:
        letters[b] = letters[a]
    keep = [k for k in range(t.rank) if k not in used]
    spec = "".join(letters) + "->" + "".join(letters[k] for k in keep)
    out = np.einsum(spec, t.components) if t.rank else t.components
    if not keep:
        return scalar(out.item() if isinstance(out, np.ndarray) else out)
    return Tensor(frac_array(out), tuple(t.variance[k] for k in keep))


def inverse_metric(g: Tensor) -> Tensor:
    """g^{ij} for a nondegenerate (0,2) metric; raises SingularMatrixError."""
    if g.variance != (DOWN, DOWN):
        raise VarianceError("metric must be a (0,2) tensor")
    return Tensor(inverse(g.components), (UP, UP))


def matmul_axis(arr: np.ndarray, m: np.ndarray, axis: int) -> np.ndarray:
    """Contract ``arr`` along ``axis`` with the rows of the matrix ``m``.

    The result index replaces ``axis`` in place. Zero entries of ``m`` and
    all-zero slices of ``arr`` are skipped, which matters for the signed
    permutation matrices and sparse metrics this package deals in.
    """
    moved = np.moveaxis(arr, axis, 0)
    out = np.empty((m.shape[1],) + moved.shape[1:], dtype=object)
    out[...] = Fraction(0)
    live = [a for a in range(m.shape[0]) if np.any(moved[a])]
    for a in live:
        row = moved[a]
        for j in range(m.shape[1]):
            c = m[a, j]
            if c == 1:
                out[j] = out[j] + row
            elif c == -1:
                out[j] = out[j] - row
            elif c:
                out[j] = out[j] + row * c
    return np.moveaxis(out, 0, axis)


def raise_lower(t: Tensor, slot: int, g: Tensor, g_inv: Tensor | None = None) -> Tensor:
    """Flip the variance of ``slot`` using ``g`` (lower) or ``g^{-1}`` (raise)."""
    if not 0 <= slot < t.rank:
        raise VarianceError(f"slot {slot} out of range for rank {t.rank}")
    if t.variance[slot] == UP:
        m, new = g.components, DOWN
    else:
        m, new = (g_inv if g_inv is not None else inverse_metric(g)).components, UP
    out = matmul_axis(t.components, m, slot)
    variance = list(t.variance)
    variance[slot] = new
    return Tensor(frac_array(out), tuple(variance))


def _require(t: Tensor, variance: tuple[str, ...], what: str):
    if t.variance != variance:
        raise VarianceError(f"{what} must have variance {variance}, got {t.variance}")


def kulkarni_nomizu(a: Tensor, b: Tensor) -> Tensor:
    """(a⊙b)(x,y,z,w) = a(x,z)b(y,w) - a(y,z)b(x,w) + a(y,w)b(x,z) - a(x,w)b(y,z)."""
    _require(a, (DOWN, DOWN), "first factor")
    _require(b, (DOWN, DOWN), "second factor")
    if a.dim != b.dim:
        raise VarianceError("dimension mismatch")
    A, B = a.components, b.components
    out = (
        np.einsum("xz,yw->xyzw", A, B)
        - np.einsum("yz,xw->xyzw", A, B)
        + np.einsum("yw,xz->xyzw", A, B)
        - np.einsum("xw,yz->xyzw", A, B)
    )
    return Tensor(out, (DOWN,) * 4)


def cyclic_sum(t: Tensor) -> Tensor:
    """Cyclic sum over the first three slots of a (0,4) tensor."""
    _require(t, (DOWN,) * 4, "cyclic_sum argument")
    T = t.components
    out = T + np.einsum("yzxw->xyzw", T) + np.einsum("zxyw->xyzw", T)
    return Tensor(out, t.variance)


def trace4(t: Tensor, g: Tensor, g_inv: Tensor | None = None) -> Fraction:
    """g^{is} g^{jk} t(e_i, e_j, e_k, e_s)."""
    _require(t, (DOWN,) * 4, "trace4 argument")
    gi = (g_inv if g_inv is not None else inverse_metric(g)).components
    return scalar(np.asarray(np.einsum("is,jk,ijks->", gi, gi, t.components, optimize=True)).item())


def circ(t: Tensor, J: Tensor) -> Tensor:
    """(t∘J)(x, y, z, w) = t(x, y, Jz, Jw)."""
    _require(t, (DOWN,) * 4, "circ argument")
    _require(J, (UP, DOWN), "endomorphism")
    out = matmul_axis(matmul_axis(t.components, J.components, 2), J.components, 3)
    return Tensor(out, t.variance)


def circ_front(t: Tensor, J: Tensor) -> Tensor:
    """t(Jx, Jy, z, w)."""
    _require(t, (DOWN,) * 4, "circ_front argument")
    _require(J, (UP, DOWN), "endomorphism")
    out = matmul_axis(matmul_axis(t.components, J.components, 0), J.components, 1)
    return Tensor(out, t.variance)


def apply_endo(t: Tensor, J: Tensor, slot: int) -> Tensor:
    """Precompose a covariant slot with J, i.e. t(..., J·, ...) in that slot."""
    _require(J, (UP, DOWN), "endomorphism")
    if t.variance[slot] != DOWN:
        raise VarianceError("can only precompose a covariant slot")
    return Tensor(matmul_axis(t.components, J.components, slot), t.variance)


__all__.append("SingularMatrixError")
