"""Left-invariant geometry on a Lie group given by its structure constants.

Everything lives on a left-invariant frame ``e_1..e_m``: component
functions are constant, so derivatives of components vanish and every
covariant derivative reduces to algebra on the connection coefficients.

Conventions (0-based arrays):

* ``c[i, j, k]``: ``[e_i, e_j] = sum_k c[i, j, k] e_k``
* ``gamma[i, j, k]``: ``nabla_{e_i} e_j = sum_k gamma[i, j, k] e_k``
* a (1,1) tensor ``J`` has variance ``("u", "d")`` and ``J e_b = sum_a J[a, b] e_a``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from hgman.exact_tensor import (
    DOWN,
    UP,
    Tensor,
    VarianceError,
    frac_array,
    inverse_metric,
)

__all__ = [
    "LieAlgebraSpec",
    "ConnectionCoeffs",
    "LieValidation",
    "validate_lie_algebra",
    "levi_civita",
    "riemann",
    "ricci_scalar",
    "connection_curvature",
    "torsion_of",
    "covariant_derivative",
    "nijenhuis",
    "is_abelian_structure",
    "exterior_d_oneform",
    "bracket",
]


@dataclass(frozen=True, eq=False)
class LieAlgebraSpec:
    """Structure constants of a real Lie algebra on a fixed basis."""

    c: np.ndarray

    def __post_init__(self):
        c = frac_array(self.c)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise ValueError(f"structure constants must be m x m x m, got {c.shape}")
        c.flags.writeable = False
        object.__setattr__(self, "c", c)

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict[tuple[int, int], dict[int, object]]):
        """Build from ``{(i, j): {k: value}}`` with 0-based indices.

        Only ``[e_i, e_j]`` needs to be given; ``[e_j, e_i]`` is filled in by
        antisymmetry.
        """
        c = np.zeros((dim, dim, dim), dtype=object)
        c[...] = Fraction(0)
        for (i, j), rhs in brackets.items():
            for k, v in rhs.items():
                c[i, j, k] += Fraction(v)
                c[j, i, k] -= Fraction(v)
        return cls(c)

    @classmethod
    def abelian(cls, dim: int):
        return cls(np.zeros((dim, dim, dim), dtype=int))


@dataclass(frozen=True, eq=False)
class ConnectionCoeffs:
    """Frame components of a linear connection: ``gamma[i, j, k]``."""

    gamma: np.ndarray

    def __post_init__(self):
        g = frac_array(self.gamma)
        if g.ndim != 3 or len(set(g.shape)) != 1:
            raise ValueError(f"connection coefficients must be m x m x m, got {g.shape}")
        g.flags.writeable = False
        object.__setattr__(self, "gamma", g)

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def __add__(self, other: ConnectionCoeffs) -> ConnectionCoeffs:
        return ConnectionCoeffs(self.gamma + other.gamma)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConnectionCoeffs):
            return NotImplemented
        return self.gamma.shape == other.gamma.shape and bool(np.all(self.gamma == other.gamma))

    __hash__ = None

    def nonzero(self) -> dict[tuple[int, int, int], Fraction]:
        return {
            tuple(int(i) for i in idx): self.gamma[idx]
            for idx in zip(*np.nonzero(self.gamma != 0))
        }

    def apply(self, i: int, j: int) -> np.ndarray:
        """Components of ``nabla_{e_i} e_j``."""
        return self.gamma[i, j]


@dataclass
class LieValidation:
    antisymmetry: list[tuple[int, int, int]] = field(default_factory=list)
    jacobi: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.antisymmetry and not self.jacobi


def validate_lie_algebra(spec: LieAlgebraSpec) -> LieValidation:
    """Report antisymmetry and Jacobi violations (0-based index tuples)."""
    c = spec.c
    m = spec.dim
    report = LieValidation()
    for i, j, k in product(range(m), repeat=3):
        if i <= j and c[i, j, k] != -c[j, i, k]:
            report.antisymmetry.append((i, j, k))
    # [[e_i,e_j],e_l] + cyclic, component along e_t
    jac = np.einsum("ijs,slt->ijlt", c, c)
    total = jac + np.einsum("jlit->ijlt", jac) + np.einsum("lijt->ijlt", jac)
    for idx in zip(*np.nonzero(total != 0)):
        report.jacobi.append(tuple(int(x) for x in idx))
    return report


def _check_dim(spec: LieAlgebraSpec, *objs):
    for o in objs:
        if o is not None and o.dim != spec.dim:
            raise VarianceError(f"dimension mismatch: {o.dim} vs {spec.dim}")


def bracket(spec: LieAlgebraSpec, x, y) -> np.ndarray:
    """Bracket of two vectors given by frame components."""
    return np.einsum("i,j,ijk->k", frac_array(x), frac_array(y), spec.c, optimize=True)


def levi_civita(spec: LieAlgebraSpec, g: Tensor) -> ConnectionCoeffs:
    """Levi-Civita connection of a left-invariant metric via the Koszul formula.

    ``2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)``.  Torsion
    freeness and metric compatibility are asserted on the result.
    """
    _check_dim(spec, g)
    if g.variance != (DOWN, DOWN):
        raise VarianceError("metric must be (0,2)")
    G = g.components
    c = spec.c
    cl = np.einsum("ijk,kl->ijl", c, G)  # g([e_i, e_j], e_l)
    lowered = (cl - np.einsum("jli->ijl", cl) + np.einsum("lij->ijl", cl)) / 2
    gi = inverse_metric(g).components
    conn = ConnectionCoeffs(np.einsum("ijl,lk->ijk", lowered, gi))
    torsion = conn.gamma - np.einsum("jik->ijk", conn.gamma) - c
    if np.any(torsion != 0):
        raise AssertionError("Levi-Civita connection is not torsion free")
    if not covariant_derivative(g, conn).is_zero():
        raise AssertionError("Levi-Civita connection is not metric")
    return conn


def _curvature_endo(spec: LieAlgebraSpec, conn: ConnectionCoeffs) -> np.ndarray:
    """``out[i, j, k, p]``: component p of ``[D_i, D_j] e_k - D_[e_i, e_j] e_k``."""
    _check_dim(spec, conn)
    G, c = conn.gamma, spec.c
    first = np.einsum("jkm,imp->ijkp", G, G)
    second = np.einsum("ikm,jmp->ijkp", G, G)
    third = np.einsum("ijm,mkp->ijkp", c, G)
    return first - second - third


def connection_curvature(spec: LieAlgebraSpec, conn: ConnectionCoeffs, g: Tensor) -> Tensor:
    """(0,4) curvature ``K(x,y,z,w) = g(K(x,y)z, w)`` of an arbitrary connection."""
    _check_dim(spec, conn, g)
    endo = _curvature_endo(spec, conn)
    return Tensor(np.einsum("ijkp,pl->ijkl", endo, g.components), (DOWN,) * 4)


def riemann(spec: LieAlgebraSpec, conn: ConnectionCoeffs, g: Tensor) -> Tensor:
    """Riemann tensor ``R(x,y,z,w) = g(R(x,y)z, w)`` with
    ``R(x,y) = [nabla_x, nabla_y] - nabla_[x,y]``."""
    return connection_curvature(spec, conn, g)


def ricci_scalar(R: Tensor, g: Tensor, g_inv: Tensor | None = None) -> tuple[Tensor, Fraction]:
    """Ricci tensor ``rho(y,z) = g^{is} R(e_i, y, z, e_s)`` and its trace.

    This pairing reproduces the worked four-dimensional example tables
    exactly (the opposite pairing flips every sign).
    """
    if R.variance != (DOWN,) * 4:
        raise VarianceError("R must be (0,4)")
    gi = (g_inv if g_inv is not None else inverse_metric(g)).components
    rho = Tensor(np.einsum("is,iyzs->yz", gi, R.components), (DOWN, DOWN))
    tau = Fraction(np.einsum("yz,yz->", gi, rho.components))
    return rho, tau


def torsion_of(spec: LieAlgebraSpec, conn: ConnectionCoeffs, g: Tensor) -> Tensor:
    """``T(x,y,z) = g(D_x y - D_y x - [x,y], z)``."""
    _check_dim(spec, conn, g)
    G = conn.gamma
    vec = G - np.einsum("jik->ijk", G) - spec.c
    return Tensor(np.einsum("ijk,kl->ijl", vec, g.components), (DOWN,) * 3)


def covariant_derivative(t: Tensor, conn: ConnectionCoeffs) -> Tensor:
    """Covariant derivative of a left-invariant tensor; the new slot is first.

    ``(D_u t)`` picks up ``+gamma`` for each contravariant slot and
    ``-gamma`` for each covariant slot; component derivatives vanish.
    """
    if t.rank == 0:
        raise VarianceError("scalars have zero covariant derivative; pass a tensor")
    if t.dim != conn.dim:
        raise VarianceError(f"dimension mismatch: {t.dim} vs {conn.dim}")
    G = conn.gamma
    T = t.components
    m = t.dim
    out = np.zeros((m,) + T.shape, dtype=object)
    out[...] = Fraction(0)
    terms = [(u, a, b, G[u, a, b]) for u, a, b in zip(*np.nonzero(G != 0))]
    for s, v in enumerate(t.variance):
        moved = np.moveaxis(T, s, 0)  # slot s first
        view = np.moveaxis(out, s + 1, 1)  # (u, slot s, rest...)
        for u, a, b, x in terms:
            # UP: +gamma[u, a, b] t^{..a..} lands at index b; DOWN: -gamma[u, b, a] t_{..a..}
            src, dst, sign = (a, b, x) if v == UP else (b, a, -x)
            if np.any(moved[src]):
                view[u, dst] = view[u, dst] + moved[src] * sign
    return Tensor(out, (DOWN,) + t.variance)


def _require_almost_complex(J: Tensor):
    if J.variance != (UP, DOWN):
        raise VarianceError("J must be a (1,1) tensor")
    sq = J.components.dot(J.components)
    if np.any(sq + np.eye(J.dim, dtype=int) != 0):
        raise ValueError("J is not almost complex: J^2 != -I")


def nijenhuis(J: Tensor, spec: LieAlgebraSpec) -> Tensor:
    """``N(x,y) = [Jx,Jy] - J[Jx,y] - J[x,Jy] - [x,y]`` as a (1,2) tensor.

    Components are stored as ``N[k, i, j]`` (variance ``u, d, d``).
    """
    _require_almost_complex(J)
    _check_dim(spec, J)
    Jm, c = J.components, spec.c
    JJ = np.einsum("ai,bj,abk->ijk", Jm, Jm, c, optimize=True)
    Jx_y = np.einsum("ai,ajm,km->ijk", Jm, c, Jm, optimize=True)
    x_Jy = np.einsum("bj,ibm,km->ijk", Jm, c, Jm, optimize=True)
    N = JJ - Jx_y - x_Jy - c
    return Tensor(np.einsum("ijk->kij", N), (UP, DOWN, DOWN))


def is_abelian_structure(J: Tensor, spec: LieAlgebraSpec) -> bool:
    """True iff ``[J e_i, J e_j] = [e_i, e_j]`` for every pair of basis vectors."""
    _require_almost_complex(J)
    _check_dim(spec, J)
    Jm = J.components
    JJ = np.einsum("ai,bj,abk->ijk", Jm, Jm, spec.c, optimize=True)
    return bool(np.all(JJ == spec.c))


def exterior_d_oneform(theta: Tensor, spec: LieAlgebraSpec) -> Tensor:
    """``d theta(x, y) = -theta([x, y])`` for a left-invariant 1-form."""
    if theta.variance != (DOWN,):
        raise VarianceError("theta must be a (0,1) tensor")
    _check_dim(spec, theta)
    return Tensor(-np.einsum("ijk,k->ij", spec.c, theta.components), (DOWN, DOWN))
