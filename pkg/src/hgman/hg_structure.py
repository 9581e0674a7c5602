"""Almost hypercomplex structures with a Hermitian / anti-Hermitian metric.

The metric ``g`` is Hermitian for ``J1`` and anti-Hermitian (Norden) for
``J2`` and ``J3``, which is encoded by the fixed signs ``EPS = (1, -1, -1)``
in ``g(x, y) = eps_a g(J_a x, J_a y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from hgman.checks import Check, CheckReport, compare, skipped
from hgman.exact_linalg import SingularMatrixError, signature
from hgman.exact_tensor import (
    DOWN,
    UP,
    Tensor,
    apply_endo,
    circ,
    circ_front,
    cyclic_sum,
    identity,
    inverse_metric,
    raise_lower,
)
from hgman.lie_geometry import (
    ConnectionCoeffs,
    LieAlgebraSpec,
    covariant_derivative,
    nijenhuis,
)

__all__ = [
    "EPS",
    "CYCLIC",
    "HGStructureError",
    "HGManifold",
    "LeeData",
    "standard_H",
    "validate_hg",
    "structural_F",
    "lee_data",
    "lee_coefficient",
    "f_identity_suite",
    "lee_relations_check",
    "compose",
]

EPS = (1, -1, -1)
# cyclic permutations (alpha, beta, gamma) of (1, 2, 3), 0-based
CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


class HGStructureError(ValueError):
    """An (H,G) compatibility identity fails; the message names it."""


def compose(a: Tensor, b: Tensor) -> Tensor:
    """Endomorphism composition ``a∘b``."""
    return Tensor(a.components.dot(b.components), (UP, DOWN))


def standard_H(n: int) -> tuple[Tensor, Tensor, Tensor]:
    """The standard quaternionic triple on ``R^{4n}``, acting blockwise.

    On each block ``X1..X4``: ``J1 X1 = X2``, ``J2 X1 = X3``, ``J3 X1 = -X4``
    and so on.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    # images of X1..X4 as (target, sign), 0-based within a block
    table = (
        ((1, 1), (0, -1), (3, -1), (2, 1)),
        ((2, 1), (3, 1), (0, -1), (1, -1)),
        ((3, -1), (2, 1), (1, -1), (0, 1)),
    )
    out = []
    for rows in table:
        m = np.zeros((4 * n, 4 * n), dtype=int)
        for k in range(n):
            for src, (dst, sign) in enumerate(rows):
                m[4 * k + dst, 4 * k + src] = sign
        out.append(Tensor(m, (UP, DOWN)))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class HGManifold:
    spec: LieAlgebraSpec
    g: Tensor
    J: tuple[Tensor, Tensor, Tensor]
    g_alpha: tuple[Tensor, Tensor, Tensor]
    g_inv: Tensor
    eps: tuple[int, int, int] = EPS

    @property
    def dim(self) -> int:
        return self.spec.dim

    @property
    def n(self) -> int:
        return self.dim // 4


def validate_hg(spec: LieAlgebraSpec, g: Tensor, J) -> HGManifold:
    """Check every compatibility condition exactly and build the structure.

    Raises :class:`HGStructureError` naming the failing identity and the
    first offending (1-based) indices.
    """
    m = spec.dim
    J = tuple(J)
    if m % 4 or m == 0:
        raise HGStructureError(f"dimension {m} is not a positive multiple of 4")
    if len(J) != 3:
        raise HGStructureError("need exactly three almost complex structures")
    if g.variance != (DOWN, DOWN) or g.dim != m:
        raise HGStructureError("metric must be a (0,2) tensor of the algebra's dimension")
    for a, Ja in enumerate(J):
        if Ja.variance != (UP, DOWN) or Ja.dim != m:
            raise HGStructureError(f"J{a + 1} must be a (1,1) tensor of dimension {m}")
    G = g.components
    if np.any(G != G.T):
        i, j = np.argwhere(G != G.T)[0]
        raise HGStructureError(f"g is not symmetric at ({i + 1},{j + 1})")
    try:
        g_inv = inverse_metric(g)
    except SingularMatrixError:
        raise HGStructureError("g is degenerate") from None

    minus_id = -identity(m)
    for a, Ja in enumerate(J):
        _expect(compose(Ja, Ja), minus_id, f"J{a + 1}^2 = -I")
    for a, b, c in CYCLIC:
        _expect(compose(J[b], J[c]), J[a], f"J{a + 1} = J{b + 1} J{c + 1}")
        _expect(compose(J[c], J[b]), -J[a], f"J{a + 1} = -J{c + 1} J{b + 1}")

    g_alpha = []
    for a, Ja in enumerate(J):
        transformed = np.einsum("ax,by,ab->xy", Ja.components, Ja.components, G, optimize=True)
        _expect(
            Tensor(G, g.variance),
            Tensor(EPS[a] * transformed, g.variance),
            f"g(x,y) = eps{a + 1} g(J{a + 1}x, J{a + 1}y)",
        )
        g_alpha.append(Tensor(np.einsum("ax,ay->xy", Ja.components, G), (DOWN, DOWN)))

    pos, neg, zero = signature(G)
    if zero or pos != neg:
        raise HGStructureError(f"g has signature ({pos},{neg},{zero}), not neutral")
    for a in (1, 2):
        pos, neg, zero = signature(g_alpha[a].components)
        if zero or pos != neg:
            raise HGStructureError(f"g{a + 1} has signature ({pos},{neg},{zero}), not neutral")
    return HGManifold(spec, g, J, tuple(g_alpha), g_inv)


def _expect(lhs: Tensor, rhs: Tensor, what: str):
    chk = compare(what, lhs, rhs)
    if not chk.passed:
        raise HGStructureError(f"{what} fails at {chk.witness}")


def structural_F(M: HGManifold, conn: ConnectionCoeffs, alpha: int) -> Tensor:
    """``F_alpha(x,y,z) = g((nabla_x J_alpha) y, z)``; ``alpha`` is 1, 2 or 3."""
    if alpha not in (1, 2, 3):
        raise ValueError("alpha must be 1, 2 or 3")
    DJ = covariant_derivative(M.J[alpha - 1], conn)  # DJ[u, a, b] = (nabla_u J)^a_b
    return Tensor(np.einsum("uay,az->uyz", DJ.components, M.g.components), (DOWN,) * 3)


def lee_coefficient(n: int, alpha: int) -> Fraction:
    """Factor ``4n / (1 - eps_a (4n - 1))`` turning ``theta_a∘J_a`` into ``theta``."""
    return Fraction(4 * n, 1 - EPS[alpha - 1] * (4 * n - 1))


@dataclass(frozen=True, eq=False)
class LeeData:
    theta_alpha: tuple[Tensor, Tensor, Tensor]
    theta: Tensor
    Omega: Tensor
    Omega_alpha: tuple[Tensor, Tensor, Tensor]
    norms: tuple[Fraction, Fraction, Fraction]
    theta_candidates: tuple[Tensor, Tensor, Tensor]
    canonical: bool

    @property
    def theta_Omega(self) -> Fraction:
        return Fraction(np.dot(self.theta.components, self.Omega.components))


class LeeConsistencyError(ArithmeticError):
    pass


def lee_data(M: HGManifold, F, in_W: bool | None = None) -> LeeData:
    """Lee forms, the unified Lee form, Lee vectors and square norms of nabla J.

    ``theta`` is taken from ``alpha = 1``.  When ``in_W`` is true the three
    candidates from ``alpha = 1, 2, 3`` must coincide, otherwise
    :class:`LeeConsistencyError` is raised.  Outside the class the result
    is flagged non-canonical.
    """
    gi = M.g_inv.components
    thetas = tuple(
        Tensor(np.einsum("ij,ijz->z", gi, Fa.components), (DOWN,)) for Fa in F
    )
    candidates = tuple(
        Tensor(
            lee_coefficient(M.n, a + 1) * np.einsum("a,az->z", thetas[a].components, M.J[a].components),
            (DOWN,),
        )
        for a in range(3)
    )
    if in_W:
        for a in (1, 2):
            if candidates[a] != candidates[0]:
                raise LeeConsistencyError(
                    f"unified Lee form from J{a + 1} differs from J1 on a W-manifold"
                )
    theta = candidates[0]
    Omega = raise_lower(theta, 0, M.g, M.g_inv)
    Omega_alpha = tuple(raise_lower(t, 0, M.g, M.g_inv) for t in thetas)
    norms = tuple(
        Fraction(
            np.asarray(
                np.einsum("ij,kl,bc,ikb,jlc->", gi, gi, gi, Fa.components, Fa.components, optimize=True)
            ).item()
        )
        for Fa in F
    )
    return LeeData(thetas, theta, Omega, Omega_alpha, norms, candidates, bool(in_W))


def _F_ops(F, J):
    """Shorthands: ``Fy(a, b)`` = F_a(x, J_b y, z), ``Fz(a, b)`` = F_a(x, y, J_b z)."""

    def Fy(a, b):
        return apply_endo(F[a], J[b], 1).components

    def Fz(a, b):
        return apply_endo(F[a], J[b], 2).components

    def Fyz(a, b, c):
        return apply_endo(apply_endo(F[a], J[b], 1), J[c], 2).components

    return Fy, Fz, Fyz


def f_identity_suite(M: HGManifold, conn: ConnectionCoeffs, R: Tensor, F) -> CheckReport:
    """Verify the fundamental F identities and the Ricci-identity corollaries.

    Every identity is compared componentwise over all frame index tuples.
    The cyclic curvature identity for Norden structures is only claimed for
    integrable ``J``; it is skipped when the Nijenhuis tensor is nonzero.
    """
    report = CheckReport()
    F = tuple(F)
    J, eps = M.J, EPS
    Fy, Fz, Fyz = _F_ops(F, J)
    for a in range(3):
        Fa, e = F[a].components, eps[a]
        tag = f"[{a + 1}]"
        report.add(compare(f"F-skew{tag}", Fa, -e * np.einsum("xzy->xyz", Fa)))
        report.add(compare(f"F-JJ{tag}", Fa, -e * Fyz(a, a, a)))
        report.add(compare(f"F-Jshift{tag}", Fy(a, a), e * Fz(a, a)))
    for a, b, c in CYCLIC:
        tag = f"[{a + 1}{b + 1}{c + 1}]"
        Fa = F[a].components
        report.add(compare(f"F-prop-1a{tag}", Fa, Fy(b, c) - eps[b] * Fz(c, b)))
        report.add(compare(f"F-prop-1b{tag}", Fa, -Fy(c, b) + eps[c] * Fz(b, c)))
        report.add(
            compare(
                f"F-prop-2{tag}",
                Fy(b, c) - eps[c] * Fz(b, c) + Fy(c, b) - eps[b] * Fz(c, b),
                np.zeros_like(Fa),
            )
        )
        report.add(compare(f"F1ab-mixed{tag}", Fyz(a, b, c), eps[a] * Fyz(a, c, b)))
        report.add(compare(f"F1ab-same{tag}", Fyz(a, b, b), -eps[a] * Fyz(a, c, c)))

    Rc = R.components
    for a in range(3):
        e, tag = eps[a], f"[{a + 1}]"
        nF = covariant_derivative(F[a], conn).components  # nF[x, y, z, w]
        alt = nF - np.einsum("yxzw->xyzw", nF)
        RJz = apply_endo(R, J[a], 2).components
        RJw = apply_endo(R, J[a], 3).components
        report.add(compare(f"Ric-id{tag}", alt, RJz + e * RJw))
        lhs = Rc - e * circ(R, J[a]).components
        altJw = np.einsum("xyzb,bw->xyzw", alt, J[a].components)
        report.add(compare(f"Ric-id-J-1{tag}", lhs, -e * altJw))
        altJz = np.einsum("xybw,bz->xyzw", alt, J[a].components)
        report.add(compare(f"Ric-id-J-2{tag}", lhs, -altJz))

    for a in (1, 2):
        name = f"cyclic-Norden[{a + 1}]"
        if not nijenhuis(J[a], M.spec).is_zero():
            report.add(skipped(name, f"J{a + 1} not integrable"))
            continue
        report.add(compare(name, norden_cyclic_identity(M, R, F[a], a + 1), np.zeros_like(Rc)))
    return report


def norden_cyclic_identity(M: HGManifold, R: Tensor, Fa: Tensor, alpha: int) -> np.ndarray:
    """Left side of the cyclic curvature identity of a complex Norden manifold.

    Cyclic sum over (x, y, z) of
    ``R(Jx,Jy,z,w) + R(x,y,Jz,Jw) + g((nabla_x J)y - (nabla_y J)x, (nabla_z J)w - (nabla_w J)z)``.
    """
    Ja = M.J[alpha - 1]
    F = Fa.components
    skew = F - np.einsum("yxb->xyb", F)  # g((nabla_x J)y - (nabla_y J)x, e_b)
    quad = np.einsum("xyb,bc,zwc->xyzw", skew, M.g_inv.components, skew, optimize=True)
    inner = circ_front(R, Ja).components + circ(R, Ja).components + quad
    return cyclic_sum(Tensor(inner, (DOWN,) * 4)).components


class PreconditionError(ValueError):
    """An operation that is only defined on a sub-class was invoked outside it."""


def lee_relations_check(M: HGManifold, lee: LeeData, in_W: bool) -> CheckReport:
    """Lee-vector square relations, norms of nabla J and the isotropy criterion."""
    if not in_W:
        raise PreconditionError("Lee relations are only asserted on W-manifolds")
    n = M.n
    report = CheckReport()
    tO = lee.theta_Omega
    for a in range(3):
        e = EPS[a]
        ta = Fraction(np.dot(lee.theta_alpha[a].components, lee.Omega_alpha[a].components))
        coeff = Fraction(e * 16 * n * n, (1 - e * (4 * n - 1)) ** 2)
        report.add(compare(f"theta(Omega)-vs-theta{a + 1}", tO, coeff * ta))
        report.add(
            compare(
                f"norm-nablaJ{a + 1}",
                lee.norms[a],
                Fraction((4 * n - 1) * e - 1, 4 * n * n) * tO,
            )
        )
    isotropic_norms = all(x == 0 for x in lee.norms)
    report.add(Check("isotropic-iff-Omega-isotropic", isotropic_norms == (tO == 0)))
    return report


def is_isotropic_hk(lee: LeeData) -> bool:
    return all(x == 0 for x in lee.norms)


__all__ += ["PreconditionError", "LeeConsistencyError", "is_isotropic_hk", "norden_cyclic_identity"]
