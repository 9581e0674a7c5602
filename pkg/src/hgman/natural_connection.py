"""The natural connection ``D = nabla + Q`` and the tensors built around it.

``Q(y, z) = 1/4 sum_a (nabla_y J_a) J_a z`` makes every ``J_a``, ``g`` and
``g_a`` parallel.  This module builds ``Q``, ``D``, its torsion and
curvature, the auxiliary tensors ``P, A, B, C, E, U, V, W, S, L, S_hat``
used to decompose the curvature, the checks relating all of them, the
analysis of the parallel-torsion case, and the linear-algebra proof that
Kähler-like tensors vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from hgman.checks import Check, CheckReport, compare, skipped, vanishes
from hgman.exact_linalg import SparseEchelon
from hgman.exact_tensor import (
    DOWN,
    Tensor,
    apply_endo,
    circ,
    cyclic_sum,
    kulkarni_nomizu,
    outer,
    trace4,
)
from hgman.hg_structure import CYCLIC, EPS, HGManifold, LeeData, PreconditionError, standard_H
from hgman.lie_geometry import (
    ConnectionCoeffs,
    connection_curvature,
    covariant_derivative,
    ricci_scalar,
    torsion_of,
)

__all__ = [
    "NaturalConnectionError",
    "NaturalConnectionBundle",
    "DecompositionTensors",
    "build_natural_connection",
    "q_property_suite",
    "torsion_closed_form",
    "w_torsion_formula",
    "build_decomposition",
    "k_decomposition_checks",
    "kahler_like_checks",
    "ParallelTorsionFlags",
    "parallel_flags",
    "parallel_torsion_analysis",
    "kahlerlike_nullspace",
    "NullspaceResult",
    "hat",
]


class NaturalConnectionError(AssertionError):
    """A theorem about D failed on computed data; this points to a bug upstream."""


def hat(t: Tensor, J) -> Tensor:
    """``t + t∘J1 - t∘J2 - t∘J3`` (the projection pattern used throughout)."""
    return t + circ(t, J[0]) - circ(t, J[1]) - circ(t, J[2])


@dataclass(frozen=True, eq=False)
class NaturalConnectionBundle:
    Q3: Tensor
    D: ConnectionCoeffs
    T: Tensor
    K: Tensor
    nabla: ConnectionCoeffs

    def q_vector(self, g_inv: Tensor) -> np.ndarray:
        """``q[y, z, k]``: component k of the vector Q(e_y, e_z)."""
        return np.einsum("yzw,wk->yzk", self.Q3.components, g_inv.components)


def build_natural_connection(M: HGManifold, nabla: ConnectionCoeffs, F) -> NaturalConnectionBundle:
    """Q, D, T and K; naturality of D is verified before returning."""
    F = tuple(F)
    FJ = [apply_endo(F[a], M.J[a], 1) for a in range(3)]
    Q3 = (FJ[0] + FJ[1] + FJ[2]) / 4
    qvec = np.einsum("yzw,wk->yzk", Q3.components, M.g_inv.components)
    D = ConnectionCoeffs(nabla.gamma + qvec)
    T = Q3 - Q3.permute((1, 0, 2))
    K = connection_curvature(M.spec, D, M.g)
    for name, t in [("g", M.g), *[(f"J{a + 1}", M.J[a]) for a in range(3)],
                    *[(f"g{a + 1}", M.g_alpha[a]) for a in range(3)]]:
        if not covariant_derivative(t, D).is_zero():
            raise NaturalConnectionError(f"D{name} != 0")
    T_direct = torsion_of(M.spec, D, M.g)
    if T_direct != T:
        raise NaturalConnectionError("torsion of D differs from Q(x,y,z) - Q(y,x,z)")
    return NaturalConnectionBundle(Q3, D, T, K, nabla)


def q_property_suite(bundle: NaturalConnectionBundle, M: HGManifold, F) -> CheckReport:
    """Skew symmetry of Q, Q recovered from T, F from Q, and the trace-free condition."""
    report = CheckReport()
    Q = bundle.Q3.components
    T = bundle.T.components
    report.add(compare("Q-Q", Q, -np.einsum("xzy->xyz", Q)))
    rebuilt = (T - np.einsum("yzx->xyz", T) + np.einsum("zxy->xyz", T)) / 2
    report.add(compare("QT", Q, rebuilt))
    for a in range(3):
        e = EPS[a]
        rhs = -apply_endo(bundle.Q3, M.J[a], 1).components - e * apply_endo(bundle.Q3, M.J[a], 2).components
        report.add(compare(f"FQ[{a + 1}]", F[a].components, rhs))
    acc = Q.copy()
    for a in range(3):
        acc = acc + EPS[a] * apply_endo(apply_endo(bundle.Q3, M.J[a], 1), M.J[a], 2).components
    report.add(vanishes("Q-prop", acc))
    return report


def _theta_forms(M: HGManifold, lee: LeeData):
    th = lee.theta.components
    thJ = [np.einsum("a,az->z", th, J.components) for J in M.J]  # theta∘J_a
    Om = lee.Omega.components
    th_JOm = [Fraction(th.dot(J.components).dot(Om)) for J in M.J]
    return th, thJ, th_JOm


def torsion_closed_form(M: HGManifold, lee: LeeData) -> Tensor:
    """The explicit torsion of D on a W-manifold, written in terms of theta."""
    n = M.n
    G = M.g.components
    g1, g2, g3 = (ga.components for ga in M.g_alpha)
    th, thJ, _ = _theta_forms(M, lee)
    o = np.einsum
    T = (
        -2 * o("xy,z->xyz", g1, thJ[0])
        + 3 * o("xz,y->xyz", G, th)
        - 3 * o("yz,x->xyz", G, th)
        + o("xz,y->xyz", g1, thJ[0])
        + o("xz,y->xyz", g2, thJ[1])
        + o("xz,y->xyz", g3, thJ[2])
        - o("yz,x->xyz", g1, thJ[0])
        - o("yz,x->xyz", g2, thJ[1])
        - o("yz,x->xyz", g3, thJ[2])
    ) / (16 * n)
    return Tensor(T, (DOWN,) * 3)


def w_torsion_formula(M: HGManifold, bundle: NaturalConnectionBundle, lee: LeeData, in_W: bool) -> CheckReport:
    """Compare the computed torsion with its closed form and check T(., ., Omega) = 0.

    The computed torsion is authoritative; a mismatch is reported with the
    residual of the closed form.
    """
    if not in_W:
        raise PreconditionError("closed-form torsion only applies to W-manifolds")
    report = CheckReport()
    report.add(compare("T=", bundle.T, torsion_closed_form(M, lee)))
    T_Om = np.einsum("xyz,z->xy", bundle.T.components, lee.Omega.components)
    report.add(vanishes("T-om=0", T_Om))
    return report


@dataclass(frozen=True, eq=False)
class DecompositionTensors:
    P_ab: dict
    P: Tensor
    A: Tensor
    B: Tensor
    C: Tensor
    E: Tensor
    U: Tensor
    V: Tensor
    W: Tensor
    S: Tensor
    L: Tensor
    S_hat: Tensor


def _sym2(a, b) -> np.ndarray:
    return np.multiply.outer(a, b)


def build_decomposition(M: HGManifold, R: Tensor, lee: LeeData, F) -> DecompositionTensors:
    """Build every auxiliary tensor from its defining formula and check its symmetries."""
    n = M.n
    J = M.J
    gi = M.g_inv.components
    g = M.g
    d2 = (DOWN, DOWN)

    # (nabla_x J_a) J_a z, lowered: FJ[a][x, z, b] = F_a(x, J_a z, e_b)
    FJ = [apply_endo(F[a], J[a], 1).components for a in range(3)]
    P_ab = {}
    for a, b in product(range(3), repeat=2):
        first = np.einsum("xzb,bc,ywc->xyzw", FJ[a], gi, FJ[b], optimize=True)
        second = np.einsum("yzb,bc,xwc->xyzw", FJ[a], gi, FJ[b], optimize=True)
        P_ab[a + 1, b + 1] = Tensor(first - second, (DOWN,) * 4)
    P = sum((P_ab[k] for k in P_ab), Tensor(np.zeros((M.dim,) * 4, dtype=int), (DOWN,) * 4))
    P = P - 4 * (P_ab[1, 1] + P_ab[2, 2] + P_ab[3, 3])

    th, thJ, th_JOm = _theta_forms(M, lee)
    tO = lee.theta_Omega
    gc = g.components
    g2, g3 = M.g_alpha[1].components, M.g_alpha[2].components
    sum_JJ = sum(_sym2(t, t) for t in thJ)
    B = Tensor(
        3 * _sym2(th, th) + sum_JJ
        - Fraction(3, 2) * tO * gc - Fraction(1, 2) * th_JOm[1] * g2 - Fraction(1, 2) * th_JOm[2] * g3,
        d2,
    )
    A = Tensor(
        -_sym2(th, th) + sum_JJ - tO * gc - th_JOm[1] * g2 - th_JOm[2] * g3,
        d2,
    )
    C = A + B
    E = Tensor(
        _sym2(th, thJ[0]) - _sym2(thJ[0], th) - _sym2(thJ[1], thJ[2]) + _sym2(thJ[2], thJ[1]),
        d2,
    )
    U = outer(M.g_alpha[0], E)
    gB = kulkarni_nomizu(g, B)
    V = gB + U / 2
    W = kulkarni_nomizu(g, C) + U / 2
    S = R - gB / (64 * n * n)
    L = R + kulkarni_nomizu(g, A) / (64 * n * n)
    S_hat = S - U / (128 * n * n)
    dec = DecompositionTensors(P_ab, P, A, B, C, E, U, V, W, S, L, S_hat)
    _assert_structure(M, dec)
    return dec


def _assert_structure(M: HGManifold, dec: DecompositionTensors):
    def sym(t):
        return t.components.T

    for name in ("A", "B", "C"):
        t = getattr(dec, name)
        if np.any(t.components != sym(t)):
            raise NaturalConnectionError(f"{name} is not symmetric")
    if np.any(dec.E.components != -sym(dec.E)):
        raise NaturalConnectionError("E is not antisymmetric")
    for a in range(3):
        Ja = M.J[a].components
        EJ = np.einsum("ax,by,ab->xy", Ja, Ja, dec.E.components, optimize=True)
        if np.any(EJ != EPS[a] * dec.E.components):
            raise NaturalConnectionError(f"E(J{a + 1}., J{a + 1}.) != eps E")
    for name in ("U", "V", "W"):
        c = getattr(dec, name).components
        if np.any(c != -np.einsum("yxzw->xyzw", c)) or np.any(c != -np.einsum("xywz->xyzw", c)):
            raise NaturalConnectionError(f"{name} lacks the pair antisymmetries")
    for a in range(3):
        if circ(dec.U, M.J[a]) != EPS[a] * dec.U:
            raise NaturalConnectionError(f"U∘J{a + 1} != eps U")
    for name in ("S", "L"):
        t = getattr(dec, name)
        if not curvature_like(t):
            raise NaturalConnectionError(f"{name} is not curvature-like")


def curvature_like(t: Tensor) -> bool:
    c = t.components
    return (
        not np.any(c + np.einsum("yxzw->xyzw", c) != 0)
        and not np.any(c + np.einsum("xywz->xyzw", c) != 0)
        and cyclic_sum(t).is_zero()
    )


def k_decomposition_checks(
    M: HGManifold, bundle: NaturalConnectionBundle, R: Tensor, dec: DecompositionTensors, in_W: bool
) -> CheckReport:
    """Curvature of D against R and P; on W-manifolds also P and K via theta.

    The displayed relations are checked literally ("K", "KS", "KSS").  The
    intermediate steps ("KR", "QQ", "nQ") are checked on their own, and the
    relation they actually assemble to is checked as "K-derived" and
    "KSS-derived": it differs from the displayed one by the sign of the P
    term.
    """
    n = M.n
    J = M.J
    report = CheckReport()
    Q = bundle.Q3.components
    q = bundle.q_vector(M.g_inv)
    nQ = covariant_derivative(bundle.Q3, bundle.nabla).components
    alt = nQ - np.einsum("yxzw->xyzw", nQ)
    QQ = np.einsum("yzm,xmw->xyzw", q, Q) - np.einsum("xzm,ymw->xyzw", q, Q)
    sumP = sum(dec.P_ab[k].components for k in dec.P_ab)
    report.add(compare("KR", bundle.K.components, R.components + alt + QQ))
    report.add(compare("QQ", QQ, sumP / 16))
    nq_rhs = sum(
        -R.components + EPS[a] * circ(R, J[a]).components - dec.P_ab[a + 1, a + 1].components
        for a in range(3)
    ) / 4
    report.add(compare("nQ", alt, nq_rhs))
    report.add(compare("K", bundle.K, hat(R, J) / 4 - dec.P / 16))
    report.add(compare("K-derived", bundle.K, hat(R, J) / 4 + dec.P / 16))
    if not in_W:
        for name in ("PV", "UU", "KS", "KSS", "KSS-derived"):
            report.add(skipped(name, "not a W-manifold"))
        return report
    report.add(compare("PV", dec.P, hat(dec.V, J) / (16 * n * n)))
    report.add(compare("UU", dec.U, hat(dec.U, J) / 4))
    ks = (hat(dec.S, J) - dec.U / (32 * n * n)) / 4
    report.add(compare("KS", bundle.K, ks))
    report.add(compare("KSS", bundle.K, hat(dec.S_hat, J) / 4))
    s_hat_derived = R + kulkarni_nomizu(M.g, dec.B) / (64 * n * n) + dec.U / (128 * n * n)
    report.add(compare("KSS-derived", bundle.K, hat(s_hat_derived, J) / 4))
    return report


def kahler_like_checks(M: HGManifold, bundle: NaturalConnectionBundle) -> CheckReport:
    """K = eps_a K∘J_a in the last pair, for every a."""
    report = CheckReport()
    for a in range(3):
        report.add(compare(f"K-kahler-like[{a + 1}]", bundle.K, EPS[a] * circ(bundle.K, M.J[a])))
    return report


CONDITIONAL_CHECKS = (
    *(f"nFQ[{a}]" for a in (1, 2, 3)),
    *(f"R[{a}]" for a in (1, 2, 3)),
    *(f"LL[{a}]" for a in (1, 2, 3)),
    "KV", "K=0", "L=0", "W=0", "sT", "theta(J1 Omega)=0",
    *(f"D(theta o J{a})=0" for a in (1, 2, 3)),
    "theta(Omega)=0", "tau=0", "R0", "rho=A", "sgA[2]", "sgA[3]", "nR0", "nR0rho",
)


@dataclass(frozen=True)
class ParallelTorsionFlags:
    DT_zero: bool
    DF_zero: bool
    Dtheta_zero: bool


def parallel_flags(M: HGManifold, bundle: NaturalConnectionBundle, F, lee: LeeData):
    """``(flags, DT, DF, Dtheta)`` for the natural connection."""
    DT = covariant_derivative(bundle.T, bundle.D)
    DF = [covariant_derivative(Fa, bundle.D) for Fa in F]
    Dth = covariant_derivative(lee.theta, bundle.D)
    flags = ParallelTorsionFlags(DT.is_zero(), all(d.is_zero() for d in DF), Dth.is_zero())
    return flags, DT, DF, Dth


def parallel_torsion_analysis(
    M: HGManifold,
    bundle: NaturalConnectionBundle,
    lee: LeeData,
    F,
    R: Tensor,
    dec: DecompositionTensors,
    in_W: bool,
    flags: ParallelTorsionFlags | None = None,
) -> tuple[ParallelTorsionFlags, CheckReport]:
    """Parallel torsion equivalences and, when DT = 0, the consequences for curvature.

    DT = 0 iff DF_a = 0 for all a holds on any structure.  The further
    equivalence with D theta = 0 is only asserted on W-manifolds; elsewhere
    only DT = 0 => D theta = 0 is required.  ``flags`` may be injected to
    exercise the consistency guard.
    """
    if flags is None:
        flags, *_ = parallel_flags(M, bundle, F, lee)
    if flags.DT_zero != flags.DF_zero:
        raise NaturalConnectionError(f"DT = 0 and DF = 0 disagree: {flags}")
    if in_W and flags.DT_zero != flags.Dtheta_zero:
        raise NaturalConnectionError(f"DT = 0 and D theta = 0 disagree on a W-manifold: {flags}")
    if flags.DT_zero and not flags.Dtheta_zero:
        raise NaturalConnectionError("DT = 0 but theta is not D-parallel")

    report = CheckReport()
    report.add(Check("DT<=>DF", True))
    if in_W:
        report.add(Check("DT<=>Dtheta", flags.DT_zero == flags.Dtheta_zero))
    else:
        report.add(skipped("DT<=>Dtheta", "equivalence only holds on W-manifolds"))
    cond = CONDITIONAL_CHECKS
    if not flags.DT_zero:
        for name in cond:
            report.add(skipped(name, "DT != 0"))
        return flags, report
    if not in_W:
        for name in cond:
            report.add(skipped(name, "not a W-manifold"))
        return flags, report

    n = M.n
    J = M.J
    g = M.g
    gi = M.g_inv
    c64 = Fraction(1, 64 * n * n)
    q = bundle.q_vector(gi)
    nabla = bundle.nabla
    for a in range(3):
        Fa = F[a].components
        lhs = covariant_derivative(F[a], nabla).components
        rhs = (
            np.einsum("xym,mzw->xyzw", q, Fa)
            + np.einsum("xzm,ymw->xyzw", q, Fa)
            + np.einsum("xwm,yzm->xyzw", q, Fa)
        )
        report.add(compare(f"nFQ[{a + 1}]", lhs, rhs))
    gA = kulkarni_nomizu(g, dec.A)
    for a in range(3):
        e = EPS[a]
        report.add(compare(f"R[{a + 1}]", R - e * circ(R, J[a]), -c64 * (gA - e * circ(gA, J[a]))))
        report.add(compare(f"LL[{a + 1}]", dec.L, e * circ(dec.L, J[a])))
    report.add(compare("KV", bundle.K, dec.L - hat(dec.W, J) / (256 * n * n)))
    report.add(vanishes("K=0", bundle.K))
    report.add(vanishes("L=0", dec.L))
    report.add(vanishes("W=0", dec.W))
    Tv = np.einsum("xyz,zk->xyk", bundle.T.components, gi.components)  # T(x,y) as a vector
    TT = np.einsum("xyk,kzw->xyzw", Tv, bundle.T.components)  # T(T(x,y), z, w)
    jac = TT + np.einsum("yzxw->xyzw", TT) + np.einsum("zxyw->xyzw", TT)
    report.add(vanishes("sT", jac))
    _, thJ, th_JOm = _theta_forms(M, lee)
    report.add(compare("theta(J1 Omega)=0", th_JOm[0], 0))
    for a in range(3):
        tJ = Tensor(thJ[a], (DOWN,))
        report.add(vanishes(f"D(theta o J{a + 1})=0", covariant_derivative(tJ, bundle.D)))
    report.add(compare("theta(Omega)=0", lee.theta_Omega, 0))
    rho, tau = ricci_scalar(R, g, gi)
    report.add(compare("tau=0", tau, 0))
    report.add(compare("R0", R, -c64 * gA))
    report.add(compare("rho=A", rho, Fraction(2 * n - 1, 32 * n * n) * dec.A))
    report.extend(sga_identity(M, theta_products(M, lee)))
    nR = covariant_derivative(R, nabla).components
    nA = covariant_derivative(dec.A, nabla).components
    nrho = covariant_derivative(rho, nabla).components
    gnA = np.stack([kulkarni_nomizu(g, Tensor(nA[u], (DOWN, DOWN))).components for u in range(M.dim)])
    gnrho = np.stack([kulkarni_nomizu(g, Tensor(nrho[u], (DOWN, DOWN))).components for u in range(M.dim)])
    report.add(compare("nR0", nR, -c64 * gnA))
    report.add(compare("nR0rho", nR, Fraction(1, 2 * (1 - 2 * n)) * gnrho))
    return flags, report


def theta_products(M: HGManifold, lee: LeeData) -> dict[int, Tensor]:
    """``A_a = theta ⊗ (theta∘J_a) + (theta∘J_a) ⊗ theta`` for the Norden structures a = 2, 3."""
    th, thJ, _ = _theta_forms(M, lee)
    return {
        a + 1: Tensor(np.multiply.outer(th, thJ[a]) + np.multiply.outer(thJ[a], th), (DOWN, DOWN))
        for a in (1, 2)
    }


def sga_identity(M: HGManifold, A_alpha: dict[int, Tensor]) -> CheckReport:
    """Cyclic sum of ``g_a ⊙ A_a`` over the first three slots vanishes (a = 2, 3)."""
    report = CheckReport()
    for a, Aa in sorted(A_alpha.items()):
        report.add(vanishes(f"sgA[{a}]", cyclic_sum(kulkarni_nomizu(M.g_alpha[a - 1], Aa))))
    return report


def trace_W(M: HGManifold, dec: DecompositionTensors) -> Fraction:
    return trace4(dec.W, M.g, M.g_inv)


__all__ += ["CONDITIONAL_CHECKS", "trace_W", "theta_products", "sga_identity"]
__all__.append("curvature_like")


# --- Kähler-like tensors ---------------------------------------------------


@dataclass(frozen=True)
class NullspaceResult:
    unknowns: int
    rank: int
    nullity: int
    basis: list

    def to_json(self) -> dict:
        return {"unknowns": self.unknowns, "rank": self.rank, "nullity": self.nullity}


def _endo_images(J: np.ndarray):
    """For each basis index z, the list of (a, coefficient) with J e_z = sum coeff e_a."""
    m = J.shape[0]
    return [[(a, int(J[a, z])) for a in range(m) if J[a, z] != 0] for z in range(m)]


def kahler_like_rows(n: int, structures=(1, 2, 3), kahler: bool = True, J=None):
    """Yield the sparse integer constraint rows for curvature-like (and Kähler-like) tensors."""
    m = 4 * n
    J = J if J is not None else standard_H(n)
    if any(x.denominator != 1 for Ja in J for x in Ja.components.flat):
        raise ValueError("constraint builder expects integer structure matrices")

    def idx(i, j, k, l):
        return ((i * m + j) * m + k) * m + l

    images = {a: _endo_images(J[a - 1].components) for a in structures}
    for i, j, k, l in product(range(m), repeat=4):
        here = idx(i, j, k, l)
        yield {here: 1, idx(j, i, k, l): 1} if i != j else {here: 2}
        yield {here: 1, idx(i, j, l, k): 1} if k != l else {here: 2}
        row: dict[int, int] = {}
        for c in (here, idx(j, k, i, l), idx(k, i, j, l)):
            row[c] = row.get(c, 0) + 1
        yield row
        if not kahler:
            continue
        for a in structures:
            e = EPS[a - 1]
            im = images[a]
            back = {here: 1}
            for (p, cp), (r, cr) in product(im[k], im[l]):
                c = idx(i, j, p, r)
                back[c] = back.get(c, 0) - e * cp * cr
            yield back
            front = {here: 1}
            for (p, cp), (r, cr) in product(im[i], im[j]):
                c = idx(p, r, k, l)
                front[c] = front.get(c, 0) - e * cp * cr
            yield front


def kahlerlike_nullspace(
    n: int, structures=(1, 2, 3), kahler: bool = True, with_basis: bool = False
) -> NullspaceResult:
    """Dimension of the space of (0,4) tensors that are curvature-like and,
    if ``kahler``, Kähler-like for every listed structure.

    The system is solved exactly by fraction-free sparse elimination.
    ``kahler=False`` gives the algebraic curvature tensors alone.
    """
    if n not in (1, 2):
        raise ValueError("n must be 1 or 2")
    unknowns = (4 * n) ** 4
    ech = SparseEchelon(unknowns)
    for row in kahler_like_rows(n, structures, kahler):
        ech.add_row(row)
    basis = ech.nullspace() if with_basis else []
    return NullspaceResult(unknowns, ech.rank, ech.nullity, basis)


def nullspace_tensor(vec: dict, n: int) -> Tensor:
    """Turn a sparse solution vector back into a (0,4) tensor."""
    m = 4 * n
    arr = np.zeros(m ** 4, dtype=object)
    arr[...] = Fraction(0)
    for c, v in vec.items():
        arr[c] = v
    return Tensor(arr.reshape((m,) * 4), (DOWN,) * 4)


__all__ += ["kahler_like_rows", "nullspace_tensor"]
