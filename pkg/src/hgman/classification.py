"""Class membership of an almost (H,G)-manifold.

Membership is decided by exact comparison of each ``F_a`` with the closed
form the class prescribes, so every predicate is decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from hgman.checks import compare
from hgman.exact_tensor import DOWN, Tensor
from hgman.hg_structure import CYCLIC, EPS, HGManifold, LeeData
from hgman.lie_geometry import exterior_d_oneform, nijenhuis

__all__ = [
    "ClassificationReport",
    "ClassClosureError",
    "w_class_form",
    "unified_F",
    "memberships",
    "classify",
    "w_closure_check",
]


class ClassClosureError(AssertionError):
    """Two of the three W(J_a) memberships hold but the third does not."""


@dataclass
class ClassificationReport:
    in_K: bool
    in_W_J: tuple[bool, bool, bool]
    in_W: bool
    isotropic_hk: bool
    integrable: tuple[bool, bool, bool]
    d_theta_zero: bool
    unified_F_ok: bool | None = None
    witnesses: dict[str, list[int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "in_K": self.in_K,
            "in_W_J": list(self.in_W_J),
            "in_W": self.in_W,
            "isotropic_hk": self.isotropic_hk,
            "integrable": list(self.integrable),
            "d_theta_zero": self.d_theta_zero,
            "unified_F_ok": self.unified_F_ok,
            "witnesses": {k: list(v) for k, v in sorted(self.witnesses.items())},
        }

    @classmethod
    def from_json(cls, d: dict) -> ClassificationReport:
        return cls(
            in_K=d["in_K"],
            in_W_J=tuple(d["in_W_J"]),
            in_W=d["in_W"],
            isotropic_hk=d["isotropic_hk"],
            integrable=tuple(d["integrable"]),
            d_theta_zero=d["d_theta_zero"],
            unified_F_ok=d.get("unified_F_ok"),
            witnesses={k: list(v) for k, v in d.get("witnesses", {}).items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassificationReport):
            return NotImplemented
        return self.to_json() == other.to_json()


def w_class_form(M: HGManifold, theta_a: Tensor, alpha: int) -> Tensor:
    """The F_alpha a manifold in W(J_alpha) must have, given its Lee form theta_alpha.

    Hermitian case (alpha = 1), factor ``1/(2(2n-1))``::

        g(x,y)t(z) - g(x,z)t(y) - g(x,Jy)t(Jz) + g(x,Jz)t(Jy)

    Norden case (alpha = 2, 3), factor ``1/(4n)``::

        g(x,y)t(z) + g(x,z)t(y) + g(x,Jy)t(Jz) + g(x,Jz)t(Jy)
    """
    n = M.n
    G = M.g.components
    Jm = M.J[alpha - 1].components
    t = theta_a.components
    tJ = np.einsum("a,az->z", t, Jm)
    gJ = np.einsum("xa,ay->xy", G, Jm)  # g(x, J y)
    o = np.einsum
    if alpha == 1:
        form = o("xy,z->xyz", G, t) - o("xz,y->xyz", G, t) - o("xy,z->xyz", gJ, tJ) + o("xz,y->xyz", gJ, tJ)
        coeff = Fraction(1, 2 * (2 * n - 1))
    else:
        form = o("xy,z->xyz", G, t) + o("xz,y->xyz", G, t) + o("xy,z->xyz", gJ, tJ) + o("xz,y->xyz", gJ, tJ)
        coeff = Fraction(1, 4 * n)
    return Tensor(coeff * form, (DOWN,) * 3)


def unified_F(M: HGManifold, theta: Tensor, alpha: int) -> Tensor:
    """F_alpha on a W-manifold expressed through the unified Lee form theta."""
    n = M.n
    e = EPS[alpha - 1]
    G = M.g.components
    Jm = M.J[alpha - 1].components
    t = theta.components
    tJ = np.einsum("a,az->z", t, Jm)
    gJx = np.einsum("ax,ay->xy", Jm, G)  # g(J x, y)
    o = np.einsum
    form = (
        e * o("xy,z->xyz", G, tJ)
        - o("xz,y->xyz", G, tJ)
        - e * o("xy,z->xyz", gJx, t)
        + o("xz,y->xyz", gJx, t)
    )
    return Tensor(form / (4 * n), (DOWN,) * 3)


def memberships(M: HGManifold, F, theta_alpha) -> tuple[tuple[bool, bool, bool], dict]:
    """``(in_W_J, witnesses)`` from F data and the Lee forms theta_alpha."""
    flags, witnesses = [], {}
    for a in range(3):
        chk = compare(f"W(J{a + 1})", F[a], w_class_form(M, theta_alpha[a], a + 1))
        flags.append(chk.passed)
        if not chk.passed:
            witnesses[f"W(J{a + 1})"] = list(chk.witness)
    return tuple(flags), witnesses


def w_closure_check(in_W_J) -> None:
    """Any two of the W(J_a) memberships force the third."""
    for a, b, c in CYCLIC:
        if in_W_J[a] and in_W_J[b] and not in_W_J[c]:
            raise ClassClosureError(
                f"in W(J{a + 1}) and W(J{b + 1}) but not W(J{c + 1})"
            )


def classify(M: HGManifold, F, lee: LeeData) -> ClassificationReport:
    """Decide membership in K, W(J_a), W and the isotropic class, plus integrability."""
    F = tuple(F)
    in_K = all(Fa.is_zero() for Fa in F)
    in_W_J, witnesses = memberships(M, F, lee.theta_alpha)
    in_W = all(in_W_J)
    w_closure_check(in_W_J)
    if in_K:
        witnesses.clear()
    else:
        a = next(a for a in range(3) if not F[a].is_zero())
        witnesses.setdefault("K", [a + 1] + [i + 1 for i in F[a].first_nonzero()])
    integrable = tuple(nijenhuis(Ja, M.spec).is_zero() for Ja in M.J)
    d_theta = exterior_d_oneform(lee.theta, M.spec)
    unified_ok = None
    if in_W:
        unified_ok = True
        for a in range(3):
            chk = compare(f"F123[{a + 1}]", F[a], unified_F(M, lee.theta, a + 1))
            if not chk.passed:
                unified_ok = False
                witnesses[f"F123[{a + 1}]"] = list(chk.witness)
    if not d_theta.is_zero():
        witnesses["d_theta"] = [i + 1 for i in d_theta.first_nonzero()]
    return ClassificationReport(
        in_K=in_K,
        in_W_J=in_W_J,
        in_W=in_W,
        isotropic_hk=all(x == 0 for x in lee.norms),
        integrable=integrable,
        d_theta_zero=d_theta.is_zero(),
        unified_F_ok=unified_ok,
        witnesses=witnesses,
    )
