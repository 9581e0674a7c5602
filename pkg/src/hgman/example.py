"""The four-parameter family of 4-dimensional W-manifolds and its golden-table verification.

``build_example_w4(lam)`` gives the Lie algebra with

    [X1,X4] = [X2,X3] =  l1 X1 + l2 X2 + l3 X3 + l4 X4
    [X1,X3] = -[X2,X4] = l2 X1 - l1 X2 + l4 X3 - l3 X4

with the standard hypercomplex structure and g = diag(1, 1, -1, -1).

``verify_golden_tables(lam)`` runs the full analysis and compares every
computed table with the published polynomial tables in two ways: by value
at ``lam``, and coefficient by coefficient.  All tables have entries of
total degree at most 2 in lambda (brackets are linear, so connections and
F are linear and curvature is quadratic); such a polynomial is fixed by its
values at 0, e_i, 2 e_i and e_i + e_j, and these 15 evaluations are used to
recover the computed coefficients exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import numpy as np

from hgman import golden
from hgman.analysis import analyze, compute
from hgman.checks import Check, CheckReport, compare, vanishes
from hgman.exact_tensor import DOWN, Tensor, apply_endo, kulkarni_nomizu, scalar, zeros
from hgman.hg_structure import HGManifold, lee_data, standard_H, structural_F, validate_hg
from hgman.lie_geometry import (
    LieAlgebraSpec,
    exterior_d_oneform,
    is_abelian_structure,
    levi_civita,
    nijenhuis,
    ricci_scalar,
    riemann,
    validate_lie_algebra,
)
from hgman.report import AnalysisReport, fraction_str

__all__ = [
    "GOLDEN_LAMBDA",
    "build_example_w4",
    "example_tables",
    "golden_diffs",
    "example_checks",
    "verify_golden_tables",
    "T14_expected",
]

GOLDEN_LAMBDA = (1, 2, 3, 4)


def _lam(lam) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    lam = tuple(scalar(x) for x in lam)
    if len(lam) != 4:
        raise ValueError("lambda needs exactly four components")
    return lam


def example_algebra(lam) -> LieAlgebraSpec:
    l1, l2, l3, l4 = _lam(lam)
    v = {0: l1, 1: l2, 2: l3, 3: l4}
    w = {0: l2, 1: -l1, 2: l4, 3: -l3}
    return LieAlgebraSpec.from_brackets(
        4,
        {
            (0, 3): v,
            (1, 2): v,
            (0, 2): w,
            (1, 3): {k: -x for k, x in w.items()},
        },
    )


def build_example_w4(lam) -> HGManifold:
    spec = example_algebra(lam)
    check = validate_lie_algebra(spec)
    if not check.ok:
        raise ValueError(f"brackets violate the Lie algebra axioms: {check}")
    g = Tensor(np.diag([1, 1, -1, -1]), (DOWN, DOWN))
    return validate_hg(spec, g, standard_H(1))


def example_tables(lam) -> dict[str, dict[tuple[int, ...], Fraction]]:
    """Computed tables with the same names and 1-based keys as :func:`golden.all_tables`.

    D is assembled directly as nabla + Q here; the full pipeline builds it
    again with its naturality checks.
    """
    M = build_example_w4(lam)
    nabla = levi_civita(M.spec, M.g)
    R = riemann(M.spec, nabla, M.g)
    rho, tau = ricci_scalar(R, M.g, M.g_inv)
    F = tuple(structural_F(M, nabla, a) for a in (1, 2, 3))
    lee = lee_data(M, F)
    Q3 = sum((apply_endo(F[a], M.J[a], 1) for a in range(3)), zeros(4, (DOWN,) * 3)) / 4
    D = nabla.gamma + np.einsum("yzw,wk->yzk", Q3.components, M.g_inv.components)
    arrays = {
        "nabla": nabla.gamma,
        "F1": F[0].components,
        "F2": F[1].components,
        "F3": F[2].components,
        "theta": lee.theta.components,
        "D": D,
        "R": R.components,
        "ricci": rho.components,
    }
    out = {
        name: {tuple(i + 1 for i in idx): arr[idx] for idx in np.ndindex(arr.shape)}
        for name, arr in arrays.items()
    }
    out["scalars"] = {
        ("tau",): tau,
        **{(f"norm{a + 1}",): lee.norms[a] for a in range(3)},
    }
    return out


def _golden_scalars():
    return {("tau",): golden.tau_poly(), **{(f"norm{a + 1}",): q for a, q in enumerate(golden.norm_polys())}}


def _interpolation_points():
    e = [tuple(int(i == k) for i in range(4)) for k in range(4)]
    pts = [(0, 0, 0, 0)] + e + [tuple(2 * x for x in v) for v in e]
    pts += [tuple(a + b for a, b in zip(e[i], e[j])) for i, j in combinations(range(4), 2)]
    return pts


def _recover_quadratic(values: dict) -> golden.Poly:
    """Coefficients of a degree <= 2 polynomial from its values at the interpolation points."""
    z = (0, 0, 0, 0)
    c0 = values[z]
    poly: golden.Poly = {}
    if c0:
        poly[z] = c0
    lin, sq = [], []
    for k in range(4):
        e = tuple(int(i == k) for i in range(4))
        f1 = values[e] - c0
        f2 = values[tuple(2 * x for x in e)] - c0
        b = (f2 - 2 * f1) / 2
        a = f1 - b
        lin.append(a)
        sq.append(b)
        exps = [0] * 4
        exps[k] = 1
        if a:
            poly[tuple(exps)] = a
        exps[k] = 2
        if b:
            poly[tuple(exps)] = b
    for i, j in combinations(range(4), 2):
        pt = tuple(int(t in (i, j)) for t in range(4))
        m = values[pt] - c0 - lin[i] - lin[j] - sq[i] - sq[j]
        if m:
            poly[pt] = m
    return poly


@lru_cache(maxsize=1)
def symbolic_tables() -> dict[str, dict[tuple[int, ...], golden.Poly]]:
    """Computed tables as exact polynomials in lambda."""
    samples = {pt: example_tables(pt) for pt in _interpolation_points()}
    first = samples[(0, 0, 0, 0)]
    out = {}
    for name, table in first.items():
        out[name] = {}
        for key in table:
            poly = _recover_quadratic({pt: Fraction(s[name][key]) for pt, s in samples.items()})
            if poly:
                out[name][key] = poly
    return out


def golden_diffs(lam, symbolic: dict | None = None) -> dict[str, dict]:
    """Per table: mismatches at ``lam`` and, if given, symbolic coefficient mismatches."""
    lam = _lam(lam)
    computed = example_tables(lam)
    reference = {**golden.all_tables(), "scalars": _golden_scalars()}
    out = {}
    for name, ref in reference.items():
        mismatches = {}
        for key, value in computed[name].items():
            expected = golden.evaluate(ref.get(key, {}), lam)
            if value != expected:
                mismatches[",".join(map(str, key))] = {
                    "computed": fraction_str(value),
                    "published": fraction_str(expected),
                }
        entry = {"mismatches": mismatches, "entries": len(computed[name])}
        if symbolic is not None:
            keys = set(symbolic[name]) | set(ref)
            bad = sorted(",".join(map(str, k)) for k in keys if symbolic[name].get(k, {}) != ref.get(k, {}))
            entry["coefficient_mismatches"] = bad
        entry["ok"] = not mismatches and not entry.get("coefficient_mismatches")
        out[name] = entry
    return out


def T14_expected(lam) -> np.ndarray:
    """Vector components of T(X1, X4) read off from the D table and the brackets."""
    l1, l2, l3, l4 = _lam(lam)
    return np.array([-l1, -l2 / 2, -l3 / 2, -l4], dtype=object)


def example_checks(M: HGManifold, lam, pipeline=None) -> CheckReport:
    """Facts specific to the family: conformal flatness form, D-flatness, isotropy criterion."""
    lam = _lam(lam)
    p = pipeline or compute(M)
    report = CheckReport()
    g = M.g
    rform = -kulkarni_nomizu(g, p.rho) / 2 + kulkarni_nomizu(g, g) * (p.tau / 12)
    report.add(compare("Rform3", p.R, rform))
    report.add(vanishes("K=0 (D-flat)", p.bundle.K))
    report.add(vanishes("d theta = 0", exterior_d_oneform(p.lee.theta, M.spec)))
    l1, l2, l3, l4 = lam
    quad = l1 * l1 + l2 * l2 - l3 * l3 - l4 * l4
    report.add(Check("isotropic iff llll", (quad == 0) == p.classification.isotropic_hk))
    report.add(Check("scalar flat iff llll", (quad == 0) == (p.tau == 0)))
    report.add(Check("DT=0 iff lambda=0", p.flags.DT_zero == all(x == 0 for x in lam)))
    Tvec = np.einsum("z,zk->k", p.bundle.T.components[0, 3], M.g_inv.components)
    report.add(compare("T(X1,X4)", Tvec, T14_expected(lam)))
    report.add(compare("theta(Omega)=4 theta1(Omega1)", p.lee.theta_Omega, 4 * _self_pair(p, 0)))
    for a in (1, 2):
        report.add(compare(f"theta(Omega)=-theta{a + 1}(Omega{a + 1})", p.lee.theta_Omega, -_self_pair(p, a)))
    for a in range(3):
        report.add(Check(f"J{a + 1} abelian", is_abelian_structure(M.J[a], M.spec)))
        report.add(vanishes(f"N{a + 1}=0", nijenhuis(M.J[a], M.spec)))
    report.add(Check("in W", p.classification.in_W))
    report.add(Check("in K iff lambda=0", p.classification.in_K == all(x == 0 for x in lam)))
    return report


def _self_pair(p, a) -> Fraction:
    return Fraction(np.dot(p.lee.theta_alpha[a].components, p.lee.Omega_alpha[a].components))


def verify_golden_tables(lam=GOLDEN_LAMBDA, symbolic: bool = True) -> AnalysisReport:
    """Full analysis of the example at ``lam`` plus golden-table comparison."""
    lam = _lam(lam)
    M = build_example_w4(lam)
    p = compute(M)
    report = analyze(M, p)
    extra = example_checks(M, lam, p)
    report.identity_suite.update({f"example:{k}": v for k, v in extra.to_json().items()})
    report.golden_diffs = golden_diffs(lam, symbolic_tables() if symbolic else None)
    report.meta["lambda"] = [fraction_str(x) for x in lam]
    return report
