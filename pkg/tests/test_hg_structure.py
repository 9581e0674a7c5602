from fractions import Fraction

import numpy as np
import pytest

from conftest import SAMPLES, hand_built, neutral_metric, pipeline_for, pipeline_non_w
from hgman.exact_tensor import DOWN, UP, Tensor, tensor
from hgman.exact_linalg import signature
from hgman.hg_structure import (
    EPS,
    HGStructureError,
    LeeConsistencyError,
    PreconditionError,
    compose,
    f_identity_suite,
    lee_coefficient,
    lee_data,
    lee_relations_check,
    standard_H,
    validate_hg,
)
from hgman.lie_geometry import LieAlgebraSpec


def test_standard_triple_is_quaternionic():
    J1, J2, J3 = standard_H(2)
    assert compose(J2, J3) == J1
    assert compose(J1, J1) == compose(J2, J2) == compose(J3, J3)
    assert compose(J3, J2) == -J1


def test_example_associated_forms():
    M = pipeline_for(SAMPLES[0]).M
    g1, g2, g3 = (ga.components for ga in M.g_alpha)
    assert (g1 == -g1.T).all()
    assert (g2 == g2.T).all() and (g3 == g3.T).all()
    assert signature(g2) == (2, 2, 0) and signature(g3) == (2, 2, 0)


def test_validate_rejects_definite_metric():
    with pytest.raises(HGStructureError, match="eps2"):
        validate_hg(LieAlgebraSpec.abelian(4), tensor(np.eye(4, dtype=int), (DOWN, DOWN)), standard_H(1))


def test_validate_rejects_bad_triple():
    J1, J2, J3 = standard_H(1)
    with pytest.raises(HGStructureError, match="J1 = J2 J3"):
        validate_hg(LieAlgebraSpec.abelian(4), neutral_metric(), (J1, J3, J2))


def test_validate_rejects_dimension():
    with pytest.raises(HGStructureError):
        validate_hg(
            LieAlgebraSpec.abelian(2),
            tensor(np.diag([1, -1]), (DOWN, DOWN)),
            (tensor(np.eye(2, dtype=int), (UP, DOWN)),) * 3,
        )


def test_validate_rejects_degenerate_metric():
    with pytest.raises(HGStructureError, match="degenerate"):
        validate_hg(LieAlgebraSpec.abelian(4), tensor(np.zeros((4, 4), dtype=int), (DOWN, DOWN)), standard_H(1))


def test_F_components_example():
    p = pipeline_for(SAMPLES[0])
    assert p.F[0][0, 0, 2] == 1
    assert p.F[1][1, 1, 1] == 2
    assert p.F[2][0, 0, 0] == -2


def test_lee_coefficients():
    assert lee_coefficient(1, 1) == Fraction(4, -2)
    assert lee_coefficient(1, 2) == 1
    assert lee_coefficient(2, 1) == Fraction(8, -6)


def test_lee_form_example():
    p = pipeline_for(SAMPLES[0])
    assert list(p.lee.theta.components) == [16, 12, -8, -4]
    assert p.lee.theta_Omega == 320
    assert p.lee.canonical
    for cand in p.lee.theta_candidates:
        assert cand == p.lee.theta


def test_lee_candidates_cross_checked_on_W():
    p = pipeline_for(SAMPLES[0])
    bad = list(p.F)
    bad[1] = bad[1].with_component((0, 0, 0), bad[1][0, 0, 0] + 1)
    with pytest.raises(LeeConsistencyError):
        lee_data(p.M, bad, in_W=True)


def test_lee_outside_W_is_flagged():
    p = pipeline_non_w("heisenberg_e3")
    assert not p.lee.canonical


def test_theta_J1_Omega_vanishes_universally():
    for p in (pipeline_for(SAMPLES[1]), pipeline_non_w("affine_e2"), pipeline_non_w("heisenberg_e4")):
        th = p.lee.theta.components
        assert th.dot(p.M.J[0].components).dot(p.lee.Omega.components) == 0


@pytest.mark.parametrize("lam", SAMPLES, ids=["golden", "seed11", "seed29"])
def test_f_identity_suite_passes(lam):
    p = pipeline_for(lam)
    report = f_identity_suite(p.M, p.nabla, p.R, p.F)
    assert report.ok, report.failures()
    assert not any(c.skipped for c in report)


def test_f_identity_suite_on_non_W_inputs():
    for name in ("heisenberg_e3", "affine_e2"):
        p = pipeline_non_w(name)
        report = f_identity_suite(p.M, p.nabla, p.R, p.F)
        assert report.ok, report.failures()


def test_cyclic_identity_skipped_without_integrability():
    p = pipeline_non_w("heisenberg_e3")
    report = f_identity_suite(p.M, p.nabla, p.R, p.F)
    assert report["cyclic-Norden[2]"].skipped


def test_f_identity_negative_controls_cover_every_check():
    p = pipeline_for(SAMPLES[0])
    names = {c.name for c in f_identity_suite(p.M, p.nabla, p.R, p.F)}
    caught = set()
    for a in range(3):
        F = list(p.F)
        F[a] = F[a].with_component((0, 0, 2), F[a][0, 0, 2] + 1)
        caught |= {c.name for c in f_identity_suite(p.M, p.nabla, p.R, F).failures()}
    R = p.R.with_component((0, 1, 0, 1), p.R[0, 1, 0, 1] + 1)
    caught |= {c.name for c in f_identity_suite(p.M, p.nabla, R, p.F).failures()}
    assert caught == names


def test_failure_witness_is_one_based():
    p = pipeline_for(SAMPLES[0])
    F = list(p.F)
    F[0] = F[0].with_component((0, 0, 2), 7)
    chk = f_identity_suite(p.M, p.nabla, p.R, F)["F-skew[1]"]
    assert not chk.passed and min(chk.witness) >= 1


def test_lee_relations_at_n1():
    p = pipeline_for(SAMPLES[0])
    report = lee_relations_check(p.M, p.lee, True)
    assert report.ok
    tO = p.lee.theta_Omega

    def pair(a):
        return Fraction(p.lee.theta_alpha[a].components.dot(p.lee.Omega_alpha[a].components))

    assert tO == 4 * pair(0) == -pair(1) == -pair(2)
    assert p.lee.norms[1] == -tO


def test_norm_formula_reconciles_with_example_table():
    for lam in SAMPLES:
        p = pipeline_for(lam)
        l1, l2, l3, l4 = lam
        q = 16 * (l1 ** 2 + l2 ** 2 - l3 ** 2 - l4 ** 2)
        n1, n2, n3 = p.lee.norms
        assert -2 * n1 == n2 == n3 == q
        for a in range(3):
            assert p.lee.norms[a] == Fraction((4 - 1) * EPS[a] - 1, 4) * p.lee.theta_Omega


def test_isotropic_case():
    p = pipeline_for(tuple(Fraction(x) for x in (1, 2, 2, 1)))
    assert p.lee.theta_Omega == 0 and all(x == 0 for x in p.lee.norms)
    assert p.classification.isotropic_hk
    assert not p.classification.in_K


def test_lee_relations_precondition():
    p = pipeline_non_w("heisenberg_e3")
    with pytest.raises(PreconditionError):
        lee_relations_check(p.M, p.lee, False)


def test_norden_signature_on_dim8():
    M = hand_built({}, dim=8)
    assert signature(M.g_alpha[1].components) == (4, 4, 0)
    assert isinstance(M.g, Tensor)
