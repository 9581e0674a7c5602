from fractions import Fraction

import numpy as np
import pytest

from conftest import neutral_metric, pipeline_for
from hgman.example import build_example_w4, example_algebra
from hgman.exact_tensor import DOWN, UP, VarianceError, kulkarni_nomizu, tensor, trace4
from hgman.hg_structure import standard_H
from hgman.lie_geometry import (
    ConnectionCoeffs,
    LieAlgebraSpec,
    bracket,
    connection_curvature,
    covariant_derivative,
    exterior_d_oneform,
    is_abelian_structure,
    levi_civita,
    nijenhuis,
    ricci_scalar,
    riemann,
    torsion_of,
    validate_lie_algebra,
)

LAM = (1, 2, 3, 4)


def test_abelian_is_valid():
    assert validate_lie_algebra(LieAlgebraSpec.abelian(4)).ok


def test_example_brackets_satisfy_jacobi():
    assert validate_lie_algebra(example_algebra(LAM)).ok


def test_antisymmetry_violation_reported():
    c = np.zeros((4, 4, 4), dtype=int)
    c[0, 1, 0] = c[1, 0, 0] = 1
    report = validate_lie_algebra(LieAlgebraSpec(c))
    assert not report.ok
    assert (0, 1, 0) in report.antisymmetry


def test_jacobi_violation_reported():
    # [e1,e2] = e2, [e2,e3] = e3 is antisymmetric but not Lie
    spec = LieAlgebraSpec.from_brackets(4, {(0, 1): {1: 1}, (1, 2): {2: 1}})
    report = validate_lie_algebra(spec)
    assert report.jacobi and not report.antisymmetry


def test_levi_civita_example_entries():
    nabla = levi_civita(example_algebra(LAM), neutral_metric())
    l1, l2, l3, l4 = LAM
    assert list(nabla.apply(0, 0)) == [0, 0, l2, l1]
    assert list(nabla.apply(2, 2)) == [-l4, -l3, 0, 0]


def test_levi_civita_flat_when_abelian():
    assert not levi_civita(LieAlgebraSpec.abelian(4), neutral_metric()).nonzero()


def test_levi_civita_is_torsion_free_and_metric():
    spec = example_algebra(LAM)
    g = neutral_metric()
    nabla = levi_civita(spec, g)
    assert torsion_of(spec, nabla, g).is_zero()
    assert covariant_derivative(g, nabla).is_zero()


def test_riemann_entries_and_ricci():
    p = pipeline_for(tuple(Fraction(x) for x in LAM))
    assert p.R[0, 1, 1, 0] == 5
    assert p.R[2, 3, 3, 2] == -25
    assert p.rho[0, 0] == -22
    assert p.tau == -120
    assert trace4(p.R, p.M.g) == p.tau


def test_riemann_is_curvature_like():
    from hgman.natural_connection import curvature_like

    p = pipeline_for(tuple(Fraction(x) for x in LAM))
    assert curvature_like(p.R)


def test_flat_when_abelian():
    spec = LieAlgebraSpec.abelian(4)
    R = riemann(spec, levi_civita(spec, neutral_metric()), neutral_metric())
    assert R.is_zero()
    rho, tau = ricci_scalar(R, neutral_metric())
    assert rho.is_zero() and tau == 0


def test_connection_curvature_agrees_with_riemann_for_levi_civita():
    spec = example_algebra(LAM)
    g = neutral_metric()
    nabla = levi_civita(spec, g)
    assert connection_curvature(spec, nabla, g) == riemann(spec, nabla, g)


def test_kulkarni_nomizu_reproduces_R1221():
    p = pipeline_for(tuple(Fraction(x) for x in LAM))
    g = p.M.g
    val = (-kulkarni_nomizu(g, p.rho) / 2 + kulkarni_nomizu(g, g) * (p.tau / 12))[0, 1, 1, 0]
    assert val == 1 + 4


def test_torsion_of_natural_connection_example():
    p = pipeline_for(tuple(Fraction(x) for x in LAM))
    t14 = np.einsum("z,zk->k", p.bundle.T.components[0, 3], p.M.g_inv.components)
    assert list(t14) == [-1, -1, Fraction(-3, 2), -4]


def test_covariant_derivative_of_J_under_D_vanishes():
    p = pipeline_for(tuple(Fraction(x) for x in LAM))
    for J in p.M.J:
        assert covariant_derivative(J, p.bundle.D).is_zero()
    assert not covariant_derivative(p.bundle.T, p.bundle.D).is_zero()


def test_covariant_derivative_leibniz_over_contraction():
    # d(theta(Omega)) = 0 for constants: (nabla theta)(Omega) + theta(nabla Omega) = 0
    p = pipeline_for(tuple(Fraction(x) for x in LAM))
    dth = covariant_derivative(p.lee.theta, p.nabla).components
    dom = covariant_derivative(p.lee.Omega, p.nabla).components
    total = np.einsum("uk,k->u", dth, p.lee.Omega.components) + np.einsum("k,uk->u", p.lee.theta.components, dom)
    assert not np.any(total != 0)


def test_covariant_derivative_dimension_mismatch():
    conn = ConnectionCoeffs(np.zeros((4, 4, 4), dtype=int))
    with pytest.raises(VarianceError):
        covariant_derivative(tensor(np.eye(8, dtype=int), (UP, DOWN)), conn)


def test_nijenhuis_vanishes_on_example_and_abelian():
    spec = example_algebra(LAM)
    for J in standard_H(1):
        assert nijenhuis(J, spec).is_zero()
        assert nijenhuis(J, LieAlgebraSpec.abelian(4)).is_zero()


def test_nijenhuis_rejects_non_complex():
    with pytest.raises(ValueError):
        nijenhuis(tensor(np.eye(4, dtype=int), (UP, DOWN)), LieAlgebraSpec.abelian(4))


def test_abelian_structures():
    spec = example_algebra(LAM)
    assert all(is_abelian_structure(J, spec) for J in standard_H(1))
    assert all(is_abelian_structure(J, LieAlgebraSpec.abelian(4)) for J in standard_H(1))


def test_abelian_structure_counterexample():
    spec = LieAlgebraSpec.from_brackets(4, {(0, 1): {2: 1}})
    J = np.zeros((4, 4), dtype=int)
    J[2, 0], J[0, 2], J[3, 1], J[1, 3] = 1, -1, 1, -1  # e1 -> e3 -> -e1, e2 -> e4 -> -e2
    assert not is_abelian_structure(tensor(J, (UP, DOWN)), spec)


def test_abelian_implies_integrable_on_all_standard_pairs():
    for brackets in ({(0, 1): {2: 1}}, {(0, 3): {0: 1}, (1, 2): {0: 1}}, {(0, 1): {1: 1}}):
        spec = LieAlgebraSpec.from_brackets(4, brackets)
        if not validate_lie_algebra(spec).ok:
            continue
        for J in standard_H(1):
            if is_abelian_structure(J, spec):
                assert nijenhuis(J, spec).is_zero()


def test_exterior_derivative():
    spec = LieAlgebraSpec.from_brackets(4, {(0, 1): {2: 1}})
    d = exterior_d_oneform(tensor([0, 0, 1, 0], (DOWN,)), spec)
    assert d[0, 1] == -1 and d[1, 0] == 1
    assert exterior_d_oneform(tensor([0, 0, 0, 0], (DOWN,)), spec).is_zero()
    p = pipeline_for(tuple(Fraction(x) for x in LAM))
    assert exterior_d_oneform(p.lee.theta, p.M.spec).is_zero()


def test_bracket_of_basis_vectors():
    spec = example_algebra(LAM)
    assert list(bracket(spec, [1, 0, 0, 0], [0, 0, 0, 1])) == list(LAM)


def test_example_builder_matches_generic():
    assert build_example_w4(LAM).dim == 4
    with pytest.raises(ValueError):
        build_example_w4((1, 2, 3))
