from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgman.exact_tensor import (
    DOWN,
    UP,
    SingularMatrixError,
    Tensor,
    VarianceError,
    contract,
    cyclic_sum,
    identity,
    inverse_metric,
    kulkarni_nomizu,
    outer,
    raise_lower,
    scalar,
    tensor,
    trace4,
    zeros,
)

G4 = tensor(np.diag([1, 1, -1, -1]), (DOWN, DOWN))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def sym_matrices(dim):
    return st.lists(rationals, min_size=dim * dim, max_size=dim * dim).map(
        lambda xs: (lambda m: m + m.T)(np.array(xs, dtype=object).reshape(dim, dim))
    )


def test_scalar_coercion():
    assert scalar("3/6") == Fraction(1, 2)
    assert scalar(np.int64(4)) == 4
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(TypeError):
        scalar(True)


def test_tensor_is_immutable_and_normalized():
    t = tensor([[1, 2], [3, 4]], (UP, DOWN))
    assert all(isinstance(x, Fraction) for x in t.components.flat)
    with pytest.raises(ValueError):
        t.components[0, 0] = 5


def test_tensor_shape_and_variance_validation():
    with pytest.raises(VarianceError):
        Tensor(np.zeros((2, 2), dtype=int), (UP,))
    with pytest.raises(VarianceError):
        Tensor(np.zeros((2, 3), dtype=int), (UP, DOWN))
    with pytest.raises(VarianceError):
        Tensor(np.zeros(2, dtype=int), ("x",))


def test_contract_trace_of_identity():
    assert contract(identity(4), [(0, 1)]) == 4


def test_contract_inverse_metric_with_metric_is_delta():
    gi = inverse_metric(G4)
    mixed = contract(outer(gi, G4), [(1, 2)])
    assert mixed == identity(4)


def test_contract_lee_vector_square():
    lam = (1, 2, 3, 4)
    theta = tensor([4 * lam[3], 4 * lam[2], -4 * lam[1], -4 * lam[0]], (DOWN,))
    gi = inverse_metric(G4)
    assert contract(outer(outer(gi, theta), theta), [(0, 2), (1, 3)]) == 320


def test_contract_rejects_bad_pairs():
    with pytest.raises(VarianceError):
        contract(G4, [(0, 1)])
    with pytest.raises(VarianceError):
        contract(identity(4), [(0, 2)])
    with pytest.raises(VarianceError):
        contract(outer(identity(4), identity(4)), [(0, 1), (1, 2)])


def test_lower_lee_vector():
    omega = tensor([0, 0, 0, 1], (UP,))
    assert raise_lower(omega, 0, G4) == tensor([0, 0, 0, -1], (DOWN,))


def test_raise_theta_gives_omega():
    theta = tensor([16, 12, -8, -4], (DOWN,))
    assert raise_lower(theta, 0, G4) == tensor([16, 12, 8, 4], (UP,))


def test_singular_metric_rejected():
    with pytest.raises(SingularMatrixError):
        inverse_metric(tensor(np.diag([1, 0, 1, 1]), (DOWN, DOWN)))


def test_kulkarni_nomizu_small():
    g2 = tensor(np.eye(2, dtype=int), (DOWN, DOWN))
    assert kulkarni_nomizu(g2, g2)[0, 1, 0, 1] == 2


def test_kulkarni_nomizu_requires_covariant_rank2():
    with pytest.raises(VarianceError):
        kulkarni_nomizu(identity(4), G4)


def test_cyclic_sum_and_trace_of_zero():
    z = zeros(4, (DOWN,) * 4)
    assert cyclic_sum(z).is_zero()
    assert trace4(z, G4) == 0


def test_with_component_and_first_nonzero():
    t = zeros(4, (DOWN,) * 3).with_component((1, 2, 3), "1/3")
    assert t.first_nonzero() == (1, 2, 3)
    assert t.nonzero() == {(1, 2, 3): Fraction(1, 3)}


@settings(max_examples=25, deadline=None)
@given(sym_matrices(4), sym_matrices(4))
def test_kn_of_symmetric_pair_is_curvature_like(a, b):
    A, B = tensor(a, (DOWN, DOWN)), tensor(b, (DOWN, DOWN))
    t = kulkarni_nomizu(A, B).components
    assert not np.any(t + np.einsum("yxzw->xyzw", t) != 0)
    assert not np.any(t + np.einsum("xywz->xyzw", t) != 0)
    assert cyclic_sum(kulkarni_nomizu(A, B)).is_zero()
    assert kulkarni_nomizu(A, B) == kulkarni_nomizu(B, A)


@settings(max_examples=25, deadline=None)
@given(st.lists(rationals, min_size=16, max_size=16), st.integers(0, 1))
def test_raise_then_lower_is_identity(xs, slot):
    t = tensor(np.array(xs, dtype=object).reshape(4, 4), (DOWN, UP))
    assert raise_lower(raise_lower(t, slot, G4), slot, G4) == t


@settings(max_examples=25, deadline=None)
@given(st.lists(rationals, min_size=16, max_size=16), st.lists(rationals, min_size=16, max_size=16), rationals)
def test_contract_is_linear(xs, ys, k):
    a = tensor(np.array(xs, dtype=object).reshape(4, 4), (UP, DOWN))
    b = tensor(np.array(ys, dtype=object).reshape(4, 4), (UP, DOWN))
    assert contract(a + b * k, [(0, 1)]) == contract(a, [(0, 1)]) + k * contract(b, [(0, 1)])
