"""
Exact tensors on a Lie algebra
==============================

Every quantity in hgman is a numpy object array of Fractions, so equality
checks are exact. This script builds a small Lie algebra, its Levi-Civita
connection and curvature, and shows the basic tensor operations.
"""

# %%
# A 4-dimensional algebra with one bracket, [e1, e2] = e3, and a neutral metric.
import numpy as np

from hgman.exact_tensor import DOWN, Tensor, inverse_metric, kulkarni_nomizu, trace4
from hgman.lie_geometry import LieAlgebraSpec, levi_civita, ricci_scalar, riemann, validate_lie_algebra

spec = LieAlgebraSpec.from_brackets(4, {(0, 1): {2: 1}})
print(validate_lie_algebra(spec))
g = Tensor(np.diag([1, 1, -1, -1]), (DOWN, DOWN))

# %%
# Connection coefficients gamma[i, j, k] give nabla_{e_i} e_j = sum_k gamma[i, j, k] e_k.
nabla = levi_civita(spec, g)
for idx in zip(*np.nonzero(nabla.gamma != 0)):
    print("nabla", tuple(int(i) + 1 for i in idx), nabla.gamma[idx])

# %%
# Curvature, Ricci tensor and scalar curvature, all exact rationals.
R = riemann(spec, nabla, g)
rho, tau = ricci_scalar(R, g, inverse_metric(g))
print("tau =", tau)
print("Ricci diagonal:", [str(rho[i, i]) for i in range(4)])

# %%
# With the contraction used by trace4, g.g traces to 2 m (1 - m) = -24 in dimension m = 4.
gg = kulkarni_nomizu(g, g)
print("trace of g.g =", trace4(gg, g))
