"""
Analysing manifolds outside the class W
=======================================

Hand-built algebras that are not W-manifolds exercise the branches where
closed forms do not apply. They also show where the single Lee form stops
being well defined.
"""

# %%
import numpy as np

from hgman.analysis import analyze, compute
from hgman.exact_tensor import DOWN, Tensor
from hgman.hg_structure import standard_H, validate_hg
from hgman.lie_geometry import LieAlgebraSpec


def manifold(brackets):
    spec = LieAlgebraSpec.from_brackets(4, brackets)
    return validate_hg(spec, Tensor(np.diag([1, 1, -1, -1]), (DOWN, DOWN)), standard_H(1))


cases = {
    "[e1,e2] = e3": {(0, 1): {2: 1}},
    "[e1,e2] = e2": {(0, 1): {1: 1}},
    "[e1,e3] = e2": {(0, 2): {1: 1}},
}

# %%
for label, brackets in cases.items():
    p = compute(manifold(brackets))
    c = p.classification
    print(label)
    print("  W(J_a):", c.in_W_J, " integrable:", c.integrable)
    print("  witnesses:", c.witnesses)
    print("  DT=0:", p.flags.DT_zero, " DF=0:", p.flags.DF_zero, " Dtheta=0:", p.flags.Dtheta_zero)
    print("  Lee candidates per structure:", [[str(x) for x in t.components] for t in p.lee.theta_candidates])

# %%
# DT and DF always vanish together. The Lee form, however, is read off J1 here,
# and for [e1,e2] = e2 it is zero even though the J2 and J3 candidates are not,
# so "Dtheta = 0" holds while DT does not.
report = analyze(manifold(cases["[e1,e2] = e2"]))
print({k: v.get("skipped", v["passed"]) for k, v in report.conditional_checks.items() if "Dtheta" in k})
print("identity checks all pass:", all(v["passed"] for v in report.identity_suite.values()))
