from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest

from hgman.analysis import compute
from hgman.cli import random_lambda
from hgman.example import GOLDEN_LAMBDA, build_example_w4
from hgman.exact_tensor import DOWN, Tensor
from hgman.hg_structure import standard_H, validate_hg
from hgman.lie_geometry import LieAlgebraSpec

SEEDED = [random_lambda(seed) for seed in (11, 29)]
SAMPLES = [tuple(Fraction(x) for x in GOLDEN_LAMBDA), *SEEDED]
ZERO = (Fraction(0),) * 4


def neutral_metric(n=1):
    return Tensor(np.diag([1, 1, -1, -1] * n), (DOWN, DOWN))


def hand_built(brackets, dim=4):
    """Standard H and g = diag(1,1,-1,-1) on the algebra given by 0-based brackets."""
    return validate_hg(LieAlgebraSpec.from_brackets(dim, brackets), neutral_metric(dim // 4), standard_H(dim // 4))


NON_W = {
    "heisenberg_e3": {(0, 1): {2: 1}},
    "heisenberg_e4": {(0, 1): {3: 1}},
    "affine_e2": {(0, 1): {1: 1}},
    "affine_e1_e3": {(0, 2): {1: 1}},
}


@lru_cache(maxsize=None)
def pipeline_for(lam):
    return compute(build_example_w4(lam))


@lru_cache(maxsize=None)
def pipeline_non_w(name):
    return compute(hand_built(NON_W[name]))


@pytest.fixture(params=SAMPLES, ids=["golden", "seed11", "seed29"])
def sample_pipeline(request):
    return pipeline_for(request.param)


@pytest.fixture
def golden_pipeline():
    return pipeline_for(SAMPLES[0])


@pytest.fixture
def zero_pipeline():
    return pipeline_for(ZERO)
