import random
from fractions import Fraction

import numpy as np
import pytest

from hgman.exact_linalg import SingularMatrixError, SparseEchelon, bareiss, inverse, signature


def rank_mod_p(rows, ncols, p=1_000_003):
    """Independent rank oracle: dense elimination modulo a prime with int64 arithmetic."""
    m = np.zeros((len(rows), ncols), dtype=np.int64)
    for r, row in enumerate(rows):
        for c, v in row.items():
            m[r, c] = v % p
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r, col]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        m[rank] = m[rank] * pow(int(m[rank, col]), -1, p) % p
        for r in range(len(m)):
            if r != rank and m[r, col]:
                m[r] = (m[r] - m[r, col] * m[rank]) % p
        rank += 1
    return rank


def test_inverse_roundtrip():
    a = np.array([[2, 1], [1, 1]], dtype=object)
    inv = inverse(a)
    assert (a.dot(inv) == np.eye(2, dtype=int)).all()
    assert inv[0, 0] == 1 and inv[0, 1] == -1


def test_inverse_singular():
    with pytest.raises(SingularMatrixError):
        inverse(np.array([[1, 2], [2, 4]], dtype=object))


def test_bareiss_rank():
    assert bareiss(np.array([[1, 2, 3], [2, 4, 6], [1, 0, 1]], dtype=object))[0] == 2


def test_signature_needs_repair_when_diagonal_vanishes():
    assert signature(np.array([[0, 1], [1, 0]], dtype=object)) == (1, 1, 0)
    assert signature(np.diag([1, 1, -1, -1])) == (2, 2, 0)
    assert signature(np.diag([1, 0, -1, Fraction(1, 3)])) == (2, 1, 1)


def test_sparse_echelon_matches_modular_rank():
    rng = random.Random(5)
    rows = [{c: rng.randint(-3, 3) for c in rng.sample(range(12), 4)} for _ in range(20)]
    ech = SparseEchelon(12)
    for row in rows:
        ech.add_row(row)
    assert ech.rank == rank_mod_p(rows, 12)
    assert ech.nullity == 12 - ech.rank


def test_sparse_echelon_nullspace_vectors_solve_system():
    rows = [{0: 1, 1: 1}, {1: 1, 2: -1}]
    ech = SparseEchelon(4)
    for r in rows:
        ech.add_row(r)
    basis = ech.nullspace()
    assert len(basis) == 2
    for vec in basis:
        for r in rows:
            assert sum(v * vec.get(c, 0) for c, v in r.items()) == 0
