from __future__ import annotations

import random

import pytest
import sympy

from idealpowers.linalg import bareiss_det, rank, rank_integer, rank_mod_p


@pytest.mark.parametrize("seed", range(25))
def test_rank_matches_sympy(seed):
    rng = random.Random(seed)
    r, c = rng.randint(1, 7), rng.randint(1, 7)
    rows = [[rng.choice([-1, 0, 0, 1, 2]) for _ in range(c)] for _ in range(r)]
    assert rank_integer(rows) == sympy.Matrix(rows).rank()


@pytest.mark.parametrize("seed", range(10))
def test_determinant_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
    assert bareiss_det(rows) == sympy.Matrix(rows).det()


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, -1]]  # det -2
    assert rank(rows, 0) == 2
    assert rank(rows, 2) == 1
    assert rank_mod_p(rows, 3) == 2


def test_empty_matrix():
    assert rank([], 0) == 0
    assert rank([[0, 0]], 0) == 0
