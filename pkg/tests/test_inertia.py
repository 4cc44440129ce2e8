import numpy as np
import pytest
from hypothesis import given, strategies as st

from osp_lickorish.inertia import inertia, signature


@st.composite
def symmetric(draw):
    n = draw(st.integers(1, 6))
    vals = draw(st.lists(st.integers(-4, 4), min_size=n * n, max_size=n * n))
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = vals[i * n + j]
    return A


@given(symmetric())
def test_matches_floating_eigenvalues(A):
    ev = np.linalg.eigvalsh(np.array(A, dtype=float))
    tol = 1e-7
    expect = (int((ev > tol).sum()), int((abs(ev) <= tol).sum()), int((ev < -tol).sum()))
    assert inertia(A) == expect


@given(symmetric(), st.data())
def test_congruence_invariance(A, data):
    n = len(A)
    # unimodular change of basis: identity plus one elementary shear
    i, j = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    P = np.eye(n, dtype=int)
    if i != j:
        P[i, j] = data.draw(st.integers(-3, 3))
    B = (P.T @ np.array(A) @ P).tolist()
    assert inertia(B) == inertia(A)


def test_examples():
    assert inertia([[0, 1], [1, 0]]) == (1, 0, 1)
    assert inertia([[0]]) == (0, 1, 0)
    assert inertia([]) == (0, 0, 0)
    assert signature([[2, 1], [1, 2]]) == 2
    assert inertia([[0, 0, 1], [0, 0, 0], [1, 0, 0]]) == (1, 1, 1)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        inertia([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        inertia([[1, 2]])
