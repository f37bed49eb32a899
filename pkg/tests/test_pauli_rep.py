import itertools

import numpy as np
import pytest

from sicpovm.clifford_group import SLMat, zauner
from sicpovm.pauli_rep import (
    displacement,
    displacement_operators,
    eigenspaces,
    intertwiner,
    matrix_from_json,
    matrix_to_json,
    metaplectic_unitary,
    unitarity_defect,
    verify_intertwining,
    zauner_unitary,
)

ODD = [3, 5, 7, 11, 13]


def random_sl2(rng, d):
    while True:
        a, b, c, e = (int(x) for x in rng.integers(0, d, 4))
        if (a * e - b * c) % d == 1:
            return (a, b, c, e)


def test_displacement_examples():
    assert np.allclose(displacement(4, (0, 0)), np.eye(4))
    assert np.array_equal(displacement(2, (0, 1)), np.array([[0, 1], [1, 0]]))
    w = np.exp(2j * np.pi / 3)
    assert np.allclose(displacement(3, (1, 0)), np.diag([1, w, w * w]))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_displacement_matches_clock_shift(d):
    w = np.exp(2j * np.pi / d)
    X = np.roll(np.eye(d), 1, axis=0)  # X|n> = |n+1>
    Zc = np.diag(w ** np.arange(d))
    for j, k in itertools.product(range(d), repeat=2):
        expected = w ** (j * k) * np.linalg.matrix_power(X, k) @ np.linalg.matrix_power(Zc, j)
        assert np.allclose(displacement(d, (j, k)), expected, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_displacement_algebra(d):
    ops = displacement_operators(d)
    for u in itertools.product(range(d), repeat=2):
        D = ops[u]
        assert np.max(np.abs(D.conj().T @ D - np.eye(d))) < 1e-14
        for v in itertools.product(range(d), repeat=2):
            tr = np.trace(D.conj().T @ ops[v])
            assert abs(tr - (d if u == v else 0)) < 1e-12
            prod = D @ ops[v]
            target = ops[(u[0] + v[0]) % d, (u[1] + v[1]) % d]
            phase = np.vdot(target, prod) / d
            assert abs(abs(phase) - 1) < 1e-12
            assert np.max(np.abs(prod - phase * target)) < 1e-12


def test_metaplectic_identity():
    U = metaplectic_unitary(5, SLMat.identity(5))
    assert np.allclose(U / U[0, 0], np.eye(5))
    assert verify_intertwining(U, SLMat.identity(5), 5) < 1e-14


@pytest.mark.parametrize("d", ODD + [9, 15])
def test_metaplectic_random(d):
    rng = np.random.default_rng(d)
    for _ in range(25):
        F = random_sl2(rng, d)
        U = metaplectic_unitary(d, F)
        assert unitarity_defect(U) < 1e-12
        assert verify_intertwining(U, F, d) < 1e-12


def test_metaplectic_noninvertible_entries():
    # lower-left entry 0 forces the factored path
    F = (2, 3, 0, 4)
    U = metaplectic_unitary(7, F)
    assert verify_intertwining(U, F, 7) < 1e-12
    # composite: lower-left 3 is a zero divisor mod 9
    F = (1, 0, 3, 1)
    assert verify_intertwining(metaplectic_unitary(9, F), F, 9) < 1e-12


def test_metaplectic_errors():
    with pytest.raises(ValueError):
        metaplectic_unitary(4, (1, 0, 0, 1))
    with pytest.raises(ValueError):
        metaplectic_unitary(5, (2, 0, 0, 2))


@pytest.mark.parametrize("d", [3, 5, 7])
def test_metaplectic_agrees_with_numeric_intertwiner(d):
    rng = np.random.default_rng(100 + d)
    for _ in range(5):
        F = random_sl2(rng, d)
        U = metaplectic_unitary(d, F)
        V = intertwiner(d, F)
        # equal up to a displacement and a phase: U^dag V commutes with all D_u up to phase,
        # so it is proportional to a single displacement
        W = U.conj().T @ V
        ov = [abs(np.trace(displacement(d, u).conj().T @ W)) / d
              for u in itertools.product(range(d), repeat=2)]
        assert max(ov) == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7, 8, 11, 13])
def test_zauner_unitary(d):
    U = zauner_unitary(d)
    assert unitarity_defect(U) < 1e-12
    assert verify_intertwining(U, zauner(d), d) < 1e-12
    W = U @ U @ U
    assert np.max(np.abs(W - W[0, 0] * np.eye(d))) < 1e-10


def test_zauner_d5_eigenvalues_are_cube_roots():
    lam = np.linalg.eigvals(zauner_unitary(5))
    cubes = lam**3
    assert np.allclose(cubes, cubes[0], atol=1e-10)


def test_zauner_d7_maps_d10():
    U = zauner_unitary(7)
    T = U @ displacement(7, (1, 0)) @ U.conj().T
    target = displacement(7, zauner(7).apply((1, 0)))
    phase = np.vdot(target, T) / 7
    assert abs(abs(phase) - 1) < 1e-12
    assert np.allclose(T, phase * target, atol=1e-12)


def test_verify_intertwining_examples():
    assert verify_intertwining(np.eye(3), SLMat.identity(3), 3) == 0
    assert verify_intertwining(zauner_unitary(5), zauner(5), 5) < 1e-12
    assert verify_intertwining(np.eye(5), zauner(5), 5) > 0.5


def test_eigenspaces_examples():
    dec = eigenspaces(np.eye(4))
    assert dec.dims == [4] and np.isclose(dec.eigenvalues[0], 1)
    dec = eigenspaces(np.diag([1.0, -1.0]))
    assert dec.dims == [1, 1]
    with pytest.raises(ValueError):
        eigenspaces(np.array([[1.0, 1.0], [0.0, 1.0]]))


@pytest.mark.parametrize("d", [4, 5, 7, 9, 13])
def test_eigenspaces_of_zauner(d):
    U = zauner_unitary(d)
    dec = eigenspaces(U)
    assert len(dec) == 3
    assert sum(dec.dims) == d
    basis = np.hstack(dec.bases)
    assert np.allclose(basis.conj().T @ basis, np.eye(d), atol=1e-10)
    for lam, B in zip(dec.eigenvalues, dec.bases):
        assert np.max(np.abs(U @ B - lam * B)) < 1e-10


def test_eigenspaces_wraparound_cluster():
    # eigenvalues exp(+-i eps) straddle angle 0 and must merge
    eps = 1e-10
    U = np.diag(np.exp(1j * np.array([eps, -eps, np.pi])))
    assert sorted(eigenspaces(U).dims) == [1, 2]


def test_matrix_json_roundtrip():
    U = zauner_unitary(3)
    assert np.array_equal(matrix_from_json(matrix_to_json(U)), U)
    with pytest.raises(ValueError):
        matrix_from_json('{"d": 2, "re": [1], "im": [0]}')
