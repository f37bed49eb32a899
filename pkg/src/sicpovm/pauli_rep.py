"""Displacement operators on C^d and Clifford unitaries that permute them.

Index convention: a displacement index is u = (j, k) with

    D_jk = w^(jk) sum_n w^(jn) |n + k><n|,   w = exp(2 pi i / d),

so j is the clock (phase) power and k the shift power. A Clifford unitary
U_F for F in SL(2, d) satisfies U_F D_u U_F^dag = phase(u) * D_(F u), with
F acting on u as a column vector mod d.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import gcd

import numpy as np
import scipy.linalg

from .clifford_group import SLMat, zauner

UNITARY_TOL = 1e-10
CLUSTER_TOL = 1e-8


def omega(d: int) -> complex:
    return np.exp(2j * np.pi / d)


def displacement(d: int, idx) -> np.ndarray:
    if d < 2:
        raise ValueError("dimension must be >= 2")
    j, k = idx[0] % d, idx[1] % d
    n = np.arange(d)
    # exact phases: reduce exponents mod d before exponentiating
    phase = np.exp(2j * np.pi * ((j * k + j * n) % d) / d)
    out = np.zeros((d, d), dtype=complex)
    out[(n + k) % d, n] = phase
    return out


def displacement_operators(d: int) -> np.ndarray:
    """All D_jk stacked as an array of shape (d, d, d, d), indexed [j, k]."""
    ops = np.empty((d, d, d, d), dtype=complex)
    for j, k in itertools.product(range(d), repeat=2):
        ops[j, k] = displacement(d, (j, k))
    return ops


def nonzero_indices(d: int) -> list[tuple[int, int]]:
    return [u for u in itertools.product(range(d), repeat=2) if u != (0, 0)]


def _as_mod(F, d: int) -> tuple[int, int, int, int]:
    entries = F.entries if isinstance(F, SLMat) else tuple(F)
    return tuple(int(x) % d for x in entries)


def _closed_form(d: int, m: tuple[int, int, int, int]) -> np.ndarray:
    """Closed-form unitary for odd d and m = [[a, b], [c, e]] with b a unit.

    Acts on indices ordered (shift, clock); callers swap to (clock, shift).
    """
    a, b, c, e = m
    binv = pow(b, -1, d)
    tau_exp = np.pi * (d + 1) / d
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    # tau^d = 1 for odd d, so the exponent is reduced mod d
    expo = (binv * (a * k * k - 2 * j * k + e * j * j)) % d
    return np.exp(1j * tau_exp * expo) / np.sqrt(d)


def _compose_mod(x, y, d):
    a, b, c, e = x
    f, g, h, i = y
    return ((a * f + b * h) % d, (a * g + b * i) % d, (c * f + e * h) % d, (c * g + e * i) % d)


def metaplectic_unitary(d: int, F) -> np.ndarray:
    """Clifford unitary U_F for odd d (defined up to a global phase)."""
    if d < 3 or d % 2 == 0:
        raise ValueError(f"metaplectic unitaries are built for odd d >= 3, got {d}")
    alpha, beta, gamma, delta = _as_mod(F, d)
    if (alpha * delta - beta * gamma) % d != 1:
        raise ValueError("F must have determinant 1 mod d")
    m = (delta, gamma, beta, alpha)
    if gcd(m[1], d) == 1:
        return _closed_form(d, m)
    # m = (m (T^k S)^-1) (T^k S), both factors with a unit upper-right entry
    for k in range(d):
        if gcd(m[0] + k * m[1], d) == 1:
            break
    else:
        raise AssertionError("no unit combination; F is not invertible")
    tks = (k % d, d - 1, 1, 0)
    tks_inv = (0, 1, d - 1, k % d)
    left = _compose_mod(m, tks_inv, d)
    return _closed_form(d, left) @ _closed_form(d, tks)


def _order_d_phase(B: np.ndarray, d: int) -> complex:
    """Phase c such that (c B)^d = I."""
    lam = np.linalg.matrix_power(B, d)[0, 0]
    return lam ** (-1.0 / d)


def intertwiner(d: int, F) -> np.ndarray:
    """Numerical Clifford unitary for any d >= 2 and F in SL(2, d).

    Solves U D_10 = B_1 U and U D_01 = B_2 U as one linear system, with
    B_i = D_(F e_i) rescaled to order d, and takes the null vector.
    """
    a, b, c, e = _as_mod(F, d)
    if (a * e - b * c) % d != 1:
        raise ValueError("F must have determinant 1 mod d")
    eye = np.eye(d)
    blocks = []
    for src, dst in (((1, 0), (a, c)), ((0, 1), (b, e))):
        A = displacement(d, src)
        B = displacement(d, dst)
        B = _order_d_phase(B, d) * B
        # vec(U A - B U) = (A^T kron I - I kron B) vec(U), column-major vec
        blocks.append(np.kron(A.T, eye) - np.kron(eye, B))
    system = np.vstack(blocks)
    _, s, vh = np.linalg.svd(system)
    if s[-1] > 1e-8 or (d > 1 and s[-2] < 1e-6):
        raise ArithmeticError(f"intertwiner not unique (singular values {s[-2:]})")
    U = vh[-1].conj().reshape(d, d, order="F")
    return U * np.sqrt(d) / np.linalg.norm(U)


def _cube_defect(U: np.ndarray) -> float:
    W = U @ U @ U
    d = U.shape[0]
    return float(np.max(np.abs(W - np.trace(W) / d * np.eye(d))))


def zauner_unitary(d: int) -> np.ndarray:
    """Unitary for the Zauner matrix Z = [[0, -1], [1, -1]], with U^3 ~ I.

    Odd d uses the closed form. Even d solves for an intertwiner and then
    picks the first displacement multiple D_w U whose cube is scalar.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if d % 2:
        return metaplectic_unitary(d, zauner(d))
    U = intertwiner(d, zauner(d))
    for w in itertools.product(range(d), repeat=2):
        V = displacement(d, w) @ U
        if _cube_defect(V) < 1e-9:
            return V
    raise ArithmeticError(f"no order-3 Zauner unitary found for d={d}")


def verify_intertwining(U: np.ndarray, F, d: int) -> float:
    """Largest max-entry deviation of U D_u U^dag from phase * D_(F u).

    The phase for each u is the unit-modulus projection of the overlap
    Tr(D_(Fu)^dag U D_u U^dag) / d (taken as 1 when that overlap vanishes).
    """
    a, b, c, e = _as_mod(F, d)
    Ud = U.conj().T
    worst = 0.0
    for j, k in nonzero_indices(d):
        T = U @ displacement(d, (j, k)) @ Ud
        target = displacement(d, ((a * j + b * k) % d, (c * j + e * k) % d))
        ov = np.vdot(target, T) / d
        phase = ov / abs(ov) if abs(ov) > 1e-12 else 1.0
        worst = max(worst, float(np.max(np.abs(T - phase * target))))
    return worst


def unitarity_defect(U: np.ndarray) -> float:
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


@dataclass
class EigenspaceDecomposition:
    eigenvalues: list[complex]
    bases: list[np.ndarray]  # each d x m, orthonormal columns

    @property
    def dims(self) -> list[int]:
        return [b.shape[1] for b in self.bases]

    def __len__(self) -> int:
        return len(self.eigenvalues)


def eigenspaces(U: np.ndarray, tol: float = CLUSTER_TOL) -> EigenspaceDecomposition:
    """Group the eigenvectors of a unitary by eigenvalue.

    Clusters are ordered by eigenvalue phase in [0, 2 pi).
    """
    if unitarity_defect(U) > UNITARY_TOL:
        raise ValueError("matrix is not unitary")
    T, Q = scipy.linalg.schur(U, output="complex")
    lam = np.diag(T)
    angles = np.mod(np.angle(lam), 2 * np.pi)
    order = np.argsort(angles)
    clusters: list[list[int]] = []
    for i in order:
        if clusters and abs(lam[i] - lam[clusters[-1][-1]]) < tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    if len(clusters) > 1 and abs(lam[clusters[0][0]] - lam[clusters[-1][-1]]) < tol:
        clusters[0] = clusters.pop() + clusters[0]
    eigenvalues, bases = [], []
    for cl in clusters:
        v = lam[cl].mean()
        eigenvalues.append(complex(v / abs(v)))
        bases.append(Q[:, cl])
    return EigenspaceDecomposition(eigenvalues, bases)


def matrix_to_json(U: np.ndarray) -> str:
    return json.dumps(
        {"d": int(U.shape[0]), "re": U.real.ravel().tolist(), "im": U.imag.ravel().tolist()}
    )


def matrix_from_json(text: str) -> np.ndarray:
    obj = json.loads(text)
    d = obj["d"]
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.size != d * d or im.size != d * d:
        raise ValueError(f"expected {d * d} entries")
    return (re + 1j * im).reshape(d, d)
