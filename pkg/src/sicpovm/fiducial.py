"""Numerical search for Weyl-Heisenberg covariant SIC fiducials.

Candidates are restricted to one eigenspace of the Zauner unitary and driven
to the SIC condition |<psi|D_u|psi>|^2 = 1/(d+1) for every u != 0 by
Levenberg-Marquardt on the overlap residuals.

The numerics here avoid BLAS-backed matmul and LAPACK solves: OpenBLAS
kernels round differently depending on array alignment, which made repeated
searches disagree in the last bits. einsum and the small Cholesky solver
below have a fixed summation order, so reports are bit-reproducible.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import pauli_rep

log = logging.getLogger(__name__)

CERTIFY_TOL = 1e-8
NORM_TOL = 1e-12
# restarts whose deviation is below this count as ties (earliest wins)
TIE_TOL = 1e-12


@dataclass
class FiducialCandidate:
    vector: np.ndarray
    eigenvalue_index: Optional[int] = None
    seed: Optional[int] = None
    restarts: Optional[int] = None
    space: str = "zauner-eigenspace"

    def __post_init__(self):
        self.vector = np.asarray(self.vector, dtype=complex)

    @property
    def d(self) -> int:
        return self.vector.shape[0]


@dataclass
class SicReport:
    candidate: FiducialCandidate
    max_overlap_deviation: float
    povm_completeness_deviation: float
    eigenvector_residual: Optional[float]  # None when not restricted to an eigenspace
    certified: bool = field(init=False)

    def __post_init__(self):
        self.certified = bool(self.max_overlap_deviation < CERTIFY_TOL)

    def to_dict(self) -> dict:
        psi = self.candidate.vector
        return {
            "d": self.candidate.d,
            "deviation": self.max_overlap_deviation,
            "completeness": self.povm_completeness_deviation,
            "eig_residual": self.eigenvector_residual,
            "psi": {"re": psi.real.tolist(), "im": psi.imag.tolist()},
            "seed": self.candidate.seed,
            "restarts": self.candidate.restarts,
            "certified": self.certified,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _vector(psi) -> np.ndarray:
    v = psi.vector if isinstance(psi, FiducialCandidate) else np.asarray(psi, dtype=complex)
    if abs(np.linalg.norm(v) - 1) > NORM_TOL:
        raise ValueError(f"vector is not unit norm (norm {np.linalg.norm(v)!r})")
    return v


def overlap_profile(psi) -> dict[tuple[int, int], float]:
    """|<psi|D_u|psi>|^2 for every nonzero index u."""
    v = _vector(psi)
    d = v.shape[0]
    return {
        u: float(abs(_expect(pauli_rep.displacement(d, u), v)) ** 2)
        for u in pauli_rep.nonzero_indices(d)
    }


def _expect(A: np.ndarray, v: np.ndarray) -> complex:
    return complex(np.einsum("i,ij,j->", v.conj(), A, v))


def sic_deviation(psi) -> float:
    v = _vector(psi)
    target = 1.0 / (v.shape[0] + 1)
    return max(abs(x - target) for x in overlap_profile(v).values())


def build_povm(psi) -> list[np.ndarray]:
    """The d^2 subnormalized projectors D_u |psi><psi| D_u^dag / d."""
    v = _vector(psi)
    d = v.shape[0]
    out = []
    for j in range(d):
        for k in range(d):
            w = np.einsum("ij,j->i", pauli_rep.displacement(d, (j, k)), v)
            out.append(np.outer(w, w.conj()) / d)
    return out


def completeness_deviation(povm: list[np.ndarray]) -> float:
    """Frobenius norm of sum(E) - I (an upper bound on the spectral norm)."""
    total = sum(povm)
    diff = total - np.eye(total.shape[0])
    return float(np.sqrt(np.sum(diff.real**2 + diff.imag**2)))


def eigenvector_residual(U: np.ndarray, v: np.ndarray) -> float:
    """||U v - <v|U|v> v||; zero exactly when v is an eigenvector of U."""
    Uv = np.einsum("ij,j->i", U, v)
    r = Uv - np.sum(v.conj() * Uv) * v
    return float(np.sqrt(np.sum(r.real**2 + r.imag**2)))


class _Objective:
    """Overlap residuals r_u(c) = |<phi|D_u|phi>|^2 / |c|^4 - 1/(d+1), phi = B c.

    Parameters are x = (Re c, Im c); B has orthonormal columns.
    """

    def __init__(self, basis: np.ndarray):
        self.basis = basis
        d, self.m = basis.shape
        ops = pauli_rep.displacement_operators(d).reshape(d * d, d, d)[1:]
        # operators restricted to the subspace: B^dag D_u B
        self.ops = np.einsum("ai,uab,bj->uij", basis.conj(), ops, basis)
        self.target = 1.0 / (d + 1)

    def _split(self, x):
        return x[: self.m] + 1j * x[self.m :]

    def residuals(self, x):
        c = self._split(x)
        s = np.sum(c.real**2 + c.imag**2)
        g = np.einsum("i,uij,j->u", c.conj(), self.ops, c)
        return np.abs(g) ** 2 / s**2 - self.target

    def jacobian(self, x):
        c = self._split(x)
        s = np.sum(c.real**2 + c.imag**2)
        # einsum rather than BLAS matmul keeps the search bit-reproducible
        Mc = np.einsum("uij,j->ui", self.ops, c)
        g = np.einsum("ui,i->u", Mc, c.conj())
        q = np.abs(g) ** 2
        # dq = 2 Re(a . dc), a = g conj(M c) + conj(g) c^dag M
        a = g[:, None] * Mc.conj() + g.conj()[:, None] * np.einsum("j,uji->ui", c.conj(), self.ops)
        dq = 2 * np.concatenate([a.real, -a.imag], axis=1)
        ds = 2 * np.concatenate([c.real, c.imag])
        return dq / s**2 - (2 * q / s**3)[:, None] * ds[None, :]

    def objective(self, x) -> float:
        r = self.residuals(x)
        return float(np.sum(r * r))


def _cholesky_solve(A: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """Solve A x = b for small symmetric positive definite A; None if not SPD."""
    n = len(b)
    L = np.zeros_like(A)
    for i in range(n):
        for j in range(i + 1):
            t = A[i, j] - sum(L[i, k] * L[j, k] for k in range(j))
            if i == j:
                if t <= 0:
                    return None
                L[i, i] = np.sqrt(t)
            else:
                L[i, j] = t / L[j, j]
    y = np.zeros(n)
    for i in range(n):
        y[i] = (b[i] - sum(L[i, k] * y[k] for k in range(i))) / L[i, i]
    x = np.zeros(n)
    for i in reversed(range(n)):
        x[i] = (y[i] - sum(L[k, i] * x[k] for k in range(i + 1, n))) / L[i, i]
    return x


def _levenberg_marquardt(obj: _Objective, x: np.ndarray, max_iter: int = 300) -> np.ndarray:
    """Damped Gauss-Newton on the overlap residuals, renormalizing x each step.

    Residuals are invariant under x -> t x, so the normal matrix is singular
    along x; the damping term keeps the solve well posed.
    """
    r = obj.residuals(x)
    cost = float(np.sum(r * r))
    lam = 1e-3
    for _ in range(max_iter):
        if cost < 1e-30:
            break
        J = obj.jacobian(x)
        A = np.einsum("ui,uj->ij", J, J)
        g = np.einsum("ui,u->i", J, r)
        step = _cholesky_solve(A + lam * np.diag(np.diag(A) + 1e-12), -g)
        if step is None:
            lam *= 10
            continue
        y = x + step
        y = y / np.sqrt(np.sum(y * y))
        ry = obj.residuals(y)
        cy = float(np.sum(ry * ry))
        if cy < cost:
            shrink = cost - cy
            x, r, cost = y, ry, cy
            lam = max(lam / 3, 1e-12)
            if shrink <= 1e-15 * cost and np.max(np.abs(step)) < 1e-15:
                break
        else:
            lam *= 4
            if lam > 1e10:
                break
    return x


def _select_clusters(dec: pauli_rep.EigenspaceDecomposition, index: Optional[int]) -> list[int]:
    if index is not None:
        if not 0 <= index < len(dec) or dec.dims[index] == 0:
            raise ValueError(
                f"eigenvalue index {index} out of range for {len(dec)} eigenspaces"
            )
        return [index]
    # largest first; ties keep phase order
    return sorted(range(len(dec)), key=lambda i: -dec.dims[i])


def _zauner_or_none(d: int) -> Optional[np.ndarray]:
    try:
        return pauli_rep.zauner_unitary(d)
    except ArithmeticError:
        log.warning("no Zauner unitary for d=%d; searching the full sphere", d)
        return None


def search_fiducial(
    d: int,
    eigenvalue_index: Optional[int] = None,
    seed: int = 0,
    restarts: int = 50,
) -> SicReport:
    """Search a Zauner eigenspace for a SIC fiducial.

    With ``eigenvalue_index=None`` the eigenspaces are tried largest first,
    stopping at the first one that yields a certified fiducial. Within an
    eigenspace all ``restarts`` random starts are run and the lowest
    deviation wins (ties to the earlier restart). An uncertified best
    attempt is still returned, with ``certified`` false.
    """
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    U = _zauner_or_none(d)
    if U is None:
        spaces = [(None, np.eye(d, dtype=complex), "full")]
    else:
        dec = pauli_rep.eigenspaces(U)
        spaces = [
            (i, dec.bases[i], "zauner-eigenspace")
            for i in _select_clusters(dec, eigenvalue_index)
        ]

    best: Optional[SicReport] = None
    for index, basis, space in spaces:
        report = _search_space(d, basis, U, index, space, seed, restarts)
        if best is None or report.max_overlap_deviation < best.max_overlap_deviation:
            best = report
        if best.certified:
            break
    return best


def _search_space(d, basis, U, index, space, seed, restarts) -> SicReport:
    rng = np.random.default_rng(seed)
    obj = _Objective(basis)
    m = basis.shape[1]
    best_x, best_key = None, np.inf
    for _ in range(restarts):
        x0 = rng.standard_normal(2 * m)
        x0 /= np.sqrt(np.sum(x0 * x0))
        x = x0 if m == 1 else _levenberg_marquardt(obj, x0)
        dev = float(np.max(np.abs(obj.residuals(x))))
        # converged restarts tie; the earliest wins
        key = 0.0 if dev < TIE_TOL else dev
        if key < best_key:
            best_x, best_key = x, key
    c = best_x[:m] + 1j * best_x[m:]
    v = np.einsum("ij,j->i", basis, c)
    v = v / np.sqrt(np.sum(v.real**2 + v.imag**2))
    cand = FiducialCandidate(v, eigenvalue_index=index, seed=seed, restarts=restarts, space=space)
    return SicReport(
        candidate=cand,
        max_overlap_deviation=sic_deviation(v),
        povm_completeness_deviation=completeness_deviation(build_povm(v)),
        eigenvector_residual=eigenvector_residual(U, v) if U is not None else None,
    )
