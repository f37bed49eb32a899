"""SL(2, n) / ESL(2, n) matrices, the semidirect product with Z_n^2, and the
conjugacy machinery around the Zauner matrix.

Matrices are immutable 2x2 values over Z_n stored row-major as (a, b, c, d).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import modnum


class NoSolutionError(ValueError):
    """Raised when a conjugating element provably does not exist."""


@dataclass(frozen=True)
class SLMat:
    """A 2x2 matrix [[a, b], [c, d]] over Z_n with determinant +1 or -1.

    Determinant -1 matrices (the ESL coset, e.g. ``J``) are allowed;
    ``extended`` reports which coset the matrix lives in.
    """

    a: int
    b: int
    c: int
    d: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be >= 2")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % self.n)
        if self.det not in (1 % self.n, (-1) % self.n):
            raise ValueError(f"determinant {self.det} is not +-1 mod {self.n}")

    @classmethod
    def from_entries(cls, entries, n: int) -> "SLMat":
        a, b, c, d = entries
        return cls(a, b, c, d, n)

    @classmethod
    def identity(cls, n: int) -> "SLMat":
        return cls(1, 0, 0, 1, n)

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.n

    @property
    def extended(self) -> bool:
        """True for determinant -1 (only distinct from +1 when n > 2)."""
        return self.det != 1 % self.n

    @property
    def trace(self) -> int:
        return (self.a + self.d) % self.n

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1 % self.n)

    def __matmul__(self, other: "SLMat") -> "SLMat":
        _check_modulus(self.n, other.n)
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return SLMat(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, self.n)

    def apply(self, v) -> tuple[int, int]:
        x, y = v
        return ((self.a * x + self.b * y) % self.n, (self.c * x + self.d * y) % self.n)

    def inverse(self) -> "SLMat":
        s = 1 if self.det == 1 % self.n else -1
        return SLMat(s * self.d, -s * self.b, -s * self.c, s * self.a, self.n)

    def __pow__(self, k: int) -> "SLMat":
        base = self if k >= 0 else self.inverse()
        out = SLMat.identity(self.n)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def tolist(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


def zauner(n: int) -> SLMat:
    return SLMat(0, -1, 1, -1, n)


def generator_s(n: int) -> SLMat:
    return SLMat(0, -1, 1, 0, n)


def generator_t(n: int) -> SLMat:
    return SLMat(1, 1, 0, 1, n)


def generator_j(n: int) -> SLMat:
    return SLMat(1, 0, 0, -1, n)


def _check_modulus(m: int, n: int) -> None:
    if m != n:
        raise ValueError(f"modulus mismatch: {m} != {n}")


@dataclass(frozen=True)
class CliffordElem:
    """An element (F, chi) of ESL(2, n) x| Z_n^2."""

    matrix: SLMat
    chi: tuple[int, int] = field(default=(0, 0))

    def __post_init__(self):
        n = self.matrix.n
        object.__setattr__(self, "chi", (self.chi[0] % n, self.chi[1] % n))

    @property
    def n(self) -> int:
        return self.matrix.n

    @classmethod
    def identity(cls, n: int) -> "CliffordElem":
        return cls(SLMat.identity(n), (0, 0))


def compose(e1: CliffordElem, e2: CliffordElem) -> CliffordElem:
    """(F, chi) o (G, zeta) = (FG, chi + F zeta)."""
    _check_modulus(e1.n, e2.n)
    fz = e1.matrix.apply(e2.chi)
    return CliffordElem(e1.matrix @ e2.matrix, (e1.chi[0] + fz[0], e1.chi[1] + fz[1]))


def invert(e: CliffordElem) -> CliffordElem:
    finv = e.matrix.inverse()
    x, y = finv.apply(e.chi)
    return CliffordElem(finv, (-x, -y))


def conjugate(g: CliffordElem, e: CliffordElem) -> CliffordElem:
    """g o e o g^-1."""
    _check_modulus(g.n, e.n)
    return compose(compose(g, e), invert(g))


def clifford_trace(e: CliffordElem) -> int:
    return e.matrix.trace


def is_canonical(e: CliffordElem) -> bool:
    n = e.n
    return e.matrix.trace == (-1) % n and not e.matrix.is_identity()


def kill_translation(e: CliffordElem) -> tuple[int, int]:
    """Solve chi = (F - I) zeta, so that (I, zeta) conjugates e to (F, 0)."""
    F, n = e.matrix, e.n
    a, b, c, d = F.a - 1, F.b, F.c, F.d - 1
    det = (a * d - b * c) % n
    inv = modnum.inverse_mod(det, n)
    if inv is None:
        if F.trace == 2 % n and not F.extended:
            raise NoSolutionError(f"trace {F.trace} = 2 mod {n}: F - I is singular")
        raise NoSolutionError(f"det(F - I) = {det} is not invertible mod {n}")
    x, y = e.chi
    return ((inv * (d * x - b * y)) % n, (inv * (-c * x + a * y)) % n)


def conjugator_to_zauner(F: SLMat, p: int) -> SLMat:
    """Return G in SL(2, p) with G F G^-1 = Z, for any trace -1 matrix F.

    With a = c(alpha+1) + d gamma and b = c beta - d alpha the relation
    GF = ZG holds identically, leaving det(G) = 1 as the only constraint:

        d^2 gamma + c d (2 alpha + 1) - c^2 beta = 1.
    """
    modnum.require_odd_prime(p, minimum=5)
    if F.n != p:
        raise ValueError(f"matrix modulus {F.n} != {p}")
    if F.det != 1:
        raise ValueError(f"det(F) = {F.det}, expected 1")
    if F.trace != p - 1:
        raise ValueError(f"trace {F.trace} != -1 mod {p}")

    alpha, beta, gamma = F.a, F.b, F.c
    inv2 = modnum.inverse_mod(2, p)
    if gamma == 0:
        # 2 alpha + 1 = 0 would force 4 = 1 mod p
        k = (2 * alpha + 1) % p
        assert k != 0, "alpha = -1/2 with gamma = 0 is impossible for p > 3"
        c, d = 1, (beta + 1) * modnum.inverse_mod(k, p) % p
    else:
        # x = d gamma + c (alpha + 1/2), y = c/2 turns det(G) = 1 into
        # x^2 = gamma - 3 y^2
        for y in range(p):
            x = modnum.sqrt_mod(gamma - 3 * y * y, p)
            if x is not None:
                break
        else:
            raise AssertionError(f"no solution of x^2 = {gamma} - 3y^2 mod {p}")
        c = 2 * y % p
        d = (x - c * (alpha + inv2)) * modnum.inverse_mod(gamma, p) % p

    G = SLMat(c * (alpha + 1) + d * gamma, c * beta - d * alpha, c, d, p)
    if G.det != 1 or G @ F != zauner(p) @ G:
        raise AssertionError(f"conjugator construction failed for {F}")
    return G


def canonical_to_zauner(e: CliffordElem, p: int) -> CliffordElem:
    """Return g with conjugate(g, e) == (Z, 0)."""
    modnum.require_odd_prime(p, minimum=5)
    if e.n != p:
        raise ValueError(f"element modulus {e.n} != {p}")
    if not is_canonical(e):
        raise ValueError("element is not canonical (trace -1, non-identity)")
    zeta = kill_translation(e)
    G = conjugator_to_zauner(e.matrix, p)
    # (G, 0) o (I, zeta) = (G, G zeta)
    return CliffordElem(G, G.apply(zeta))


# ---------------------------------------------------------------------------
# Enumeration over SL(2, n)


def dbar(d: int) -> int:
    if d < 2:
        raise ValueError("dimension must be >= 2")
    return d if d % 2 else 2 * d


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def sl2_order(n: int) -> int:
    if n < 2:
        raise ValueError("n must be >= 2")
    num, den = n**3, 1
    for q in prime_factors(n):
        num *= q * q - 1
        den *= q * q
    return num // den


def pack(a, b, c, d, n):
    """Row-major key; numeric order equals lexicographic order of (a,b,c,d)."""
    return ((a * n + b) * n + c) * n + d


def unpack(key: int, n: int) -> tuple[int, int, int, int]:
    key, d = divmod(key, n)
    key, c = divmod(key, n)
    a, b = divmod(key, n)
    return (a, b, c, d)


def sl2_elements(n: int) -> set[int]:
    """All of SL(2, n) as packed keys, by BFS from I over generators S, T."""
    gens = [generator_s(n), generator_t(n)]
    start = pack(1, 0, 0, 1 % n, n)
    seen, frontier = {start}, [start]
    while frontier:
        nxt = []
        for key in frontier:
            m = SLMat.from_entries(unpack(key, n), n)
            for g in gens:
                k = pack(*(m @ g).entries, n)
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def _slice_traces(d: int, trace_mod: str) -> list[int]:
    n = dbar(d)
    if trace_mod == "dbar":
        return [n - 1]
    if trace_mod == "d":
        return [t for t in range(n) if t % d == d - 1]
    raise ValueError(f"trace_mod must be 'dbar' or 'd', got {trace_mod!r}")


def trace_slice(d: int, trace_mod: str = "dbar") -> np.ndarray:
    """Matrices of SL(2, dbar) with trace -1, as sorted packed keys.

    ``trace_mod="dbar"`` takes trace = -1 mod dbar; ``"d"`` takes every trace
    = -1 mod d, which for even d is two traces (d - 1 and 2d - 1) swapped by
    the central element (d + 1) I.
    """
    n = dbar(d)
    a, b, c = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    keys = []
    for t in _slice_traces(d, trace_mod):
        dd = (t - a) % n
        ok = (a * dd - b * c) % n == 1
        keys.append(pack(a[ok], b[ok], c[ok], dd[ok], n))
    return np.sort(np.concatenate(keys).astype(np.int64))


def trace_slice_brute(d: int, trace_mod: str = "dbar") -> int:
    """Count of the trace slice by a plain quadruple loop."""
    n = dbar(d)
    traces = set(_slice_traces(d, trace_mod))
    rng = range(n)
    return sum(
        1
        for a in rng
        for b in rng
        for c in rng
        for e in rng
        if (a * e - b * c) % n == 1 and (a + e) % n in traces
    )


def _conjugation_images(keys: np.ndarray, n: int) -> Iterator[np.ndarray]:
    rest, d = np.divmod(keys, n)
    rest, c = np.divmod(rest, n)
    a, b = np.divmod(rest, n)
    # S M S^-1 = [[d, -c], [-b, a]]
    yield pack(d, (-c) % n, (-b) % n, a, n)
    # T M T^-1 = [[a+c, b+d-a-c], [c, d-c]]
    yield pack((a + c) % n, (b + d - a - c) % n, c, (d - c) % n, n)


@dataclass(frozen=True)
class ClassTable:
    d: int
    dbar: int
    classes: tuple[tuple[SLMat, int], ...]

    @property
    def t_count(self) -> int:
        return len(self.classes)

    @property
    def total(self) -> int:
        return sum(size for _, size in self.classes)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "dbar": self.dbar,
            "t_count": self.t_count,
            "classes": [
                {"rep": list(rep.entries), "size": size} for rep, size in self.classes
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def enumerate_trace_classes(d: int, trace_mod: str = "dbar") -> ClassTable:
    """Conjugacy classes of SL(2, dbar) with trace -1 (see ``trace_slice``).

    With the default ``trace_mod="dbar"`` the class count is T_d. S and T generate SL(2, Z/n), so connected components of the graph
    M -> S M S^-1, M -> T M T^-1 are exactly the conjugacy classes.
    """
    n = dbar(d)
    keys = trace_slice(d, trace_mod)
    m = len(keys)
    rows, cols = [], []
    for image in _conjugation_images(keys, n):
        idx = np.searchsorted(keys, image)
        assert np.all(keys[idx] == image), "trace slice not closed under conjugation"
        rows.append(np.arange(m))
        cols.append(idx)
    graph = coo_matrix(
        (np.ones(2 * m, dtype=np.int8), (np.concatenate(rows), np.concatenate(cols))),
        shape=(m, m),
    )
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    sizes = np.bincount(labels, minlength=ncomp)
    # keys are sorted, so the first hit of each label is its smallest member
    _, first = np.unique(labels, return_index=True)
    classes = sorted(
        (int(keys[i]), int(sizes[labels[i]])) for i in first
    )
    return ClassTable(
        d=d,
        dbar=n,
        classes=tuple(
            (SLMat.from_entries(unpack(k, n), n), size) for k, size in classes
        ),
    )


def t_count_formula(d: int) -> int:
    if d < 2:
        raise ValueError("dimension must be >= 2")
    if d % 9 == 0:
        return 2
    if d % 3 == 0:
        return 3
    return 1

