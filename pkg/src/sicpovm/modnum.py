"""Modular arithmetic and quadratic-residue counting over Z_p.

Every closed-form identity here has a brute-force counterpart (the
``*_brute`` functions) so the two routes can be checked against each other.
"""

from __future__ import annotations

from math import gcd, isqrt
from typing import Optional, Sequence


def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for the small moduli used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def require_odd_prime(p: int, minimum: int = 3) -> int:
    if not isinstance(p, int) or not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    if p < minimum:
        raise ValueError(f"requires p >= {minimum}, got {p}")
    return p


def odd_primes(lo: int, hi: int) -> list[int]:
    """Odd primes in the closed interval [lo, hi]."""
    return [p for p in range(max(lo, 3), hi + 1) if p % 2 and is_prime(p)]


def legendre(n: int, p: int) -> int:
    """Legendre symbol (n/p) via Euler's criterion."""
    require_odd_prime(p)
    r = pow(n % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def residues(p: int) -> list[int]:
    """Nonzero quadratic residues mod p, found by squaring."""
    return sorted({x * x % p for x in range(1, p)})


def inverse_mod(n: int, m: int) -> Optional[int]:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(n, m) != 1:
        return None
    return pow(n, -1, m)


def _tonelli_shanks(n: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod(n: int, p: int) -> Optional[int]:
    """Square root of n mod p, or None for a nonresidue.

    Of the two roots r and p - r the smaller one is returned.
    """
    require_odd_prime(p)
    n %= p
    if n == 0:
        return 0
    if legendre(n, p) == -1:
        return None
    if p % 4 == 3:
        r = pow(n, (p + 1) // 4, p)
    else:
        r = _tonelli_shanks(n, p)
    assert r * r % p == n
    return min(r, p - r)


def legendre_pair_sum(p: int) -> int:
    """sum_{n=1}^{p-2} (n/p)((n+1)/p), summed directly. Always -1."""
    require_odd_prime(p)
    return sum(legendre(n, p) * legendre(n + 1, p) for n in range(1, p - 1))


def consecutive_residue_count(p: int) -> int:
    """Number of n in [1, p-2] with n and n+1 both residues (closed form)."""
    require_odd_prime(p)
    sign = -1 if (p - 1) // 2 % 2 else 1
    num = p - 4 - sign
    assert num % 4 == 0
    return num // 4


def consecutive_residue_count_brute(p: int) -> int:
    require_odd_prime(p)
    res = set(residues(p))
    return sum(1 for n in range(1, p - 1) if n in res and n + 1 in res)


def residue_successor_sum(p: int) -> int:
    """sum over nonzero residues n of ((n+1)/p), summed directly. Always -1."""
    require_odd_prime(p)
    return sum(legendre(n + 1, p) for n in residues(p))


def residue_successor_sum_closed(p: int) -> int:
    """The middle expression (1-p)/2 + 2N(p) + (1 + (-1)^((p-1)/2))/2."""
    require_odd_prime(p)
    sign = -1 if (p - 1) // 2 % 2 else 1
    return (1 - p) // 2 + 2 * consecutive_residue_count(p) + (1 + sign) // 2


def eval_poly(coeffs: Sequence[int], x: int, p: int) -> int:
    """Evaluate a polynomial (coefficients low degree first) at x mod p."""
    acc = 0
    for a in reversed(coeffs):
        acc = (acc * x + a) % p
    return acc


def count_curve_points(coeffs: Sequence[int], p: int) -> int:
    """Number of (x, y) in Z_p^2 with y^2 = f(x), via the Legendre sum."""
    require_odd_prime(p)
    return p + sum(legendre(eval_poly(coeffs, x, p), p) for x in range(p))


def count_curve_points_brute(coeffs: Sequence[int], p: int) -> int:
    """Same count by tabulating how many y square to each value."""
    require_odd_prime(p)
    root_count = [0] * p
    for y in range(p):
        root_count[y * y % p] += 1
    return sum(root_count[eval_poly(coeffs, x, p)] for x in range(p))
