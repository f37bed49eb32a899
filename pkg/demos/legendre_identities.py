"""
Legendre symbols and a few exact counting identities
=====================================================

Everything here is integer arithmetic. Each closed form is printed next to
a brute-force count so the agreement is visible.
"""

from sicpovm import modnum

p = 13
print("quadratic residues mod", p, ":", modnum.residues(p))
print("(n/13) for n = 1..12:", [modnum.legendre(n, p) for n in range(1, p)])

# square roots come back in the lower half [0, (p-1)/2]
for n in (3, 4, 10, 5):
    print(f"sqrt({n}) mod {p} =", modnum.sqrt_mod(n, p))

# sum of (n/p)(n+1/p) over n is always -1
print("pair sums:", {q: modnum.legendre_pair_sum(q) for q in modnum.odd_primes(3, 40)})

# residues n with n+1 also a residue: closed form vs counting
print(" p  formula  brute")
for q in modnum.odd_primes(5, 60):
    print(f"{q:>2} {modnum.consecutive_residue_count(q):>8} "
          f"{modnum.consecutive_residue_count_brute(q):>6}")

# solutions of x^2 = g - 3y^2 for a nonresidue g: p - 1 or p + 1 by p mod 3
for q in (7, 11, 13, 17, 19):
    g = next(n for n in range(2, q) if modnum.legendre(n, q) == -1)
    count = modnum.count_curve_points([g, 0, -3], q)
    print(f"p={q} (p mod 3 = {q % 3}) g={g}: {count} solutions")
