"""Acceptance criteria, one PASS/FAIL line each in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import io
import itertools
import json
import time
from contextlib import redirect_stdout

import numpy as np

from sicpovm import cli, clifford_group as cg, modnum, pauli_rep
from sicpovm.fiducial import search_fiducial


def random_sl2(rng, p):
    # uniform: random nonzero first row, then a uniform solution of ad - bc = 1
    while True:
        a, b = (int(x) for x in rng.integers(0, p, 2))
        if a or b:
            break
    if a:
        c = int(rng.integers(0, p))
        d = (1 + b * c) * pow(a, -1, p) % p
    else:
        d = int(rng.integers(0, p))
        c = -pow(b, -1, p) % p
    return cg.SLMat(a, b, c, d, p)


def test_criterion_1_t_count_table(criterion):
    start = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(["tcount", "--from", "2", "--to", "47", "--format", "json"])
    elapsed = time.perf_counter() - start
    rows = json.loads(buf.getvalue())["rows"]
    exact = [r["d"] for r in rows if r["t_count"] == cg.t_count_formula(r["d"])]
    ok = code == 0 and exact == list(range(2, 48)) and elapsed < 300
    criterion(1, "T_d enumeration matches formula for d = 2..47", ok,
              f"{len(exact)}/46 exact, {elapsed:.1f}s")
    assert ok


def test_criterion_2_conjugator_reproduction(criterion):
    rng = np.random.default_rng(2)
    checked = failures = 0
    for p in modnum.odd_primes(5, 47):
        keys = cg.trace_slice(p)
        # exhaustive when the class is small (p <= 19), else 500 samples
        if len(keys) > 500:
            keys = rng.choice(keys, 500, replace=False)
        Z = cg.zauner(p)
        for key in keys:
            F = cg.SLMat.from_entries(cg.unpack(int(key), p), p)
            G = cg.conjugator_to_zauner(F, p)
            checked += 1
            if G.det != 1 or G @ F @ G.inverse() != Z:
                failures += 1
    ok = failures == 0
    criterion(2, "conjugator G F G^-1 = Z, exhaustive p <= 19, sampled p <= 47", ok,
              f"{checked} matrices, {failures} failures")
    assert ok


def test_criterion_3_number_theory(criterion):
    start = time.perf_counter()
    bad = []
    for p in modnum.odd_primes(3, 1000):
        if modnum.legendre_pair_sum(p) != -1 or modnum.residue_successor_sum(p) != -1:
            bad.append(p)
        elif modnum.consecutive_residue_count(p) != modnum.consecutive_residue_count_brute(p):
            bad.append(p)
    curve_checks = 0
    for p in modnum.odd_primes(5, 200):
        expected = p - 1 if p % 3 == 1 else p + 1
        res = set(modnum.residues(p))
        for g in range(1, p):
            if g in res:
                continue
            curve_checks += 1
            if modnum.count_curve_points([g, 0, -3], p) != expected:
                bad.append((p, g))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    criterion(3, "Legendre identities p < 1000 and x^2 = g - 3y^2 counts p < 200", ok,
              f"{curve_checks} curve counts, {len(bad)} failures, {elapsed:.1f}s")
    assert ok


def test_criterion_4_representation(criterion):
    rng = np.random.default_rng(4)
    worst = {"unitary": 0.0, "closure": 0.0, "orthogonality": 0.0,
             "intertwining": 0.0, "cube": 0.0}
    for d in (3, 5, 7, 11, 13):
        ops = pauli_rep.displacement_operators(d)
        idx = list(itertools.product(range(d), repeat=2))
        flat = ops.reshape(d * d, d, d)
        for u in idx:
            D = ops[u]
            worst["unitary"] = max(worst["unitary"],
                                   np.max(np.abs(D.conj().T @ D - np.eye(d))))
        # all Hilbert-Schmidt products at once
        gram = np.einsum("uab,vab->uv", flat.conj(), flat)
        worst["orthogonality"] = max(worst["orthogonality"],
                                     np.max(np.abs(gram - d * np.eye(d * d))))
        for u, v in itertools.product(idx, repeat=2):
            prod = ops[u] @ ops[v]
            target = ops[(u[0] + v[0]) % d, (u[1] + v[1]) % d]
            phase = np.vdot(target, prod) / d
            err = max(abs(abs(phase) - 1), np.max(np.abs(prod - phase * target)))
            worst["closure"] = max(worst["closure"], err)
        for _ in range(100):
            F = random_sl2(rng, d)
            U = pauli_rep.metaplectic_unitary(d, F)
            worst["intertwining"] = max(worst["intertwining"],
                                        pauli_rep.verify_intertwining(U, F, d))
        U = pauli_rep.zauner_unitary(d)
        W = U @ U @ U
        worst["cube"] = max(worst["cube"], np.max(np.abs(W - W[0, 0] * np.eye(d))))
    ok = (worst["unitary"] < 1e-14 and worst["closure"] < 1e-12
          and worst["orthogonality"] < 1e-12 and worst["intertwining"] < 1e-12
          and worst["cube"] < 1e-10)
    criterion(4, "displacement, metaplectic and Zauner unitary contracts", ok,
              ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))
    assert ok


def test_criterion_5_fiducial_search(criterion):
    start = time.perf_counter()
    lines, ok = [], True
    for d in range(2, 8):
        r = search_fiducial(d)
        good = (r.certified and r.max_overlap_deviation < 1e-8
                and r.povm_completeness_deviation < 1e-10)
        if d in (3, 5, 7):
            good = good and r.eigenvector_residual is not None and r.eigenvector_residual < 1e-8
        ok = ok and good
        lines.append(f"d={d} {r.max_overlap_deviation:.0e}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 600
    criterion(5, "certified SIC fiducials for d = 2..7 (default 50 restarts)", ok,
              f"{'; '.join(lines)}; {elapsed:.1f}s")
    assert ok


def test_criterion_6_translation_elimination(criterion):
    rng = np.random.default_rng(6)
    primes = modnum.odd_primes(5, 47)
    failures = solved = singular = 0
    while solved < 10_000:
        p = int(rng.choice(primes))
        F = random_sl2(rng, p)
        chi = tuple(int(x) for x in rng.integers(0, p, 2))
        e = cg.CliffordElem(F, chi)
        if F.trace == 2:
            continue
        zeta = cg.kill_translation(e)
        out = cg.conjugate(cg.CliffordElem(cg.SLMat.identity(p), zeta), e)
        solved += 1
        if out.chi != (0, 0) or out.matrix != F:
            failures += 1
    for _ in range(1000):
        # trace 2: conjugates of unipotent [[1, t], [0, 1]], identity included
        p = int(rng.choice(primes))
        G = random_sl2(rng, p)
        F = G @ cg.SLMat(1, int(rng.integers(0, p)), 0, 1, p) @ G.inverse()
        chi = tuple(int(x) for x in rng.integers(0, p, 2))
        try:
            cg.kill_translation(cg.CliffordElem(F, chi))
            failures += 1
        except cg.NoSolutionError:
            singular += 1
    ok = failures == 0
    criterion(6, "translation elimination exact; trace 2 reports no solution", ok,
              f"{solved} solved, {singular} trace-2 rejected, {failures} failures")
    assert ok
