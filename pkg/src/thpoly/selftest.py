"""Reduced-size invariant suite behind the `selftest` CLI command.

Every check is deterministic (fixed seeds, no timing in the output), so
two runs in the same environment print identical summaries.  Exit code 0
only when every check passes.
"""

from __future__ import annotations

import numpy as np

from .dense import (DenseMatrix, dense_charpoly, dense_minpoly,
                    dense_to_structured, displacement_rank, exhaustive_lfsr)
from .field import PrimeField
from .formats import (dump_dmx, dump_smx, parse_dmx, parse_smx, poly_from_line,
                      poly_to_line)
from .linalg import rank
from .poly import Poly, berlekamp_massey, poly_gcd
from .structured import THMatrix, from_hankel, from_toeplitz, random_structured
from .wiedemann import (BsgsPlan, bsgs_sequence, charpoly_generic,
                        krylov_sequence_naive, minimal_matrix_generator,
                        minpoly, structured_projectors, verify_annihilates)

_P_SMALL = 101
_P_NTT = 2013265921


def _fields():
    return PrimeField(_P_SMALL), PrimeField(_P_NTT)


def check_field_arithmetic():
    for field in _fields():
        rng = field.rng(11)
        for _ in range(200):
            a, b, c = (int(x) for x in field.rand_vec(rng, 3))
            assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
            assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b),
                                                              field.mul(a, c))
            if a:
                assert field.mul(a, field.inv(a)) == 1
    f7 = PrimeField(7)
    assert f7.inv(3) == 5
    assert f7.batch_inv([1, 2, 4]) == [1, 4, 2]
    return "field arithmetic"


def check_poly_paths():
    field = PrimeField(_P_NTT)
    rng = np.random.default_rng(12)
    for _ in range(20):
        da, db = int(rng.integers(0, 130)), int(rng.integers(0, 130))
        a = field.rand_vec(rng, da + 1)
        b = field.rand_vec(rng, db + 1)
        via_ntt = field.conv(a, b, method="ntt")
        via_basic = field.conv(a, b, method="basic")
        assert np.array_equal(via_ntt, via_basic)
    return "poly_mul NTT path == fallback path"


def check_poly_division():
    field = PrimeField(_P_SMALL)
    rng = np.random.default_rng(13)
    for _ in range(20):
        a = Poly(field, field.rand_vec(rng, 10))
        b = Poly(field, field.rand_vec(rng, 5))
        if b.is_zero():
            continue
        q, r = a.divrem(b)
        assert q.mul(b).add(r) == a
        assert r.degree < b.degree
        g = poly_gcd(a.mul(b), b)
        (qq, rr) = a.mul(b).divrem(g)
        assert rr.is_zero()
    return "divrem identity and gcd divisibility"


def check_berlekamp_massey():
    f5 = PrimeField(5)
    rng = np.random.default_rng(14)
    for _ in range(50):
        length = int(rng.integers(1, 7))
        seq = [int(x) for x in rng.integers(0, 5, size=length)]
        bm = berlekamp_massey(f5, seq)
        brute = exhaustive_lfsr(f5, seq, 6)
        assert brute is not None and bm.degree == brute.degree
        d = int(bm.degree)
        for i in range(length - d):
            acc = sum(bm.coeff(t) * seq[i + t] for t in range(d + 1)) % 5
            assert acc == 0
    return "berlekamp_massey minimality vs exhaustive search"


def check_displacement_roundtrip():
    for field in _fields():
        for seed in range(10):
            A = random_structured(field, 4 + seed, seed % 3, (seed + 1) % 3, seed)
            for core in (A.P, A.Q):
                dense = core.dense()
                shifted = field.zeros(dense.shape)
                shifted[1:, 1:] = dense[:-1, :-1]
                disp = (dense - shifted) % field.p
                assert np.array_equal(disp, field.matmul(core.G, core.H.T))
    return "displacement round-trip"


def check_ingestion():
    field = PrimeField(_P_SMALL)
    rng = np.random.default_rng(15)
    for _ in range(10):
        n = int(rng.integers(2, 9))
        col = field.rand_vec(rng, n)
        row = field.rand_vec(rng, n)
        row[0] = col[0]
        T = from_toeplitz(field, col, row)
        dense = T.reconstruct()
        for i in range(n):
            for j in range(n):
                want = col[i - j] if i >= j else row[j - i]
                assert dense[i, j] == want
        v = field.rand_vec(rng, 2 * n - 1)
        Hm = from_hankel(field, v)
        dh = Hm.reconstruct()
        for i in range(n):
            for j in range(n):
                assert dh[i, j] == v[i + j]
    return "Toeplitz/Hankel ingestion matches dense entrywise"


def check_compress_widths():
    field = PrimeField(_P_SMALL)
    rng = np.random.default_rng(16)
    from .structured import compress_pair
    for _ in range(10):
        n = int(rng.integers(4, 10))
        G0 = field.rand_mat(rng, (n, 3))
        Mix = field.rand_mat(rng, (3, 6))
        G = field.matmul(G0, Mix)
        H = field.rand_mat(rng, (n, 6))
        G2, H2 = compress_pair(field, G, H)
        prod = field.matmul(G, H.T)
        assert np.array_equal(field.matmul(G2, H2.T), prod)
        assert G2.shape[1] == rank(field, prod)
    return "compression reaches the dense displacement rank"


def check_homomorphism():
    field = PrimeField(_P_NTT)
    for seed in range(8):
        n = 5 + seed
        A = random_structured(field, n, 2, 1, seed)
        B = random_structured(field, n, 1, 2, seed + 100)
        da, db = A.reconstruct(), B.reconstruct()
        assert np.array_equal((A + B).reconstruct(), (da + db) % field.p)
        assert np.array_equal(A.multiply(B).reconstruct(),
                              field.matmul(da, db))
        assert np.array_equal(A.power(3).reconstruct(),
                              field.matmul(field.matmul(da, da), da))
        assert np.array_equal(A.transpose().reconstruct(), da.T)
        v = field.rand_vec(field.rng(seed), n)
        assert np.array_equal(A.matvec(v), field.matvec_dense(da, v))
        assert A.trace() == int(np.trace(da) % field.p)
    return "reconstruct commutes with the structured algebra"


def check_bsgs_equivalence():
    field = PrimeField(_P_NTT)
    for seed in range(10):
        n = 6 + seed
        beta = 1 + seed % 3
        A = random_structured(field, n, 2, 1, seed)
        U, V = structured_projectors(field, n, beta, seed)
        plan = BsgsPlan(beta=beta, s=1 + seed % 3, L=2 * (n // beta) + 2)
        naive = krylov_sequence_naive(A, U, V, plan.L)
        fast = bsgs_sequence(A, U, V, plan)
        assert np.array_equal(naive.terms, fast.terms)
    return "bsgs sequence identical to the naive schedule"


def check_generator_vs_bm():
    field = PrimeField(_P_SMALL)
    rng = np.random.default_rng(17)
    from .wiedemann import BlockSequence
    for _ in range(10):
        d = int(rng.integers(1, 5))
        taps = [int(x) for x in rng.integers(0, _P_SMALL, size=d)]
        seq = [int(x) for x in rng.integers(0, _P_SMALL, size=d)]
        for _ in range(2 * d + 4):
            seq.append(sum(t * s for t, s in zip(taps, seq[-d:])) % _P_SMALL)
        bm = berlekamp_massey(field, seq)
        terms = np.asarray(seq, dtype=np.int64).reshape(-1, 1, 1)
        F = minimal_matrix_generator(BlockSequence(field, 1, terms), d)
        assert F.entries[0][0] == bm
    zero = BlockSequence(field, 2, np.zeros((9, 2, 2), dtype=np.int64))
    F = minimal_matrix_generator(zero, 2)
    assert F.entries[0][0] == Poly.one(field) and F.entries[1][1] == Poly.one(field)
    assert F.entries[0][1].is_zero() and F.entries[1][0].is_zero()
    return "matrix generator matches scalar Berlekamp-Massey"


def check_minpoly_vs_oracle():
    field = PrimeField(_P_NTT)
    for seed in range(8):
        A = random_structured(field, 10, 2, 1, seed)
        oracle = dense_minpoly(DenseMatrix(field, A.reconstruct()))
        for mode in ("naive", "bsgs"):
            report = minpoly(A, seed, mode=mode)
            assert report.verified
            assert report.polynomial == oracle
    return "minpoly (both modes) matches the dense oracle"


def check_charpoly_vs_oracle():
    field = PrimeField(_P_NTT)
    for seed in range(6):
        A = random_structured(field, 10, 2, 2, seed)
        oracle = dense_charpoly(DenseMatrix(field, A.reconstruct()))
        report = charpoly_generic(A, 1 + seed % 2, seed)
        assert report.polynomial == oracle
        assert report.polynomial.degree == 10
        assert report.polynomial.leading() == 1
    return "charpoly matches the dense oracle with certificates"


def check_verification():
    field = PrimeField(_P_NTT)
    eye = THMatrix.identity(field, 6)
    x_minus_1 = Poly(field, [field.p - 1, 1])
    assert verify_annihilates(eye, x_minus_1, 2, 5)
    assert not verify_annihilates(eye, Poly(field, [0, 1]), 2, 5)
    return "annihilation verifier accepts/rejects correctly"


def check_roundtrips():
    field = PrimeField(_P_SMALL)
    A = random_structured(field, 7, 2, 1, 3)
    assert dump_smx(parse_smx(dump_smx(A))) == dump_smx(A)
    M = DenseMatrix(field, A.reconstruct())
    assert dump_dmx(parse_dmx(dump_dmx(M))) == dump_dmx(M)
    f = Poly(field, [3, 0, 5, 1])
    assert poly_from_line(field, poly_to_line(f)) == f
    assert poly_from_line(field, "") == Poly.zero(field)
    # only the Toeplitz part has small down-shift displacement rank; the
    # Hankel part is small-rank after J-conjugation
    T = random_structured(field, 7, 2, 0, 5)
    assert displacement_rank(DenseMatrix(field, T.reconstruct())) <= 2
    Hm = random_structured(field, 7, 0, 2, 6)
    flipped = DenseMatrix(field, Hm.reconstruct()[::-1, :].copy())
    assert displacement_rank(flipped) <= 2
    rt = dense_to_structured(M)
    assert np.array_equal(rt.reconstruct(), M.rows)
    return "SMX/DMX/polynomial round-trips"


def check_determinism():
    field = PrimeField(_P_NTT)
    A = random_structured(field, 9, 2, 1, 21)
    B = random_structured(field, 9, 2, 1, 21)
    assert np.array_equal(A.P.G, B.P.G) and np.array_equal(A.Q.H, B.Q.H)
    r1 = minpoly(A, 4)
    r2 = minpoly(B, 4)
    assert r1 == r2
    c1 = charpoly_generic(A, 2, 4)
    c2 = charpoly_generic(B, 2, 4)
    assert c1 == c2
    return "seeded runs are reproducible including counters"


CHECKS = (
    check_field_arithmetic,
    check_poly_paths,
    check_poly_division,
    check_berlekamp_massey,
    check_displacement_roundtrip,
    check_ingestion,
    check_compress_widths,
    check_homomorphism,
    check_bsgs_equivalence,
    check_generator_vs_bm,
    check_minpoly_vs_oracle,
    check_charpoly_vs_oracle,
    check_verification,
    check_roundtrips,
    check_determinism,
)


def run_selftest(write=print, checks=CHECKS) -> bool:
    failures = 0
    for check in checks:
        try:
            label = check()
            write(f"ok   {label}")
        except AssertionError as exc:
            failures += 1
            write(f"FAIL {check.__name__}: {exc}")
        except Exception as exc:   # surface unexpected breakage, keep going
            failures += 1
            write(f"FAIL {check.__name__}: {type(exc).__name__}: {exc}")
    write(f"selftest: {len(checks)} checks, {failures} failures")
    return failures == 0
