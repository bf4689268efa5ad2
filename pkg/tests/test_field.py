import numpy as np
import pytest

from thpoly import PrimeField, derive_seed, is_prime
from thpoly.errors import DivisionByZeroError, NotPrimeError, TooLargeError

import _ref

P_NTT = 2013265921


def test_small_field_not_ntt_capable():
    f = PrimeField(7)
    assert f.p == 7
    assert not f.ntt_capable      # 7 - 1 = 6 has 2-adic valuation 1


def test_ntt_field_root_invariants():
    f = PrimeField(P_NTT)        # 15 * 2**27 + 1
    assert f.ntt_capable
    assert f.two_adicity == 27
    assert pow(f.ntt_root, 1 << f.two_adicity, f.p) == 1
    assert pow(f.ntt_root, 1 << (f.two_adicity - 1), f.p) == f.p - 1


def test_composite_rejected():
    with pytest.raises(NotPrimeError):
        PrimeField(9)


def test_out_of_range_rejected():
    with pytest.raises(TooLargeError):
        PrimeField(1 << 62)
    with pytest.raises(TooLargeError):
        PrimeField(2)


def test_is_prime_known_values():
    assert is_prime(2) and is_prime(3) and is_prime(P_NTT)
    assert not is_prime(1) and not is_prime(561) and not is_prime(2013265923)
    # strong pseudoprime to several bases
    assert not is_prime(3215031751)


def test_arith_examples():
    f7 = PrimeField(7)
    assert f7.inv(3) == 5                       # 3 * 5 = 15 = 1 mod 7
    f101 = PrimeField(101)
    assert f101.pow(2, 10) == 14                # 1024 - 10 * 101
    rng = f101.rng(0)
    for x in f101.rand_vec(rng, 20):
        assert f101.mul(0, int(x)) == 0
    with pytest.raises(DivisionByZeroError):
        f101.inv(0)


@pytest.mark.parametrize("p", [101, P_NTT])
def test_ring_axioms_and_closure(p):
    f = PrimeField(p)
    rng = f.rng(1)
    triples = f.rand_mat(rng, (1000, 3))
    for a, b, c in triples:
        a, b, c = int(a), int(b), int(c)
        ab = f.mul(a, b)
        assert 0 <= ab < p
        assert f.mul(ab, c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert 0 <= f.sub(a, b) < p
        if a:
            assert f.mul(a, f.inv(a)) == 1


def test_batch_inv_examples():
    f7 = PrimeField(7)
    assert f7.batch_inv([1, 2, 4]) == [1, 4, 2]
    assert f7.batch_inv([1]) == [1]


def test_batch_inv_random_vs_egcd():
    f = PrimeField(P_NTT)
    rng = f.rng(3)
    vals = [int(v) % (f.p - 1) + 1 for v in f.rand_vec(rng, 100)]
    assert f.batch_inv(vals) == [_ref.egcd_inv(v, f.p) for v in vals]


def test_batch_inv_reports_offending_index():
    f = PrimeField(101)
    with pytest.raises(DivisionByZeroError, match="index 2"):
        f.batch_inv([1, 5, 0, 3])


def test_derive_seed_stable():
    a = derive_seed("tag", 7, np.arange(4))
    b = derive_seed("tag", 7, np.arange(4))
    c = derive_seed("tag", 8, np.arange(4))
    assert a == b != c
