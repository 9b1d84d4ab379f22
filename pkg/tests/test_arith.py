import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ppcount import arith
from ppcount.errors import CapacityError, CoverageError, DomainError

from conftest import naive_lambda, trial_division_primes


class TestSievePrimes:
    def test_small_tables(self):
        assert arith.sieve_primes(10).primes.tolist() == [2, 3, 5, 7]
        assert arith.sieve_primes(2).primes.tolist() == [2]

    def test_against_trial_division(self):
        got = arith.sieve_primes(1000).primes.tolist()
        assert got == trial_division_primes(1000)

    def test_count_upto(self, base_1e4):
        assert base_1e4.count_upto(10 ** 4) == 1229
        assert base_1e4.count_upto(2) == 1
        assert base_1e4.count_upto(1) == 0
        with pytest.raises(CoverageError):
            base_1e4.count_upto(10 ** 4 + 1)

    def test_domain_and_budget(self):
        with pytest.raises(DomainError):
            arith.sieve_primes(1)
        with pytest.raises(CapacityError):
            arith.sieve_primes(10 ** 6, budget=10 ** 5)


class TestIsPrime:
    def test_small(self):
        primes = set(trial_division_primes(2000))
        for n in range(2000):
            assert arith.is_prime(n) == (n in primes), n

    def test_large_known(self):
        assert arith.is_prime(10 ** 12 + 39)          # next prime after 1e12
        assert not arith.is_prime(10 ** 12 + 37)
        assert arith.is_prime(2 ** 61 - 1)            # Mersenne prime
        assert not arith.is_prime(2 ** 67 - 1)        # 193707721 * 761838257287


class TestIroot:
    @given(st.integers(0, 10 ** 18), st.integers(1, 64))
    def test_defining_property(self, n, r):
        a = arith.iroot(n, r)
        assert a ** r <= n < (a + 1) ** r

    def test_errors(self):
        with pytest.raises(DomainError):
            arith.iroot(-1, 2)
        with pytest.raises(DomainError):
            arith.iroot(4, 0)


class TestIsPrimePower:
    def test_examples(self):
        assert arith.is_prime_power(8) == (2, 3)
        assert arith.is_prime_power(7) == (7, 1)
        assert arith.is_prime_power(2 ** 20) == (2, 20)
        assert arith.is_prime_power(6) is None
        assert arith.is_prime_power(1) is None

    def test_exhaustive_small(self):
        for n in range(2, 3000):
            got = arith.is_prime_power(n)
            if got is None:
                assert naive_lambda(n) == 0.0
            else:
                p, r = got
                assert p ** r == n
                assert naive_lambda(n) == pytest.approx(math.log(p))


class TestPrimeCountInterval:
    def test_within_base(self, base_1e4):
        assert arith.prime_count_interval(1, 100, base_1e4) == 25
        assert arith.prime_count_interval(100, 100, base_1e4) == 0
        assert arith.prime_count_interval(2, 3, base_1e4) == 1

    def test_beyond_base_against_trial_division(self, base100):
        lo, hi = 9000, 9500
        want = sum(1 for p in trial_division_primes(hi) if p > lo)
        assert arith.prime_count_interval(lo, hi, base100) == want

    def test_short_window_mr_path(self, base_1e4):
        # window below MR_WINDOW, above base.limit: per-candidate testing
        lo = 10 ** 6
        want = sum(1 for n in range(lo + 1, lo + 51)
                   if all(n % d for d in range(2, math.isqrt(n) + 1)))
        assert arith.prime_count_interval(lo, lo + 50, base_1e4) == want

    def test_additivity(self, base_1e4):
        lo, mid, hi = 10 ** 5, 10 ** 5 + 7777, 10 ** 5 + 30000
        assert (arith.prime_count_interval(lo, mid, base_1e4)
                + arith.prime_count_interval(mid, hi, base_1e4)
                == arith.prime_count_interval(lo, hi, base_1e4))

    def test_threads_match_serial(self, base_1e4):
        lo, hi = 10 ** 6, 10 ** 6 + 10 ** 5
        serial = arith.prime_count_interval(lo, hi, base_1e4, seg_len=2 ** 14)
        threaded = arith.prime_count_interval(lo, hi, base_1e4,
                                              seg_len=2 ** 14, threads=4)
        assert serial == threaded

    def test_errors(self, base100):
        with pytest.raises(DomainError):
            arith.prime_count_interval(0, 10, base100)
        with pytest.raises(DomainError):
            arith.prime_count_interval(20, 10, base100)
        with pytest.raises(CoverageError):
            arith.prime_count_interval(1, 100 ** 2 + 1, base100)


class TestPrimeCountsAt:
    def test_matches_interval_counts(self, base100):
        thresholds = [0, 1, 2, 100, 5000, 9999, 9999, 37]
        got = arith.prime_counts_at(thresholds, base100, seg_len=1024)
        want = [0 if t < 2 else arith.prime_count_interval(1, t, base100)
                for t in thresholds]
        assert got.tolist() == want

    def test_empty(self, base100):
        assert arith.prime_counts_at([], base100).size == 0


class TestLambdaSegment:
    def test_first_decade(self, base100):
        seg = arith.lambda_segment(1, 10, base100)
        assert seg.n.tolist() == [2, 3, 4, 5, 7, 8, 9]
        assert seg.p.tolist() == [2, 3, 2, 5, 7, 2, 3]
        assert seg.r.tolist() == [1, 1, 2, 1, 1, 3, 2]

    def test_against_naive_lambda(self, base_1e4, lambda_upto_1e4):
        seg = arith.lambda_segment(0, 10 ** 4, base_1e4, seg_len=999)
        dense = np.zeros(10 ** 4 + 1)
        dense[seg.n] = seg.log_p
        assert np.allclose(dense, lambda_upto_1e4, atol=1e-12)

    def test_segmentation_invariance(self, base_1e4):
        a = arith.lambda_segment(50, 5000, base_1e4, seg_len=64)
        b = arith.lambda_segment(50, 5000, base_1e4, seg_len=10 ** 6)
        assert a.n.tolist() == b.n.tolist()
        assert a.r.tolist() == b.r.tolist()


class TestPsi:
    def test_known_values(self, base100, lambda_upto_1e4):
        assert arith.psi(1, base100) == 0.0
        want10 = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7)
        assert arith.psi(10, base100) == pytest.approx(want10, abs=1e-12)

    def test_against_naive(self, base_1e4, lambda_upto_1e4):
        cum = np.cumsum(lambda_upto_1e4)
        for x in (2, 100, 1234, 10 ** 4):
            assert arith.psi(x, base_1e4) == pytest.approx(cum[x], rel=1e-12)

    def test_step_is_lambda(self, base_1e4):
        for x in (8, 9, 10, 31, 32, 97, 128):
            step = arith.psi(x, base_1e4) - arith.psi(x - 1, base_1e4)
            assert step == pytest.approx(naive_lambda(x), abs=1e-10)

    def test_domain(self, base100):
        with pytest.raises(DomainError):
            arith.psi(0, base100)


class TestWeightedLambdaSumsAt:
    def test_psi_ladder(self, base_1e4, lambda_upto_1e4):
        cum = np.cumsum(lambda_upto_1e4)
        ts = [1, 10, 100, 100, 9999]
        got = arith.weighted_lambda_sums_at(ts, base_1e4, seg_len=777)
        assert np.allclose(got, [cum[t] for t in ts], rtol=1e-12)

    def test_theta_ladder(self, base_1e4):
        got = arith.weighted_lambda_sums_at([100], base_1e4,
                                            primes_only=True)
        want = math.fsum(math.log(p) for p in trial_division_primes(100))
        assert got[0] == pytest.approx(want, rel=1e-13)


class TestKfreeDecompose:
    def test_examples(self):
        d = arith.kfree_decompose(72, 2)
        assert (d.q, d.m) == (2, 6)
        d = arith.kfree_decompose(8, 3)
        assert (d.q, d.m) == (1, 2)
        d = arith.kfree_decompose(97, 5)
        assert (d.q, d.m) == (97, 1)
        d = arith.kfree_decompose(1, 2)
        assert (d.q, d.m) == (1, 1)

    def test_errors(self):
        with pytest.raises(DomainError):
            arith.kfree_decompose(0, 2)
        with pytest.raises(DomainError):
            arith.kfree_decompose(10, 1)

    def test_exhaustive_small(self):
        for k in (2, 3, 4):
            for n in range(1, 2000):
                d = arith.kfree_decompose(n, k)
                assert d.q * d.m ** k == n
                # q must be k-free: no prime k-th power divides it
                for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43):
                    if p ** k > d.q:
                        break
                    assert d.q % p ** k != 0, (n, k, d)

    def test_semiprime_cofactor(self):
        # cofactor p*q with cbrt(n) < p < q exercises the two-prime branch
        n = 1009 * 1013
        d = arith.kfree_decompose(n, 2)
        assert (d.q, d.m) == (n, 1)
        # cofactor p^2 exercises the perfect-square branch
        n = 9 * 1009 ** 2
        d = arith.kfree_decompose(n, 2)
        assert (d.q, d.m) == (1, 3 * 1009)

    @given(st.integers(1, 10 ** 9), st.integers(2, 6))
    @settings(max_examples=60, deadline=None)
    def test_reconstruction_property(self, n, k):
        d = arith.kfree_decompose(n, k)
        assert d.q * d.m ** k == n
        assert d.m >= 1 and d.q >= 1
