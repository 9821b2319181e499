"""Number-theory layer, checked against sympy as an independent oracle."""

import threading

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from primpair.errors import PartialFactorization
from primpair.ntheory import (
    FactorCache,
    FactorEffort,
    FactorStatus,
    Factorization,
    cyclotomic_split,
    euler_phi,
    factor_prime_power_order,
    factorize,
    integer_nth_root,
    is_prime,
    mobius,
    nth_prime,
    omega_and_W,
    primes_upto,
    primes_window,
    squarefree_divisors,
)


class TestIsPrime:
    def test_small_range_vs_sympy(self):
        for n in range(-3, 2000):
            assert is_prime(n) == sympy.isprime(n)

    def test_large_known_primes(self):
        assert is_prime(2 ** 61 - 1)            # Mersenne
        assert is_prime(2 ** 127 - 1)
        assert not is_prime(2 ** 67 - 1)        # 193707721 * 761838257287
        assert not is_prime(3215031751)         # strong pseudoprime to 2,3,5,7

    @given(st.integers(min_value=2, max_value=10 ** 12))
    @settings(max_examples=200, deadline=None)
    def test_agrees_with_sympy(self, n):
        assert is_prime(n) == sympy.isprime(n)


class TestPrimes:
    def test_primes_upto(self):
        assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert primes_upto(1) == []

    def test_primes_window_one_indexed(self):
        assert primes_window(1, 5) == [2, 3, 5, 7, 11]
        assert primes_window(63, 63) == [307]        # 63rd prime
        assert primes_window(1546, 1546) == [12979]
        assert primes_window(1547, 1547) == [12983]

    def test_nth_prime_vs_sympy(self):
        for i in (1, 10, 100, 1000, 1547):
            assert nth_prime(i) == sympy.prime(i)


class TestFactorize:
    def test_one(self):
        fac = factorize(1)
        assert fac.factors == () and fac.complete

    def test_small_vs_sympy(self):
        for n in list(range(2, 500)) + [2 ** 32 - 1, 10 ** 12 + 39]:
            fac = factorize(n)
            assert fac.complete
            assert dict(fac.factors) == sympy.factorint(n)

    def test_product_invariant(self):
        fac = factorize(2 ** 64 - 1)
        prod = fac.cofactor
        for p, e in fac.factors:
            prod *= p ** e
        assert prod == 2 ** 64 - 1

    @given(st.integers(min_value=2, max_value=10 ** 9))
    @settings(max_examples=100, deadline=None)
    def test_random_vs_sympy(self, n):
        assert dict(factorize(n).factors) == sympy.factorint(n)

    def test_perfect_power(self):
        fac = factorize(10007 ** 6)
        assert fac.factors == ((10007, 6),)

    def test_partial_on_tiny_budget(self):
        # product of two 16-digit primes; near-zero budget cannot split it
        n = 1000000000000037 * 1000000000000091
        fac = factorize(n, effort=FactorEffort(trial_bound=100, rho_iterations=1))
        assert not fac.complete
        assert fac.cofactor > 1
        with pytest.raises(PartialFactorization):
            fac.require_complete()


class TestFactorizationType:
    def test_validation_rejects_bad_product(self):
        with pytest.raises(ValueError):
            Factorization(10, ((3, 1),), 1, FactorStatus.COMPLETE)

    def test_validation_rejects_unsorted(self):
        with pytest.raises(ValueError):
            Factorization(15, ((5, 1), (3, 1)), 1, FactorStatus.COMPLETE)

    def test_status_consistency(self):
        with pytest.raises(ValueError):
            Factorization(12, ((2, 2), (3, 1)), 1, FactorStatus.PARTIAL)


class TestCyclotomicSplit:
    @pytest.mark.parametrize("p,t", [(2, 7), (2, 12), (3, 8), (5, 6), (7, 10)])
    def test_product_recovers_order(self, p, t):
        vals = cyclotomic_split(p, t)
        prod = 1
        for v in vals:
            prod *= v
        assert prod == p ** t - 1

    def test_values_vs_sympy(self):
        divs = [d for d in range(1, 13) if 12 % d == 0]
        vals = cyclotomic_split(3, 12)
        assert vals == [sympy.cyclotomic_poly(d, 3) for d in divs]


class TestFactorPrimePowerOrder:
    @pytest.mark.parametrize("p,t", [(2, 7), (8, 9), (3, 10), (49, 7)])
    def test_matches_direct(self, p, t):
        fac = factor_prime_power_order(p, t)
        assert fac.complete
        assert dict(fac.factors) == sympy.factorint(p ** t - 1)


class TestArithmeticFunctions:
    def test_omega_and_W(self):
        om, W = omega_and_W(factorize(2 ** 22 - 1))   # 3 * 23 * 89 * 683
        assert (om, W) == (4, 16)

    def test_mobius_vs_sympy(self):
        for n in range(1, 300):
            assert mobius(n) == sympy.mobius(n)

    def test_euler_phi_vs_sympy(self):
        for n in range(1, 300):
            assert euler_phi(factorize(n)) == sympy.totient(n)

    def test_squarefree_divisors(self):
        assert list(squarefree_divisors(factorize(12))) == [1, 2, 3, 6]
        assert list(squarefree_divisors(factorize(1))) == [1]

    @given(st.integers(min_value=1, max_value=5000))
    @settings(max_examples=50, deadline=None)
    def test_squarefree_divisor_count(self, n):
        divs = list(squarefree_divisors(factorize(n)))
        _, W = omega_and_W(factorize(n))
        assert len(divs) == W == len(set(divs))


class TestIntegerNthRoot:
    @given(st.integers(min_value=0, max_value=10 ** 40),
           st.integers(min_value=1, max_value=12))
    @settings(max_examples=200, deadline=None)
    def test_floor_root_property(self, n, k):
        r = integer_nth_root(n, k)
        assert r ** k <= n < (r + 1) ** k

    def test_exact_powers(self):
        assert integer_nth_root(7 ** 30, 30) == 7
        assert integer_nth_root(7 ** 30 - 1, 30) == 6


class TestFactorCache:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "cache.txt"
        cache = FactorCache(str(path))
        fac = factorize(2 ** 22 - 1)
        cache.put(fac)
        reloaded = FactorCache(str(path))
        assert reloaded.get(2 ** 22 - 1) == fac

    def test_corrupt_lines_skipped(self, tmp_path):
        path = tmp_path / "cache.txt"
        path.write_text("garbage\nn=15 factors=3^1,5^1 cofactor=1 status=C\n"
                        "n=bad factors= cofactor= status=Q\n")
        cache = FactorCache(str(path))
        assert cache.get(15) is not None
        assert cache.get(15).complete

    def test_thread_safety(self, tmp_path):
        cache = FactorCache(str(tmp_path / "cache.txt"))
        ns = list(range(2, 200))

        def worker(chunk):
            for n in chunk:
                cache.put(factorize(n))

        threads = [threading.Thread(target=worker, args=(ns[i::4],))
                   for i in range(4)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        reloaded = FactorCache(str(cache.path))
        for n in ns:
            assert reloaded.get(n) == factorize(n)

    def test_used_by_factorize(self, tmp_path):
        cache = FactorCache(str(tmp_path / "cache.txt"))
        n = 2 ** 89 - 1
        first = factorize(n, cache=cache)
        assert first.complete
        # a hit must be returned even under a budget that cannot refactor
        again = factorize(n, effort=FactorEffort(trial_bound=2, rho_iterations=1),
                          cache=cache)
        assert again == first
