"""Exact integer number theory: factorization, multiplicative functions, primes.

Everything here works on arbitrary-precision Python ints.  Verdicts produced
downstream depend on *complete* factorizations, so a factorization carries an
explicit Complete/Partial status instead of silently guessing.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from .errors import PartialFactorization

__all__ = [
    "FactorStatus",
    "Factorization",
    "PrimePower",
    "FactorEffort",
    "FactorCache",
    "is_prime",
    "factorize",
    "factor_prime_power_order",
    "cyclotomic_split",
    "omega_and_W",
    "mobius",
    "euler_phi",
    "squarefree_divisors",
    "primes_upto",
    "primes_window",
    "nth_prime",
    "integer_nth_root",
]


class FactorStatus(Enum):
    COMPLETE = "Complete"
    PARTIAL = "Partial"


@dataclass(frozen=True)
class Factorization:
    """n = cofactor * prod(p^e); cofactor == 1 iff status is Complete."""

    n: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    status: FactorStatus = FactorStatus.COMPLETE

    def __post_init__(self):
        prod = self.cofactor
        for p, e in self.factors:
            prod *= p ** e
        if prod != self.n:
            raise ValueError(f"factor product {prod} != {self.n}")
        if list(self.factors) != sorted(self.factors):
            raise ValueError("factors must be sorted ascending")
        if (self.cofactor == 1) != (self.status is FactorStatus.COMPLETE):
            raise ValueError("status inconsistent with cofactor")

    @property
    def complete(self) -> bool:
        return self.status is FactorStatus.COMPLETE

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def require_complete(self) -> None:
        if not self.complete:
            raise PartialFactorization(
                f"factorization of {self.n} has composite cofactor {self.cofactor}"
            )


@dataclass(frozen=True)
class PrimePower:
    """p = q^r with q prime."""

    q: int
    r: int

    def __post_init__(self):
        if not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")
        if self.r < 1:
            raise ValueError("exponent must be positive")

    @property
    def value(self) -> int:
        return self.q ** self.r


# ---------------------------------------------------------------------------
# primality

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Miller-Rabin with these bases is deterministic below this bound.
_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = 64) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < _DETERMINISTIC_LIMIT:
        return all(_miller_rabin(n, b) for b in _SMALL_PRIMES)
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(rounds))


# ---------------------------------------------------------------------------
# prime sieves

_sieve_lock = threading.Lock()
_sieve_primes: list[int] = []
_sieve_limit = 0


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit, cached module-wide."""
    global _sieve_primes, _sieve_limit
    with _sieve_lock:
        if limit > _sieve_limit:
            bound = max(limit, 2 * _sieve_limit, 1 << 16)
            flags = bytearray([1]) * (bound + 1)
            flags[0:2] = b"\x00\x00"
            for i in range(2, math.isqrt(bound) + 1):
                if flags[i]:
                    flags[i * i :: i] = bytes(len(flags[i * i :: i]))
            _sieve_primes = [i for i, f in enumerate(flags) if f]
            _sieve_limit = bound
        return [p for p in _sieve_primes if p <= limit]


def primes_window(i: int, j: int) -> list[int]:
    """The i-th through j-th primes, 1-indexed (prime 1 = 2)."""
    if not 1 <= i <= j:
        raise ValueError("need 1 <= i <= j")
    # overshoot the j-th prime via the standard upper bound
    bound = 15 if j < 6 else int(j * (math.log(j) + math.log(math.log(j)))) + 10
    ps = primes_upto(bound)
    while len(ps) < j:
        bound *= 2
        ps = primes_upto(bound)
    return ps[i - 1 : j]


def nth_prime(n: int) -> int:
    return primes_window(n, n)[0]


# ---------------------------------------------------------------------------
# factorization

@dataclass(frozen=True)
class FactorEffort:
    """Budget knobs for factorize()."""

    trial_bound: int = 1_000_000
    rho_iterations: int = 5_000_000


class FactorCache:
    """Append-only on-disk cache of factorizations, keyed by n.

    Line format: ``n=<dec> factors=<p1^e1,...> cofactor=<dec> status=<C|P>``.
    Corrupt lines are skipped.  Writes are serialized by a lock.
    """

    def __init__(self, path):
        self.path = path
        self._lock = threading.Lock()
        self._mem: dict[int, Factorization] = {}
        self._load()

    def _load(self) -> None:
        try:
            with open(self.path) as fh:
                lines = fh.readlines()
        except FileNotFoundError:
            return
        for line in lines:
            fac = _parse_cache_line(line)
            if fac is not None:
                # keep the better of duplicate entries
                old = self._mem.get(fac.n)
                if old is None or (fac.complete and not old.complete):
                    self._mem[fac.n] = fac

    def get(self, n: int) -> Factorization | None:
        return self._mem.get(n)

    def put(self, fac: Factorization) -> None:
        with self._lock:
            old = self._mem.get(fac.n)
            if old is not None and (old.complete or not fac.complete):
                return
            self._mem[fac.n] = fac
            with open(self.path, "a") as fh:
                fh.write(_format_cache_line(fac) + "\n")


def _format_cache_line(fac: Factorization) -> str:
    fs = ",".join(f"{p}^{e}" for p, e in fac.factors)
    st = "C" if fac.complete else "P"
    return f"n={fac.n} factors={fs} cofactor={fac.cofactor} status={st}"


def _parse_cache_line(line: str) -> Factorization | None:
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    try:
        kv = dict(tok.split("=", 1) for tok in line.split())
        n = int(kv["n"])
        factors = []
        if kv["factors"]:
            for part in kv["factors"].split(","):
                p, e = part.split("^")
                factors.append((int(p), int(e)))
        cof = int(kv["cofactor"])
        status = FactorStatus.COMPLETE if kv["status"] == "C" else FactorStatus.PARTIAL
        return Factorization(n, tuple(sorted(factors)), cof, status)
    except (KeyError, ValueError):
        return None


def _brent_rho(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Brent-cycle Pollard rho attempt.  Returns (factor or None, iters used)."""
    if n % 2 == 0:
        return 2, 0
    y = rng.randrange(1, n)
    c = rng.randrange(1, n)
    m = 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1 and used < budget:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1 and used < budget:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            used += min(m, r - k)
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        # backtrack one step at a time
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    if 1 < g < n:
        return g, used
    return None, used


def factorize(
    n: int,
    effort: FactorEffort = FactorEffort(),
    cache: FactorCache | None = None,
) -> Factorization:
    """Factor n >= 1.  Status is Partial only when the rho budget runs out."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Factorization(1, ())
    if cache is not None:
        hit = cache.get(n)
        if hit is not None and hit.complete:
            return hit

    counts: dict[int, int] = {}
    composites: list[int] = [n]
    budget = effort.rho_iterations
    rng = random.Random(n)

    # trial division
    m = composites.pop()
    for p in primes_upto(effort.trial_bound):
        if p * p > m:
            break
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    if m > 1:
        composites.append(m)

    unresolved = 1
    while composites:
        m = composites.pop()
        if m == 1:
            continue
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        # perfect-power check keeps rho off p^k inputs
        handled = False
        for k in range(2, m.bit_length()):
            root = integer_nth_root(m, k)
            if root ** k == m:
                composites.extend([root] * k)
                handled = True
                break
        if handled:
            continue
        found = None
        while found is None and budget > 0:
            found, used = _brent_rho(m, budget, rng)
            budget -= max(used, 1)
        if found is None:
            unresolved *= m
            continue
        composites.append(found)
        composites.append(m // found)

    status = FactorStatus.COMPLETE if unresolved == 1 else FactorStatus.PARTIAL
    fac = Factorization(n, tuple(sorted(counts.items())), unresolved, status)
    if cache is not None:
        cache.put(fac)
    return fac


def cyclotomic_split(p: int, t: int) -> list[int]:
    """Values of the d-th cyclotomic polynomial at p, for each divisor d of t.

    Their product is p^t - 1, which makes this a useful pre-split before rho.
    """
    if p < 2 or t < 1:
        raise ValueError("need p >= 2, t >= 1")
    divs = sorted(d for d in range(1, t + 1) if t % d == 0)
    values: dict[int, int] = {}
    for d in divs:
        v = p ** d - 1
        for e in divs:
            if e < d and d % e == 0:
                v //= values[e]
        values[d] = v
    return [values[d] for d in divs]


def factor_prime_power_order(
    p: int,
    t: int,
    effort: FactorEffort = FactorEffort(),
    cache: FactorCache | None = None,
) -> Factorization:
    """Factorization of p^t - 1, pre-split through the cyclotomic values."""
    n = p ** t - 1
    if cache is not None:
        hit = cache.get(n)
        if hit is not None and hit.complete:
            return hit
    counts: dict[int, int] = {}
    cof = 1
    for part in cyclotomic_split(p, t):
        sub = factorize(part, effort=effort, cache=cache)
        for q, e in sub.factors:
            counts[q] = counts.get(q, 0) + e
        cof *= sub.cofactor
    status = FactorStatus.COMPLETE if cof == 1 else FactorStatus.PARTIAL
    fac = Factorization(n, tuple(sorted(counts.items())), cof, status)
    if cache is not None:
        cache.put(fac)
    return fac


# ---------------------------------------------------------------------------
# multiplicative functions

def omega_and_W(fac: Factorization) -> tuple[int, int]:
    """(number of distinct primes, number of squarefree divisors)."""
    fac.require_complete()
    om = len(fac.factors)
    return om, 1 << om


def mobius(s: int) -> int:
    if s < 1:
        raise ValueError("mobius needs a positive integer")
    fac = factorize(s)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def euler_phi(fac: Factorization) -> int:
    fac.require_complete()
    result = fac.n
    for p, _ in fac.factors:
        result -= result // p
    return result


def squarefree_divisors(fac: Factorization) -> Iterator[int]:
    """Yields the 2^omega squarefree divisors in increasing order."""
    fac.require_complete()
    divs = [1]
    for p, _ in fac.factors:
        divs += [d * p for d in divs]
    yield from sorted(divs)


def integer_nth_root(n: int, k: int) -> int:
    """Largest r with r^k <= n (n >= 0, k >= 1)."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0, k >= 1")
    if n < 2 or k == 1:
        return n
    r = 1 << (n.bit_length() // k + 1)
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    while r ** k > n:
        r -= 1
    return r
