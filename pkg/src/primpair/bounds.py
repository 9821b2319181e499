"""Exact-rational evaluation of the sufficient condition and its sieve variant.

The core inequality p^(t/2 - 2) > Y (Y rational) is decided by squaring:
p^(t-4) * den(Y)^2 > num(Y)^2, all in integers.  No floats anywhere here, so
verdicts cannot depend on the floating-point environment.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .errors import NonPositiveDelta, NotADivisor
from .ntheory import (
    Factorization,
    integer_nth_root,
    omega_and_W,
    primes_window,
)

__all__ = [
    "Verdict",
    "BoundReport",
    "SieveReport",
    "Table1Row",
    "check_thm31",
    "sieve_delta_Delta",
    "check_thm34",
    "find_sieve_params",
    "table1_row",
    "TABLE1_WINDOWS",
    "window_threshold",
    "absorbed_window_constants",
    "lemma35_constants",
    "Lemma35Record",
]


class Verdict(Enum):
    PASS = "Pass"
    FAIL = "Fail"
    UNKNOWN = "Unknown"


def _exceeds(p: int, t: int, rhs: Fraction) -> bool:
    """p^(t/2-2) > rhs, decided exactly."""
    return p ** (t - 4) * rhs.denominator ** 2 > rhs.numerator ** 2


def _margin(p: int, t: int, rhs: Fraction) -> int:
    return p ** (t - 4) * rhs.denominator ** 2 - rhs.numerator ** 2


@dataclass(frozen=True)
class BoundReport:
    p: int
    t: int
    n: int
    lhs_exponent: int           # t - 4, after squaring both sides
    W: int | None               # None when the factorization was partial
    rhs: Fraction | None        # (2n+1) * W^2
    verdict: Verdict
    reason: str = ""


@dataclass(frozen=True)
class SieveReport:
    p: int
    t: int
    n: int
    k_primes: tuple[int, ...]
    sieve_primes: tuple[int, ...]
    m: int
    delta: Fraction
    Delta: Fraction | None      # None when delta <= 0
    Wk: int
    rhs: Fraction | None        # (2n+1) * Delta * Wk^2
    verdict: Verdict

    @property
    def margin(self) -> int | None:
        if self.rhs is None:
            return None
        return _margin(self.p, self.t, self.rhs)


def check_thm31(p: int, t: int, n: int, facts: Factorization) -> BoundReport:
    """Does p^(t/2-2) > (2n+1) W(p^t - 1)^2 hold?"""
    if t < 5:
        raise ValueError("need t >= 5")
    if facts.n != p ** t - 1:
        raise ValueError("facts must factor p^t - 1")
    if not facts.complete:
        return BoundReport(p, t, n, t - 4, None, None, Verdict.UNKNOWN,
                           reason=f"partial factorization, cofactor {facts.cofactor}")
    _, W = omega_and_W(facts)
    rhs = Fraction((2 * n + 1) * W * W)
    verdict = Verdict.PASS if _exceeds(p, t, rhs) else Verdict.FAIL
    return BoundReport(p, t, n, t - 4, W, rhs, verdict)


def sieve_delta_Delta(sieve_primes) -> tuple[Fraction, Fraction]:
    """delta = 1 - 2*sum(1/q_i); Delta = (2m-1)/delta + 2.  Exact rationals."""
    ps = list(sieve_primes)
    if len(set(ps)) != len(ps):
        raise ValueError("sieve primes must be distinct")
    m = len(ps)
    delta = 1 - 2 * sum((Fraction(1, q) for q in ps), Fraction(0))
    if m == 0:
        return Fraction(1), Fraction(1)
    if delta <= 0:
        raise NonPositiveDelta(delta)
    return delta, Fraction(2 * m - 1) / delta + 2


def check_thm34(p: int, t: int, n: int, facts: Factorization,
                k_primes) -> SieveReport:
    """Sieve variant: delta > 0 and p^(t/2-2) > (2n+1) Delta W(k)^2."""
    if t < 5:
        raise ValueError("need t >= 5")
    facts.require_complete()
    all_primes = set(facts.primes())
    k_primes = tuple(sorted(k_primes))
    for q in k_primes:
        if q not in all_primes:
            raise NotADivisor(f"{q} does not divide {p}^{t} - 1")
    sieve_primes = tuple(sorted(all_primes - set(k_primes)))
    m = len(sieve_primes)
    delta = 1 - 2 * sum((Fraction(1, q) for q in sieve_primes), Fraction(0))
    Wk = 1 << len(k_primes)
    if m == 0:
        delta = Fraction(1)
    if delta <= 0:
        return SieveReport(p, t, n, k_primes, sieve_primes, m, delta,
                           None, Wk, None, Verdict.FAIL)
    Delta = Fraction(1) if m == 0 else Fraction(2 * m - 1) / delta + 2
    rhs = (2 * n + 1) * Delta * Wk * Wk
    verdict = Verdict.PASS if _exceeds(p, t, rhs) else Verdict.FAIL
    return SieveReport(p, t, n, k_primes, sieve_primes, m, delta, Delta, Wk,
                       rhs, verdict)


def find_sieve_params(p: int, t: int, n: int, facts: Factorization,
                      max_subset_primes: int = 12) -> SieveReport:
    """Search for a k that makes the sieve pass.

    Order: k = product of the j smallest primes for j = 0..omega, then every
    subset of the smallest min(omega, max_subset_primes) primes by size and
    position.  Returns the first Pass, else the largest-margin Fail.
    """
    facts.require_complete()
    primes = list(facts.primes())
    best: SieveReport | None = None
    seen: set[tuple[int, ...]] = set()

    def consider(k):
        nonlocal best
        key = tuple(sorted(k))
        if key in seen:
            return None
        seen.add(key)
        rep = check_thm34(p, t, n, facts, key)
        if rep.verdict is Verdict.PASS:
            return rep
        if rep.rhs is not None and (best is None or best.rhs is None
                                    or rep.margin > best.margin):
            best = rep
        elif best is None:
            best = rep
        return None

    for j in range(len(primes) + 1):
        hit = consider(primes[:j])
        if hit is not None:
            return hit
    pool = primes[: min(len(primes), max_subset_primes)]
    for size in range(1, len(pool) + 1):
        for combo in combinations(range(len(pool)), size):
            hit = consider([pool[i] for i in combo])
            if hit is not None:
                return hit
    assert best is not None
    return best


@dataclass(frozen=True)
class Table1Row:
    a: int
    b: int
    Wk: int
    delta_lb: Fraction
    Delta_ub: Fraction | None
    rhs_ub: Fraction | None     # (2n+1) * Delta_ub * Wk^2


# (a, b) windows of the published worst-case table, in row order.
TABLE1_WINDOWS = [
    (13, 94), (7, 34), (6, 25), (6, 23), (6, 22),
    (5, 19), (5, 17), (5, 16), (5, 15),
]


def table1_row(a: int, b: int, n: int = 2) -> Table1Row:
    """Worst case over a <= omega(p^t - 1) <= b: k absorbs the a smallest
    primes, and delta is minimized by the contiguous window of the (a+1)-th
    through b-th primes."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    Wk = 1 << a
    window = primes_window(a + 1, b) if b > a else []
    try:
        delta, Delta = sieve_delta_Delta(window)
    except NonPositiveDelta as exc:
        return Table1Row(a, b, Wk, exc.delta, None, None)
    return Table1Row(a, b, Wk, delta, Delta, (2 * n + 1) * Delta * Wk * Wk)


def window_threshold(bound: Fraction | int, t_min: int) -> int:
    """Ceiling of bound^(2*t/(t-4)) at t = t_min, where the exponent peaks.

    p^t above this value settles the sieve inequality for every t >= t_min.
    """
    if t_min < 5:
        raise ValueError("need t_min >= 5")
    bound = Fraction(bound)
    e = t_min - 4
    num = bound.numerator ** (2 * t_min)
    den = bound.denominator ** (2 * t_min)
    r = integer_nth_root(num // den, e)
    while r ** e * den < num:
        r += 1
    return r


def absorbed_window_constants(n: int = 2, absorbed: int = 62,
                              last_index: int = 1546) -> tuple[Fraction, Fraction, Fraction]:
    """(delta, Delta, (2n+1) Delta W(k)^2) for k = product of the first
    `absorbed` primes and sieve window of primes absorbed+1 .. last_index."""
    window = primes_window(absorbed + 1, last_index)
    delta, Delta = sieve_delta_Delta(window)
    Wk = 1 << absorbed
    return delta, Delta, (2 * n + 1) * Delta * Wk * Wk


def _decimal_digits(n: int) -> int:
    """Exact decimal digit count without int->str conversion limits."""
    if n <= 0:
        raise ValueError("need n > 0")
    lo = int(n.bit_length() * 0.30102999566398114)   # provisional, then adjust
    while 10 ** lo <= n:
        lo += 1
    while 10 ** (lo - 1) > n:
        lo -= 1
    return lo


@dataclass(frozen=True)
class Lemma35Record:
    product_digits: int
    product_exceeds_657e5586: bool
    twelfth_root: int
    twelfth_root_exceeds_542e463: bool
    pow2_1547_below_493e463: bool
    next_prime_after_12983: int
    next_prime_twelfth_power_exceeds_2: bool

    @property
    def all_hold(self) -> bool:
        return (self.product_exceeds_657e5586
                and self.twelfth_root_exceeds_542e463
                and self.pow2_1547_below_493e463
                and self.next_prime_twelfth_power_exceeds_2)


def lemma35_constants() -> Lemma35Record:
    """Exact big-integer checks behind the omega >= 1547 squarefree bound."""
    ps = primes_window(1, 1547)
    K = 1
    for q in ps:
        K *= q
    twelfth = integer_nth_root(K, 12)
    nxt = 12984
    while True:
        from .ntheory import is_prime
        if is_prime(nxt):
            break
        nxt += 1
    return Lemma35Record(
        product_digits=_decimal_digits(K),
        product_exceeds_657e5586=K > 657 * 10 ** 5586,
        twelfth_root=twelfth,
        twelfth_root_exceeds_542e463=twelfth > 542 * 10 ** 463,
        pow2_1547_below_493e463=2 ** 1547 < 493 * 10 ** 463,
        next_prime_after_12983=nxt,
        next_prime_twelfth_power_exceeds_2=nxt > 2 ** 12,
    )
