"""Character-sum laboratory on small fields.

Multiplicative characters are realized through the dense discrete-log table:
a character is indexed by an exponent multiplier mhat, with
chi(g^j) = exp(2*pi*i * j * mhat / (Q-1)).  The canonical additive character
uses the absolute trace to the prime field.

The field is GF(q^m) = F_{p^t} with p = q^r and t = m/r; the subfield degree
r is passed explicitly to every operation that involves traces.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BudgetExceeded, NotADivisor, NotInSubfield, ZeroElement
from .ffield import FieldCtx, FieldElement
from .ntheory import factorize, mobius, squarefree_divisors, euler_phi
from .ratfunc import RationalFunction, eval_rational, zero_pole_set

__all__ = [
    "INDICATOR_TOL",
    "LAB_CAP",
    "sum_tolerance",
    "theta",
    "characters_of_order",
    "canonical_additive",
    "rho_indicator",
    "tau_indicator",
    "char_sum_chi",
    "count_A_direct",
    "Lemma32Report",
    "verify_lemma32",
    "Lemma33Report",
    "verify_lemma33",
]

INDICATOR_TOL = 1e-6
LAB_CAP = 1 << 14


def sum_tolerance(Q: int, n_summands: int) -> float:
    """Accumulated-rounding allowance for sum comparisons."""
    return 1e-6 * math.sqrt(Q) * math.sqrt(max(n_summands, 1))


def theta(u: int) -> float:
    return euler_phi(factorize(u)) / u


class _Lab:
    """Precomputed unit logs, traces, and roots of unity for one (ctx, r)."""

    def __init__(self, ctx: FieldCtx, r: int):
        if ctx.Q > LAB_CAP:
            raise BudgetExceeded(f"field size {ctx.Q} above lab cap {LAB_CAP}")
        self.ctx = ctx
        self.r = r
        self.p = ctx.q ** r
        self.t = ctx.m // r
        n = ctx.Q - 1
        self.mult_roots = [cmath.exp(2j * cmath.pi * k / n) for k in range(n)]
        self.add_roots = [cmath.exp(2j * cmath.pi * k / ctx.q) for k in range(ctx.q)]
        self.subfield = ctx.subfield_elements(r)
        self.sub_index = {x.coeffs: i for i, x in enumerate(self.subfield)}
        # absolute trace of every element, by index
        self.abs_tr = [ctx.abs_trace_int(ctx.from_index(i)) for i in range(ctx.Q)]

    def log(self, x: FieldElement) -> int:
        return self.ctx.discrete_log(x)

    def chi(self, mhat: int, x: FieldElement) -> complex:
        if x.is_zero():
            raise ZeroElement("multiplicative character at zero")
        return self.mult_roots[self.log(x) * mhat % (self.ctx.Q - 1)]

    def psi_hat0(self, x: FieldElement) -> complex:
        """Canonical additive character of the big field."""
        return self.add_roots[self.abs_tr[self.ctx.to_index(x)]]

    def psi0_sub(self, z: FieldElement) -> complex:
        """Canonical additive character of the subfield F_p at z in F_p."""
        ctx = self.ctx
        if not ctx.in_subfield(z, self.r):
            raise NotInSubfield(f"{z} not fixed by Frobenius^{self.r}")
        # trace from F_p down to GF(q), computed inside the big field
        acc = z
        cur = z
        for _ in range(self.r - 1):
            cur = ctx.pow(cur, ctx.q)
            acc = ctx.add(acc, cur)
        assert not any(acc.coeffs[1:])
        return self.add_roots[acc.coeffs[0]]


_labs: dict[tuple[int, int], _Lab] = {}


def _lab(ctx: FieldCtx, r: int) -> _Lab:
    key = (id(ctx), r)
    if key not in _labs:
        _labs[key] = _Lab(ctx, r)
    return _labs[key]


def characters_of_order(ctx: FieldCtx, s: int) -> list[int]:
    """Exponent multipliers of the phi(s) characters of exact order s."""
    n = ctx.Q - 1
    if n % s != 0:
        raise NotADivisor(f"{s} does not divide {n}")
    step = n // s
    return [step * c % n for c in range(1, s + 1) if math.gcd(c, s) == 1]


def canonical_additive(ctx: FieldCtx, eps: FieldElement, r: int = 1) -> complex:
    return _lab(ctx, r).psi_hat0(eps)


def rho_indicator(ctx: FieldCtx, u: int, eps: FieldElement, r: int = 1) -> complex:
    """Indicator of u-free units, via the explicit character expansion."""
    if eps.is_zero():
        raise ZeroElement("rho is defined on units")
    if (ctx.Q - 1) % u != 0:
        raise NotADivisor(f"{u} does not divide {ctx.Q - 1}")
    lab = _lab(ctx, r)
    ufac = factorize(u)
    total = 0.0 + 0.0j
    for s in squarefree_divisors(ufac):
        phi_s = euler_phi(factorize(s))
        coeff = mobius(s) / phi_s
        for mhat in characters_of_order(ctx, s):
            total += coeff * lab.chi(mhat, eps)
    return theta(u) * total


def tau_indicator(ctx: FieldCtx, a: FieldElement, eps: FieldElement, r: int) -> complex:
    """Indicator of Tr(eps) = a; evaluates both the direct form and the
    shifted-canonical form and checks they agree."""
    lab = _lab(ctx, r)
    if not ctx.in_subfield(a, r):
        raise NotInSubfield("a must lie in the subfield")
    p = lab.p
    tr = ctx.trace_rel(eps, r)
    diff = ctx.sub(tr, a)
    direct = sum(lab.psi0_sub(ctx.mul(u, diff)) for u in lab.subfield) / p
    shifted = sum(
        lab.psi_hat0(ctx.mul(u, eps)) * lab.psi0_sub(ctx.neg(ctx.mul(u, a)))
        for u in lab.subfield
    ) / p
    if abs(direct - shifted) > sum_tolerance(ctx.Q, p):
        raise AssertionError(
            f"additive-character forms disagree: {direct} vs {shifted}")
    return shifted


def char_sum_chi(ctx: FieldCtx, f: RationalFunction, a: FieldElement,
                 b: FieldElement, s1: int, s2: int, r: int,
                 c1: int = 1, c2: int = 1) -> complex:
    """The hybrid sum over (u, v) in F_p^2 and eps outside the zero/pole set,
    for one pair of characters of exact orders s1 and s2 (selected by the
    coprime indices c1, c2)."""
    lab = _lab(ctx, r)
    n = ctx.Q - 1
    if n % s1 or n % s2:
        raise NotADivisor("character orders must divide Q - 1")
    mhat1 = n // s1 * c1 % n
    mhat2 = n // s2 * c2 % n
    _, Pp = zero_pole_set(ctx, f)
    # per-eps data reused across the (u, v) loop
    rows = []
    for eps in ctx.elements():
        if eps in Pp:
            continue
        eps0 = eval_rational(ctx, f, eps)
        chi_part = lab.mult_roots[(lab.log(eps) * mhat1 + lab.log(eps0) * mhat2) % n]
        rows.append((eps, eps0, chi_part))
    total = 0.0 + 0.0j
    for u in lab.subfield:
        for v in lab.subfield:
            w = lab.psi0_sub(ctx.neg(ctx.add(ctx.mul(a, u), ctx.mul(b, v))))
            inner = 0.0 + 0.0j
            for eps, eps0, chi_part in rows:
                add_arg = ctx.add(ctx.mul(u, eps), ctx.mul(v, eps0))
                inner += chi_part * lab.psi_hat0(add_arg)
            total += w * inner
    return total


def count_A_direct(ctx: FieldCtx, f: RationalFunction, a: FieldElement,
                   b: FieldElement, k1: int, k2: int, r: int,
                   check_expansion: bool = True) -> int:
    """|{eps outside P' : eps k1-free, f(eps) k2-free, Tr(eps)=a, Tr(f(eps))=b}|.

    Optionally re-derives the count through the character-sum expansion and
    asserts agreement."""
    lab = _lab(ctx, r)
    n = ctx.Q - 1
    if n % k1 or n % k2:
        raise NotADivisor("k1, k2 must divide Q - 1")
    _, Pp = zero_pole_set(ctx, f)
    count = 0
    for eps in ctx.elements():
        if eps in Pp:
            continue
        eps0 = eval_rational(ctx, f, eps)
        if eps.is_zero() or eps0.is_zero():
            continue
        if not (ctx.is_ufree(eps, k1) and ctx.is_ufree(eps0, k2)):
            continue
        if ctx.trace_rel(eps, r) != a or ctx.trace_rel(eps0, r) != b:
            continue
        count += 1
    if check_expansion:
        expansion = _count_A_expansion(ctx, f, a, b, k1, k2, r)
        tol = sum_tolerance(ctx.Q, lab.p ** 2 * ctx.Q)
        if abs(expansion - count) > tol:
            raise AssertionError(
                f"direct count {count} != expansion {expansion}")
    return count


def _count_A_expansion(ctx: FieldCtx, f: RationalFunction, a: FieldElement,
                       b: FieldElement, k1: int, k2: int, r: int) -> complex:
    """The full character-sum expansion, with the sums over character pairs
    and (u, v) regrouped per eps (an exact reordering of finite sums).  Uses
    only character arithmetic, never the boolean freeness/trace tests."""
    lab = _lab(ctx, r)
    n = ctx.Q - 1
    # weighted character sums, indexed by discrete log
    weights1 = _weighted_char_profile(ctx, k1, n)
    weights2 = _weighted_char_profile(ctx, k2, n)
    _, Pp = zero_pole_set(ctx, f)
    total = 0.0 + 0.0j
    for eps in ctx.elements():
        if eps in Pp:
            continue
        eps0 = eval_rational(ctx, f, eps)
        mult = weights1[lab.log(eps)] * weights2[lab.log(eps0)]
        add_a = sum(lab.psi0_sub(ctx.neg(ctx.mul(a, u))) * lab.psi_hat0(ctx.mul(u, eps))
                    for u in lab.subfield)
        add_b = sum(lab.psi0_sub(ctx.neg(ctx.mul(b, v))) * lab.psi_hat0(ctx.mul(v, eps0))
                    for v in lab.subfield)
        total += mult * add_a * add_b
    return theta(k1) * theta(k2) / lab.p ** 2 * total


def _weighted_char_profile(ctx: FieldCtx, k: int, n: int) -> list[complex]:
    """For each discrete log j: sum over squarefree s | k and characters of
    exact order s of mu(s)/phi(s) * chi(g^j)."""
    lab_roots = [cmath.exp(2j * cmath.pi * j / n) for j in range(n)]
    out = [0.0 + 0.0j] * n
    for s in squarefree_divisors(factorize(k)):
        w = mobius(s) / euler_phi(factorize(s))
        for mhat in characters_of_order(ctx, s):
            for j in range(n):
                out[j] += w * lab_roots[j * mhat % n]
    return out


@dataclass(frozen=True)
class Lemma32Report:
    k: int
    m_prime: int
    lhs_first: float      # |A(mk,k) - theta(m) A(k,k)|
    lhs_second: float     # |A(k,mk) - theta(m) A(k,k)|
    bound: float

    @property
    def holds(self) -> bool:
        return self.lhs_first <= self.bound and self.lhs_second <= self.bound


def verify_lemma32(ctx: FieldCtx, f: RationalFunction, a: FieldElement,
                   b: FieldElement, k: int, m_prime: int, r: int) -> Lemma32Report:
    n = ctx.Q - 1
    if n % k or n % m_prime or not _is_prime_small(m_prime) or k % m_prime == 0:
        raise NotADivisor(
            "need k | Q-1 and m a prime dividing Q-1 but not k")
    lab = _lab(ctx, r)
    A_kk = count_A_direct(ctx, f, a, b, k, k, r, check_expansion=False)
    A_mk_k = count_A_direct(ctx, f, a, b, m_prime * k, k, r, check_expansion=False)
    A_k_mk = count_A_direct(ctx, f, a, b, k, m_prime * k, r, check_expansion=False)
    tm = theta(m_prime)
    nf = f.degsum
    bound = (theta(k) ** 2 * tm / lab.p ** 2
             * (2 * nf + 1) * (1 << (len(factorize(k).factors))) ** 2
             * lab.p ** (lab.t / 2 + 2))
    return Lemma32Report(k, m_prime,
                         abs(A_mk_k - tm * A_kk),
                         abs(A_k_mk - tm * A_kk),
                         bound)


@dataclass(frozen=True)
class Lemma33Report:
    k: int
    sieve_primes: tuple[int, ...]
    lhs: int              # A(Q-1, Q-1)
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs - 1e-9


def verify_lemma33(ctx: FieldCtx, f: RationalFunction, a: FieldElement,
                   b: FieldElement, k: int, r: int) -> Lemma33Report:
    n = ctx.Q - 1
    if n % k:
        raise NotADivisor(f"{k} does not divide {n}")
    sieve = tuple(q for q in ctx.order_facts.primes() if k % q != 0)
    m = len(sieve)
    A_full = count_A_direct(ctx, f, a, b, n, n, r, check_expansion=False)
    A_kk = count_A_direct(ctx, f, a, b, k, k, r, check_expansion=False)
    rhs = -(2 * m - 1) * A_kk
    for q in sieve:
        rhs += count_A_direct(ctx, f, a, b, k, q * k, r, check_expansion=False)
        rhs += count_A_direct(ctx, f, a, b, q * k, k, r, check_expansion=False)
    return Lemma33Report(k, sieve, A_full, rhs)


def _is_prime_small(p: int) -> bool:
    return p > 1 and all(p % d for d in range(2, int(math.isqrt(p)) + 1))
