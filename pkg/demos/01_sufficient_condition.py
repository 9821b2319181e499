"""Deciding the sufficient condition with exact arithmetic.

For a prime power p and degree t, every rational function f of degree sum n
over F_{p^t} admits, for any prescribed trace pair (a, b), an element eps
with (eps, f(eps)) both primitive, Tr(eps) = a and Tr(f(eps)) = b — provided

    p^(t/2 - 2) > (2n + 1) * W(p^t - 1)^2,

where W counts squarefree divisors.  The comparison involves a half-integer
power of p, so we square both sides and compare exact integers: no floats,
no rounding, no platform dependence.
"""

from primpair import check_thm31, factor_prime_power_order

CASES = [(2, 7), (89, 7), (23, 8), (1361, 8), (3, 30)]

for p, t in CASES:
    facts = factor_prime_power_order(p, t)
    rep = check_thm31(p, t, n=2, facts=facts)
    primes = "*".join(str(q) if e == 1 else f"{q}^{e}"
                      for q, e in facts.factors)
    print(f"p={p:>5} t={t:>2}  p^t-1 = {primes}")
    print(f"          W = {rep.W}, rhs = (2n+1) W^2 = {rep.rhs}, "
          f"verdict: {rep.verdict.value}")
    print()

print("A Fail verdict does not exclude the pair: the sieve refinement")
print("(demo 02) usually rescues it.")
