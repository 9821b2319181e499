"""Finding explicit primitive-pair witnesses on desk-scale fields.

The bound machinery proves existence wholesale; on small fields we can
exhibit the witnesses.  Here we take F_{2^13}, sample a rational function
f = c * f1/f2 with irreducible coprime parts, and for every trace pair
(a, b) in F_2 x F_2 search exhaustively for eps with

  - eps and f(eps) both primitive (order 2^13 - 1 = 8191, a prime),
  - Tr(eps) = a and Tr(f(eps)) = b.

Every witness is re-verified with independent power checks before being
reported.
"""

import random

from primpair import make_field, sample_rational, eval_rational, witness_search

ctx = make_field(2, 13)
rng = random.Random(0)
f = sample_rational(ctx, 1, 1, rng)

print(f"field: GF(2^13), units form a cyclic group of prime order {ctx.Q - 1}")
print(f"f = {ctx.to_index(f.scale)} * "
      f"{[ctx.to_index(c) for c in f.num.coeffs]} / "
      f"{[ctx.to_index(c) for c in f.den.coeffs]}   (coefficient indices)\n")

for a in ctx.subfield_elements(1):
    for b in ctx.subfield_elements(1):
        res = witness_search(ctx, f, a, b, r=1)
        eps = res.witness
        eps0 = eval_rational(ctx, f, eps)
        print(f"a={ctx.to_index(a)} b={ctx.to_index(b)}: "
              f"eps = element #{ctx.to_index(eps)}, "
              f"f(eps) = element #{ctx.to_index(eps0)}, "
              f"orders {ctx.element_order(eps)}/{ctx.element_order(eps0)} "
              f"(definitive: {res.definitive})")
