"""Finite fields, the quadratic character and a cyclic curve search.

Run: python demos/01_fields_and_curves.py
"""

from ellseq import make_field, search_curve
from ellseq.curve import enumerate_points

F = make_field(3, 4)
print(F, "modulus (constant term first):", F.modulus)
print("squares among the nonzero elements:", sum(1 for a in range(1, F.q) if F.is_square(a)))

# eta(a) = 1 exactly for the non-squares, and it is a homomorphism to F_2
a = next(x for x in range(1, F.q) if not F.is_square(x))
b = 17
print(f"eta({a})={F.eta(a)}  eta({b})={F.eta(b)}  eta({a}*{b})={F.eta(F.mul(a, b))}")

for t in (-1, 9):
    curve, summary = search_curve(3, 4, t)
    print(f"trace {t:>2}: {curve}  N={summary.N}  generator={summary.generator}")

curve, _ = search_curve(3, 1, 0)
print("points of", curve, ":", enumerate_points(curve))
