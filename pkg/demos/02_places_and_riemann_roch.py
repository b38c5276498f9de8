"""Degree-d places and a basis of the Riemann-Roch space L(Q).

Run: python demos/02_places_and_riemann_roch.py
"""

import math

from ellseq import make_field, rr_basis, verify_basis
from ellseq.curve import count_points, iter_curves
from ellseq.funcfield import iter_places

F = make_field(7)
# gcd(d, N) = 1 is needed for d = 2 and d = 3
curve = next(E for E in iter_curves(F) if math.gcd(6, count_points(E)) == 1)
print(curve, "N =", count_points(curve))

for d in (2, 3):
    shown = set()
    for place in iter_places(curve, d):
        if place.kind in shown:
            continue
        shown.add(place.kind)
        rr = rr_basis(curve, place)
        report = verify_basis(curve, rr)
        print(f"d={d} {place.kind.value:<12} m(x)={place.m}")
        print("   L(Q):", [f.serialize() for f in rr.basis])
        print("   V   :", [f.serialize() for f in rr.v_basis], " certified:", report.ok)
