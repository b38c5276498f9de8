"""Counting degree-d places two ways: the Mobius sum over Frobenius power
sums, and direct enumeration of Frobenius orbits.

Run: python demos/05_place_counts.py
"""

from ellseq import make_field
from ellseq.analysis import frobenius_power_sum, places_count_enumerate, places_count_formula
from ellseq.curve import count_points, iter_curves

F = make_field(3, 2)
by_trace = {}
for E in iter_curves(F):
    by_trace.setdefault(count_points(E) - F.q - 1, E)

for t, E in sorted(by_trace.items()):
    row = [(places_count_formula(F.q, t, d), places_count_enumerate(E, d)) for d in (1, 2, 3, 4)]
    print(f"t={t:>2}  S_1..S_4={[frobenius_power_sum(t, F.q, r) for r in (1, 2, 3, 4)]}  B_d (formula, direct)={row}")
