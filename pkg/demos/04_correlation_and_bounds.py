"""Measured balance, correlation and linear complexity against the bounds.

Run: python demos/04_correlation_and_bounds.py
"""

from ellseq import build_family
from ellseq import analysis as an

for p, n, t in [(3, 4, -1), (3, 4, 9), (3, 5, -1)]:
    q = p**n
    fam = build_family(p, n, t, 2)
    corr = an.family_correlation(fam, include_zero_delay=False)
    lc = an.family_lc(fam)
    print(f"q={q:<4} t={t:<3} N={fam.N:<4} size={fam.size}")
    print(f"   balance     {an.balance(fam).delta:>4}  <= {an.bound_balance(q, t, 2)}")
    print(f"   correlation {corr.cor:>4}  <= {an.bound_correlation(q, t, 2)}  (nonzero delays)")
    print(f"   lin. compl. {lc.lc_min:>4}  >= {float(an.bound_lc(q, t, 2)):.2f}")

print()
print(an.table_csv([an.table_row(q, -1, 2, an.bound_correlation_corollary(q, 2)) for q in (81, 243, 729, 2187)]))
