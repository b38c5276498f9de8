import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, symbols
from sympy.crypto.crypto import lfsr_connection_polynomial
from sympy.polys.domains import FF

from ellseq import analysis as an
from ellseq.curve import count_points, iter_curves, make_curve
from ellseq.gf import make_extension, make_field
from ellseq.seqgen import build_family

bits = st.lists(st.integers(0, 1), min_size=1, max_size=120)


def sympy_lc(s):
    if not any(s):
        return 0
    c = lfsr_connection_polynomial([FF(2)(b) for b in s + s])
    return Poly(c, symbols("x")).degree()


def brute_lc(s):
    """Shortest cyclic recurrence by trying every connection polynomial."""
    N = len(s)
    if not any(s):
        return 0
    for L in range(1, N + 1):
        for taps in itertools.product((0, 1), repeat=L):
            if all(s[(j + L) % N] == sum(t * s[(j + k) % N] for k, t in enumerate(taps)) % 2
                   for j in range(N)):
                return L
    return N


# -- correlation -------------------------------------------------------------

def test_autocorrelation_examples():
    assert an.autocorrelation([0, 1, 1], 0) == 3
    assert an.autocorrelation([0, 0, 0, 0], 2) == 4
    assert an.autocorrelation([0, 1, 1], 1) == -1


def test_cross_correlation_examples():
    assert an.cross_correlation([0, 1, 1], [0, 1, 1], 0) == 3
    assert an.cross_correlation([0, 1, 1], [1, 0, 0], 0) == -3
    assert an.cross_correlation([0, 1, 1], [1, 0, 1], 0) == -1
    with pytest.raises(ValueError):
        an.cross_correlation([0, 1], [0, 1, 1], 0)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_packed_profile_matches_naive(data):
    N = data.draw(st.integers(1, 200))
    u = np.array(data.draw(st.lists(st.integers(0, 1), min_size=N, max_size=N)), dtype=np.uint8)
    v = np.array(data.draw(st.lists(st.integers(0, 1), min_size=N, max_size=N)), dtype=np.uint8)
    assert np.array_equal(an.correlation_profile(u, v), an.correlation_profile_naive(u, v))


def naive_family(seqs, include_zero_delay):
    N = seqs.shape[1]
    auto = max((abs(an.autocorrelation(s, u)) for s in seqs for u in range(1, N)), default=0)
    cross = cross_nz = 0
    for i, j in itertools.combinations(range(len(seqs)), 2):
        prof = np.abs(an.correlation_profile_naive(seqs[i], seqs[j]))
        cross = max(cross, int(prof.max()))
        if N > 1:
            cross_nz = max(cross_nz, int(prof[1:].max()))
    cor = max(auto, cross if include_zero_delay else cross_nz)
    return auto, cross, cross_nz, cor


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(2, 40), st.integers(0, 2**32 - 1), st.booleans())
def test_family_correlation_matches_naive(size, N, seed, zero):
    rng = np.random.default_rng(seed)
    seqs = rng.integers(0, 2, (size, N), dtype=np.uint8)
    if size > 2:
        seqs[-1] = seqs[0]          # force a duplicate
    rep = an.family_correlation(seqs, zero)
    assert (rep.max_auto, rep.max_cross, rep.max_cross_nonzero_delay, rep.cor) == naive_family(seqs, zero)


def test_single_sequence_family():
    rep = an.family_correlation(np.array([[0, 1, 1, 0, 1]], dtype=np.uint8))
    assert rep.cor == rep.max_auto
    assert rep.max_cross == 0


def test_duplicate_forces_full_cross():
    s = np.array([[0, 1, 1, 0, 1], [0, 1, 1, 0, 1]], dtype=np.uint8)
    assert an.family_correlation(s, True).cor == 5
    assert an.family_correlation(s, False).max_cross_nonzero_delay == an.family_correlation(s).max_auto


def test_witnesses_reproduce_values():
    fam = build_family(3, 4, 9, 2)
    rep = an.family_correlation(fam)
    w = rep.witnesses["auto"]
    assert abs(an.autocorrelation(fam.sequences[w["sequence"]], w["delay"])) == rep.max_auto
    w = rep.witnesses["cross_nonzero_delay"]
    i, j = w["pair"]
    assert abs(an.cross_correlation(fam.sequences[i], fam.sequences[j], w["delay"])) == rep.max_cross_nonzero_delay


# -- balance -----------------------------------------------------------------

def test_balance_examples():
    assert an.balance(np.zeros(7, dtype=np.uint8)).delta == 7
    assert an.balance(np.array([0, 1, 1, 0], dtype=np.uint8)).delta == 0
    assert an.balance(np.array([[0, 1, 1], [1, 1, 1]], dtype=np.uint8)).per_sequence == [1, 3]


# -- linear complexity -------------------------------------------------------

def test_lc_examples():
    assert an.linear_complexity([0] * 5) == 0
    assert an.linear_complexity([1] * 7) == 1
    assert an.linear_complexity([0, 1, 0, 1]) == 2


@settings(max_examples=300, deadline=None)
@given(bits)
def test_lc_methods_agree_with_sympy(s):
    assert an.lc_gcd(s) == an.lc_berlekamp_massey(s) == sympy_lc(s)


@pytest.mark.parametrize("N", range(1, 9))
def test_lc_exhaustive_small(N):
    for s in itertools.product((0, 1), repeat=N):
        s = list(s)
        assert an.linear_complexity(s) == brute_lc(s)


def test_family_lc_one_sequence():
    rep = an.family_lc(np.ones((1, 9), dtype=np.uint8))
    assert rep.lc_min == 1 and rep.cross_check


# -- bounds ------------------------------------------------------------------

def test_floor_two_sqrt():
    assert an.floor_two_sqrt(81) == 18
    assert an.floor_two_sqrt(243) == 31
    assert an.floor_two_sqrt(4) == 4
    for q in range(1, 3000):
        f = an.floor_two_sqrt(q)
        assert f * f <= 4 * q < (f + 1) ** 2


def test_balance_bounds():
    assert an.bound_balance(81, -1, 2) == 57
    assert [an.bound_balance_corollary(q, 2) for q in (81, 243, 729, 2187)] == [56, 95, 164, 281]


def test_correlation_bounds():
    assert an.bound_correlation(81, -1, 2) == 95
    assert an.bound_correlation_corollary(81, 2) == 94
    assert [an.bound_correlation_corollary(q, 2) for q in (81, 243, 729, 2187)] == [94, 159, 274, 469]
    assert an.bound_correlation(81, 9, 2) == 103
    assert an.bound_correlation(243, 27, 2) == 186
    assert an.bound_correlation(729, 27, 2) == 301


def test_lc_bounds():
    assert an.bound_lc(81, -1, 2) == Fraction(24, 38)
    assert an.bound_lc(243, -1, 2) == Fraction(147, 64)
    assert an.bound_lc(2187, -1, 2) == Fraction(1905, 188)
    assert an.lc_bound_ceiling(243, -1, 2) == 3
    assert an.lc_bound_ceiling(81, -1, 2) == 1


# -- power sums and place counts --------------------------------------------

def test_power_sum_examples():
    for q in (3, 5, 9, 81):
        for t in range(-an.floor_two_sqrt(q), an.floor_two_sqrt(q) + 1):
            assert an.frobenius_power_sum(t, q, 0) == 2
            assert an.frobenius_power_sum(t, q, 1) == -t
            assert an.frobenius_power_sum(t, q, 2) == t * t - 2 * q
            for r in range(1, 15):
                assert an.frobenius_power_sum(t, q, r) == an.frobenius_power_sum_closed(t, q, r)
    assert an.frobenius_power_sum(0, 7, 3) == 0


def test_power_sum_is_point_count_defect():
    """#E(F_{q^r}) = q^r + 1 - S_r, with S_r computed from t alone."""
    F = make_field(3)
    for E in iter_curves(F):
        t = count_points(E) - 4
        for r in (1, 2, 3):
            Er = E.base_change(make_extension(F, r))
            assert count_points(Er) == 3**r + 1 - an.frobenius_power_sum(t, 3, r)


def test_mobius():
    assert [an.mobius(k) for k in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_place_count_examples():
    assert an.places_count_formula(81, -1, 2) == 3321
    assert an.places_count_formula(3, 0, 3) == 8
    for q, t in [(3, 0), (5, 2), (81, -1)]:
        assert an.places_count_formula(q, t, 1) == q + 1 + t
    E = make_curve(make_field(3), 0, 1, 2)
    assert an.places_count_enumerate(E, 3) == 8
    assert an.places_count_enumerate(E, 1) == 4


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_place_counts_all_curves(p, n):
    F = make_field(p, n)
    q = F.q
    for E in iter_curves(F):
        t = count_points(E) - q - 1
        for d in (1, 2, 3, 4):
            assert an.places_count_formula(q, t, d) == an.places_count_enumerate(E, d)
        assert an.places_count_formula(q, t, 2) == (q * q + q - t * t - t) // 2
        assert an.places_count_formula(q, t, 3) == (q**3 - q + t**3 - 3 * q * t - t) // 3


# -- reports -----------------------------------------------------------------

def test_analysis_report_config_a():
    fam = build_family(3, 4, -1, 2)
    rep = an.analyze(fam, 3, 4, -1, 2)
    assert rep["params"] == {"p": 3, "n": 4, "q": 81, "t": -1, "d": 2, "N": 81, "mode": "PAPER_FAITHFUL"}
    assert rep["bounds"]["correlation"] == 95
    assert rep["bounds"]["correlation_corollary"] == 94
    assert rep["measured"]["delta"] <= 56
    assert rep["dedup"]["distinct_count"] == 2
    assert all(rep["checks"].values())


def test_duplicate_audit_config_a():
    audit = an.duplicate_audit(build_family(3, 4, -1, 2))
    assert audit["matches_square_scaling"]
    assert audit["orbit_sizes"] == [40]
    assert audit["identical_pairs"] == 2 * math.comb(40, 2)


def test_table_csv():
    rows = [an.table_row(81, -1, 2, 94, 23), an.table_row(729, -1, 2, 274)]
    assert an.table_csv(rows) == ("Field Size,Length,Family Size,Bound,Actual\n"
                                  "81,81,80,94,23\n729,729,728,274,\n")
