import itertools
import math

import pytest

from ellseq.curve import (INFINITY, PointError, SearchExhausted, SingularCurveError, WeierstrassCurve,
                          add_points, count_points, enumerate_points, group_summary, is_admissible_trace,
                          is_singular, iter_curves, make_curve, neg_point, point_order, scalar_mul,
                          search_curve)
from ellseq.gf import make_field


def brute_points(curve):
    F = curve.field
    return [(x, y) for x, y in itertools.product(F.elements(), repeat=2)
            if F.mul(y, y) == curve.rhs(x)] + [INFINITY]


def discriminant_zero(F, a2, a4, a6):
    """Classical discriminant of x^3 + a2 x^2 + a4 x + a6 vanishes."""
    m = F.mul
    k = F.from_int
    a, b, c = a2, a4, a6
    terms = [
        m(m(a, a), m(b, b)),
        F.neg(m(k(4), m(b, m(b, b)))),
        F.neg(m(k(4), m(m(a, m(a, a)), c))),
        F.neg(m(k(27), m(c, c))),
        m(k(18), m(m(a, b), c)),
    ]
    disc = 0
    for t in terms:
        disc = F.add(disc, t)
    return disc == 0


E3 = make_curve(make_field(3), 0, 1, 2)      # y^2 = x^3 + x + 2


def test_singularity_examples():
    F3 = make_field(3)
    assert not is_singular(F3, 0, 2, 0)     # x^3 - x
    assert is_singular(F3, 0, 0, 0)
    assert not is_singular(make_field(5), 0, 1, 0)
    with pytest.raises(SingularCurveError):
        make_curve(F3, 0, 0, 0)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1)])
def test_singularity_matches_discriminant(p, n):
    F = make_field(p, n)
    for a2, a4, a6 in itertools.product(F.elements(), repeat=3):
        assert is_singular(F, a2, a4, a6) == discriminant_zero(F, a2, a4, a6)


def test_small_group_law():
    assert add_points(E3, (1, 1), (1, 1)) == (2, 0)
    assert add_points(E3, (1, 1), INFINITY) == (1, 1)
    assert add_points(E3, (1, 1), (1, 2)) is INFINITY
    assert scalar_mul(E3, 1, (1, 1)) == (1, 1)
    assert scalar_mul(E3, 2, (1, 1)) == (2, 0)
    assert scalar_mul(E3, 4, (1, 1)) is INFINITY
    with pytest.raises(PointError):
        add_points(E3, (0, 0), (1, 1))


def test_small_point_sets():
    assert enumerate_points(E3) == [(1, 1), (1, 2), (2, 0), INFINITY]
    klein = make_curve(make_field(3), 0, 2, 0)
    assert len(enumerate_points(klein)) == 4
    assert sum(1 for P in enumerate_points(klein) if P and P[1] == 0) == 3


def test_group_summaries():
    s = group_summary(E3)
    assert (s.N, s.t, s.cyclic, s.generator) == (4, 0, True, (1, 1))
    s = group_summary(make_curve(make_field(3), 0, 2, 0))
    assert (s.N, s.t, s.cyclic, s.generator) == (4, 0, False, None)


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 1), (3, 2)])
def test_count_matches_brute_force(p, n):
    F = make_field(p, n)
    for E in iter_curves(F):
        pts = brute_points(E)
        assert count_points(E) == len(pts)
        assert sorted(enumerate_points(E)[:-1]) == sorted(pts[:-1])


@pytest.mark.parametrize("p,n", [(5, 1), (7, 1), (3, 2)])
def test_group_axioms(p, n):
    F = make_field(p, n)
    for E in itertools.islice(iter_curves(F), 0, None, 17):
        pts = enumerate_points(E)
        N = len(pts)
        for P in pts:
            assert add_points(E, P, neg_point(E, P)) is INFINITY
            assert scalar_mul(E, N, P) is INFINITY
            assert N % point_order(E, P, N) == 0
        for P, R, S in itertools.islice(itertools.product(pts, repeat=3), 0, None, 7):
            assert add_points(E, add_points(E, P, R), S) == add_points(E, P, add_points(E, R, S))
            assert add_points(E, P, R) == add_points(E, R, P)


def test_scalar_mul_negative():
    assert scalar_mul(E3, -1, (1, 1)) == (1, 2)
    assert scalar_mul(E3, -3, (1, 1)) == scalar_mul(E3, 1, (1, 1))


def test_hasse_exhaustive_small():
    for p, n in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        F = make_field(p, n)
        for E in iter_curves(F):
            assert abs(count_points(E) - F.q - 1) <= math.isqrt(4 * F.q)


def test_cyclic_generator_order():
    F = make_field(7)
    for E in iter_curves(F):
        s = group_summary(E)
        if s.cyclic:
            assert point_order(E, s.generator, s.N) == s.N


def test_admissible_traces():
    assert is_admissible_trace(3, 3, 9) and is_admissible_trace(3, 3, -9)
    assert is_admissible_trace(3, 4, -1)
    assert is_admissible_trace(5, 2, 5)
    assert is_admissible_trace(3, 4, 5)
    assert is_admissible_trace(3, 4, 9)
    assert not is_admissible_trace(3, 1, 7)
    assert not is_admissible_trace(3, 4, 3)       # p | t, no special case applies
    assert not is_admissible_trace(7, 2, 7)       # 7 = 1 mod 3
    assert not is_admissible_trace(3, 3, 3)


def test_zero_trace_rule():
    # q = 3 mod 4 needs n odd, so t = 0 is always allowed
    for p, n in [(3, 1), (7, 1), (7, 2), (3, 4), (5, 3)]:
        assert is_admissible_trace(p, n, 0)


def test_admissible_traces_have_cyclic_curves():
    for p, n in [(3, 1), (5, 1), (7, 1), (3, 2)]:
        F = make_field(p, n)
        found = {}
        for E in iter_curves(F):
            s = group_summary(E)
            found[s.t] = found.get(s.t, False) or s.cyclic
        f = math.isqrt(4 * F.q)
        for t in range(-f, f + 1):
            if is_admissible_trace(p, n, t):
                assert found.get(t), (F.q, t)


@pytest.mark.parametrize("p,n,t,N", [(3, 4, -1, 81), (3, 4, 9, 91), (3, 1, 0, 4), (5, 2, 5, 31), (3, 3, 9, 37)])
def test_search_curve(p, n, t, N):
    curve, s = search_curve(p, n, t)
    assert s.N == N and s.cyclic
    assert count_points(curve) == N
    assert point_order(curve, s.generator, N) == N


def test_search_is_first_in_odometer_order():
    F = make_field(3)
    curve, _ = search_curve(3, 1, 0)
    for E in iter_curves(F):
        if (E.a2, E.a4, E.a6) == (curve.a2, curve.a4, curve.a6):
            break
        s = group_summary(E)
        assert not (s.N == 4 and s.cyclic)
    assert (curve.a2, curve.a4, curve.a6) == (0, 1, 0)


def test_search_exhaustion():
    with pytest.raises(SearchExhausted):
        search_curve(3, 1, 4)


def test_serialize_round_trip():
    curve, _ = search_curve(3, 4, -1)
    text = curve.serialize()
    assert text == "3;4;2,1,0,0,1;1;0;9"
    assert WeierstrassCurve.parse(text) == curve
