"""Property suites: each check returns a ``Check`` with a pass flag and the
numbers behind it."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from . import analysis
from .curve import (INFINITY, WeierstrassCurve, count_points, enumerate_points, is_singular,
                    iter_curves, scalar_mul)
from .funcfield import PlaceKind, PoleError, evaluate, iter_places, rr_basis, verify_basis
from .gf import make_field
from .seqgen import build_family, generate_sequence


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'} {self.name} {self.detail}"


def _field_of(q):
    from sympy import perfect_power, isprime
    if isprime(q):
        return make_field(q, 1)
    pp = perfect_power(q)
    if not pp or not isprime(pp[0]):
        raise ValueError(f"{q} is not a prime power")
    return make_field(pp[0], pp[1])


def check_eta(qs=(3, 5, 7, 9, 27, 81)):
    """Multiplicativity on F_q^*, eta(0) = 0 and (q-1)/2 nonzero squares."""
    bad = []
    for q in qs:
        F = _field_of(q)
        nz = np.arange(1, q, dtype=np.int64)
        eta = F.eta_arr(nz)
        prod = F.mul_arr(nz[:, None], nz[None, :])
        mult = (F.eta_arr(prod) == (eta[:, None] ^ eta[None, :])).all()
        squares = int(np.count_nonzero(eta == 0))
        if not (mult and F.eta(0) == 0 and squares == (q - 1) // 2):
            bad.append(q)
    return Check("eta properties", not bad, {"fields": list(qs), "failures": bad})


def check_serre_exhaustive(qs=(3, 5, 7, 9, 11, 13)):
    worst = {}
    total = 0
    ok = True
    for q in qs:
        F = _field_of(q)
        f = isqrt(4 * q)
        m = 0
        for E in iter_curves(F):
            t = count_points(E) - q - 1
            m = max(m, abs(t))
            ok &= abs(t) <= f
            total += 1
        worst[q] = m
    return Check("Serre bound, exhaustive", ok, {"curves": total, "max_abs_trace": worst})


def check_serre_sampled(qs=(25, 27, 49, 81), samples=1000, seed=0):
    rng = random.Random(seed)
    ok = True
    detail = {}
    for q in qs:
        F = _field_of(q)
        f = isqrt(4 * q)
        done = 0
        m = 0
        while done < samples:
            a2, a4, a6 = (rng.randrange(q) for _ in range(3))
            if is_singular(F, a2, a4, a6):
                continue
            t = count_points(WeierstrassCurve(F, a2, a4, a6)) - q - 1
            m = max(m, abs(t))
            ok &= abs(t) <= f
            done += 1
        detail[q] = {"curves": done, "max_abs_trace": m, "bound": f}
    return Check("Serre bound, sampled", ok, {"seed": seed, **detail})


def closed_form_B2(q, t):
    return (q * q + q - t * t - t) // 2


def closed_form_B3(q, t):
    return (q**3 - q + t**3 - 3 * q * t - t) // 3


def check_places(qs=(3, 5, 7, 9, 11, 13), ds=(2, 3)):
    """Mobius formula, closed forms and direct orbit counting agree."""
    mismatches = []
    count = 0
    for q in qs:
        F = _field_of(q)
        for E in iter_curves(F):
            t = count_points(E) - q - 1
            for d in ds:
                formula = analysis.places_count_formula(q, t, d)
                direct = analysis.places_count_enumerate(E, d)
                closed = {2: closed_form_B2, 3: closed_form_B3}.get(d)
                if formula != direct or (closed and closed(q, t) != formula):
                    mismatches.append((E.serialize(), d, formula, direct))
                count += 1
    return Check("place counts", not mismatches, {"comparisons": count, "mismatches": mismatches[:5]})


def check_power_sums(qs=(3, 5, 7, 9, 11, 13, 27, 81), rmax=12):
    ok = all(analysis.frobenius_power_sum(t, q, r) == analysis.frobenius_power_sum_closed(t, q, r)
             for q in qs for t in range(-isqrt(4 * q), isqrt(4 * q) + 1) for r in range(1, rmax + 1))
    return Check("Frobenius power sums, recurrence vs closed form", ok, {"fields": list(qs), "r_max": rmax})


QUICK_RR_FIELDS = ((5, 1, (2, 3)), (7, 1, (2, 3)), (3, 2, (2, 3)))
RR_FIELDS = ((5, 1, (2, 3, 5)), (7, 1, (2, 3, 5)), (3, 2, (2, 3, 5)), (3, 3, (2, 3)), (3, 4, (2,)))


def possible_kinds(d):
    """Place kinds that can occur at degree d when gcd(d, N) = 1.

    The x-coordinate has degree d/2 only for even d, and a root of the cubic
    has degree at most 3 (degree 2 would force a rational root, so N even).
    """
    kinds = {PlaceKind.SPLIT_X}
    if d % 2 == 0:
        kinds.add(PlaceKind.FOLDED_X)
    if d == 3:
        kinds.add(PlaceKind.TWO_TORSION)
    return kinds


def rr_configs(fields=RR_FIELDS, per_kind=2, curve_limit=60):
    """Deterministic (curve, place) choices covering each place kind that
    occurs for each (q, d) in ``fields``."""
    out = []
    for p, n, ds in fields:
        F = make_field(p, n)
        for d in ds:
            kinds = possible_kinds(d)
            found = {k: 0 for k in kinds}
            for k, E in enumerate(iter_curves(F)):
                if k >= curve_limit or all(v >= per_kind for v in found.values()):
                    break
                if math.gcd(d, count_points(E)) != 1:
                    continue
                wanted = {kind for kind in kinds if found[kind] < per_kind}
                for place in iter_places(E, d):
                    if place.kind in wanted:
                        out.append((E, place))
                        found[place.kind] += 1
                        wanted.discard(place.kind)
                    if not wanted:
                        break
    return out


def certify_place(curve, place):
    """dim L(Q) = d, independent certification, V vanishes at O, no poles on
    E(F_q)."""
    try:
        rr = rr_basis(curve, place)
    except Exception as exc:
        return {"dim": None, "error": str(exc)}
    report = verify_basis(curve, rr)
    pole_free = True
    for P in enumerate_points(curve):
        for f in rr.basis:
            try:
                evaluate(f, P)
            except PoleError:
                pole_free = False
    v_at_O = all(evaluate(v, INFINITY) == 0 for v in rr.v_basis)
    return {"dim": len(rr.basis), "verify": report.ok, "v_vanishes_at_O": v_at_O, "pole_free": pole_free,
            "ok": len(rr.basis) == place.d and report.ok and v_at_O and pole_free}


def check_rr(configs=None):
    if configs is None:
        configs = rr_configs()
    failures = []
    kinds = set()
    for E, place in configs:
        res = certify_place(E, place)
        kinds.add(place.kind.value)
        if not res.get("ok"):
            failures.append((E.serialize(), place.serialize(), res))
    return Check("Riemann-Roch certification", not failures and len(configs) > 0,
                 {"configs": len(configs), "kinds": sorted(kinds), "failures": failures[:5]})


def check_kernels(pairs=1000, seed=0, max_len=300):
    """Packed correlation profiles against the direct double sum."""
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(pairs):
        N = int(rng.integers(1, max_len))
        a = rng.integers(0, 2, N, dtype=np.uint8)
        b = rng.integers(0, 2, N, dtype=np.uint8)
        if not np.array_equal(analysis.correlation_profile(a, b), analysis.correlation_profile_naive(a, b)):
            bad += 1
    return Check("packed vs direct correlation", bad == 0, {"pairs": pairs, "seed": seed, "disagreements": bad})


def check_lc_methods(count=300, seed=0, max_len=200):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(count):
        N = int(rng.integers(1, max_len))
        s = rng.integers(0, 2, N, dtype=np.uint8).tolist()
        bad += analysis.lc_gcd(s) != analysis.lc_berlekamp_massey(s)
    return Check("LC gcd vs Berlekamp-Massey", bad == 0, {"sequences": count, "seed": seed, "disagreements": bad})


def check_shift_covariance(family, trials=50, seed=0):
    rng = random.Random(seed)
    curve, P = family.curve, family.generator
    bad = []
    for _ in range(trials):
        i = rng.randrange(family.size)
        u = rng.randrange(family.N)
        shifted = generate_sequence(curve, P, family.function(i), start=scalar_mul(curve, u, P))
        if not np.array_equal(shifted, np.roll(family.sequences[i], -u)):
            bad.append((i, u))
    return Check("shift covariance", not bad, {"trials": trials, "seed": seed, "failures": bad})


def check_family(p, n, t, d, lc_floor=None):
    """Generate the family and check every bound-satisfaction property."""
    fam = build_family(p, n, t, d)
    rep = analysis.analyze(fam, p, n, t, d)
    checks = dict(rep["checks"])
    if lc_floor is not None:
        checks["lc_floor"] = rep["measured"]["lc_min"] >= lc_floor
    return Check(f"family q={p**n} t={t} d={d}", all(checks.values()),
                 {"measured": rep["measured"], "checks": checks})


def run_suite(scope="quick"):
    if scope not in ("quick", "full"):
        raise ValueError(f"unknown scope {scope!r}")
    checks = [
        check_eta((3, 5, 7, 9, 11, 13)),
        check_serre_exhaustive(),
        check_places(),
        check_power_sums(),
        check_kernels(200),
        check_lc_methods(),
        check_rr(rr_configs(QUICK_RR_FIELDS, per_kind=1, curve_limit=20)),
    ]
    if scope == "full":
        checks += [
            check_eta(),
            check_serre_sampled(),
            check_rr(),
            check_kernels(1000),
            check_family(3, 4, -1, 2),
            check_family(3, 4, 9, 2),
            check_family(3, 5, -1, 2, lc_floor=analysis.lc_bound_ceiling(243, -1, 2)),
        ]
    return checks
