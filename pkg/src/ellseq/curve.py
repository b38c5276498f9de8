"""Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 over odd-characteristic fields.

Points are ``(x, y)`` tuples of field elements; the point at infinity is
``INFINITY`` (``None``).
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from math import isqrt

import numpy as np
from sympy import factorint

from . import poly
from .gf import GF, make_extension, make_field, parse_fp_poly, format_fp_poly

INFINITY = None

EXHAUSTIVE_ORDER_LIMIT = 10**4


class SingularCurveError(ValueError):
    pass


class PointError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    """No curve with the requested trace and a cyclic group was found."""


@dataclass(frozen=True)
class WeierstrassCurve:
    field: GF
    a2: int
    a4: int
    a6: int

    @property
    def cubic(self):
        return poly.trim((self.a6, self.a4, self.a2, 1))

    def rhs(self, x):
        F = self.field
        return F.add(F.mul(F.add(F.mul(F.add(x, self.a2), x), self.a4), x), self.a6)

    def contains(self, P):
        if P is INFINITY:
            return True
        x, y = P
        return self.field.mul(y, y) == self.rhs(x)

    def base_change(self, ext):
        """The same curve over ``ext.big`` (coefficients embedded)."""
        if ext.base != self.field:
            raise ValueError("extension is over a different field")
        return WeierstrassCurve(ext.big, ext.embed(self.a2), ext.embed(self.a4), ext.embed(self.a6))

    def serialize(self):
        F = self.field
        return f"{F.p};{F.n};{format_fp_poly(F.modulus)};{self.a2};{self.a4};{self.a6}"

    @classmethod
    def parse(cls, text):
        p, n, mod, a2, a4, a6 = text.strip().split(";")
        F = make_field(int(p), int(n))
        if parse_fp_poly(mod) != F.modulus:
            raise ValueError(f"curve modulus {mod} differs from the canonical modulus of F_{F.q}")
        return make_curve(F, int(a2), int(a4), int(a6))

    def __str__(self):
        return f"y^2 = x^3 + {self.a2}x^2 + {self.a4}x + {self.a6} over {self.field!r}"


def is_singular(F, a2, a4, a6):
    """The cubic has a repeated root iff gcd(f, f') is non-constant (f' = 0
    counts as gcd = f)."""
    f = poly.trim((a6, a4, a2, 1))
    return poly.deg(poly.gcd(F, f, poly.derivative(F, f))) > 0


def make_curve(field, a2, a4, a6):
    if field.p == 2:
        raise ValueError("characteristic 2 is not supported")
    if is_singular(field, a2, a4, a6):
        raise SingularCurveError(f"y^2 = x^3 + {a2}x^2 + {a4}x + {a6} is singular over {field!r}")
    return WeierstrassCurve(field, a2, a4, a6)


def neg_point(curve, P):
    if P is INFINITY:
        return P
    return (P[0], curve.field.neg(P[1]))


def _add(curve, P, R):
    if P is INFINITY:
        return R
    if R is INFINITY:
        return P
    F = curve.field
    x1, y1 = P
    x2, y2 = R
    if x1 == x2:
        if F.add(y1, y2) == 0:
            return INFINITY
        num = F.add(F.add(F.mul(F.from_int(3), F.mul(x1, x1)), F.mul(F.from_int(2), F.mul(curve.a2, x1))), curve.a4)
        lam = F.div(num, F.mul(F.from_int(2), y1))
    else:
        lam = F.div(F.sub(y2, y1), F.sub(x2, x1))
    x3 = F.sub(F.sub(F.sub(F.mul(lam, lam), curve.a2), x1), x2)
    y3 = F.sub(F.mul(lam, F.sub(x1, x3)), y1)
    return (x3, y3)


def add_points(curve, P, R):
    """Chord-and-tangent addition."""
    if not (curve.contains(P) and curve.contains(R)):
        raise PointError(f"point not on {curve}")
    return _add(curve, P, R)


def scalar_mul(curve, k, P):
    """[k]P by double-and-add; negative k uses -P."""
    if k < 0:
        k, P = -k, neg_point(curve, P)
    result = INFINITY
    addend = P
    while k:
        if k & 1:
            result = _add(curve, result, addend)
        addend = _add(curve, addend, addend)
        k >>= 1
    return result


def enumerate_points(curve, over_degree=1):
    """All points over F_{q^over_degree}: x ascending, y roots ascending, O last."""
    if over_degree != 1:
        curve = curve.base_change(make_extension(curve.field, over_degree))
    F = curve.field
    points = []
    for x in F.elements():
        r = curve.rhs(x)
        y = F.sqrt(r)
        if y is None:
            continue
        if y == 0:
            points.append((x, 0))
        else:
            y0, y1 = sorted((y, F.neg(y)))
            points.append((x, y0))
            points.append((x, y1))
    points.append(INFINITY)
    return points


def count_points(curve):
    """#E(F_q) = q + 1 + sum_x chi(f(x)), vectorised when tables exist."""
    F = curve.field
    if F.residue_table is not None:
        xs = np.arange(F.q, dtype=np.int64)
        vals = F.poly_eval_arr(curve.cubic, xs)
        return F.q + 1 + int(F.chi_arr(vals).sum())
    return F.q + 1 + sum(F.chi(curve.rhs(x)) for x in F.elements())


def point_order(curve, P, N, factors=None):
    """Order of P given that [N]P = O."""
    if factors is None:
        factors = factorint(N)
    order = N
    for r in factors:
        while order % r == 0 and scalar_mul(curve, order // r, P) is INFINITY:
            order //= r
    return order


@dataclass(frozen=True)
class GroupSummary:
    N: int
    t: int
    cyclic: bool
    generator: tuple | None
    seed: int | None = None

    def to_json(self, curve):
        F = curve.field
        return {
            "p": F.p, "n": F.n, "q": F.q, "t": self.t, "N": self.N,
            "cyclic": self.cyclic,
            "generator": list(self.generator) if self.generator else None,
            "curve": curve.serialize(),
        }


def group_summary(curve, seed=0):
    """Point count, trace and cyclicity; the generator is the first point of
    order N in enumeration order."""
    points = enumerate_points(curve)
    N = len(points)
    t = N - curve.field.q - 1
    factors = factorint(N)
    used_seed = None
    if N > EXHAUSTIVE_ORDER_LIMIT:
        # random sampling with lcm accumulation decides cyclicity quickly
        used_seed = seed
        rng = random.Random(seed)
        exponent = 1
        for _ in range(64):
            exponent = math.lcm(exponent, point_order(curve, rng.choice(points), N, factors))
            if exponent == N:
                break
        if exponent != N:
            exponent = 1
            for P in points:
                exponent = math.lcm(exponent, point_order(curve, P, N, factors))
        if exponent != N:
            return GroupSummary(N, t, False, None, used_seed)
    for P in points:
        if point_order(curve, P, N, factors) == N:
            return GroupSummary(N, t, True, P, used_seed)
    return GroupSummary(N, t, False, None, used_seed)


def is_admissible_trace(p, n, t):
    """Traces for which a cyclic curve with q + 1 + t points exists."""
    q = p**n
    if t * t <= 4 * q and math.gcd(t, p) == 1:
        return True
    if t == 0 and (n % 2 == 1 or q % 4 != 3):
        return True
    if n % 2 == 0 and p % 3 != 1 and abs(t) == isqrt(q):
        return True
    if n % 2 == 1 and p == 3 and abs(t) == p ** ((n + 1) // 2):
        return True
    return False


def iter_curves(F):
    """Nonsingular (a2, a4, a6) in odometer order (a6 fastest)."""
    for a2, a4, a6 in itertools.product(F.elements(), repeat=3):
        if not is_singular(F, a2, a4, a6):
            yield WeierstrassCurve(F, a2, a4, a6)


def _counts_over_a6(F, a2, a4):
    """#E for y^2 = x^3 + a2 x^2 + a4 x + a6, for every a6 at once."""
    xs = np.arange(F.q, dtype=np.int64)
    g = F.poly_eval_arr((0, a4, a2, 1), xs)
    shifted = F.add_arr(g[None, :], xs[:, None])
    return F.q + 1 + F.chi_arr(shifted).sum(axis=1)


def search_curve(p, n, t):
    """First curve in odometer order with q + 1 + t points and a cyclic group."""
    F = make_field(p, n)
    target = F.q + 1 + t
    vectorised = F.residue_table is not None
    for a2, a4 in itertools.product(F.elements(), repeat=2):
        if vectorised:
            hits = np.flatnonzero(_counts_over_a6(F, a2, a4) == target).tolist()
        else:
            hits = F.elements()
        for a6 in hits:
            if is_singular(F, a2, a4, a6):
                continue
            curve = WeierstrassCurve(F, a2, a4, a6)
            if not vectorised and count_points(curve) != target:
                continue
            summary = group_summary(curve)
            if summary.cyclic:
                return curve, summary
    raise SearchExhausted(f"no cyclic curve over F_{F.q} with trace {t}")


def summary_json(curve, summary):
    return json.dumps(summary.to_json(curve), sort_keys=True)
