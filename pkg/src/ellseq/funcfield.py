"""Degree-d places of E, the Riemann-Roch space L(Q) and function evaluation.

A function is stored as (a(x) + b(x) y) / c(x) with coefficients in F_q.  With
v_O(x) = -2 and v_O(y) = -3, its order at infinity is

    v_O(f) = min(-2 deg a, -3 - 2 deg b) + 2 deg c,

and the two terms never tie (one is even, the other odd).

L(Q) is computed as a linear system.  With m(x) the minimal polynomial of the
x-coordinate of a point of Q (degree e), every f in L(Q) has the form
(a + b y) / m with deg a <= e and deg b <= e - 2; the numerator must vanish at
the zeros of m(x) on E where m(x) vanishes to higher order than Q allows.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from . import poly
from .curve import INFINITY, WeierstrassCurve, enumerate_points, count_points, neg_point
from .gf import GF, make_extension
import math


class PlaceError(ValueError):
    pass


class PoleError(ValueError):
    pass


class BasisDimensionError(RuntimeError):
    pass


class PlaceKind(enum.Enum):
    SPLIT_X = "SPLIT_X"          # x(rep) has degree d, y(rep) != 0
    FOLDED_X = "FOLDED_X"        # x(rep) has degree d/2
    TWO_TORSION = "TWO_TORSION"  # x(rep) has degree d, y(rep) = 0


# -- rational functions ------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    """(a(x) + b(x) y) / c(x), gcd-reduced with c monic."""

    field: GF = field(repr=False)
    a: tuple
    b: tuple
    c: tuple

    @classmethod
    def make(cls, F, a=(), b=(), c=(1,)):
        a, b, c = poly.trim(a), poly.trim(b), poly.trim(c)
        if not c:
            raise ZeroDivisionError("zero denominator")
        if not a and not b:
            return cls(F, (), (), (1,))
        g = poly.gcd(F, poly.gcd(F, a, b), c)
        if poly.deg(g) > 0:
            a = poly.divmod_(F, a, g)[0]
            b = poly.divmod_(F, b, g)[0]
            c = poly.divmod_(F, c, g)[0]
        k = F.inv(c[-1])
        return cls(F, poly.scale(F, a, k), poly.scale(F, b, k), poly.scale(F, c, k))

    @classmethod
    def constant(cls, F, k):
        return cls.make(F, (k,))

    def is_zero(self):
        return not self.a and not self.b

    def valuation_at_infinity(self):
        if self.is_zero():
            return math.inf
        terms = []
        if self.a:
            terms.append(-2 * poly.deg(self.a))
        if self.b:
            terms.append(-3 - 2 * poly.deg(self.b))
        return min(terms) + 2 * poly.deg(self.c)

    def __add__(self, other):
        F = self.field
        a = poly.add(F, poly.mul(F, self.a, other.c), poly.mul(F, other.a, self.c))
        b = poly.add(F, poly.mul(F, self.b, other.c), poly.mul(F, other.b, self.c))
        return RationalFunction.make(F, a, b, poly.mul(F, self.c, other.c))

    def scale(self, k):
        F = self.field
        return RationalFunction.make(F, poly.scale(F, self.a, k), poly.scale(F, self.b, k), self.c)

    def __call__(self, P):
        return evaluate(self, P)

    def serialize(self):
        return f"a={poly.format_poly(self.a)};b={poly.format_poly(self.b)};c={poly.format_poly(self.c)}"

    @classmethod
    def parse(cls, F, text):
        parts = dict(item.split("=", 1) for item in text.split(";"))
        return cls.make(F, poly.parse_poly(parts["a"]), poly.parse_poly(parts["b"]), poly.parse_poly(parts["c"]))


def evaluate(f, P):
    """f(P) for a rational point P or the point at infinity."""
    F = f.field
    if P is INFINITY:
        v = f.valuation_at_infinity()
        if v < 0:
            raise PoleError(f"{f.serialize()} has a pole at O")
        if v > 0:
            return 0
        # v = 0 forces 2 deg a = 2 deg c; the y-term cannot reach order 0
        return F.div(poly.lead(f.a), poly.lead(f.c))
    x, y = P
    den = poly.evaluate(F, f.c, x)
    if den == 0:
        raise PoleError(f"{f.serialize()} has a pole at {P}")
    num = F.add(poly.evaluate(F, f.a, x), F.mul(poly.evaluate(F, f.b, x), y))
    return F.div(num, den)


def _eval_poly_ext(ext, coeffs, x):
    big = ext.big
    acc = 0
    for c in reversed(coeffs):
        acc = big.add(big.mul(acc, x), ext.embed(c))
    return acc


def numerator_at(f, ext, P):
    """a(x) + b(x) y at a point over the extension field."""
    x, y = P
    big = ext.big
    return big.add(_eval_poly_ext(ext, f.a, x), big.mul(_eval_poly_ext(ext, f.b, x), y))


def count_rational_zeros(f, curve, points=None):
    """Number of rational points (O included) where f vanishes."""
    if points is None:
        points = enumerate_points(curve)
    return sum(1 for P in points if evaluate(f, P) == 0)


# -- places ------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    curve: WeierstrassCurve
    d: int
    rep: tuple
    orbit: tuple
    m: tuple
    e: int
    kind: PlaceKind

    @property
    def ext(self):
        return make_extension(self.curve.field, self.d)

    def serialize(self):
        return f"{self.kind.value}/{poly.format_poly(self.m)}/{self.rep[0]}/{self.rep[1]}"

    def to_json(self):
        return {"d": self.d, "kind": self.kind.value, "m": list(self.m), "e": self.e,
                "rep": list(self.rep), "orbit": [list(P) for P in self.orbit]}


def _orbit(ext, P):
    out = [P]
    x, y = P
    for k in range(1, ext.d):
        Q = (ext.frobenius(x, k), ext.frobenius(y, k))
        if Q == P:
            break
        out.append(Q)
    return out


def _make_place(curve, ext, P, orbit):
    m = ext.minimal_poly(P[0])
    e = poly.deg(m)
    d = ext.d
    if e == d:
        kind = PlaceKind.TWO_TORSION if P[1] == 0 else PlaceKind.SPLIT_X
    elif 2 * e == d:
        kind = PlaceKind.FOLDED_X
    else:
        raise PlaceError(f"x-coordinate degree {e} incompatible with place degree {d}")
    return Place(curve, d, P, tuple(orbit), m, e, kind)


def iter_places(curve, d):
    """Degree-d places, each reported once, in scan order over F_{q^d}."""
    ext = make_extension(curve.field, d)
    big_curve = curve.base_change(ext)
    big = ext.big
    seen = set()
    for x in big.elements():
        r = big_curve.rhs(x)
        y = big.sqrt(r)
        if y is None:
            continue
        ys = [0] if y == 0 else sorted((y, big.neg(y)))
        for yy in ys:
            P = (x, yy)
            if P in seen:
                continue
            orbit = _orbit(ext, P)
            if len(orbit) != d:
                continue
            seen.update(orbit)
            yield _make_place(curve, ext, P, orbit)


def find_place(curve, d, kind=None, N=None):
    """First degree-d place in scan order (optionally of a given kind)."""
    if d < 1:
        raise PlaceError("place degree must be positive")
    if N is None:
        N = count_points(curve)
    if math.gcd(d, N) != 1:
        raise PlaceError(f"gcd(d={d}, N={N}) != 1")
    for place in iter_places(curve, d):
        if kind is None or place.kind == kind:
            return place
    raise PlaceError(f"no degree-{d} place{'' if kind is None else ' of kind ' + kind.value}")


# -- Riemann-Roch space ------------------------------------------------------

@dataclass(frozen=True)
class RRBasis:
    place: Place
    basis: tuple
    v_basis: tuple
    coords: tuple     # ansatz coefficient vectors of ``basis``
    v_coords: tuple   # ansatz coefficient vectors of ``v_basis``

    def to_json(self):
        return {"place": self.place.to_json(), "curve": self.place.curve.serialize(),
                "basis": [f.serialize() for f in self.basis],
                "v_basis": [f.serialize() for f in self.v_basis]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _ansatz_shape(e):
    """Number of a- and b-coefficients: deg a <= e, deg b <= e - 2."""
    return e + 1, max(e - 1, 0)


def _ansatz_function(F, place, vec):
    na, _ = _ansatz_shape(place.e)
    return RationalFunction.make(F, vec[:na], vec[na:], place.m)


def vanishing_points(place):
    """Zeros of m(x) on E where the numerator of an element of L(Q) must vanish.

    m(x) has divisor (zeros) - 2e O.  For SPLIT_X the zeros are Q and -Q, so
    the numerator vanishes at -Q.  For TWO_TORSION m(x) vanishes doubly on Q,
    so the numerator vanishes on Q itself.  FOLDED_X needs nothing.
    """
    if place.kind is PlaceKind.SPLIT_X:
        return [neg_point(place.curve.base_change(place.ext), P) for P in place.orbit]
    if place.kind is PlaceKind.TWO_TORSION:
        return list(place.orbit)
    return []


def _condition_rows(place):
    F = place.curve.field
    ext = place.ext
    big = ext.big
    na, nb = _ansatz_shape(place.e)
    rows = []
    for x, y in vanishing_points(place):
        xp = [1]
        for _ in range(max(na, nb) - 1):
            xp.append(big.mul(xp[-1], x))
        entries = [xp[i] for i in range(na)] + [big.mul(xp[j], y) for j in range(nb)]
        coords = [ext.coords(v) for v in entries]
        for l in range(ext.d):
            rows.append([c[l] for c in coords])
    return rows


def rr_basis(curve, place):
    """Basis of L(Q) and of V = {f in L(Q) : f(O) = 0}."""
    F = curve.field
    na, nb = _ansatz_shape(place.e)
    ncols = na + nb
    rows = _condition_rows(place)
    full = poly.nullspace(F, rows, ncols)
    if len(full) != place.d:
        raise BasisDimensionError(f"dim L(Q) = {len(full)}, expected {place.d}")
    # evaluation at O reads off the coefficient of x^e in a
    at_infinity = [0] * ncols
    at_infinity[place.e] = 1
    vspace = poly.nullspace(F, rows + [at_infinity], ncols)
    if len(vspace) != place.d - 1:
        raise BasisDimensionError(f"dim V = {len(vspace)}, expected {place.d - 1}")
    return RRBasis(
        place,
        tuple(_ansatz_function(F, place, v) for v in full),
        tuple(_ansatz_function(F, place, v) for v in vspace),
        tuple(full),
        tuple(vspace),
    )


def complement_V(rrbasis):
    return list(rrbasis.v_basis)


# -- independent certification ----------------------------------------------

@dataclass
class BasisReport:
    checks: list   # one dict per basis element
    rank_ok: bool
    v_vanish_ok: bool

    @property
    def ok(self):
        return self.rank_ok and self.v_vanish_ok and all(all(c.values()) for c in self.checks)


def _ansatz_vector(f, place):
    """Coefficients of f * m in the (a, b) ansatz, assuming c | m."""
    F = f.field
    cofactor, rem = poly.divmod_(F, place.m, f.c)
    na, nb = _ansatz_shape(place.e)
    a = poly.mul(F, f.a, cofactor)
    b = poly.mul(F, f.b, cofactor)
    if rem or len(a) > na or len(b) > nb:
        return None
    return list(a) + [0] * (na - len(a)) + list(b) + [0] * (nb - len(b))


def verify_basis(curve, rrbasis, elements=None):
    """Check each element against the divisor conditions of L(Q).

    (i) the denominator divides m (poles only along Q, simple in x);
    (ii) no pole at O;
    (iii) the numerator vanishes at every point over the extension where the
          denominator vanishes and Q does not absorb the zero;
    (iv) the family is linearly independent over F_q.
    """
    place = rrbasis.place
    ext = place.ext
    F = curve.field
    big_curve = curve.base_change(ext)
    orbit = set(place.orbit)
    if elements is None:
        elements = rrbasis.basis
    checks = []
    vectors = []
    for f in elements:
        _, rem = poly.divmod_(F, place.m, f.c)
        denom_ok = not rem
        pole_ok = f.valuation_at_infinity() >= 0
        vanish_ok = True
        if denom_ok and poly.deg(f.c) > 0:
            for P in place.orbit:
                for Pc in {P, neg_point(big_curve, P)}:
                    if Pc in orbit and Pc[1] != 0:
                        continue
                    if numerator_at(f, ext, Pc) != 0:
                        vanish_ok = False
        checks.append({"denominator": denom_ok, "pole_at_O": pole_ok, "vanishing": vanish_ok})
        vec = _ansatz_vector(f, place) if denom_ok else None
        if vec is not None:
            vectors.append(vec)
    na, nb = _ansatz_shape(place.e)
    rank_ok = len(vectors) == len(elements) and poly.rank(F, vectors, na + nb) == len(elements)
    v_ok = all(evaluate(v, INFINITY) == 0 for v in rrbasis.v_basis)
    return BasisReport(checks, rank_ok, v_ok)
