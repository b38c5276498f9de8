"""Finite fields F_{p^n} of odd characteristic with integer-encoded elements.

An element of F_{p^n} = F_p[X]/(M) is the polynomial sum c_i X^i and is stored
as the integer sum c_i p^i ("odometer" order, constant coefficient least
significant).  Fields up to ``TABLE_LIMIT`` elements carry exp/log/Zech tables
so that every operation is O(1); larger fields fall back to plain polynomial
arithmetic.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime

DEFAULT_MAX_Q = 3**12
TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    """Bad field parameters (non-prime or even p, size limit exceeded)."""


def max_field_size():
    return int(os.environ.get("ELLSEQ_MAX_Q", DEFAULT_MAX_Q))


# -- polynomials over F_p (coefficient lists, constant term first) -----------

def _fp_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a, b, p):
    a = _fp_trim(a)
    b = _fp_trim(b)
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _fp_trim(a)
    return quot, a


def _fp_mulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b))
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _fp_divmod([c % p for c in prod], mod, p)[1]


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a), _fp_trim(b)
    while b:
        a, b = b, _fp_divmod(a, b, p)[1]
    return a


def is_irreducible(poly, p):
    """Rabin test: monic ``poly`` of degree n has no factor of degree <= n/2."""
    f = _fp_trim(poly)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    h = [0, 1]
    for _ in range(n // 2):
        # h <- h^p mod f, so that h = X^(p^k) after k rounds
        r, base, e = [1], h, p
        while e:
            if e & 1:
                r = _fp_mulmod(r, base, f, p)
            base = _fp_mulmod(base, base, f, p)
            e >>= 1
        h = r
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_fp_gcd(f, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p, n):
    """Monic irreducible of degree n whose low coefficients, read as a base-p
    integer, are smallest."""
    for v in range(p**n):
        low = [(v // p**i) % p for i in range(n)]
        if is_irreducible(low + [1], p):
            return tuple(low + [1])
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


def format_fp_poly(coeffs):
    return ",".join(str(c) for c in coeffs)


def parse_fp_poly(text):
    return tuple(int(c) for c in text.split(","))


# -- the field ---------------------------------------------------------------

class GF:
    """The field F_q, q = p^n, with elements ``0 .. q-1``."""

    def __init__(self, p, n, modulus):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = tuple(modulus)
        self._pw = [p**i for i in range(n + 1)]
        self._exp = None
        self._log = None
        self.residue_table = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.n})"

    def __eq__(self, other):
        return isinstance(other, GF) and self.modulus == other.modulus and self.p == other.p

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __len__(self):
        return self.q

    def elements(self):
        return range(self.q)

    def encode(self):
        return f"p={self.p};n={self.n};mod={format_fp_poly(self.modulus)}"

    # digit helpers
    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.n):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds):
        return sum((c % self.p) * w for c, w in zip(ds, self._pw))

    def from_int(self, k):
        """Image of the integer k under Z -> F_p -> F_q."""
        return k % self.p

    # slow (table-free) arithmetic
    def _add_slow(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        p = self.p
        out, w = 0, 1
        for _ in range(self.n):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * w
            w *= p
        return out

    def _neg_slow(self, a):
        return self.from_digits([-c for c in self.digits(a)])

    def _mul_slow(self, a, b):
        if self.n == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        r = _fp_mulmod(self.digits(a), self.digits(b), self.modulus, self.p)
        return self.from_digits(r)

    def _pow_slow(self, a, k):
        r = 1
        while k:
            if k & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            k >>= 1
        return r

    def primitive_element(self):
        """Smallest generator of F_q^* in element order (X tried first)."""
        if self._exp is not None:
            return self._exp[1] if self.q > 2 else 1
        primes = list(factorint(self.q - 1))
        candidates = [self.p] + list(range(2, self.q)) if self.n > 1 else range(2, self.q)
        for g in candidates:
            if all(self._pow_slow(g, (self.q - 1) // r) != 1 for r in primes):
                return g
        return 1

    def _power_table(self, g):
        """g^0 .. g^(q-2) as integers, via blocked F_p-matrix powers of
        multiplication by g."""
        p, n, q = self.p, self.n, self.q
        mul_g = np.array([self.digits(self._mul_slow(g, self._pw[i])) for i in range(n)],
                         dtype=np.int64).T
        block = max(1, int(q**0.5))
        cols = [np.eye(n, dtype=np.int64)[:, 0]]
        for _ in range(block - 1):
            cols.append(mul_g @ cols[-1] % p)
        first = np.stack(cols, axis=1)
        step = np.eye(n, dtype=np.int64)
        for _ in range(block):
            step = mul_g @ step % p
        blocks = [first]
        while len(blocks) * block < q - 1:
            blocks.append(step @ blocks[-1] % p)
        digits = np.concatenate(blocks, axis=1)[:, : q - 1]
        return np.array(self._pw[:n], dtype=np.int64) @ digits

    def _build_tables(self):
        q = self.q
        g = self.primitive_element()
        exp_arr = self._power_table(g)
        exp = exp_arr.tolist() * 2
        log = [0] * q
        for i, v in enumerate(exp[: q - 1]):
            log[v] = i
        self._exp = exp
        self._log = log
        # zech[k] = log(1 + g^k), or -1 when 1 + g^k = 0
        zech = [0] * (q - 1)
        p = self.p
        for k in range(q - 1):
            v = exp[k]
            w = v - v % p + (v % p + 1) % p
            zech[k] = log[w] if w else -1
        self._zech = zech
        self._half = (q - 1) // 2
        self.exp_table = np.array(exp[: q - 1], dtype=np.int64)
        self.log_table = np.array(log, dtype=np.int64)
        self._zech_arr = np.array(zech, dtype=np.int64)
        table = np.zeros(q, dtype=bool)
        table[0] = True
        table[self.exp_table[::2]] = True
        self.residue_table = table

    # field operations
    def add(self, a, b):
        if self._exp is None or self.n == 1:
            return self._add_slow(a, b)
        if a == 0:
            return b
        if b == 0:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % (self.q - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a):
        if self.n == 1:
            return (-a) % self.p
        if self._exp is None:
            return self._neg_slow(a)
        if a == 0:
            return 0
        return self._exp[self._log[a] + self._half]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            return self._mul_slow(a, b)
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + repr(self))
        if self._exp is None:
            return self._pow_slow(a, self.q - 2)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        if k < 0:
            a, k = self.inv(a), -k
        if k == 0:
            return 1
        if a == 0:
            return 0
        if self._exp is None:
            return self._pow_slow(a, k % (self.q - 1) or self.q - 1)
        return self._exp[(self._log[a] * k) % (self.q - 1)]

    def is_square(self, a):
        # Euler's criterion
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def eta(self, a):
        """Quadratic residue map: 0 for zero and squares, 1 for non-squares."""
        if self.residue_table is not None:
            return 0 if self.residue_table[a] else 1
        return 0 if self.is_square(a) else 1

    def chi(self, a):
        """Quadratic character with values 0, 1, -1."""
        if a == 0:
            return 0
        return 1 - 2 * self.eta(a)

    def sqrt(self, a):
        """The smaller (in element order) square root of a, or None."""
        if a == 0:
            return 0
        if self._exp is not None:
            la = self._log[a]
            if la % 2:
                return None
            r = self._exp[la // 2]
        else:
            if not self.is_square(a):
                return None
            r = self._tonelli_shanks(a)
        return min(r, self.neg(r))

    def _tonelli_shanks(self, a):
        s, m = 0, self.q - 1
        while m % 2 == 0:
            s, m = s + 1, m // 2
        z = next(c for c in range(2, self.q) if not self.is_square(c))
        c = self.pow(z, m)
        x = self.pow(a, (m + 1) // 2)
        t = self.pow(a, m)
        while t != 1:
            i, tt = 0, t
            while tt != 1:
                tt = self.mul(tt, tt)
                i += 1
            b = self.pow(c, 1 << (s - i - 1))
            x = self.mul(x, b)
            c = self.mul(b, b)
            t = self.mul(t, c)
            s = i
        return x

    # vectorised operations (table-backed fields only)
    def _require_tables(self):
        if self._exp is None:
            raise FieldError(f"{self!r} is too large for vectorised arithmetic")

    def mul_arr(self, a, b):
        self._require_tables()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        nz = (a != 0) & (b != 0)
        out = np.zeros(a.shape, dtype=np.int64)
        out[nz] = self.exp_table[(self.log_table[a[nz]] + self.log_table[b[nz]]) % (self.q - 1)]
        return out

    def add_arr(self, a, b):
        self._require_tables()
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self.n == 1:
            return (a + b) % self.p
        out = np.where(a == 0, b, a)
        both = (a != 0) & (b != 0)
        la = self.log_table[a[both]]
        z = self._zech_arr[(self.log_table[b[both]] - la) % (self.q - 1)]
        vals = np.where(z < 0, 0, self.exp_table[(la + np.maximum(z, 0)) % (self.q - 1)])
        out[both] = vals
        return out

    def eta_arr(self, a):
        self._require_tables()
        return (~self.residue_table[np.asarray(a, dtype=np.int64)]).astype(np.uint8)

    def chi_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        return np.where(a == 0, 0, 1 - 2 * self.eta_arr(a).astype(np.int64))

    def poly_eval_arr(self, coeffs, xs):
        """Evaluate a polynomial (constant first) at every entry of ``xs``."""
        acc = np.zeros(np.shape(xs), dtype=np.int64)
        for c in reversed(coeffs):
            acc = self.add_arr(self.mul_arr(acc, xs), c)
        return acc


@lru_cache(maxsize=None)
def make_field(p, n=1):
    """F_{p^n} with the smallest monic irreducible modulus of degree n."""
    if p < 3 or not isprime(p):
        raise FieldError(f"p must be an odd prime, got {p}")
    if n < 1:
        raise FieldError(f"extension degree must be positive, got {n}")
    if p**n > max_field_size():
        raise FieldError(f"p^n = {p**n} exceeds size limit {max_field_size()} (ELLSEQ_MAX_Q)")
    return GF(p, n, smallest_irreducible(p, n))


def parse_field(text):
    """Inverse of ``GF.encode``: ``"p=3;n=4;mod=2,1,0,0,1"``."""
    parts = dict(item.split("=", 1) for item in text.split(";"))
    p, n = int(parts["p"]), int(parts["n"])
    F = make_field(p, n)
    if "mod" in parts and parse_fp_poly(parts["mod"]) != F.modulus:
        if not is_irreducible(parse_fp_poly(parts["mod"]), p):
            raise FieldError("modulus is not irreducible")
        return GF(p, n, parse_fp_poly(parts["mod"]))
    return F


# -- extensions F_q -> F_{q^d} ----------------------------------------------

def _inverse_mod_p(mat, p):
    """Inverse of a square integer matrix over F_p by Gauss-Jordan."""
    size = len(mat)
    aug = [list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(mat)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [v * inv % p for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(v - f * w) % p for v, w in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


class Extension:
    """F_{q^d} realised as F_{p^{nd}}, with a fixed embedding of F_q.

    The base generator X is sent to the smallest root of the base modulus in
    the big field.  Coordinates over F_q use the power basis 1, T, ..., T^(d-1)
    where T is the big field's own generator.
    """

    def __init__(self, base, d):
        if d < 1:
            raise FieldError("extension degree must be positive")
        self.base = base
        self.d = d
        self.big = make_field(base.p, base.n * d)
        big = self.big
        if d == 1:
            self.embed_image = base.p if base.n > 1 else 0
        else:
            sub = self.subfield_elements()
            self.embed_image = min(a for a in sub if self._eval_fp_poly(base.modulus, a) == 0)
        powers = [1]
        for _ in range(base.n - 1):
            powers.append(big.mul(powers[-1], self.embed_image))
        table = []
        for a in base.elements():
            acc = 0
            for c, w in zip(base.digits(a), powers):
                if c:
                    acc = big.add(acc, big.mul(c, w))
            table.append(acc)
        self._embed = table
        self._restrict = {v: a for a, v in enumerate(table)}
        theta = big.p if big.n > 1 else 0
        self.theta = theta
        cols = []
        tpow = 1
        for _ in range(d):
            for w in powers:
                cols.append(big.digits(big.mul(w, tpow)))
            tpow = big.mul(tpow, theta)
        size = base.n * d
        mat = [[cols[j][i] for j in range(size)] for i in range(size)]
        self._coord_inv = _inverse_mod_p(mat, base.p)

    def __repr__(self):
        return f"Extension({self.base!r}, d={self.d})"

    def _eval_fp_poly(self, coeffs, x):
        big = self.big
        acc = 0
        for c in reversed(coeffs):
            acc = big.add(big.mul(acc, x), c)
        return acc

    def subfield_elements(self):
        """The copy of F_q inside the big field, in element order."""
        big, q = self.big, self.base.q
        if self.d == 1:
            return list(big.elements())
        g = big.primitive_element()
        h = big.pow(g, (big.q - 1) // (q - 1))
        out = [0]
        cur = 1
        for _ in range(q - 1):
            out.append(cur)
            cur = big.mul(cur, h)
        return sorted(out)

    def embed(self, a):
        return self._embed[a]

    def in_base(self, a):
        return a in self._restrict

    def restrict(self, a):
        """Preimage of a big-field element lying in the embedded F_q."""
        try:
            return self._restrict[a]
        except KeyError:
            raise ValueError(f"{a} is not in the embedded base field") from None

    def frobenius(self, a, k=1):
        """a^(q^k) for 0 <= k < d."""
        if not 0 <= k < self.d:
            raise ValueError(f"Frobenius power {k} out of range for d={self.d}")
        return self.big.pow(a, self.base.q**k) if k else a

    def conjugates(self, a):
        """Distinct Frobenius conjugates a, a^q, ... in orbit order."""
        out = [a]
        b = self.big.pow(a, self.base.q)
        while b != a:
            out.append(b)
            b = self.big.pow(b, self.base.q)
        return out

    def degree_of(self, a):
        return len(self.conjugates(a))

    def minimal_poly(self, a):
        """Monic minimal polynomial of a over F_q (tuple, constant first)."""
        big = self.big
        poly = [1]
        for c in self.conjugates(a):
            shifted = [0] + poly
            for i, v in enumerate(poly):
                shifted[i] = big.sub(shifted[i], big.mul(c, v))
            poly = shifted
        return tuple(self.restrict(v) for v in poly)

    def coords(self, beta):
        """F_q-coordinates of ``beta`` in the power basis of theta."""
        p, n = self.base.p, self.base.n
        v = self.big.digits(beta)
        c = [sum(row[j] * v[j] for j in range(len(v))) % p for row in self._coord_inv]
        return tuple(self.base.from_digits(c[l * n:(l + 1) * n]) for l in range(self.d))

    def from_coords(self, gamma):
        big = self.big
        acc, tpow = 0, 1
        for g in gamma:
            acc = big.add(acc, big.mul(self.embed(g), tpow))
            tpow = big.mul(tpow, self.theta)
        return acc


@lru_cache(maxsize=None)
def make_extension(base, d):
    return Extension(base, d)


def eta(F, a):
    return F.eta(a)


def is_square(F, a):
    return F.is_square(a)


def frobenius(ext, a, k):
    return ext.frobenius(a, k)


def minimal_poly(ext, a):
    return ext.minimal_poly(a)
