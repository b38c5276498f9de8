"""Univariate polynomials over a ``GF`` and small dense linear algebra.

Polynomials are tuples of field elements, constant term first, with no
trailing zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def deg(a):
    return len(a) - 1


def lead(a):
    return a[-1] if a else 0


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F, a):
    return tuple(F.neg(c) for c in a)


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if c == 0:
        return ()
    return tuple(F.mul(v, c) for v in a)


def mul(F, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] = F.add(out[i + j], F.mul(u, v))
    return trim(out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = F.inv(b[-1])
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = F.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bi))
        a = list(trim(a))
    return trim(quot), tuple(a)


def monic(F, a):
    if not a:
        return ()
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def evaluate(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, a):
    return trim(F.mul(F.from_int(i), c) for i, c in enumerate(a) if i)


def from_roots(F, roots):
    out = (1,)
    for r in roots:
        out = mul(F, out, (F.neg(r), 1))
    return out


def format_poly(a):
    return ",".join(str(c) for c in a) if a else "0"


def parse_poly(text):
    return trim(int(c) for c in text.split(","))


# -- linear algebra over F ---------------------------------------------------

def rref(F, rows, ncols):
    """Reduced row echelon form; pivots chosen as the first nonzero column."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][col])
        m[r] = [F.mul(v, inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [F.sub(v, F.mul(f, w)) for v, w in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(F, rows, ncols):
    return len(rref(F, rows, ncols)[1])


def nullspace(F, rows, ncols):
    """Basis of {v : rows . v = 0}, one vector per free column in order."""
    reduced, pivots = rref(F, rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = F.neg(row[free])
        basis.append(tuple(v))
    return basis
