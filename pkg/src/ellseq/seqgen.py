"""Binary sequence families s_{i,j} = eta(z_i([j]P)) for z_i in V \\ {0}."""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field

import numpy as np

from .curve import INFINITY, WeierstrassCurve, _add, group_summary
from .funcfield import Place, PoleError, RationalFunction, evaluate, find_place, rr_basis


class Mode(enum.Enum):
    PAPER_FAITHFUL = "PAPER_FAITHFUL"
    DEDUPED = "DEDUPED"


class DumpFormatError(ValueError):
    pass


def coefficient_vectors(q, k):
    """Nonzero vectors of F_q^k in odometer order (first coordinate fastest)."""
    for idx in range(1, q**k):
        vec = []
        for _ in range(k):
            idx, r = divmod(idx, q)
            vec.append(r)
        yield tuple(vec)


def linear_combination(F, basis, coeffs):
    out = RationalFunction.constant(F, 0)
    for c, f in zip(coeffs, basis):
        if c:
            out = out + f.scale(c)
    return out


def enumerate_nonzero_V(v_basis):
    """All nonzero F_q-combinations of ``v_basis`` in odometer order."""
    if not v_basis:
        return
    F = v_basis[0].field
    for coeffs in coefficient_vectors(F.q, len(v_basis)):
        yield linear_combination(F, v_basis, coeffs)


def multiples(curve, P, start=INFINITY):
    """start, start + P, start + 2P, ... until the orbit closes."""
    out = [start]
    cur = _add(curve, start, P)
    while cur != start:
        out.append(cur)
        cur = _add(curve, cur, P)
    return out


def generate_sequence(curve, P, z, start=INFINITY):
    """Bits eta(z(start + [j]P)) for j = 0 .. N-1."""
    F = curve.field
    bits = []
    for Pj in multiples(curve, P, start):
        try:
            bits.append(F.eta(evaluate(z, Pj)))
        except PoleError as exc:
            raise RuntimeError(f"family function has a rational pole: {exc}") from exc
    return np.array(bits, dtype=np.uint8)


@dataclass
class SequenceFamily:
    N: int
    sequences: np.ndarray          # shape (size, N), dtype uint8
    curve: WeierstrassCurve
    place: Place
    generator: tuple
    v_basis: tuple
    mode: Mode
    coeffs: list = field(default_factory=list)   # coefficient vector of each z_i
    t: int = 0

    @property
    def size(self):
        return self.sequences.shape[0]

    @property
    def d(self):
        return self.place.d

    def function(self, i):
        return linear_combination(self.curve.field, self.v_basis, self.coeffs[i])

    def distinct_count(self):
        return len({row.tobytes() for row in self.sequences})


def square_orbits(F, vectors):
    """Group coefficient vectors into orbits under scaling by nonzero squares.

    Returns a list of orbits (lists of indices into ``vectors``), ordered by
    their first member.
    """
    squares = sorted({F.mul(s, s) for s in range(1, F.q)})
    index = {v: i for i, v in enumerate(vectors)}
    seen = set()
    orbits = []
    for i, v in enumerate(vectors):
        if i in seen:
            continue
        orbit = sorted({index[tuple(F.mul(s, c) for c in v)] for s in squares})
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def generate_family(curve, place, mode=Mode.PAPER_FAITHFUL, generator=None, rrbasis=None):
    """The family of the curve and place, in V-enumeration order."""
    mode = Mode(mode)
    F = curve.field
    summary = group_summary(curve)
    if not summary.cyclic:
        raise ValueError(f"{curve} does not have a cyclic group")
    if math.gcd(place.d, summary.N) != 1:
        raise ValueError(f"gcd(d={place.d}, N={summary.N}) != 1")
    P = summary.generator if generator is None else generator
    if rrbasis is None:
        rrbasis = rr_basis(curve, place)
    v_basis = rrbasis.v_basis
    points = multiples(curve, P)
    if len(points) != summary.N:
        raise ValueError("point does not generate E(F_q)")

    # z(P_j) is linear in z: tabulate the basis once
    table = np.array([[evaluate(v, Pj) for Pj in points] for v in v_basis], dtype=np.int64)
    coeffs = list(coefficient_vectors(F.q, len(v_basis)))
    if mode is Mode.DEDUPED:
        coeffs = [coeffs[orbit[0]] for orbit in square_orbits(F, coeffs)]
    seqs = np.empty((len(coeffs), summary.N), dtype=np.uint8)
    for i, c in enumerate(coeffs):
        vals = np.zeros(summary.N, dtype=np.int64)
        for ck, row in zip(c, table):
            if ck:
                vals = F.add_arr(vals, F.mul_arr(ck, row))
        seqs[i] = F.eta_arr(vals)
    family = SequenceFamily(summary.N, seqs, curve, place, P, v_basis, mode, coeffs, summary.t)
    if mode is Mode.DEDUPED and family.distinct_count() != family.size:
        raise RuntimeError("deduplicated family still contains identical sequences")
    return family


def build_family(p, n, t, d, mode=Mode.PAPER_FAITHFUL, curve=None):
    """Search a cyclic curve (unless given), pick the first degree-d place and
    generate the family."""
    from .curve import search_curve
    if curve is None:
        curve, _ = search_curve(p, n, t)
    place = find_place(curve, d)
    return generate_family(curve, place, mode)


# -- dump format -------------------------------------------------------------

_HEADER_KEYS = ("p", "n", "t", "d", "curve", "place", "mode")


def dumps(family):
    F = family.curve.field
    header = (f"# p={F.p};n={F.n};t={family.t};d={family.d};curve={family.curve.serialize()};"
              f"place={family.place.serialize()};mode={family.mode.value}")
    lines = [header] + ["".join("1" if b else "0" for b in row) for row in family.sequences]
    return "\n".join(lines) + "\n"


def write_dump(family, path):
    with open(path, "w", newline="\n") as fh:
        fh.write(dumps(family))


def parse_header(line):
    if not line.startswith("#"):
        raise DumpFormatError("missing header line")
    body = line[1:].strip()
    keys = "|".join(_HEADER_KEYS)
    parts = re.split(rf";(?=(?:{keys})=)", body)
    header = {}
    for part in parts:
        if "=" not in part:
            raise DumpFormatError(f"bad header field {part!r}")
        k, v = part.split("=", 1)
        header[k] = v
    missing = [k for k in ("p", "n", "t", "d") if k not in header]
    if missing:
        raise DumpFormatError(f"header lacks {missing}")
    for k in ("p", "n", "t", "d"):
        try:
            header[k] = int(header[k])
        except ValueError:
            raise DumpFormatError(f"header field {k} is not an integer") from None
    return header


def loads(text):
    """Parse a dump into (header dict, bit array)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DumpFormatError("empty dump")
    header = parse_header(lines[0])
    N = header["p"] ** header["n"] + 1 + header["t"]
    rows = []
    for k, ln in enumerate(lines[1:], start=2):
        ln = ln.strip()
        if len(ln) != N or set(ln) - {"0", "1"}:
            raise DumpFormatError(f"line {k}: expected {N} characters of 0/1")
        rows.append(np.frombuffer(ln.encode(), dtype=np.uint8) - ord("0"))
    if not rows:
        raise DumpFormatError("dump has no sequences")
    return header, np.array(rows, dtype=np.uint8)


def read_dump(path):
    with open(path) as fh:
        return loads(fh.read())
