"""Correlation, balance and linear complexity of sequence families, the bound
formulas they are checked against, and place counts B_d.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from math import isqrt

import numpy as np
from sympy import factorint

from .curve import count_points
from .gf import make_extension


# -- correlation -------------------------------------------------------------

def autocorrelation(s, u):
    s = np.asarray(s, dtype=np.uint8)
    N = len(s)
    if not 0 <= u < N:
        raise ValueError(f"delay {u} outside [0, {N - 1}]")
    return N - 2 * int(np.count_nonzero(s ^ np.roll(s, -u)))


def cross_correlation(u_seq, v_seq, t):
    """sum_j (-1)^(u_j + v_{j+t})."""
    u_seq = np.asarray(u_seq, dtype=np.uint8)
    v_seq = np.asarray(v_seq, dtype=np.uint8)
    if u_seq.shape != v_seq.shape:
        raise ValueError("sequences differ in length")
    N = len(u_seq)
    if not 0 <= t < N:
        raise ValueError(f"delay {t} outside [0, {N - 1}]")
    return N - 2 * int(np.count_nonzero(u_seq ^ np.roll(v_seq, -t)))


def pack_bits(bits):
    """Pack the last axis of a 0/1 array into little-endian uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8)
    N = bits.shape[-1]
    pad = (-N) % 64
    if pad:
        bits = np.concatenate([bits, np.zeros(bits.shape[:-1] + (pad,), dtype=np.uint8)], axis=-1)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    return packed.view(np.uint64)


def rotations(s):
    """All left rotations of s, row u = (s_u, s_{u+1}, ...)."""
    s = np.asarray(s, dtype=np.uint8)
    N = len(s)
    idx = (np.arange(N)[:, None] + np.arange(N)[None, :]) % N
    return s[idx]


def correlation_profile(u_seq, v_seq):
    """C_t(u, v) for every delay t, by packed XOR and popcount."""
    N = len(u_seq)
    a = pack_bits(u_seq)
    b = pack_bits(rotations(v_seq))
    return N - 2 * np.bitwise_count(a[None, :] ^ b).sum(axis=1).astype(np.int64)


def correlation_profile_naive(u_seq, v_seq):
    N = len(u_seq)
    out = []
    for t in range(N):
        acc = 0
        for j in range(N):
            acc += -1 if u_seq[j] ^ v_seq[(j + t) % N] else 1
        out.append(acc)
    return np.array(out, dtype=np.int64)


@dataclass
class CorrelationReport:
    max_auto: int
    max_cross: int
    max_cross_nonzero_delay: int
    cor: int
    include_zero_delay: bool
    witnesses: dict = field(default_factory=dict)

    def to_json(self):
        return asdict(self)


def family_correlation(sequences, include_zero_delay=True):
    """Exact auto/cross correlation maxima of a family.

    Identical bit-vectors are correlated once; a pair of distinct members with
    the same bits has the autocorrelation profile as cross profile (C_0 = N).
    """
    seqs = np.asarray(getattr(sequences, "sequences", sequences), dtype=np.uint8)
    if seqs.ndim != 2 or seqs.shape[0] == 0:
        raise ValueError("empty family")
    size, N = seqs.shape
    uniq, first, inverse = np.unique(seqs, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.reshape(-1)
    mult = np.bincount(inverse, minlength=len(uniq))
    members = {k: np.flatnonzero(inverse == k) for k in range(len(uniq))}
    rot_packed = pack_bits(np.stack([rotations(s) for s in uniq]))   # (U, N, W)
    packed = pack_bits(uniq)                                         # (U, W)

    best_auto = (-1, None)
    best_cross = (-1, None)
    best_cross_nz = (-1, None)
    for k in range(len(uniq)):
        prof = N - 2 * np.bitwise_count(packed[k][None, None, :] ^ rot_packed[k:]).sum(axis=2).astype(np.int64)
        absprof = np.abs(prof)
        # autocorrelation, delays 1..N-1
        if N > 1:
            u = int(np.argmax(absprof[0, 1:])) + 1
            if absprof[0, u] > best_auto[0]:
                best_auto = (int(absprof[0, u]), {"sequence": int(first[k]), "delay": u})
        if mult[k] > 1:
            i, j = (int(x) for x in members[k][:2])
            if N > best_cross[0]:
                best_cross = (N, {"pair": [i, j], "delay": 0})
            if N > 1:
                u = int(np.argmax(absprof[0, 1:])) + 1
                if absprof[0, u] > best_cross_nz[0]:
                    best_cross_nz = (int(absprof[0, u]), {"pair": [i, j], "delay": u})
        if k + 1 < len(uniq):
            rest = absprof[1:]
            flat = int(np.argmax(rest))
            r, u = divmod(flat, N)
            if rest[r, u] > best_cross[0]:
                best_cross = (int(rest[r, u]), {"pair": [int(first[k]), int(first[k + 1 + r])], "delay": u})
            if N > 1:
                flat = int(np.argmax(rest[:, 1:]))
                r, u = divmod(flat, N - 1)
                if rest[r, u + 1] > best_cross_nz[0]:
                    best_cross_nz = (int(rest[r, u + 1]),
                                     {"pair": [int(first[k]), int(first[k + 1 + r])], "delay": u + 1})
    max_auto = max(best_auto[0], 0)
    max_cross = max(best_cross[0], 0) if size > 1 else 0
    max_cross_nz = max(best_cross_nz[0], 0) if size > 1 else 0
    cor = max(max_auto, max_cross if include_zero_delay else max_cross_nz)
    witnesses = {"auto": best_auto[1], "cross": best_cross[1] if size > 1 else None,
                 "cross_nonzero_delay": best_cross_nz[1] if size > 1 else None}
    return CorrelationReport(max_auto, max_cross, max_cross_nz, cor, include_zero_delay, witnesses)


def duplicate_audit(family):
    """Compare groups of bit-identical members with the square-scaling orbits
    of their defining coefficient vectors."""
    from .seqgen import square_orbits
    F = family.curve.field
    groups = {}
    for i, row in enumerate(family.sequences):
        groups.setdefault(row.tobytes(), []).append(i)
    observed = sorted(sorted(g) for g in groups.values())
    predicted = sorted(square_orbits(F, family.coeffs))
    identical_pairs = sum(len(g) * (len(g) - 1) // 2 for g in observed)
    return {
        "groups": len(observed),
        "predicted_groups": len(predicted),
        "orbit_sizes": sorted({len(g) for g in predicted}),
        "identical_pairs": identical_pairs,
        "matches_square_scaling": observed == predicted,
    }


# -- balance -----------------------------------------------------------------

@dataclass
class BalanceReport:
    per_sequence: list
    delta: int


def balance(sequences):
    seqs = np.asarray(getattr(sequences, "sequences", sequences), dtype=np.uint8)
    if seqs.ndim == 1:
        seqs = seqs[None, :]
    if seqs.shape[0] == 0:
        raise ValueError("empty family")
    ones = seqs.sum(axis=1).astype(np.int64)
    per = np.abs(2 * ones - seqs.shape[1]).tolist()
    return BalanceReport(per, int(max(per)))


# -- linear complexity -------------------------------------------------------

def _gf2_deg(a):
    return a.bit_length() - 1


def _gf2_mod(a, b):
    db = _gf2_deg(b)
    while a and _gf2_deg(a) >= db:
        a ^= b << (_gf2_deg(a) - db)
    return a


def _gf2_gcd(a, b):
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def lc_gcd(s):
    """N - deg gcd(x^N - 1, S(x)) over F_2."""
    N = len(s)
    S = 0
    for j, bit in enumerate(s):
        if bit:
            S |= 1 << j
    if S == 0:
        return 0
    return N - _gf2_deg(_gf2_gcd((1 << N) | 1, S))


def berlekamp_massey(bits):
    """Shortest LFSR length generating ``bits`` (connection polynomials as ints)."""
    C, B = 1, 1
    L, m = 0, -1
    window = 0   # bit i holds s_{n-i}
    for n, bit in enumerate(bits):
        window = (window << 1) | int(bit)
        if (C & window).bit_count() & 1:
            T = C
            C ^= B << (n - m)
            if 2 * L <= n:
                L, B, m = n + 1 - L, T, n
    return L


def lc_berlekamp_massey(s):
    s = list(s)
    return berlekamp_massey(s + s)


def linear_complexity(s):
    a = lc_gcd(s)
    b = lc_berlekamp_massey(s)
    if a != b:
        raise RuntimeError(f"linear complexity methods disagree: gcd {a}, BM {b}")
    return a


@dataclass
class LCReport:
    per_sequence: list
    lc_min: int
    cross_check: bool


def family_lc(sequences):
    seqs = np.asarray(getattr(sequences, "sequences", sequences), dtype=np.uint8)
    if seqs.shape[0] == 0:
        raise ValueError("empty family")
    cache = {}
    per = []
    agree = True
    for row in seqs:
        key = row.tobytes()
        if key not in cache:
            a, b = lc_gcd(row.tolist()), lc_berlekamp_massey(row.tolist())
            cache[key] = (a, b)
        a, b = cache[key]
        agree &= a == b
        per.append(a)
    return LCReport(per, min(per), agree)


# -- bounds ------------------------------------------------------------------

def floor_two_sqrt(q):
    return isqrt(4 * q)


def bound_balance(q, t, d):
    return (d + 1) * floor_two_sqrt(q) + abs(t) + d


def bound_balance_corollary(q, d):
    """Balance bound with the |t| term dropped (t = -1 table form)."""
    return (d + 1) * floor_two_sqrt(q) + d


def bound_correlation(q, t, d):
    return (2 * d + 1) * floor_two_sqrt(q) + abs(t) + 2 * d


def bound_correlation_corollary(q, d):
    """Correlation bound with the |t| term dropped (t = -1 table form)."""
    return (2 * d + 1) * floor_two_sqrt(q) + 2 * d


def bound_lc(q, t, d):
    f = floor_two_sqrt(q)
    return Fraction(q + 1 + 2 * t - d - (d + 1) * f, d + d * f)


def lc_bound_ceiling(q, t, d):
    return max(math.ceil(bound_lc(q, t, d)), 0)


# -- Frobenius power sums and place counts -----------------------------------

def frobenius_power_sum(t, q, r):
    """S_r = alpha^r + conj(alpha)^r with S_1 = -t, by the linear recurrence."""
    if r < 0:
        raise ValueError("r must be non-negative")
    prev, cur = 2, -t
    if r == 0:
        return prev
    for _ in range(r - 1):
        prev, cur = cur, -t * cur - q * prev
    return cur


def frobenius_power_sum_closed(t, q, r):
    """Closed-form S_r (r >= 1) as a sum over i <= r/2."""
    if r < 1:
        raise ValueError("closed form needs r >= 1")
    total = 0
    for i in range(r // 2 + 1):
        num = math.factorial(r - i - 1) * r
        den = math.factorial(r - 2 * i) * math.factorial(i)
        if num % den:
            raise ArithmeticError(f"non-integral coefficient at r={r}, i={i}")
        total += (-1) ** (r - i) * (num // den) * t ** (r - 2 * i) * q**i
    return total


def mobius(d):
    factors = factorint(d)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def places_count_formula(q, t, d):
    """Number of degree-d places from the Mobius sum over S_r."""
    if d < 1:
        raise ValueError("d must be positive")
    total = sum(mobius(d // r) * (q**r + 1 - frobenius_power_sum(t, q, r))
                for r in range(1, d + 1) if d % r == 0)
    if total % d:
        raise ArithmeticError(f"B_{d} = {total}/{d} is not an integer")
    return total // d


def _field_degrees(ext):
    """Degree over F_q of every element of the big field, as an array."""
    big, q = ext.big, ext.base.q
    Q = big.q
    deg = np.full(Q, ext.d, dtype=np.int64)
    logs = big.log_table
    for k in sorted((k for k in range(1, ext.d + 1) if ext.d % k == 0), reverse=True):
        in_sub = logs % ((Q - 1) // (q**k - 1)) == 0
        deg[in_sub] = k
    deg[0] = 1
    return deg


def places_count_enumerate(curve, d):
    """Count Frobenius orbits of size exactly d among points over F_{q^d}."""
    ext = make_extension(curve.field, d)
    big = ext.big
    if big.residue_table is None:
        raise ValueError(f"F_{big.q} too large for point enumeration")
    E = curve.base_change(ext)
    xs = np.arange(big.q, dtype=np.int64)
    rhs = big.poly_eval_arr(E.cubic, xs)
    deg = _field_degrees(ext)
    full = 0
    zero = rhs == 0
    full += int(np.count_nonzero(zero & (deg == d)))
    sq = (rhs != 0) & big.residue_table[rhs]
    ys = big.exp_table[(big.log_table[rhs[sq]] // 2)]
    pdeg = np.lcm(deg[sq], deg[ys])
    full += 2 * int(np.count_nonzero(pdeg == d))
    if d == 1:
        full += 1      # the point at infinity
    if full % d:
        raise ArithmeticError("orbit count not divisible by d")
    return full // d


# -- reports -----------------------------------------------------------------

def bounds(q, t, d):
    lc = bound_lc(q, t, d)
    return {
        "balance": bound_balance(q, t, d),
        "balance_corollary": bound_balance_corollary(q, d),
        "correlation": bound_correlation(q, t, d),
        "correlation_corollary": bound_correlation_corollary(q, d),
        "lc": f"{lc.numerator}/{lc.denominator}",
        "lc_ceiling": lc_bound_ceiling(q, t, d),
    }


def analyze(sequences, p, n, t, d, mode="PAPER_FAITHFUL", include_zero_delay=True):
    """The JSON report: parameters, bounds, measurements, property checks."""
    seqs = np.asarray(getattr(sequences, "sequences", sequences), dtype=np.uint8)
    q = p**n
    N = q + 1 + t
    b = bounds(q, t, d)
    corr = family_correlation(seqs, include_zero_delay)
    bal = balance(seqs)
    lc = family_lc(seqs)
    distinct = len({row.tobytes() for row in seqs})
    checks = {
        "length": seqs.shape[1] == N,
        "balance_bound": bal.delta <= b["balance"],
        "auto_bound": corr.max_auto <= b["correlation"],
        "cross_nonzero_delay_bound": corr.max_cross_nonzero_delay <= b["correlation"],
        "lc_bound": lc.lc_min >= b["lc_ceiling"],
        "lc_cross_check": lc.cross_check,
    }
    return {
        "params": {"p": p, "n": n, "q": q, "t": t, "d": d, "N": N, "mode": str(mode)},
        "bounds": b,
        "measured": {
            "size": int(seqs.shape[0]),
            "delta": bal.delta,
            "max_auto": corr.max_auto,
            "max_cross": corr.max_cross,
            "max_cross_nonzero_delay": corr.max_cross_nonzero_delay,
            "cor": corr.cor,
            "lc_min": lc.lc_min,
        },
        "witnesses": corr.witnesses,
        "dedup": {"distinct_count": distinct},
        "checks": checks,
    }


def report_json(report):
    return json.dumps(report, sort_keys=True, indent=2)


TABLE_COLUMNS = ("Field Size", "Length", "Family Size", "Bound", "Actual")


def table_csv(rows):
    """CSV in the column order Field Size, Length, Family Size, Bound, Actual."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_COLUMNS)
    for r in rows:
        writer.writerow([r.get(c, "") if r.get(c) is not None else "" for c in TABLE_COLUMNS])
    return buf.getvalue()


def table_row(q, t, d, bound, actual=None):
    return {"Field Size": q, "Length": q + 1 + t, "Family Size": q ** (d - 1) - 1,
            "Bound": bound, "Actual": actual}
