"""One test per acceptance criterion, each printing a PASS/FAIL line."""

import time

import numpy as np

from ellseq import analysis as an
from ellseq import verify
from ellseq.cli import main
from ellseq.funcfield import PlaceKind
from ellseq.seqgen import build_family


def test_01_bound_tables(criterion):
    t0 = time.perf_counter()
    balance = [an.bound_balance_corollary(q, 2) for q in (81, 243, 729, 2187)]
    corr = [an.bound_correlation_corollary(q, 2) for q in (81, 243, 729, 2187)]
    trace = [an.bound_correlation(81, 9, 2), an.bound_correlation(243, 27, 2)]
    row729 = an.bound_correlation(729, 27, 2)
    elapsed = time.perf_counter() - t0
    ok = (balance == [56, 95, 164, 281] and corr == [94, 159, 274, 469] and trace == [103, 186]
          and row729 == 301 and elapsed < 1)
    criterion(1, "bound tables", ok,
              f"balance={balance} correlation={corr} trace={trace} q=729 row gives {row729} (table lists 251)")
    assert ok


def test_02_config_a(criterion):
    t0 = time.perf_counter()
    fam = build_family(3, 4, -1, 2)
    corr = an.family_correlation(fam)
    bal = an.balance(fam)
    lc = an.family_lc(fam)
    elapsed = time.perf_counter() - t0
    ok = (fam.N == 81 and fam.size == 80
          and bal.delta <= 56 and corr.max_auto <= 95 and corr.max_cross_nonzero_delay <= 95
          and lc.lc_min >= 1 and lc.cross_check and len(lc.per_sequence) == 80
          and bal.delta < an.bound_balance(81, -1, 2)
          and corr.max_cross_nonzero_delay < an.bound_correlation(81, -1, 2)
          and elapsed < 60)
    criterion(2, "Config A (q=81, t=-1, d=2)", ok,
              f"delta={bal.delta} max_auto={corr.max_auto} max_cross_nonzero_delay={corr.max_cross_nonzero_delay} "
              f"lc_min={lc.lc_min} {elapsed:.1f}s")
    assert ok


def test_03_config_b(criterion):
    t0 = time.perf_counter()
    fam = build_family(3, 4, 9, 2)
    corr = an.family_correlation(fam, include_zero_delay=False)
    audit = an.duplicate_audit(fam)
    elapsed = time.perf_counter() - t0
    ok = (fam.N == 91 and fam.size == 80
          and max(corr.max_auto, corr.max_cross_nonzero_delay) <= 103
          and audit["matches_square_scaling"] and audit["orbit_sizes"] == [(81 - 1) // 2]
          and corr.max_cross == 91 and elapsed < 60)
    criterion(3, "Config B (q=81, t=9, d=2)", ok,
              f"nonzero-delay cor={corr.cor} duplicate groups={audit['groups']} "
              f"orbit sizes={audit['orbit_sizes']} {elapsed:.1f}s")
    assert ok


def test_04_config_c(criterion):
    t0 = time.perf_counter()
    fam = build_family(3, 5, -1, 2)
    lc = an.family_lc(fam)
    bal = an.balance(fam)
    elapsed = time.perf_counter() - t0
    ok = lc.lc_min >= 3 and lc.cross_check and bal.delta <= 95 and elapsed < 600
    criterion(4, "Config C (q=243, t=-1, d=2)", ok, f"lc_min={lc.lc_min} delta={bal.delta} {elapsed:.1f}s")
    assert ok


def test_05_place_counts(criterion):
    t0 = time.perf_counter()
    check = verify.check_places((3, 5, 7, 9, 11, 13), (2, 3))
    elapsed = time.perf_counter() - t0
    ok = check.passed and elapsed < 300
    criterion(5, "place-count oracle", ok, f"{check.detail['comparisons']} comparisons {elapsed:.1f}s")
    assert ok


def test_06_serre_sweep(criterion):
    t0 = time.perf_counter()
    full = verify.check_serre_exhaustive((3, 5, 7, 9, 11, 13))
    sampled = verify.check_serre_sampled((25, 27, 49, 81), samples=1000, seed=0)
    elapsed = time.perf_counter() - t0
    ok = full.passed and sampled.passed and elapsed < 300
    criterion(6, "Serre-bound sweep", ok,
              f"exhaustive {full.detail['curves']} curves, sampled 4x1000 {elapsed:.1f}s")
    assert ok


def test_07_eta(criterion):
    t0 = time.perf_counter()
    check = verify.check_eta((3, 5, 7, 9, 27, 81))
    elapsed = time.perf_counter() - t0
    ok = check.passed and elapsed < 10
    criterion(7, "eta properties", ok, f"{elapsed:.2f}s")
    assert ok


def test_08_riemann_roch(criterion):
    t0 = time.perf_counter()
    configs = verify.rr_configs()
    check = verify.check_rr(configs)
    elapsed = time.perf_counter() - t0
    fields = {E.field.q for E, _ in configs}
    degrees = {P.d for _, P in configs}
    ok = (check.passed and len(configs) >= 20 and {P.kind for _, P in configs} == set(PlaceKind)
          and fields <= {5, 7, 9, 27, 81} and degrees <= {2, 3, 5} and elapsed < 300)
    criterion(8, "Riemann-Roch certification", ok,
              f"{len(configs)} configs, q in {sorted(fields)}, d in {sorted(degrees)} {elapsed:.1f}s")
    assert ok


def test_09_shift_covariance(criterion):
    t0 = time.perf_counter()
    check = verify.check_shift_covariance(build_family(3, 4, -1, 2), trials=50, seed=0)
    elapsed = time.perf_counter() - t0
    ok = check.passed and elapsed < 30
    criterion(9, "shift covariance", ok, f"50 trials {elapsed:.1f}s")
    assert ok


def test_10_determinism(criterion, tmp_path, capsys):
    paths = [tmp_path / "run1.txt", tmp_path / "run2.txt"]
    codes = [main(["generate", "--p", "3", "--n", "4", "--t", "-1", "--d", "2", "--out", str(p)]) for p in paths]
    capsys.readouterr()
    same = paths[0].read_bytes() == paths[1].read_bytes()
    kernels = verify.check_kernels(pairs=1000, seed=0)
    ok = codes == [0, 0] and same and kernels.passed
    criterion(10, "determinism and kernel agreement", ok,
              f"identical dumps={same} kernel disagreements={kernels.detail['disagreements']}")
    assert ok
