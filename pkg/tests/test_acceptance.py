"""End-to-end acceptance suite.

One test per headline claim, each printing a single summary line with the
measured numbers next to the required bound.  The experiment-level tests
run the real benchmark presets at desk scale, so this file dominates the
suite's runtime (a few minutes on one core).
"""

import dataclasses
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from wlkaf.errors import KernelOverflowError
from wlkaf.harness import run_experiment, samples_to_reach, steady_state_mse
from wlkaf.kernels import eval_complex_gaussian, eval_real_gaussian
from wlkaf.presets import get_preset
from wlkaf.selftest import (
    check_acklms_as_gcklms,
    check_acklms_forms,
    check_cklms2_reduction,
    check_oracle_equivalence,
)
from wlkaf.signals import add_awgn, gaussian_source

TAIL = 0.2


def report(n, ok, detail):
    line = f"[criterion {n}] {'PASS' if ok else 'FAIL'} - {detail}"
    print(line)
    return line


@pytest.fixture(scope="module")
def soft_circular_run():
    cfg = get_preset("soft_circular")
    t0 = time.perf_counter()
    curves = run_experiment(cfg)
    return curves, time.perf_counter() - t0


@pytest.fixture(scope="module")
def process_runs():
    base = get_preset("random_process")
    t0 = time.perf_counter()
    out = {}
    for snr in (50.0, 15.0):
        cfg = dataclasses.replace(base, snr_db=snr)
        out[snr] = run_experiment(cfg)
    return out, time.perf_counter() - t0


def test_criterion_1_composite_oracle():
    t0 = time.perf_counter()
    r = check_oracle_equivalence(steps=1000, dim=5)
    elapsed = time.perf_counter() - t0
    ok = r.max_deviation <= 1e-10 and elapsed < 5.0
    line = report(1, ok, f"gcklms vs composite oracle max dev {r.max_deviation:.3e} "
                         f"(tol 1e-10), {elapsed:.1f}s (< 5s)")
    assert ok, line


def test_criterion_2_table_reductions():
    t0 = time.perf_counter()
    checks = {
        "cklms2": check_cklms2_reduction(steps=500),
        "acklms-as-gcklms": check_acklms_as_gcklms(steps=500),
        "acklms-two-forms": check_acklms_forms(steps=500),
    }
    elapsed = time.perf_counter() - t0
    devs = {k: c.max_deviation for k, c in checks.items()}
    ok = all(d <= 1e-12 for d in devs.values()) and elapsed < 5.0
    detail = ", ".join(f"{k} {d:.2e}" for k, d in devs.items())
    line = report(2, ok, f"reductions (tol 1e-12): {detail}; {elapsed:.1f}s (< 5s total)")
    assert ok, line


def test_criterion_3_kernel_hand_values():
    checks = [
        ("real gaussian", eval_real_gaussian([1 + 1j], [0], math.sqrt(2)), math.exp(-1)),
        ("complex gaussian off-diag", eval_complex_gaussian([1j], [0], 1.0), math.e),
        ("complex gaussian diagonal", eval_complex_gaussian([1j], [1j], 1.0), math.exp(4)),
    ]
    devs = [abs(got - expect) for _, got, expect in checks]
    overflow_raised = False
    try:
        # 4*Im^2/gamma^2 = 707.56 > 700
        eval_complex_gaussian([13.3j], [13.3j], 1.0)
    except KernelOverflowError:
        overflow_raised = True
    ok = max(devs) <= 1e-9 and overflow_raised
    line = report(3, ok, f"hand values max dev {max(devs):.2e} (tol 1e-9), "
                         f"overflow error raised: {overflow_raised}")
    assert ok, line


def test_criterion_4_soft_circular_ordering(soft_circular_run):
    curves, elapsed = soft_circular_run
    ss = {name: steady_state_mse(c, TAIL) for name, c in curves.items()}
    floor = min(ss["cklms2"], ss["acklms_cg"]) + 0.5
    chain_ok = ss["gcklms"] <= ss["acklms_rg"] <= floor
    drops = {}
    for name, c in curves.items():
        head = float(np.mean(c.mse_db[:100]))
        drops[name] = head - ss[name]
    descent_ok = all(d >= 5.0 for d in drops.values())
    time_ok = elapsed < 180.0
    ok = chain_ok and descent_ok and time_ok
    detail = (
        f"steady-state dB gcklms {ss['gcklms']:.2f} <= acklms_rg {ss['acklms_rg']:.2f} "
        f"<= min+0.5 {floor:.2f}: {chain_ok}; descent>=5dB "
        + ", ".join(f"{k} {v:.2f}" for k, v in drops.items())
        + f": {descent_ok}; {elapsed:.0f}s (< 180s)"
    )
    line = report(4, ok, detail)
    assert ok, line


def test_criterion_5_convergence_saving(soft_circular_run):
    curves, _ = soft_circular_run
    pairs = [(curves["gcklms"], curves["acklms_rg"])]
    base = get_preset("soft_circular")
    two_arms = tuple(a for a in base.arms if a.name in ("gcklms", "acklms_rg"))
    for seed in (1235, 1236, 1237, 1238):
        cfg = dataclasses.replace(base, arms=two_arms, base_seed=seed)
        extra = run_experiment(cfg)
        pairs.append((extra["gcklms"], extra["acklms_rg"]))
    n_g, n_a = [], []
    for g_curve, a_curve in pairs:
        level = steady_state_mse(a_curve, TAIL)
        g_n = samples_to_reach(g_curve, level)
        a_n = samples_to_reach(a_curve, level)
        assert g_n is not None and a_n is not None
        n_g.append(g_n)
        n_a.append(a_n)
    ratio = float(np.mean(n_g)) / float(np.mean(n_a))
    ok = ratio <= 0.9
    line = report(5, ok, f"samples to ACKLMS-realGauss level over 5 seeds: "
                         f"gcklms {n_g}, acklms_rg {n_a}, mean ratio {ratio:.3f} (<= 0.9)")
    assert ok, line


def test_criterion_6_binary_components():
    cfg = get_preset("soft_binary")
    t0 = time.perf_counter()
    curves = run_experiment(cfg)
    elapsed = time.perf_counter() - t0
    sweep = [n for n in curves if n.startswith("acklms_rg")]
    re_db = {n: steady_state_mse(curves[n], TAIL, component="re") for n in sweep}
    im_db = {n: steady_state_mse(curves[n], TAIL, component="im") for n in sweep}
    tot_db = {n: steady_state_mse(curves[n], TAIL) for n in sweep}
    best_re = min(re_db, key=re_db.get)
    best_im = min(im_db, key=im_db.get)
    split_ok = best_re != best_im
    g_re = steady_state_mse(curves["gcklms"], TAIL, component="re")
    g_im = steady_state_mse(curves["gcklms"], TAIL, component="im")
    g_tot = steady_state_mse(curves["gcklms"], TAIL)
    within_ok = g_re <= re_db[best_re] + 1.0 and g_im <= im_db[best_im] + 1.0
    combined_ok = g_tot < min(tot_db.values())
    time_ok = elapsed < 180.0
    ok = split_ok and within_ok and combined_ok and time_ok
    detail = (
        f"best re arm {best_re} ({re_db[best_re]:.2f} dB) vs best im arm {best_im} "
        f"({im_db[best_im]:.2f} dB), split: {split_ok}; gcklms re {g_re:.2f}/im {g_im:.2f} "
        f"within 1 dB: {within_ok}; combined {g_tot:.2f} < {min(tot_db.values()):.2f}: "
        f"{combined_ok}; {elapsed:.0f}s (< 180s)"
    )
    line = report(6, ok, detail)
    assert ok, line


def test_criterion_7_process_ordering(process_runs):
    runs, elapsed = process_runs
    hi = {n: steady_state_mse(c, TAIL) for n, c in runs[50.0].items()}
    lo = {n: steady_state_mse(c, TAIL) for n, c in runs[15.0].items()}
    gap_v = hi["gcklms_v0"] - hi["gcklms_v009"]
    gap_a = hi["acklms_rg"] - hi["gcklms_v0"]
    hi_ok = gap_v >= 0.5 and gap_a >= 0.5
    lo_gaps = (lo["gcklms_v0"] - lo["gcklms_v009"], lo["acklms_rg"] - lo["gcklms_v009"])
    lo_ok = all(g >= 0.0 for g in lo_gaps)
    time_ok = elapsed < 300.0
    ok = hi_ok and lo_ok and time_ok
    detail = (
        f"SNR50 dB v009 {hi['gcklms_v009']:.2f}, v0 {hi['gcklms_v0']:.2f}, "
        f"acklms {hi['acklms_rg']:.2f}; gaps {gap_v:.3f}/{gap_a:.3f} (>= 0.5): {hi_ok}; "
        f"SNR15 gaps {lo_gaps[0]:.3f}/{lo_gaps[1]:.3f} (>= 0): {lo_ok}; "
        f"{elapsed:.0f}s (< 300s)"
    )
    line = report(7, ok, detail)
    assert ok, line


def test_criterion_8_statistical_generators():
    s = gaussian_source("circular_gaussian", 1 / math.sqrt(2), 1_000_000, seed=800)
    var_devs = (abs(s.real.var() - 0.245) / 0.245, abs(s.imag.var() - 0.245) / 0.245)
    nc = gaussian_source("noncircular_gaussian", 0.1, 1_000_000, seed=801)
    target = 0.01 / 0.99
    ratio_dev = abs(nc.imag.var() / nc.real.var() - target) / target
    q = gaussian_source("circular_gaussian", 1 / math.sqrt(2), 1_000_000, seed=802)
    noisy = add_awgn(q, 15.0, seed=803)
    noise = noisy - q
    realized = 10 * np.log10(np.mean(np.abs(q) ** 2) / np.mean(np.abs(noise) ** 2))
    snr_dev = abs(realized - 15.0)
    circ_dev = abs(noise.real.var() / noise.imag.var() - 1.0)
    ok = (
        max(var_devs) < 0.03
        and ratio_dev < 0.05
        and snr_dev < 0.1
        and circ_dev < 0.02
    )
    line = report(8, ok, f"circular var devs {var_devs[0]:.4f}/{var_devs[1]:.4f} (< 3%), "
                         f"im/re ratio dev {ratio_dev:.4f} (< 5%), realized SNR off by "
                         f"{snr_dev:.4f} dB (< 0.1), noise circularity dev {circ_dev:.4f} (< 2%)")
    assert ok, line


def test_criterion_9_cli_determinism(tmp_path):
    argv = [
        sys.executable, "-m", "wlkaf", "equalize", "--preset", "soft_binary",
        "--trials", "2", "--samples", "250", "--seed", "77", "--no-figures",
    ]
    for sub in ("a", "b"):
        proc = subprocess.run(
            argv + ["--out", str(tmp_path / sub)],
            capture_output=True, text=True, timeout=300,
        )
        assert proc.returncode == 0, proc.stderr
    data_a = (tmp_path / "a" / "soft_binary.csv").read_bytes()
    data_b = (tmp_path / "b" / "soft_binary.csv").read_bytes()
    ok = data_a == data_b
    line = report(9, ok, f"two CLI runs, identical bytes: {ok} ({len(data_a)} bytes)")
    assert ok, line
