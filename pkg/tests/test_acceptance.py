"""Exit criteria. Each test appends one PASS/FAIL line to ``RESULTS``; the
lines are printed in the terminal summary (see conftest.py)."""
import time

import numpy as np
import pytest

from gaussep.channels import ChannelKind, amplifier, classical_noise, classify, phase_conjugate, pure_loss
from gaussep.separability import log_negativity
from gaussep.states import tmss
from gaussep.verify import (
    TrialConfig,
    check_input_independence,
    crosscheck_physicality,
    sweep_entanglement_ratio,
    verify_detf_zero,
    verify_proposition,
)

BAND = 1e-9
SEED = 42
RESULTS = []


def record(name, ok, detail):
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def test_c1_biconditional_two_mode():
    t0 = time.perf_counter()
    report = verify_proposition(TrialConfig(10_000, SEED, n_modes=2, boundary_exclusion=BAND))
    elapsed = time.perf_counter() - t0
    ok = report.passed and report.trials_run >= 10_000 and elapsed <= 60.0
    assert record("C1 two-mode biconditional", ok,
                  f"{report.trials_run} trials, {report.trials_excluded_boundary} excluded, "
                  f"{len(report.mismatches)} mismatches, {elapsed:.1f} s"), report.to_dict()["mismatches"][:3]


def test_c2_input_independence():
    report = check_input_independence(100, 100, SEED, boundary_exclusion=BAND)
    judged_channels = 100 - report.trials_excluded_boundary // 100
    ok = report.passed and report.trials_run >= 100 * 100 * 0.9 and judged_channels >= 90
    assert record("C2 input independence", ok,
                  f"{judged_channels} channels x 100 inputs, {len(report.mismatches)} violations"), report.mismatches[:3]


@pytest.mark.parametrize("n", [3, 4])
def test_c3_n_mode_clause(n):
    report = verify_proposition(TrialConfig(1000, SEED, n_modes=n, boundary_exclusion=BAND))
    ok = report.passed and report.trials_run >= 1000
    assert record(f"C3 N-mode clause (N={n})", ok,
                  f"{report.trials_run} trials, {report.trials_excluded_boundary} excluded, "
                  f"{len(report.mismatches)} mismatches"), report.mismatches[:3]


def test_c4_detf_zero_branch():
    report = verify_detf_zero(1000, SEED)
    ok = report.passed and report.trials_run >= 1000
    assert record("C4 det f = 0 branch", ok, f"{report.trials_run} trials, {len(report.mismatches)} violations")


def test_c5_physicality_oracles():
    report = crosscheck_physicality(10_000, SEED, boundary_exclusion=BAND)
    ok = report.passed and report.trials_run >= 10_000
    assert record("C5 physicality determinant vs PSD", ok,
                  f"{report.trials_run} matrices, {report.trials_excluded_boundary} excluded, "
                  f"{len(report.mismatches)} disagreements")


def test_c6_catalog_spot_values():
    failures = []
    for eta in np.round(np.arange(0.1, 1.0, 0.1), 10):
        v = classify(pure_loss(eta))
        if v.kind is not ChannelKind.PRESERVING or not np.isclose(v.margin, (1 - eta) ** 2 - (1 + eta) ** 2):
            failures.append(f"pure_loss({eta})")
    for n in [0.0, 0.5, 0.9, 0.999, 1.0, 1.001, 1.5, 3.0]:
        v = classify(classical_noise(n), BAND)
        expected_margin = 4 * n**2 - 4
        if v.separable_output != (n >= 1) or not np.isclose(v.margin, expected_margin):
            failures.append(f"classical_noise({n})")
    if classify(classical_noise(1.0), BAND).kind is not ChannelKind.BOUNDARY:
        failures.append("classical_noise(1) boundary")
    for gain in [1, 2, 5]:
        v = classify(phase_conjugate(gain))
        if v.kind is not ChannelKind.DISENTANGLING or not np.isclose(v.margin, (gain + 1) ** 2 - (1 - gain) ** 2):
            failures.append(f"phase_conjugate({gain})")
    for gain in [1.5, 2, 5]:
        v = classify(amplifier(gain))
        if v.kind is not ChannelKind.PRESERVING or not np.isclose(v.margin, (gain - 1) ** 2 - (gain + 1) ** 2):
            failures.append(f"amplifier({gain})")
    assert record("C6 catalog spot values", not failures, f"failures: {failures or 'none'}")


def test_c7_log_negativity_tmss_equals_2r():
    values = {r: log_negativity(tmss(r), 1) for r in (0.5, 1.0, 2.0)}
    errors = {r: abs(e - 2 * r) for r, e in values.items()}
    ok = all(err <= 1e-6 for err in errors.values())
    detail = ", ".join(f"E_N(tmss({r}))={values[r]:.6f} vs {2 * r}" for r in values)
    assert record("C7a log-negativity of tmss(r) = 2r", ok, detail)


def test_c7_sweep_ratio_not_constant():
    rows = sweep_entanglement_ratio(pure_loss(0.5), np.linspace(0.2, 2.0, 10))
    ratios = [row.ratio for row in rows]
    spread = max(ratios) - min(ratios)
    assert record("C7b pure_loss(0.5) ratio spread > 0.01", spread > 0.01, f"spread {spread:.4f}")


def test_c8_determinism():
    cfgs = [TrialConfig(2000, SEED, n_modes=2), TrialConfig(500, SEED, n_modes=3)]
    same = all(verify_proposition(c).to_json().encode() == verify_proposition(c).to_json().encode() for c in cfgs)
    same = same and crosscheck_physicality(1000, SEED).to_json() == crosscheck_physicality(1000, SEED).to_json()
    assert record("C8 byte-identical reports", same, "prop1 (N=2, N=3) and physicality campaigns repeated")
