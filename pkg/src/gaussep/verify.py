"""Randomised campaigns that check the channel separability criterion
against independent separability oracles evaluated on evolved states.

Every trial draws from its own generator, seeded by ``(seed, trial_index)``
through :class:`numpy.random.SeedSequence`, so results do not depend on the
order in which trials are evaluated.
"""
import json
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from gaussep import kernels
from gaussep.channels import (
    BOUNDARY_TOL,
    ChannelKind,
    apply_one_sided,
    channel_margin_scale,
    classify,
    random_channel,
    random_rank_deficient_channel,
)
from gaussep.separability import _physical_det_batch, determinant_margins, log_negativity, ppt_margins
from gaussep.states import random_pure_state, sample_pure_spec, tmss
from gaussep.symplectic import (
    direct_sum,
    layered_symplectic,
    one_mode_symplectic,
    sample_layered_params,
    symplectic_form,
)

CHANNEL_FILTERS = ("any", "preserving", "disentangling")


class DegenerateSweepWarning(UserWarning):
    """Sweep over a channel whose outputs are all separable."""


@dataclass(frozen=True)
class TrialConfig:
    n_trials: int
    seed: int
    n_modes: int = 2
    r_range: tuple = (0.1, 2.0)
    boundary_exclusion: float = BOUNDARY_TOL
    tol: float = BOUNDARY_TOL
    channel_filter: str = "any"
    mixed_inputs: bool = False

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if not 2 <= self.n_modes <= 6:
            raise ValueError("n_modes must be in 2..6")
        lo, hi = self.r_range
        if not 0 < lo <= hi:
            raise ValueError("r_range must lie in (0, inf)")
        if self.channel_filter not in CHANNEL_FILTERS:
            raise ValueError(f"channel_filter must be one of {CHANNEL_FILTERS}")
        object.__setattr__(self, "r_range", (float(lo), float(hi)))


@dataclass
class VerificationReport:
    campaign: str
    config: dict
    trials_run: int = 0
    trials_excluded_boundary: int = 0
    mismatches: list = field(default_factory=list)
    exploratory: bool = False
    outcomes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.mismatches

    def to_dict(self):
        d = asdict(self)
        d["pass"] = self.passed
        d["mismatches"] = sorted(self.mismatches, key=lambda m: m["trial"])
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def trial_rng(seed, *key):
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key)))


def _channel_record(ch):
    return {"f": ch.f.tolist(), "g": ch.g.tolist()}


def _draw_channel(rng, channel_filter, tol):
    while True:
        ch = random_channel(rng, tol)
        if channel_filter == "any":
            return ch
        kind = classify(ch, tol).kind
        if channel_filter == "preserving" and kind is ChannelKind.PRESERVING:
            return ch
        if channel_filter == "disentangling" and kind is ChannelKind.DISENTANGLING:
            return ch


def _mixed_input(spec, rng):
    """Exploratory: the pure construction applied to a thermally broadened TMSS."""
    nu = rng.uniform(1.0, 1.5)
    if spec.n_modes == 2:
        core = nu * np.asarray(tmss(spec.squeeze_r))
        s = direct_sum(*(one_mode_symplectic(*op).data for op in spec.local_ops))
    else:
        core = direct_sum(0.5 * np.eye(2 * (spec.n_modes - 2)), nu * np.asarray(tmss(spec.squeeze_r)))
        s = direct_sum(layered_symplectic(spec.n_modes - 1, spec.global_mixer).data,
                       one_mode_symplectic(*spec.local_ops[0]).data)
    return s @ core @ s.T


def _evolve_and_judge(cms, fs, gs, n_modes):
    """Evolve each CM through its channel on mode B (last) and return the
    oracle margin (positive = entangled) with its scale."""
    out = kernels.apply_one_sided_batch(np.asarray(cms), np.asarray(fs), np.asarray(gs), n_modes - 1)
    if n_modes == 2:
        sep, _, scale = determinant_margins(out)
        return sep, scale
    return ppt_margins(out, n_modes - 1)


def _channel_margins(fs, gs):
    fs, gs = np.asarray(fs), np.asarray(gs)
    df, dg = np.linalg.det(fs), np.linalg.det(gs)
    return 4 * dg - (df + 1) ** 2, channel_margin_scale(df, dg)


def verify_proposition(cfg):
    """Compare the channel criterion with the oracle verdict on the output
    of a random pure entangled input, one fresh (channel, input) per trial."""
    report = VerificationReport("prop1", asdict(cfg), exploratory=cfg.mixed_inputs)
    channels, specs, cms = [], [], []
    for i in range(cfg.n_trials):
        rng = trial_rng(cfg.seed, i)
        ch = _draw_channel(rng, cfg.channel_filter, cfg.tol)
        spec = sample_pure_spec(rng, cfg.n_modes, cfg.r_range)
        cm = _mixed_input(spec, rng) if cfg.mixed_inputs else np.asarray(random_pure_state(spec))
        channels.append(ch)
        specs.append(spec)
        cms.append(cm)
    fs = [ch.f for ch in channels]
    gs = [ch.g for ch in channels]
    ch_margin, ch_scale = _channel_margins(fs, gs)
    st_margin, st_scale = _evolve_and_judge(cms, fs, gs, cfg.n_modes)
    band = cfg.boundary_exclusion
    # Separable outputs of N > 2 inputs sit exactly on the PPT boundary (the
    # vacuum modes keep PT eigenvalues of 1/2), so the state margin is judged
    # with the band rather than excluded by it.
    excluded = np.abs(ch_margin) <= band * ch_scale
    predicted_sep = ch_margin > 0
    oracle_sep = st_margin <= band * st_scale
    report.trials_run = cfg.n_trials
    report.trials_excluded_boundary = int(excluded.sum())
    report.outcomes = {
        "separable": int((oracle_sep & ~excluded).sum()),
        "entangled": int((~oracle_sep & ~excluded).sum()),
    }
    for i in np.flatnonzero(~excluded & (predicted_sep != oracle_sep)):
        report.mismatches.append(
            {
                "trial": int(i),
                "channel": _channel_record(channels[i]),
                "state": specs[i].as_dict(),
                "predicted_separable": bool(predicted_sep[i]),
                "oracle_separable": bool(oracle_sep[i]),
                "channel_margin": float(ch_margin[i]),
                "state_margin": float(st_margin[i]),
            }
        )
    return report


def verify_detf_zero(n_trials, seed, n_modes=2, r_range=(0.1, 2.0), tol=BOUNDARY_TOL):
    """Channels with ``det f = 0`` must output separable states for every
    pure entangled input."""
    cfg = {"n_trials": n_trials, "seed": seed, "n_modes": n_modes, "r_range": list(r_range), "tol": tol}
    report = VerificationReport("detf0", cfg)
    channels, specs, cms = [], [], []
    for i in range(n_trials):
        rng = trial_rng(seed, i)
        channels.append(random_rank_deficient_channel(rng, tol))
        specs.append(sample_pure_spec(rng, n_modes, r_range))
        cms.append(np.asarray(random_pure_state(specs[-1])))
    fs = [ch.f for ch in channels]
    gs = [ch.g for ch in channels]
    st_margin, st_scale = _evolve_and_judge(cms, fs, gs, n_modes)
    report.trials_run = n_trials
    for i in range(n_trials):
        det_f = channels[i].det_f
        if st_margin[i] > tol * st_scale[i] or abs(det_f) >= 1e-12:
            report.mismatches.append(
                {
                    "trial": i,
                    "channel": _channel_record(channels[i]),
                    "state": specs[i].as_dict(),
                    "det_f": det_f,
                    "state_margin": float(st_margin[i]),
                }
            )
    return report


def check_input_independence(n_channels, n_inputs, seed, n_modes=2, r_range=(0.1, 2.0),
                             boundary_exclusion=BOUNDARY_TOL):
    """For each random channel, judge ``n_inputs`` random pure entangled inputs
    and require one verdict for all of them, then compare that verdict
    with the channel criterion."""
    cfg = {"n_channels": n_channels, "n_inputs": n_inputs, "seed": seed, "n_modes": n_modes,
           "r_range": list(r_range), "boundary_exclusion": boundary_exclusion}
    report = VerificationReport("independence", cfg)
    band = boundary_exclusion
    for c in range(n_channels):
        ch = random_channel(trial_rng(seed, c))
        verdict = classify(ch, band)
        if verdict.kind is ChannelKind.BOUNDARY:
            report.trials_excluded_boundary += n_inputs
            continue
        cms = [np.asarray(random_pure_state(sample_pure_spec(trial_rng(seed, c, j), n_modes, r_range)))
               for j in range(n_inputs)]
        fs = np.broadcast_to(ch.f, (n_inputs, 2, 2))
        gs = np.broadcast_to(ch.g, (n_inputs, 2, 2))
        margin, scale = _evolve_and_judge(cms, fs, gs, n_modes)
        report.trials_run += n_inputs
        n_sep = int((margin <= band * scale).sum())
        n_ent = n_inputs - n_sep
        constant = n_sep == 0 or n_ent == 0
        agrees = (n_ent == 0) == verdict.separable_output
        if not (constant and agrees):
            report.mismatches.append(
                {
                    "trial": c,
                    "channel": _channel_record(ch),
                    "channel_kind": verdict.kind.value,
                    "channel_margin": verdict.margin,
                    "separable_outputs": n_sep,
                    "entangled_outputs": n_ent,
                    "constant": constant,
                }
            )
    return report


def _random_two_mode_matrix(rng):
    kind = int(rng.integers(5))
    if kind == 0:
        # physical: symplectic image of a thermal product
        nus = rng.uniform(0.5, 2.0, size=2)
        s = layered_symplectic(2, sample_layered_params(2, rng)).data
        return s @ np.diag(np.repeat(nus, 2)) @ s.T
    if kind == 1:
        # shrunk physical state, straddles the boundary
        nus = rng.uniform(0.5, 1.0, size=2)
        s = layered_symplectic(2, sample_layered_params(2, rng)).data
        return rng.uniform(0.3, 1.2) * (s @ np.diag(np.repeat(nus, 2)) @ s.T)
    if kind == 2:
        # TMSS-like family: Eq.-style determinant test alone misjudges over-squeezed members
        a = rng.uniform(0.1, 2.0)
        c = rng.uniform(-1.0, 1.0) * a * rng.uniform(0.5, 1.2)
        b = rng.uniform(0.1, 2.0)
        return np.block([[a * np.eye(2), c * np.diag([1.0, -1.0])], [c * np.diag([1.0, -1.0]), b * np.eye(2)]])
    if kind == 3:
        # positive definite Wishart draw, random overall scale
        x = rng.normal(size=(4, 6))
        return rng.uniform(0.05, 1.0) * (x @ x.T)
    x = rng.normal(size=(4, 4))
    return x + x.T


def crosscheck_physicality(n_trials, seed, boundary_exclusion=BOUNDARY_TOL):
    """Determinant-form physicality vs the PSD form on random symmetric 4x4s."""
    cfg = {"n_trials": n_trials, "seed": seed, "boundary_exclusion": boundary_exclusion}
    report = VerificationReport("physicality", cfg)
    mats = np.array([_random_two_mode_matrix(trial_rng(seed, i)) for i in range(n_trials)])
    mats = 0.5 * (mats + np.swapaxes(mats, 1, 2))
    psd_margin = np.linalg.eigvalsh(mats + 0.5j * symplectic_form(2))[:, 0]
    psd_scale = np.maximum(1.0, np.max(np.abs(mats), axis=(1, 2)))
    det_ok, det_slack = _physical_det_batch(mats, 0.0)
    band = boundary_exclusion
    excluded = (np.abs(psd_margin) <= band * psd_scale) | (np.abs(det_slack) <= band)
    psd_ok = psd_margin >= 0
    report.trials_run = n_trials
    report.trials_excluded_boundary = int(excluded.sum())
    for i in np.flatnonzero(~excluded & (psd_ok != det_ok)):
        report.mismatches.append(
            {
                "trial": int(i),
                "matrix": mats[i].tolist(),
                "psd_physical": bool(psd_ok[i]),
                "determinant_physical": bool(det_ok[i]),
                "psd_margin": float(psd_margin[i]),
                "determinant_slack": float(det_slack[i]),
            }
        )
    return report


@dataclass(frozen=True)
class SweepRow:
    r: float
    e_in: float
    e_out: float
    ratio: float


def sweep_entanglement_ratio(ch, r_grid):
    """Log-negativity of ``tmss(r)`` before and after ``ch`` on mode B.

    A constant ``ratio`` column would be required for the output entanglement
    to factor as (channel term) x (input entanglement).
    """
    r_grid = [float(r) for r in r_grid]
    if any(not r > 0 for r in r_grid):
        raise ValueError("r_grid must be positive")
    if classify(ch).separable_output:
        warnings.warn("channel disentangles every pure input; E_out is identically zero",
                      DegenerateSweepWarning, stacklevel=2)
    rows = []
    for r in r_grid:
        state = tmss(r)
        e_in = log_negativity(state, 1)
        e_out = log_negativity(apply_one_sided(state, ch, 1), 1)
        rows.append(SweepRow(r, e_in, e_out, e_out / e_in))
    return rows
