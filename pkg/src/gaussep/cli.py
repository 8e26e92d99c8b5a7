"""``gaussep`` command line.

Exit codes: 0 success (classify: Preserving), 1 verification failed,
2 Disentangling, 3 Boundary, 64 usage, 65 malformed file, 66 invalid
channel, 67 mode out of range.
"""
import argparse
import json
import sys
import warnings

import numpy as np

from gaussep import channels as chmod
from gaussep.channels import ChannelError, ChannelKind, apply_one_sided, classify
from gaussep.files import MalformedFile, load_channel, load_state, save_channel, save_state
from gaussep.separability import log_negativity, physical_determinant_form, ppt_separable, two_mode_separable
from gaussep.states import tmss, vacuum
from gaussep.symplectic import is_physical, physicality_margin
from gaussep.verify import (
    DegenerateSweepWarning,
    TrialConfig,
    check_input_independence,
    crosscheck_physicality,
    sweep_entanglement_ratio,
    verify_detf_zero,
    verify_proposition,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DISENTANGLING = 2
EXIT_BOUNDARY = 3
EXIT_USAGE = 64
EXIT_MALFORMED = 65
EXIT_INVALID_CHANNEL = 66
EXIT_BAD_MODE = 67

KIND_EXIT = {
    ChannelKind.PRESERVING: EXIT_OK,
    ChannelKind.DISENTANGLING: EXIT_DISENTANGLING,
    ChannelKind.BOUNDARY: EXIT_BOUNDARY,
}

DEFAULT_R_GRID = "0.2,0.4,0.6,0.8,1.0,1.2,1.4,1.6,1.8,2.0"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x):
    """12 significant digits."""
    return format(float(x), ".12g")


def _num(x):
    return float(fmt(x))


def _emit(record):
    print(json.dumps(record, indent=2, sort_keys=True))


def _mode_or_default(mode, n_modes):
    if mode is None:
        return n_modes - 1
    if not 0 <= mode < n_modes:
        raise IndexError(f"mode {mode} out of range for {n_modes} modes")
    return mode


def cmd_classify(args):
    ch = load_channel(args.channel, validate=not args.allow_invalid)
    verdict = classify(ch)
    record = {
        "kind": verdict.kind.value,
        "margin": _num(verdict.margin),
        "det_f": _num(ch.det_f),
        "det_g": _num(ch.det_g),
        "physicality_margin": _num(ch.physicality_margin()),
    }
    if args.allow_invalid:
        try:
            chmod.make_channel(ch.f, ch.g)
            record["valid"] = True
        except ChannelError as exc:
            record["valid"] = False
            record["error"] = str(exc)
            _emit(record)
            return EXIT_INVALID_CHANNEL
    _emit(record)
    return KIND_EXIT[verdict.kind]


def _state_report(cm, mode):
    cm_arr = np.asarray(cm)
    n = cm_arr.shape[0] // 2
    physical = is_physical(cm)
    record = {"n_modes": n, "physical": bool(physical), "physicality_margin": _num(physicality_margin(cm))}
    if n == 2:
        det_ok, det_slack = physical_determinant_form(cm)
        record["physical_determinant_form"] = det_ok
    if not physical:
        return record
    if n == 2:
        v = two_mode_separable(cm)
        record["separable_determinant_form"] = bool(v.separable)
        record["determinant_margin"] = _num(v.margin)
    if mode is not None or n > 2:
        m = _mode_or_default(mode, n)
        v = ppt_separable(cm, m)
        record["ppt_mode"] = m
        record["separable_ppt"] = bool(v.separable)
        record["ppt_margin"] = _num(v.margin)
    m = _mode_or_default(mode, n)
    record["log_negativity"] = _num(log_negativity(cm, m))
    record["separable"] = record.get("separable_determinant_form", record.get("separable_ppt"))
    return record


def cmd_check(args):
    cm = load_state(args.state)
    _mode_or_default(args.mode, cm.n_modes)
    _emit(_state_report(cm, args.mode))
    return EXIT_OK


def cmd_evolve(args):
    cm = load_state(args.state)
    ch = load_channel(args.channel)
    mode = _mode_or_default(args.mode, cm.n_modes)
    out = apply_one_sided(cm, ch, mode)
    save_state(out, args.out)
    record = _state_report(out, mode)
    record["channel_kind"] = classify(ch).kind.value
    record["output"] = args.out
    _emit(record)
    return EXIT_OK


def cmd_verify(args):
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.campaign == "prop1":
        if not 2 <= args.modes <= 6:
            raise UsageError("--modes must be in 2..6")
        cfg = TrialConfig(args.trials, args.seed, n_modes=args.modes, channel_filter=args.channel_filter,
                          mixed_inputs=args.mixed_inputs)
        report = verify_proposition(cfg)
    elif args.campaign == "detf0":
        report = verify_detf_zero(args.trials, args.seed, n_modes=args.modes)
    elif args.campaign == "independence":
        report = check_input_independence(args.trials, args.inputs, args.seed, n_modes=args.modes)
    else:
        report = crosscheck_physicality(args.trials, args.seed)
    text = report.to_json()
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(
        f"{report.campaign}: {report.trials_run} trials, {report.trials_excluded_boundary} excluded, "
        f"{len(report.mismatches)} mismatches -> {'PASS' if report.passed else 'FAIL'}",
        file=sys.stderr,
    )
    if report.exploratory:
        print("exploratory campaign (mixed inputs): mismatches are not a failure", file=sys.stderr)
        return EXIT_OK
    return EXIT_OK if report.passed else EXIT_FAIL


def _parse_grid(text):
    try:
        grid = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --r-grid: {exc}") from exc
    if not grid or any(not r > 0 for r in grid):
        raise UsageError("--r-grid values must be positive")
    return grid


def cmd_sweep(args):
    grid = _parse_grid(args.r_grid)
    ch = load_channel(args.channel)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateSweepWarning)
        rows = sweep_entanglement_ratio(ch, grid)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    lines = ["r,E_in,E_out,ratio"] + [f"{fmt(r.r)},{fmt(r.e_in)},{fmt(r.e_out)},{fmt(r.ratio)}" for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_state(args):
    if args.family == "tmss":
        if args.r is None or args.r < 0:
            raise UsageError("tmss needs --r >= 0")
        cm = tmss(args.r)
    else:
        if args.modes < 1:
            raise UsageError("--modes must be >= 1")
        cm = vacuum(args.modes)
    save_state(cm, args.out)
    return EXIT_OK


def cmd_channel(args):
    ctor = chmod.CATALOG[args.family]
    try:
        ch = ctor() if args.param is None else ctor(args.param)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    save_channel(ch, args.out)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="gaussep", description="Separability of Gaussian states under one-sided Gaussian channels.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify a channel file")
    c.add_argument("channel")
    c.add_argument("--allow-invalid", action="store_true", help="report on channels that fail validation")
    c.set_defaults(func=cmd_classify)

    e = sub.add_parser("evolve", help="apply a channel to one mode of a state")
    e.add_argument("state")
    e.add_argument("channel")
    e.add_argument("--mode", type=int, default=None, help="0-based mode index (default: last mode)")
    e.add_argument("-o", "--out", required=True)
    e.set_defaults(func=cmd_evolve)

    k = sub.add_parser("check", help="physicality, separability and log-negativity of a state")
    k.add_argument("state")
    k.add_argument("--mode", type=int, default=None)
    k.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", help="run a randomised verification campaign")
    v.add_argument("--campaign", choices=["prop1", "detf0", "physicality", "independence"], default="prop1")
    v.add_argument("--trials", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--modes", type=int, default=2)
    v.add_argument("--inputs", type=int, default=100, help="inputs per channel (independence campaign)")
    v.add_argument("--channel-filter", choices=["any", "preserving", "disentangling"], default="any")
    v.add_argument("--mixed-inputs", action="store_true", help="exploratory: thermally broadened inputs")
    v.add_argument("-o", "--out", default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", help="log-negativity ratio sweep over tmss(r)")
    s.add_argument("channel")
    s.add_argument("--r-grid", default=DEFAULT_R_GRID)
    s.add_argument("-o", "--out", default=None)
    s.set_defaults(func=cmd_sweep)

    st = sub.add_parser("state", help="write a state file")
    st.add_argument("family", choices=["tmss", "vacuum"])
    st.add_argument("--r", type=float, default=None)
    st.add_argument("--modes", type=int, default=2)
    st.add_argument("-o", "--out", required=True)
    st.set_defaults(func=cmd_state)

    ch = sub.add_parser("channel", help="write a catalog channel file")
    ch.add_argument("family", choices=sorted(chmod.CATALOG))
    ch.add_argument("--param", type=float, default=None, help="eta, gain or n depending on the family")
    ch.add_argument("-o", "--out", required=True)
    ch.set_defaults(func=cmd_channel)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gaussep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedFile as exc:
        print(f"gaussep: malformed file: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ChannelError as exc:
        print(f"gaussep: invalid channel: {exc}", file=sys.stderr)
        return EXIT_INVALID_CHANNEL
    except IndexError as exc:
        print(f"gaussep: {exc}", file=sys.stderr)
        return EXIT_BAD_MODE


if __name__ == "__main__":
    sys.exit(main())
