"""Command-line front end.

Subcommands::

    wlkaf equalize --preset soft_circular --out results/
    wlkaf process  --preset random_process --out results/ --snr 50
    wlkaf selftest
    wlkaf list-presets

Run subcommands take exactly one of ``--preset``/``--config``, write
``<scenario>.csv`` (and PNG figures unless ``--no-figures``) into the
output directory, and support targeted overrides via ``--trials``,
``--samples``, ``--snr``, ``--seed``, ``--full`` and repeatable
``--set path.to.key=value`` assignments.

Exit codes: 0 success, 2 configuration error, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import apply_overrides, from_mapping, load_config, scale_defaults, to_mapping
from .errors import ConfigError, WlkafError
from .harness import run_experiment, steady_state_mse
from .presets import PRESET_NAMES, get_preset, preset_summary
from .selftest import run_selftest

__all__ = ["main", "entry", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlkaf",
        description="Widely-linear kernel adaptive filtering benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("equalize", "run a nonlinear channel equalization experiment"),
        ("process", "run the 2-D filtered random process experiment"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--preset", help=f"named preset ({', '.join(PRESET_NAMES)})")
        p.add_argument("--config", help="path to a YAML experiment config")
        p.add_argument("--out", default="results", help="output directory (default: results)")
        p.add_argument("--trials", type=int, help="override trial count")
        p.add_argument("--samples", type=int, help="override samples per trial")
        p.add_argument("--snr", type=float, help="override SNR in dB")
        p.add_argument("--seed", type=int, help="override the base seed")
        p.add_argument("--full", action="store_true", help="original full-scale trial/sample counts")
        p.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override any config field by dotted path (repeatable)",
        )
        p.add_argument("--no-figures", action="store_true", help="skip PNG rendering")

    sub.add_parser("selftest", help="run the filter-equivalence checks")
    sub.add_parser("list-presets", help="list named experiment presets")
    return parser


def _resolve_config(args):
    if (args.preset is None) == (args.config is None):
        raise ConfigError("supply exactly one of --preset or --config")
    if args.preset is not None:
        cfg = get_preset(args.preset, full=args.full)
    else:
        cfg = load_config(args.config)
    mapping = to_mapping(cfg)
    if args.config is not None and args.full:
        mapping["trials"], mapping["samples"] = scale_defaults(cfg.scenario, full=True)
    for key, value in (
        ("trials", args.trials),
        ("samples", args.samples),
        ("snr_db", args.snr),
        ("seed", args.seed),
    ):
        if value is not None:
            mapping[key] = value
    apply_overrides(mapping, args.set)
    return from_mapping(mapping)


def _cmd_run(args, want_process: bool) -> int:
    cfg = _resolve_config(args)
    if (cfg.scenario == "random_process") != want_process:
        expected = "process" if cfg.scenario == "random_process" else "equalize"
        raise ConfigError(
            f"scenario {cfg.scenario!r} belongs to the {expected!r} subcommand"
        )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    curves = run_experiment(cfg)

    from .report import render_figures, write_curves_csv

    written = [write_curves_csv(out_dir / f"{cfg.scenario}.csv", curves)]
    if not args.no_figures:
        written.extend(render_figures(out_dir, cfg.scenario, curves, title=cfg.scenario))
    for name, curve in curves.items():
        print(f"{name}: steady-state MSE (last 20%) = {steady_state_mse(curve, 0.2):.2f} dB")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_selftest() -> int:
    results = run_selftest()
    width = max(len(r.name) for r in results)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  max deviation {r.max_deviation:.3e}  tol {r.tolerance:.0e}  {status}")
        ok = ok and r.passed
    print("all checks passed" if ok else "CHECKS FAILED")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "equalize":
            return _cmd_run(args, want_process=False)
        if args.command == "process":
            return _cmd_run(args, want_process=True)
        if args.command == "selftest":
            return _cmd_selftest()
        for name in PRESET_NAMES:
            print(preset_summary(name))
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except WlkafError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
