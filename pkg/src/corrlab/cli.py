"""``corrlab`` command line: run presets, validate configs, report oracle gaps.

Exit status is 0 on success, 1 on a configuration error and 2 on a numeric
failure (non-PSD correlation, quadrature non-convergence).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .correlation import ENGINES
from .errors import ConfigError, CorrlabError
from .harness import default_config_path, emit_results, format_rows, load_presets, oracle_gap
from .harness import run_experiment

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2


def _selected(args):
    presets = load_presets(args.config)
    if args.preset is None:
        return list(presets.values())
    if args.preset not in presets:
        raise ConfigError(f"preset {args.preset!r} not in {args.config}", field="preset")
    return [presets[args.preset]]


def _write(rows, args):
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and Path(args.out).suffix == ".json" else "csv"
    if args.out:
        emit_results(rows, fmt, args.out)
    else:
        sys.stdout.write(format_rows(rows, fmt))


def cmd_run(args):
    rows = []
    for cfg in _selected(args):
        changes = {}
        if args.seed is not None:
            changes["seed"] = args.seed
        if args.trials is not None:
            changes["n_trials"] = args.trials
        if args.engine is not None:
            changes["engines"] = (args.engine,)
        if changes:
            cfg = cfg.replace(**changes)
        rows.extend(run_experiment(cfg))
    _write(rows, args)


def cmd_validate(args):
    for cfg in load_presets(args.config).values():
        print(
            f"{cfg.name}: topologies={','.join(cfg.topologies)} engines={','.join(cfg.engines)} "
            f"points={len(cfg.dims)} trials={cfg.n_trials} seed={cfg.seed}"
        )


def cmd_oracle_gap(args):
    rows = []
    for cfg in _selected(args):
        rows.extend(oracle_gap(cfg, args.max_sep))
    _write(rows, args)


def build_parser():
    parser = argparse.ArgumentParser(prog="corrlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_output=True):
        p.add_argument("--config", default=str(default_config_path()), help="INI scenario file")
        p.add_argument("--preset", help="run only this section (e.g. fig4)")
        if with_output:
            p.add_argument("--out", help="output path (stdout when omitted)")
            p.add_argument("--format", choices=("csv", "json"))

    run = sub.add_parser("run", help="run experiment presets")
    common(run)
    run.add_argument("--seed", type=int)
    run.add_argument("--trials", type=int)
    run.add_argument("--engine", choices=ENGINES)
    run.set_defaults(func=cmd_run)

    val = sub.add_parser("validate", help="parse and validate a config")
    val.add_argument("--config", default=str(default_config_path()))
    val.set_defaults(func=cmd_validate)

    gap = sub.add_parser("oracle-gap", help="closed form vs quadrature error table")
    common(gap)
    gap.add_argument("--max-sep", type=int, default=8)
    gap.set_defaults(func=cmd_oracle_gap)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"corrlab: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CorrlabError, ArithmeticError) as exc:
        print(f"corrlab: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
