"""Command-line interface.

Verbs:
  sweep CONFIG [key=value ...]   run a parameter sweep, write outputs
  point key=value [...]          evaluate a single grid point, print it
  validate CONFIG [key=value ...] parse and echo the effective config
  selftest                       run the acceptance checks

Exit codes: 0 success, 1 selftest failures, 2 configuration error,
3 numeric non-convergence, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .config import apply_overrides, build_sweep_config, load_config
from .errors import ConfigError, DiscretizationError, NonConvergenceError
from .kinematics import reception_proper_time
from .sweep import CSV_COLUMNS, emit_outputs, run_sweep

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rindlerlink",
        description=(
            "Key rates for a coherent optical link between an inertial sender "
            "and a uniformly accelerating receiver, by closed form or by "
            "direct quadrature of the detected-mode overlaps."
        ),
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    sweep = verbs.add_parser("sweep", help="run a parameter sweep from a config file")
    sweep.add_argument("config", help="path to the sweep config")
    sweep.add_argument("override", nargs="*", help="key=value overrides")

    point = verbs.add_parser("point", help="evaluate one grid point")
    point.add_argument(
        "override",
        nargs="+",
        metavar="key=value",
        help="point settings, e.g. k_so=-10 T=0.1 eta=0.9",
    )

    validate = verbs.add_parser("validate", help="check a config without running it")
    validate.add_argument("config", help="path to the sweep config")
    validate.add_argument("override", nargs="*", help="key=value overrides")

    verbs.add_parser("selftest", help="run the acceptance checks and report")
    return parser


def _config_from_args(args, need_file: bool):
    raw = load_config(args.config) if need_file else {}
    raw = apply_overrides(raw, args.override)
    return build_sweep_config(raw)


def _print_point(row, config) -> None:
    values = dict(zip(CSV_COLUMNS, row.csv_values()))
    width = max(len(name) for name in CSV_COLUMNS)
    for name in CSV_COLUMNS:
        value = values[name]
        text = value if isinstance(value, str) else "%.10g" % value
        print(f"{name:>{width}} = {text}")
    if row.status != "horizon":
        tau = reception_proper_time(row.T, row.a)
        print(f"{'tau_rec':>{width}} = %.10g" % tau)
    if config.verbose and row.diagnostics is not None:
        print(json.dumps(row.diagnostics, sort_keys=True))


def _run_sweep_verb(args) -> int:
    config = _config_from_args(args, need_file=True)
    rows = run_sweep(config)
    paths = emit_outputs(rows, config)
    statuses = {}
    for row in rows:
        statuses[row.status] = statuses.get(row.status, 0) + 1
    summary = ", ".join(f"{count} {status}" for status, count in sorted(statuses.items()))
    print(f"{len(rows)} grid points ({summary})")
    for kind in sorted(paths):
        print(f"  {kind}: {paths[kind]}")
    if statuses.get("nonconverged"):
        print("some grid points did not converge; see the status column", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def _run_point_verb(args) -> int:
    config = _config_from_args(args, need_file=False)
    if config.grid_size != 1:
        raise ConfigError(
            "point takes exactly one value per axis; use sweep for grids",
            key="grid",
        )
    row = run_sweep(config)[0]
    _print_point(row, config)
    if row.status == "nonconverged":
        return EXIT_NUMERIC
    return EXIT_OK


def _run_validate_verb(args) -> int:
    config = _config_from_args(args, need_file=True)
    for key, value in sorted(config.canonical().items()):
        print(f"{key} = {value!r}")
    print(f"config ok: {config.grid_size} grid points")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.verb == "sweep":
            return _run_sweep_verb(args)
        if args.verb == "point":
            return _run_point_verb(args)
        if args.verb == "validate":
            return _run_validate_verb(args)
        failures = acceptance.run_all()
        if failures:
            print(f"{failures} acceptance check(s) failed", file=sys.stderr)
            return EXIT_SELFTEST
        return EXIT_OK
    except ConfigError as exc:
        where = f" ({exc.key})" if exc.key else ""
        print(f"config error{where}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonConvergenceError, DiscretizationError) as exc:
        print(f"numeric non-convergence: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        target = getattr(exc, "filename", None)
        where = f" ({target})" if target else ""
        print(f"i/o error{where}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
