"""Command-line entry points for the experiment suite.

Subcommands: spectrum-depth, spectrum-arch, otoc-compare, check-cover,
emit-refs.  Settings come from built-in defaults, then an optional flat
key=value config file, then explicit flags (flags win).  Exit codes:
0 success, 2 configuration error, 3 runtime error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .circuits import CircuitParseError
from .experiments import (
    ConfigError,
    DEFAULT_MASTER_SEED,
    EXPERIMENTS,
    ExperimentConfig,
    check_cover_report,
    emit_reference_curves,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

_EXPERIMENT_DEFAULTS = {
    # (n_list, instances, heat_depth): desk-scale grids of the three figures
    "spectrum-depth": ((12,), 15, 3),
    "spectrum-arch": ((8, 12, 16), 20, 1),
    "otoc-compare": ((10,), 10, 2),
}

_CONFIG_KEYS = {
    "n_list", "instances", "seed", "arch", "blocks", "heat_depth",
    "t_count", "v_op", "w_op", "stride", "jobs", "out", "dump_circuits",
}


def load_config_file(path: str) -> dict:
    """Flat `key = value` lines; '#' starts a comment."""
    values: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{line_no}: expected `key = value`")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{line_no}: unknown config key {key!r}")
        values[key] = value.strip()
    return values


def _parse_n_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.replace(",", " ").split())
    except ValueError:
        raise ConfigError(f"bad n list {text!r}") from None


def _add_experiment_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file; flags override it")
    sub.add_argument("--n", action="append", type=int, dest="n",
                     help="qubit count; repeat for several sizes")
    sub.add_argument("--instances", type=int)
    sub.add_argument("--seed", type=int, help="master seed for all random streams")
    sub.add_argument("--arch", choices=["causal-random", "bitonic", "cyclic-perm"])
    sub.add_argument("--blocks", type=int, choices=[4, 5])
    sub.add_argument("--heat-depth", type=int, dest="heat_depth",
                     help="cover multiplier (causal-random) or repetitions (networks)")
    sub.add_argument("--t-count", type=int, dest="t_count",
                     help="T gates in the middle T-layer (default: n)")
    sub.add_argument("--stride", type=int, help="layers between OTOC measurement points")
    sub.add_argument("--v-op", dest="v_op", help="V operator, e.g. Z:0")
    sub.add_argument("--w-op", dest="w_op", help="W operator, e.g. X:9")
    sub.add_argument("--jobs", type=int, help="parallel workers (default: all cores)")
    sub.add_argument("--out", help="output directory (default: results)")
    sub.add_argument("--dump-circuits", action="store_true", default=None,
                     dest="dump_circuits", help="also write serialized circuits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctchaos",
        description="Deterministic Clifford+T chaos experiments",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        sub = subparsers.add_parser(name, help=f"run the {name} experiment")
        _add_experiment_flags(sub)

    cover = subparsers.add_parser("check-cover", help="causal-cover report for a circuit file")
    cover.add_argument("--circuit-file", required=True)

    refs = subparsers.add_parser("emit-refs", help="write Poisson/GUE reference data")
    refs.add_argument("--out", default="results")
    refs.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED)
    refs.add_argument("--no-histograms", action="store_true")
    return parser


def _build_experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    n_list, instances, heat_depth = _EXPERIMENT_DEFAULTS[args.command]
    values = {
        "n_list": n_list,
        "instances": instances,
        "heat_depth": heat_depth,
        "master_seed": DEFAULT_MASTER_SEED,
        "arch": "causal-random",
        "blocks": 4,
        "t_count": None,
        "v_op": None,
        "w_op": None,
        "stride": 2,
        "jobs": 0,
        "out_dir": "results",
        "dump_circuits": False,
    }
    if args.config:
        raw = load_config_file(args.config)
        if "n_list" in raw:
            values["n_list"] = _parse_n_list(raw.pop("n_list"))
        for key, target, convert in (
            ("instances", "instances", int),
            ("seed", "master_seed", int),
            ("arch", "arch", str),
            ("blocks", "blocks", int),
            ("heat_depth", "heat_depth", int),
            ("t_count", "t_count", int),
            ("v_op", "v_op", str),
            ("w_op", "w_op", str),
            ("stride", "stride", int),
            ("jobs", "jobs", int),
            ("out", "out_dir", str),
        ):
            if key in raw:
                try:
                    values[target] = convert(raw.pop(key))
                except ValueError:
                    raise ConfigError(f"config key {key} has a bad value") from None
        if "dump_circuits" in raw:
            values["dump_circuits"] = raw.pop("dump_circuits").lower() in ("1", "true", "yes")
    for flag, target in (
        ("n", "n_list"), ("instances", "instances"), ("seed", "master_seed"),
        ("arch", "arch"), ("blocks", "blocks"), ("heat_depth", "heat_depth"),
        ("t_count", "t_count"), ("v_op", "v_op"), ("w_op", "w_op"),
        ("stride", "stride"), ("jobs", "jobs"), ("out", "out_dir"),
        ("dump_circuits", "dump_circuits"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            values[target] = tuple(value) if flag == "n" else value
    return ExperimentConfig(experiment=args.command, **values)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command in EXPERIMENTS:
            config = _build_experiment_config(args)
            config.validate()
        elif args.command == "check-cover":
            circuit_path = Path(args.circuit_file)
            if not circuit_path.exists():
                print(f"config error: no such circuit file: {circuit_path}", file=sys.stderr)
                return EXIT_CONFIG
    except ConfigError as error:
        print(f"config error: {error}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command in EXPERIMENTS:
            paths = run_experiment(config)
            for kind, path in sorted(paths.items()):
                print(f"{kind}: {path}")
        elif args.command == "check-cover":
            try:
                report = check_cover_report(circuit_path.read_text())
            except CircuitParseError as error:
                print(f"config error: {error}", file=sys.stderr)
                return EXIT_CONFIG
            print(json.dumps(report, indent=2, sort_keys=True))
        else:  # emit-refs
            paths = emit_reference_curves(
                args.out, master_seed=args.seed, histograms=not args.no_histograms
            )
            for kind, path in sorted(paths.items()):
                print(f"{kind}: {path}")
    except Exception as error:  # noqa: BLE001 - boundary of the CLI
        print(f"error: {error}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def entry() -> None:
    raise SystemExit(main())
