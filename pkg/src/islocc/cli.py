"""Command-line front end: parameter sweeps, Bell-violation maps, threshold
search and self-verification.

Exit codes: 0 on success, 1 when verification fails, 2 on configuration
errors.  Options may come from a flat ``key = value`` config file
(``--config``); command-line flags override file values.  The environment
variable ``ISLOCC_THREADS`` caps grid parallelism (0 = auto).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .amplitudes import ParticleStatistics
from .sweeps import (BELL_REGION_FIELDS, CSV_FIELDS, ConfigError, GridSpec,
                     SweepConfig, find_threshold, records_to_csv,
                     records_to_json, run_bell_region, run_sweep, run_verify)
from .svg import bell_region_svg, sweep_svg

__all__ = ["main", "build_config", "load_config_file"]

_CONFIG_KEYS = ("statistics", "theta", "target", "constraint", "p_grid",
                "indist_grid", "l_grid", "lprime", "output", "format")


def load_config_file(path: str) -> dict[str, str]:
    """Parse a flat ``key = value`` config file ('#' starts a comment)."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value
    return values


def build_config(args: argparse.Namespace) -> SweepConfig:
    """Merge config-file values and CLI flags (flags win) into a SweepConfig."""
    values = load_config_file(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag

    config = SweepConfig()
    try:
        if "statistics" in values:
            config.statistics = ParticleStatistics.parse(values["statistics"])
        if "theta" in values:
            config.theta = float(values["theta"])
        if "target" in values:
            config.target = values["target"]
        if "constraint" in values:
            config.constraint = values["constraint"]
        if "p_grid" in values:
            config.p_grid = GridSpec.parse(values["p_grid"])
        if "indist_grid" in values:
            config.indist_grid = GridSpec.parse(values["indist_grid"])
        if "l_grid" in values:
            config.l_grid = GridSpec.parse(values["l_grid"])
        if "lprime" in values:
            config.lprime = float(values["lprime"])
        if "output" in values:
            config.output = values["output"]
        if "format" in values:
            config.format = values["format"]
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    config.validate()
    return config


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _render(records, fmt: str, fields, svg_renderer) -> str:
    if fmt == "csv":
        return records_to_csv(records, fields)
    if fmt == "json":
        return records_to_json(records, fields)
    return svg_renderer(records)


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--statistics", choices=("boson", "fermion"))
    parser.add_argument("--theta", help="phase of the second wave function, radians "
                                        "(default: canonical pairing for target/statistics)")
    parser.add_argument("--target", choices=("1_minus", "1_plus"))
    parser.add_argument("--constraint", choices=("l_eq_rprime", "l_eq_lprime", "free"))
    parser.add_argument("--p-grid", dest="p_grid", metavar="A:B:N",
                        help="noise-probability grid")
    parser.add_argument("--indist-grid", dest="indist_grid", metavar="A:B:N",
                        help="indistinguishability grid (l_eq_rprime family)")
    parser.add_argument("--l-grid", dest="l_grid", metavar="A:B:N",
                        help="grid over l instead of the indistinguishability degree")
    parser.add_argument("--lprime", help="fixed l' for the free constraint")
    parser.add_argument("--output", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json", "svg"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="islocc",
        description="Noisy entanglement preparation with spatially "
                    "indistinguishable identical particles.")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="pipeline metrics over a parameter grid")
    _add_common_flags(sweep)

    region = sub.add_parser("bell-region", help="CHSH values and violation flags "
                                                "over the (noise, indistinguishability) grid")
    _add_common_flags(region)

    threshold = sub.add_parser(
        "threshold", help="smallest indistinguishability degree with CHSH "
                          "violation at every noise probability")
    _add_common_flags(threshold)

    verify = sub.add_parser("verify", help="run the numerical self-verification suites")
    verify.add_argument("--seed", type=int, default=20250808)
    return parser


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = build_config(args)
    if config.format == "svg" and config.output is None:
        raise ConfigError("svg output needs --output")
    records = run_sweep(config)
    _emit(_render(records, config.format, CSV_FIELDS, sweep_svg), config.output)
    return 0


def _cmd_bell_region(args: argparse.Namespace) -> int:
    config = build_config(args)
    if config.format == "svg" and config.output is None:
        raise ConfigError("svg output needs --output")
    records = run_bell_region(config)
    _emit(_render(records, config.format, BELL_REGION_FIELDS, bell_region_svg),
          config.output)
    return 0


def _cmd_threshold(args: argparse.Namespace) -> int:
    config = build_config(args)
    result = find_threshold(config)
    text = json.dumps(result.as_dict(), indent=2) + "\n"
    sys.stdout.write(text)
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = run_verify(seed=args.seed)
    for line in report.summary_lines():
        print(line)
    return 0 if report.ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "sweep": _cmd_sweep,
        "bell-region": _cmd_bell_region,
        "threshold": _cmd_threshold,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
