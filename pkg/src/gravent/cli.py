"""Batch command-line front-end.

Reads a config document, runs a single report, a parameter sweep, or the
time-to-maximal-entanglement inversion, and writes CSV or JSON. Diagnostics
go to stderr; data goes to the output file or stdout.

Exit codes: 0 success, 1 configuration/validation failure, 2 numerical
domain failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import warnings
from pathlib import Path

from .config import MODES, FORMATS, RunConfig, parse_config, parse_constants_overrides
from .errors import ConfigError, GraventError, WidthWarning
from .model import MassiveBody, PairSystem, PhysicalConstants, zero_point_width
from .sweep import ROW_FIELD_NAMES, SweepRow, evaluate_point, run_sweep, time_to_max_entanglement

__all__ = ["main", "rows_to_csv", "rows_to_json"]

CONSTANTS_ENV_VAR = "GRAVENT_CONSTANTS"


def _format_float(value: float, precision: int) -> str:
    return f"{value:.{precision - 1}e}"


def _csv_cell(value: object, precision: int) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _format_float(value, precision)
    return str(value)


def rows_to_csv(rows: list[SweepRow], precision: int = 12) -> str:
    """RFC-4180 table: header of row field names, LF line endings.

    Floats are written in scientific notation at ``precision`` significant
    digits; numeric cells are never quoted.
    """
    lines = [",".join(ROW_FIELD_NAMES)]
    for row in rows:
        cells = [
            _csv_cell(getattr(row, name), precision) for name in ROW_FIELD_NAMES
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _json_value(value: object) -> object:
    if isinstance(value, float):
        # NaN is not valid JSON; error rows carry null measures instead.
        return None if value != value else value
    return value


def rows_to_json(rows: list[SweepRow]) -> str:
    """JSON array of row objects, floats at full round-trip precision."""
    payload = [
        {name: _json_value(value) for name, value in dataclasses.asdict(row).items()}
        for row in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise ConfigError(f"cannot write output: {exc}") from None


def _build_system(config: RunConfig) -> PairSystem:
    body1 = MassiveBody(config.m1, config.r1, config.omega1)
    body2 = MassiveBody(config.m2, config.r2, config.omega2)
    return PairSystem(body1, body2, config.d, config.constants)


def _warn_width_vs_radius(config: RunConfig) -> None:
    # The geometric radii never enter the math; they only sanity-check the
    # narrow-wave-packet picture, so a zero (unset) radius is not compared.
    for label, mass, radius, omega in (
        ("body 1", config.m1, config.r1, config.omega1),
        ("body 2", config.m2, config.r2, config.omega2),
    ):
        if radius > 0:
            width = zero_point_width(mass, omega, config.constants)
            if width > radius:
                warnings.warn(
                    f"{label}: zero-point width {width:.3e} m exceeds the geometric "
                    f"radius {radius:.3e} m",
                    WidthWarning,
                    stacklevel=2,
                )


def _apply_env_constants(config: RunConfig) -> RunConfig:
    path = os.environ.get(CONSTANTS_ENV_VAR)
    if not path:
        return config
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{CONSTANTS_ENV_VAR} points to an unreadable file: {exc}") from None
    overrides = parse_constants_overrides(text)
    if not overrides:
        return config
    constants = PhysicalConstants(
        G=overrides.get("G", config.constants.G),
        hbar=overrides.get("hbar", config.constants.hbar),
    )
    return dataclasses.replace(config, constants=constants)


def _run_report(config: RunConfig) -> str:
    if config.tau is None:
        raise ConfigError("report mode requires 'tau' in section [system]")
    _warn_width_vs_radius(config)
    row = evaluate_point(
        0,
        {
            "m1": config.m1,
            "m2": config.m2,
            "omega1": config.omega1,
            "omega2": config.omega2,
            "d": config.d,
            "tau": config.tau,
        },
        config.r1,
        config.r2,
        config.constants,
        config.regime_threshold,
        config.symmetrize_force,
        suppress_warnings=False,
    )
    if row.status != "ok":
        raise GraventError(row.status)
    return _serialize([row], config)


def _run_sweep(config: RunConfig) -> str:
    rows = run_sweep(config.sweep_spec(), workers=config.workers)
    return _serialize(rows, config)


def _serialize(rows: list[SweepRow], config: RunConfig) -> str:
    if config.format == "json":
        return rows_to_json(rows)
    return rows_to_csv(rows, config.precision)


def _run_tau_star(config: RunConfig) -> str:
    system = _build_system(config)
    tau_star = time_to_max_entanglement(system)
    return _format_float(tau_star, config.precision) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: A003 - argparse API
        raise ConfigError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="gravent", description=__doc__, add_help=True)
    parser.add_argument("--config", required=True, help="path to the config document")
    parser.add_argument("--mode", choices=MODES, help="override the configured mode")
    parser.add_argument("--output", help="override the configured output path")
    parser.add_argument("--format", choices=FORMATS, help="override the output format")
    parser.add_argument(
        "--quiet", action="store_true", help="suppress warnings and diagnostics"
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as exc:
        print(f"gravent: error: {exc}", file=sys.stderr)
        return 1

    try:
        with warnings.catch_warnings():
            if args.quiet:
                warnings.simplefilter("ignore")
            try:
                text = Path(args.config).read_text(encoding="utf-8")
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
            config = parse_config(text)
            if args.mode:
                config = dataclasses.replace(config, mode=args.mode)
            if args.output:
                config = dataclasses.replace(config, output=args.output)
            if args.format:
                config = dataclasses.replace(config, format=args.format)
            config = _apply_env_constants(config)

            if config.mode == "report":
                payload = _run_report(config)
            elif config.mode == "sweep":
                payload = _run_sweep(config)
            else:
                payload = _run_tau_star(config)

            if config.mode == "tau-star":
                # The inverted time always lands on stdout; a configured
                # output path receives a copy.
                sys.stdout.write(payload)
                if config.output is not None:
                    _emit(payload, config.output)
            else:
                _emit(payload, config.output)
    except ConfigError as exc:
        print(f"gravent: error: {exc}", file=sys.stderr)
        return 1
    except GraventError as exc:
        print(f"gravent: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
