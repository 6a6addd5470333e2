"""Command-line front end.

Subcommands::

    magnonsim steady-state      --config FILE [--out FILE] [--verbose]
    magnonsim sweep-detuning    --config FILE [--out FILE] [--points N]
                                [--axis1 PATH:START:STOP] [--axis2 ...]
    magnonsim sweep-phase       (same flags)
    magnonsim sweep-squeeze     (same flags)
    magnonsim sweep-decay       (same flags)
    magnonsim sweep-temperature (same flags)

Sweep outputs are CSV: a '#'-prefixed metadata preamble embedding the
fully resolved config (internal rad/s units, 17 significant digits, so
it parses back to the identical SystemConfig), one header row, then one
data row per grid point with axis columns first, E_N next, and a 0/1
stability flag last.  Unstable points carry E_N = nan.  Files are
written atomically (temp file + rename) with LF line endings.

Exit codes: 0 success, 1 config/validation error, 2 unstable system,
3 numerical failure.  MAGNON_NUM_THREADS caps sweep parallelism
(0 or unset = all cores).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile

import numpy as np

from .config import UnitSystem, format_config_dump, read_config
from .entanglement import extract_magnon_block, log_negativity, symplectic_eigenvalues
from .errors import (
    ConfigError,
    NumericalError,
    StabilityError,
    UnphysicalStateError,
    ValidationError,
)
from .lyapunov import is_stable, solve_steady_state
from .model import (
    BathConfig,
    ModeParams,
    SqueezeDrive,
    SystemConfig,
    build_diffusion,
    build_drift,
)
from .sweep import PARAMETER_PATHS, SweepAxis, SweepResult, find_optimum, run_sweep

__all__ = [
    "main",
    "write_sweep_csv",
    "read_sweep_csv",
    "config_metadata_lines",
    "parse_metadata_config",
]

FORMAT_VERSION = 1

_QUAD_LABELS = ("x_a1", "y_a1", "x_a2", "y_a2", "x_m1", "y_m1", "x_m2", "y_m2")

_SWEEP_COMMANDS = (
    "sweep-detuning",
    "sweep-phase",
    "sweep-squeeze",
    "sweep-decay",
    "sweep-temperature",
)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".magnonsim-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def config_metadata_lines(config: SystemConfig) -> list[str]:
    """Flatten a SystemConfig to `config.<path> = <value>` metadata lines."""
    lines = []
    for name in ("cavity1", "cavity2", "magnon1", "magnon2"):
        mode = getattr(config, name)
        lines.append(f"config.{name}.detuning = {_fmt(mode.detuning)}")
        lines.append(f"config.{name}.decay = {_fmt(mode.decay)}")
    for name in ("g1", "g2", "J"):
        lines.append(f"config.{name} = {_fmt(getattr(config, name))}")
    for name in ("drive1", "drive2"):
        drive = getattr(config, name)
        if drive is not None:
            lines.append(f"config.{name}.r = {_fmt(drive.r)}")
            lines.append(f"config.{name}.theta = {_fmt(drive.theta)}")
    lines.append(f"config.bath.temperature = {_fmt(config.bath.temperature)}")
    lines.append(
        f"config.bath.carrier_frequency = {_fmt(config.bath.carrier_frequency)}"
    )
    return lines


def parse_metadata_config(meta: dict[str, str]) -> SystemConfig:
    """Rebuild the SystemConfig embedded in a CSV metadata preamble."""

    def value(path: str) -> float:
        try:
            return float(meta[f"config.{path}"])
        except KeyError:
            raise ConfigError(f"metadata is missing config.{path}")
        except ValueError:
            raise ConfigError(f"metadata config.{path} is not a number")

    def mode(name: str) -> ModeParams:
        return ModeParams(detuning=value(f"{name}.detuning"), decay=value(f"{name}.decay"))

    def drive(name: str) -> SqueezeDrive | None:
        if f"config.{name}.r" not in meta:
            return None
        return SqueezeDrive(r=value(f"{name}.r"), theta=value(f"{name}.theta"))

    return SystemConfig(
        cavity1=mode("cavity1"),
        cavity2=mode("cavity2"),
        magnon1=mode("magnon1"),
        magnon2=mode("magnon2"),
        g1=value("g1"),
        g2=value("g2"),
        J=value("J"),
        drive1=drive("drive1"),
        drive2=drive("drive2"),
        bath=BathConfig(
            temperature=value("bath.temperature"),
            carrier_frequency=value("bath.carrier_frequency"),
        ),
    )


def write_sweep_csv(
    path: str, command: str, result: SweepResult, units: UnitSystem
) -> None:
    """Serialize a SweepResult to the self-describing CSV contract."""
    lines = [f"# magnonsim {command}", f"# format = {FORMAT_VERSION}"]
    lines += [f"# {line}" for line in config_metadata_lines(result.base_config)]
    for i, axis in enumerate(result.axes, start=1):
        lines.append(f"# axis{i}.path = {axis.path}")
        lines.append(f"# axis{i}.unit = {units.label(axis.path)}")
        lines.append(f"# axis{i}.start = {_fmt(units.from_internal(axis.path, axis.start))}")
        lines.append(f"# axis{i}.stop = {_fmt(units.from_internal(axis.path, axis.stop))}")
        lines.append(f"# axis{i}.points = {axis.points}")

    header = [f"{axis.path}[{units.label(axis.path)}]" for axis in result.axes]
    lines.append(",".join(header + ["E_N", "stable"]))

    file_axis_values = [
        [units.from_internal(axis.path, v) for v in axis.values] for axis in result.axes
    ]
    flat_values = result.values.ravel()
    flat_mask = result.stability_mask.ravel()
    n1 = result.axes[0].points
    for k in range(flat_values.size):
        i1 = k % n1
        row = [_fmt(file_axis_values[0][i1])]
        if len(result.axes) == 2:
            row.append(_fmt(file_axis_values[1][k // n1]))
        row.append(_fmt(flat_values[k]))
        row.append("1" if flat_mask[k] else "0")
        lines.append(",".join(row))
    _atomic_write(path, "\n".join(lines) + "\n")


def read_sweep_csv(path: str) -> tuple[SystemConfig, dict[str, str], list[str], np.ndarray]:
    """Parse a sweep CSV back into (config, metadata, column names, data)."""
    meta: dict[str, str] = {}
    header: list[str] | None = None
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(cell) for cell in line.split(",")])
    if header is None:
        raise ConfigError(f"{path} contains no header row")
    return parse_metadata_config(meta), meta, header, np.array(rows)


def _parse_axis_flag(flag: str, spec: str, units: UnitSystem, points: int) -> SweepAxis:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{flag} must look like PATH:START:STOP, got {spec!r}")
    path, start_s, stop_s = parts
    if path not in PARAMETER_PATHS:
        known = ", ".join(sorted(PARAMETER_PATHS))
        raise ConfigError(f"{flag}: unknown parameter path {path!r}; known paths: {known}")
    try:
        start = float(start_s)
        stop = float(stop_s)
    except ValueError:
        raise ConfigError(f"{flag}: start/stop must be numbers, got {spec!r}")
    return SweepAxis(
        path=path,
        start=units.to_internal(path, start),
        stop=units.to_internal(path, stop),
        points=points,
    )


def _single_drive_name(config: SystemConfig, command: str) -> str:
    if config.drive1 is not None:
        return "drive1"
    if config.drive2 is not None:
        return "drive2"
    raise ConfigError(f"{command} requires at least one squeeze drive in the config")


def _default_axes(command: str, config: SystemConfig) -> list[tuple[str, float, float, int]]:
    """Per-command default axes as (path, start, stop, points), internal units."""
    two_pi = 2.0 * math.pi
    if command == "sweep-detuning":
        span = 2.0 * config.J
        if span == 0.0:
            raise ConfigError("sweep-detuning default range needs J > 0; pass --axis1/--axis2")
        return [
            ("cavity1.detuning", -span, span, 101),
            ("cavity2.detuning", -span, span, 101),
        ]
    if command == "sweep-phase":
        if config.is_double_squeezed:
            return [
                ("drive1.theta", 0.0, two_pi, 101),
                ("drive2.theta", 0.0, two_pi, 101),
            ]
        name = _single_drive_name(config, command)
        return [(f"{name}.theta", 0.0, two_pi, 201)]
    if command == "sweep-squeeze":
        if config.is_double_squeezed:
            return [("drive1.r", 0.0, 2.0, 101), ("drive2.r", 0.0, 2.0, 101)]
        name = _single_drive_name(config, command)
        return [(f"{name}.r", 0.0, 2.0, 201)]
    if command == "sweep-decay":
        ref = config.cavity1.decay
        return [
            ("cavity1.decay", 0.05 * ref, 5.0 * ref, 101),
            ("cavity2.decay", 0.05 * ref, 5.0 * ref, 101),
        ]
    if command == "sweep-temperature":
        return [("bath.temperature", 0.0, 0.6, 201)]
    raise ValueError(f"not a sweep command: {command}")  # pragma: no cover


def _resolve_axes(command: str, config: SystemConfig, units: UnitSystem,
                  args: argparse.Namespace) -> list[SweepAxis]:
    defaults = _default_axes(command, config)
    axes: list[SweepAxis] = []
    flags = (("--axis1", args.axis1), ("--axis2", args.axis2))
    for i, (flag, spec) in enumerate(flags):
        default = defaults[i] if i < len(defaults) else None
        if spec is not None:
            if spec.strip().lower() == "none":
                continue
            points = args.points if args.points is not None else (
                default[3] if default else 101
            )
            axes.append(_parse_axis_flag(flag, spec, units, points))
        elif default is not None:
            path, start, stop, points = default
            if args.points is not None:
                points = args.points
            axes.append(SweepAxis(path, start, stop, points))
    if not axes:
        raise ConfigError(f"{command}: no sweep axes left after --axis overrides")
    return axes


def cmd_steady_state(args: argparse.Namespace) -> int:
    config, units = read_config(args.config)
    if args.verbose:
        print(format_config_dump(config, units))
    a = build_drift(config)
    d = build_diffusion(config)
    report = is_stable(a)
    if not report.stable:
        print(
            f"unstable: spectral abscissa {report.spectral_abscissa:.6e} rad/s; "
            "no steady state",
            file=sys.stderr,
        )
        return 2
    v = solve_steady_state(a, d)
    negativity = log_negativity(extract_magnon_block(v))
    nu_min = float(symplectic_eigenvalues(v)[0])

    lines = ["# magnonsim steady-state", f"# format = {FORMAT_VERSION}"]
    lines += [f"# {line}" for line in config_metadata_lines(config)]
    lines += [
        "# stable = 1",
        f"# spectral_abscissa = {_fmt(report.spectral_abscissa)}",
        f"# E_N = {_fmt(negativity.e_n)}",
        f"# eta_minus = {_fmt(negativity.eta_minus)}",
        f"# symplectic_min = {_fmt(nu_min)}",
        ",".join(_QUAD_LABELS),
    ]
    lines += [",".join(_fmt(x) for x in row) for row in v]
    out = args.out or "steady_state.csv"
    _atomic_write(out, "\n".join(lines) + "\n")

    print(f"stable steady state (spectral abscissa {report.spectral_abscissa:.6e} rad/s)")
    print(f"E_N = {negativity.e_n:.12g}")
    print(f"eta_minus = {negativity.eta_minus:.12g}")
    print(f"min symplectic eigenvalue = {nu_min:.12g}")
    print(f"covariance matrix written to {out}")
    return 0


def cmd_sweep(command: str, args: argparse.Namespace) -> int:
    config, units = read_config(args.config)
    if args.verbose:
        print(format_config_dump(config, units))
    axes = _resolve_axes(command, config, units, args)
    result = run_sweep(config, axes)
    out = args.out or command.replace("-", "_") + ".csv"
    write_sweep_csv(out, command, result, units)

    optimum = find_optimum(result)
    location = ", ".join(
        f"{axis.path} = {units.from_internal(axis.path, value):.10g} {units.label(axis.path)}"
        for axis, value in zip(result.axes, optimum.parameter_values)
    )
    indices = ", ".join(str(i) for i in optimum.indices)
    print(f"optimum: E_N = {optimum.e_n:.12g} at {location} (grid indices {indices})")
    if not result.stability_mask.all():
        unstable = int((~result.stability_mask).sum())
        print(f"warning: {unstable} unstable grid points recorded as nan", file=sys.stderr)
    print(f"sweep written to {out} ({result.values.size} points)")
    return 0


class _Parser(argparse.ArgumentParser):
    # usage mistakes are config errors in this tool's exit-code contract
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="magnonsim",
        description="Steady-state magnon-magnon entanglement of two squeezed-"
        "vacuum-driven cavity-magnon pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="TOML system description")
        p.add_argument("--out", help="output CSV path")
        p.add_argument("--verbose", action="store_true",
                       help="echo every resolved config value")

    p_steady = sub.add_parser("steady-state", help="solve one steady state")
    add_common(p_steady)

    for name in _SWEEP_COMMANDS:
        p = sub.add_parser(name, help=f"{name.replace('-', ' ')} grid sweep")
        add_common(p)
        p.add_argument("--points", type=int, help="override grid points per axis")
        p.add_argument("--axis1", metavar="PATH:START:STOP",
                       help="override first sweep axis (config-file units)")
        p.add_argument("--axis2", metavar="PATH:START:STOP",
                       help="override second sweep axis, or 'none' to drop it")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "steady-state":
            return cmd_steady_state(args)
        return cmd_sweep(args.command, args)
    except (ConfigError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except StabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UnphysicalStateError, NumericalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
