"""TOML configuration files and unit conversion.

A config file carries human-friendly units: rates either in Hz or as
multiples of a κ_a anchor, angles in degrees, temperature in mK, carrier
frequency in GHz.  Everything is converted to internal units (rad/s,
radians, kelvin) at load time.  Unknown sections or keys are hard
errors — silent typos in physics parameters are worse than noise.

Sections and keys (exact names)::

    [units]    rate_unit = "Hz" | "kappa_a"; kappa_a_Hz (anchor, required
               for rate_unit = "kappa_a")
    [cavity1] [cavity2] [magnon1] [magnon2]   detuning, decay
    [coupling] g1, g2, J
    [drive1] [drive2]   r, theta_deg — optional sections; absent means a
               thermal/vacuum input on that cavity
    [bath]     temperature_mK, carrier_frequency_GHz — optional, default
               T = 0 and 10 GHz
"""

from __future__ import annotations

import math
from dataclasses import dataclass

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib

from .errors import ConfigError, ValidationError
from .model import (
    DEFAULT_CARRIER_FREQUENCY,
    BathConfig,
    ModeParams,
    SqueezeDrive,
    SystemConfig,
)

__all__ = ["UnitSystem", "load_config", "read_config", "format_config_dump"]

_TWO_PI = 2.0 * math.pi

_MODE_SECTIONS = ("cavity1", "cavity2", "magnon1", "magnon2")
_SECTION_KEYS = {
    "units": {"rate_unit", "kappa_a_Hz"},
    "cavity1": {"detuning", "decay"},
    "cavity2": {"detuning", "decay"},
    "magnon1": {"detuning", "decay"},
    "magnon2": {"detuning", "decay"},
    "coupling": {"g1", "g2", "J"},
    "drive1": {"r", "theta_deg"},
    "drive2": {"r", "theta_deg"},
    "bath": {"temperature_mK", "carrier_frequency_GHz"},
}
_REQUIRED_SECTIONS = ("units", *_MODE_SECTIONS, "coupling")


@dataclass(frozen=True)
class UnitSystem:
    """Converts between config-file units and internal rad/s-based units.

    Parameter paths fall into five families: rates (detunings, decays,
    couplings), angles (drive phases), temperature, carrier frequency,
    and dimensionless (squeeze strength r).
    """

    rate_unit: str  # "Hz" or "kappa_a"
    kappa_a: float | None = None  # anchor in rad/s when rate_unit == "kappa_a"

    def __post_init__(self):
        if self.rate_unit not in ("Hz", "kappa_a"):
            raise ConfigError(
                f'units.rate_unit must be "Hz" or "kappa_a", got {self.rate_unit!r}'
            )
        if self.rate_unit == "kappa_a":
            if self.kappa_a is None or not (
                math.isfinite(self.kappa_a) and self.kappa_a > 0
            ):
                raise ConfigError(
                    'units.kappa_a_Hz (a positive anchor) is required when '
                    'rate_unit = "kappa_a"'
                )

    @staticmethod
    def family(path: str) -> str:
        if path == "bath.temperature":
            return "temperature"
        if path == "bath.carrier_frequency":
            return "carrier"
        if path.endswith(".theta"):
            return "angle"
        if path.endswith(".r"):
            return "dimensionless"
        return "rate"

    def _rate_scale(self) -> float:
        # rad/s per file unit
        return _TWO_PI if self.rate_unit == "Hz" else self.kappa_a

    def rate_to_internal(self, value: float) -> float:
        return value * self._rate_scale()

    def to_internal(self, path: str, value: float) -> float:
        fam = self.family(path)
        if fam == "rate":
            return value * self._rate_scale()
        if fam == "angle":
            return math.radians(value)
        if fam == "temperature":
            return value * 1e-3
        if fam == "carrier":
            return value * 1e9 * _TWO_PI
        return value

    def from_internal(self, path: str, value: float) -> float:
        fam = self.family(path)
        if fam == "rate":
            return value / self._rate_scale()
        if fam == "angle":
            return math.degrees(value)
        if fam == "temperature":
            return value * 1e3
        if fam == "carrier":
            return value / (1e9 * _TWO_PI)
        return value

    def label(self, path: str) -> str:
        fam = self.family(path)
        if fam == "rate":
            return self.rate_unit
        return {"angle": "deg", "temperature": "mK", "carrier": "GHz",
                "dimensionless": "1"}[fam]


def _check_sections(doc: dict) -> None:
    unknown_sections = [k for k in doc if k not in _SECTION_KEYS]
    if unknown_sections:
        raise ConfigError(f"unknown config sections: {', '.join(sorted(unknown_sections))}")
    missing = [s for s in _REQUIRED_SECTIONS if s not in doc]
    if missing:
        raise ConfigError(f"missing required config sections: {', '.join(missing)}")
    unknown_keys = []
    for section, table in doc.items():
        if not isinstance(table, dict):
            raise ConfigError(f"{section} must be a table, got {type(table).__name__}")
        unknown_keys += [
            f"{section}.{k}" for k in table if k not in _SECTION_KEYS[section]
        ]
    if unknown_keys:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown_keys))}")


def _number(section: str, table: dict, key: str, default: float | None = None) -> float:
    if key not in table:
        if default is not None:
            return default
        raise ConfigError(f"missing required key {section}.{key}")
    value = table[key]
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{section}.{key} must be a number, got {value!r}")
    return float(value)


def _units_from_doc(doc: dict) -> UnitSystem:
    table = doc["units"]
    rate_unit = table.get("rate_unit")
    if not isinstance(rate_unit, str):
        raise ConfigError('units.rate_unit must be a string ("Hz" or "kappa_a")')
    kappa_a = None
    if rate_unit == "kappa_a":
        kappa_a = _TWO_PI * _number("units", table, "kappa_a_Hz")
    elif "kappa_a_Hz" in table:
        raise ConfigError('units.kappa_a_Hz only applies when rate_unit = "kappa_a"')
    return UnitSystem(rate_unit=rate_unit, kappa_a=kappa_a)


def _mode_from_doc(doc: dict, section: str, units: UnitSystem) -> ModeParams:
    table = doc[section]
    detuning = units.rate_to_internal(_number(section, table, "detuning"))
    decay = units.rate_to_internal(_number(section, table, "decay"))
    try:
        return ModeParams(detuning=detuning, decay=decay)
    except ValidationError as exc:
        raise ConfigError(f"{section}.decay: {exc}") from exc


def _drive_from_doc(doc: dict, section: str) -> SqueezeDrive | None:
    if section not in doc:
        return None
    table = doc[section]
    r = _number(section, table, "r")
    theta = math.radians(_number(section, table, "theta_deg", default=0.0))
    try:
        return SqueezeDrive(r=r, theta=theta)
    except ValidationError as exc:
        raise ConfigError(f"{section}.r: {exc}") from exc


def read_config(path: str) -> tuple[SystemConfig, UnitSystem]:
    """Parse a config file into a resolved SystemConfig plus its unit system."""
    try:
        with open(path, "rb") as fh:
            doc = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid TOML: {exc}") from exc

    _check_sections(doc)
    units = _units_from_doc(doc)

    modes = {s: _mode_from_doc(doc, s, units) for s in _MODE_SECTIONS}
    coupling = doc["coupling"]
    rates = {}
    for key in ("g1", "g2", "J"):
        value = units.rate_to_internal(_number("coupling", coupling, key))
        if value < 0:
            raise ConfigError(f"coupling.{key} must be >= 0, got {value}")
        rates[key] = value

    bath_table = doc.get("bath", {})
    temperature = 1e-3 * _number("bath", bath_table, "temperature_mK", default=0.0)
    carrier_ghz = _number(
        "bath", bath_table, "carrier_frequency_GHz",
        default=DEFAULT_CARRIER_FREQUENCY / (_TWO_PI * 1e9),
    )
    # group the exact base-10 product first so 10 GHz lands bit-identical
    # to DEFAULT_CARRIER_FREQUENCY
    carrier = _TWO_PI * (carrier_ghz * 1e9)
    try:
        bath = BathConfig(temperature=temperature, carrier_frequency=carrier)
    except ValidationError as exc:
        raise ConfigError(f"bath: {exc}") from exc

    config = SystemConfig(
        cavity1=modes["cavity1"],
        cavity2=modes["cavity2"],
        magnon1=modes["magnon1"],
        magnon2=modes["magnon2"],
        g1=rates["g1"],
        g2=rates["g2"],
        J=rates["J"],
        drive1=_drive_from_doc(doc, "drive1"),
        drive2=_drive_from_doc(doc, "drive2"),
        bath=bath,
    )
    return config, units


def load_config(path: str) -> SystemConfig:
    """Parse a config file into a resolved SystemConfig (internal units)."""
    return read_config(path)[0]


def format_config_dump(config: SystemConfig, units: UnitSystem | None = None) -> str:
    """Readable listing of every resolved parameter, for --verbose output."""
    lines = []

    def rate_line(path: str, value: float) -> None:
        extra = ""
        if units is not None:
            extra = f"  ({units.from_internal(path, value):.6g} {units.label(path)})"
        lines.append(f"{path} = {value:.10e} rad/s{extra}")

    for name in ("cavity1", "cavity2", "magnon1", "magnon2"):
        mode = getattr(config, name)
        rate_line(f"{name}.detuning", mode.detuning)
        rate_line(f"{name}.decay", mode.decay)
    for name in ("g1", "g2", "J"):
        rate_line(name, getattr(config, name))
    for name in ("drive1", "drive2"):
        drive = getattr(config, name)
        if drive is None:
            lines.append(f"{name} = absent (thermal/vacuum input)")
        else:
            lines.append(f"{name}.r = {drive.r:.10g}")
            lines.append(
                f"{name}.theta = {drive.theta:.10g} rad"
                f"  ({math.degrees(drive.theta):.6g} deg)"
            )
    lines.append(
        f"bath.temperature = {config.bath.temperature:.10g} K"
        f"  ({config.bath.temperature * 1e3:.6g} mK)"
    )
    lines.append(
        f"bath.carrier_frequency = {config.bath.carrier_frequency:.10e} rad/s"
        f"  ({config.bath.carrier_frequency / (_TWO_PI * 1e9):.6g} GHz)"
    )
    return "\n".join(lines)
