"""Grid sweeps of the steady-state magnon-magnon entanglement.

A sweep varies one or two scalar parameters of a ``SystemConfig`` over a
linear grid, solves the steady state at every point, and records E_N.
Grid points are independent; they are evaluated by a thread pool and
written into a preallocated grid by index, so results are bit-identical
for any worker count.  Points with an unstable drift matrix are recorded
as NaN with a cleared stability flag, never as 0 (0 means separable).

Parameter paths are dotted field names of ``SystemConfig``:
``cavity1.detuning``, ``magnon2.decay``, ``drive1.r``, ``drive1.theta``,
``bath.temperature``, ``bath.carrier_frequency``, plus the bare
couplings ``g1``, ``g2``, ``J``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .entanglement import extract_magnon_block, log_negativity, symplectic_eigenvalues
from .errors import ConfigError, StabilityError, UnphysicalStateError, ValidationError
from .lyapunov import solve_steady_state
from .model import SystemConfig, build_diffusion, build_drift

__all__ = [
    "SweepAxis",
    "SweepResult",
    "OptimumResult",
    "PARAMETER_PATHS",
    "set_parameter",
    "run_sweep",
    "find_optimum",
    "survival_temperature",
    "SURVIVAL_THRESHOLD",
]

# E_N above this counts as "entangled" for threshold searches; sits far
# above solver noise (~1e-12) and far below any plotted feature.
SURVIVAL_THRESHOLD = 1e-6

_MODE_FIELDS = ("detuning", "decay")
_DRIVE_FIELDS = ("r", "theta")
_BATH_FIELDS = ("temperature", "carrier_frequency")
_SCALAR_PATHS = ("g1", "g2", "J")

# path -> (attribute, field) for nested dataclass fields; None field means
# a top-level scalar of SystemConfig.
PARAMETER_PATHS: dict[str, tuple[str, str | None]] = {}
for _attr in ("cavity1", "cavity2", "magnon1", "magnon2"):
    for _f in _MODE_FIELDS:
        PARAMETER_PATHS[f"{_attr}.{_f}"] = (_attr, _f)
for _attr in ("drive1", "drive2"):
    for _f in _DRIVE_FIELDS:
        PARAMETER_PATHS[f"{_attr}.{_f}"] = (_attr, _f)
for _f in _BATH_FIELDS:
    PARAMETER_PATHS[f"bath.{_f}"] = ("bath", _f)
for _p in _SCALAR_PATHS:
    PARAMETER_PATHS[_p] = (_p, None)


def set_parameter(config: SystemConfig, path: str, value: float) -> SystemConfig:
    """Return a copy of ``config`` with the parameter at ``path`` replaced."""
    try:
        attr, field_name = PARAMETER_PATHS[path]
    except KeyError:
        known = ", ".join(sorted(PARAMETER_PATHS))
        raise ConfigError(f"unknown parameter path {path!r}; known paths: {known}")
    if field_name is None:
        return replace(config, **{attr: value})
    target = getattr(config, attr)
    if target is None:
        raise ConfigError(f"cannot set {path!r}: {attr} is absent from the config")
    return replace(config, **{attr: replace(target, **{field_name: value})})


@dataclass(frozen=True)
class SweepAxis:
    """One linear sweep axis: parameter path, range, and point count."""

    path: str
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if self.path not in PARAMETER_PATHS:
            known = ", ".join(sorted(PARAMETER_PATHS))
            raise ConfigError(
                f"unknown parameter path {self.path!r}; known paths: {known}"
            )
        for name in ("start", "stop"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"axis {name} must be finite")
        if int(self.points) != self.points or self.points < 2:
            raise ValidationError(f"axis points must be an integer >= 2, got {self.points}")
        object.__setattr__(self, "points", int(self.points))
        if self.start == self.stop:
            raise ValidationError(f"axis start and stop coincide ({self.start})")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True, eq=False)
class SweepResult:
    """E_N over a 1-D or 2-D grid, plus per-point stability flags.

    For two axes the arrays have shape (axes[1].points, axes[0].points),
    i.e. row-major with axis 1 varying fastest: values[i2, i1] belongs to
    (axes[0].values[i1], axes[1].values[i2]).
    """

    axes: tuple[SweepAxis, ...]
    values: np.ndarray
    stability_mask: np.ndarray
    base_config: SystemConfig


@dataclass(frozen=True)
class OptimumResult:
    """Location (grid indices and parameter values) and value of max E_N."""

    indices: tuple[int, ...]
    parameter_values: tuple[float, ...]
    e_n: float


def _resolve_workers(workers: int | None) -> int:
    if workers is not None:
        workers = int(workers)
        if workers < 1:
            raise ValidationError(f"workers must be >= 1, got {workers}")
        return workers
    env = os.environ.get("MAGNON_NUM_THREADS", "").strip()
    if env:
        try:
            requested = int(env)
        except ValueError:
            raise ConfigError(f"MAGNON_NUM_THREADS must be an integer, got {env!r}")
        if requested < 0:
            raise ConfigError(f"MAGNON_NUM_THREADS must be >= 0, got {requested}")
        if requested > 0:
            return requested
    return os.cpu_count() or 1


def _point_value(config: SystemConfig, check_physicality: bool) -> tuple[float, bool]:
    """E_N and stability flag for one fully specified config."""
    a = build_drift(config)
    d = build_diffusion(config)
    try:
        v = solve_steady_state(a, d)
    except StabilityError:
        return math.nan, False
    if check_physicality:
        nu_min = symplectic_eigenvalues(v)[0]
        if nu_min < 0.5 - 1e-9:
            raise UnphysicalStateError(
                f"steady state violates the uncertainty bound (ν_min = {nu_min!r})"
            )
    return log_negativity(extract_magnon_block(v)).e_n, True


def run_sweep(
    base: SystemConfig,
    axes: list[SweepAxis] | tuple[SweepAxis, ...],
    workers: int | None = None,
    check_physicality: bool = False,
) -> SweepResult:
    """Evaluate E_N on the grid spanned by one or two axes.

    ``workers=None`` honors the MAGNON_NUM_THREADS environment variable
    (0 or unset meaning all cores).  ``check_physicality`` additionally
    verifies the symplectic spectrum of every solved covariance matrix,
    raising ``UnphysicalStateError`` on violation.
    """
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ValidationError(f"run_sweep takes 1 or 2 axes, got {len(axes)}")
    if len(axes) == 2 and axes[0].path == axes[1].path:
        raise ValidationError(f"sweep axes must vary distinct parameters ({axes[0].path})")
    for axis in axes:
        # fail on unknown/absent targets before any solve
        set_parameter(base, axis.path, axis.values[0])

    if len(axes) == 1:
        shape: tuple[int, ...] = (axes[0].points,)
    else:
        shape = (axes[1].points, axes[0].points)
    values = np.full(shape, math.nan)
    mask = np.zeros(shape, dtype=bool)
    axis_values = [axis.values for axis in axes]
    n1 = axes[0].points

    def fill(flat_indices: range) -> None:
        for k in flat_indices:
            i1 = k % n1
            cfg = set_parameter(base, axes[0].path, float(axis_values[0][i1]))
            if len(axes) == 2:
                i2 = k // n1
                cfg = set_parameter(cfg, axes[1].path, float(axis_values[1][i2]))
                index: tuple[int, ...] = (i2, i1)
            else:
                index = (i1,)
            e_n, stable = _point_value(cfg, check_physicality)
            values[index] = e_n
            mask[index] = stable

    total = values.size
    n_workers = _resolve_workers(workers)
    if n_workers == 1 or total < 64:
        fill(range(total))
    else:
        chunk = max(32, -(-total // (4 * n_workers)))  # ceil division
        ranges = [range(s, min(s + chunk, total)) for s in range(0, total, chunk)]
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            for future in [pool.submit(fill, r) for r in ranges]:
                future.result()

    return SweepResult(axes=axes, values=values, stability_mask=mask, base_config=base)


def find_optimum(result: SweepResult) -> OptimumResult:
    """Maximum E_N over the stable grid points.

    Exact ties resolve to the first occurrence in row-major order (axis 1
    fastest), i.e. the first matching row of the serialized sweep.
    """
    flat = np.where(result.stability_mask, result.values, -math.inf).ravel()
    k = int(np.argmax(flat))
    if flat[k] == -math.inf:
        raise StabilityError("no stable grid points in sweep result")
    n1 = result.axes[0].points
    if len(result.axes) == 1:
        indices: tuple[int, ...] = (k,)
    else:
        indices = (k % n1, k // n1)  # (i1, i2)
    parameter_values = tuple(
        float(axis.values[i]) for axis, i in zip(result.axes, indices)
    )
    return OptimumResult(indices=indices, parameter_values=parameter_values, e_n=float(flat[k]))


def _temperature_value(base: SystemConfig, temperature: float) -> float:
    cfg = set_parameter(base, "bath.temperature", temperature)
    e_n, stable = _point_value(cfg, check_physicality=False)
    return e_n if stable else -math.inf


def survival_temperature(
    base: SystemConfig, t_max: float, resolution: float
) -> float:
    """Largest temperature in [0, t_max] with E_N above the survival threshold.

    Scans a coarse grid, verifies the qualifying points form a prefix
    (single downward crossing), then bisects the bracketing interval to
    ``resolution``.  A non-monotone scan profile falls back to a full
    scan at ``resolution`` spacing.  Requires E_N > threshold at T = 0.
    """
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise ValidationError(f"t_max must be > 0, got {t_max}")
    if not (math.isfinite(resolution) and 0.0 < resolution <= t_max):
        raise ValidationError(f"resolution must be in (0, t_max], got {resolution}")

    if _temperature_value(base, 0.0) <= SURVIVAL_THRESHOLD:
        raise ValidationError(
            "survival_temperature requires E_N > threshold at T = 0"
        )

    n_scan = int(min(201, max(9, math.floor(t_max / resolution) + 1)))
    grid = np.linspace(0.0, t_max, n_scan)
    qualifies = np.array(
        [_temperature_value(base, float(t)) > SURVIVAL_THRESHOLD for t in grid]
    )
    last = int(np.flatnonzero(qualifies)[-1])
    if last == n_scan - 1:
        return float(t_max)
    if not qualifies[: last + 1].all():
        # dip below threshold before the final crossing: non-monotone tail
        fine = np.arange(0.0, t_max + 0.5 * resolution, resolution)
        fine_ok = [
            float(t)
            for t in fine
            if _temperature_value(base, float(t)) > SURVIVAL_THRESHOLD
        ]
        return fine_ok[-1]
    lo, hi = float(grid[last]), float(grid[last + 1])
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if _temperature_value(base, mid) > SURVIVAL_THRESHOLD:
            lo = mid
        else:
            hi = mid
    return lo
