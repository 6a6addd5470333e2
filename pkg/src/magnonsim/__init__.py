"""Steady-state entanglement simulator for squeezed-vacuum-driven
two-cavity / two-magnon systems.

Typical use::

    from magnonsim import (
        ModeParams, SqueezeDrive, SystemConfig,
        build_drift, build_diffusion, solve_steady_state,
        extract_magnon_block, log_negativity,
    )

    v = solve_steady_state(build_drift(cfg), build_diffusion(cfg))
    result = log_negativity(extract_magnon_block(v))
"""

from .config import UnitSystem, format_config_dump, load_config, read_config
from .entanglement import (
    NegativityResult,
    TwoModeCovariance,
    extract_magnon_block,
    log_negativity,
    symplectic_eigenvalues,
)
from .errors import (
    ConfigError,
    NumericalError,
    StabilityError,
    UnphysicalStateError,
    ValidationError,
)
from .lyapunov import (
    StabilityReport,
    is_stable,
    solve_steady_state,
    solve_steady_state_kron,
)
from .model import (
    DEFAULT_CARRIER_FREQUENCY,
    J_ROT,
    BathConfig,
    ModeParams,
    SqueezeDrive,
    SystemConfig,
    build_diffusion,
    build_drift,
    squeeze_occupations,
    thermal_occupation,
)
from .sweep import (
    SURVIVAL_THRESHOLD,
    OptimumResult,
    SweepAxis,
    SweepResult,
    find_optimum,
    run_sweep,
    set_parameter,
    survival_temperature,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # model
    "ModeParams", "SqueezeDrive", "BathConfig", "SystemConfig",
    "thermal_occupation", "squeeze_occupations",
    "build_drift", "build_diffusion",
    "J_ROT", "DEFAULT_CARRIER_FREQUENCY",
    # lyapunov
    "StabilityReport", "is_stable", "solve_steady_state", "solve_steady_state_kron",
    # entanglement
    "TwoModeCovariance", "NegativityResult",
    "extract_magnon_block", "log_negativity", "symplectic_eigenvalues",
    # sweep
    "SweepAxis", "SweepResult", "OptimumResult",
    "run_sweep", "find_optimum", "survival_temperature", "set_parameter",
    "SURVIVAL_THRESHOLD",
    # config
    "UnitSystem", "load_config", "read_config", "format_config_dump",
    # errors
    "ValidationError", "ConfigError", "StabilityError",
    "UnphysicalStateError", "NumericalError",
]
