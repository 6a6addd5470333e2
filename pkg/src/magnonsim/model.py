"""System description and matrix builders for the two-cavity / two-magnon model.

Two microwave cavities are coupled to each other at rate J; cavity j is
coupled to magnon mode j at rate g_j.  Each cavity input may carry a
squeezed vacuum field (``SqueezeDrive``); undriven inputs are
thermal/vacuum.  Magnon baths are always thermal.

Quadratures use the symmetric convention x = (o + o†)/√2,
y = i(o† − o)/√2, so the vacuum variance is 1/2.  The phase-space
ordering, used for every 8×8 matrix in this package, is

    u = [x_a1, y_a1, x_a2, y_a2, x_m1, y_m1, x_m2, y_m2].

The Langevin dynamics is du/dt = A u + n(t), with drift matrix A built
by :func:`build_drift` and noise correlations ⟨n nᵀ⟩_sym = D δ(t−t′)
built by :func:`build_diffusion`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import hbar, k as k_B
from scipy.linalg import block_diag

from .errors import ValidationError

__all__ = [
    "J_ROT",
    "DEFAULT_CARRIER_FREQUENCY",
    "ModeParams",
    "SqueezeDrive",
    "BathConfig",
    "SystemConfig",
    "thermal_occupation",
    "squeeze_occupations",
    "build_drift",
    "build_diffusion",
]

# Single-mode symplectic generator: rotates (x, y) quadratures.
J_ROT = np.array([[0.0, 1.0], [-1.0, 0.0]])

# Lab-frame reference frequency for thermal occupations (2π × 10 GHz),
# typical of hybrid cavity-magnon experiments.
DEFAULT_CARRIER_FREQUENCY = 2.0 * math.pi * 10.0e9


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModeParams:
    """Detuning Δ = ω_mode − ω_s and decay rate κ of one mode, in rad/s."""

    detuning: float
    decay: float

    def __post_init__(self):
        object.__setattr__(self, "detuning", _require_finite("detuning", self.detuning))
        object.__setattr__(self, "decay", _require_finite("decay", self.decay))
        # zero decay leaves the mode bathless and the steady state ill-defined
        if self.decay <= 0.0:
            raise ValidationError(f"decay must be > 0, got {self.decay}")


@dataclass(frozen=True)
class SqueezeDrive:
    """Squeezed-vacuum input on one cavity: strength r ≥ 0, phase theta (rad)."""

    r: float
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "r", _require_finite("r", self.r))
        object.__setattr__(self, "theta", _require_finite("theta", self.theta))
        if self.r < 0.0:
            raise ValidationError(f"r must be >= 0, got {self.r}")


@dataclass(frozen=True)
class BathConfig:
    """Common bath temperature (K) and lab-frame carrier frequency ω_s (rad/s)."""

    temperature: float = 0.0
    carrier_frequency: float = DEFAULT_CARRIER_FREQUENCY

    def __post_init__(self):
        object.__setattr__(
            self, "temperature", _require_finite("temperature", self.temperature)
        )
        object.__setattr__(
            self,
            "carrier_frequency",
            _require_finite("carrier_frequency", self.carrier_frequency),
        )
        if self.temperature < 0.0:
            raise ValidationError(f"temperature must be >= 0, got {self.temperature}")
        if self.carrier_frequency <= 0.0:
            raise ValidationError(
                f"carrier_frequency must be > 0, got {self.carrier_frequency}"
            )


@dataclass(frozen=True)
class SystemConfig:
    """Full parameter set of the two-cavity / two-magnon system.

    Couplings g1, g2 (cavity-magnon) and J (cavity-cavity) are real and
    non-negative; drive phases carry all phase freedom.  ``drive1`` /
    ``drive2`` may be None, meaning a thermal/vacuum input on that cavity.
    """

    cavity1: ModeParams
    cavity2: ModeParams
    magnon1: ModeParams
    magnon2: ModeParams
    g1: float
    g2: float
    J: float
    drive1: SqueezeDrive | None = None
    drive2: SqueezeDrive | None = None
    bath: BathConfig = field(default_factory=BathConfig)

    def __post_init__(self):
        for name in ("g1", "g2", "J"):
            value = _require_finite(name, getattr(self, name))
            object.__setattr__(self, name, value)
            if value < 0.0:
                raise ValidationError(f"{name} must be >= 0, got {value}")

    @property
    def drives(self) -> tuple[SqueezeDrive | None, SqueezeDrive | None]:
        return (self.drive1, self.drive2)

    @property
    def n_drives(self) -> int:
        return sum(d is not None for d in self.drives)

    @property
    def is_single_squeezed(self) -> bool:
        return self.n_drives == 1

    @property
    def is_double_squeezed(self) -> bool:
        return self.n_drives == 2


def thermal_occupation(frequency: float, temperature: float) -> float:
    """Mean thermal occupation 1/(exp(ħω/k_BT) − 1) of a bath mode.

    ``frequency`` is angular (rad/s) and must be positive; ``temperature``
    is in kelvin.  Returns exactly 0.0 at T = 0 and underflows cleanly to
    0.0 for ħω ≫ k_BT.
    """
    if frequency <= 0.0:
        raise ValidationError(f"frequency must be > 0, got {frequency}")
    if temperature < 0.0:
        raise ValidationError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    # divide by T last so subnormal temperatures overflow x instead of
    # underflowing the denominator
    x = hbar * frequency / k_B / temperature
    if x > 700.0:  # exp would overflow; occupation is identically 0 in double
        return 0.0
    return 1.0 / math.expm1(x)


def squeeze_occupations(drive: SqueezeDrive) -> tuple[float, complex]:
    """Effective occupations (N_s, M_s) of an ideal squeezed vacuum.

    N_s = sinh²r and M_s = e^{iθ} sinh r cosh r, satisfying
    |M_s|² = N_s(N_s + 1) exactly for the ideal (pure) squeezed field.
    """
    sh = math.sinh(drive.r)
    ch = math.cosh(drive.r)
    n_s = sh * sh
    m_s = complex(math.cos(drive.theta), math.sin(drive.theta)) * (sh * ch)
    return n_s, m_s


def build_drift(config: SystemConfig) -> np.ndarray:
    """Assemble the 8×8 drift matrix A of the linearized Langevin dynamics.

    Diagonal 2×2 blocks are −κI + Δ·J_rot; the cavity-cavity blocks are
    J·J_rot and the cavity-magnon blocks g_j·J_rot, in both off-diagonal
    positions.  All other blocks vanish.
    """
    a = np.zeros((8, 8))
    modes = (config.cavity1, config.cavity2, config.magnon1, config.magnon2)
    eye2 = np.eye(2)
    for idx, mode in enumerate(modes):
        s = slice(2 * idx, 2 * idx + 2)
        a[s, s] = -mode.decay * eye2 + mode.detuning * J_ROT
    couplings = (
        (0, 1, config.J),  # cavity1 - cavity2
        (0, 2, config.g1),  # cavity1 - magnon1
        (1, 3, config.g2),  # cavity2 - magnon2
    )
    for i, j, rate in couplings:
        block = rate * J_ROT
        a[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = block
        a[2 * j : 2 * j + 2, 2 * i : 2 * i + 2] = block
    return a


def _squeezed_block(decay: float, drive: SqueezeDrive) -> np.ndarray:
    n_s, m_s = squeeze_occupations(drive)
    diag = 2.0 * n_s + 1.0
    block = decay * np.array(
        [
            [diag + 2.0 * m_s.real, 2.0 * m_s.imag],
            [2.0 * m_s.imag, diag - 2.0 * m_s.real],
        ]
    )
    # ideal |M|² = N(N+1) gives det = κ² > 0; anything else is a bug here
    assert np.linalg.det(block) > 0.0, "squeezed diffusion block lost positivity"
    return block


def build_diffusion(config: SystemConfig) -> np.ndarray:
    """Assemble the 8×8 diffusion matrix D (block-diagonal, one 2×2 per mode).

    Driven cavities get the squeezed-vacuum block; undriven cavities and
    both magnon modes get thermal blocks κ(2N+1)I with the occupation
    evaluated at the mode's lab frequency ω_s + Δ.
    """
    bath = config.bath
    eye2 = np.eye(2)

    def thermal_block(mode: ModeParams) -> np.ndarray:
        n_th = thermal_occupation(
            bath.carrier_frequency + mode.detuning, bath.temperature
        )
        return mode.decay * (2.0 * n_th + 1.0) * eye2

    blocks = []
    for cavity, drive in ((config.cavity1, config.drive1), (config.cavity2, config.drive2)):
        if drive is not None:
            blocks.append(_squeezed_block(cavity.decay, drive))
        else:
            blocks.append(thermal_block(cavity))
    blocks.append(thermal_block(config.magnon1))
    blocks.append(thermal_block(config.magnon2))
    return block_diag(*blocks)
