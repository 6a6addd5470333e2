"""Two-magnon covariance extraction and logarithmic negativity.

For a two-mode Gaussian state with covariance matrix
V_mm = [[A, C], [Cᵀ, B]] (2×2 blocks), the smaller symplectic eigenvalue
of the partial transpose is

    η⁻ = 2^{−1/2} [Σ − (Σ² − 4 det V_mm)^{1/2}]^{1/2},
    Σ  = det A + det B − 2 det C,

and the logarithmic negativity is E_N = max(0, −ln 2η⁻); the state is
entangled iff η⁻ < 1/2.  Vacuum variance is 1/2 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, block_diag

from .errors import NumericalError, UnphysicalStateError, ValidationError
from .model import J_ROT

__all__ = [
    "TwoModeCovariance",
    "NegativityResult",
    "extract_magnon_block",
    "log_negativity",
    "symplectic_eigenvalues",
]

# E_N within this of the separability boundary is reported as exactly 0.
BOUNDARY_TOL = 1e-12

# Discriminant Σ² − 4 det V within this relative band is a roundoff
# residue of a degenerate partial-transpose spectrum (e.g. near-vacuum
# states, where the exact discriminant vanishes); treat it as 0.  The
# measured noise floor is ~4e−16 × Σ²; genuine near-boundary states in
# this model sit at ≳ 0.1 × Σ².
DISC_REL_TOL = 1e-13


@dataclass(frozen=True, eq=False)
class TwoModeCovariance:
    """4×4 covariance matrix of two modes, stored as its 2×2 blocks."""

    block_a: np.ndarray
    block_b: np.ndarray
    block_c: np.ndarray

    def __post_init__(self):
        for name in ("block_a", "block_b", "block_c"):
            block = np.asarray(getattr(self, name), dtype=float)
            if block.shape != (2, 2):
                raise ValidationError(f"{name} must be 2×2, got {block.shape}")
            object.__setattr__(self, name, block)
        for name in ("block_a", "block_b"):
            block = getattr(self, name)
            scale = max(1.0, np.abs(block).max())
            if abs(block[0, 1] - block[1, 0]) > 1e-10 * scale:
                raise ValidationError(f"{name} is not symmetric")

    @property
    def matrix(self) -> np.ndarray:
        """Assembled 4×4 matrix [[A, C], [Cᵀ, B]]."""
        return np.block(
            [[self.block_a, self.block_c], [self.block_c.T, self.block_b]]
        )


@dataclass(frozen=True)
class NegativityResult:
    """η⁻, E_N = max(0, −ln 2η⁻), and the PPT entanglement verdict."""

    eta_minus: float
    e_n: float
    entangled: bool


def extract_magnon_block(v: np.ndarray) -> TwoModeCovariance:
    """Select the two-magnon 4×4 submatrix (rows/cols 5–8) of an 8×8 V."""
    v = np.asarray(v, dtype=float)
    if v.shape != (8, 8):
        raise ValidationError(f"expected an 8×8 covariance matrix, got {v.shape}")
    return TwoModeCovariance(
        block_a=v[4:6, 4:6].copy(),
        block_b=v[6:8, 6:8].copy(),
        block_c=v[4:6, 6:8].copy(),
    )


def _det2(m: np.ndarray) -> float:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def log_negativity(v_mm: TwoModeCovariance) -> NegativityResult:
    """Logarithmic negativity of a two-mode covariance matrix.

    Raises ``UnphysicalStateError`` when the determinant/discriminant
    preconditions fail beyond roundoff tolerance — that signals a broken
    upstream solve, never a merely separable state.
    """
    det_a = _det2(v_mm.block_a)
    det_b = _det2(v_mm.block_b)
    det_c = _det2(v_mm.block_c)
    sigma = det_a + det_b - 2.0 * det_c
    det_v = float(np.linalg.det(v_mm.matrix))
    if det_v <= 0.0:
        raise UnphysicalStateError(f"det V_mm = {det_v:.6e} is not positive")

    disc = sigma * sigma - 4.0 * det_v
    disc_floor = max(1e-12, DISC_REL_TOL * sigma * sigma)
    if disc < -disc_floor:
        raise UnphysicalStateError(
            f"partial-transpose discriminant {disc:.6e} < 0 beyond tolerance"
        )
    if disc < DISC_REL_TOL * sigma * sigma:
        disc = 0.0

    inner = sigma - math.sqrt(disc)
    if inner <= 0.0:
        raise UnphysicalStateError(
            f"nonpositive η⁻² (Σ = {sigma:.6e}, disc = {disc:.6e})"
        )
    eta_minus = math.sqrt(0.5 * inner)
    raw = -math.log(2.0 * eta_minus)
    e_n = raw if raw > BOUNDARY_TOL else 0.0
    return NegativityResult(eta_minus=eta_minus, e_n=e_n, entangled=e_n > 0.0)


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, ascending, one per mode.

    Computed as |eig(iΩV)| with Ω the direct sum of [[0,1],[−1,0]]; the
    2n eigenvalues come in ± pairs which are averaged down to n values.
    Physical states satisfy min ≥ 1/2 (up to solver tolerance).
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 2 or v.shape[0] != v.shape[1] or v.shape[0] % 2:
        raise ValidationError(f"covariance matrix must be square even-dim, got {v.shape}")
    scale = max(1.0, np.abs(v).max())
    if np.abs(v - v.T).max() > 1e-10 * scale:
        raise ValidationError("covariance matrix is not symmetric")
    n_modes = v.shape[0] // 2
    omega = block_diag(*([J_ROT] * n_modes))
    try:
        w = np.linalg.eigvals(1j * omega @ v)
    except LinAlgError as exc:  # pragma: no cover
        raise NumericalError("eigensolver failed on iΩV") from exc
    mags = np.sort(np.abs(w))
    # ± pairs sit adjacent after sorting; average them down to n values
    return 0.5 * (mags[0::2] + mags[1::2])
