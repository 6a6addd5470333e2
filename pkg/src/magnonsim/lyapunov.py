"""Stability check and steady-state Lyapunov solver.

The steady-state covariance matrix V of the linear Langevin system
du/dt = A u + n(t) with ⟨n nᵀ⟩_sym = D δ(t−t′) solves

    A V + V Aᵀ = −D,

which has a unique positive-semidefinite solution exactly when A is
Hurwitz.  The production path here is Bartels–Stewart: one real Schur
decomposition A = Z T Zᵀ (which also yields the spectrum, hence the
stability verdict, for free), a quasi-triangular Sylvester solve via
LAPACK ``trsyl``, and the back-transformation.  A dense Kronecker
vectorization solver is kept alongside as a slow reference path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, get_lapack_funcs, schur

from .errors import NumericalError, StabilityError

__all__ = [
    "StabilityReport",
    "is_stable",
    "solve_steady_state",
    "solve_steady_state_kron",
]

# Stability margin and residual tolerance, both relative to matrix scale.
STABILITY_MARGIN = 1e-9
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of a stability check: verdict plus the spectral abscissa."""

    stable: bool
    spectral_abscissa: float

    def __bool__(self) -> bool:
        return self.stable


def _schur_eigenvalue_real_parts(t: np.ndarray) -> np.ndarray:
    """Real parts of the eigenvalues of a real quasi-triangular Schur factor."""
    n = t.shape[0]
    out = np.empty(n)
    i = 0
    while i < n:
        if i + 1 < n and t[i + 1, i] != 0.0:
            # 2×2 block: complex pair or two reals
            tr = t[i, i] + t[i + 1, i + 1]
            det = t[i, i] * t[i + 1, i + 1] - t[i, i + 1] * t[i + 1, i]
            disc = 0.25 * tr * tr - det
            if disc < 0.0:  # complex conjugate pair
                out[i] = out[i + 1] = 0.5 * tr
            else:
                root = np.sqrt(disc)
                out[i] = 0.5 * tr + root
                out[i + 1] = 0.5 * tr - root
            i += 2
        else:
            out[i] = t[i, i]
            i += 1
    return out


def _stability_threshold(a: np.ndarray) -> float:
    return float(-STABILITY_MARGIN * np.abs(a).max(initial=0.0))


def is_stable(a: np.ndarray) -> StabilityReport:
    """Check whether the drift matrix is Hurwitz within the relative margin.

    Stable means the spectral abscissa (largest eigenvalue real part) lies
    below −1e−9 × ‖A‖_max, so marginal spectra are classified unstable.
    """
    a = np.asarray(a, dtype=float)
    try:
        eigenvalues = np.linalg.eigvals(a)
    except LinAlgError as exc:  # pragma: no cover - LAPACK failure is exotic
        raise NumericalError(f"eigensolver failed on drift matrix:\n{a!r}") from exc
    abscissa = float(eigenvalues.real.max())
    return StabilityReport(bool(abscissa < _stability_threshold(a)), abscissa)


def solve_steady_state(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Solve A V + V Aᵀ = −D for the steady-state covariance matrix.

    Raises ``StabilityError`` when A is not Hurwitz (the Schur spectrum is
    checked before solving) and ``NumericalError`` when the triangular
    solve fails or the residual ‖AV + VAᵀ + D‖_max exceeds
    1e−10 × max(1, ‖D‖_max).  The result is symmetrized exactly.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    if a.shape != d.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NumericalError(f"incompatible shapes {a.shape} and {d.shape}")
    try:
        t, z = schur(a, output="real")
    except LinAlgError as exc:  # pragma: no cover
        raise NumericalError(f"Schur decomposition failed on:\n{a!r}") from exc
    abscissa = float(_schur_eigenvalue_real_parts(t).max())
    if abscissa >= _stability_threshold(a):
        raise StabilityError(
            f"drift matrix is not Hurwitz (spectral abscissa {abscissa:.6e}); "
            "no steady state exists",
            spectral_abscissa=abscissa,
        )
    rhs = z.T @ (-d) @ z
    trsyl = get_lapack_funcs("trsyl", (t, rhs))
    y, scale, info = trsyl(t, t, rhs, tranb="T")
    if info < 0 or scale == 0.0:
        raise NumericalError(f"triangular Sylvester solve failed (info={info})")
    if info == 1:
        # eigenvalue pair summing to ~0: the reduced system is near singular
        raise NumericalError("near-singular Lyapunov system despite stable spectrum")
    v = z @ (y / scale) @ z.T
    v = 0.5 * (v + v.T)
    residual = np.abs(a @ v + v @ a.T + d).max()
    if residual > RESIDUAL_TOL * max(1.0, np.abs(d).max()):
        raise NumericalError(
            f"Lyapunov residual {residual:.3e} exceeds tolerance; "
            "solution rejected"
        )
    return v


def solve_steady_state_kron(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Reference Lyapunov solver via dense Kronecker vectorization.

    Solves (I⊗A + A⊗I) vec(V) = −vec(D) as one n²×n² linear system.
    Slow (n² unknowns) but algorithmically independent of the Schur path;
    used as the correctness oracle.
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    report = is_stable(a)
    if not report:
        raise StabilityError(
            f"drift matrix is not Hurwitz (spectral abscissa "
            f"{report.spectral_abscissa:.6e}); no steady state exists",
            spectral_abscissa=report.spectral_abscissa,
        )
    n = a.shape[0]
    eye = np.eye(n)
    coeff = np.kron(eye, a) + np.kron(a, eye)
    try:
        v = np.linalg.solve(coeff, -d.reshape(-1)).reshape(n, n)
    except LinAlgError as exc:
        raise NumericalError("Kronecker Lyapunov system is singular") from exc
    return 0.5 * (v + v.T)
