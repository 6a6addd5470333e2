"""Unit tests for magnon-block extraction and logarithmic negativity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magnonsim import (
    TwoModeCovariance,
    UnphysicalStateError,
    ValidationError,
    build_diffusion,
    build_drift,
    extract_magnon_block,
    log_negativity,
    solve_steady_state,
    symplectic_eigenvalues,
)
from conftest import GOLDEN_EN_DOUBLE, GOLDEN_ETA_DOUBLE, make_baseline


def tmsv(r: float) -> TwoModeCovariance:
    """Two-mode squeezed vacuum covariance (vacuum variance 1/2)."""
    c2 = 0.5 * math.cosh(2 * r)
    s2 = 0.5 * math.sinh(2 * r)
    return TwoModeCovariance(
        block_a=c2 * np.eye(2),
        block_b=c2 * np.eye(2),
        block_c=np.diag([s2, -s2]),
    )


def rotation2(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


class TestExtractMagnonBlock:
    def test_identity_restriction(self):
        block = extract_magnon_block(0.5 * np.eye(8))
        assert np.array_equal(block.block_a, 0.5 * np.eye(2))
        assert np.array_equal(block.block_b, 0.5 * np.eye(2))
        assert np.array_equal(block.block_c, np.zeros((2, 2)))
        assert np.array_equal(block.matrix, 0.5 * np.eye(4))

    def test_magnon_cavity_correlations_do_not_leak(self):
        v = 0.5 * np.eye(8)
        v[0, 4] = v[4, 0] = 0.3  # cavity1-magnon1 cross term
        v[2, 6] = v[6, 2] = -0.2  # cavity2-magnon2 cross term
        block = extract_magnon_block(v)
        assert np.array_equal(block.block_c, np.zeros((2, 2)))

    def test_baseline_cross_block_is_significant(self, baseline_double):
        v = solve_steady_state(
            build_drift(baseline_double), build_diffusion(baseline_double)
        )
        block = extract_magnon_block(v)
        assert np.abs(block.block_c).max() > 0.01

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValidationError):
            extract_magnon_block(np.eye(4))

    def test_indexing_matches_submatrix(self):
        rng = np.random.default_rng(5)
        m = rng.normal(size=(8, 8))
        v = m @ m.T
        block = extract_magnon_block(v)
        assert np.array_equal(block.matrix, v[4:8, 4:8])


class TestLogNegativity:
    def test_vacuum(self):
        result = log_negativity(TwoModeCovariance(
            0.5 * np.eye(2), 0.5 * np.eye(2), np.zeros((2, 2))
        ))
        assert result.eta_minus == pytest.approx(0.5, abs=1e-15)
        assert result.e_n == 0.0
        assert not result.entangled

    @pytest.mark.parametrize("r", [0.3, 0.9, 1.5])
    def test_tmsv_analytic(self, r):
        result = log_negativity(tmsv(r))
        assert result.e_n == pytest.approx(2 * r, abs=1e-10)
        assert result.entangled

    def test_tmsv_strictly_increasing_in_r(self):
        values = [log_negativity(tmsv(r)).e_n for r in np.linspace(0.05, 2.0, 40)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_golden_baseline_value(self, baseline_double):
        v = solve_steady_state(
            build_drift(baseline_double), build_diffusion(baseline_double)
        )
        result = log_negativity(extract_magnon_block(v))
        assert result.e_n == pytest.approx(GOLDEN_EN_DOUBLE, abs=1e-9)
        assert result.eta_minus == pytest.approx(GOLDEN_ETA_DOUBLE, abs=1e-9)
        assert result.entangled

    def test_separable_product_state(self):
        block = TwoModeCovariance(
            0.9 * np.eye(2), 1.4 * np.eye(2), np.zeros((2, 2))
        )
        result = log_negativity(block)
        assert result.e_n == 0.0
        assert not result.entangled

    def test_thermal_product_state_not_flagged(self):
        # unequal thermal modes: PT spectrum nondegenerate, still separable
        block = TwoModeCovariance(
            0.8 * np.eye(2), 1.1 * np.eye(2), np.zeros((2, 2))
        )
        result = log_negativity(block)
        assert result.e_n == 0.0

    def test_label_swap_exact(self, baseline_double):
        v = solve_steady_state(
            build_drift(baseline_double), build_diffusion(baseline_double)
        )
        block = extract_magnon_block(v)
        swapped = TwoModeCovariance(
            block_a=block.block_b, block_b=block.block_a, block_c=block.block_c.T
        )
        assert log_negativity(swapped).e_n == log_negativity(block).e_n

    @given(
        phi1=st.floats(0.0, 2 * math.pi),
        phi2=st.floats(0.0, 2 * math.pi),
        r=st.floats(0.1, 1.5),
    )
    @settings(max_examples=60, deadline=None)
    def test_local_rotation_invariance(self, phi1, phi2, r):
        base = tmsv(r)
        r1, r2 = rotation2(phi1), rotation2(phi2)
        rotated = TwoModeCovariance(
            block_a=r1 @ base.block_a @ r1.T,
            block_b=r2 @ base.block_b @ r2.T,
            block_c=r1 @ base.block_c @ r2.T,
        )
        assert log_negativity(rotated).e_n == pytest.approx(
            log_negativity(base).e_n, abs=1e-10
        )

    def test_ppt_consistency(self, baseline_double):
        for theta2 in np.linspace(0.0, 2 * math.pi, 17):
            cfg = make_baseline(theta2=float(theta2))
            v = solve_steady_state(build_drift(cfg), build_diffusion(cfg))
            res = log_negativity(extract_magnon_block(v))
            assert res.entangled == (res.e_n > 0.0)
            assert res.entangled == (res.eta_minus < 0.5 - 1e-12)

    def test_rejects_nonpositive_determinant(self):
        # det V_mm < 0: blatantly unphysical
        block = TwoModeCovariance(
            np.diag([1.0, -1.0]), np.eye(2), np.zeros((2, 2))
        )
        with pytest.raises(UnphysicalStateError):
            log_negativity(block)

    def test_rejects_negative_discriminant(self):
        # strong xx/yy cross terms push Σ negative: complex PT spectrum
        block = TwoModeCovariance(
            0.25 * np.eye(2),
            0.25 * np.eye(2),
            0.3 * np.array([[0.0, 1.0], [-1.0, 0.0]]),
        )
        with pytest.raises(UnphysicalStateError):
            log_negativity(block)

    def test_rejects_asymmetric_block(self):
        with pytest.raises(ValidationError):
            TwoModeCovariance(
                np.array([[1.0, 0.2], [0.3, 1.0]]), np.eye(2), np.zeros((2, 2))
            )


class TestSymplecticEigenvalues:
    def test_vacuum(self):
        nu = symplectic_eigenvalues(0.5 * np.eye(8))
        assert np.allclose(nu, 0.5 * np.ones(4), rtol=0, atol=1e-14)

    def test_single_thermal_mode(self):
        n = 1.7
        nu = symplectic_eigenvalues((n + 0.5) * np.eye(2))
        assert nu.shape == (1,)
        assert nu[0] == pytest.approx(n + 0.5, rel=1e-12)

    def test_tmsv_modes(self):
        # TMSV is a pure state: both symplectic eigenvalues exactly 1/2
        nu = symplectic_eigenvalues(tmsv(0.9).matrix)
        assert np.allclose(nu, 0.5, rtol=1e-10)

    def test_baseline_physical(self, baseline_double):
        v = solve_steady_state(
            build_drift(baseline_double), build_diffusion(baseline_double)
        )
        nu = symplectic_eigenvalues(v)
        assert nu.shape == (4,)
        assert np.all(np.diff(nu) >= -1e-12)  # ascending
        assert nu.min() >= 0.5 - 1e-9

    def test_random_physical_states(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            m = rng.normal(size=(8, 8))
            v = 0.5 * np.eye(8) + 0.1 * m @ m.T  # vacuum plus classical noise
            assert symplectic_eigenvalues(v).min() >= 0.5 - 1e-9

    def test_rejects_odd_dimension(self):
        with pytest.raises(ValidationError):
            symplectic_eigenvalues(np.eye(3))

    def test_rejects_asymmetric(self):
        v = np.eye(4)
        v[0, 1] = 0.5
        with pytest.raises(ValidationError):
            symplectic_eigenvalues(v)
