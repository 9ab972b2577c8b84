import math

import numpy as np
import pytest

from ncqengine.core import NCParams, SWConstants, SystemConfig, effective_coefficients, sw_constants
from ncqengine.errors import BracketError, ConvergenceError, DomainError
from ncqengine.oracle import (
    QuadraticHamiltonian,
    SolverSettings,
    build_quadratic,
    default_settings,
    heat_quadrature,
    root_solve,
    stieltjes_richardson,
    symplectic_frequencies,
    trapezoid_richardson,
    verify_commutators,
)


class TestCommutators:
    def test_identity_map(self):
        report = verify_commutators(SWConstants(1.0, 1.0), NCParams())
        assert all(v == 0.0 for v in report.residuals.values())
        assert report.passed

    def test_constrained_map(self):
        nc = NCParams(0.3, 0.2)
        report = verify_commutators(sw_constants(nc), nc)
        assert report.max_residual <= 1e-12
        assert set(report.residuals) == {"q1q2", "p1p2", "q1p1", "q1p2", "q2p1", "q2p2"}

    def test_unconstrained_map_fails_by_quarter_product(self):
        nc = NCParams(0.5, 0.5)
        report = verify_commutators(SWConstants(1.0, 1.0), nc)
        assert report.residuals["q1p1"] == 0.0625
        assert report.residuals["q2p2"] == 0.0625
        assert report.residuals["q1q2"] == 0.0
        assert not report.passed

    def test_deviation_matrix_antisymmetric(self):
        nc = NCParams(0.5, 0.5)
        dev = verify_commutators(SWConstants(1.0, 1.0), nc).deviation
        np.testing.assert_array_equal(dev, dev.T)


def _coeffs(omega_B, nc=NCParams(), sys_=SystemConfig()):
    return effective_coefficients(sw_constants(nc), sys_, omega_B, nc)


class TestQuadratic:
    def test_block_diagonal_without_field(self):
        ham = build_quadratic(_coeffs(0.0), 0.0)
        off = ham.matrix - np.diag(np.diag(ham.matrix))
        assert not off.any()

    def test_basis_probe(self):
        coeffs = _coeffs(3.0)
        assert build_quadratic(coeffs, 3.0).energy([1, 0, 0, 0]) == coeffs.alpha_tilde_sq

    def test_mixed_probe(self):
        nc = NCParams(0.2, 0.1)
        coeffs = _coeffs(3.0, nc)
        value = build_quadratic(coeffs, 3.0).energy([0, 1, 1, 0])
        expected = coeffs.alpha_tilde_sq + coeffs.beta_tilde_sq + (3.0 / 2 + coeffs.gamma)
        assert value == pytest.approx(expected, rel=1e-14)

    def test_rejects_asymmetric(self):
        mat = np.eye(4)
        mat[0, 1] = 1.0
        with pytest.raises(ValueError):
            QuadraticHamiltonian(mat)


class TestSymplectic:
    def test_isotropic_oscillator(self):
        w_plus, w_minus = symplectic_frequencies(build_quadratic(_coeffs(0.0), 0.0))
        assert w_plus == pytest.approx(1.0, rel=1e-12)
        assert w_minus == pytest.approx(1.0, rel=1e-12)

    def test_strong_field(self):
        w_plus, w_minus = symplectic_frequencies(build_quadratic(_coeffs(8.0), 8.0))
        assert w_plus == pytest.approx(math.sqrt(17) + 4, rel=1e-12)
        assert w_minus == pytest.approx(math.sqrt(17) - 4, rel=1e-12)

    def test_random_draw(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            nc = NCParams(*rng.uniform(0, 0.9, size=2))
            sys_ = SystemConfig(mass=rng.uniform(0.5, 3), omega=rng.uniform(0.5, 3))
            omega_B = rng.uniform(-5, 5)
            coeffs = _coeffs(omega_B, nc, sys_)
            shift = omega_B / 2 + coeffs.gamma
            got = symplectic_frequencies(build_quadratic(coeffs, omega_B))
            want = sorted([coeffs.ground_frequency + shift, coeffs.ground_frequency - shift], reverse=True)
            np.testing.assert_allclose(got, want, rtol=1e-9)

    def test_not_positive_definite(self):
        with pytest.raises(DomainError):
            symplectic_frequencies(QuadraticHamiltonian(np.diag([1.0, -1.0, 1.0, 1.0])))


class TestRootSolve:
    def test_linear(self):
        assert root_solve(lambda x: x - 2.0, 0.0, 10.0) == pytest.approx(2.0, abs=1e-13)

    def test_no_sign_change(self):
        with pytest.raises(BracketError):
            root_solve(lambda x: x * x + 1.0, -1.0, 1.0)

    def test_iteration_cap(self):
        with pytest.raises(ConvergenceError):
            root_solve(lambda x: x - 0.3, 0.0, 1.0, tol=1e-15, maxiter=5)

    def test_deterministic(self):
        f = lambda x: math.cos(x) - x  # noqa: E731
        assert root_solve(f, 0.0, 1.0) == root_solve(f, 0.0, 1.0)

    def test_isoenergetic_condition(self):
        # E00 at n_phi0 = 4 equals E10 after diluting the field by alpha1^2
        target = math.sqrt(17.0)
        root = root_solve(lambda a: 3 * math.sqrt(1 + 16 / a**4) - target, 1.0, 1e3)
        assert root == pytest.approx(2.0597671, abs=1e-7)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("NCQ_TOL", "1e-4")
        assert default_settings().root_tol == 1e-4
        coarse = root_solve(lambda x: x - 1 / 3, 0.0, 1.0)
        assert abs(coarse - 1 / 3) < 1e-4
        assert abs(coarse - 1 / 3) > 1e-12

    def test_env_rejects_nonsense(self, monkeypatch):
        monkeypatch.setenv("NCQ_TOL", "-1")
        with pytest.raises(ValueError):
            default_settings()


class TestQuadrature:
    def test_polynomial(self):
        assert trapezoid_richardson(lambda x: x**3, 0.0, 2.0, steps=100) == pytest.approx(4.0, rel=1e-12)

    def test_empty_interval(self):
        assert trapezoid_richardson(np.sin, 1.0, 1.0) == 0.0

    def test_stieltjes_matches_substitution(self):
        # int_0^1 x d(x^2) = int_0^1 2 x^2 dx = 2/3
        value = stieltjes_richardson(lambda x: x, lambda x: x**2, 0.0, 1.0, steps=100)
        assert value == pytest.approx(2 / 3, rel=1e-12)

    def test_reversal_flips_sign(self):
        fwd = stieltjes_richardson(np.cos, np.exp, 0.0, 1.5, steps=200)
        back = stieltjes_richardson(np.cos, np.exp, 1.5, 0.0, steps=200)
        assert back == pytest.approx(-fwd, rel=1e-12)

    def test_heat_quadrature_empty(self):
        energies = lambda b: (np.ones_like(b), 3 * np.ones_like(b))  # noqa: E731
        assert heat_quadrature(energies, lambda b: np.ones_like(b), 2.0, 2.0) == 0.0

    def test_heat_quadrature_min_steps(self):
        energies = lambda b: (np.ones_like(b), 3 * np.ones_like(b))  # noqa: E731
        with pytest.raises(ValueError):
            heat_quadrature(energies, lambda b: b, 0.0, 1.0, steps=10)

    def test_convergence_error(self):
        settings = SolverSettings(quad_rtol=1e-30, quad_max_refinements=2)
        energies = lambda b: (np.sin(b), np.cos(b))  # noqa: E731
        with pytest.raises(ConvergenceError):
            heat_quadrature(energies, lambda b: b / 10, 0.0, 1.0, steps=100, settings=settings)
