"""Independent numerical checks for the closed-form results.

Nothing in here calls the closed-form spectrum, alpha_1/alpha_3 formulas or
the analytic isoenergetic heat; it only works from operator algebra, the
quadratic form of the mapped Hamiltonian, and brute-force numerics.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import EffectiveCoefficients, NCParams, SWConstants
from .errors import BracketError, ConvergenceError, DomainError

__all__ = [
    "SolverSettings",
    "default_settings",
    "CommutatorReport",
    "QuadraticHamiltonian",
    "verify_commutators",
    "build_quadratic",
    "symplectic_frequencies",
    "root_solve",
    "trapezoid_richardson",
    "stieltjes_richardson",
    "heat_quadrature",
    "work_quadrature",
]

COMMUTATOR_TOL = 1e-12
_PAIRS = ("q1q2", "p1p2", "q1p1", "q1p2", "q2p1", "q2p2")
_INDEX = {"q1": 0, "q2": 1, "p1": 2, "p2": 3}


@dataclass(frozen=True)
class SolverSettings:
    """Tolerances and caps for the numerical oracles.

    Defaults are frozen so that tests are reproducible; ``NCQ_TOL`` in the
    environment overrides ``root_tol`` through :func:`default_settings`.
    """

    root_tol: float = 1e-14
    root_maxiter: int = 200
    quad_steps: int = 10_000
    quad_rtol: float = 1e-6
    quad_max_refinements: int = 6


def default_settings() -> SolverSettings:
    raw = os.environ.get("NCQ_TOL")
    if raw is None or not raw.strip():
        return SolverSettings()
    tol = float(raw)
    if not tol > 0:
        raise ValueError(f"NCQ_TOL must be positive, got {raw!r}")
    return SolverSettings(root_tol=tol)


# ---------------------------------------------------------------------------
# Commutators of the mapped operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommutatorReport:
    """Absolute deviations of the mapped commutators from the target algebra.

    ``residuals`` holds the six independent pairs; ``deviation`` is the full
    4x4 matrix over (q1, q2, p1, p2), including the trivially-zero diagonal.
    """

    residuals: dict
    deviation: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.max(self.deviation))

    @property
    def passed(self) -> bool:
        return self.max_residual <= COMMUTATOR_TOL


def sw_matrix(sw: SWConstants, nc: NCParams) -> np.ndarray:
    """Rows express (q1, q2, p1, p2) over the canonical basis (Q1, Q2, Pi1, Pi2)."""
    mu, nu, hbar = sw.mu, sw.nu, nc.hbar
    t = nc.theta / (2.0 * nu * hbar)
    e = nc.eta / (2.0 * mu * hbar)
    return np.array(
        [
            [nu, 0.0, 0.0, -t],
            [0.0, nu, t, 0.0],
            [0.0, e, mu, 0.0],
            [-e, 0.0, 0.0, mu],
        ]
    )


def _symplectic_form(n: int = 2) -> np.ndarray:
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def target_commutators(nc: NCParams) -> np.ndarray:
    """Coefficients C with [x_a, x_b] = i C_ab for the deformed algebra."""
    th, et, hb = nc.theta, nc.eta, nc.hbar
    return np.array(
        [
            [0.0, th, hb, 0.0],
            [-th, 0.0, 0.0, hb],
            [-hb, 0.0, 0.0, et],
            [0.0, -hb, -et, 0.0],
        ]
    )


def verify_commutators(sw: SWConstants, nc: NCParams) -> CommutatorReport:
    """Expand every commutator of the mapped operators.

    Bilinearity gives [x_a, x_b] = sum_cd M_ac M_bd [X_c, X_d] with the
    canonical [X_c, X_d] = i hbar J_cd, so the commutator coefficients are
    hbar * M J M^T.
    """
    m = sw_matrix(sw, nc)
    mapped = nc.hbar * (m @ _symplectic_form() @ m.T)
    deviation = np.abs(mapped - target_commutators(nc))
    residuals = {
        name: float(deviation[_INDEX[name[:2]], _INDEX[name[2:]]]) for name in _PAIRS
    }
    return CommutatorReport(residuals=residuals, deviation=deviation)


# ---------------------------------------------------------------------------
# Quadratic form and normal modes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticHamiltonian:
    """H = x^T A x over x = (Q1, Q2, Pi1, Pi2)."""

    matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.matrix, dtype=float)
        if a.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {a.shape}")
        if not np.allclose(a, a.T, rtol=0.0, atol=1e-14):
            raise ValueError("coefficient matrix is not symmetric")
        object.__setattr__(self, "matrix", a)

    def energy(self, x) -> float:
        x = np.asarray(x, dtype=float)
        return float(x @ self.matrix @ x)


def build_quadratic(
    coeffs: EffectiveCoefficients, omega_B: float, gamma: float | None = None
) -> QuadraticHamiltonian:
    if gamma is None:
        gamma = coeffs.gamma
    a, b = coeffs.alpha_tilde_sq, coeffs.beta_tilde_sq
    half = (omega_B / 2.0 + gamma) / 2.0
    mat = np.diag([a, a, b, b])
    # c (Pi1 Q2 - Pi2 Q1), split symmetrically over the off-diagonal pairs
    mat[1, 2] = mat[2, 1] = half
    mat[0, 3] = mat[3, 0] = -half
    return QuadraticHamiltonian(mat)


def symplectic_frequencies(ham: QuadraticHamiltonian) -> tuple[float, float]:
    """Normal-mode frequencies of the classical flow x' = J grad H.

    Returns:
        (omega_plus, omega_minus), sorted descending.

    Raises:
        DomainError: if the quadratic form is not positive definite.
    """
    try:
        np.linalg.cholesky(ham.matrix)
    except np.linalg.LinAlgError:
        raise DomainError("quadratic form is not positive definite", code="not_pd") from None
    generator = _symplectic_form() @ (2.0 * ham.matrix)
    # eigenvalues come as +-i omega pairs: four moduli, each frequency twice
    moduli = np.sort(np.abs(np.linalg.eigvals(generator).imag))[::-1]
    return float(moduli[0]), float(moduli[2])


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------


def root_solve(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float | None = None,
    maxiter: int | None = None,
) -> float:
    """Plain bisection on a sign-changing bracket.

    Bisection is used on purpose: the iterate sequence depends only on the
    signs of f, so results are reproducible bit for bit.

    Args:
        f: continuous scalar function.
        lo, hi: bracket endpoints with f(lo) * f(hi) <= 0.
        tol: relative bracket width at which to stop.
        maxiter: iteration cap.

    Raises:
        BracketError: endpoints have the same sign.
        ConvergenceError: cap reached before the bracket shrank to ``tol``.
    """
    settings = default_settings()
    tol = settings.root_tol if tol is None else tol
    maxiter = settings.root_maxiter if maxiter is None else maxiter

    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = ({f_lo}, {f_hi})")

    for _ in range(maxiter):
        mid = lo + (hi - lo) / 2.0
        if abs(hi - lo) <= tol * max(1.0, abs(mid)) or mid in (lo, hi):
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not converge in {maxiter} iterations")


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------


def _richardson(rule: Callable[[int], float], steps: int, rtol: float, max_refinements: int) -> float:
    # trapezoid-type rules have an h^2 leading error term
    coarse = rule(steps)
    previous = None
    for _ in range(max_refinements):
        steps *= 2
        fine = rule(steps)
        estimate = (4.0 * fine - coarse) / 3.0
        if previous is not None:
            scale = max(abs(estimate), abs(previous))
            if abs(estimate - previous) <= rtol * scale or scale == 0.0:
                return estimate
        previous, coarse = estimate, fine
    raise ConvergenceError(
        f"quadrature refinements still disagree beyond {rtol} after {max_refinements} levels"
    )


def trapezoid_richardson(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    steps: int = 10_000,
    rtol: float = 1e-6,
    max_refinements: int = 6,
) -> float:
    """Integral of a smooth vectorised ``f`` over [a, b]."""
    if a == b:
        return 0.0

    def rule(n: int) -> float:
        x = np.linspace(a, b, n + 1)
        y = f(x)
        return float((b - a) / n * (y[0] / 2.0 + y[1:-1].sum() + y[-1] / 2.0))

    return _richardson(rule, steps, rtol, max_refinements)


def stieltjes_richardson(
    weight: Callable[[np.ndarray], np.ndarray],
    measure: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    steps: int = 10_000,
    rtol: float = 1e-6,
    max_refinements: int = 6,
) -> float:
    """Riemann-Stieltjes integral of ``weight`` d(``measure``) over [a, b].

    Trapezoidal weights on a uniform grid avoid differentiating ``measure``.
    """
    if a == b:
        return 0.0

    def rule(n: int) -> float:
        x = np.linspace(a, b, n + 1)
        w = weight(x)
        dm = np.diff(measure(x))
        return float(np.sum(0.5 * (w[:-1] + w[1:]) * dm))

    return _richardson(rule, steps, rtol, max_refinements)


LevelEnergies = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def heat_quadrature(
    energies: LevelEnergies,
    p00: Callable[[np.ndarray], np.ndarray],
    b_a: float,
    b_b: float,
    steps: int = 10_000,
    settings: SolverSettings | None = None,
) -> float:
    """Heat absorbed along a trajectory, sum_k int E_k dp_k.

    Args:
        energies: field -> (E00, E10) arrays.
        p00: field -> ground-state occupation along the trajectory.
        b_a, b_b: field endpoints (any coordinate proportional to B).
        steps: base number of panels, refined by doubling.
    """
    settings = settings or default_settings()
    if steps < 100:
        raise ValueError(f"steps must be >= 100, got {steps}")

    heat_ground = stieltjes_richardson(
        lambda x: energies(x)[0], p00, b_a, b_b, steps,
        settings.quad_rtol, settings.quad_max_refinements,
    )
    heat_excited = stieltjes_richardson(
        lambda x: energies(x)[1], lambda x: 1.0 - p00(x), b_a, b_b, steps,
        settings.quad_rtol, settings.quad_max_refinements,
    )
    return heat_ground + heat_excited


def work_quadrature(
    energies: LevelEnergies,
    p00: Callable[[np.ndarray], np.ndarray],
    b_a: float,
    b_b: float,
    steps: int = 10_000,
    settings: SolverSettings | None = None,
) -> float:
    """Work done on the system, sum_k int p_k dE_k."""
    settings = settings or default_settings()
    if steps < 100:
        raise ValueError(f"steps must be >= 100, got {steps}")
    work_ground = stieltjes_richardson(
        p00, lambda x: energies(x)[0], b_a, b_b, steps,
        settings.quad_rtol, settings.quad_max_refinements,
    )
    work_excited = stieltjes_richardson(
        lambda x: 1.0 - p00(x), lambda x: energies(x)[1], b_a, b_b, steps,
        settings.quad_rtol, settings.quad_max_refinements,
    )
    return work_ground + work_excited
