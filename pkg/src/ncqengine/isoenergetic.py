"""Isoenergetic engine: two constant-<E> legs joined by two isoentropic legs.

Cycle points, in terms of the Landau-radius ratio to point 1:

    1 --(isoenergetic, x alpha1)--> 2 --(isoentropic, x alpha)--> 3
      --(isoenergetic, x alpha3 < 1)--> 4 --(isoentropic)--> 1

so omega_B at point k is omega_B1 / ratio_k^2.  The working medium starts in
the ground state at point 1 and is fully excited at point 2.

Heats follow the working-medium convention (absorbed > 0), so that along an
isoenergetic leg Q = -W with W = sum_k int p_k dE_k the work done on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    EXCITED,
    GROUND,
    CycleResult,
    EffectiveField,
    Orientation,
    compute_sigma,
    eigenenergy,
    flux_factor,
    NCParams,
)
from .errors import DomainError
from .oracle import SolverSettings, heat_quadrature, root_solve, trapezoid_richardson, work_quadrature

__all__ = [
    "OccupationState",
    "IsoenergeticCycleSpec",
    "ground_probability",
    "isoentropic_work",
    "heat_isoenergetic",
    "alpha1_closed",
    "alpha3_closed",
    "theta_function",
    "efficiency_isoenergetic",
    "asymptotic_efficiency",
    "solve_alpha1",
    "solve_alpha3",
    "leg_heat_quadrature",
    "leg_work_quadrature",
    "magnetization_work",
]

PROBABILITY_SLACK = 1e-12
ALPHA1_BRACKET = (1.0, 1e3)
ALPHA3_BRACKET = (1e-3, 1.0)


@dataclass(frozen=True)
class OccupationState:
    p00: float
    p10: float

    def __post_init__(self):
        for name in ("p00", "p10"):
            value = getattr(self, name)
            if not -PROBABILITY_SLACK <= value <= 1.0 + PROBABILITY_SLACK:
                raise DomainError(f"{name} = {value} outside [0, 1]", code="probability")
        if abs(self.p00 + self.p10 - 1.0) > PROBABILITY_SLACK:
            raise DomainError(f"p00 + p10 = {self.p00 + self.p10} != 1", code="probability")

    @classmethod
    def ground(cls) -> "OccupationState":
        return cls(1.0, 0.0)

    @classmethod
    def excited(cls) -> "OccupationState":
        return cls(0.0, 1.0)

    @classmethod
    def from_p00(cls, p00: float) -> "OccupationState":
        return cls(p00, 1.0 - p00)


@dataclass(frozen=True)
class IsoenergeticCycleSpec:
    """Grid-level description of one isoenergetic cycle.

    Attributes:
        n_phi0: flux quanta |omega_B1| / (2 omega) at point 1.
        gamma: NC frequency shift (independent knob).
        sigma: deformation factor sqrt(1 - theta eta / hbar^2).
        alpha: free Landau-radius ratio of the isoentropic expansion 2 -> 3.
        omega: trap frequency.
        orientation: field orientation.
        hbar: reduced Planck constant.
    """

    n_phi0: float
    gamma: float = 0.0
    sigma: float = 1.0
    alpha: float = 2.0
    omega: float = 1.0
    orientation: Orientation = Orientation.POSITIVE
    hbar: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "orientation", Orientation.parse(self.orientation))
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}", code="alpha")
        if not self.n_phi0 > 0:
            raise DomainError(f"n_phi0 must be positive, got {self.n_phi0}", code="n_phi0")
        # validates gamma, omega, sigma
        EffectiveField(self.omega_B1, self.gamma, self.omega, self.sigma)

    @classmethod
    def from_theta_eta(cls, n_phi0, theta_eta, gamma=0.0, alpha=2.0, omega=1.0,
                       orientation=Orientation.POSITIVE, hbar=1.0):
        sigma = compute_sigma(NCParams.from_product(theta_eta, hbar))
        return cls(n_phi0, gamma, sigma, alpha, omega, orientation, hbar)

    @property
    def omega_B1(self) -> float:
        return self.orientation.sign * 2.0 * self.omega * self.n_phi0

    @property
    def signed_gamma(self) -> float:
        # reversing the field flips the gamma*omega_B cross terms only
        return self.orientation.sign * self.gamma

    def field(self, omega_B) -> EffectiveField:
        return EffectiveField(omega_B, self.gamma, self.omega, self.sigma)

    def field_at_ratio(self, x: float) -> EffectiveField:
        if not x > 0:
            raise DomainError(f"Landau-radius ratio must be positive, got {x}", code="alpha")
        return self.field(self.omega_B1 / x**2)

    def energies(self, omega_B):
        """(E00, E10) at one or many field points."""
        fld = self.field(omega_B)
        return eigenenergy(GROUND, fld, self.hbar), eigenenergy(EXCITED, fld, self.hbar)


def _p00_curve(omega_B, start: tuple[float, float], spec: IsoenergeticCycleSpec):
    b_a, p00_a = start
    e00_a, e10_a = spec.energies(b_a)
    e00, e10 = spec.energies(omega_B)
    gap = e00 - e10
    return (e10_a - e10) / gap + (e00_a - e10_a) / gap * p00_a


def ground_probability(
    omega_B: float, start: tuple[float, float], spec: IsoenergeticCycleSpec
) -> OccupationState:
    """Occupation at ``omega_B`` on the constant-<E> trajectory through ``start``.

    Args:
        omega_B: target field point.
        start: (omega_B_a, p00_a), the trajectory's initial point.
        spec: cycle parameters (gamma, sigma, omega, hbar).

    Raises:
        DomainError: the required occupation is not a probability, i.e. the
            target field cannot be reached at constant energy.
    """
    p00 = float(_p00_curve(omega_B, start, spec))
    if not -PROBABILITY_SLACK <= p00 <= 1.0 + PROBABILITY_SLACK:
        raise DomainError(
            f"p00 = {p00} at omega_B = {omega_B}: inadmissible isoenergetic trajectory",
            code="probability",
        )
    p00 = min(max(p00, 0.0), 1.0)
    return OccupationState.from_p00(p00)


def isoentropic_work(
    start: OccupationState, omega_B_a: float, omega_B_b: float, spec: IsoenergeticCycleSpec
) -> float:
    """Work done on the system with frozen occupations."""
    e00_a, e10_a = spec.energies(omega_B_a)
    e00_b, e10_b = spec.energies(omega_B_b)
    return start.p00 * (e00_b - e00_a) + start.p10 * (e10_b - e10_a)


def heat_isoenergetic(
    omega_B_a: float, omega_B_b: float, p00_a: float, spec: IsoenergeticCycleSpec
) -> float:
    """Closed-form heat absorbed along an isoenergetic leg a -> b.

    Q = <E>_a * ln[gap(a) / gap(b)],  gap = E00 - E10,  <E>_a the conserved
    mean energy.
    """
    if not 0.0 <= p00_a <= 1.0:
        raise DomainError(f"p00_a = {p00_a} is not a probability", code="probability")
    e00_a, e10_a = spec.energies(omega_B_a)
    e00_b, e10_b = spec.energies(omega_B_b)
    gap_a, gap_b = e00_a - e10_a, e00_b - e10_b
    if gap_a == 0.0 or gap_b == 0.0:
        raise DomainError("vanishing level gap", code="gap")
    mean_energy = e10_a + (e00_a - e10_a) * p00_a
    return mean_energy * math.log(gap_a / gap_b)


def alpha1_closed(spec: IsoenergeticCycleSpec) -> float:
    """Landau-radius ratio of the isoenergetic expansion, E00(B1) = E10(B2).

    Raises:
        DomainError: point 1 sits at too weak a field for the ground state to
            reach the excited level's energy by expanding.
    """
    n, g, w, s = spec.n_phi0, spec.signed_gamma, spec.omega, spec.sigma
    radicand = g**2 + 2.0 * w * g * n + w**2 * (n**2 - 8.0 * s**2)
    if radicand < 0:
        raise DomainError(
            f"field too weak for isoenergetic expansion (radicand {radicand:.6g} < 0)",
            code="alpha1_radicand",
        )
    denom = math.sqrt(w**2 * n**2 * radicand) - 3.0 * w * g * n
    if not denom > 0:
        raise DomainError("field too weak for isoenergetic expansion", code="alpha1_denominator")
    alpha1_sq = 3.0 * w**2 * n**2 / denom
    if not alpha1_sq > 1.0:
        raise DomainError(
            f"isoenergetic leg would compress (alpha1^2 = {alpha1_sq:.6g})",
            code="alpha1_not_expansion",
        )
    return math.sqrt(alpha1_sq)


def alpha3_closed(spec: IsoenergeticCycleSpec, alpha_alpha1: float) -> float:
    """Landau-radius ratio of the isoenergetic compression, E10(B3) = E00(B4).

    ``alpha_alpha1`` is the total ratio alpha * alpha1 reached at point 3.
    """
    if not alpha_alpha1 > 0:
        raise DomainError(f"alpha*alpha1 must be positive, got {alpha_alpha1}", code="alpha")
    n, g, w, s = spec.n_phi0, spec.signed_gamma, spec.omega, spec.sigma
    a2 = alpha_alpha1**2
    radicand = w**2 * n**2 * (
        18.0 * w * a2 * g * n + 9.0 * w**2 * n**2 + a2**2 * (9.0 * g**2 + 8.0 * s**2 * w**2)
    )
    if not radicand > 0:
        raise DomainError(f"alpha3 radicand {radicand:.6g} <= 0", code="alpha3_radicand")
    denom = math.sqrt(radicand) - w * a2 * g * n
    if not denom > 0:
        raise DomainError("alpha3 denominator non-positive", code="alpha3_denominator")
    return math.sqrt(w**2 * n**2 / denom)


def theta_function(x: float, spec: IsoenergeticCycleSpec) -> float:
    """sqrt(1 + F^2) at the field diluted by the Landau-radius ratio ``x``."""
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}", code="theta_arg")
    b1, g = spec.omega_B1, spec.gamma
    inner = b1**2 / (4.0 * x**4) + g * b1 / x**2 + g**2
    return math.sqrt(1.0 + inner / (spec.sigma**2 * spec.omega**2))


def cycle_points(spec: IsoenergeticCycleSpec) -> dict:
    """Field values omega_B at points 1-4 and the two derived ratios."""
    a1 = alpha1_closed(spec)
    a3 = alpha3_closed(spec, spec.alpha * a1)
    b1 = spec.omega_B1
    return {
        "alpha1": a1,
        "alpha3": a3,
        "1": b1,
        "2": b1 / a1**2,
        "3": b1 / (spec.alpha * a1) ** 2,
        "4": b1 / (spec.alpha * a1 * a3) ** 2,
    }


def efficiency_isoenergetic(spec: IsoenergeticCycleSpec) -> CycleResult:
    """Efficiency from the Theta-function closed form.

    The leg heats stored on the result come from :func:`heat_isoenergetic`
    and are bookkeeping only; ``efficiency`` is the Theta expression.
    """
    pts = cycle_points(spec)
    a1, a3, alpha = pts["alpha1"], pts["alpha3"], spec.alpha
    if not a3 < 1.0:
        raise DomainError(f"alpha3 = {a3:.6g} is not a compression", code="alpha3_not_compression")

    t_1 = theta_function(1.0, spec)
    t_a1 = theta_function(a1, spec)
    t_3 = theta_function(alpha * a1, spec)
    t_4 = theta_function(alpha * a1 * a3, spec)
    efficiency = 1.0 - 3.0 * (t_3 / t_1) * math.log(t_4 / t_3) / math.log(t_1 / t_a1)

    q_in = heat_isoenergetic(pts["1"], pts["2"], 1.0, spec)
    q_out = heat_isoenergetic(pts["3"], pts["4"], 0.0, spec)
    return CycleResult(
        cycle="isoenergetic",
        q_in=q_in,
        q_out=q_out,
        efficiency=efficiency,
        flux_factors={k: flux_factor(spec.field(pts[k])) for k in ("1", "2", "3", "4")},
        field_points={k: pts[k] for k in ("1", "2", "3", "4")},
        alpha1=a1,
        alpha3=a3,
        degenerate=alpha <= 1.0,
    )


def asymptotic_efficiency(alpha: float) -> float:
    """Strong-field limit 1 - 1/alpha^2."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}", code="alpha")
    return 1.0 - 1.0 / alpha**2


def efficiency_value(n_phi0, alpha, gamma=0.0, sigma=1.0, omega=1.0, orientation="positive", hbar=1.0):
    """Scalar shortcut used by sweeps."""
    spec = IsoenergeticCycleSpec(n_phi0, gamma, sigma, alpha, omega, Orientation.parse(orientation), hbar)
    return efficiency_isoenergetic(spec).efficiency


# ---------------------------------------------------------------------------
# Oracles: root-solved ratios and quadrature along the legs
# ---------------------------------------------------------------------------


def _alpha1_upper(spec: IsoenergeticCycleSpec) -> float:
    hi = ALPHA1_BRACKET[1]
    if spec.orientation is Orientation.REVERSED and spec.gamma > 0:
        # beyond the cancellation field the reversed spectrum climbs again
        x_cancel = math.sqrt(abs(spec.omega_B1) / (2.0 * spec.gamma))
        if 1.0 < x_cancel < hi:
            hi = x_cancel
    return hi


def solve_alpha1(spec: IsoenergeticCycleSpec, settings: SolverSettings | None = None) -> float:
    """Root-solve E10(B1 / x^2) = E00(B1) for the expansion ratio x."""
    target = eigenenergy(GROUND, spec.field_at_ratio(1.0), spec.hbar)
    tol = settings.root_tol if settings else None

    def mismatch(x):
        return eigenenergy(EXCITED, spec.field_at_ratio(x), spec.hbar) - target

    return root_solve(mismatch, ALPHA1_BRACKET[0], _alpha1_upper(spec), tol=tol)


def solve_alpha3(
    spec: IsoenergeticCycleSpec, alpha_alpha1: float, settings: SolverSettings | None = None
) -> float:
    """Root-solve E00(B3 / x^2) = E10(B3) for the compression ratio x."""
    target = eigenenergy(EXCITED, spec.field_at_ratio(alpha_alpha1), spec.hbar)
    tol = settings.root_tol if settings else None

    def mismatch(x):
        return eigenenergy(GROUND, spec.field_at_ratio(alpha_alpha1 * x), spec.hbar) - target

    return root_solve(mismatch, *ALPHA3_BRACKET, tol=tol)


def leg_heat_quadrature(
    spec: IsoenergeticCycleSpec,
    omega_B_a: float,
    omega_B_b: float,
    p00_a: float,
    steps: int = 10_000,
    settings: SolverSettings | None = None,
) -> float:
    """Heat along an isoenergetic leg by direct quadrature of sum E dp."""
    start = (omega_B_a, p00_a)
    return heat_quadrature(
        spec.energies, lambda b: _p00_curve(b, start, spec), omega_B_a, omega_B_b, steps, settings
    )


def leg_work_quadrature(
    spec: IsoenergeticCycleSpec,
    omega_B_a: float,
    omega_B_b: float,
    p00_a: float,
    steps: int = 10_000,
    settings: SolverSettings | None = None,
) -> float:
    """Work done on the system along an isoenergetic leg, sum p dE."""
    start = (omega_B_a, p00_a)
    return work_quadrature(
        spec.energies, lambda b: _p00_curve(b, start, spec), omega_B_a, omega_B_b, steps, settings
    )


def magnetization_work(
    start: OccupationState,
    omega_B_a: float,
    omega_B_b: float,
    spec: IsoenergeticCycleSpec,
    steps: int = 2_000,
) -> float:
    """-int M dB with M = -dE/dB from central differences, occupations frozen."""
    scale = max(abs(omega_B_a), abs(omega_B_b))
    h = 1e-5 * scale

    def mean_energy(b):
        e00, e10 = spec.energies(b)
        return start.p00 * e00 + start.p10 * e10

    def dE_dB(b):
        return (mean_energy(b + h) - mean_energy(b - h)) / (2.0 * h)

    return trapezoid_richardson(dE_dB, omega_B_a, omega_B_b, steps, rtol=1e-10)
