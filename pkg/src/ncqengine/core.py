"""Deformed-algebra parameters, Seiberg-Witten map and the exact spectrum.

A charged particle in a cylindrical harmonic trap under a uniform magnetic
field, living on a plane whose position and momentum operators satisfy

    [q1, q2] = i theta,   [p1, p2] = i eta,   [q_i, p_j] = i hbar delta_ij.

All quantities are expressed in terms of the magnetic frequency
``omega_B = q B / m``.  Its sign carries the field orientation: a negative
``omega_B`` is the reversed field, for which the cross term ``gamma*omega_B``
in the flux factor changes sign.  Natural units (hbar = m = omega = q = 1)
are the defaults everywhere.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "NCParams",
    "SystemConfig",
    "Orientation",
    "EffectiveField",
    "QuantumLevel",
    "GROUND",
    "EXCITED",
    "SWConstants",
    "EffectiveCoefficients",
    "CycleResult",
    "compute_sigma",
    "sw_constants",
    "gamma_effective",
    "effective_frequency_sq",
    "effective_coefficients",
    "flux_factor",
    "eigenenergy",
    "landau_radius",
]


@dataclass(frozen=True)
class NCParams:
    """Noncommutative deformation of the planar Heisenberg algebra.

    Attributes:
        theta: position-position parameter (area units).
        eta: momentum-momentum parameter (momentum squared units).
        hbar: reduced Planck constant.
    """

    theta: float = 0.0
    eta: float = 0.0
    hbar: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar}", code="hbar")
        if not self.theta * self.eta < self.hbar**2:
            raise DomainError(
                f"theta*eta = {self.theta * self.eta} must be below hbar^2 = {self.hbar**2}",
                code="sigma",
            )

    @classmethod
    def from_product(cls, theta_eta: float, hbar: float = 1.0) -> "NCParams":
        """Symmetric split theta = |eta| = sqrt(|theta_eta|).

        Only the product enters sigma, so this is the shorthand used by the
        CLI and the figure grids.
        """
        root = math.sqrt(abs(theta_eta))
        return cls(theta=root, eta=math.copysign(root, theta_eta), hbar=hbar)

    @property
    def theta_eta(self) -> float:
        return self.theta * self.eta

    @property
    def sigma(self) -> float:
        return compute_sigma(self)

    def sigma_matrix(self) -> np.ndarray:
        """Sigma_ij = delta_ij + theta_ik eta_kj / hbar^2 for the 2D case.

        Raises:
            DomainError: if the matrix is singular (theta*eta = hbar^2).
        """
        eps = np.array([[0.0, 1.0], [-1.0, 0.0]])
        mat = np.eye(2) + (self.theta * eps) @ (self.eta * eps) / self.hbar**2
        if np.linalg.det(mat) == 0.0:
            raise DomainError("Sigma matrix is singular", code="sigma")
        return mat


@dataclass(frozen=True)
class SystemConfig:
    """Particle and trap: mass, trap frequency, charge."""

    mass: float = 1.0
    omega: float = 1.0
    charge: float = 1.0

    def __post_init__(self):
        for name in ("mass", "omega", "charge"):
            value = getattr(self, name)
            if not value > 0:
                raise DomainError(f"{name} must be positive, got {value}", code=name)

    def magnetic_frequency(self, b_field: float) -> float:
        """omega_B = q B / m."""
        return self.charge * b_field / self.mass

    def field_strength(self, omega_B: float) -> float:
        return omega_B * self.mass / self.charge


class Orientation(enum.Enum):
    POSITIVE = "positive"
    REVERSED = "reversed"

    @property
    def sign(self) -> int:
        return 1 if self is Orientation.POSITIVE else -1

    @classmethod
    def parse(cls, value: "str | Orientation") -> "Orientation":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(
                f"orientation must be 'positive' or 'reversed', got {value!r}"
            ) from None


@dataclass(frozen=True)
class EffectiveField:
    """Everything the spectrum needs at one point of a cycle.

    ``omega_B`` is signed; ``gamma`` is treated as an independent knob rather
    than recomputed from ``omega_B`` (see :func:`gamma_effective` for the
    derived value).
    """

    omega_B: float
    gamma: float = 0.0
    omega: float = 1.0
    sigma: float = 1.0

    def __post_init__(self):
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be non-negative, got {self.gamma}", code="gamma")
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}", code="omega")
        if not 0 < self.sigma <= 1:
            raise DomainError(f"sigma must lie in (0, 1], got {self.sigma}", code="sigma")

    @classmethod
    def from_flux_quanta(
        cls,
        n_phi0: float,
        gamma: float = 0.0,
        sigma: float = 1.0,
        omega: float = 1.0,
        orientation: "Orientation | str" = Orientation.POSITIVE,
    ) -> "EffectiveField":
        if n_phi0 < 0:
            raise DomainError(f"n_phi0 must be non-negative, got {n_phi0}", code="n_phi0")
        sign = Orientation.parse(orientation).sign
        return cls(omega_B=sign * 2.0 * omega * n_phi0, gamma=gamma, omega=omega, sigma=sigma)

    @property
    def orientation(self) -> Orientation:
        return Orientation.REVERSED if self.omega_B < 0 else Orientation.POSITIVE

    @property
    def n_phi0(self) -> float:
        return abs(self.omega_B) / (2.0 * self.omega)

    def diluted(self, x: float) -> "EffectiveField":
        """Field after the Landau radius grows by the factor ``x``."""
        if not x > 0:
            raise DomainError(f"expansion ratio must be positive, got {x}", code="alpha")
        return EffectiveField(self.omega_B / x**2, self.gamma, self.omega, self.sigma)


@dataclass(frozen=True)
class QuantumLevel:
    kappa: int = 0
    ell: int = 0

    def __post_init__(self):
        if self.kappa < 0:
            raise DomainError(f"kappa must be >= 0, got {self.kappa}", code="kappa")

    @property
    def degeneracy_factor(self) -> int:
        return 2 * self.kappa + abs(self.ell) + 1


# The engines only ever populate these two levels; ell stays 0 throughout.
GROUND = QuantumLevel(0, 0)
EXCITED = QuantumLevel(1, 0)


@dataclass(frozen=True)
class SWConstants:
    mu: float
    nu: float

    def constraint_residual(self, nc: NCParams) -> float:
        """|mu nu + theta eta / (4 mu nu hbar^2) - 1|; zero for a canonical map."""
        prod = self.mu * self.nu
        return abs(prod + nc.theta_eta / (4.0 * prod * nc.hbar**2) - 1.0)


@dataclass(frozen=True)
class EffectiveCoefficients:
    alpha_tilde_sq: float
    beta_tilde_sq: float
    gamma: float

    @property
    def ground_frequency(self) -> float:
        """2 alpha~ beta~, the oscillator quantum of the mapped Hamiltonian."""
        return 2.0 * math.sqrt(self.alpha_tilde_sq * self.beta_tilde_sq)


@dataclass
class CycleResult:
    """Signed heat/work bookkeeping for one cycle evaluation.

    Heats are from the working medium's point of view: absorbed > 0.
    ``work`` is the net work delivered by the engine, q_in + q_out.
    """

    cycle: str
    q_in: float
    q_out: float
    efficiency: float
    flux_factors: dict = field(default_factory=dict)
    field_points: dict = field(default_factory=dict)
    alpha1: float | None = None
    alpha3: float | None = None
    degenerate: bool = False

    @property
    def work(self) -> float:
        return self.q_in + self.q_out


def compute_sigma(nc: NCParams) -> float:
    """sqrt(1 - theta eta / hbar^2)."""
    ratio = nc.theta * nc.eta / nc.hbar**2
    if not ratio < 1.0:
        raise DomainError(f"theta*eta/hbar^2 = {ratio} >= 1", code="sigma")
    return math.sqrt(1.0 - ratio)


def sw_constants(nc: NCParams) -> SWConstants:
    """Symmetric canonical Seiberg-Witten constants.

    mu nu is the root of (mu nu)^2 - mu nu + theta eta / (4 hbar^2) = 0 that
    tends to 1 in the commutative limit, i.e. (1 + sigma) / 2.
    """
    value = math.sqrt((1.0 + compute_sigma(nc)) / 2.0)
    return SWConstants(mu=value, nu=value)


def effective_frequency_sq(omega_B: float, omega: float) -> float:
    return omega_B**2 / 4.0 + omega**2


def gamma_effective(nc: NCParams, sys: SystemConfig, Omega: float) -> float:
    """theta m Omega^2 / (2 hbar) + eta / (2 m hbar)."""
    if not Omega > 0:
        raise DomainError(f"Omega must be positive, got {Omega}", code="omega")
    m, hbar = sys.mass, nc.hbar
    return nc.theta * m * Omega**2 / (2.0 * hbar) + nc.eta / (2.0 * m * hbar)


def effective_coefficients(
    sw: SWConstants, sys: SystemConfig, omega_B: float, nc: NCParams
) -> EffectiveCoefficients:
    """Coefficients of the commutative Hamiltonian obtained through the map.

    H = a (Q1^2 + Q2^2) + b (Pi1^2 + Pi2^2) + (omega_B/2 + gamma)(Pi1 Q2 - Pi2 Q1)
    """
    m, hbar = sys.mass, nc.hbar
    theta, eta = nc.theta, nc.eta
    mu, nu = sw.mu, sw.nu
    omega_sq = effective_frequency_sq(omega_B, sys.omega)
    a_sq = (
        nu**2 * m * omega_sq / 2.0
        + eta**2 / (8.0 * m * mu**2 * hbar**2)
        + (nu / mu) * omega_B * eta / (4.0 * hbar)
    )
    b_sq = (
        mu**2 / (2.0 * m)
        + m * omega_sq * theta**2 / (8.0 * nu**2 * hbar**2)
        + (mu / nu) * omega_B * theta / (4.0 * hbar)
    )
    if not (a_sq > 0 and b_sq > 0):
        raise DomainError(
            f"non-positive effective coefficients ({a_sq}, {b_sq})", code="coefficients"
        )
    gamma = gamma_effective(nc, sys, math.sqrt(omega_sq))
    return EffectiveCoefficients(alpha_tilde_sq=a_sq, beta_tilde_sq=b_sq, gamma=gamma)


def flux_factor(fld: EffectiveField) -> float:
    """(omega_B^2/4 + gamma omega_B + gamma^2) / (sigma omega)^2.

    Written as a square so it is non-negative by construction and exactly
    zero at the reversed-field cancellation point omega_B = -2 gamma.
    """
    return ((fld.omega_B / 2.0 + fld.gamma) / (fld.sigma * fld.omega)) ** 2


def eigenenergy(level: QuantumLevel, fld: EffectiveField, hbar: float = 1.0) -> float:
    """E = sigma hbar omega sqrt(1 + F^2)(2 kappa + |ell| + 1) - hbar(omega_B/2 + gamma) ell."""
    # np.sqrt so that an array of omega_B values evaluates a whole trajectory
    radial = fld.sigma * hbar * fld.omega * np.sqrt(1.0 + flux_factor(fld))
    energy = radial * level.degeneracy_factor - hbar * (fld.omega_B / 2.0 + fld.gamma) * level.ell
    return float(energy) if np.ndim(energy) == 0 else energy


def landau_radius(omega_B: float, sys: SystemConfig, hbar: float = 1.0) -> float:
    """Magnetic length sqrt(hbar / (m omega_B))."""
    if not omega_B > 0:
        raise DomainError(f"omega_B must be positive, got {omega_B}", code="omega_B")
    return math.sqrt(hbar / (sys.mass * omega_B))
