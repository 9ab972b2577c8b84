"""Isomagnetic engine: two constant-field legs joined by two isoentropic legs.

Point I (ground state, field omega_B) is heated to the excited level at fixed
field, the field is then diluted by the Landau-radius ratio ``alpha`` with
frozen occupations, the system relaxes back to the ground state at the
weaker field, and a final isoentropic leg closes the loop.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .core import EXCITED, GROUND, CycleResult, EffectiveField, Orientation, eigenenergy, flux_factor
from .errors import DomainError

__all__ = [
    "IsomagneticCycleSpec",
    "heat_hot",
    "heat_cold",
    "efficiency_isomagnetic",
    "isoentropic_works",
    "entropy_generation",
]


@dataclass(frozen=True)
class IsomagneticCycleSpec:
    field_I: EffectiveField
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}", code="alpha")

    @classmethod
    def from_grid(
        cls,
        n_phi0: float,
        alpha: float,
        gamma: float = 0.0,
        sigma: float = 1.0,
        omega: float = 1.0,
        orientation: Orientation | str = Orientation.POSITIVE,
    ) -> "IsomagneticCycleSpec":
        fld = EffectiveField.from_flux_quanta(n_phi0, gamma, sigma, omega, orientation)
        return cls(field_I=fld, alpha=alpha)

    @property
    def field_III(self) -> EffectiveField:
        return self.field_I.diluted(self.alpha)


def heat_hot(field_I: EffectiveField, hbar: float = 1.0) -> float:
    """Heat absorbed on I -> II: E10(B_I) - E00(B_I)."""
    return eigenenergy(EXCITED, field_I, hbar) - eigenenergy(GROUND, field_I, hbar)


def heat_cold(field_I: EffectiveField, alpha: float, hbar: float = 1.0) -> float:
    """Heat on III -> IV at the diluted field; negative."""
    field_III = field_I.diluted(alpha)
    return eigenenergy(GROUND, field_III, hbar) - eigenenergy(EXCITED, field_III, hbar)


def isoentropic_works(spec: IsomagneticCycleSpec, hbar: float = 1.0) -> tuple[float, float]:
    """Work done on the system along II -> III (excited) and IV -> I (ground)."""
    f1, f3 = spec.field_I, spec.field_III
    w_23 = eigenenergy(EXCITED, f3, hbar) - eigenenergy(EXCITED, f1, hbar)
    w_41 = eigenenergy(GROUND, f1, hbar) - eigenenergy(GROUND, f3, hbar)
    return w_23, w_41


def efficiency_isomagnetic(spec: IsomagneticCycleSpec, hbar: float = 1.0) -> CycleResult:
    """1 - |Q_out / Q_in|.

    For ``alpha <= 1`` the loop runs as a compressor; the formal value is
    returned unclamped with ``degenerate=True``.
    """
    q_in = heat_hot(spec.field_I, hbar)
    q_out = heat_cold(spec.field_I, spec.alpha, hbar)
    degenerate = spec.alpha <= 1.0
    if degenerate:
        warnings.warn(
            f"alpha = {spec.alpha} <= 1: not an engine cycle, efficiency is formal",
            RuntimeWarning,
            stacklevel=2,
        )
    return CycleResult(
        cycle="isomagnetic",
        q_in=q_in,
        q_out=q_out,
        efficiency=1.0 - abs(q_out / q_in),
        flux_factors={"I": flux_factor(spec.field_I), "III": flux_factor(spec.field_III)},
        field_points={"I": spec.field_I.omega_B, "III": spec.field_III.omega_B},
        degenerate=degenerate,
    )


def entropy_generation(q_absorbed: float, t_system: float, t_hot: float) -> float:
    """dS_gen = dQ / T - dQ / T_hot for heat dQ taken from the hot bath."""
    if not (t_system > 0 and t_hot > 0):
        raise DomainError(
            f"temperatures must be positive, got T={t_system}, T_hot={t_hot}",
            code="temperature",
        )
    return q_absorbed / t_system - q_absorbed / t_hot


def efficiency_value(n_phi0, alpha, gamma=0.0, sigma=1.0, omega=1.0, orientation="positive", hbar=1.0):
    """Scalar shortcut used by sweeps."""
    spec = IsomagneticCycleSpec.from_grid(n_phi0, alpha, gamma, sigma, omega, orientation)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return efficiency_isomagnetic(spec, hbar).efficiency

