"""Quantum heat engines on a noncommutative phase space.

Exact spectrum of a trapped charge in a magnetic field with deformed
position/momentum commutators, the isomagnetic, isoenergetic and Carnot
cycles built on it, and numerical oracles that check every closed form.
"""

from .core import (
    EXCITED,
    GROUND,
    CycleResult,
    EffectiveCoefficients,
    EffectiveField,
    NCParams,
    Orientation,
    QuantumLevel,
    SWConstants,
    SystemConfig,
    compute_sigma,
    effective_coefficients,
    eigenenergy,
    flux_factor,
    gamma_effective,
    landau_radius,
    sw_constants,
)
from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    IoError,
    NCQError,
    ParseError,
    ValidationError,
)

__version__ = "0.1.0"
