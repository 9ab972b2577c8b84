"""Carnot ceiling and its independence from the deformation parameters."""

from __future__ import annotations

import inspect
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DomainError

__all__ = ["CarnotSpec", "InvarianceReport", "carnot_efficiency", "nc_invariance_scan"]


@dataclass(frozen=True)
class CarnotSpec:
    t_cold: float
    t_hot: float

    def __post_init__(self):
        if not (0 < self.t_cold <= self.t_hot):
            raise DomainError(
                f"need 0 < T_C <= T_H, got T_C={self.t_cold}, T_H={self.t_hot}",
                code="temperature",
            )


def carnot_efficiency(spec: CarnotSpec) -> float:
    """1 - T_C / T_H."""
    return 1.0 - spec.t_cold / spec.t_hot


@dataclass
class InvarianceReport:
    """Carnot efficiency evaluated at every (theta_eta, gamma) grid point.

    ``formula_inputs`` lists the parameters :func:`carnot_efficiency` accepts,
    which is the structural half of the argument: no NC parameter can reach it.
    """

    entries: list = field(default_factory=list)
    formula_inputs: tuple = ()

    @property
    def spread(self) -> float:
        if not self.entries:
            return 0.0
        values = [eff for _, _, eff in self.entries]
        return max(values) - min(values)


def nc_invariance_scan(spec: CarnotSpec, grid: Iterable[tuple[float, float]]) -> InvarianceReport:
    """Evaluate the Carnot efficiency across an NC parameter grid.

    Args:
        spec: reservoir temperatures.
        grid: iterable of (theta_eta, gamma) pairs.
    """
    inputs = tuple(inspect.signature(carnot_efficiency).parameters)
    entries = [(te, g, carnot_efficiency(spec)) for te, g in grid]
    return InvarianceReport(entries=entries, formula_inputs=inputs)
