"""Parameter sweeps over cycle grids and their CSV serialisation."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import isoenergetic, isomagnetic
from .core import NCParams, Orientation, SystemConfig, compute_sigma
from .errors import DomainError, IoError, ParseError, ValidationError
from .oracle import SolverSettings, default_settings

log = logging.getLogger(__name__)

CYCLES = ("isomagnetic", "isoenergetic")
CSV_HEADER = "cycle,orientation,n_phi0,theta_eta,gamma,alpha,efficiency,status"
DEFAULT_ALPHA = (1.0, 3.0, 200)

_EVALUATORS = {
    "isomagnetic": isomagnetic.efficiency_value,
    "isoenergetic": isoenergetic.efficiency_value,
}


@dataclass(frozen=True)
class SweepConfig:
    cycle: str
    n_phi0: tuple = ()
    theta_eta: tuple = (0.0,)
    gamma: tuple = (0.0,)
    orientation: Orientation = Orientation.POSITIVE
    alpha_min: float = DEFAULT_ALPHA[0]
    alpha_max: float = DEFAULT_ALPHA[1]
    alpha_count: int = DEFAULT_ALPHA[2]
    hbar: float = 1.0
    omega: float = 1.0
    mass: float = 1.0
    output: str | None = None
    settings: SolverSettings = field(default_factory=default_settings)

    def validate(self) -> "SweepConfig":
        if self.cycle not in CYCLES:
            raise ValidationError(f"cycle must be one of {CYCLES}, got {self.cycle!r}")
        for name in ("n_phi0", "theta_eta", "gamma"):
            if not getattr(self, name):
                raise ValidationError(f"{name} list must be non-empty")
        if self.alpha_count < 2:
            raise ValidationError(f"alpha count must be >= 2, got {self.alpha_count}")
        if not self.alpha_min < self.alpha_max:
            raise ValidationError(
                f"alpha range needs min < max, got [{self.alpha_min}, {self.alpha_max}]"
            )
        if not self.alpha_min > 0:
            raise ValidationError(f"alpha must be positive, got min {self.alpha_min}")
        if any(n < 0 for n in self.n_phi0):
            raise ValidationError("n_phi0 values must be non-negative")
        if any(g < 0 for g in self.gamma):
            raise ValidationError("gamma values must be non-negative")
        try:
            SystemConfig(mass=self.mass, omega=self.omega)
            for te in self.theta_eta:
                NCParams.from_product(te, self.hbar)
        except DomainError as exc:
            raise ValidationError(str(exc)) from None
        return self

    @property
    def alphas(self) -> list[float]:
        return [float(a) for a in np.linspace(self.alpha_min, self.alpha_max, self.alpha_count)]

    def curves(self) -> list[tuple[float, float, float]]:
        """(n_phi0, theta_eta, gamma) combinations, one per plotted curve."""
        return list(itertools.product(sorted(self.n_phi0), sorted(self.theta_eta), sorted(self.gamma)))


@dataclass(frozen=True)
class SweepRow:
    cycle: str
    orientation: str
    n_phi0: float
    theta_eta: float
    gamma: float
    alpha: float
    efficiency: float | None
    status: str = "ok"

    def to_csv(self) -> str:
        eff = "" if self.efficiency is None else _fmt(self.efficiency)
        fields = [
            self.cycle,
            self.orientation,
            _fmt(self.n_phi0),
            _fmt(self.theta_eta),
            _fmt(self.gamma),
            _fmt(self.alpha),
            eff,
            self.status,
        ]
        return ",".join(fields)


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------

_LIST_KEYS = {"n_phi0", "theta_eta", "gamma"}
_FLOAT_KEYS = {"hbar", "omega", "mass", "root_tol", "quad_rtol"}
_KNOWN_KEYS = _LIST_KEYS | _FLOAT_KEYS | {"cycle", "orientation", "alpha", "output"}


def _floats(raw: str, key: str, lineno: int) -> list[float]:
    try:
        return [float(tok) for tok in raw.split(",")]
    except ValueError:
        raise ParseError(f"{key}: expected comma-separated numbers, got {raw!r}", lineno) from None


def parse_config(text: str) -> SweepConfig:
    """Parse ``key = value`` lines (``#`` comments, comma-separated lists).

    Raises:
        ParseError: malformed line, unknown key or unreadable value.
        ValidationError: well-formed config violating a SweepConfig invariant.
    """
    values: dict = {}
    settings = default_settings()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw_line.strip()!r}", lineno)
        key, _, raw = (part.strip() for part in line.partition("="))
        key = key.lower()
        if key not in _KNOWN_KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if not raw:
            raise ParseError(f"missing value for {key!r}", lineno)

        if key in _LIST_KEYS:
            values[key] = tuple(_floats(raw, key, lineno))
        elif key == "alpha":
            parts = [tok.strip() for tok in raw.split(",")]
            if len(parts) != 3:
                raise ParseError("alpha expects 'min, max, count'", lineno)
            lo, hi = _floats(",".join(parts[:2]), key, lineno)
            try:
                count = int(parts[2])
            except ValueError:
                raise ParseError(f"alpha count must be an integer, got {parts[2]!r}", lineno) from None
            values.update(alpha_min=lo, alpha_max=hi, alpha_count=count)
        elif key in ("root_tol", "quad_rtol"):
            settings = replace(settings, **{key: _floats(raw, key, lineno)[0]})
        elif key in _FLOAT_KEYS:
            values[key] = _floats(raw, key, lineno)[0]
        elif key == "orientation":
            try:
                values[key] = Orientation.parse(raw)
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        else:
            values[key] = raw

    if "cycle" not in values:
        raise ValidationError("config must name a cycle")
    if "n_phi0" not in values:
        raise ValidationError("config must list at least one n_phi0")
    return SweepConfig(settings=settings, **values).validate()


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def evaluate_point(
    cycle: str,
    orientation: Orientation | str,
    n_phi0: float,
    theta_eta: float,
    gamma: float,
    alpha: float,
    hbar: float = 1.0,
    omega: float = 1.0,
) -> SweepRow:
    """One grid point; domain errors become a status code instead of raising."""
    orientation = Orientation.parse(orientation)
    try:
        sigma = compute_sigma(NCParams.from_product(theta_eta, hbar))
        eff = _EVALUATORS[cycle](n_phi0, alpha, gamma, sigma, omega, orientation, hbar)
        status = "ok"
    except DomainError as exc:
        eff, status = None, f"domain_error:{exc.code}"
    return SweepRow(cycle, orientation.value, n_phi0, theta_eta, gamma, alpha, eff, status)


def _evaluate_curve(args) -> list[SweepRow]:
    cycle, orientation, n, te, g, alphas, hbar, omega = args
    return [evaluate_point(cycle, orientation, n, te, g, a, hbar, omega) for a in alphas]


def run_sweep(config: SweepConfig, jobs: int = 1) -> list[SweepRow]:
    """Evaluate the full Cartesian grid.

    Rows come back ordered by (n_phi0, theta_eta, gamma, alpha) whatever the
    worker count; ``executor.map`` preserves submission order.
    """
    alphas = config.alphas
    tasks = [
        (config.cycle, config.orientation, n, te, g, alphas, config.hbar, config.omega)
        for n, te, g in config.curves()
    ]
    if jobs <= 1 or len(tasks) <= 1:
        chunks = [_evaluate_curve(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_evaluate_curve, tasks))
    rows = [row for chunk in chunks for row in chunk]
    failed = sum(row.status != "ok" for row in rows)
    if failed:
        log.info("%d of %d grid points outside the admissible domain", failed, len(rows))
    return rows


def format_csv(rows: list[SweepRow]) -> str:
    return "\n".join([CSV_HEADER] + [row.to_csv() for row in rows]) + "\n"


def emit_csv(rows: list[SweepRow], path: str | Path) -> None:
    """Write rows with LF endings; identical rows give identical bytes."""
    if not rows:
        raise ValidationError("refusing to write an empty sweep")
    try:
        Path(path).write_bytes(format_csv(rows).encode("ascii"))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
