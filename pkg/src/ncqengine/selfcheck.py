"""Oracle suite behind ``ncq check``.

Every check pits a closed form against something computed another way and
returns (passed, detail).  The closed-form alpha_1 is injectable so that a
deliberately perturbed formula can be shown to fail.
"""

from __future__ import annotations

import itertools
import math
import sys
import time
from typing import Callable, Iterator

import numpy as np

from . import isomagnetic
from .carnot import CarnotSpec, carnot_efficiency, nc_invariance_scan
from .core import (
    GROUND,
    EffectiveField,
    NCParams,
    Orientation,
    SystemConfig,
    compute_sigma,
    effective_coefficients,
    eigenenergy,
    flux_factor,
    sw_constants,
)
from .isoenergetic import (
    IsoenergeticCycleSpec,
    alpha1_closed,
    alpha3_closed,
    asymptotic_efficiency,
    efficiency_isoenergetic,
    heat_isoenergetic,
    leg_heat_quadrature,
    leg_work_quadrature,
    solve_alpha1,
    solve_alpha3,
)
from .oracle import build_quadratic, symplectic_frequencies, verify_commutators

GRID_N = (4.0, 10.0, 100.0)
GRID_GAMMA = (0.0, 0.1, 0.5)
GRID_THETA_ETA = (0.0, 0.1, 0.5)
GRID_ALPHA = (1.2, 1.6, 2.0, 2.5, 3.0)
DRAW_SEED = 20_170_419


def random_draws(count: int = 1000, seed: int = DRAW_SEED) -> Iterator[tuple]:
    """Admissible (NCParams, SystemConfig, omega_B) triples, reproducibly."""
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < count:
        hbar = rng.uniform(0.5, 2.0)
        # non-negative deformation keeps the derived gamma >= 0
        theta, eta = rng.uniform(0.0, 1.0, size=2)
        if theta * eta >= 0.95 * hbar**2:
            continue
        sys_ = SystemConfig(mass=rng.uniform(0.2, 5.0), omega=rng.uniform(0.2, 5.0))
        yield NCParams(theta, eta, hbar), sys_, rng.uniform(-10.0, 10.0)
        produced += 1


def figure_grid_specs(orientation: Orientation = Orientation.POSITIVE) -> Iterator[IsoenergeticCycleSpec]:
    for n, g, te, a in itertools.product(GRID_N, GRID_GAMMA, GRID_THETA_ETA, GRID_ALPHA):
        yield IsoenergeticCycleSpec.from_theta_eta(n, te, gamma=g, alpha=a, orientation=orientation)


def rel_err(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


def check_commutators(draws: int = 1000) -> tuple[bool, str]:
    worst = 0.0
    for nc, _, _ in random_draws(draws):
        worst = max(worst, verify_commutators(sw_constants(nc), nc).max_residual)
    return worst <= 1e-12, f"max residual {worst:.2e} over {draws} draws"


def check_spectrum(draws: int = 1000) -> tuple[bool, str]:
    worst_gap = worst_modes = 0.0
    for nc, sys_, omega_B in random_draws(draws):
        coeffs = effective_coefficients(sw_constants(nc), sys_, omega_B, nc)
        fld = EffectiveField(omega_B, coeffs.gamma, sys_.omega, compute_sigma(nc))
        exact = eigenenergy(GROUND, fld, nc.hbar)
        worst_gap = max(worst_gap, rel_err(nc.hbar * coeffs.ground_frequency, exact))
        w_plus, w_minus = symplectic_frequencies(build_quadratic(coeffs, omega_B))
        shift = omega_B / 2.0 + coeffs.gamma
        expected = sorted(
            (coeffs.ground_frequency + shift, coeffs.ground_frequency - shift), reverse=True
        )
        worst_modes = max(worst_modes, rel_err(w_plus, expected[0]), rel_err(w_minus, expected[1]))
    passed = worst_gap <= 1e-12 and worst_modes <= 1e-9
    return passed, f"2ab rel err {worst_gap:.2e}, normal modes rel err {worst_modes:.2e}"


def check_alphas(alpha1: Callable = alpha1_closed) -> tuple[bool, str]:
    worst1 = worst3 = 0.0
    count = 0
    for orientation in Orientation:
        for spec in figure_grid_specs(orientation):
            a1 = alpha1(spec)
            worst1 = max(worst1, rel_err(a1, solve_alpha1(spec)))
            total = spec.alpha * a1
            worst3 = max(worst3, rel_err(alpha3_closed(spec, total), solve_alpha3(spec, total)))
            count += 1
    passed = worst1 <= 1e-9 and worst3 <= 1e-9
    return passed, f"alpha1 rel err {worst1:.2e}, alpha3 rel err {worst3:.2e} over {count} points"


def check_heats() -> tuple[bool, str]:
    worst_q = worst_first_law = 0.0
    for n, g, te in itertools.product(GRID_N, GRID_GAMMA, GRID_THETA_ETA):
        spec = IsoenergeticCycleSpec.from_theta_eta(n, te, gamma=g, alpha=2.0)
        res = efficiency_isoenergetic(spec)
        pts = res.field_points
        for a, b, p in ((pts["1"], pts["2"], 1.0), (pts["3"], pts["4"], 0.0)):
            closed = heat_isoenergetic(a, b, p, spec)
            worst_q = max(worst_q, rel_err(leg_heat_quadrature(spec, a, b, p), closed))
            worst_first_law = max(worst_first_law, rel_err(-leg_work_quadrature(spec, a, b, p), closed))
    passed = worst_q <= 1e-6 and worst_first_law <= 1e-6
    return passed, f"quadrature rel err {worst_q:.2e}, Q=-W rel err {worst_first_law:.2e}"


def check_asymptote() -> tuple[bool, str]:
    worst = 0.0
    for orientation in Orientation:
        for te, g in itertools.product(GRID_THETA_ETA, (0.1, 0.5)):
            spec = IsoenergeticCycleSpec.from_theta_eta(1e6, te, gamma=g, alpha=2.0, orientation=orientation)
            worst = max(worst, abs(efficiency_isoenergetic(spec).efficiency - asymptotic_efficiency(2.0)))
    return worst <= 1e-3, f"max |N - 0.75| = {worst:.2e}"


def check_carnot() -> tuple[bool, str]:
    spec = CarnotSpec(300.0, 600.0)
    grid = itertools.product(GRID_THETA_ETA, GRID_GAMMA)
    report = nc_invariance_scan(spec, grid)
    passed = report.spread == 0.0 and carnot_efficiency(spec) == 0.5
    return passed, f"spread {report.spread}, inputs {report.formula_inputs}"


def check_isomagnetic_spot() -> tuple[bool, str]:
    value = isomagnetic.efficiency_value(4.0, 2.0)
    expected = 1.0 - math.sqrt(2.0) / math.sqrt(17.0)
    err = abs(value - expected)
    return err <= 1e-12, f"|N - (1 - sqrt2/sqrt17)| = {err:.2e}"


def check_cancellation() -> tuple[bool, str]:
    worst = 0.0
    for g in (0.1, 0.5):
        worst = max(worst, flux_factor(EffectiveField(-2.0 * g, g)))
    return worst == 0.0, f"reversed flux factor at omega_B = 2 gamma: {worst}"


def self_check(alpha1: Callable = alpha1_closed, stream=None) -> bool:
    """Run every oracle comparison and print a pass/fail table."""
    stream = stream or sys.stdout
    checks = [
        ("SW commutators", check_commutators),
        ("spectrum / normal modes", check_spectrum),
        ("alpha1, alpha3 vs root solver", lambda: check_alphas(alpha1)),
        ("isoenergetic heat quadrature", check_heats),
        ("strong-field asymptote", check_asymptote),
        ("Carnot NC invariance", check_carnot),
        ("isomagnetic spot value", check_isomagnetic_spot),
        ("reversed-field cancellation", check_cancellation),
    ]
    all_ok = True
    start = time.perf_counter()
    for name, fn in checks:
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing oracle is a failed check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        all_ok &= ok
        print(f"{'PASS' if ok else 'FAIL'}  {name:<32} {detail}  ({time.perf_counter() - t0:.2f}s)", file=stream)
    print(f"{'all checks passed' if all_ok else 'CHECK FAILURES'} in {time.perf_counter() - start:.2f}s", file=stream)
    return all_ok
