"""Acceptance criteria, one test per criterion at its stated tolerance.

Criteria 7 and 8 bundle several independent claims; each claim gets its own
test so that one false claim does not hide the status of the others.
"""

import itertools
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from ncqengine.carnot import CarnotSpec, carnot_efficiency, nc_invariance_scan
from ncqengine.core import (
    GROUND,
    EXCITED,
    EffectiveField,
    SWConstants,
    NCParams,
    compute_sigma,
    eigenenergy,
    flux_factor,
    sw_constants,
)
from ncqengine.errors import DomainError
from ncqengine.isoenergetic import (
    IsoenergeticCycleSpec,
    alpha1_closed,
    alpha3_closed,
    efficiency_isoenergetic,
    heat_isoenergetic,
    leg_heat_quadrature,
    leg_work_quadrature,
    solve_alpha1,
    solve_alpha3,
)
from ncqengine import isoenergetic, isomagnetic
from ncqengine.selfcheck import (
    GRID_ALPHA,
    GRID_GAMMA,
    GRID_N,
    GRID_THETA_ETA,
    check_spectrum,
    random_draws,
    rel_err,
)
from ncqengine.oracle import verify_commutators

ORIENTATIONS = ("positive", "reversed")
MONO_ALPHAS = np.linspace(1.1, 3.0, 96)
MONO_THETA_ETA = (0.0, 0.1, 0.5)
MONO_GAMMA = (0.0, 0.1, 0.5)
EVALUATORS = {"isomagnetic": isomagnetic.efficiency_value, "isoenergetic": isoenergetic.efficiency_value}


def _eff(cycle, n, theta_eta, gamma, alpha, orientation):
    sigma = compute_sigma(NCParams.from_product(theta_eta))
    return EVALUATORS[cycle](n, alpha, gamma, sigma, orientation=orientation)


@pytest.mark.criterion("1", "strong-field asymptote 0.75 within 1e-3, < 1 s")
def test_criterion_01_asymptote():
    start = time.perf_counter()
    worst = 0.0
    for orientation, te, g in itertools.product(ORIENTATIONS, (0.0, 0.1, 0.5), (0.1, 0.5)):
        spec = IsoenergeticCycleSpec.from_theta_eta(1e6, te, gamma=g, alpha=2.0, orientation=orientation)
        worst = max(worst, abs(efficiency_isoenergetic(spec).efficiency - 0.75))
    elapsed = time.perf_counter() - start
    assert worst <= 1e-3, worst
    assert elapsed < 1.0, elapsed


@pytest.mark.criterion("2", "alpha1/alpha3 closed forms vs root solver, 1e-9 rel, 135 points, < 5 s")
def test_criterion_02_closed_forms():
    start = time.perf_counter()
    count = 0
    worst1 = worst3 = 0.0
    for n, g, te, a in itertools.product(GRID_N, GRID_GAMMA, GRID_THETA_ETA, GRID_ALPHA):
        spec = IsoenergeticCycleSpec.from_theta_eta(n, te, gamma=g, alpha=a)
        a1 = alpha1_closed(spec)
        worst1 = max(worst1, rel_err(a1, solve_alpha1(spec)))
        worst3 = max(worst3, rel_err(alpha3_closed(spec, a * a1), solve_alpha3(spec, a * a1)))
        count += 1
    elapsed = time.perf_counter() - start
    assert count == 135
    assert worst1 <= 1e-9, worst1
    assert worst3 <= 1e-9, worst3
    assert elapsed < 5.0, elapsed


@pytest.mark.criterion("3", "2ab vs sqrt(1+F^2) 1e-12, symplectic modes 1e-9, 1000 draws, < 5 s")
def test_criterion_03_spectrum():
    start = time.perf_counter()
    passed, detail = check_spectrum(draws=1000)
    elapsed = time.perf_counter() - start
    assert passed, detail
    assert elapsed < 5.0, elapsed


@pytest.mark.criterion("4", "commutators to 1e-12; unconstrained fixture off by theta*eta/4hbar")
def test_criterion_04_commutators():
    worst = max(verify_commutators(sw_constants(nc), nc).max_residual for nc, _, _ in random_draws(1000))
    assert worst <= 1e-12, worst
    fixture = verify_commutators(SWConstants(1.0, 1.0), NCParams(0.5, 0.5))
    assert not fixture.passed
    assert fixture.max_residual == 0.0625
    # other products differ from theta*eta/4hbar by rounding only
    for theta, eta, hbar in ((0.3, 0.8, 1.0), (0.4, 0.6, 2.0)):
        report = verify_commutators(SWConstants(1.0, 1.0), NCParams(theta, eta, hbar))
        assert not report.passed
        assert abs(report.max_residual - theta * eta / (4 * hbar)) <= 1e-12


@pytest.mark.criterion("5", "closed-form heat vs quadrature and Q = -W, 1e-6 rel, < 10 s")
def test_criterion_05_heat():
    start = time.perf_counter()
    worst_q = worst_w = 0.0
    for n, g, te in itertools.product(GRID_N, GRID_GAMMA, GRID_THETA_ETA):
        spec = IsoenergeticCycleSpec.from_theta_eta(n, te, gamma=g, alpha=2.0)
        pts = efficiency_isoenergetic(spec).field_points
        for a, b, p in ((pts["1"], pts["2"], 1.0), (pts["3"], pts["4"], 0.0)):
            closed = heat_isoenergetic(a, b, p, spec)
            worst_q = max(worst_q, rel_err(leg_heat_quadrature(spec, a, b, p), closed))
            worst_w = max(worst_w, rel_err(-leg_work_quadrature(spec, a, b, p), closed))
    elapsed = time.perf_counter() - start
    assert worst_q <= 1e-6, worst_q
    assert worst_w <= 1e-6, worst_w
    assert elapsed < 10.0, elapsed


@pytest.mark.criterion("6", "Carnot spread exactly 0; carnot(300, 600) = 0.5")
def test_criterion_06_carnot():
    grid = itertools.product(np.linspace(-0.9, 0.9, 13), np.linspace(0, 5, 11))
    assert nc_invariance_scan(CarnotSpec(300.0, 600.0), grid).spread == 0.0
    assert carnot_efficiency(CarnotSpec(300.0, 600.0)) == 0.5


def _max_decrease(values):
    """Largest drop between consecutive entries (0 when non-decreasing)."""
    return max(0.0, max(a - b for a, b in zip(values, values[1:])))


@pytest.mark.criterion("7a", "positive: efficiency non-decreasing in theta*eta at N=4")
def test_criterion_07a_theta_eta_monotone():
    worst = 0.0
    for cycle, g, a in itertools.product(EVALUATORS, (0.1, 0.5), MONO_ALPHAS):
        values = [_eff(cycle, 4.0, te, g, a, "positive") for te in MONO_THETA_ETA]
        worst = max(worst, _max_decrease(values))
    assert worst == 0.0, worst


@pytest.mark.criterion("7b", "positive: efficiency non-decreasing in gamma at N=4")
def test_criterion_07b_gamma_monotone_positive():
    worst = 0.0
    for cycle, te, a in itertools.product(EVALUATORS, MONO_THETA_ETA, MONO_ALPHAS):
        values = [_eff(cycle, 4.0, te, g, a, "positive") for g in MONO_GAMMA]
        worst = max(worst, _max_decrease(values))
    assert worst == 0.0, f"efficiency drops by up to {worst:.4g} as gamma grows"


@pytest.mark.criterion("7c", "reversed: efficiency non-increasing in gamma at N=4")
def test_criterion_07c_gamma_monotone_reversed():
    worst = 0.0
    for cycle, te, a in itertools.product(EVALUATORS, MONO_THETA_ETA, MONO_ALPHAS):
        values = [-_eff(cycle, 4.0, te, g, a, "reversed") for g in MONO_GAMMA]
        worst = max(worst, _max_decrease(values))
    assert worst == 0.0, f"efficiency rises by up to {worst:.4g} as gamma grows"


@pytest.mark.criterion("7d", "NC effect at N=100 strictly smaller than at N=4")
def test_criterion_07d_suppression():
    for cycle, orientation, te, g, a in itertools.product(
        EVALUATORS, ORIENTATIONS, (0.1, 0.5), (0.1, 0.5), MONO_ALPHAS
    ):
        effect = {
            n: abs(_eff(cycle, n, te, g, a, orientation) - _eff(cycle, n, 0.0, 0.0, a, orientation))
            for n in (4.0, 100.0)
        }
        assert effect[100.0] < effect[4.0], (cycle, orientation, te, g, a, effect)


@pytest.mark.criterion("8a", "reversed flux factor exactly 0 at omega_B = 2 gamma")
def test_criterion_08a_flux_cancellation():
    for g, sigma in itertools.product((0.1, 0.25, 0.5, 2.0), (1.0, 0.9, 0.5)):
        assert flux_factor(EffectiveField(-2.0 * g, g, sigma=sigma)) == 0.0


@pytest.mark.criterion("8b", "reversed efficiencies at omega_B = 2 gamma equal gamma=0 commutative values, 1e-12")
def test_criterion_08b_efficiency_cancellation():
    # point I sits on the cancellation field: n_phi0 = gamma / omega
    failures = []
    for cycle, g, a in itertools.product(EVALUATORS, (0.1, 0.5), (1.5, 2.0, 3.0)):
        try:
            nc_value = _eff(cycle, g, 0.1, g, a, "reversed")
            plain = _eff(cycle, g, 0.0, 0.0, a, "reversed")
        except DomainError as exc:
            failures.append((cycle, g, a, f"inadmissible: {exc.code}"))
            continue
        if abs(nc_value - plain) > 1e-12:
            failures.append((cycle, g, a, nc_value, plain))
    assert not failures, failures


@pytest.mark.criterion("9", "isomagnetic spot 1e-12; alpha1(N=4) = 2.0597671 within 1e-6")
def test_criterion_09_spot_values():
    value = isomagnetic.efficiency_value(4.0, 2.0, 0.0, 1.0)
    assert abs(value - (1 - math.sqrt(2) / math.sqrt(17))) <= 1e-12
    spec = IsoenergeticCycleSpec(4.0, 0.0, 1.0)
    oracle = solve_alpha1(spec)
    assert abs(oracle - 2.0597671) <= 1e-6
    assert abs(alpha1_closed(spec) - oracle) <= 1e-6


CONFIG = """\
cycle = isoenergetic
orientation = reversed
n_phi0 = 4, 10, 100
theta_eta = 0, 0.1, 0.5
gamma = 0.1, 0.5
alpha = 1, 3, 40
"""


def _ncq(*args):
    return subprocess.run([sys.executable, "-m", "ncqengine", *args], capture_output=True, timeout=120)


@pytest.mark.criterion("10", "sweep byte-identical across runs and --jobs; check exits 0 in < 30 s")
def test_criterion_10_determinism(tmp_path):
    cfg = tmp_path / "grid.cfg"
    cfg.write_text(CONFIG)
    outputs = []
    for i, jobs in enumerate(("1", "1", "2", "4")):
        out = tmp_path / f"run{i}.csv"
        assert _ncq("sweep", "--config", str(cfg), "--out", str(out), "--jobs", jobs).returncode == 0
        outputs.append(out.read_bytes())
    assert len(set(outputs)) == 1
    start = time.perf_counter()
    result = _ncq("check")
    elapsed = time.perf_counter() - start
    assert result.returncode == 0, result.stdout.decode()
    assert elapsed < 30.0, elapsed
