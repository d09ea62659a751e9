"""One test per acceptance criterion; each prints a PASS/FAIL line with the
measured value and its tolerance (collected again in the terminal summary)."""

import math

import numpy as np
import pytest

from liesqueeze.algebra import (
    AlgebraKind,
    CouplingTriple,
    coefficient_set,
    evolution_matrix,
    matrix_from_coefficients,
    metric_residual,
    structure_frequency,
)
from liesqueeze.oracle import variance_oracle
from liesqueeze.scenarios import PRESET_IDS, figure_preset
from liesqueeze.squeezing import squeezing_factor, sweep, variances
from liesqueeze.states import BarutGirardelloState, BlochState, PerelomovState, moments_closed
from liesqueeze.verification import moment_path_error, state_grid

SU11, SU2 = AlgebraKind.SU11, AlgebraKind.SU2
FIG = CouplingTriple(0.1, 0.25, 1.0)


def _period(c, kind):
    return 4 * math.pi / structure_frequency(c, kind).g_abs


def _sx(state, c, ts):
    vx, _, kz = variances(state, c, ts)
    return np.asarray(squeezing_factor(vx, kz))


def test_c01_pcs_initial_squeezing(criterion):
    worst = spread = 0.0
    for xa, expected in ((0.5, -0.4), (0.8, -0.7804878048780488)):
        assert expected == pytest.approx(-2 * xa**2 / (1 + xa**2), abs=1e-15)
        vals = [_sx(PerelomovState.from_polar(k, xa, math.pi / 2), FIG, 0.0) for k in (0.25, 0.75, 1.0, 2.0)]
        worst = max(worst, max(abs(v - expected) for v in vals))
        ts = np.linspace(0, _period(FIG, SU11), 101)
        curves = [_sx(PerelomovState.from_polar(k, xa, math.pi / 2), FIG, ts) for k in (0.25, 0.75, 1.0, 2.0)]
        spread = max(spread, max(float(np.max(np.abs(c - curves[0]))) for c in curves))
    criterion("C1 PCS sx(0) = -2|xi|^2/(1+|xi|^2)", worst, 1e-12)
    criterion("C1 PCS squeezing independent of k", spread, 1e-10)


def test_c02_no_initial_squeezing_at_quarter_phase(criterion):
    s = PerelomovState.from_polar(0.25, 0.5, math.pi / 4)
    vx, vy, kz = variances(s, FIG, 0.0)
    sx0, sy0 = squeezing_factor(vx, kz), squeezing_factor(vy, kz)
    criterion("C2 sx(0) = sy(0) = 2/15", max(abs(sx0 - 2 / 15), abs(sy0 - 2 / 15)), 1e-10)
    ts = np.linspace(0, _period(FIG, SU11), 2001)
    low = float(np.min(_sx(s, FIG, ts)))
    criterion("C2 min sx over one period < 0", low, 0.0, passed=low < 0)


def test_c03_bgcs_minimum_uncertainty(criterion):
    prod = sq = 0.0
    for n in (0.5, 2.0):
        for za in (1.0, 10.0):
            s = BarutGirardelloState.from_polar(n, za, math.pi)
            vx, vy, kz = variances(s, FIG, 0.0)
            bound = 0.25 * kz * kz
            prod = max(prod, abs(vx * vy - bound) / bound)
            sq = max(sq, abs(squeezing_factor(vx, kz)), abs(squeezing_factor(vy, kz)))
    criterion("C3 BGCS |vx vy - kz^2/4| / (kz^2/4) at t=0", prod, 1e-12)
    criterion("C3 BGCS sx(0), sy(0) = 0", sq, 1e-12)


def test_c04_periodicity(criterion):
    sf = structure_frequency(FIG, SU11)
    assert sf.g_squared == pytest.approx(0.9275, abs=1e-15)
    ts = np.linspace(0, 20, 200)
    m0 = matrix_from_coefficients(coefficient_set(FIG, SU11, ts), SU11)
    m1 = matrix_from_coefficients(coefficient_set(FIG, SU11, ts + 4 * math.pi / sf.g_abs), SU11)
    criterion("C4 max |M(t + 4pi/g) - M(t)|", float(np.max(np.abs(m1 - m0))), 1e-9)


def test_c05_metric_preservation(criterion):
    # absolute residual; hyperbolic samples reach |M| ~ 1e20, so rounding alone exceeds the bound
    rng = np.random.default_rng(5)
    worst, failures = 0.0, 0
    for i in range(1000):
        c = CouplingTriple(*rng.uniform(-2, 2, 3))
        kind = SU11 if i % 2 == 0 else SU2
        res = metric_residual(evolution_matrix(c, kind, rng.uniform(0, 20)), kind)
        worst = max(worst, res)
        failures += res >= 1e-11
    criterion(f"C5 metric residual over 1000 samples ({failures} above tol)", worst, 1e-11)


@pytest.fixture(scope="module")
def oracle_runs():
    runs = {}
    for pid in ("fig1a", "fig1b", "fig1c", "fig2", "fig3-mu0.5"):
        sc = figure_preset(pid)
        ts = np.linspace(0, sc.t_max, 50)
        runs[pid] = (sc, ts, variance_oracle(sc.kind, sc.state, sc.coupling, ts, tail_tol=1e-10))
    return runs


@pytest.mark.parametrize("pid", ["fig1a", "fig1b", "fig1c", "fig2", "fig3-mu0.5"])
def test_c06_oracle_equivalence(pid, oracle_runs, criterion):
    sc, ts, res = oracle_runs[pid]
    closed = variances(sc.state, sc.coupling, ts)
    rel = max(float(np.max(np.abs(a - b) / np.abs(b))) for a, b in zip(closed, (res.vx, res.vy, res.kz)))
    tol = 1e-8 if sc.kind is SU2 else 1e-6
    criterion(f"C6 {pid} closed form vs oracle (relative, dim {res.dim})", rel, tol)
    if sc.kind is SU11:
        criterion(f"C6 {pid} dimension-doubling certificate", res.trunc_estimate, 1e-8)


@pytest.mark.parametrize("pid", ["fig1a", "fig1b", "fig1c", "fig2", "fig3-mu0.5"])
def test_c07_adjoint_flow(pid, oracle_runs, criterion):
    sc, ts, res = oracle_runs[pid]
    m = matrix_from_coefficients(coefficient_set(sc.coupling, sc.kind, ts), sc.kind)
    predicted = m @ moments_closed(sc.state).first_moments()
    criterion(f"C7 {pid} M(t) <K(0)> vs oracle <K(t)>", float(np.max(np.abs(predicted - res.mean))), 1e-8)


def test_c08_hyperbolic_regime(criterion):
    c = CouplingTriple(1.0, 0.25, 0.1)
    assert structure_frequency(c, SU11).g_squared < 0
    s = PerelomovState.from_polar(0.25, 0.5, math.pi / 2)
    ts = np.linspace(0, 20, 2001)
    vx, _, kz = variances(s, c, ts)
    sx = np.asarray(squeezing_factor(vx, kz))
    positive = sx > 0
    cross = int(np.argmax(positive)) if positive.any() else ts.size
    stays = bool(positive.any() and positive[cross:].all())
    criterion("C8 sx crosses above 0 and stays positive (crossing t)",
              float(ts[cross]) if cross < ts.size else math.inf, 20.0, passed=stays)
    tail = vx[ts >= 5]
    drop = float(max(0.0, -np.min(np.diff(tail))))
    criterion("C8 vx nondecreasing on t in [5, 20] (largest drop)", drop, 0.0, passed=drop == 0.0)


def test_c09_su2_trend(criterion):
    ts = np.linspace(0, _period(FIG, SU2), 4001)
    mins, starts = [], []
    for ma in (0.5, 10.0, 100.0):
        sx = _sx(BlochState.from_polar(5.0, ma, math.pi / 2), FIG, ts)
        mins.append(float(np.nanmin(sx)))
        starts.append(float(sx[0]))
    ordered = mins[0] < mins[1] < mins[2] and mins[0] < 0
    criterion(f"C9 min s1 for |mu| = 0.5, 10, 100: {mins[0]:.4f} < {mins[1]:.4f} < {mins[2]:.4f}, first < 0",
              mins[0], 0.0, passed=ordered)
    criterion("C9 s1(0) > 0 for |mu| = 0.5, 10, 100 (smallest)", min(starts), 0.0, passed=min(starts) > 0)


def test_c10_moment_paths(criterion):
    criterion("C10 closed vs series moments over the state grid",
              max(moment_path_error(s) for s in state_grid()), 1e-10)


def test_c11_uncertainty_relation(criterion):
    worst, violations = -math.inf, 0
    for pid in PRESET_IDS:
        sc = figure_preset(pid)
        for r in sweep(sc.model, sc.state, sc.t_grid()):
            slack = 1e-9 * max(1.0, r.bound)
            worst = max(worst, (r.bound - slack - r.product) / max(1.0, r.bound))
            violations += not r.satisfied
    criterion(f"C11 product >= bound in every preset record ({violations} violations)",
              worst, 0.0, passed=violations == 0)
