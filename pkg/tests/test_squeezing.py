import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from liesqueeze.algebra import AlgebraKind, CouplingTriple, coefficient_set, evolution_matrix
from liesqueeze.oracle import variance_oracle
from liesqueeze.scenarios import figure_preset
from liesqueeze.squeezing import (
    IncompatibleStateError,
    QuadratureRecord,
    mixing_amplitudes,
    squeezing_factor,
    sweep,
    uncertainty_record,
    variances,
)
from liesqueeze.states import BarutGirardelloState, BlochState, PerelomovState, moments_closed
from liesqueeze.verification import state_grid


def test_mixing_amplitudes_at_zero():
    amp = mixing_amplitudes(coefficient_set(CouplingTriple(0.1, 0.25, 1), AlgebraKind.SU11, 0.0))
    assert amp.f_amp == pytest.approx(0.5)
    assert amp.g_amp == pytest.approx(-0.5j)
    assert amp.h_amp == pytest.approx(0)


def test_variance_examples(fig_c):
    s = PerelomovState.from_polar(0.25, 0.5, math.pi / 2)
    vx, vy, kz = variances(s, fig_c, 0.0)
    assert kz == pytest.approx(5 / 12, rel=1e-14)
    assert squeezing_factor(vx, kz) == pytest.approx(-0.4, abs=1e-12)
    assert vx * vy >= 0.25 * kz * kz

    vx, vy, kz = variances(BlochState(0.5, 0), fig_c, 0.0)
    assert (vx, vy, kz) == pytest.approx((0.25, 0.25, -0.5))


def test_squeezing_factor():
    assert squeezing_factor(0.25, 0.5) == 0.0
    assert squeezing_factor(0.0, -2.0) == -1.0
    assert math.isnan(squeezing_factor(1.0, 0.0))
    out = squeezing_factor(np.array([0.5, 1.0]), np.array([1.0, 1e-14]))
    assert out[0] == 0.0 and math.isnan(out[1])


def test_uncertainty_record():
    product, bound, ok = uncertainty_record(0.5, 0.5, 1.0)
    assert (product, bound, ok) == (0.25, 0.25, True)
    assert not uncertainty_record(0.1, 0.1, 1.0)[2]


def test_record_properties():
    r = QuadratureRecord(0, 1, 1, 0, float("nan"), float("nan"), 1, 0)
    assert r.satisfied and not r.defined


def test_sweep_edges(fig_c):
    s = PerelomovState(0.25, 0.5)
    assert sweep((fig_c, AlgebraKind.SU11), s, []) == []
    with pytest.raises(IncompatibleStateError):
        sweep((fig_c, AlgebraKind.SU2), s, [0.0])
    with pytest.raises(IncompatibleStateError):
        sweep((fig_c, AlgebraKind.SU11), BlochState(1, 0.5), [0.0])
    recs = sweep((fig_c, AlgebraKind.SU11), s, [2.0, 0.0, 1.0])
    assert [r.t for r in recs] == [2.0, 0.0, 1.0]


def test_fig1a_periodic():
    sc = figure_preset("fig1a")
    recs = sweep(sc.model, sc.state, sc.t_grid())
    assert recs[0].sx == pytest.approx(-0.4, abs=1e-9)
    period = sc.t_max / 4
    late = sweep(sc.model, sc.state, [period])[0]
    assert late.sx == pytest.approx(recs[0].sx, abs=1e-9)


def test_fig1c_initial_squeezing():
    sc = figure_preset("fig1c")
    assert sweep(sc.model, sc.state, [0.0])[0].sx == pytest.approx(2 / 15, abs=1e-12)


@given(st.floats(0.05, 3), st.floats(0.05, 0.95), st.floats(-3, 3), st.floats(0, 30))
def test_squeezing_independent_of_k(k, xa, phi, t):
    c = CouplingTriple(0.1, 0.25, 1)
    ref = variances(PerelomovState.from_polar(0.25, xa, phi), c, t)
    got = variances(PerelomovState.from_polar(k, xa, phi), c, t)
    for a, b in zip(got, ref):
        assert a == pytest.approx(b * k / 0.25, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("state", list(state_grid()), ids=repr)
def test_uncertainty_holds_on_sweeps(state):
    for c in (CouplingTriple(0.1, 0.25, 1), CouplingTriple(1, 0.3, 0.2), CouplingTriple(0.6, -0.8, 1)):
        ts = np.linspace(0, 12, 61)
        vx, vy, kz = variances(state, c, ts)
        assert np.all(uncertainty_record(vx, vy, kz)[2])
        assert np.all(vx > 0) and np.all(vy > 0)


def test_hyperbolic_regime_grows():
    c = CouplingTriple(1, 0.3, 0.2)
    vx, vy, kz = variances(PerelomovState(0.25, 0.5), c, np.array([0.0, 10.0, 20.0]))
    assert np.all(np.diff(kz) > 0)
    assert vx[-1] > 1e3 * vx[0]


def test_quadrature_exchange_at_quarter_turn():
    # pure Kz coupling rotates Kx into Ky
    c = CouplingTriple(0, 0, 1)
    s = PerelomovState.from_polar(0.5, 0.6, 0.9)
    vx0, vy0, _ = variances(s, c, 0.0)
    vx, vy, _ = variances(s, c, math.pi / 2)
    assert (vx, vy) == pytest.approx((vy0, vx0), rel=1e-12)


@pytest.mark.parametrize("state", list(state_grid()), ids=repr)
def test_closed_forms_match_covariance_contraction(state):
    c = CouplingTriple(0.1, 0.25, 1) if state.kind is AlgebraKind.SU2 else CouplingTriple(1, 0.3, 0.2)
    table = moments_closed(state)
    first, cov = table.first_moments(), table.covariance()
    for t in (0.0, 0.7, 3.1):
        m = evolution_matrix(c, state.kind, t).m
        var = np.diag(m @ cov @ m.T)
        vx, vy, kz = variances(state, c, t)
        scale = max(1.0, abs(vx), abs(vy))
        assert abs(vx - var[0]) < 1e-10 * scale
        assert abs(vy - var[1]) < 1e-10 * scale
        assert kz == pytest.approx((m @ first)[2], rel=1e-10, abs=1e-10)


@pytest.mark.parametrize(
    "state",
    [BlochState.from_polar(1.5, 0.7, 0.4), BlochState.from_polar(5, 10, 2.0)],
    ids=repr,
)
def test_bloch_closed_forms_vs_oracle(state, fig_c):
    ts = np.linspace(0, 15, 31)
    res = variance_oracle(AlgebraKind.SU2, state, fig_c, ts)
    for a, b in zip(variances(state, fig_c, ts), (res.vx, res.vy, res.kz)):
        np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-11)


def test_bgcs_closed_forms_vs_oracle(fig_c):
    s = BarutGirardelloState.from_polar(0.75, 2.0, 1.0)
    ts = np.linspace(0, 10, 11)
    res = variance_oracle(AlgebraKind.SU11, s, fig_c, ts)
    for a, b in zip(variances(s, fig_c, ts), (res.vx, res.vy, res.kz)):
        np.testing.assert_allclose(a, b, rtol=1e-7)
