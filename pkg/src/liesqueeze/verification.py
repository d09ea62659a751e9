"""Invariant suites behind ``liesqueeze verify``.

Each suite returns a list of :class:`Check` rows; notes measure how far two
plausible alternative SU(2) forms sit from the oracle, as evidence for the
choice made in :mod:`liesqueeze.squeezing`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from liesqueeze import algebra as alg
from liesqueeze.algebra import AlgebraKind, CouplingTriple
from liesqueeze.oracle import (
    SpectralPropagator,
    build_rep,
    hamiltonian_matrix,
    heisenberg_expectation,
    ladder_commutator_residual,
    variance_oracle,
)
from liesqueeze.scenarios import figure_preset
from liesqueeze.squeezing import mixing_amplitudes, squeezing_factor, variances
from liesqueeze.states import (
    BarutGirardelloState,
    BlochState,
    PerelomovState,
    coefficients,
    moments_closed,
    moments_series,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float
    note: bool = False

    @property
    def passed(self) -> bool:
        return self.note or (math.isfinite(self.value) and self.value <= self.tol)

    def line(self) -> str:
        if self.note:
            return f"NOTE  {self.name}: {self.value:.3e}"
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: {self.value:.3e} (tol {self.tol:.0e})"


FIG_C = CouplingTriple(0.1, 0.25, 1.0)


def _random_models(n, seed=20240611):
    rng = np.random.default_rng(seed)
    for i in range(n):
        c = CouplingTriple(*rng.uniform(-2, 2, 3))
        kind = AlgebraKind.SU11 if i % 2 == 0 else AlgebraKind.SU2
        yield c, kind, float(rng.uniform(0, 20))


def algebra_suite() -> list[Check]:
    checks = []

    # absolute residual where max|M|^2 <= 1e3; relative to max|M|^2 everywhere
    abs_worst = rel_worst = det_worst = 0.0
    for c, kind, t in _random_models(1000):
        m = alg.evolution_matrix(c, kind, t).m
        res = alg.metric_residual(m, kind)
        scale = max(1.0, float(np.max(np.abs(m))) ** 2)
        rel_worst = max(rel_worst, res / scale)
        if scale <= 1e3:
            abs_worst = max(abs_worst, res)
            det_worst = max(det_worst, abs(np.linalg.det(m) - 1))
    checks.append(Check("metric residual, well-conditioned samples", abs_worst, 1e-11))
    checks.append(Check("metric residual / max|M|^2, all 1000 samples", rel_worst, 1e-14))
    checks.append(Check("|det M - 1|, well-conditioned samples", det_worst, 1e-10))

    sf = alg.structure_frequency(FIG_C, AlgebraKind.SU11)
    ts = np.linspace(0, 20, 200)
    cs = alg.coefficient_set
    m0 = alg.matrix_from_coefficients(cs(FIG_C, AlgebraKind.SU11, ts), AlgebraKind.SU11)
    for label, period in (("4pi/g", 4 * math.pi / sf.g_abs), ("2pi/g", 2 * math.pi / sf.g_abs)):
        m1 = alg.matrix_from_coefficients(cs(FIG_C, AlgebraKind.SU11, ts + period), AlgebraKind.SU11)
        checks.append(Check(f"periodicity M(t + {label}) = M(t)", float(np.max(np.abs(m1 - m0))), 1e-9))

    h = 1e-5
    ode = 0.0
    for kind in AlgebraKind:
        a = alg.generator_matrix(FIG_C, kind)
        for t in np.linspace(0.3, 15, 25):
            mp = alg.evolution_matrix(FIG_C, kind, t + h).m
            mm = alg.evolution_matrix(FIG_C, kind, t - h).m
            deriv = (mp - mm) / (2 * h)
            ode = max(ode, float(np.max(np.abs(deriv - a @ alg.evolution_matrix(FIG_C, kind, t).m))))
    checks.append(Check("ODE residual of M(t), central differences", ode, 1e-8))

    cont = 0.0
    for t in (0.5, 1.0, 3.0):
        eps = alg.TAYLOR_THRESHOLD / t**2
        for sign in (-1, 1):
            lo = alg.trig_kernels(sign * eps * (1 - 1e-9), t)
            hi = alg.trig_kernels(sign * eps * (1 + 1e-9), t)
            cont = max(cont, max(abs(x - y) for x, y in zip(lo, hi)))
    checks.append(Check("kernel agreement across the Taylor threshold", cont, 1e-12))
    return checks


def state_grid():
    for k in (0.25, 0.75, 1.0, 2.0):
        for xa in (0.1, 0.5, 0.8):
            yield PerelomovState.from_polar(k, xa, 0.7)
    for n in (0.5, 2.0):
        for za in (1.0, 10.0):
            yield BarutGirardelloState.from_polar(n, za, 0.4)
    for j in (0.5, 1.0, 5.0):
        for ma in (0.5, 10.0):
            yield BlochState.from_polar(j, ma, -1.1)


MOMENT_FIELDS = ("kz", "kz2", "kp", "kp2", "kzkp", "kpkm", "kmkp")


def moment_path_error(state, tail_tol=1e-18) -> float:
    series = moments_series(coefficients(state, tail_tol), state.kind, state.index)
    closed = moments_closed(state)
    worst = 0.0
    for name in MOMENT_FIELDS:
        a, b = getattr(series, name), getattr(closed, name)
        scale = max(abs(a), abs(b))
        if scale > 0:
            worst = max(worst, abs(a - b) / scale)
    return worst


def states_suite() -> list[Check]:
    grid = list(state_grid())
    checks = [
        Check("closed vs series moments (relative)", max(moment_path_error(s) for s in grid), 1e-10),
        Check(
            "<[K-,K+]> + 2 beta <Kz> (closed forms)",
            max(moments_closed(s).commutator_residual(s.kind.beta) for s in grid),
            1e-10,
        ),
    ]
    mu_worst = 0.0
    for n in (0.5, 2.0):
        for za in (1.0, 10.0):
            s = BarutGirardelloState.from_polar(n, za, math.pi)
            vx, vy, kz = variances(s, FIG_C, 0.0)
            mu_worst = max(mu_worst, abs(vx * vy - 0.25 * kz * kz) / (0.25 * kz * kz))
    checks.append(Check("BGCS minimum uncertainty at t=0", mu_worst, 1e-12))

    pcs_worst = 0.0
    for k in (0.25, 0.75, 1.0, 2.0):
        for xa in (0.5, 0.8):
            vx, _, kz = variances(PerelomovState.from_polar(k, xa, math.pi / 2), FIG_C, 0.0)
            pcs_worst = max(pcs_worst, abs(squeezing_factor(vx, kz) + 2 * xa**2 / (1 + xa**2)))
    checks.append(Check("PCS initial squeezing -2|xi|^2/(1+|xi|^2)", pcs_worst, 1e-12))

    norm_worst = max(abs(np.sum(np.abs(coefficients(s)) ** 2) - 1) for s in grid)
    checks.append(Check("coefficient normalization", norm_worst, 1e-10))
    return checks


ORACLE_PRESETS = ("fig1a", "fig1b", "fig1c", "fig2", "fig3-mu0.5")


def oracle_comparison(preset_id: str, points: int = 50):
    """(worst relative variance error, worst adjoint-flow error, tolerance)."""
    sc = figure_preset(preset_id)
    ts = np.linspace(0, sc.t_max, points)
    res = variance_oracle(sc.kind, sc.state, sc.coupling, ts, tail_tol=sc.tail_tol)
    closed = variances(sc.state, sc.coupling, ts)
    rel = max(
        float(np.max(np.abs(a - b) / np.abs(b))) for a, b in zip(closed, (res.vx, res.vy, res.kz))
    )
    m = alg.matrix_from_coefficients(alg.coefficient_set(sc.coupling, sc.kind, ts), sc.kind)
    first0 = moments_closed(sc.state).first_moments()
    predicted = m @ first0
    flow = float(np.max(np.abs(predicted - res.mean) / np.maximum(1.0, np.abs(res.mean))))
    tol = 1e-8 if sc.kind is AlgebraKind.SU2 else 1e-6
    return rel, flow, tol, res


def alt_kz_prefactor_deviation() -> float:
    """Relative gap to the oracle if <Kz(t)> carried 2j/(1+|mu|^2) instead of j/(1+|mu|^2)."""
    s = BlochState.from_polar(5.0, 0.5, math.pi / 2)
    res = variance_oracle(AlgebraKind.SU2, s, FIG_C, 1.3)
    _, _, kz = variances(s, FIG_C, 1.3)
    return abs(2 * kz - res.kz) / abs(res.kz)


def alt_vy_deviation() -> float:
    """Relative gap to the oracle if the SU(2) y variance paired g with V+ instead of V-."""
    s = BlochState.from_polar(5.0, 0.5, math.pi / 2)
    t = 1.3
    cs = alg.coefficient_set(FIG_C, AlgebraKind.SU2, t)
    g = complex(mixing_amplitudes(cs).g_amp)
    mu, j = s.mu, s.j
    x = abs(mu) ** 2
    cr = 2 * (mu.conjugate() * g).real
    q = cs.v_plus
    alt = 2 * j * ((q - cr) * cr / (1 + x) + abs(g) ** 2 + x * (q - cr) ** 2 / (1 + x) ** 2)
    res = variance_oracle(AlgebraKind.SU2, s, FIG_C, t)
    return abs(alt - res.vy) / abs(res.vy)


def oracle_suite() -> list[Check]:
    checks = []
    for pid in ORACLE_PRESETS:
        rel, flow, tol, res = oracle_comparison(pid)
        checks.append(Check(f"{pid}: closed-form vs oracle variances (dim {res.dim})", rel, tol))
        checks.append(Check(f"{pid}: adjoint flow of first moments", flow, 1e-8))
        if res.trunc_estimate:
            checks.append(Check(f"{pid}: dimension-doubling change", res.trunc_estimate, 1e-8))

    ops = build_rep(AlgebraKind.SU11, 1.0, 40)
    checks.append(Check("SU(1,1) ladder algebra, interior block", ladder_commutator_residual(*ops, -1), 1e-12))
    ops = build_rep(AlgebraKind.SU2, 5.0, 11)
    checks.append(Check("SU(2) ladder algebra", ladder_commutator_residual(*ops, 1), 1e-12))

    s = PerelomovState.from_polar(0.25, 0.5, math.pi / 2)
    ops = build_rep(AlgebraKind.SU11, s.k, 128)
    h = hamiltonian_matrix(ops, FIG_C)
    psi = np.zeros(128, dtype=complex)
    c0 = coefficients(s, 1e-14)
    psi[: c0.size] = c0 / np.linalg.norm(c0)
    prop = SpectralPropagator(h)
    ts = np.linspace(0, 20, 40)
    states = prop.evolve(psi, ts)
    energy = np.real(np.einsum("ti,ij,tj->t", states.conj(), h, states))
    checks.append(Check("energy conservation <H>(t)", float(np.max(np.abs(energy - energy[0]))), 1e-10))
    mom = heisenberg_expectation(h, ops, psi, ts, prop)
    checks.append(Check("norm of U(t) psi", float(np.max(np.abs(mom.norm - 1))), 1e-12))

    checks.append(Check("alternative SU(2) <Kz(t)> prefactor 2j vs oracle", alt_kz_prefactor_deviation(), 0, note=True))
    checks.append(Check("alternative SU(2) y variance with V+ vs oracle", alt_vy_deviation(), 0, note=True))
    return checks


SUITES = {
    "algebra": algebra_suite,
    "states": states_suite,
    "oracle": oracle_suite,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    return SUITES[name]()
