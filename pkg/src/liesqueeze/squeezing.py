"""Time-dependent quadrature variances and squeezing factors.

Writing the evolved generators in ladder form,

    K_x(t) = f K+ + f* K- + beta S+ K_z
    K_y(t) = g K+ + g* K- + beta V- K_z
    K_z(t) = h K+ + h* K- + R3 K_z

the variances reduce to the state moments.  The per-family closed forms below
are the ones checked against the brute-force representation oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from liesqueeze.algebra import AlgebraKind, CoefficientSet, CouplingTriple, coefficient_set
from liesqueeze.special import bessel_ratio
from liesqueeze.states import BarutGirardelloState, BlochState, PerelomovState

UNCERTAINTY_SLACK = 1e-9


class IncompatibleStateError(ValueError):
    """A state was paired with the wrong algebra."""


@dataclass(frozen=True)
class MixingAmplitudes:
    """Ladder-form amplitudes f, g, h (``g_amp`` is unrelated to the frequency g)."""

    f_amp: complex
    g_amp: complex
    h_amp: complex


def mixing_amplitudes(cs: CoefficientSet) -> MixingAmplitudes:
    return MixingAmplitudes(
        f_amp=0.5 * (np.asarray(cs.r1) - 1j * np.asarray(cs.j_minus)),
        g_amp=0.5 * (np.asarray(cs.j_plus) - 1j * np.asarray(cs.r2)),
        h_amp=0.5 * (np.asarray(cs.s_minus) - 1j * np.asarray(cs.v_plus)),
    )


def _unwrap(*arrs):
    if all(np.ndim(a) == 0 for a in arrs):
        return tuple(float(a) for a in arrs)
    return arrs


def _cross(w: complex, amp) -> np.ndarray:
    # w* amp + w amp* = 2 Re(w* amp)
    return 2.0 * np.real(np.conj(w) * amp)


def variances_pcs(s: PerelomovState, c: CouplingTriple, t):
    """(vx, vy, kz) for a Perelomov state under the SU(1,1) model."""
    cs = coefficient_set(c, AlgebraKind.SU11, t)
    amp = mixing_amplitudes(cs)
    k, xi = s.k, complex(s.xi)
    x = abs(xi) ** 2
    d = 1.0 - x

    def quad(a, q):
        cr = _cross(xi, a)
        return 2 * k * (np.abs(a) ** 2 + (q - cr) ** 2 / d**2 + q * (cr - q) / d)

    vx = quad(amp.f_amp, cs.s_plus)
    vy = quad(amp.g_amp, cs.v_minus)
    kz = k / d * ((1 + x) * cs.r3 + 2 * _cross(xi, amp.h_amp))
    return _unwrap(vx, vy, kz)


def variances_bgcs(s: BarutGirardelloState, c: CouplingTriple, t):
    """(vx, vy, kz) for a Barut-Girardello state under the SU(1,1) model."""
    cs = coefficient_set(c, AlgebraKind.SU11, t)
    amp = mixing_amplitudes(cs)
    n, z = s.n, complex(s.z)
    r = abs(z)
    rho = bessel_ratio(2 * n - 1, 2 * r)
    kz0 = n + r * rho
    spread = r * (r * (1 - rho * rho) + (1 - 2 * n) * rho)

    def quad(a, q):
        return 2 * np.abs(a) ** 2 * kz0 - q * _cross(z, a) + q * q * spread

    vx = quad(amp.f_amp, cs.s_plus)
    vy = quad(amp.g_amp, cs.v_minus)
    kz = cs.r3 * kz0 + _cross(z, amp.h_amp)
    return _unwrap(vx, vy, kz)


def variances_bloch(s: BlochState, c: CouplingTriple, t):
    """(vx, vy, kz) for a Bloch state under the SU(2) model.

    The y quadrature pairs g with V- (the coefficient of K_z in K_y(t)), and
    <K_z(t)> carries the prefactor j/(1+|mu|^2) so that <K_z(0)> equals
    j(|mu|^2 - 1)/(1 + |mu|^2).
    """
    cs = coefficient_set(c, AlgebraKind.SU2, t)
    amp = mixing_amplitudes(cs)
    j, mu = s.j, complex(s.mu)
    x = abs(mu) ** 2

    def quad(a, q):
        cr = _cross(mu, a)
        return 2 * j * ((q - cr) * cr / (1 + x) + np.abs(a) ** 2 + x * (q - cr) ** 2 / (1 + x) ** 2)

    vx = quad(amp.f_amp, cs.s_plus)
    vy = quad(amp.g_amp, cs.v_minus)
    kz = j / (1 + x) * (cs.r3 * (x - 1) + 2 * _cross(mu, amp.h_amp))
    return _unwrap(vx, vy, kz)


def squeezing_factor(v, kz):
    """(v - |kz|/2) / (|kz|/2); NaN where |kz| is too small for the measure to mean anything.

    -1 is complete squeezing, negative values signal squeezing.
    """
    v_arr = np.asarray(v, dtype=float)
    half = 0.5 * np.abs(np.asarray(kz, dtype=float))
    undefined = 2 * half < 1e-12 * np.maximum(1.0, v_arr)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(undefined, np.nan, (v_arr - half) / np.where(undefined, 1.0, half))
    return float(out) if out.ndim == 0 else out


def uncertainty_record(vx, vy, kz):
    """(product, bound, satisfied) for <dKx^2><dKy^2> >= |<Kz>|^2 / 4."""
    product = vx * vy
    bound = 0.25 * kz * kz
    satisfied = product >= bound - UNCERTAINTY_SLACK * np.maximum(1.0, bound)
    if np.ndim(satisfied) == 0:
        return float(product), float(bound), bool(satisfied)
    return product, bound, satisfied


@dataclass(frozen=True)
class QuadratureRecord:
    t: float
    vx: float
    vy: float
    kz: float
    sx: float
    sy: float
    product: float
    bound: float

    @property
    def satisfied(self) -> bool:
        return self.product >= self.bound - UNCERTAINTY_SLACK * max(1.0, self.bound)

    @property
    def defined(self) -> bool:
        return not (math.isnan(self.sx) or math.isnan(self.sy))


def check_compatible(state, kind: AlgebraKind):
    if isinstance(state, BlochState):
        ok = kind is AlgebraKind.SU2
    elif isinstance(state, (PerelomovState, BarutGirardelloState)):
        ok = kind is AlgebraKind.SU11
    else:
        raise TypeError(f"unsupported state {state!r}")
    if not ok:
        raise IncompatibleStateError(
            f"{type(state).__name__} cannot be evolved under the {kind.value} model"
        )


def variances(state, c: CouplingTriple, t):
    if isinstance(state, PerelomovState):
        return variances_pcs(state, c, t)
    if isinstance(state, BarutGirardelloState):
        return variances_bgcs(state, c, t)
    if isinstance(state, BlochState):
        return variances_bloch(state, c, t)
    raise TypeError(f"unsupported state {state!r}")


def sweep(model, state, t_grid) -> list[QuadratureRecord]:
    """One record per time in ``t_grid``, in grid order.

    ``model`` is a ``(CouplingTriple, AlgebraKind)`` pair.
    """
    c, kind = model
    check_compatible(state, kind)
    ts = np.asarray(t_grid, dtype=float).reshape(-1)
    if ts.size == 0:
        return []
    vx, vy, kz = (np.asarray(a, dtype=float).reshape(-1) for a in variances(state, c, ts))
    sx = np.atleast_1d(squeezing_factor(vx, kz))
    sy = np.atleast_1d(squeezing_factor(vy, kz))
    product, bound, _ = uncertainty_record(vx, vy, kz)
    return [
        QuadratureRecord(
            float(ts[i]), float(vx[i]), float(vy[i]), float(kz[i]),
            float(sx[i]), float(sy[i]), float(product[i]), float(bound[i]),
        )
        for i in range(ts.size)
    ]
