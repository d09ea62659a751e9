"""Closed-form Heisenberg dynamics of the generators K_x, K_y, K_z.

For H = a1*K_x + a2*K_y + a3*K_z the generator triple evolves linearly,
K(t) = M(t) K(0), with M(t) = exp(A t) and

    A = [[0,   -a3,  b*a2],
         [a3,   0,  -b*a1],
         [-a2,  a1,   0  ]]

where b = -1 for SU(1,1) and b = +1 for SU(2).  Since A^3 = -g^2 A with
g^2 = a3^2 + b*(a1^2 + a2^2), the exponential collapses to

    M(t) = I + S1 A + 2 S2 A^2,

with S1 = sin(g t)/g and S2 = sin^2(g t/2)/g^2.  Every entry is therefore a
combination of three kernels that are entire functions of tau = g^2, which
is how the trigonometric, degenerate and hyperbolic regimes are handled
without branching.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# |tau| * t^2 below this switches the kernels to their Taylor series
TAYLOR_THRESHOLD = 1e-4


class AlgebraKind(enum.Enum):
    SU11 = "su11"
    SU2 = "su2"

    @property
    def beta(self) -> int:
        return -1 if self is AlgebraKind.SU11 else 1

    @classmethod
    def from_beta(cls, beta: int) -> "AlgebraKind":
        if beta == -1:
            return cls.SU11
        if beta == 1:
            return cls.SU2
        raise ValueError(f"beta must be -1 or +1, got {beta!r}")


class Regime(enum.Enum):
    TRIGONOMETRIC = "trigonometric"
    DEGENERATE = "degenerate"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class CouplingTriple:
    """Coupling strengths of H = alpha1 K_x + alpha2 K_y + alpha3 K_z."""

    alpha1: float
    alpha2: float
    alpha3: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha1, self.alpha2, self.alpha3], dtype=float)

    @classmethod
    def parse(cls, text: str) -> "CouplingTriple":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated couplings, got {text!r}")
        return cls(*(float(p) for p in parts))


@dataclass(frozen=True)
class StructureFrequency:
    g_squared: float
    regime: Regime
    g_abs: float


def structure_frequency(
    c: CouplingTriple, a: AlgebraKind, t_scale: float = 1.0
) -> StructureFrequency:
    """g^2 = alpha3^2 + beta (alpha1^2 + alpha2^2) and its regime.

    The regime is "degenerate" when |g^2| t_scale^2 falls below the Taylor
    threshold used by :func:`trig_kernels`, i.e. when the closed forms and the
    series would disagree on which branch to take at time ``t_scale``.
    """
    tau = c.alpha3**2 + a.beta * (c.alpha1**2 + c.alpha2**2)
    if abs(tau) * t_scale**2 < TAYLOR_THRESHOLD:
        regime = Regime.DEGENERATE
    elif tau > 0:
        regime = Regime.TRIGONOMETRIC
    else:
        regime = Regime.HYPERBOLIC
    return StructureFrequency(tau, regime, math.sqrt(abs(tau)))


def _taylor_kernels(tau, t):
    # C = sum (-tau)^n t^2n / (2n)!, S1 = sum (-tau)^n t^(2n+1) / (2n+1)!,
    # S2 = (1 - C) / (2 tau) = sum (-tau)^n t^(2n+2) / (2 (2n+2)!), n <= 4
    u = -tau * t * t
    c = np.zeros_like(u)
    s1 = np.zeros_like(u)
    s2 = np.zeros_like(u)
    term = np.ones_like(u)
    for n in range(5):
        c = c + term / math.factorial(2 * n)
        s1 = s1 + term / math.factorial(2 * n + 1)
        s2 = s2 + term / (2.0 * math.factorial(2 * n + 2))
        term = term * u
    return c, s1 * t, s2 * t * t


def trig_kernels(tau, t):
    """Regime-uniform kernels ``(C, S1, S2)`` for ``tau = g^2``.

    C = cos(sqrt(tau) t), S1 = sin(sqrt(tau) t)/sqrt(tau) and
    S2 = sin^2(sqrt(tau) t/2)/tau, continued analytically to tau <= 0
    (cosh/sinh for tau < 0, and C = 1, S1 = t, S2 = t^2/4 at tau = 0).

    Accepts scalars or broadcastable arrays; returns floats for scalar input.
    """
    scalar = np.ndim(tau) == 0 and np.ndim(t) == 0
    tau_arr, t_arr = np.broadcast_arrays(
        np.asarray(tau, dtype=float), np.asarray(t, dtype=float)
    )
    c = np.empty(tau_arr.shape)
    s1 = np.empty(tau_arr.shape)
    s2 = np.empty(tau_arr.shape)

    small = np.abs(tau_arr) * t_arr**2 < TAYLOR_THRESHOLD
    pos = ~small & (tau_arr > 0)
    neg = ~small & (tau_arr < 0)

    if small.any():
        c[small], s1[small], s2[small] = _taylor_kernels(tau_arr[small], t_arr[small])
    if pos.any():
        w = np.sqrt(tau_arr[pos])
        ph = w * t_arr[pos]
        c[pos] = np.cos(ph)
        s1[pos] = np.sin(ph) / w
        s2[pos] = np.sin(0.5 * ph) ** 2 / tau_arr[pos]
    if neg.any():
        w = np.sqrt(-tau_arr[neg])
        ph = w * t_arr[neg]
        c[neg] = np.cosh(ph)
        s1[neg] = np.sinh(ph) / w
        s2[neg] = np.sinh(0.5 * ph) ** 2 / (-tau_arr[neg])

    if scalar:
        return float(c), float(s1), float(s2)
    return c, s1, s2


@dataclass(frozen=True)
class CoefficientSet:
    """The nine time-dependent functions building the evolution matrix.

    ``r3`` is evaluated with beta fixed to +1 (the (3,3) entry carries no beta)
    while the frequency keeps the model's beta.  Fields are floats or arrays,
    matching the shape of ``t``.
    """

    r1: object
    r2: object
    r3: object
    j_plus: object
    j_minus: object
    s_plus: object
    s_minus: object
    v_plus: object
    v_minus: object
    t: object


def coefficient_set(c: CouplingTriple, a: AlgebraKind, t) -> CoefficientSet:
    beta = a.beta
    a1, a2, a3 = c.alpha1, c.alpha2, c.alpha3
    tau = a3**2 + beta * (a1**2 + a2**2)
    cc, s1, s2 = trig_kernels(tau, t)
    return CoefficientSet(
        r1=cc + 2 * beta * a1**2 * s2,
        r2=cc + 2 * beta * a2**2 * s2,
        r3=cc + 2 * a3**2 * s2,
        j_plus=2 * beta * a1 * a2 * s2 + a3 * s1,
        j_minus=2 * beta * a1 * a2 * s2 - a3 * s1,
        s_plus=2 * a1 * a3 * s2 + a2 * s1,
        s_minus=2 * a1 * a3 * s2 - a2 * s1,
        v_plus=2 * a2 * a3 * s2 + a1 * s1,
        v_minus=2 * a2 * a3 * s2 - a1 * s1,
        t=t,
    )


@dataclass(frozen=True)
class EvolutionMatrix:
    """K(t) = m @ K(0), rows ordered (x, y, z)."""

    m: np.ndarray
    t: float

    def apply(self, vec) -> np.ndarray:
        return self.m @ np.asarray(vec)


def matrix_from_coefficients(cs: CoefficientSet, a: AlgebraKind) -> np.ndarray:
    """Assemble the (..., 3, 3) evolution matrix from a coefficient set."""
    b = a.beta
    rows = [
        [cs.r1, cs.j_minus, b * cs.s_plus],
        [cs.j_plus, cs.r2, b * cs.v_minus],
        [cs.s_minus, cs.v_plus, cs.r3],
    ]
    out = np.array(rows, dtype=float)
    # (3, 3, ...) -> (..., 3, 3)
    return np.moveaxis(out, (0, 1), (-2, -1))


def evolution_matrix(c: CouplingTriple, a: AlgebraKind, t: float) -> EvolutionMatrix:
    return EvolutionMatrix(matrix_from_coefficients(coefficient_set(c, a, t), a), t)


def generator_matrix(c: CouplingTriple, a: AlgebraKind) -> np.ndarray:
    """The constant matrix A of dK/dt = A K."""
    b = a.beta
    a1, a2, a3 = c.alpha1, c.alpha2, c.alpha3
    return np.array(
        [
            [0.0, -a3, b * a2],
            [a3, 0.0, -b * a1],
            [-a2, a1, 0.0],
        ]
    )


def metric(a: AlgebraKind) -> np.ndarray:
    return np.diag([a.beta, a.beta, 1.0])


def metric_residual(m, a: AlgebraKind) -> float:
    """Max-norm of m^T eta m - eta with eta = diag(beta, beta, 1)."""
    mat = m.m if isinstance(m, EvolutionMatrix) else np.asarray(m, dtype=float)
    eta = metric(a)
    return float(np.max(np.abs(mat.T @ eta @ mat - eta)))


def minimal_period(c: CouplingTriple, a: AlgebraKind) -> float | None:
    """Smallest T > 0 with M(t + T) = M(t); ``None`` unless g is real and nonzero."""
    sf = structure_frequency(c, a)
    if sf.g_squared <= 0:
        return None
    return 2 * math.pi / sf.g_abs


@dataclass(frozen=True)
class ReducedQuadratures:
    """Linearized quadratures when modes 1 and 2 are replaced by strong pumps.

    With phi2 = phi1 + pi/2 the generators reduce to

        L_x = lx_coeff * (A3 e^{-i phi} + A3^dag e^{i phi})
        L_y = i ly_coeff * (A3 e^{-i phi} - A3^dag e^{i phi})
        L_z = lz
    """

    lx_coeff: float
    ly_coeff: float
    phase: float
    lz: float

    def lx(self, amplitude: complex) -> float:
        """L_x evaluated on a classical amplitude of mode 3."""
        w = amplitude * np.exp(-1j * self.phase)
        return float(self.lx_coeff * 2 * w.real)

    def ly(self, amplitude: complex) -> float:
        w = amplitude * np.exp(-1j * self.phase)
        return float((1j * self.ly_coeff * (w - np.conj(w))).real)


def strong_pump_reduction(gamma1_abs: float, gamma2_abs: float, phi1: float) -> ReducedQuadratures:
    if gamma1_abs < 0 or gamma2_abs < 0:
        raise ValueError("pump amplitudes must be non-negative")
    return ReducedQuadratures(
        lx_coeff=-gamma2_abs,
        ly_coeff=gamma1_abs,
        phase=phi1,
        lz=-2.0 * gamma1_abs * gamma2_abs,
    )
