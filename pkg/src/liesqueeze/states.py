"""Coherent states of the discrete SU(1,1) and SU(2) representations.

Three families are supported:

* Perelomov states  |xi; k>  (SU(1,1), |xi| < 1)
* Barut-Girardello states  |z; n>  (SU(1,1), eigenstates of K_-)
* Bloch (spin coherent) states  |mu; j>  (SU(2))

Initial-time moments are available by two independent routes:
:func:`moments_series` sums explicitly over a coefficient sequence using the
ladder rules, while :func:`moments_closed` uses analytic expressions obtained
from the generating functions (see the function docstring).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from liesqueeze.algebra import AlgebraKind
from liesqueeze.special import bessel_i_scaled, bessel_ratio, log_binomial_array

DEFAULT_CAP = 4096


class CutoffError(RuntimeError):
    """A coefficient sequence would need more terms than the configured cap."""


@dataclass(frozen=True)
class PerelomovState:
    k: float
    xi: complex

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"Bargmann index must be positive, got {self.k!r}")
        if not abs(self.xi) < 1:
            raise ValueError(f"|xi| must be < 1, got {abs(self.xi)!r}")

    @classmethod
    def from_polar(cls, k: float, xi_abs: float, phi: float) -> "PerelomovState":
        """xi = |xi| exp(-i phi)."""
        return cls(k, complex(xi_abs * cmath.exp(-1j * phi)))

    kind = AlgebraKind.SU11

    @property
    def index(self) -> float:
        return self.k


@dataclass(frozen=True)
class BarutGirardelloState:
    n: float
    z: complex

    def __post_init__(self):
        if not self.n > 0:
            raise ValueError(f"index n must be positive, got {self.n!r}")

    @classmethod
    def from_polar(cls, n: float, z_abs: float, z_arg: float) -> "BarutGirardelloState":
        return cls(n, complex(z_abs * cmath.exp(1j * z_arg)))

    kind = AlgebraKind.SU11

    @property
    def index(self) -> float:
        return self.n


@dataclass(frozen=True)
class BlochState:
    j: float
    mu: complex

    def __post_init__(self):
        two_j = 2 * self.j
        if not (two_j >= 1 and abs(two_j - round(two_j)) < 1e-12):
            raise ValueError(f"j must be a positive half-integer, got {self.j!r}")

    @classmethod
    def from_polar(cls, j: float, mu_abs: float, mu_arg: float) -> "BlochState":
        return cls(j, complex(mu_abs * cmath.exp(1j * mu_arg)))

    kind = AlgebraKind.SU2

    @property
    def index(self) -> float:
        return self.j

    @property
    def dim(self) -> int:
        return int(round(2 * self.j)) + 1


@dataclass(frozen=True)
class MomentTable:
    """Initial-time expectation values.

    kp = <K+>, kp2 = <K+^2>, kzkp = <Kz K+>, kpkm = <K+ K->, kmkp = <K- K+>.
    Moments with K- follow by conjugation, e.g. <K-> = conj(kp).
    """

    kz: float
    kz2: float
    kp: complex
    kp2: complex
    kzkp: complex
    kpkm: float
    kmkp: float

    @property
    def km(self) -> complex:
        return self.kp.conjugate()

    def commutator_residual(self, beta: int) -> float:
        """|<[K-, K+]> + 2 beta <Kz>|, zero in the representations used here."""
        return abs(self.kmkp - self.kpkm + 2 * beta * self.kz)

    def first_moments(self) -> np.ndarray:
        """(<Kx>, <Ky>, <Kz>)."""
        return np.array([self.kp.real, self.kp.imag, self.kz])

    def covariance(self) -> np.ndarray:
        """Symmetrized covariance of (Kx, Ky, Kz).

        Uses Kz K+ = K+ Kz + K+ to express every symmetrized product through
        the table entries; a generic route to variances of any real linear
        combination of the generators.
        """
        kp, kp2, kzkp = self.kp, self.kp2, self.kzkp
        exx = 0.25 * (2 * kp2.real + self.kpkm + self.kmkp)
        eyy = 0.25 * (-2 * kp2.real + self.kpkm + self.kmkp)
        exy = 0.5 * kp2.imag
        w = 2 * kzkp - kp
        exz = 0.5 * w.real
        eyz = 0.5 * w.imag
        second = np.array(
            [
                [exx, exy, exz],
                [exy, eyy, eyz],
                [exz, eyz, self.kz2],
            ]
        )
        mean = self.first_moments()
        return second - np.outer(mean, mean)


# -- coefficient sequences -------------------------------------------------


def _tail_cutoff(log_p0: float, log_ratio, ratio_bound, tail_tol: float, cap: int) -> int:
    """Smallest M whose discarded tail sum_{m>=M} p_m is provably < tail_tol.

    ``log_ratio(m)`` gives ln(p_{m+1}/p_m); ``ratio_bound(m)`` an upper bound
    on p_{l+1}/p_l for all l >= m.
    """
    log_pm = log_p0
    m = 0
    while True:
        r = ratio_bound(m)
        if r < 1:
            bound = math.exp(log_pm) / (1 - r) if log_pm > -700 else 0.0
            if bound < tail_tol:
                return max(m, 1)
        if m >= cap:
            raise CutoffError(f"coefficient sequence needs more than {cap} terms")
        log_pm += log_ratio(m)
        m += 1


def _check_tol(tail_tol: float):
    if not tail_tol > 0:
        raise ValueError("tail_tol must be positive")


def pcs_coefficients(s: PerelomovState, tail_tol: float = 1e-12, cap: int = DEFAULT_CAP) -> np.ndarray:
    """c_m = (1-|xi|^2)^k sqrt(Gamma(m+2k)/(m! Gamma(2k))) xi^m, m = 0..M-1."""
    _check_tol(tail_tol)
    k = s.k
    x = abs(s.xi) ** 2
    if x == 0:
        return np.array([1.0 + 0j])
    log_x = math.log(x)
    size = _tail_cutoff(
        2 * k * math.log1p(-x),
        lambda m: log_x + math.log((m + 2 * k) / (m + 1)),
        lambda m: max(x * (m + 2 * k) / (m + 1), x),
        tail_tol,
        cap,
    )
    m = np.arange(size)
    log_mag = k * math.log1p(-x) + 0.5 * log_binomial_array(m + 2 * k - 1, m) + 0.5 * m * log_x
    return np.exp(log_mag) * np.exp(1j * cmath.phase(s.xi) * m)


def _log_bessel_i(nu: float, x: float) -> float:
    scaled = bessel_i_scaled(nu, x)
    if scaled > 1e-280:
        return math.log(scaled) + x
    # leading term of the power series; the next one is smaller by x^2/(4(nu+1))
    return nu * math.log(0.5 * x) - math.lgamma(nu + 1)


def bgcs_coefficients(
    s: BarutGirardelloState, tail_tol: float = 1e-12, cap: int = DEFAULT_CAP
) -> np.ndarray:
    """c_m = sqrt(|z|^(2n-1) / I_{2n-1}(2|z|)) z^m / sqrt(m! Gamma(m+2n))."""
    _check_tol(tail_tol)

    n = s.n
    r = abs(s.z)
    if r == 0:
        return np.array([1.0 + 0j])
    nu = 2 * n - 1
    log_norm = nu * math.log(r) - _log_bessel_i(nu, 2 * r)
    y = r * r
    log_y = 2 * math.log(r)
    size = _tail_cutoff(
        log_norm - float(gammaln(2 * n)),
        lambda m: log_y - math.log((m + 1) * (m + 2 * n)),
        lambda m: y / ((m + 1) * (m + 2 * n)),
        tail_tol,
        cap,
    )
    m = np.arange(size)
    log_mag = 0.5 * log_norm + m * math.log(r) - 0.5 * (gammaln(m + 1) + gammaln(m + 2 * n))
    return np.exp(log_mag) * np.exp(1j * cmath.phase(s.z) * m)


def bloch_coefficients(s: BlochState) -> np.ndarray:
    """Coefficients on |m; j>, m = -j..j (array index p = j + m).

    Normalized with (1 + |mu|^2)^(-j).
    """
    two_j = s.dim - 1
    p = np.arange(two_j + 1)
    if s.mu == 0:
        out = np.zeros(two_j + 1, dtype=complex)
        out[0] = 1.0
        return out
    r = abs(s.mu)
    if r <= 1:
        log_weight = p * math.log(r) - s.j * math.log1p(r * r)
    else:
        # same value, without cancelling two large logs when |mu| >> 1
        log_weight = (p - two_j) * math.log(r) - s.j * math.log1p(1 / (r * r))
    log_mag = 0.5 * log_binomial_array(two_j, p) + log_weight
    return np.exp(log_mag) * np.exp(1j * cmath.phase(s.mu) * p)


def coefficients(state, tail_tol: float = 1e-12, cap: int = DEFAULT_CAP) -> np.ndarray:
    if isinstance(state, PerelomovState):
        return pcs_coefficients(state, tail_tol, cap)
    if isinstance(state, BarutGirardelloState):
        return bgcs_coefficients(state, tail_tol, cap)
    if isinstance(state, BlochState):
        return bloch_coefficients(state)
    raise TypeError(f"unsupported state {state!r}")


# -- ladder data shared with the representation oracle ----------------------


def ladder_data(kind: AlgebraKind, index: float, dim: int):
    """Kz eigenvalues and K+ amplitudes <p+1|K+|p> on a basis of size ``dim``.

    SU(1,1): basis |m; k>, m = 0..dim-1, Kz = m + k,
             K+ amplitude sqrt((m+1)(m+2k)).
    SU(2):   basis |m; j>, m = -j..j, Kz = m, K+ amplitude sqrt((j-m)(j+m+1)).
    The amplitude array has length ``dim``; its last entry couples to the first
    state outside a truncated basis (zero for SU(2)).
    """
    p = np.arange(dim, dtype=float)
    if kind is AlgebraKind.SU11:
        kz = p + index
        amp = np.sqrt((p + 1) * (p + 2 * index))
    else:
        m = p - index
        kz = m
        amp = np.sqrt(np.clip((index - m) * (index + m + 1), 0, None))
    return kz, amp


def moments_series(coeffs, rep_kind: AlgebraKind, index: float) -> MomentTable:
    """Moments by direct summation over ``coeffs`` with the ladder rules."""
    c = np.asarray(coeffs, dtype=complex)
    dim = c.size
    kz_vals, amp = ladder_data(rep_kind, index, dim)
    prob = np.abs(c) ** 2

    kz = float(np.sum(prob * kz_vals))
    kz2 = float(np.sum(prob * kz_vals**2))
    # K+ c: component p+1 receives amp[p] c[p]
    raised = amp[:-1] * c[:-1]
    kp = complex(np.sum(np.conj(c[1:]) * raised))
    kzkp = complex(np.sum(np.conj(c[1:]) * kz_vals[1:] * raised))
    kp2 = complex(np.sum(np.conj(c[2:]) * amp[1:-1] * raised[:-1])) if dim > 2 else 0j
    kmkp = float(np.sum(amp**2 * prob))
    kpkm = float(np.sum(amp[:-1] ** 2 * prob[1:]))
    return MomentTable(kz, kz2, kp, kp2, kzkp, kpkm, kmkp)


def moments_closed(state) -> MomentTable:
    """Closed-form initial moments from the generating functions.

    Perelomov / Bloch: the unnormalized state |w) = exp(w K+)|lowest> has
    overlap N = (1 - s |w|^2)^(-2 s q) with (s, q) = (1, k) for SU(1,1) and
    (s, q) = (-1, j) for SU(2).  On it K+ acts as d/dw and Kz as (s q + w d/dw),
    so with x = |w|^2 and u = <Kz>:

        <K+>     = 2 q w* / (1 - s x)
        <K+^2>   = 2 q (2 q + s) w*^2 / (1 - s x)^2
        <K- K+>  = 2 q (1 + 2 q x) / (1 - s x)^2
        <K+ K->  = 2 q x (2 q + x) / (1 - s x)^2
        <Kz>     = s q (1 + s x) / (1 - s x)
        <Kz^2>   = u^2 + 2 q x / (1 - s x)^2
        <Kz K+>  = <K+> (u + 1/(1 - s x))

    Barut-Girardello: with rho = I_{2n}(2|z|)/I_{2n-1}(2|z|), the photon
    number weight is sum |z|^(2m)/(m! Gamma(m+2n)) = |z|^(1-2n) I_{2n-1}(2|z|),
    and the Bessel derivative identities give

        <Kz>     = n + |z| rho
        Var(Kz)  = |z|^2 (1 - rho^2) - (2n - 1) |z| rho
        <K+> = z*,  <K+^2> = z*^2,  <K+ K-> = |z|^2,  <K- K+> = |z|^2 + 2<Kz>
        <Kz K+>  = z* (<Kz> + 1)        (from <z|K+ = z* <z| and [Kz, K+] = K+)
    """
    if isinstance(state, BarutGirardelloState):
        n, z = state.n, complex(state.z)
        r = abs(z)
        rho = bessel_ratio(2 * n - 1, 2 * r)
        kz = n + r * rho
        var_m = r * r * (1 - rho * rho) - (2 * n - 1) * r * rho
        zc = z.conjugate()
        return MomentTable(
            kz=kz,
            kz2=kz * kz + var_m,
            kp=zc,
            kp2=zc * zc,
            kzkp=zc * (kz + 1),
            kpkm=r * r,
            kmkp=r * r + 2 * kz,
        )

    if isinstance(state, PerelomovState):
        s, q, w = 1, state.k, complex(state.xi)
    elif isinstance(state, BlochState):
        s, q, w = -1, state.j, complex(state.mu)
    else:
        raise TypeError(f"unsupported state {state!r}")

    x = abs(w) ** 2
    d = 1 - s * x
    wc = w.conjugate()
    kz = s * q * (1 + s * x) / d
    kp = 2 * q * wc / d
    return MomentTable(
        kz=kz,
        kz2=kz * kz + 2 * q * x / d**2,
        kp=kp,
        kp2=2 * q * (2 * q + s) * wc * wc / d**2,
        kzkp=kp * (kz + 1 / d),
        kpkm=2 * q * x * (2 * q + x) / d**2,
        kmkp=2 * q * (1 + 2 * q * x) / d**2,
    )
