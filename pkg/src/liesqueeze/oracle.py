"""Brute-force check of the closed forms in an explicit representation.

The generators are built as finite matrices in the ladder basis (exact for
SU(2), truncated for SU(1,1)), the Hamiltonian is diagonalized once, and
expectation values follow from psi(t) = exp(-iHt) psi.  Nothing here uses the
closed-form evolution matrix, so agreement between the two is a real test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from liesqueeze.algebra import AlgebraKind, CouplingTriple
from liesqueeze.states import (
    DEFAULT_CAP,
    BlochState,
    coefficients,
    ladder_data,
)
from liesqueeze.squeezing import check_compatible

MIN_DIM = 16


class ConvergenceError(RuntimeError):
    """Truncated observables did not settle before the dimension cap."""


@dataclass(frozen=True)
class RepSpace:
    kind: AlgebraKind
    index: float
    dim: int
    tail_tol: float | None = None


def build_rep(kind: AlgebraKind, index: float, dim: int):
    """Dense (Kx, Ky, Kz) in the ladder basis.

    For SU(2) ``dim`` must equal 2j+1; for SU(1,1) it is the truncation size.
    """
    if kind is AlgebraKind.SU2:
        expected = int(round(2 * index)) + 1
        if dim != expected:
            raise ValueError(f"SU(2) representation j={index} has dimension {expected}, not {dim}")
    elif dim < 2:
        raise ValueError("truncated SU(1,1) representation needs dim >= 2")
    kz_vals, amp = ladder_data(kind, index, dim)
    kp = np.diag(amp[:-1], -1).astype(complex)
    km = kp.conj().T
    kx = 0.5 * (kp + km)
    ky = -0.5j * (kp - km)
    kz = np.diag(kz_vals).astype(complex)
    return kx, ky, kz


def raising_lowering(kx, ky):
    """(K+, K-) from the Cartesian pair."""
    return kx + 1j * ky, kx - 1j * ky


def hamiltonian_matrix(ops, c: CouplingTriple) -> np.ndarray:
    kx, ky, kz = ops
    return c.alpha1 * kx + c.alpha2 * ky + c.alpha3 * kz


def hermiticity_residual(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T)))


class SpectralPropagator:
    """exp(-iHt) from a single Hermitian eigendecomposition."""

    def __init__(self, h):
        self.energies, self.vectors = scipy.linalg.eigh(h)

    def evolve(self, psi, t):
        """psi(t) for scalar t, or an array (len(t), dim) for a time grid."""
        coeff = self.vectors.conj().T @ psi
        ts = np.asarray(t, dtype=float)
        phases = np.exp(-1j * np.multiply.outer(ts, self.energies))
        return (phases * coeff) @ self.vectors.T

    def unitary(self, t) -> np.ndarray:
        return (self.vectors * np.exp(-1j * self.energies * t)) @ self.vectors.conj().T


@dataclass(frozen=True)
class HeisenbergMoments:
    """First and second moments of (Kx(t), Ky(t), Kz(t)); arrays over t along axis 0."""

    mean: np.ndarray
    second: np.ndarray
    norm: np.ndarray

    @property
    def variance(self) -> np.ndarray:
        return self.second - self.mean**2


def _moments_from_states(ops, states):
    states = np.atleast_2d(states)
    mean = []
    second = []
    for op in ops:
        applied = states @ op.T
        mean.append(np.real(np.einsum("ti,ti->t", states.conj(), applied)))
        second.append(np.real(np.einsum("ti,ti->t", applied.conj(), applied)))
    norm = np.sqrt(np.real(np.einsum("ti,ti->t", states.conj(), states)))
    return HeisenbergMoments(np.stack(mean, -1), np.stack(second, -1), norm)


def heisenberg_expectation(h, ops, psi, t, propagator: SpectralPropagator | None = None):
    """<K_j(t)> and <K_j(t)^2> with K_j(t) = exp(iHt) K_j exp(-iHt).

    Evaluated as <U psi| K_j |U psi>; ``t`` may be a scalar or a grid.
    """
    prop = propagator or SpectralPropagator(h)
    states = prop.evolve(np.asarray(psi, dtype=complex), t)
    out = _moments_from_states(ops, states)
    if np.ndim(t) == 0:
        return HeisenbergMoments(out.mean[0], out.second[0], out.norm[0])
    return out


def truncation_dim(state, tail_tol: float = 1e-10, cap: int = DEFAULT_CAP) -> int:
    """Basis size for the oracle: 2j+1 for Bloch states, otherwise twice the
    coefficient cutoff (at least ``MIN_DIM``) to leave room for the evolution."""
    if isinstance(state, BlochState):
        return state.dim
    size = coefficients(state, tail_tol, cap).size
    dim = max(MIN_DIM, 2 * size)
    if dim > cap:
        raise ConvergenceError(f"truncation dimension {dim} exceeds cap {cap}")
    return dim


@dataclass(frozen=True)
class OracleResult:
    vx: np.ndarray
    vy: np.ndarray
    kz: np.ndarray
    mean: np.ndarray
    trunc_estimate: float
    dim: int


def _run(kind, state, c, ts, dim, psi0):
    ops = build_rep(kind, state.index, dim)
    psi = np.zeros(dim, dtype=complex)
    psi[: psi0.size] = psi0
    psi /= np.linalg.norm(psi)
    prop = SpectralPropagator(hamiltonian_matrix(ops, c))
    return _moments_from_states(ops, prop.evolve(psi, ts))


def variance_oracle(
    kind: AlgebraKind,
    state,
    c: CouplingTriple,
    t,
    tail_tol: float = 1e-10,
    conv_tol: float = 1e-8,
    cap: int = DEFAULT_CAP,
) -> OracleResult:
    """Variances and <Kz> from explicit evolution.

    SU(1,1) results are certified by doubling the basis until every observable
    changes by less than ``conv_tol`` (relative to max(1, |value|));
    ``trunc_estimate`` is the last such change.  SU(2) is exact.
    """
    check_compatible(state, kind)
    scalar = np.ndim(t) == 0
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    psi0 = coefficients(state, tail_tol, cap)

    if kind is AlgebraKind.SU2:
        mom = _run(kind, state, c, ts, state.dim, psi0)
        dim, estimate = state.dim, 0.0
    else:
        dim = truncation_dim(state, tail_tol, cap)
        mom = _run(kind, state, c, ts, dim, psi0)
        while True:
            if 2 * dim > cap:
                raise ConvergenceError(
                    f"oracle not converged at dimension {dim} (cap {cap})"
                )
            bigger = _run(kind, state, c, ts, 2 * dim, psi0)
            estimate = _observable_change(mom, bigger)
            dim, mom = 2 * dim, bigger
            if estimate <= conv_tol:
                break

    var = mom.variance
    vx, vy, kz = var[:, 0], var[:, 1], mom.mean[:, 2]
    mean = mom.mean
    if scalar:
        vx, vy, kz, mean = vx[0], vy[0], kz[0], mean[0]
    return OracleResult(vx, vy, kz, mean, estimate, dim)


def _observable_change(a: HeisenbergMoments, b: HeisenbergMoments) -> float:
    worst = 0.0
    for x, y in ((a.mean, b.mean), (a.variance, b.variance)):
        worst = max(worst, float(np.max(np.abs(x - y) / np.maximum(1.0, np.abs(y)))))
    return worst


def interior_size(dim: int, kind: AlgebraKind) -> int:
    """Rows kept when judging the algebra on a truncated basis."""
    if kind is AlgebraKind.SU2:
        return dim
    return dim - math.ceil(dim / 8)


def commutator_residual(kx, ky, kz, beta: int, interior: int | None = None) -> float:
    """Max-norm of [Kx, Ky] - i beta Kz on the leading ``interior`` block."""
    dim = kx.shape[0]
    if interior is None:
        interior = interior_size(dim, AlgebraKind.from_beta(beta))
    comm = kx @ ky - ky @ kx - 1j * beta * kz
    return float(np.max(np.abs(comm[:interior, :interior])))


def ladder_commutator_residual(kx, ky, kz, beta: int, interior: int | None = None) -> float:
    """Max-norm of [K-, K+] + 2 beta Kz and [Kz, K+] - K+ on the interior block.

    In the representations used here [K-, K+] = -2 beta Kz, which is the
    ladder form of [Kx, Ky] = i beta Kz.
    """
    dim = kx.shape[0]
    if interior is None:
        interior = interior_size(dim, AlgebraKind.from_beta(beta))
    kp, km = raising_lowering(kx, ky)
    r1 = km @ kp - kp @ km + 2 * beta * kz
    r2 = kz @ kp - kp @ kz - kp
    sl = slice(0, interior)
    return float(max(np.max(np.abs(r1[sl, sl])), np.max(np.abs(r2[sl, sl]))))


def evolved_operators(ops, propagator: SpectralPropagator, t):
    """U(t)^dag K U(t) for each generator."""
    u = propagator.unitary(t)
    return tuple(u.conj().T @ op @ u for op in ops)
