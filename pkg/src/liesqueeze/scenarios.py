"""Run configurations and the figure presets."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from liesqueeze.algebra import AlgebraKind, CouplingTriple, structure_frequency
from liesqueeze.squeezing import check_compatible
from liesqueeze.states import BarutGirardelloState, BlochState, PerelomovState

DEFAULT_STEPS = 2000
DEFAULT_TAIL_TOL = 1e-10

FIGURE_COUPLINGS = CouplingTriple(0.1, 0.25, 1.0)
# squeezing factors do not depend on k or j; these only fix the scale
PRESET_K = 0.25
PRESET_J = 5.0


class UnknownPresetError(KeyError):
    pass


@dataclass(frozen=True)
class Scenario:
    coupling: CouplingTriple
    kind: AlgebraKind
    state: PerelomovState | BarutGirardelloState | BlochState
    t_max: float
    steps: int = DEFAULT_STEPS
    tail_tol: float = DEFAULT_TAIL_TOL
    out: str | None = None

    def __post_init__(self):
        check_compatible(self.state, self.kind)
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")

    @property
    def model(self):
        return self.coupling, self.kind

    def t_grid(self) -> np.ndarray:
        if self.steps == 0:
            return np.zeros(1)
        return np.linspace(0.0, self.t_max, self.steps + 1)

    def with_(self, **changes) -> "Scenario":
        return replace(self, **changes)


def two_periods(c: CouplingTriple, kind: AlgebraKind) -> float:
    """8 pi / g, or a fixed window of 20 when g is not real."""
    sf = structure_frequency(c, kind)
    if sf.g_squared <= 0:
        return 20.0
    return 8 * math.pi / sf.g_abs


def _pcs(phi, xi_abs):
    return AlgebraKind.SU11, PerelomovState.from_polar(PRESET_K, xi_abs, phi)


def _bloch(mu_abs):
    # mu = |mu| exp(+i phi) with phi = pi/2
    return AlgebraKind.SU2, BlochState.from_polar(PRESET_J, mu_abs, math.pi / 2)


_PRESETS = {
    "fig1a": lambda: _pcs(math.pi / 2, 0.5),
    "fig1b": lambda: _pcs(math.pi / 2, 0.8),
    "fig1c": lambda: _pcs(math.pi / 4, 0.5),
    "fig2": lambda: (AlgebraKind.SU11, BarutGirardelloState.from_polar(2.0, 10.0, math.pi)),
    "fig3-mu0.5": lambda: _bloch(0.5),
    "fig3-mu10": lambda: _bloch(10.0),
    "fig3-mu100": lambda: _bloch(100.0),
}

PRESET_IDS = tuple(_PRESETS)


def figure_preset(preset_id: str) -> Scenario:
    try:
        kind, state = _PRESETS[preset_id]()
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {preset_id!r}; valid ids: {', '.join(PRESET_IDS)}"
        ) from None
    return Scenario(
        coupling=FIGURE_COUPLINGS,
        kind=kind,
        state=state,
        t_max=two_periods(FIGURE_COUPLINGS, kind),
    )
