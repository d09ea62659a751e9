"""SU(1,1) and SU(2) squeezing of three coupled radiation modes.

Closed-form Heisenberg dynamics of the generators, coherent-state moments,
quadrature variances and squeezing factors, plus an independent
representation-matrix oracle.
"""

from liesqueeze.algebra import (
    AlgebraKind,
    CoefficientSet,
    CouplingTriple,
    EvolutionMatrix,
    Regime,
    StructureFrequency,
    coefficient_set,
    evolution_matrix,
    metric_residual,
    strong_pump_reduction,
    structure_frequency,
    trig_kernels,
)
from liesqueeze.scenarios import Scenario, figure_preset
from liesqueeze.squeezing import (
    QuadratureRecord,
    mixing_amplitudes,
    squeezing_factor,
    sweep,
    uncertainty_record,
    variances,
    variances_bgcs,
    variances_bloch,
    variances_pcs,
)
from liesqueeze.states import (
    BarutGirardelloState,
    BlochState,
    MomentTable,
    PerelomovState,
    moments_closed,
    moments_series,
)

__all__ = [
    "AlgebraKind", "CoefficientSet", "CouplingTriple", "EvolutionMatrix", "Regime",
    "StructureFrequency", "coefficient_set", "evolution_matrix", "metric_residual",
    "strong_pump_reduction", "structure_frequency", "trig_kernels",
    "Scenario", "figure_preset",
    "QuadratureRecord", "mixing_amplitudes", "squeezing_factor", "sweep",
    "uncertainty_record", "variances", "variances_bgcs", "variances_bloch", "variances_pcs",
    "BarutGirardelloState", "BlochState", "MomentTable", "PerelomovState",
    "moments_closed", "moments_series",
]
