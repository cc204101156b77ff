"""Numerical toolkit for Bergman-space analysis on the Siegel upper half-space.

Closed-form kernel/metric geometry, chart quadrature, r-lattices, positive
measures, Berezin/averaging transforms, exact Schatten norms of Toeplitz
operators with atomic symbols, and config-driven verification scenarios.
"""

from .chart import (
    QuadratureSpec,
    Region,
    ToleranceError,
    chart_to_point,
    grid_nodes,
    integrate_chart,
    integrate_expanding,
    integrate_with_estimate,
    point_to_chart,
    sample_region,
)
from .experiments import ExperimentConfig, ExperimentReport, run_scenario
from .geometry import (
    SiegelPoint,
    automorphism,
    ball_volume,
    ball_volume_mc,
    bergman_kernel,
    bergman_metric,
    dilate,
    domination_constant,
    i_point,
    inverse_automorphism,
    invariant_density,
    kernel_constant,
    normalized_kernel,
    rho,
    rho_form,
    translate,
    translate_inverse,
)
from .lattice import (
    Lattice,
    LatticeConstructionError,
    build_lattice,
    overlap_count,
    partition_separated,
    verify_covering,
)
from .measures import AtomicMeasure, DensityMeasure, admissibility, ball_mass, discretize
from .schatten import (
    NumericalError,
    Spectrum,
    ToeplitzGram,
    gram_matrix,
    operator_berezin,
    power_inequality_check,
    schatten_norm,
    spectrum,
    trace_identity_check,
)
from .transforms import (
    KeyLemmaResult,
    ScalarField,
    averaging_field,
    averaging_function,
    berezin_field,
    berezin_transform,
    keylemma_check,
    keylemma_closed_form,
    keylemma_constant,
    lattice_lp_sum,
    lp_lambda_norm,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
