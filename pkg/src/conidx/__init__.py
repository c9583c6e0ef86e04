"""conidx: a numerical laboratory for the index of convergence.

Estimates natural densities and indices of convergence of single and
double sequences, and uses them to reproduce, at desk scale, the cluster
structure of bivariate Lagrange (Chebyshev nodes of the second type) and
tensor Shepard operators at jump discontinuities.
"""

__version__ = "0.1.0"

from .density import (
    DensityEstimate,
    IndexReport,
    IndexSet,
    SeqWindow,
    Target,
    complement_identity_check,
    count_prefix,
    default_checkpoints,
    density_bounds,
    index_to_target,
    sum_rule_check,
)
from .harness import (
    ExperimentResult,
    ExperimentSpec,
    Prediction,
    PredictionTable,
    check_product_rule,
    check_uniform_limit_rule,
    cluster_witness,
    predict_lagrange_1d,
    predict_lagrange_2d,
    predict_shepard_1d,
    predict_shepard_2d,
    product_measure,
    rotation_sequence,
    run_index_experiment,
    scan_decreasing,
    uniform_convergence_scan,
)
from .lagrange import (
    ChebGrid,
    cheb_grid,
    eval_jump_decomposed,
    fundamental_weight,
    grid_offset,
    jump_sequence,
    jump_value_direct,
    lagrange_eval_1d,
    lagrange_eval_2d,
    lagrange_eval_cplus_h,
    offset_subsequence,
)
from .points import IRRATIONAL_VALUES, PointSpec
from .profiles import (
    Profile1D,
    Profile2D,
    SeriesTolerance,
    affine_jump_profile,
    hurwitz_zeta,
    lagrange_jump_profile,
    lerch_j1,
    preimage_measure_1d,
    preimage_measure_2d,
    shepard_jump_profile,
)
from .shepard import ShepardParams, shepard_eval_1d, shepard_eval_2d, shepard_weights_1d
from .stepfn import StepFn1D, StepFn2D

__all__ = [
    "__version__",
    "ChebGrid", "DensityEstimate", "ExperimentResult", "ExperimentSpec",
    "IRRATIONAL_VALUES", "IndexReport", "IndexSet", "PointSpec", "Prediction",
    "PredictionTable", "Profile1D", "Profile2D", "SeqWindow", "SeriesTolerance",
    "ShepardParams", "StepFn1D", "StepFn2D", "Target",
    "affine_jump_profile", "cheb_grid", "check_product_rule",
    "check_uniform_limit_rule", "cluster_witness", "complement_identity_check",
    "count_prefix", "default_checkpoints", "density_bounds",
    "eval_jump_decomposed", "fundamental_weight", "grid_offset",
    "hurwitz_zeta", "index_to_target", "jump_sequence", "jump_value_direct",
    "lagrange_eval_1d",
    "lagrange_eval_2d", "lagrange_eval_cplus_h", "lagrange_jump_profile",
    "lerch_j1", "offset_subsequence", "predict_lagrange_1d",
    "predict_lagrange_2d", "predict_shepard_1d", "predict_shepard_2d",
    "preimage_measure_1d", "preimage_measure_2d", "product_measure",
    "rotation_sequence", "run_index_experiment", "scan_decreasing",
    "shepard_eval_1d", "shepard_eval_2d", "shepard_jump_profile",
    "shepard_weights_1d", "sum_rule_check", "uniform_convergence_scan",
]
