"""siegelscan: exact-arithmetic degree-2 Siegel / degree-1 Jacobi form tables,
quadratic Gauss-sum verification, quadratic-form search lemmas, and window
sign-change scanning of primitive coefficient sequences."""

__version__ = "0.1.0"

from .halfint import HalfIntMatrix, SMmuSpec, act, content, enumerate_smmu, is_primitive, reduce
from .jacobi import (
    JacobiTable,
    ThetaComponent,
    check_nonvanishing,
    jacobi_eisenstein,
    multiply_scalar_jacobi,
    phi_cusp,
    theta_assemble,
    theta_eval,
    theta_split,
    v_operator,
)
from .qforms import QuadForm, pivot_to_prime, represent_coprime, represent_prime, sl_completion
from .qseries import QSeries, bernoulli, cohen_h, eisenstein, gen_bernoulli, kronecker
from .siegel import SiegelTable, diagonal_sequence, fourier_jacobi, maass_lift, smmu_sequence
from .signscan import (
    NormalizedSequence,
    WindowReport,
    default_grid,
    first_sign_change,
    growth_check,
    normalize,
    partial_sum_stats,
    scan_windows,
)

__all__ = [
    "HalfIntMatrix",
    "SMmuSpec",
    "act",
    "content",
    "enumerate_smmu",
    "is_primitive",
    "reduce",
    "JacobiTable",
    "ThetaComponent",
    "check_nonvanishing",
    "jacobi_eisenstein",
    "multiply_scalar_jacobi",
    "phi_cusp",
    "theta_assemble",
    "theta_eval",
    "theta_split",
    "v_operator",
    "QuadForm",
    "pivot_to_prime",
    "represent_coprime",
    "represent_prime",
    "sl_completion",
    "QSeries",
    "bernoulli",
    "cohen_h",
    "eisenstein",
    "gen_bernoulli",
    "kronecker",
    "SiegelTable",
    "diagonal_sequence",
    "fourier_jacobi",
    "maass_lift",
    "smmu_sequence",
    "NormalizedSequence",
    "WindowReport",
    "default_grid",
    "first_sign_change",
    "growth_check",
    "normalize",
    "partial_sum_stats",
    "scan_windows",
    "__version__",
]
