"""Fourier-spectral laboratory for action-functional Hessians in non-Darboux
charts: pointwise symplectic algebra, truncated Hessian operators and their
F + C decompositions, Rabier resolvent probes, and spectral flow."""

from . import action, chart, cli, densela, fredholm, loopspace, symplectic, verify
from .action import (
    DecompositionPair,
    OperatorMatrix,
    action_value,
    assemble_hessian,
    band_asymmetry_defect,
    check_nondegenerate,
    cutoff_redecompose,
    decompose,
    find_critical_point,
    gradient,
    hessian_report,
    kernel_dimension,
    resolved_symmetric_eigenvalues,
    scale_lipschitz_probe,
    second_derivative_quadrature,
)
from .chart import (
    ChartSpec,
    Hamiltonian,
    LTensor,
    cubic_chart,
    darboux_chart,
    exp_chart,
    hamiltonian_vector_field,
    hessian_of_h,
    l_tensor_at,
    lbar_apply,
    load_chart,
    parse_chart,
    parse_hamiltonian,
    quadratic_hamiltonian,
)
from .densela import (
    SpdCertificate,
    heron_scalar_iterates,
    heron_sqrt,
    heron_sqrt_scalar,
    newton_picard_iterates,
    shifted_resolvent_norm,
    spd_certificate,
    sum_quadrature_inequality,
    svd_values,
    sym_eigen,
)
from .fredholm import (
    CompactnessReport,
    ConnectingPath,
    RabierReport,
    SpectralFlowReport,
    SyntheticPath,
    builtin_synthetic_path,
    compact_perturbation_constants,
    index_of_d,
    index_zero_of_b_dt,
    interpolate_path,
    multiplication_compactness_probe,
    rabier_probe,
    semi_fredholm_delta,
    semi_fredholm_estimate,
    spectral_flow,
    spectral_flow_synthetic,
)
from .loopspace import (
    Loop,
    SpikeProfile,
    WeightedSeqSpace,
    loop_growth_function,
    project_high_modes,
    project_low_modes,
    sobolev_norm,
    spectral_derivative,
    spike_profile,
)
from .symplectic import SymplecticPointData, b_from_omega, certify_point, jb_from_b, symplectic_point

__version__ = "0.1.0"
