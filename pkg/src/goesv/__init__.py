"""Singular-value decimation of Gaussian symmetric matrices.

Samplers for the dense ensembles and their sparse equivalents, the
interlacing rank-one transform, closed-form joint and marginal
densities, determinant factorizations with the log-determinant CLT, and
Monte Carlo gap-probability identities, all driven by deterministic
seeded streams.
"""

from .dense import (
    PAIR_TOL,
    ParityFrame,
    SortedSpectrum,
    ague_singular_values,
    collapse_pairs,
    goe_singular_values,
    gue_singular_values,
    lue_eigenvalues,
    sample_goe,
    sample_gue,
    sample_skew,
    singular_values,
    symmetric_eigenvalues,
)
from .densities import (
    DensityContext,
    EKappaVector,
    conditional_t_given_s,
    even_marginal,
    factored_D,
    integrate_out_check,
    joint_density_ts,
    joint_density_xy,
    normalization_c,
    odd_marginal,
    signed_sum_D,
)
from .determinant import (
    CltStat,
    DetSample,
    clt_decomposition,
    clt_statistic,
    mellin_eta_even,
    sample_absdet_goe_factored,
    sample_absdet_gue_factored,
)
from .gaps import (
    DualityReport,
    EnsembleSpec,
    GapEstimate,
    GapIdentityReport,
    TwoSampleReport,
    count_in_interval,
    ecdf,
    estimate_gap,
    ks_one_sample,
    ks_two_sample,
    verify_gap_identity,
    verify_superposition,
    verify_wishart_duality,
)
from .interlace import (
    RVector,
    XYCoords,
    extract_rs,
    involution_phi,
    jacobian_det,
    phi_forward,
    phi_inverse,
    rq_chain,
    to_ts,
    to_xy,
)
from .sparse import (
    BidiagMatrix,
    BorderedModel,
    DecimatedPair,
    build_B_pair,
    build_R_pair,
    decimate,
    sample_bordered_H,
    sample_tridiagonal_T,
)
from .streams import ChiDraws, RandStream, chi_cdf, chi_pdf, sample_chi

__version__ = "0.1.0"

__all__ = [
    "PAIR_TOL",
    "ParityFrame",
    "SortedSpectrum",
    "ague_singular_values",
    "collapse_pairs",
    "goe_singular_values",
    "gue_singular_values",
    "lue_eigenvalues",
    "sample_goe",
    "sample_gue",
    "sample_skew",
    "singular_values",
    "symmetric_eigenvalues",
    "DensityContext",
    "EKappaVector",
    "conditional_t_given_s",
    "even_marginal",
    "factored_D",
    "integrate_out_check",
    "joint_density_ts",
    "joint_density_xy",
    "normalization_c",
    "odd_marginal",
    "signed_sum_D",
    "CltStat",
    "DetSample",
    "clt_decomposition",
    "clt_statistic",
    "mellin_eta_even",
    "sample_absdet_goe_factored",
    "sample_absdet_gue_factored",
    "DualityReport",
    "EnsembleSpec",
    "GapEstimate",
    "GapIdentityReport",
    "TwoSampleReport",
    "count_in_interval",
    "ecdf",
    "estimate_gap",
    "ks_one_sample",
    "ks_two_sample",
    "verify_gap_identity",
    "verify_superposition",
    "verify_wishart_duality",
    "RVector",
    "XYCoords",
    "extract_rs",
    "involution_phi",
    "jacobian_det",
    "phi_forward",
    "phi_inverse",
    "rq_chain",
    "to_ts",
    "to_xy",
    "BidiagMatrix",
    "BorderedModel",
    "DecimatedPair",
    "build_B_pair",
    "build_R_pair",
    "decimate",
    "sample_bordered_H",
    "sample_tridiagonal_T",
    "ChiDraws",
    "RandStream",
    "chi_cdf",
    "chi_pdf",
    "sample_chi",
]
