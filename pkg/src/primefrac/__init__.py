"""Numerical laboratory for the prime kernels K_k, their exponential sums,
major-arc approximations, frequency projections and operator-norm studies."""

from .errors import (
    AliasingError,
    ArcOverlapError,
    EmptyTableError,
    ModelRejection,
    ResourceCapError,
)
from .numtheory import (
    PrimeTable,
    RationalFreq,
    chebyshev_theta,
    farey_arrays,
    mobius,
    mobius_totient_tables,
    prevprime,
    reduced_fractions,
    sieve_primes,
    totient,
    totient_lowerbound_report,
)
from .kernel import (
    CertifiedBracket,
    FractionalKernel,
    PrimeKernel,
    build_fractional_kernel,
    build_kernel,
    kernel_fourier,
    kernel_fourier_grid,
    sup_norm_certified,
)
from .bump import BumpSpec
from .major_arc import (
    ApproxParams,
    MajorArcApprox,
    disjointness_check,
    error_profile,
    eval_L_shell,
    eval_L_total,
    eval_V,
    lemma_gap_sup,
)
from .iw import FreqSet, IWParams, build_freq_set, measure_projection_norm, project_low

__version__ = "0.1.0"
