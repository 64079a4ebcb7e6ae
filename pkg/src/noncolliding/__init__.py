"""Noncolliding simple random walks as a determinantal process.

Exact rational kernels and oracles for finite starting configurations, the
equidistant infinite system and its sine-kernel equilibrium, weighted Monte
Carlo, and the diffusive (Dyson model) limit.
"""
from .lattice_walk import (
    DEFAULT_ENUMERATION_CAP,
    EnumerationCapError,
    PathEnumerator,
    SpaceTimePoint,
    enumerate_paths,
    is_supported,
    reachable_sites,
    transition_prob,
    transition_prob_integral,
)
from .fujita import (
    ItoDecomposition,
    MartingalePolynomial,
    check_recurrence,
    discrete_ito_decompose,
    esscher,
    euler_poly,
    fujita_coeffs,
    fujita_from_euler,
    fujita_poly,
)
from .secant import (
    SecantSampler,
    characteristic_check,
    gh_secant_density,
    laplace_check,
    secant_cdf,
    secant_cdf_inverse,
    secant_density,
)
from .martingales import (
    InvalidConfigurationError,
    MartingaleFunction,
    SiteConfiguration,
    det_martingale,
    martingale_fn,
    martingale_matrix,
    phi_poly,
    reducibility_check,
    vandermonde,
    vandermonde_ratio,
)
from .finite_kernel import correlation, fredholm_gf, kernel_matrix, kernel_value, trace_at_time
from .mc_engine import (
    WeightedEnsemble,
    estimate_correlation,
    exact_conditional_expectation,
    exact_correlation,
    exact_generating_function,
    sample_weighted,
)
from .infinite_system import (
    EquidistantConfig,
    kernel_inf,
    martingale_fn_inf,
    relaxation_gap,
    sine_kernel_discrete,
)
from .continuum import (
    convergence_gap,
    dyson_kernel_equidistant,
    dyson_kernel_finite,
    extended_sine_kernel,
    hermite_martingale,
    theta3,
)

__version__ = "0.1.0"
