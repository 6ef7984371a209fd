"""gal: a numerical laboratory for Diophantine approximation by Gaussian primes."""

from .coeffs import CoeffSource
from .errors import (
    BothZero,
    BudgetExceeded,
    DomainError,
    GalError,
    InputTooLarge,
    LimitTooLarge,
    NoConvergentBelowTarget,
    OutOfRange,
    PrecisionExhausted,
    ZeroOrUnit,
)
from .expsums import (
    AnnulusSpec,
    BoundReport,
    FreqBox,
    annulus_exp_sum,
    cauchy_schwarz_diagnostic,
    check_plug_and_also,
    disk_exp_sum,
    e1,
    e2,
    e3,
    e3_f3_bound_reports,
    f3,
    g_theta,
    g_theta_reports,
    lin_bound_rhs,
    linear_sum_1d,
    sigma_count,
    spacing_check,
)
from .equidist import (
    ExperimentConfig,
    RatioResult,
    corollary_search,
    equidist_ratio,
    preset_x_from_denominator,
    s_x_delta,
    sweep,
    type1_check,
    type2_check,
)
from .gaussian_core import (
    GaussianInt,
    HPComplex,
    dist_sup,
    gi_gcd,
    nearest_gaussian_int,
    norm,
)
from .gaussian_primes import (
    SieveTable,
    build_sieve,
    count_annulus,
    is_gaussian_prime,
    pnt_ratio,
)
from .hurwitz_cf import (
    HURWITZ_C,
    CFExpansion,
    Convergent,
    convergents,
    expand,
    pick_denominator,
)
from .theta import ThetaSpec, as_ball, parse_theta
from .vaaler import VaalerParams, psi, psi_star, sigma_majorant, weight_w

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
