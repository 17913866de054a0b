"""zhangmap: a numerical workbench for a log-power iterated map family
and the computational number theory it is calibrated against.

The dynamics half covers Lyapunov exponents, bifurcation diagrams, cycle
and fixed-point detection, and parallel (c, alpha) regime sweeps.  The
arithmetic half covers Kronecker characters, class numbers, fundamental
units, three independent routes to L(1, chi_d), zero-free-region
exponents, Chebyshev psi(x; q, a) and a genus-theory census.
"""

from .errors import (
    CapExceeded,
    DomainError,
    InvalidInput,
    PoleAtZero,
    ZhangmapError,
)
from .maps import (
    LOGISTIC,
    MAGNITUDE,
    SIGNED,
    ZHANG1,
    ZHANG2,
    MapParams,
    Orbit,
    eval_derivative,
    eval_map,
    in_domain,
    iterate_orbit,
    spow,
)
from .lyapunov import (
    LyapunovEstimate,
    lyapunov_curve,
    lyapunov_exponent,
)
from .bifurcation import (
    BifurcationData,
    CycleInfo,
    FixedPoint,
    bifurcation_scan,
    detect_cycle,
    find_fixed_points,
)
from .sweep import (
    SweepGrid,
    calibrate_c,
    classify_regime,
    grid_sweep,
)
from .arith import (
    DgRow,
    GenusRow,
    LValueReport,
    MarginResult,
    PsiResult,
    ZeroFreeBound,
    chebyshev_psi,
    chi,
    class_number,
    class_number_imag,
    d_g_check,
    dirichlet_L1_class_number,
    dirichlet_L1_finite_sum,
    dirichlet_L1_partial_series,
    error_envelope,
    euler_phi,
    fundamental_discriminants,
    fundamental_unit_log,
    genus_scan,
    is_fundamental,
    kronecker,
    l_value_report,
    roots_of_unity,
    unit_norm_check,
    zero_free_beta_bound,
    zero_free_exponent,
    zhang_envelope_exponent,
    zhang_margin,
)

__version__ = "0.1.0"
