"""Exact q-series engine for fermionic orbifold trace functions.

Arithmetic substrate: truncated series on fractional exponent lattices with
cyclotomic-rational coefficients.  On top of it: Bernoulli polynomials,
Eisenstein series and their twisted family, the Dedekind eta function with
eta-quotients, mode change-of-variable tables, twisted free-fermion modules
with graded traces, and modular-group machinery with a numeric
transformation-law verifier.
"""

from .bracket import (
    BracketCoeffTable,
    c_table,
    l0_bracket_coeffs,
    log_pow_series,
    vbracket_coeffs,
)
from .errors import (
    BudgetExceeded,
    DegenerateSample,
    InvalidDimension,
    InvalidFactor,
    InvalidWeight,
    NotAbsolutelyConvergent,
    NotInvertible,
    OutsideConvergenceRegion,
    OutsideUpperHalfPlane,
    SupertraceError,
    UndefinedAtTrivialPair,
    UnknownAutomorphism,
    UnsupportedPair,
    WindowTooSmall,
)
from .fock import (
    FockModule,
    OscillatorFamily,
    build_g_sigma_twisted,
    build_ns,
    build_sigma_twisted,
    graded_trace_enumerate,
    graded_trace_product,
    module_and_operator,
    reference_eta_quotient,
    trace_gh,
)
from .modforms import (
    EtaQuotientSpec,
    PbarWindow,
    RationalPolynomial,
    bernoulli_number,
    bernoulli_polynomial,
    check_eta_laws,
    check_prop_2_3,
    eisenstein_E,
    eisenstein_G_lattice,
    eta_quotient,
    eta_series,
    p_eval,
    pbar_window,
    q_series_Q,
)
from .series import (
    CycloScalar,
    EvalPoint,
    QSeries,
    RootOfUnity,
    SeriesValue,
    cyclotomic_polynomial,
    product_expand,
)
from .sl2 import (
    DEFAULT_SAMPLES,
    IDENTITY,
    S,
    SL2Matrix,
    T,
    TwistPair,
    VerificationReport,
    act_pair,
    act_twist,
    in_gamma_TT1,
    in_gamma_theta,
    mobius,
    transform_ratio,
)
from .suites import SUITE_NAMES, SuiteResult, run_suite

__version__ = "0.1.0"
