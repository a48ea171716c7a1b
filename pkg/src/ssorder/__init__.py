"""Exact verification of the supersingular order of L2(Delta^t) in characteristic p."""

from .errors import BranchMatchError, FieldMismatchError, PrecisionError
from .ffield import FieldDescriptor, FieldElement, Poly, construct_field, frobenius, poly_roots
from .legendre import (
    CurveModel,
    IsogenyData,
    SupersingularPoint,
    deuring_polynomial,
    dual_kernel,
    hasse_coefficient_polynomial,
    l2_local_valuation,
    leg_ratio_series,
    legs_multipliers,
    supersingular_oracle,
    supersingular_points,
    velu_2isogeny,
)
from .lucas import kummer_oracle, lucas_binom, nu_p, predicted_valuation
from .pseries import (
    Indeterminate,
    TruncatedSeries,
    series_compose,
    series_pow,
    series_sqrt,
    series_valuation,
)
from .qforms import (
    QExpansion,
    delta_expansion,
    eisenstein_expansion,
    l2_comparison_series,
    level2_basis,
    max_hasse_divisibility,
    ord_q,
)
from .verifier import RunConfig, VerificationReport, emit_report, run_verification

__version__ = "0.1.0"
