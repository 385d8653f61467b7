"""Exact Igusa local zeta functions of semiquasihomogeneous polynomials.

The package computes Z(f, s), the integral of |f|^s over the integer points
of a local field, as an exact rational function of t = q^(-s), for
polynomials with an isolated singularity at the origin whose lowest
weighted-degree part is quasihomogeneous.  Both Q_p and F_p((pi)) are
supported (prime residue field).  Results are cross-validated against
exhaustive congruence counting through the Poincare series.
"""

from .coeff import Lifting, LocalRing, LocalRingElement, PrimeField, enumerate_points
from .errors import (
    BudgetExceeded,
    DepthExceeded,
    EngineError,
    InsufficientValuation,
    InvalidHint,
    InvalidParameters,
    InvariantViolation,
    NonUnitContent,
    NotApplicable,
    NotSemiQuasiHomogeneous,
    PolynomialSyntaxError,
    StabilizationNotReached,
    UniformizerInCharZero,
    ZeroPolynomial,
)
from .poly import MultiPoly, ResiduePoly, parse, weighted_degree
from .ratfun import DenomFactor, RatFun
from .region import Polydisc, ResidueRegion, ValuationCell, cell_change_of_variables, complement_cells
from .neron import DilatationNode, L_measure, classify_points, dilate, l_measure, mu_procedure
from .spf import SpfConfig, SpfTrace, series_check, spf_zeta
from .sqh import (
    SqhDecomposition,
    SqhReport,
    WeightSystem,
    detect_weights,
    scale_step,
    zeta_on_complement,
    zeta_semiquasihomogeneous,
)
from .analysis import (
    PoincareSeries,
    bound_check,
    two_term_closed_form,
    oracle_counts,
    poincare_from_zeta,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "DenomFactor",
    "DepthExceeded",
    "DilatationNode",
    "EngineError",
    "InsufficientValuation",
    "InvalidHint",
    "InvalidParameters",
    "InvariantViolation",
    "L_measure",
    "Lifting",
    "LocalRing",
    "LocalRingElement",
    "MultiPoly",
    "NonUnitContent",
    "NotApplicable",
    "NotSemiQuasiHomogeneous",
    "PoincareSeries",
    "Polydisc",
    "PolynomialSyntaxError",
    "PrimeField",
    "RatFun",
    "ResiduePoly",
    "ResidueRegion",
    "SpfConfig",
    "SpfTrace",
    "SqhDecomposition",
    "SqhReport",
    "StabilizationNotReached",
    "UniformizerInCharZero",
    "ValuationCell",
    "WeightSystem",
    "ZeroPolynomial",
    "bound_check",
    "cell_change_of_variables",
    "classify_points",
    "complement_cells",
    "detect_weights",
    "dilate",
    "enumerate_points",
    "two_term_closed_form",
    "l_measure",
    "mu_procedure",
    "oracle_counts",
    "parse",
    "poincare_from_zeta",
    "scale_step",
    "series_check",
    "spf_zeta",
    "weighted_degree",
    "zeta_on_complement",
    "zeta_semiquasihomogeneous",
]
