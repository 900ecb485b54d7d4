"""Exact computations with the fifteen Apéry-like sequences and their binomial transforms."""
from .congruence_lab import (
    EXPECTED_TABLE,
    CongruenceCertificate,
    compute_M,
    gauss_check,
    reproduce_tables,
    theorem1_check,
    theorem2_check,
)
from .exact_math import binom, binom_zero_neg, factorize, gcd_all, radical, squarefree_part
from .operators import (
    ThetaOperator,
    ThetaPoly,
    build_L1,
    build_L2,
    build_transformed_L1,
    build_transformed_L2,
    check_annihilates,
    operator_to_recurrence,
)
from .sequences import (
    SPECS,
    IntegralityViolation,
    Normalization,
    SequenceSpec,
    Source,
    TermTable,
    cross_check,
    generate,
    get_spec,
    sequence_terms,
)
from .transforms import binomial_transform, inverse_transform, series_of, verify_gf_identity

__version__ = "0.1.0"
