"""sturmkit: exact Sturmian/Christoffel sequences, discrepancy of asymptotic
pairs, and the constructive classification of indistinguishable pairs."""

from .slopes import (
    QuadraticIrrational,
    Rational,
    Slope,
    ceil_mul_add,
    continued_fraction,
    floor_mul_add,
    is_rational,
    parse_slope,
)
from .sequences import (
    Alphabet,
    BINARY,
    EventuallyPeriodic,
    MechanicalLower,
    MechanicalUpper,
    SequenceOracle,
    Substitution,
    is_recurrent,
    oracles_equal,
    render_window,
    reverse,
    shift,
    substitute,
)
from .patterns import (
    AsymptoticPair,
    NotAsymptoticError,
    Pattern,
    UncertifiableError,
    Verdict,
    certify_asymptotic,
    check_indistinguishable,
    discrepancy,
    ns_norm_lower_bound,
    occurrences_in,
    pattern_reduction_check,
    reverse_pair,
    shift_pair,
    substitute_pair,
)
from .language import (
    FactorSet,
    central_window_uniqueness,
    complexity_bounds_check,
    complexity_profile,
    factors,
    special_factors,
    toeplitz_pair,
    toeplitz_thue_morse_pair,
)
from .christoffel import (
    ChristoffelWord,
    LimitPairForm,
    NotOfForm,
    RationalLimitClass,
    christoffel,
    classify_non_recurrent,
    limit_pair,
    palindrome_factorization,
    pirillo_check,
    verify_limit_convergence,
)
from .derive import (
    ClassificationResult,
    DerivedSequence,
    Inconclusive,
    NotIndistinguishable,
    ReturnWordSet,
    classify,
    derived_pair,
    derived_sequence,
    return_words,
    substitution_preserves_check,
)

__version__ = "0.1.0"
