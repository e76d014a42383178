"""Exact local Fourier transforms of inertia symbols over GF(p^k).

The package models the local structure of rank-one wild objects at 0 and
infinity by finite data (a pushforward degree, a reduced polar part, a
tame character, a unipotent block size), computes the three local
transforms between the points exactly, derives the local monodromy of
hypergeometric systems from them, and cross-checks everything against
brute-force exponential sums over concrete finite fields.
"""

from .errors import (
    BadValuation,
    DepthTooLarge,
    DisjointnessViolated,
    DivisionByZero,
    DlogOfZero,
    EngineError,
    HypothesisViolation,
    InfiniteTail,
    NoRootInField,
    NotDivisible,
    NotPrime,
    OrderNotAvailable,
    PrecisionUnderflow,
    SmallCharacteristic,
    TrivialCharacter,
    UnsupportedTameTrivial,
)
from .field import FieldCtx, build_field, suggest_degree
from .series import INF, LaurentSeries
from .symbol import (
    CHI2,
    TRIVIAL_CHAR,
    LocalSheaf,
    Point,
    Summand,
    TameChar,
    WildPart,
    as_reduce,
    canonicalize,
    descend,
    stabilizer,
    tame_char,
)
from .transform import (
    LegendreSolution,
    TransformKind,
    legendre,
    lft,
    output_degree,
    rank_law_check,
    transform_summand,
)
from .hyper import (
    At1Data,
    HypLocalData,
    HypSpec,
    hyp_local,
    hyp_local_recursive,
    local_data_equal,
)
from .numeric import (
    CharEval,
    TraceTable,
    ft_trace,
    gauss_sum,
    hyp_sum,
    hyp_trace_recursive,
    kloosterman,
)

__version__ = "0.1.0"

__all__ = [
    "BadValuation",
    "DepthTooLarge",
    "DisjointnessViolated",
    "DivisionByZero",
    "DlogOfZero",
    "EngineError",
    "HypothesisViolation",
    "InfiniteTail",
    "NoRootInField",
    "NotDivisible",
    "NotPrime",
    "OrderNotAvailable",
    "PrecisionUnderflow",
    "SmallCharacteristic",
    "TrivialCharacter",
    "UnsupportedTameTrivial",
    "FieldCtx",
    "build_field",
    "suggest_degree",
    "INF",
    "LaurentSeries",
    "CHI2",
    "TRIVIAL_CHAR",
    "LocalSheaf",
    "Point",
    "Summand",
    "TameChar",
    "WildPart",
    "as_reduce",
    "canonicalize",
    "descend",
    "stabilizer",
    "tame_char",
    "LegendreSolution",
    "TransformKind",
    "legendre",
    "lft",
    "output_degree",
    "rank_law_check",
    "transform_summand",
    "At1Data",
    "HypLocalData",
    "HypSpec",
    "hyp_local",
    "hyp_local_recursive",
    "local_data_equal",
    "CharEval",
    "TraceTable",
    "ft_trace",
    "gauss_sum",
    "hyp_sum",
    "hyp_trace_recursive",
    "kloosterman",
    "__version__",
]
