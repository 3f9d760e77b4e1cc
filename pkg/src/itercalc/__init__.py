"""Exact calculus on words over Q(z): shuffle and stuffle products, letter-deleting
derivations, Mobius pullbacks, and numeric iterated integrals."""

from .derivations import partial, partial_with_f, partial_zc
from .errors import (
    DegenerateMatrix,
    DivisionByZero,
    EmptyWordInput,
    ExpressionSyntaxError,
    GammaMapsEndpointToInfinity,
    InvalidF,
    ItercalcError,
    NotAdmissible,
    PoleAtEvaluationPoint,
    PoleOnPath,
    ToleranceNotReached,
    UnsupportedLetter,
    ZeroDenominator,
)
from .ncalgebra import NcPoly, Word, e, in_A1, is_admissible, word
from .numeric import NumericResult, check_diff_formula, check_relation_numeric, eval_L, eval_word_letters
from .parsing import format_expr, format_hexpr, parse_expr, parse_hexpr, parse_matrix, parse_ratfun
from .products import (
    HPoly,
    embed_i,
    hbar_stuffle,
    shuffle,
    shuffle_perm_oracle,
    stuffle,
    stuffle_graph,
    stuffle_paths_oracle,
    y,
)
from .ratfield import (
    GAMMA_Z,
    IDENTITY,
    INFINITY,
    ONE,
    Z,
    ZERO,
    GradingMap,
    MobiusMap,
    RatFun,
    as_ratfun,
    bracket,
    mobius_apply,
    mobius_inverse,
    rf_eval,
)
from .transforms import epsilon_gamma, gamma_star, phi, tau_z, tau_z_inverse, tau_z_mobius

__version__ = "0.1.0"
