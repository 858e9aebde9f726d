"""Hasse-Schmidt derivations, Taylor-basis differential operators and logarithmic integrability."""

from .config import LIMITS, DeskScaleError, Limits
from .diffop import (
    DiffOp,
    NotAnOperator,
    OrderError,
    Symbol,
    bracket,
    coeff_extract,
    commutator,
    delta_apply,
    iterated_bracket,
    op_apply,
    op_compose,
    poisson,
    symbol,
)
from .field import GF, QQ, Field, FieldError, field_for
from .graded_dual import (
    MultiDerivation,
    ThetaMismatch,
    divided_power,
    md_eval,
    sder_poisson,
    shuffle,
    theta,
    zeta,
)
from .groebner import Ideal, buchberger
from .hs import (
    HSDerivation,
    InvalidHS,
    NotIntegrable,
    TotalSymbol,
    canonical_lift,
    char0_integral,
    hs_component,
    hs_compose,
    hs_from_images,
    hs_inverse,
    hs_of_derivation,
    hs_scale,
    hs_truncate,
    identity_hs,
    is_exponential_type,
    taylor_hs,
    total_symbol,
)
from .logarithmic import (
    NotLogarithmic,
    ObstructionReport,
    UnsupportedIdeal,
    induced_on_quotient,
    is_log_derivation,
    is_log_hs,
    obstruction_ideal,
    obstruction_step,
    step_integrate,
    transfer_integral,
)
from .parsing import ParseError
from .poly import ContextMismatch, NotDivisible, Poly, PolyRing, exact_divide
from .series import TruncSeries

__version__ = "0.1.0"
