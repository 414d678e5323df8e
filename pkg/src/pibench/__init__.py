"""pibench: exact decimal fixed-point pi approximations and benchmarks.

Six classical approximation families (Wallis product, Gregory-Leibniz
series, Newton's arcsine series, Euler's continued fraction, Viete's
nested radicals, and zeta-constant roots for s = 2, 4, 6, 8) evaluated
with deterministic half-even decimal arithmetic, plus a harness that
reproduces the published convergence tables and compares efficiency.
"""

from .fixedpoint import (
    BigFixed,
    PrecisionCtx,
    default_guard,
    fx_add,
    fx_cmp,
    fx_div,
    fx_from_ratio,
    fx_mul,
    fx_nth_root,
    fx_parse,
    fx_pow_int,
    fx_round,
    fx_sqrt,
    fx_sub,
    fx_to_string,
)
from .harness import (
    CrossoverReport,
    ReferenceIntegrityError,
    ReferencePi,
    RunRecord,
    Schedule,
    compare,
    digits_correct,
    pct_error,
    reference_pi,
    run,
    time_to_digits,
)
from .methods import (
    MethodId,
    ZetaParams,
    current,
    euler_cf,
    leibniz,
    make_state,
    newton_arcsine,
    step,
    viete,
    wallis,
    zeta_pi,
)

__version__ = "1.0.0"

__all__ = [
    "BigFixed",
    "PrecisionCtx",
    "default_guard",
    "fx_add",
    "fx_cmp",
    "fx_div",
    "fx_from_ratio",
    "fx_mul",
    "fx_nth_root",
    "fx_parse",
    "fx_pow_int",
    "fx_round",
    "fx_sqrt",
    "fx_sub",
    "fx_to_string",
    "CrossoverReport",
    "ReferenceIntegrityError",
    "ReferencePi",
    "RunRecord",
    "Schedule",
    "compare",
    "digits_correct",
    "pct_error",
    "reference_pi",
    "run",
    "time_to_digits",
    "MethodId",
    "ZetaParams",
    "current",
    "euler_cf",
    "leibniz",
    "make_state",
    "newton_arcsine",
    "step",
    "viete",
    "wallis",
    "zeta_pi",
]
