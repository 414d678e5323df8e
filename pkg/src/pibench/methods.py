"""Resumable generators for six classical pi-approximation families.

Each generator keeps its accumulators as raw scaled integers (value =
register * 10**-scale) so that a step is a handful of integer ops with a
single half-even rounding; BigFixed objects are only materialized when a
value is read. Re-running a fresh generator to the same index reproduces
the same bits, so direct functions and resumed state are interchangeable.

Index conventions:
  wallis   n >= 1  product upper bound, 2 * prod_{k=1..n} (2k/(2k-1))(2k/(2k+1))
  leibniz  n >= 0  inclusive sum index, 4 * sum_{k=0..n} (-1)^k/(2k+1)
  newton   n >= 0  inclusive sum index, 6 * sum_{k=0..n} t_k,
                   t_0 = 1/2, t_{k+1} = t_k (2k+1)^2 / (8(k+1)(2k+3))
  eulercf  d >= 1  continued-fraction depth, 4/(1 + 1^2/(2 + 3^2/(2 + ...)))
                   with d squared-odd partial quotients and tail 0
  viete    n >= 1  2^(n+1) * sqrt(2 - r_{n-1}) over nested radicals
                   r_1 = sqrt(2), r_{m+1} = sqrt(2 + r_m)
  zeta s   n >= 1  (C_s * sum_{k=1..n} 1/k^s)^(1/s)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .fixedpoint import (
    BigFixed,
    PrecisionCtx,
    _div_half_even,
    _isqrt,
    fx_nth_root,
)


class MethodId(str, Enum):
    WALLIS = "wallis"
    LEIBNIZ = "leibniz"
    NEWTON_ARCSINE = "newton"
    EULER_CF = "eulercf"
    VIETE = "viete"
    ZETA2 = "zeta2"
    ZETA4 = "zeta4"
    ZETA6 = "zeta6"
    ZETA8 = "zeta8"


@dataclass(frozen=True)
class ZetaParams:
    s: int
    constant: int

    def __post_init__(self) -> None:
        if (self.s, self.constant) not in _ZETA_PAIRS:
            raise ValueError(f"unsupported zeta parameters ({self.s}, {self.constant})")


_ZETA_PAIRS = {(2, 6), (4, 90), (6, 945), (8, 9450)}

ZETA_PARAMS = {
    MethodId.ZETA2: ZetaParams(2, 6),
    MethodId.ZETA4: ZetaParams(4, 90),
    MethodId.ZETA6: ZetaParams(6, 945),
    MethodId.ZETA8: ZetaParams(8, 9450),
}

ZETA_METHODS = tuple(ZETA_PARAMS)


class ApproximantState:
    """Base class: n plus method-specific integer registers."""

    method: MethodId
    min_index = 1  # smallest n at which value() is defined

    def __init__(self, ctx: PrecisionCtx) -> None:
        self.ctx = ctx
        self.n = 0

    def step(self) -> None:
        raise NotImplementedError

    def value(self) -> BigFixed:
        raise NotImplementedError

    def current(self) -> tuple[int, BigFixed]:
        return self.n, self.value()


class WallisState(ApproximantState):
    method = MethodId.WALLIS

    def __init__(self, ctx: PrecisionCtx) -> None:
        super().__init__(ctx)
        self._acc = 2 * 10 ** ctx.scale

    def step(self) -> None:
        self.n += 1
        f = 4 * self.n * self.n  # (2n)^2; factor is f/(f-1) since
        self._acc = _div_half_even(self._acc * f, f - 1)  # (2n-1)(2n+1) = f-1

    def value(self) -> BigFixed:
        if self.n < 1:
            raise ValueError("wallis is defined for n >= 1")
        return BigFixed(self._acc, self.ctx.scale)


class LeibnizState(ApproximantState):
    method = MethodId.LEIBNIZ
    min_index = 0

    def __init__(self, ctx: PrecisionCtx) -> None:
        super().__init__(ctx)
        self._four = 4 * 10 ** ctx.scale
        self._acc = self._four  # k=0 term, exact
        self._sign = -1

    def step(self) -> None:
        self.n += 1
        self._acc += _div_half_even(self._sign * self._four, 2 * self.n + 1)
        self._sign = -self._sign

    def value(self) -> BigFixed:
        return BigFixed(self._acc, self.ctx.scale)


class NewtonArcsineState(ApproximantState):
    method = MethodId.NEWTON_ARCSINE
    min_index = 0

    def __init__(self, ctx: PrecisionCtx) -> None:
        super().__init__(ctx)
        self._t = 10 ** ctx.scale // 2  # t_0 = 1/2, exact
        self._acc = self._t

    def step(self) -> None:
        k = self.n  # advancing t_k -> t_{k+1}
        self._t = _div_half_even(
            self._t * (2 * k + 1) ** 2, 8 * (k + 1) * (2 * k + 3)
        )
        self._acc += self._t
        self.n += 1

    def value(self) -> BigFixed:
        return BigFixed(6 * self._acc, self.ctx.scale)


class EulerCFState(ApproximantState):
    """Exact integer convergents A_k, B_k of 4/(1 + 1^2/(2 + 3^2/...)).

    A_k = b_k A_{k-1} + a_k A_{k-2} (denominators), B_k likewise
    (numerators of the reciprocal tail), with b_0 = 1, b_k = 2 and
    a_k = (2k-1)^2. The value 4*B_d/A_d involves a single rounding.
    """

    method = MethodId.EULER_CF

    def __init__(self, ctx: PrecisionCtx) -> None:
        super().__init__(ctx)
        self._a_prev, self._a = 1, 1  # A_{-1}, A_0
        self._b_prev, self._b = 0, 1  # B_{-1}, B_0

    def step(self) -> None:
        self.n += 1
        a_k = (2 * self.n - 1) ** 2
        self._a_prev, self._a = self._a, 2 * self._a + a_k * self._a_prev
        self._b_prev, self._b = self._b, 2 * self._b + a_k * self._b_prev

    def value(self) -> BigFixed:
        if self.n < 1:
            raise ValueError("eulercf is defined for depth d >= 1")
        return BigFixed(
            _div_half_even(4 * self._b * 10 ** self.ctx.scale, self._a),
            self.ctx.scale,
        )

    def convergent(self) -> Fraction:
        """Exact rational value of the current convergent."""
        if self.n < 1:
            raise ValueError("eulercf is defined for depth d >= 1")
        return Fraction(4 * self._b, self._a)


class VieteState(ApproximantState):
    """Nested-radical doubling formula.

    The subtraction 2 - r_{n-1} cancels about 0.602n leading digits, so
    the whole chain is recomputed per sample at an elevated scale
    (ceil(0.61n) + 10 digits beyond the context) and rounded once at the
    end. That keeps value() a pure function of (n, ctx) and the sample
    correct to the context scale.
    """

    method = MethodId.VIETE

    def step(self) -> None:
        self.n += 1

    def value(self) -> BigFixed:
        if self.n < 1:
            raise ValueError("viete is defined for n >= 1")
        return _viete_value(self.n, self.ctx)


def _viete_value(n: int, ctx: PrecisionCtx) -> BigFixed:
    extra = -(-61 * n // 100) + 10  # ceil(0.61 n) + 10 cancellation guard
    e = 10 ** (ctx.scale + extra)
    r = _isqrt(2 * e * e)  # r_1 = sqrt(2)
    for _ in range(n - 1):
        r = _isqrt((2 * e + r) * e)  # r_{m+1} = sqrt(2 + r_m)
    root = _isqrt((2 * e - r) * e)  # sqrt(2 - r_{n-1})
    return BigFixed(_div_half_even(2 ** (n + 1) * root, 10 ** extra), ctx.scale)


class ZetaState(ApproximantState):
    min_index = 1

    def __init__(self, ctx: PrecisionCtx, params: ZetaParams) -> None:
        super().__init__(ctx)
        self.params = params
        self._one = 10 ** ctx.scale
        self._acc = 0  # sum_{k=1..n} 1/k^s

    def step(self) -> None:
        self.n += 1
        self._acc += _div_half_even(self._one, self.n ** self.params.s)

    def value(self) -> BigFixed:
        if self.n < 1:
            raise ValueError("zeta methods are defined for n >= 1")
        radicand = BigFixed(self.params.constant * self._acc, self.ctx.scale)
        return fx_nth_root(radicand, self.params.s, self.ctx)


def make_state(method: MethodId, ctx: PrecisionCtx) -> ApproximantState:
    method = MethodId(method)
    if method in ZETA_PARAMS:
        state = ZetaState(ctx, ZETA_PARAMS[method])
        state.method = method
        return state
    cls = {
        MethodId.WALLIS: WallisState,
        MethodId.LEIBNIZ: LeibnizState,
        MethodId.NEWTON_ARCSINE: NewtonArcsineState,
        MethodId.EULER_CF: EulerCFState,
        MethodId.VIETE: VieteState,
    }[method]
    return cls(ctx)


def step(state: ApproximantState) -> ApproximantState:
    state.step()
    return state


def current(state: ApproximantState) -> tuple[int, BigFixed]:
    return state.current()


def _run_to(method: MethodId, n: int, ctx: PrecisionCtx) -> BigFixed:
    state = make_state(method, ctx)
    if n < state.min_index:
        raise ValueError(f"{method.value} is defined for n >= {state.min_index}")
    for _ in range(n):
        state.step()
    return state.value()


def wallis(n: int, ctx: PrecisionCtx) -> BigFixed:
    return _run_to(MethodId.WALLIS, n, ctx)


def leibniz(n: int, ctx: PrecisionCtx) -> BigFixed:
    return _run_to(MethodId.LEIBNIZ, n, ctx)


def newton_arcsine(n: int, ctx: PrecisionCtx) -> BigFixed:
    return _run_to(MethodId.NEWTON_ARCSINE, n, ctx)


def euler_cf(d: int, ctx: PrecisionCtx) -> BigFixed:
    return _run_to(MethodId.EULER_CF, d, ctx)


def euler_cf_convergent(d: int) -> Fraction:
    """Exact rational convergent at depth d (oracle for equivalence tests)."""
    state = EulerCFState(PrecisionCtx(1, 0))
    for _ in range(d):
        state.step()
    return state.convergent()


def viete(n: int, ctx: PrecisionCtx) -> BigFixed:
    return _run_to(MethodId.VIETE, n, ctx)


def zeta_pi(params: ZetaParams, n: int, ctx: PrecisionCtx) -> BigFixed:
    for mid, p in ZETA_PARAMS.items():
        if p == params:
            return _run_to(mid, n, ctx)
    raise ValueError(f"unsupported zeta parameters {params}")
