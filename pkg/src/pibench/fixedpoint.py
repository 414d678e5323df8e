"""Decimal fixed-point arithmetic on arbitrary-size integers.

A value is a pair (significand, scale) meaning significand * 10**-scale.
Every context-aware operation returns a result rescaled to the context's
scale (working digits plus guard digits), rounded half-even. Roots are
computed by integer Newton iteration and return the floor of the exact
root at the target scale, which keeps them within one unit in the last
place.

Values are immutable; all functions are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_DECIMAL_RE = re.compile(r"^[+-]?\d+(?:\.(\d+))?$")


def _div_half_even(num: int, den: int) -> int:
    """Nearest integer to num/den, ties to even. den must be positive."""
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q & 1):
        q += 1
    return q


def _isqrt(n: int) -> int:
    """Floor square root by Newton iteration.

    Seeded above the root, the iteration decreases monotonically; it is
    stopped at the first non-decreasing step, after which the iterate is
    exactly floor(sqrt(n)). The trailing correction loops are insurance
    for the floor property and normally never run.
    """
    if n < 0:
        raise ValueError("square root of a negative value")
    if n == 0:
        return 0
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            break
        x = y
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def _iroot(n: int, r: int) -> int:
    """Floor r-th root of a non-negative integer, Newton iteration."""
    if n < 0:
        raise ValueError("even/unsupported root of a negative value")
    if r < 1:
        raise ValueError("root order must be a positive integer")
    if n == 0:
        return 0
    if r == 1:
        return n
    if r == 2:
        return _isqrt(n)
    x = 1 << (n.bit_length() // r + 1)
    while True:
        y = ((r - 1) * x + n // x ** (r - 1)) // r
        if y >= x:
            break
        x = y
    while x ** r > n:
        x -= 1
    while (x + 1) ** r <= n:
        x += 1
    return x


@dataclass(frozen=True)
class PrecisionCtx:
    """Reporting precision (working_dp) plus internal guard digits."""

    working_dp: int
    guard_dp: int = 10

    def __post_init__(self) -> None:
        if self.working_dp < 1:
            raise ValueError("working_dp must be >= 1")
        if self.guard_dp < 0:
            raise ValueError("guard_dp must be >= 0")

    @property
    def scale(self) -> int:
        return self.working_dp + self.guard_dp


def default_guard(max_n: int) -> int:
    """Guard digits for a run whose largest sample index is max_n.

    10 + ceil(log10(max_n)) bounds the drift of up to max_n sequential
    half-even roundings well below the working digits.
    """
    if max_n < 1:
        max_n = 1
    d = len(str(max_n)) - 1
    if 10 ** d < max_n:
        d += 1
    return 10 + d


@dataclass(frozen=True)
class BigFixed:
    """significand * 10**-scale. Zero is canonically (0, 0)."""

    significand: int
    scale: int = 0

    def __post_init__(self) -> None:
        if self.scale < 0:
            raise ValueError("scale must be >= 0")
        if self.significand == 0 and self.scale != 0:
            object.__setattr__(self, "scale", 0)

    # Equality and ordering compare real values, not representations.
    def _aligned(self, other: "BigFixed") -> tuple[int, int]:
        if self.scale == other.scale:
            return self.significand, other.significand
        if self.scale < other.scale:
            return self.significand * 10 ** (other.scale - self.scale), other.significand
        return self.significand, other.significand * 10 ** (self.scale - other.scale)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BigFixed):
            return NotImplemented
        a, b = self._aligned(other)
        return a == b

    def __lt__(self, other: "BigFixed") -> bool:
        a, b = self._aligned(other)
        return a < b

    def __le__(self, other: "BigFixed") -> bool:
        a, b = self._aligned(other)
        return a <= b

    def __gt__(self, other: "BigFixed") -> bool:
        return other < self

    def __ge__(self, other: "BigFixed") -> bool:
        return other <= self

    def __hash__(self) -> int:
        sig, sc = self.significand, self.scale
        while sc > 0 and sig % 10 == 0:
            sig //= 10
            sc -= 1
        return hash((sig, sc))

    def __neg__(self) -> "BigFixed":
        return BigFixed(-self.significand, self.scale)

    def __abs__(self) -> "BigFixed":
        return BigFixed(abs(self.significand), self.scale)

    @property
    def sign(self) -> int:
        return (self.significand > 0) - (self.significand < 0)

    def is_zero(self) -> bool:
        return self.significand == 0

    def __repr__(self) -> str:  # debugging aid, not the wire format
        return f"BigFixed({fx_to_string(self, self.scale)})"


ZERO = BigFixed(0)
ONE = BigFixed(1)


def _rescale(x: BigFixed, scale: int) -> BigFixed:
    if scale == x.scale:
        return x
    if scale > x.scale:
        return BigFixed(x.significand * 10 ** (scale - x.scale), scale)
    return BigFixed(_div_half_even(x.significand, 10 ** (x.scale - scale)), scale)


def fx_from_int(i: int) -> BigFixed:
    return BigFixed(i, 0)


def fx_from_ratio(p: int, q: int, ctx: PrecisionCtx) -> BigFixed:
    """p/q rounded half-even to the context scale."""
    if q == 0:
        raise ZeroDivisionError("ratio denominator is zero")
    if q < 0:
        p, q = -p, -q
    return BigFixed(_div_half_even(p * 10 ** ctx.scale, q), ctx.scale)


def fx_add(a: BigFixed, b: BigFixed, ctx: PrecisionCtx) -> BigFixed:
    s = max(a.scale, b.scale)
    raw = a.significand * 10 ** (s - a.scale) + b.significand * 10 ** (s - b.scale)
    return _rescale(BigFixed(raw, s), ctx.scale)


def fx_sub(a: BigFixed, b: BigFixed, ctx: PrecisionCtx) -> BigFixed:
    return fx_add(a, -b, ctx)


def fx_mul(a: BigFixed, b: BigFixed, ctx: PrecisionCtx) -> BigFixed:
    return _rescale(BigFixed(a.significand * b.significand, a.scale + b.scale), ctx.scale)


def fx_div(a: BigFixed, b: BigFixed, ctx: PrecisionCtx) -> BigFixed:
    if b.significand == 0:
        raise ZeroDivisionError("division by zero")
    num = a.significand
    den = b.significand
    e = ctx.scale + b.scale - a.scale
    if e >= 0:
        num *= 10 ** e
    else:
        den *= 10 ** -e
    if den < 0:
        num, den = -num, -den
    return BigFixed(_div_half_even(num, den), ctx.scale)


def fx_sqrt(x: BigFixed, ctx: PrecisionCtx) -> BigFixed:
    """sqrt(x) at the context scale, within 1 ulp (floored two digits
    below the target scale, then rounded half-even)."""
    if x.significand < 0:
        raise ValueError("square root of a negative value")
    s = ctx.scale + 2
    e = 2 * s - x.scale
    if e >= 0:
        n = x.significand * 10 ** e
    else:
        n = _div_half_even(x.significand, 10 ** -e)
    return _rescale(BigFixed(_isqrt(n), s), ctx.scale)


def fx_nth_root(x: BigFixed, r: int, ctx: PrecisionCtx) -> BigFixed:
    """Floor of x**(1/r) at the context scale."""
    if r < 1:
        raise ValueError("root order must be a positive integer")
    if x.significand < 0:
        if r % 2 == 0:
            raise ValueError("even root of a negative value")
        return -fx_nth_root(abs(x), r, ctx)
    if r == 1:
        return _rescale(x, ctx.scale)
    s = ctx.scale + 2
    e = r * s - x.scale
    if e >= 0:
        n = x.significand * 10 ** e
    else:
        n = _div_half_even(x.significand, 10 ** -e)
    return _rescale(BigFixed(_iroot(n, r), s), ctx.scale)


def fx_pow_int(x: BigFixed, k: int, ctx: PrecisionCtx) -> BigFixed:
    """x**k for k >= 0, exact integer power rounded once."""
    if k < 0:
        raise ValueError("negative exponents are not supported")
    return _rescale(BigFixed(x.significand ** k, x.scale * k), ctx.scale)


def fx_cmp(a: BigFixed, b: BigFixed) -> int:
    """-1, 0 or +1 ordering consistent with the real values."""
    if a < b:
        return -1
    if b < a:
        return 1
    return 0


def fx_round(x: BigFixed, dp: int) -> BigFixed:
    if dp < 0:
        raise ValueError("dp must be >= 0")
    return _rescale(x, dp)


def fx_to_string(x: BigFixed, dp: int) -> str:
    """Plain decimal string with exactly dp fractional digits."""
    r = fx_round(x, dp)
    sig = r.significand
    neg = sig < 0
    i, f = divmod(abs(sig), 10 ** dp) if dp else (abs(sig), 0)
    body = f"{i}.{f:0{dp}d}" if dp else str(i)
    return "-" + body if neg else body


def fx_truncate_string(x: BigFixed, dp: int) -> str:
    """Like fx_to_string but truncates toward zero instead of rounding."""
    if dp < 0:
        raise ValueError("dp must be >= 0")
    sig = abs(x.significand)
    if dp >= x.scale:
        sig *= 10 ** (dp - x.scale)
    else:
        sig //= 10 ** (x.scale - dp)
    i, f = divmod(sig, 10 ** dp) if dp else (sig, 0)
    body = f"{i}.{f:0{dp}d}" if dp else str(i)
    return "-" + body if x.significand < 0 else body


def fx_parse(s: str) -> BigFixed:
    """Parse a plain decimal string; scale is the fractional digit count."""
    m = _DECIMAL_RE.match(s.strip())
    if not m:
        raise ValueError(f"not a plain decimal literal: {s!r}")
    frac = m.group(1) or ""
    return BigFixed(int(s.replace(".", "")), len(frac))


def fx_ulp(ctx: PrecisionCtx) -> BigFixed:
    """One unit in the last place at the context scale."""
    return BigFixed(1, ctx.scale)
