"""Radix-10 arbitrary-precision reals.

Values are plain :class:`decimal.Decimal` instances.  A :class:`PrecisionContext`
fixes the number of significant decimal digits and is passed explicitly to
every function that rounds.  Basic arithmetic and ``sqrt`` are correctly
rounded (libmpdec, round-half-even).  The transcendental functions are
evaluated with ``GUARD_DIGITS`` extra digits and then rounded once, so they are
faithfully rounded: the error is below one unit in the last carried digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import (
    ROUND_HALF_EVEN,
    Context,
    Decimal,
    DivisionByZero,
    InvalidOperation,
    Overflow,
    localcontext,
)
from functools import lru_cache
from typing import Union

Scalar = Decimal
Number = Union[Decimal, int, str]

MIN_DIGITS = 30
DEFAULT_DIGITS = 50
GUARD_DIGITS = 12

__all__ = [
    "DEFAULT_DIGITS",
    "DomainError",
    "GUARD_DIGITS",
    "MIN_DIGITS",
    "PrecisionContext",
    "Scalar",
    "const_pi",
    "degrees",
    "eval_acos",
    "eval_asin",
    "eval_atan",
    "eval_atan2",
    "eval_cos",
    "eval_sin",
    "eval_sqrt",
    "fmt",
    "parse",
    "radians",
    "to_scalar",
]


class DomainError(ValueError):
    """Argument outside the domain of an elementary function."""

    def __init__(self, function: str, value):
        super().__init__(f"{function}: argument {value} outside domain")
        self.function = function
        self.value = value


def _make_context(prec: int) -> Context:
    return Context(
        prec=prec,
        rounding=ROUND_HALF_EVEN,
        Emin=-999_999_999,
        Emax=999_999_999,
        traps=[InvalidOperation, DivisionByZero, Overflow],
    )


@dataclass(frozen=True)
class PrecisionContext:
    """Digit budget for every computation in the library."""

    digits: int = DEFAULT_DIGITS

    def __post_init__(self):
        if isinstance(self.digits, bool) or not isinstance(self.digits, int):
            raise TypeError("digits must be an int")
        if self.digits < MIN_DIGITS:
            raise ValueError(f"digits must be >= {MIN_DIGITS}, got {self.digits}")

    @property
    def decimal(self) -> Context:
        return _make_context(self.digits)

    def active(self):
        """Scope the (thread-local) decimal context to this budget."""
        return localcontext(_make_context(self.digits))

    def round(self, value: Decimal) -> Decimal:
        return _make_context(self.digits).plus(value)

    def tol(self, k: int) -> Decimal:
        """``10**(k - digits)``: tolerances scale with the budget."""
        return Decimal(1).scaleb(k - self.digits)

    def widen(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.digits + extra)


def _working(ctx: PrecisionContext, extra: int = 0):
    return localcontext(_make_context(ctx.digits + GUARD_DIGITS + extra))


def to_scalar(value: Number, ctx: PrecisionContext) -> Decimal:
    if isinstance(value, float):
        raise TypeError("binary floats are not accepted; pass a decimal string")
    if isinstance(value, str):
        return parse(value, ctx)
    return ctx.round(Decimal(value))


def parse(text: str, ctx: PrecisionContext) -> Decimal:
    """Parse a decimal string (scientific notation allowed), rounded to ``ctx``."""
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise ValueError(f"not a decimal number: {text!r}") from None
    if not value.is_finite():
        raise ValueError(f"not a finite number: {text!r}")
    return ctx.round(value)


def fmt(value: Decimal, sig: int | None = None) -> str:
    """Decimal string of ``value``; optionally rounded to ``sig`` significant digits."""
    if sig is not None and value != 0:
        exp = value.adjusted() - sig + 1
        value = value.quantize(Decimal(1).scaleb(exp), rounding=ROUND_HALF_EVEN,
                               context=_make_context(sig + 5))
    return str(value)


# -- constants ---------------------------------------------------------------

def _arctan_inv_scaled(n: int, scale: int) -> int:
    # arctan(1/n) * scale with integer arithmetic
    term = scale // n
    total = term
    n2 = n * n
    k = 1
    sign = -1
    while term:
        term //= n2
        k += 2
        total += sign * (term // k)
        sign = -sign
    return total


@lru_cache(maxsize=64)
def _pi(prec: int) -> Decimal:
    extra = 10
    scale = 10 ** (prec + extra)
    p = 4 * (4 * _arctan_inv_scaled(5, scale) - _arctan_inv_scaled(239, scale))
    wide = _make_context(prec + extra)
    return _make_context(prec).plus(Decimal(p).scaleb(-(prec + extra), context=wide))


def const_pi(ctx: PrecisionContext) -> Decimal:
    return ctx.round(_pi(ctx.digits + GUARD_DIGITS))


# -- elementary functions ----------------------------------------------------

def eval_sqrt(x: Decimal, ctx: PrecisionContext) -> Decimal:
    if x < 0:
        raise DomainError("sqrt", x)
    return ctx.decimal.sqrt(x)


def _sin_cos_reduced(r: Decimal, eps: Decimal) -> tuple[Decimal, Decimal]:
    # Taylor series, |r| <= pi/4, inside the caller's working context
    r2 = r * r
    s = term = r
    n = 1
    while abs(term) > eps:
        term = -term * r2 / ((n + 1) * (n + 2))
        s += term
        n += 2
    c = term = Decimal(1)
    n = 0
    while abs(term) > eps:
        term = -term * r2 / ((n + 1) * (n + 2))
        c += term
        n += 2
    return s, c


def _sin_cos(x: Decimal, ctx: PrecisionContext) -> tuple[Decimal, Decimal]:
    extra = max(0, x.adjusted() + 1)
    with _working(ctx, extra) as wc:
        half_pi = _pi(wc.prec) / 2
        k = (x / half_pi).to_integral_value(rounding=ROUND_HALF_EVEN)
        r = x - k * half_pi
        eps = Decimal(1).scaleb(-wc.prec - 2)
        s, c = _sin_cos_reduced(r, eps)
        q = int(k) % 4
        if q == 1:
            s, c = c, -s
        elif q == 2:
            s, c = -s, -c
        elif q == 3:
            s, c = -c, s
    return ctx.round(s), ctx.round(c)


def eval_sin(x: Decimal, ctx: PrecisionContext) -> Decimal:
    if x == 0:
        return Decimal(0)
    return _sin_cos(x, ctx)[0]


def eval_cos(x: Decimal, ctx: PrecisionContext) -> Decimal:
    return _sin_cos(x, ctx)[1]


def eval_sin_cos(x: Decimal, ctx: PrecisionContext) -> tuple[Decimal, Decimal]:
    """Both at once; the reduction is shared."""
    return _sin_cos(x, ctx)


def _atan_working(x: Decimal, prec: int) -> Decimal:
    """arctan inside a working context of ``prec`` digits."""
    if x == 0:
        return Decimal(0)
    neg = x < 0
    x = abs(x)
    invert = x > 1
    if invert:
        x = 1 / x
    halvings = 0
    limit = Decimal("0.01")
    while x > limit:
        x = x / (1 + (1 + x * x).sqrt())
        halvings += 1
    eps = Decimal(1).scaleb(-prec - 2)
    x2 = x * x
    total = power = x
    n = 1
    while True:
        power = -power * x2
        n += 2
        t = power / n
        if abs(t) < eps * abs(total):
            break
        total += t
    res = total * (1 << halvings)
    if invert:
        res = _pi(prec) / 2 - res
    return -res if neg else res


def eval_atan(x: Decimal, ctx: PrecisionContext) -> Decimal:
    with _working(ctx) as wc:
        res = _atan_working(+x, wc.prec)
    return ctx.round(res)


def eval_atan2(y: Decimal, x: Decimal, ctx: PrecisionContext) -> Decimal:
    """Angle of the vector ``(x, y)`` in ``(-pi, pi]``."""
    if x == 0 and y == 0:
        raise DomainError("atan2", (y, x))
    with _working(ctx) as wc:
        pi = _pi(wc.prec)
        if x == 0:
            res = pi / 2 if y > 0 else -pi / 2
        else:
            res = _atan_working(y / x, wc.prec)
            if x < 0:
                res = res + pi if y >= 0 else res - pi
    return ctx.round(res)


def eval_asin(x: Decimal, ctx: PrecisionContext) -> Decimal:
    if abs(x) > 1:
        raise DomainError("asin", x)
    with _working(ctx):
        c = ((1 - x) * (1 + x)).sqrt()
    return eval_atan2(x, c, ctx)


def eval_acos(x: Decimal, ctx: PrecisionContext) -> Decimal:
    if abs(x) > 1:
        raise DomainError("acos", x)
    with _working(ctx):
        s = ((1 - x) * (1 + x)).sqrt()
    return eval_atan2(s, x, ctx)


def radians(deg: Decimal, ctx: PrecisionContext) -> Decimal:
    with _working(ctx):
        res = deg * _pi(ctx.digits + GUARD_DIGITS) / 180
    return ctx.round(res)


def degrees(rad: Decimal, ctx: PrecisionContext) -> Decimal:
    with _working(ctx):
        res = rad * 180 / _pi(ctx.digits + GUARD_DIGITS)
    return ctx.round(res)
