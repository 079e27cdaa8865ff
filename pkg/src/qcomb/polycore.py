"""Exact arithmetic substrate: dense integer polynomials and truncated series.

A polynomial is a dense tuple of arbitrary-precision integer coefficients,
constant term first; ``IntPoly((1, 0, 2))`` is ``1 + 2x^2``.  A truncated
series carries exactly ``order + 1`` coefficients and its arithmetic never
consults anything beyond the truncation order.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError

# Degree reported for the zero polynomial: a sentinel strictly below every
# attainable degree, so `reverse`/`degree` comparisons never need a special case.
ZERO_DEGREE = -1


@dataclass(frozen=True, init=False)
class IntPoly:
    """Dense polynomial with integer coefficients.

    >>> IntPoly((1, 1)) * IntPoly((1, 1, 1))
    IntPoly((1, 2, 2, 1))
    >>> IntPoly((1, 1, 2, 1, 1)).eval_at(2)
    35
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        trimmed = [int(c) for c in coeffs]
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        object.__setattr__(self, "coeffs", tuple(trimmed))

    @classmethod
    def zero(cls) -> IntPoly:
        return cls(())

    @classmethod
    def one(cls) -> IntPoly:
        return cls((1,))

    @classmethod
    def monomial(cls, coeff: int, power: int) -> IntPoly:
        if power < 0:
            raise ValidationError("monomial power must be nonnegative")
        return cls((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        """Index of the last stored coefficient; ZERO_DEGREE for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> int:
        """Coefficient of x^i, zero outside the stored range."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(tuple(c * other for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPoly.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, c in enumerate(self.coeffs):
            if c:
                for j, d in enumerate(other.coeffs):
                    out[i + j] += c * d
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> IntPoly:
        if exponent < 0:
            raise ValidationError("negative polynomial powers are not defined")
        result = IntPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self) -> str:
        return f"IntPoly({self.coeffs!r})"

    def eval_at(self, q: int) -> int:
        """Exact Horner evaluation at an integer point."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def reverse(self, d: int) -> IntPoly:
        """Return x^d * p(1/x); requires d at least the degree of p."""
        if d < 0:
            raise ValidationError("reversal degree must be nonnegative")
        if d < self.degree:
            raise ValidationError(
                f"cannot reverse a degree-{self.degree} polynomial within degree {d}"
            )
        out = [0] * (d + 1)
        for i, c in enumerate(self.coeffs):
            out[d - i] = c
        return IntPoly(out)

    def exact_quotient(self, divisor: IntPoly) -> IntPoly:
        """Exact polynomial division; rejects any nonzero remainder.

        >>> IntPoly((1, 2, 2, 1)).exact_quotient(IntPoly((1, 1)))
        IntPoly((1, 1, 1))
        """
        if divisor.is_zero():
            raise ValidationError("division by the zero polynomial")
        if self.is_zero():
            return IntPoly.zero()
        if self.degree < divisor.degree:
            raise ValidationError("quotient is not a polynomial: degree too small")
        rem = list(self.coeffs)
        lead = divisor.coeffs[-1]
        dd = divisor.degree
        out = [0] * (self.degree - dd + 1)
        for k in range(len(out) - 1, -1, -1):
            head = rem[k + dd]
            if head % lead != 0:
                raise ValidationError("division is not exact")
            q = head // lead
            out[k] = q
            if q:
                for j, c in enumerate(divisor.coeffs):
                    rem[k + j] -= q * c
        if any(rem):
            raise ValidationError("division is not exact")
        return IntPoly(out)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            term = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i > 0 and abs(c) != 1:
                term = f"{abs(c)}*{term}"
            elif i == 0:
                term = str(abs(c))
            parts.append(("- " if c < 0 else "+ " if parts else "") + term)
        return " ".join(parts)


@dataclass(frozen=True, init=False)
class TruncatedSeries:
    """Formal power series known exactly through t^order, nothing beyond."""

    coeffs: tuple[int, ...]
    order: int

    def __init__(self, coeffs: Iterable[int], order: int):
        data = tuple(int(c) for c in coeffs)
        if order < 0:
            raise ValidationError("truncation order must be nonnegative")
        if len(data) != order + 1:
            raise ValidationError(
                f"series of order {order} needs {order + 1} coefficients, got {len(data)}"
            )
        object.__setattr__(self, "coeffs", data)
        object.__setattr__(self, "order", order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls((1,) + (0,) * order, order)

    @classmethod
    def from_poly(cls, p: IntPoly, order: int) -> TruncatedSeries:
        return cls(tuple(p.coefficient(i) for i in range(order + 1)), order)

    def coefficient(self, m: int) -> int:
        if not 0 <= m <= self.order:
            raise ValidationError(f"coefficient index {m} outside truncation order {self.order}")
        return self.coeffs[m]

    def truncated(self, new_order: int) -> TruncatedSeries:
        if new_order > self.order:
            raise ValidationError("cannot extend a truncated series")
        return TruncatedSeries(self.coeffs[: new_order + 1], new_order)

    def mul_poly(self, p: IntPoly) -> TruncatedSeries:
        out = [0] * (self.order + 1)
        for j, d in enumerate(p.coeffs):
            if d:
                for i in range(self.order + 1 - j):
                    c = self.coeffs[i]
                    if c:
                        out[i + j] += c * d
        return TruncatedSeries(out, self.order)

    def divide_by_one_minus_power(self, w: int) -> TruncatedSeries:
        """Exact division by (1 - t^w), i.e. multiplication by 1 + t^w + t^2w + ..."""
        if w < 1:
            raise ValidationError("stride must be a positive integer")
        out = list(self.coeffs)
        for m in range(w, self.order + 1):
            out[m] += out[m - w]
        return TruncatedSeries(out, self.order)


def series_reciprocal_product(weights: Sequence[int], order: int) -> TruncatedSeries:
    """Expansion of prod_i 1/(1 - t^{w_i}) through t^order.

    The coefficient of t^m counts representations of m as a nonnegative
    integer combination of the weights.

    >>> series_reciprocal_product((1, 2), 4).coeffs
    (1, 1, 2, 2, 3)
    """
    if order < 0:
        raise ValidationError("truncation order must be nonnegative")
    for w in weights:
        if w < 1:
            raise ValidationError(f"weights must be positive integers, got {w}")
    series = TruncatedSeries.one(order)
    for w in weights:
        series = series.divide_by_one_minus_power(w)
    return series
