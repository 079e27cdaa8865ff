"""Sylvester denumerants and the signed coefficients of prod (1 - t^i).

D_w(m) counts representations of m as a nonnegative integer combination of
the weights w.  The signed coefficients psi_n(r) of
f_n(t) = (1-t)(1-t^2)...(1-t^n) tie denumerants to inversion counting: the
inversion distribution of words with block content e is the convolution of
psi_n with the denumerant of the per-block weight vector.

psi_n(r) is computable four ways (signed subset sums, direct expansion of
f_n, Euler's pentagonal shortcut for r <= n, and exponentiating the
logarithmic series built from restricted divisor sums); all four are exposed
and cross-validated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DEFAULT_CAP, ValidationError, check_cap
from .polycore import IntPoly, TruncatedSeries, series_reciprocal_product
from .qanalogue import FlagShape

PSI_METHODS = ("subset-oracle", "fn-coefficients", "pentagonal", "exp-log")


@dataclass(frozen=True, init=False)
class WeightVector:
    """A tuple of positive integer weights."""

    weights: tuple[int, ...]

    def __init__(self, weights: Sequence[int]):
        data = tuple(int(w) for w in weights)
        if not data:
            raise ValidationError("weight vector must be nonempty")
        for w in data:
            if w < 1:
                raise ValidationError(f"weights must be positive integers, got {w}")
        object.__setattr__(self, "weights", data)

    @classmethod
    def ones(cls, n: int) -> WeightVector:
        return cls((1,) * n)

    @classmethod
    def one_through(cls, n: int) -> WeightVector:
        return cls(tuple(range(1, n + 1)))

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True, init=False)
class PsiTable:
    """All coefficients of f_n(t) = (1-t)(1-t^2)...(1-t^n), indices 0..n(n+1)/2."""

    n: int
    values: tuple[int, ...]

    def __init__(self, n: int, values: tuple[int, ...]):
        if n < 1:
            raise ValidationError("PsiTable requires n >= 1")
        if len(values) != n * (n + 1) // 2 + 1:
            raise ValidationError("PsiTable has the wrong length for its n")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", tuple(values))

    @classmethod
    @lru_cache(maxsize=None)
    def for_n(cls, n: int) -> PsiTable:
        poly = IntPoly.one()
        for i in range(1, n + 1):
            poly = poly * (IntPoly.one() - IntPoly.monomial(1, i))
        return cls(n, poly.coeffs)

    def value(self, r: int) -> int:
        if 0 <= r < len(self.values):
            return self.values[r]
        return 0


def denumerant(w: WeightVector, m: int) -> int:
    """Number of ways to write m as a nonnegative combination of the weights; 0 for m < 0."""
    if m < 0:
        return 0
    return series_reciprocal_product(w.weights, m).coefficient(m)


def epsilon_weights(shape: FlagShape) -> WeightVector:
    """Per-block ramp weights: block of size e contributes 1, 2, ..., e."""
    weights: list[int] = []
    for e in shape.block_sizes:
        weights.extend(range(1, e + 1))
    return WeightVector(weights)


def restricted_divisor_sum(n: int, k: int) -> int:
    """Sum of the divisors of k that are at most n.

    Evaluated both from the divisor definition and from the equivalent
    floor expression sum_{d<=min(n,k)} floor(1 + floor(k/d) - k/d) * d;
    a disagreement would be an arithmetic bug and is reported loudly.
    """
    if n < 1:
        raise ValidationError("divisor bound must be a positive integer")
    if k < 1:
        raise ValidationError("restricted divisor sum requires k >= 1")
    by_divisors = sum(d for d in range(1, min(n, k) + 1) if k % d == 0)
    by_floors = sum(
        math.floor(1 + (k // d) - Fraction(k, d)) * d for d in range(1, min(n, k) + 1)
    )
    if by_divisors != by_floors:
        raise RuntimeError(
            f"restricted divisor sum mismatch for n={n}, k={k}: "
            f"{by_divisors} (divisors) vs {by_floors} (floor form)"
        )
    return by_divisors


def alpha(n: int, k: int) -> Fraction:
    """The logarithmic-series coefficient: restricted_divisor_sum(n, k) / k."""
    return Fraction(restricted_divisor_sum(n, k), k)


@lru_cache(maxsize=None)
def _subset_signed_histogram(n: int) -> tuple[int, ...]:
    # hist[r] = sum over subsets T of [n] with element sum r of (-1)^|T|
    hist = [0] * (n * (n + 1) // 2 + 1)
    for mask in range(1 << n):
        total = 0
        bits = 0
        m = mask
        i = 1
        while m:
            if m & 1:
                total += i
                bits += 1
            m >>= 1
            i += 1
        hist[total] += -1 if bits & 1 else 1
    return tuple(hist)


@lru_cache(maxsize=None)
def _exp_log_coefficients(n: int, top: int) -> tuple[Fraction, ...]:
    # exp of L(t) = -sum_k alpha(n, k) t^k, via m*e_m = sum_j (j * l_j) e_{m-j}
    sigma = [0] + [restricted_divisor_sum(n, k) for k in range(1, top + 1)]
    coeffs: list[Fraction] = [Fraction(1)]
    for m in range(1, top + 1):
        acc = Fraction(0)
        for j in range(1, m + 1):
            acc -= sigma[j] * coeffs[m - j]
        coeffs.append(acc / m)
    return tuple(coeffs)


def psi(n: int, r: int, method: str = "fn-coefficients", cap: int = DEFAULT_CAP) -> int:
    """Coefficient of t^r in (1-t)(1-t^2)...(1-t^n), by the chosen route.

    The pentagonal route is only valid for 1 <= r <= n; the subset oracle
    enumerates 2^n signed subsets and is capped; the exp-log route works in
    exact rationals and insists the answer come out integral.
    """
    if n < 1:
        raise ValidationError("psi requires n >= 1")
    if method not in PSI_METHODS:
        raise ValidationError(f"unknown psi method {method!r}; choose from {PSI_METHODS}")
    top = n * (n + 1) // 2
    if method == "pentagonal":
        if not 1 <= r <= n:
            raise ValidationError("the pentagonal shortcut is only valid for 1 <= r <= n")
        s = 1
        while s * (3 * s - 1) <= 2 * r:
            if 2 * r in (s * (3 * s - 1), s * (3 * s + 1)):
                return -1 if s & 1 else 1
            s += 1
        return 0
    if r < 0 or r > top:
        return 0
    if method == "fn-coefficients":
        return PsiTable.for_n(n).value(r)
    if method == "subset-oracle":
        check_cap(1 << n, cap, "signed subset enumeration")
        return _subset_signed_histogram(n)[r]
    value = _exp_log_coefficients(n, r)[r]
    if value.denominator != 1:
        raise RuntimeError(f"exp-log series produced a non-integer psi_{n}({r}) = {value}")
    return int(value)


def generalized_binomial(a: int, b: int) -> int:
    """Binomial coefficient extended by zero whenever min(a, b) < 0 or a < b."""
    if min(a, b) < 0 or a < b:
        return 0
    return math.comb(a, b)


def _subset_sums_signed(r: int) -> list[tuple[int, int]]:
    # (element sum, sign) for every subset of [r]
    out = [(0, 1)]
    for i in range(1, r + 1):
        out += [(total + i, -sign) for total, sign in out]
    return out


def signed_subset_identity_check(r: int, w: WeightVector, order: int) -> bool:
    """Check that multiplying the weight-reciprocal series by (1-t)...(1-t^r)
    matches the signed subset-shift sum of denumerants, through t^order."""
    if r < 0:
        raise ValidationError("r must be nonnegative")
    if order < 0:
        raise ValidationError("truncation order must be nonnegative")
    series = series_reciprocal_product(w.weights, order)
    numerator = IntPoly.one()
    for i in range(1, r + 1):
        numerator = numerator * (IntPoly.one() - IntPoly.monomial(1, i))
    lhs = series.mul_poly(numerator)

    def d(m: int) -> int:
        return series.coefficient(m) if m >= 0 else 0

    shifts = _subset_sums_signed(r)
    return all(
        lhs.coefficient(m) == sum(sign * d(m - total) for total, sign in shifts)
        for m in range(order + 1)
    )


def mahonian_via_denumerant(shape: FlagShape, k: int, cap: int = DEFAULT_CAP) -> int:
    """Count words of the given block content with exactly k inversions,
    via the convolution of psi with the per-block ramp denumerant.

    Both printed forms (the signed sum over subsets of [n] and the psi
    convolution) are evaluated and must agree.
    """
    if k < 0:
        raise ValidationError("inversion count must be nonnegative")
    n = shape.n
    series = series_reciprocal_product(epsilon_weights(shape).weights, k)

    def d(m: int) -> int:
        return series.coefficient(m) if m >= 0 else 0

    table = PsiTable.for_n(n)
    by_convolution = sum(table.value(i) * d(k - i) for i in range(0, min(k, len(table.values) - 1) + 1))
    check_cap(1 << n, cap, "signed subset enumeration")
    by_subsets = sum(sign * d(k - total) for total, sign in _subset_sums_signed(n))
    if by_convolution != by_subsets:
        raise RuntimeError(
            f"signed-subset and psi-convolution forms disagree for {shape}, k={k}"
        )
    return by_convolution


def full_mahonian_via_binomials(n: int, k: int) -> int:
    """Permutations of [n] with exactly k inversions, as a psi-weighted
    sum of generalized binomials."""
    if n < 1:
        raise ValidationError("n must be a positive integer")
    if k < 0:
        raise ValidationError("inversion count must be nonnegative")
    table = PsiTable.for_n(n)
    return sum(
        table.value(i) * generalized_binomial(n - 1 + k - i, n - 1)
        for i in range(0, min(k, len(table.values) - 1) + 1)
    )


def quasipolynomial_check(w: WeightVector, m0: int, samples: int) -> bool:
    """True iff the n-th finite difference of m -> D_w(m), with step lcm(w),
    vanishes at each of `samples` consecutive start points from m0 on."""
    if samples < 1:
        raise ValidationError("need at least one sample point")
    if m0 < 0:
        raise ValidationError("start point must be nonnegative")
    n = len(w)
    lam = math.lcm(*w.weights)
    top = m0 + samples - 1 + n * lam
    series = series_reciprocal_product(w.weights, top)
    signs = [(-1) ** (n - j) * math.comb(n, j) for j in range(n + 1)]
    return all(
        sum(signs[j] * series.coefficient(start + j * lam) for j in range(n + 1)) == 0
        for start in range(m0, m0 + samples)
    )


def denumerant_bounds(shape: FlagShape, m: int) -> tuple[Fraction, Fraction]:
    """Exact rational bounds sandwiching the ramp-weight denumerant:

        binom(n-1+m, n-1)/prod(e_i!) <= D(m) <= binom(n-1+eta+m, n-1)/prod(e_i!)
    """
    if m < 0:
        raise ValidationError("m must be nonnegative")
    n = shape.n
    divisor = math.prod(math.factorial(e) for e in shape.block_sizes)
    lower = Fraction(math.comb(n - 1 + m, n - 1), divisor)
    upper = Fraction(math.comb(n - 1 + shape.eta + m, n - 1), divisor)
    return lower, upper
