"""q-integers, q-factorials, q-binomial and q-multinomial coefficients.

The q-binomial is built from the Pascal-type recurrence

    qbinom(n, e) = qbinom(n-1, e-1) + x^e * qbinom(n-1, e)

so every intermediate value has nonnegative integer coefficients and no
polynomial division is ever needed; the explicit factorial quotient is kept
around only as a cross-check (see the test suite).  Partition counting and
bounded-multiset enumeration provide independent oracles for the same
coefficients.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import DEFAULT_CAP, ValidationError, check_cap
from .polycore import IntPoly


@dataclass(frozen=True, init=False)
class FlagShape:
    """A dimension vector: n together with a strictly increasing cut sequence d.

    The cuts split [n] into r+1 consecutive blocks of sizes e_1, ..., e_{r+1};
    d may be empty (one block).  The top inversion number nu counts pairs of
    positions in distinct blocks, eta counts pairs inside a block.
    """

    n: int
    d: tuple[int, ...]

    def __init__(self, n: int, d: tuple[int, ...] | list[int] = ()):
        if n < 1:
            raise ValidationError(f"n must be a positive integer, got {n}")
        cuts = tuple(int(x) for x in d)
        prev = 0
        for x in cuts:
            if x <= prev:
                raise ValidationError(f"cut sequence must be strictly increasing, got {cuts}")
            prev = x
        if cuts and cuts[-1] >= n:
            raise ValidationError(
                f"cuts must stay below n={n}; drop a final cut equal to n instead"
            )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", cuts)

    @classmethod
    def full(cls, n: int) -> FlagShape:
        """The complete cut sequence 1 < 2 < ... < n-1 (all blocks singletons)."""
        return cls(n, tuple(range(1, n)))

    @property
    def r(self) -> int:
        return len(self.d)

    @property
    def cuts(self) -> tuple[int, ...]:
        """The padded sequence 0 = d_0 < d_1 < ... < d_r < d_{r+1} = n."""
        return (0,) + self.d + (self.n,)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        c = self.cuts
        return tuple(c[i + 1] - c[i] for i in range(len(c) - 1))

    @property
    def nu(self) -> int:
        """Number of cross-block position pairs; the top inversion count."""
        e = self.block_sizes
        return sum(e[i] * e[j] for i in range(len(e)) for j in range(i + 1, len(e)))

    @property
    def eta(self) -> int:
        """Number of within-block position pairs."""
        return sum(x * (x - 1) // 2 for x in self.block_sizes)

    def multinomial(self) -> int:
        """n! / prod(e_i!), the number of words of this block content."""
        total = math.factorial(self.n)
        for e in self.block_sizes:
            total //= math.factorial(e)
        return total

    def block_of_position(self, j: int) -> int:
        """1-based block index of position j in [n]."""
        if not 1 <= j <= self.n:
            raise ValidationError(f"position {j} outside [1, {self.n}]")
        c = self.cuts
        for m in range(len(c) - 1):
            if c[m] < j <= c[m + 1]:
                return m + 1
        raise AssertionError("unreachable")


def all_shapes(n: int) -> Iterator[FlagShape]:
    """Every FlagShape on n, cut sequences in size-then-lex order."""
    for r in range(n):
        for d in itertools.combinations(range(1, n), r):
            yield FlagShape(n, d)


def q_int(n: int) -> IntPoly:
    """1 + x + ... + x^{n-1}; the zero polynomial for n = 0."""
    if n < 0:
        raise ValidationError("q_int requires a nonnegative integer")
    return IntPoly((1,) * n)


def q_factorial(n: int) -> IntPoly:
    """Product of q_int(1) ... q_int(n); the constant 1 for n = 0."""
    if n < 0:
        raise ValidationError("q_factorial requires a nonnegative integer")
    result = IntPoly.one()
    for m in range(1, n + 1):
        result = result * q_int(m)
    return result


@lru_cache(maxsize=None)
def _q_binomial(n: int, e: int) -> IntPoly:
    if e == 0 or e == n:
        return IntPoly.one()
    return _q_binomial(n - 1, e - 1) + IntPoly.monomial(1, e) * _q_binomial(n - 1, e)


def q_binomial(n: int, e: int) -> IntPoly:
    """Gaussian binomial coefficient, degree e(n-e), positive coefficients."""
    if n < 0 or e < 0:
        raise ValidationError("q_binomial requires nonnegative arguments")
    if e > n:
        raise ValidationError(f"q_binomial needs e <= n, got e={e}, n={n}")
    return _q_binomial(n, e)


def q_multinomial(shape: FlagShape) -> IntPoly:
    """Product of Gaussian binomials over the blocks of `shape`; degree nu."""
    result = IntPoly.one()
    c = shape.cuts
    e = shape.block_sizes
    for i in range(shape.r):
        result = result * q_binomial(shape.n - c[i], e[i])
    return result


@lru_cache(maxsize=None)
def partition_count(e: int, s: int, m: int) -> int:
    """Partitions of m into at most s parts, each part at most e."""
    if e < 0 or s < 0:
        raise ValidationError("partition bounds must be nonnegative")
    if m < 0:
        return 0
    if m == 0:
        return 1
    if e == 0 or s == 0:
        return 0
    # split on whether a part of size exactly e occurs
    return partition_count(e - 1, s, m) + partition_count(e, s - 1, m - e)


def multiset_sum_poly(e: int, s: int, cap: int = DEFAULT_CAP) -> IntPoly:
    """Sum of x^{sum(M)} over multisets M of at most s integers from [1, e].

    Enumerates all binom(e+s, e) such multisets, so the count is capped.
    """
    if e < 0 or s < 0:
        raise ValidationError("multiset bounds must be nonnegative")
    check_cap(math.comb(e + s, e), cap, "bounded-multiset enumeration")
    hist = [0] * (e * s + 1)
    for size in range(s + 1):
        for combo in itertools.combinations_with_replacement(range(1, e + 1), size):
            hist[sum(combo)] += 1
    return IntPoly(hist)
