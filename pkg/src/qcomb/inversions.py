"""Multiset permutations, inversion counting, and inversion distributions.

The central object is the table I(shape; k): how many words with block
content e_1, ..., e_{r+1} have exactly k inversions.  It is read off the
q-multinomial coefficient; a brute-force enumeration oracle, a refinement
convolution recurrence, and rational upper/lower bounds are provided
alongside for cross-validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .denumerant import PsiTable, generalized_binomial
from .errors import DEFAULT_CAP, ValidationError, check_cap
from .polycore import IntPoly
from .qanalogue import FlagShape, q_int, q_multinomial


@lru_cache(maxsize=None)
def _sorted_letters(shape: FlagShape) -> tuple[int, ...]:
    out: list[int] = []
    for letter, e in enumerate(shape.block_sizes, start=1):
        out.extend([letter] * e)
    return tuple(out)


@dataclass(frozen=True, init=False)
class MultisetWord:
    """A word in which letter i occurs exactly e_i times."""

    letters: tuple[int, ...]
    shape: FlagShape

    def __init__(self, letters: Sequence[int], shape: FlagShape):
        data = tuple(letters)
        if tuple(sorted(data)) != _sorted_letters(shape):
            raise ValidationError(f"letters {data} do not have block content {shape.block_sizes}")
        object.__setattr__(self, "letters", data)
        object.__setattr__(self, "shape", shape)


@dataclass(frozen=True, init=False)
class MahonianTable:
    """Inversion counts by value: counts[k] words have exactly k inversions.

    Always a full row 0..nu, symmetric, everywhere positive, summing to the
    multinomial coefficient; construction enforces all of that.
    """

    shape: FlagShape
    counts: tuple[int, ...]

    def __init__(self, shape: FlagShape, counts: Sequence[int]):
        data = tuple(int(c) for c in counts)
        nu = shape.nu
        if len(data) != nu + 1:
            raise ValidationError(f"table must cover 0..{nu}, got {len(data)} entries")
        if any(c < 1 for c in data):
            raise ValidationError("inversion counts must be positive across 0..nu")
        if data != data[::-1]:
            raise ValidationError("inversion table must be symmetric")
        if sum(data) != shape.multinomial():
            raise ValidationError("inversion table must sum to the multinomial coefficient")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "counts", data)

    def value(self, k: int) -> int:
        if 0 <= k < len(self.counts):
            return self.counts[k]
        return 0


def _iter_letter_tuples(remaining: list[int], prefix: list[int], n: int) -> Iterator[tuple[int, ...]]:
    if len(prefix) == n:
        yield tuple(prefix)
        return
    for letter in range(1, len(remaining) + 1):
        if remaining[letter - 1]:
            remaining[letter - 1] -= 1
            prefix.append(letter)
            yield from _iter_letter_tuples(remaining, prefix, n)
            prefix.pop()
            remaining[letter - 1] += 1


def enumerate_words(shape: FlagShape, cap: int = DEFAULT_CAP) -> Iterator[MultisetWord]:
    """Every word of the given block content, exactly once, in lexicographic order."""
    check_cap(shape.multinomial(), cap, "multiset word enumeration")
    for letters in _iter_letter_tuples(list(shape.block_sizes), [], shape.n):
        yield MultisetWord(letters, shape)


def inversion_count(word: MultisetWord | Sequence[int]) -> int:
    """Number of position pairs i < j whose letters satisfy w[i] > w[j].

    Counted by a mergesort-style divide and conquer; the quadratic counter
    below is the oracle it is checked against.
    """
    letters = word.letters if isinstance(word, MultisetWord) else tuple(word)
    total, _ = _merge_count(list(letters))
    return total


def _merge_count(seq: list[int]) -> tuple[int, list[int]]:
    if len(seq) <= 1:
        return 0, seq
    mid = len(seq) // 2
    left_count, left = _merge_count(seq[:mid])
    right_count, right = _merge_count(seq[mid:])
    merged: list[int] = []
    count = left_count + right_count
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            count += len(left) - i
            merged.append(right[j])
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return count, merged


def inversion_count_quadratic(word: MultisetWord | Sequence[int]) -> int:
    """Direct O(n^2) pair scan."""
    letters = word.letters if isinstance(word, MultisetWord) else tuple(word)
    n = len(letters)
    return sum(
        1 for i in range(n) for j in range(i + 1, n) if letters[i] > letters[j]
    )


def inversion_distribution_oracle(shape: FlagShape, cap: int = DEFAULT_CAP) -> IntPoly:
    """Brute-force inversion histogram over every word, packed as a polynomial."""
    hist = [0] * (shape.nu + 1)
    for word in enumerate_words(shape, cap=cap):
        hist[inversion_count(word)] += 1
    return IntPoly(hist)


def mahonian_table(shape: FlagShape) -> MahonianTable:
    """Inversion counts read off the q-multinomial coefficient; no enumeration."""
    return MahonianTable(shape, q_multinomial(shape).coeffs)


def full_mahonian(n: int) -> MahonianTable:
    """Inversion counts of plain permutations of [n], via (1)(1+t)...(1+...+t^{n-1})."""
    if n < 1:
        raise ValidationError("n must be a positive integer")
    poly = IntPoly.one()
    for m in range(1, n + 1):
        poly = poly * q_int(m)
    return MahonianTable(FlagShape.full(n), poly.coeffs)


def is_refinement(shape: FlagShape, refined: FlagShape) -> bool:
    """True iff the refined cut sequence contains every cut of `shape`."""
    return shape.n == refined.n and set(shape.d) <= set(refined.d)


def refinement_recurrence(shape: FlagShape, refined: FlagShape) -> MahonianTable:
    """Recover the inversion table of `shape` from that of a refinement.

    Splitting each block of `shape` along the refined cuts factorizes the
    refined distribution as (distribution of shape) * (product of the
    within-block distributions).  Deconvolving by that product, whose
    constant term is 1, recovers the coarse table:

        I(shape; k) = I(refined; k) - sum_{m>=1} c_m * I(shape; k - m)
    """
    if not is_refinement(shape, refined):
        raise ValidationError("second shape does not refine the first")
    base = mahonian_table(refined)
    convolver = IntPoly.one()
    cuts = shape.cuts
    for i in range(shape.r + 1):
        lo, hi = cuts[i], cuts[i + 1]
        inner = tuple(x - lo for x in refined.d if lo < x < hi)
        convolver = convolver * q_multinomial(FlagShape(hi - lo, inner))
    recovered: list[int] = []
    for k in range(shape.nu + 1):
        value = base.value(k)
        for m in range(1, k + 1):
            value -= convolver.coefficient(m) * recovered[k - m]
        recovered.append(value)
    return MahonianTable(shape, recovered)


def inv_bounds(shape: FlagShape, k: int) -> tuple[Fraction, Fraction]:
    """Exact rational lower/upper estimates for the inversion count I(shape; k).

    Splitting the psi coefficients by sign and stretching one side's
    binomials by eta gives a lower estimate; exchanging the two index sets
    gives the upper one.  With all blocks singletons (eta = 0) the two
    coincide with the exact count.
    """
    if k < 0:
        raise ValidationError("inversion count must be nonnegative")
    n = shape.n
    table = PsiTable.for_n(n)
    eta = shape.eta
    divisor = math.prod(math.factorial(e) for e in shape.block_sizes)
    plain = [generalized_binomial(n - 1 + k - i, n - 1) for i in range(k + 1)]
    shifted = [generalized_binomial(n - 1 + eta + k - i, n - 1) for i in range(k + 1)]
    positive = [i for i in range(k + 1) if table.value(i) > 0]
    negative = [i for i in range(1, k + 1) if table.value(i) < 0]
    lower = sum(table.value(i) * plain[i] for i in positive) + sum(
        table.value(i) * shifted[i] for i in negative
    )
    upper = sum(table.value(i) * plain[i] for i in negative) + sum(
        table.value(i) * shifted[i] for i in positive
    )
    return Fraction(lower, divisor), Fraction(upper, divisor)


def log_concavity_scan(seq: Sequence[int]) -> list[int]:
    """Indices k with seq[k]^2 < seq[k-1] * seq[k+1]; empty means log-concave."""
    return [
        k for k in range(1, len(seq) - 1) if seq[k] * seq[k] < seq[k - 1] * seq[k + 1]
    ]
