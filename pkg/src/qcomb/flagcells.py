"""Prime-field matrices, reduced column forms, and cell decompositions.

An invertible matrix, read in column blocks of sizes e_1, ..., e_{r+1},
determines a chain of nested subspaces (a flag).  Right-multiplying by the
block-upper-triangular subgroup fixes the flag, and each coset contains a
unique representative in a normal form indexed by an ordered set partition
of the row indices: each block's columns are in reduced column-echelon form
with pivot rows given by the block, and rows claimed by earlier blocks are
zeroed out.  The number of unconstrained entries of that normal form is the
cell dimension, and transporting the partition to a multiset word turns the
dimension into an inversion count.

Everything is exact arithmetic over F_p, p prime.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import DEFAULT_CAP, ValidationError, check_cap
from .inversions import MultisetWord
from .polycore import IntPoly
from .qanalogue import FlagShape, q_multinomial


def _require_prime(p: int) -> None:
    if p < 2 or any(p % q == 0 for q in range(2, int(math.isqrt(p)) + 1)):
        raise ValidationError(f"modulus must be prime, got {p}")


@dataclass(frozen=True, init=False)
class FpMatrix:
    """A matrix over F_p, entries stored row-major as reduced residues."""

    p: int
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, p: int, rows: Sequence[Sequence[int]]):
        _require_prime(p)
        data = tuple(tuple(int(x) % p for x in row) for row in rows)
        if data and any(len(row) != len(data[0]) for row in data):
            raise ValidationError("ragged rows in matrix")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "entries", data)

    @classmethod
    def identity(cls, p: int, n: int) -> FpMatrix:
        return cls(p, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, p: int, columns: Sequence[Sequence[int]], nrows: int) -> FpMatrix:
        return cls(p, [[col[i] for col in columns] for i in range(nrows)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def column_block(self, start: int, stop: int) -> FpMatrix:
        return FpMatrix(self.p, [row[start:stop] for row in self.entries])

    def select_rows(self, indices: Sequence[int]) -> FpMatrix:
        return FpMatrix(self.p, [self.entries[i] for i in indices])

    def hstack(self, other: FpMatrix) -> FpMatrix:
        self._check_modulus(other)
        if self.rows != other.rows:
            raise ValidationError("row counts differ in hstack")
        return FpMatrix(self.p, [a + b for a, b in zip(self.entries, other.entries)])

    def flip_rows(self) -> FpMatrix:
        return FpMatrix(self.p, self.entries[::-1])

    def reverse_columns(self) -> FpMatrix:
        return FpMatrix(self.p, [row[::-1] for row in self.entries])

    def _check_modulus(self, other: FpMatrix) -> None:
        if self.p != other.p:
            raise ValidationError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other: FpMatrix) -> FpMatrix:
        self._check_modulus(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValidationError("shape mismatch in matrix addition")
        return FpMatrix(
            self.p,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self) -> FpMatrix:
        return FpMatrix(self.p, [[-x for x in row] for row in self.entries])

    def __matmul__(self, other: FpMatrix) -> FpMatrix:
        self._check_modulus(other)
        if self.cols != other.rows:
            raise ValidationError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        p = self.p
        out = []
        for row in self.entries:
            out_row = []
            for j in range(other.cols):
                out_row.append(sum(row[k] * other.entries[k][j] for k in range(self.cols)) % p)
            out.append(out_row)
        return FpMatrix(p, out)

    def rank(self) -> int:
        """Rank by Gaussian elimination over F_p."""
        p = self.p
        work = [list(row) for row in self.entries]
        rank = 0
        for col in range(self.cols):
            pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            inv = pow(work[rank][col], -1, p)
            work[rank] = [(x * inv) % p for x in work[rank]]
            for r in range(len(work)):
                if r != rank and work[r][col]:
                    f = work[r][col]
                    work[r] = [(a - f * b) % p for a, b in zip(work[r], work[rank])]
            rank += 1
        return rank

    def inverse(self) -> FpMatrix:
        """Gauss-Jordan inverse; rejects non-square or singular input."""
        n = self.rows
        if n != self.cols:
            raise ValidationError("only square matrices can be inverted")
        p = self.p
        work = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise ValidationError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = pow(work[col][col], -1, p)
            work[col] = [(x * inv) % p for x in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [(a - f * b) % p for a, b in zip(work[r], work[col])]
        return FpMatrix(p, [row[n:] for row in work])

    def solve(self, rhs: FpMatrix) -> FpMatrix:
        """X with self @ X = rhs, for square invertible self."""
        return self.inverse() @ rhs


def s_reduce(matrix: FpMatrix, anti: bool = False) -> tuple[tuple[int, ...], FpMatrix, FpMatrix]:
    """Reduced column-echelon form of a full-column-rank n x e matrix.

    Returns (s, M, g) with M = matrix @ g, g invertible e x e, and M in
    reduced form with strictly increasing 1-based pivot rows s: pivot
    entries are 1, pivot rows vanish outside their own column, and entries
    above each pivot (below, for the anti form) vanish.  The pivot sequence
    is an invariant of the column space.
    """
    if anti:
        s_flip, reduced, g = _s_reduce_straight(matrix.flip_rows())
        n = matrix.rows
        pivots = tuple(sorted(n + 1 - x for x in s_flip))
        return pivots, reduced.flip_rows().reverse_columns(), g.reverse_columns()
    return _s_reduce_straight(matrix)


def _s_reduce_straight(matrix: FpMatrix) -> tuple[tuple[int, ...], FpMatrix, FpMatrix]:
    n, e, p = matrix.rows, matrix.cols, matrix.p
    cols = [list(matrix.column(j)) for j in range(e)]
    gcols = [[1 if i == j else 0 for i in range(e)] for j in range(e)]
    pivots: list[int] = []
    for j in range(e):
        located = None
        for i in range(n):
            hit = next((c for c in range(j, e) if cols[c][i]), None)
            if hit is not None:
                located = (i, hit)
                break
        if located is None:
            raise ValidationError(f"matrix has rank below {e}, cannot column-reduce")
        row, c = located
        cols[j], cols[c] = cols[c], cols[j]
        gcols[j], gcols[c] = gcols[c], gcols[j]
        inv = pow(cols[j][row], -1, p)
        cols[j] = [(x * inv) % p for x in cols[j]]
        gcols[j] = [(x * inv) % p for x in gcols[j]]
        for c2 in range(e):
            if c2 != j and cols[c2][row]:
                f = cols[c2][row]
                cols[c2] = [(a - f * b) % p for a, b in zip(cols[c2], cols[j])]
                gcols[c2] = [(a - f * b) % p for a, b in zip(gcols[c2], gcols[j])]
        pivots.append(row + 1)
    return (
        tuple(pivots),
        FpMatrix.from_columns(p, cols, n),
        FpMatrix.from_columns(p, gcols, e),
    )


def is_parabolic_member(g: FpMatrix, shape: FlagShape) -> bool:
    """True iff g is invertible and block-upper-triangular for the shape's
    blocks, with invertible diagonal blocks."""
    n = shape.n
    if g.rows != n or g.cols != n:
        raise ValidationError(f"expected an {n}x{n} matrix")
    c = shape.cuts
    blocks = len(c) - 1
    for bi in range(blocks):
        for bj in range(bi):
            for i in range(c[bi], c[bi + 1]):
                for j in range(c[bj], c[bj + 1]):
                    if g.entry(i, j):
                        return False
    for bi in range(blocks):
        size = c[bi + 1] - c[bi]
        diag = FpMatrix(g.p, [row[c[bi] : c[bi + 1]] for row in g.entries[c[bi] : c[bi + 1]]])
        if diag.rank() != size:
            return False
    return True


@dataclass(frozen=True, init=False)
class OrderedSetPartition:
    """A partition of [n] into labeled blocks of prescribed sizes."""

    shape: FlagShape
    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, shape: FlagShape, blocks: Sequence[Sequence[int]]):
        data = tuple(tuple(int(x) for x in b) for b in blocks)
        sizes = shape.block_sizes
        if len(data) != len(sizes):
            raise ValidationError(f"expected {len(sizes)} blocks, got {len(data)}")
        for block, size in zip(data, sizes):
            if len(block) != size:
                raise ValidationError(f"block {block} should have {size} elements")
            if any(block[i] >= block[i + 1] for i in range(len(block) - 1)):
                raise ValidationError(f"block {block} must be strictly increasing")
        flat = sorted(x for block in data for x in block)
        if flat != list(range(1, shape.n + 1)):
            raise ValidationError("blocks must partition 1..n")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "blocks", data)


def enumerate_partitions(shape: FlagShape, cap: int = DEFAULT_CAP) -> Iterator[OrderedSetPartition]:
    """Every ordered set partition with the shape's block sizes, lex order."""
    check_cap(shape.multinomial(), cap, "ordered set partition enumeration")

    def rec(remaining: tuple[int, ...], sizes: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if not sizes:
            yield ()
            return
        for first in itertools.combinations(remaining, sizes[0]):
            chosen = set(first)
            rest = tuple(x for x in remaining if x not in chosen)
            for tail in rec(rest, sizes[1:]):
                yield (first,) + tail

    for blocks in rec(tuple(range(1, shape.n + 1)), shape.block_sizes):
        yield OrderedSetPartition(shape, blocks)


class SigmaStats(NamedTuple):
    perm: tuple[int, ...]          # position -> element, reading blocks in order
    mu: tuple[int, ...]            # position -> 1-based block index
    delta: tuple[int, ...]         # per-position free-entry counts
    lam: int                       # total cell dimension


def cell_free_rows(sigma: OrderedSetPartition, anti: bool = False) -> tuple[tuple[int, ...], ...]:
    """Per column of the normal form, the rows left unconstrained.

    Column j has its pivot at row perm[j]; rows belonging to blocks up to
    and including j's block are pinned, and of the remaining rows only
    those below the pivot (above, for the anti form) are free.
    """
    remaining = set(range(1, sigma.shape.n + 1))
    out: list[tuple[int, ...]] = []
    for block in sigma.blocks:
        remaining -= set(block)
        pool = sorted(remaining)
        for v in block:
            if anti:
                out.append(tuple(t for t in pool if t < v))
            else:
                out.append(tuple(t for t in pool if t > v))
    return tuple(out)


def sigma_stats(sigma: OrderedSetPartition) -> SigmaStats:
    """The derived permutation, block map, and cell-dimension statistics."""
    perm = tuple(v for block in sigma.blocks for v in block)
    mu = tuple(
        m for m, block in enumerate(sigma.blocks, start=1) for _ in block
    )
    delta = tuple(len(rows) for rows in cell_free_rows(sigma))
    return SigmaStats(perm, mu, delta, sum(delta))


def theta_word(sigma: OrderedSetPartition) -> MultisetWord:
    """Transport the partition to a multiset word, mirroring the elements.

    Position i receives the index of the block containing element n - i + 1.
    The map is a bijection onto the words of the shape's block content, and
    the word's inversion count equals the cell dimension lam(sigma): both
    count element pairs u < v with v in a strictly later block than u.
    """
    n = sigma.shape.n
    member = [0] * (n + 1)
    for ell, block in enumerate(sigma.blocks, start=1):
        for v in block:
            member[v] = ell
    letters = tuple(member[n - i + 1] for i in range(1, n + 1))
    return MultisetWord(letters, sigma.shape)


@dataclass(frozen=True, init=False)
class CellForm:
    """An invertible matrix in the normal form attached to a partition."""

    sigma: OrderedSetPartition
    matrix: FpMatrix
    anti: bool

    def __init__(self, sigma: OrderedSetPartition, matrix: FpMatrix, anti: bool = False):
        n = sigma.shape.n
        if matrix.rows != n or matrix.cols != n:
            raise ValidationError(f"cell form must be {n}x{n}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "anti", bool(anti))

    def free_rows(self) -> tuple[tuple[int, ...], ...]:
        return cell_free_rows(self.sigma, self.anti)

    def free_entry_count(self) -> int:
        return sum(len(rows) for rows in self.free_rows())

    def matches_pattern(self) -> bool:
        """Entry check: 1 on the pivot, arbitrary on free rows, 0 elsewhere."""
        perm = sigma_stats(self.sigma).perm
        free = self.free_rows()
        for j in range(self.sigma.shape.n):
            pivot = perm[j]
            free_set = set(free[j])
            for i in range(1, self.sigma.shape.n + 1):
                v = self.matrix.entry(i - 1, j)
                if i == pivot:
                    if v != 1:
                        return False
                elif i not in free_set and v != 0:
                    return False
        return True


def cell_form(
    A: FpMatrix, shape: FlagShape, anti: bool = False
) -> tuple[OrderedSetPartition, CellForm, FpMatrix]:
    """The unique normal form in the coset of A.

    Proceeds block by block: correct the current column block by earlier
    reduced blocks so that all previously claimed pivot rows vanish, then
    column-reduce what is left.  Returns (sigma, form, g) with
    form.matrix = A @ g and g block-upper-triangular.
    """
    n = shape.n
    if A.rows != n or A.cols != n:
        raise ValidationError(f"expected an {n}x{n} matrix")
    if A.rank() != n:
        raise ValidationError("matrix is singular")
    cuts = shape.cuts
    reduced_blocks: list[FpMatrix] = []
    sigma_blocks: list[tuple[int, ...]] = []
    claimed: list[int] = []  # pivot rows in block order, 1-based
    for m in range(shape.r + 1):
        block = A.column_block(cuts[m], cuts[m + 1])
        if claimed:
            prev = reduced_blocks[0]
            for extra in reduced_blocks[1:]:
                prev = prev.hstack(extra)
            rows0 = [x - 1 for x in claimed]
            # prev restricted to claimed rows is unitriangular by blocks,
            # so the correction below always has a unique solution
            correction = prev.select_rows(rows0).solve(-block.select_rows(rows0))
            block = block + prev @ correction
        pivots, reduced, _ = s_reduce(block, anti=anti)
        reduced_blocks.append(reduced)
        sigma_blocks.append(pivots)
        claimed.extend(pivots)
    stacked = reduced_blocks[0]
    for extra in reduced_blocks[1:]:
        stacked = stacked.hstack(extra)
    sigma = OrderedSetPartition(shape, tuple(sigma_blocks))
    g = A.inverse() @ stacked
    return sigma, CellForm(sigma, stacked, anti), g


def cell_sum_poly(shape: FlagShape, anti: bool = False, cap: int = DEFAULT_CAP) -> IntPoly:
    """Generating polynomial of cell dimensions over all partitions of the shape."""
    hist = [0] * (shape.nu + 1)
    for sigma in enumerate_partitions(shape, cap=cap):
        hist[sum(len(rows) for rows in cell_free_rows(sigma, anti))] += 1
    return IntPoly(hist)


def tau_for_lambda(n: int, d1: int, k: int) -> OrderedSetPartition:
    """A two-block partition whose cell dimension is exactly k.

    Writing k = a*e2 + b with 0 <= b < e2, the first block takes 1..a, the
    top e1-a-1 values, and the single value n - e1 + a + 1 - b.
    """
    if not 1 <= d1 < n:
        raise ValidationError(f"need 1 <= d1 < n, got d1={d1}, n={n}")
    shape = FlagShape(n, (d1,))
    e1, e2 = d1, n - d1
    if not 0 <= k <= e1 * e2:
        raise ValidationError(f"target dimension {k} outside [0, {e1 * e2}]")
    a, b = divmod(k, e2)
    if a == e1:
        first = list(range(1, e1 + 1))
    else:
        first = (
            list(range(1, a + 1))
            + [n - j for j in range(e1 - a - 1)]
            + [n - e1 + a + 1 - b]
        )
    first_sorted = tuple(sorted(first))
    second = tuple(x for x in range(1, n + 1) if x not in set(first_sorted))
    return OrderedSetPartition(shape, (first_sorted, second))


@dataclass(frozen=True, init=False)
class Flag:
    """A chain of nested subspaces, stored by canonical echelon bases."""

    shape: FlagShape
    p: int
    bases: tuple[FpMatrix, ...]

    def __init__(self, shape: FlagShape, p: int, bases: Sequence[FpMatrix]):
        _require_prime(p)
        data = tuple(bases)
        if len(data) != shape.r:
            raise ValidationError(f"expected {shape.r} subspaces, got {len(data)}")
        previous: FpMatrix | None = None
        for dim, basis in zip(shape.d, data):
            if basis.p != p or basis.rows != shape.n or basis.cols != dim:
                raise ValidationError("basis dimensions do not match the shape")
            if basis.rank() != dim:
                raise ValidationError("basis matrix is rank deficient")
            if previous is not None and basis.hstack(previous).rank() != dim:
                raise ValidationError("subspaces are not nested")
            previous = basis
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "bases", data)


def phi_flag(A: FpMatrix, shape: FlagShape) -> Flag:
    """The flag spanned by the leading column blocks of an invertible matrix."""
    n = shape.n
    if A.rows != n or A.cols != n:
        raise ValidationError(f"expected an {n}x{n} matrix")
    if A.rank() != n:
        raise ValidationError("matrix is singular")
    bases = []
    for dim in shape.d:
        _, canonical, _ = s_reduce(A.column_block(0, dim))
        bases.append(canonical)
    return Flag(shape, A.p, tuple(bases))


def reduced_echelon_bases(n: int, e: int, p: int) -> Iterator[FpMatrix]:
    """Every n x e matrix in reduced column-echelon form, i.e. every
    e-dimensional subspace of F_p^n exactly once."""
    _require_prime(p)
    for pivots in itertools.combinations(range(1, n + 1), e):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for j, s in enumerate(pivots)
            for i in range(s + 1, n + 1)
            if i not in pivot_set
        ]
        for values in itertools.product(range(p), repeat=len(free)):
            entries = [[0] * e for _ in range(n)]
            for j, s in enumerate(pivots):
                entries[s - 1][j] = 1
            for (i, j), v in zip(free, values):
                entries[i - 1][j] = v
            yield FpMatrix(p, entries)


def _contains(big: FpMatrix, small: FpMatrix) -> bool:
    return big.hstack(small).rank() == big.cols


def enumerate_flags(shape: FlagShape, p: int, cap: int = DEFAULT_CAP) -> list[Flag]:
    """Brute-force list of all flags of the shape over F_p, in a fixed order."""
    _require_prime(p)
    check_cap(q_multinomial(shape).eval_at(p), cap, "flag enumeration")
    chains: list[tuple[FpMatrix, ...]] = [()]
    for dim in shape.d:
        level = list(reduced_echelon_bases(shape.n, dim, p))
        chains = [
            chain + (basis,)
            for chain in chains
            for basis in level
            if not chain or _contains(basis, chain[-1])
        ]
    return [Flag(shape, p, chain) for chain in chains]


def flag_count_group_formula(shape: FlagShape, p: int) -> int:
    """Flag count as a quotient of group orders.

    |GL(n, F_p)| divided by the order of the block-upper-triangular
    subgroup; an exact integer.
    """
    _require_prime(p)
    n = shape.n
    gl_order = math.prod(p**n - p**i for i in range(n))
    parabolic = math.prod(
        math.prod(p**e - p**j for j in range(e)) for e in shape.block_sizes
    ) * p**shape.nu
    if gl_order % parabolic:
        raise RuntimeError("group order is not divisible by parabolic order")
    return gl_order // parabolic


def enumerate_general_linear(n: int, p: int, cap: int = DEFAULT_CAP) -> Iterator[FpMatrix]:
    """All invertible n x n matrices over F_p, in a fixed order.

    For p = 2 and small n, rejection over all bit matrices; otherwise
    row-by-row construction that only extends independent row sets.
    """
    _require_prime(p)
    order = math.prod(p**n - p**i for i in range(n))
    check_cap(order, cap, "general linear group enumeration")
    if p == 2 and n <= 4:
        for bits in range(1 << (n * n)):
            rows = [
                [(bits >> (i * n + j)) & 1 for j in range(n)] for i in range(n)
            ]
            m = FpMatrix(2, rows)
            if m.rank() == n:
                yield m
        return

    vectors = list(itertools.product(range(p), repeat=n))

    def extend(rows: list[tuple[int, ...]], span: set[tuple[int, ...]]) -> Iterator[FpMatrix]:
        if len(rows) == n:
            yield FpMatrix(p, rows)
            return
        for vec in vectors:
            if vec in span:
                continue
            larger = {
                tuple((a + c * b) % p for a, b in zip(old, vec))
                for old in span
                for c in range(p)
            }
            yield from extend(rows + [vec], larger)

    zero = tuple([0] * n)
    yield from extend([], {zero})
