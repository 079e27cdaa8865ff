import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qcomb import (
    FlagShape,
    MahonianTable,
    MultisetWord,
    ResourceLimitError,
    ValidationError,
    all_shapes,
    enumerate_words,
    full_mahonian,
    inv_bounds,
    inversion_count,
    inversion_count_quadratic,
    inversion_distribution_oracle,
    is_refinement,
    log_concavity_scan,
    mahonian_table,
    q_multinomial,
    refinement_recurrence,
)


def test_enumerate_words_examples():
    words = [w.letters for w in enumerate_words(FlagShape(3, (2,)))]
    assert words == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    words = [w.letters for w in enumerate_words(FlagShape(2, (1,)))]
    assert words == [(1, 2), (2, 1)]
    assert sum(1 for _ in enumerate_words(FlagShape(4, (2,)))) == 6


def test_enumerate_words_is_sorted_and_complete():
    for shape in [FlagShape(5, (2, 4)), FlagShape(4, (1, 2, 3))]:
        words = [w.letters for w in enumerate_words(shape)]
        assert words == sorted(words)
        assert len(set(words)) == len(words) == shape.multinomial()


def test_enumerate_words_cap():
    with pytest.raises(ResourceLimitError):
        list(enumerate_words(FlagShape.full(10), cap=1000))


def test_word_validation():
    shape = FlagShape(3, (2,))
    MultisetWord((1, 2, 1), shape)
    with pytest.raises(ValidationError):
        MultisetWord((1, 2, 2), shape)
    with pytest.raises(ValidationError):
        MultisetWord((1, 1), shape)


def test_inversion_count_examples():
    assert inversion_count((2, 1, 1)) == 2
    assert inversion_count((1, 1, 2, 2, 3)) == 0
    # blocks in reverse order, each block increasing: every cross pair inverted
    shape = FlagShape(7, (2, 4))
    word = (3, 3, 3, 2, 2, 1, 1)
    assert inversion_count(word) == shape.nu


@given(st.lists(st.integers(min_value=1, max_value=6), max_size=30))
def test_inversion_counters_agree(letters):
    assert inversion_count(letters) == inversion_count_quadratic(letters)


def test_distribution_oracle_examples():
    assert inversion_distribution_oracle(FlagShape(3, (2,))).coeffs == (1, 1, 1)
    assert inversion_distribution_oracle(FlagShape(3, (1, 2))).coeffs == (1, 2, 2, 1)
    assert inversion_distribution_oracle(FlagShape(2, (1,))).coeffs == (1, 1)


def test_oracle_equals_q_multinomial_to_n6():
    # n = 7, 8 are covered by the acceptance suite
    for n in range(1, 7):
        for shape in all_shapes(n):
            assert inversion_distribution_oracle(shape) == q_multinomial(shape)


def test_mahonian_table_reference_values():
    table = mahonian_table(FlagShape(7, (2, 4)))
    assert table.counts[:5] == (1, 2, 5, 8, 13)
    full10 = mahonian_table(FlagShape.full(10))
    assert full10.value(12) == 47043
    assert full10.value(20) == 230131


def test_table_invariants_enforced():
    shape = FlagShape(3, (1,))
    MahonianTable(shape, (1, 1, 1))
    with pytest.raises(ValidationError):
        MahonianTable(shape, (1, 1))  # wrong length
    with pytest.raises(ValidationError):
        MahonianTable(shape, (1, 2, 1))  # wrong total
    with pytest.raises(ValidationError):
        MahonianTable(FlagShape(4, (2,)), (1, 2, 1, 1, 1))  # asymmetric


def test_full_mahonian_examples():
    assert full_mahonian(3).counts == (1, 2, 2, 1)
    for n in range(1, 9):
        assert full_mahonian(n).value(0) == 1
    assert full_mahonian(10).value(12) == 47043


def test_full_mahonian_rowsum_recurrence():
    for n in range(2, 13):
        current = full_mahonian(n)
        previous = full_mahonian(n - 1)
        for k in range(n * (n - 1) // 2 + 1):
            assert current.value(k) == sum(
                previous.value(j) for j in range(max(0, k - n + 1), k + 1)
            )


def test_full_mahonian_symmetry():
    for n in range(1, 13):
        counts = full_mahonian(n).counts
        assert counts == counts[::-1]


def test_refinement_example():
    shape = FlagShape(3, (2,))
    refined = FlagShape(3, (1, 2))
    assert refinement_recurrence(shape, refined).counts == (1, 1, 1)
    # trivial refinement leaves the table unchanged
    assert refinement_recurrence(shape, shape).counts == mahonian_table(shape).counts


def test_refinement_rejects_non_refinement():
    assert not is_refinement(FlagShape(4, (2,)), FlagShape(4, (1, 3)))
    with pytest.raises(ValidationError):
        refinement_recurrence(FlagShape(4, (2,)), FlagShape(4, (1, 3)))
    with pytest.raises(ValidationError):
        refinement_recurrence(FlagShape(4, (2,)), FlagShape(5, (2, 3)))


def _refinement_pairs(n):
    for shape in all_shapes(n):
        base = set(shape.d)
        extras = [x for x in range(1, n) if x not in base]
        for count in range(len(extras) + 1):
            for added in itertools.combinations(extras, count):
                yield shape, FlagShape(n, tuple(sorted(base | set(added))))


def test_refinement_sweep_to_n6():
    # n = 7 is covered by the acceptance suite
    for n in range(1, 7):
        for shape, refined in _refinement_pairs(n):
            assert refinement_recurrence(shape, refined).counts == mahonian_table(shape).counts


def test_refinement_monotonicity():
    for n in range(1, 7):
        for shape, refined in _refinement_pairs(n):
            coarse = mahonian_table(shape)
            fine = mahonian_table(refined)
            for k in range(shape.nu + 1):
                assert coarse.value(k) <= fine.value(k)


def test_inv_bounds_reference_values():
    _, upper = inv_bounds(FlagShape(5, (1, 2)), 6)
    assert upper == 104
    _, upper = inv_bounds(FlagShape(5, (1, 2, 3)), 6)
    assert upper == 77
    _, upper = inv_bounds(FlagShape(5, (2,)), 6)
    assert upper == Fraction(1001, 12)
    assert upper < 84


def test_inv_bounds_sandwich_same_shape():
    for n in range(1, 7):
        for shape in all_shapes(n):
            table = mahonian_table(shape)
            for k in range(shape.nu + 1):
                lower, upper = inv_bounds(shape, k)
                assert lower <= table.value(k) <= upper
                if shape.eta == 0:
                    assert lower == table.value(k) == upper


def test_inv_bounds_nonpositive_lower_on_blocked_shapes():
    for n in range(3, 8):
        for shape in all_shapes(n):
            if shape.eta < 1:
                continue
            for k in range(2, shape.nu + 1):
                lower, _ = inv_bounds(shape, k)
                assert lower <= 0


def test_upper_bound_below_full_count_for_single_cut():
    shape = FlagShape(10, (1,))
    full10 = mahonian_table(FlagShape.full(10))
    _, upper12 = inv_bounds(shape, 12)
    _, upper20 = inv_bounds(shape, 20)
    assert upper12 < 44871 and upper12 < full10.value(12) == 47043
    assert upper20 < 182032 and upper20 < full10.value(20) == 230131


def test_bound_rationals_are_normalized():
    for shape, k in [(FlagShape(5, (2,)), 6), (FlagShape(10, (1,)), 12), (FlagShape(3, (1,)), 2)]:
        for value in inv_bounds(shape, k):
            assert value.denominator > 0
            assert math.gcd(abs(value.numerator), value.denominator) == 1


def test_log_concavity_scan():
    assert log_concavity_scan((1, 2, 5, 8, 13)) == [1, 3]
    table = mahonian_table(FlagShape(7, (2, 4)))
    assert log_concavity_scan(table.counts) == [1, 3, 13, 15]
    assert log_concavity_scan((4, 4, 4, 4)) == []
    for n in range(2, 11):
        assert log_concavity_scan(full_mahonian(n).counts) == []


def test_expected_inversions_of_uniform_word():
    # mean of the distribution is nu/2, by symmetry of the table
    for shape in [FlagShape(5, (2,)), FlagShape(6, (1, 4))]:
        table = mahonian_table(shape)
        mean = Fraction(sum(k * c for k, c in enumerate(table.counts)), sum(table.counts))
        assert mean == Fraction(shape.nu, 2)


def test_total_count_matches_multinomial():
    for n in range(1, 8):
        for shape in all_shapes(n):
            assert sum(mahonian_table(shape).counts) == math.factorial(n) // math.prod(
                math.factorial(e) for e in shape.block_sizes
            )
