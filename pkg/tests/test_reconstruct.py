import pytest

from threecolour import reference
from threecolour.boards import counting_table, partition_polynomial
from threecolour.reconstruct import (
    count_matrix,
    count_table,
    parity_symmetry_check,
    support_edges_check,
    symmetry_check,
    z3c_from_qr,
)


@pytest.mark.parametrize("n", range(0, 7))
def test_reconstruction_equals_enumeration(n):
    assert z3c_from_qr(n) == partition_polynomial(n)


@pytest.mark.parametrize("n", [4, 5])
def test_count_matrices(n):
    assert count_matrix(counting_table(n)) == reference.COUNT_MATRICES[n]


def test_count_table_switches_source():
    assert count_table(5) == counting_table(5)


@pytest.mark.parametrize("n", range(1, 10))
def test_support_edges(n):
    assert support_edges_check(n).passed


@pytest.mark.parametrize("n", [1, 3, 5, 7, 9])
def test_parity_symmetry(n):
    assert parity_symmetry_check(n).passed


@pytest.mark.parametrize("n", range(0, 9))
def test_reflection_symmetry(n):
    assert symmetry_check(n).passed


def test_reconstructed_totals_are_asm_counts():
    # A_8, A_9 from the product formula, written out
    assert count_table(8).total() == 10850216
    assert count_table(9).total() == 911835460
