import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threecolour.boards import (
    AlternatingSignMatrix,
    ThreeColourBoard,
    asm_to_board,
    board_to_asm,
    board_to_ice,
    colour_counts,
    counting_table,
    enumerate_boards,
    expected_total,
    partition_polynomial,
)
from threecolour.errors import InvalidASM, InvalidBoard, SizeGuardError


def naive_asms(n):
    """Every n x n matrix over {-1,0,1} that passes the ASM rules."""
    out = []
    for flat in itertools.product((-1, 0, 1), repeat=n * n):
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
        try:
            out.append(AlternatingSignMatrix.checked(rows))
        except InvalidASM:
            pass
    return out


BOARDS = {n: list(enumerate_boards(n)) for n in range(0, 6)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_naive_asm_search(n):
    asms = {a.entries for a in naive_asms(n)}
    got = {board_to_asm(b).entries for b in BOARDS[n]}
    assert got == asms


def test_small_board_counts():
    assert [len(BOARDS[n]) for n in range(1, 6)] == [1, 2, 7, 42, 429]
    assert len(BOARDS[0]) == 1


def test_enumeration_is_sorted_and_unique():
    grids = [b.grid for b in BOARDS[4]]
    assert grids == sorted(grids)
    assert len(set(grids)) == len(grids)


@pytest.mark.parametrize("n", range(1, 6))
def test_every_board_validates(n):
    for b in BOARDS[n]:
        b.validate()
        assert sum(colour_counts(b)) == (n + 1) ** 2


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_asm_round_trip(data):
    n = data.draw(st.integers(1, 5))
    b = data.draw(st.sampled_from(BOARDS[n]))
    a = board_to_asm(b)
    a.validate()
    assert asm_to_board(a) == b


@given(st.data())
@settings(max_examples=60, deadline=None)
def test_ice_rule(data):
    n = data.draw(st.integers(1, 5))
    b = data.draw(st.sampled_from(BOARDS[n]))
    assert board_to_ice(b).six_vertex_ok()


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_json_round_trip(data):
    n = data.draw(st.integers(0, 4))
    b = data.draw(st.sampled_from(BOARDS[n]))
    assert ThreeColourBoard.from_json(b.to_json()) == b


def test_bad_boards_rejected():
    good = BOARDS[2][0]
    with pytest.raises(InvalidBoard):
        ThreeColourBoard.checked(2, [[0, 1], [1, 0]])
    grid = [list(r) for r in good.grid]
    grid[1][1] = grid[0][1]
    with pytest.raises(InvalidBoard):
        ThreeColourBoard.checked(2, grid)
    grid = [list(r) for r in good.grid]
    grid[2][2] = 1
    with pytest.raises(InvalidBoard):
        ThreeColourBoard.checked(2, grid)


def test_bad_asm_rejected():
    with pytest.raises(InvalidASM):
        AlternatingSignMatrix.checked([[1, 1], [0, 0]])
    with pytest.raises(InvalidASM):
        AlternatingSignMatrix.checked([[-1, 1], [1, 0]])
    with pytest.raises(InvalidASM):
        AlternatingSignMatrix.checked([[1, 0, 0], [0, 1]])


def test_size_guard():
    with pytest.raises(SizeGuardError):
        next(enumerate_boards(9))
    with pytest.raises(ValueError):
        counting_table(-1)


@pytest.mark.parametrize("n", range(0, 6))
def test_counting_table_consistent_with_boards(n):
    table = counting_table(n)
    assert table.total() == len(BOARDS[n]) == expected_total(n)
    for k in table.support():
        assert sum(k) == (n + 1) ** 2


def test_parallel_counting_matches_serial():
    assert counting_table(5, jobs=3) == counting_table(5)


def test_partition_polynomial_at_ones():
    assert partition_polynomial(4)(1, 1, 1) == 42
