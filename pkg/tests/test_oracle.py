from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from troprec.core import BudgetExceeded, parse_vector, satisfies
from troprec.oracle import (
    enumerate_cells,
    fekete_entropy_estimate,
    hilbert_oracle,
    max_cell_dimension,
)


def test_short_lengths_are_unconstrained():
    a = parse_vector("0,1,0")
    assert hilbert_oracle(a, 1) == 1
    assert hilbert_oracle(a, 2) == 2
    with pytest.raises(ValueError):
        hilbert_oracle(a, 0)


def test_single_window_forced_pair():
    a = parse_vector("0,0")
    cells = list(enumerate_cells(a, 3))
    assert len(cells) == 1
    assert cells[0].dim == 1  # y1 = y2 = y3, one translation degree
    assert hilbert_oracle(a, 3) == 0


def test_three_zero_cells_at_first_length():
    a = parse_vector("0,0,0")
    cells = list(enumerate_cells(a, 3))
    # the full tie and the three two-element attainment patterns
    assert len(cells) == 4
    assert sorted(c.dim for c in cells) == [1, 2, 2, 2]
    assert hilbert_oracle(a, 3) == 1


def test_closed_form_small_tables():
    a = parse_vector("0,0,0")
    b = parse_vector("0,1,0")
    for s in range(3, 11):
        assert hilbert_oracle(a, s) == -(-s // 3)
        assert hilbert_oracle(b, s) == -(-s // 4)
    assert hilbert_oracle(b, 5) == 2
    assert hilbert_oracle(a, 6) == 2


def test_every_witness_satisfies():
    for lbl, s in (("0,0,0", 5), ("0,1,0", 6), ("0,inf,0", 6), ("1,0,2", 5)):
        a = parse_vector(lbl)
        for cell in enumerate_cells(a, s):
            assert satisfies(a, cell.witness)
            assert cell.dim >= 1


def test_patterns_are_distinct():
    a = parse_vector("0,1,0")
    seen = set()
    for cell in enumerate_cells(a, 6):
        assert cell.pattern not in seen
        seen.add(cell.pattern)


def test_witness_translation_invariance():
    a = parse_vector("0,0,0")
    for cell in enumerate_cells(a, 5):
        shifted = [y + Fraction(9, 7) for y in cell.witness]
        assert satisfies(a, shifted)


def test_budget_error():
    a = parse_vector("0,0,0")
    with pytest.raises(BudgetExceeded):
        list(enumerate_cells(a, 9, budget=10))
    # the error names the spent budget
    try:
        list(enumerate_cells(a, 9, budget=10))
    except BudgetExceeded as exc:
        assert "10" in str(exc)


def test_max_cell_dimension_matches_reported():
    a = parse_vector("0,1,0")
    assert max_cell_dimension(a, 5) == hilbert_oracle(a, 5) + 1


def test_fekete_brackets():
    lo, up = fekete_entropy_estimate(parse_vector("0,1,0"), 12)
    assert lo <= Fraction(1, 4) <= up
    lo, up = fekete_entropy_estimate(parse_vector("0,0,0"), 12)
    assert lo <= Fraction(1, 3) <= up
    lo, up = fekete_entropy_estimate(parse_vector("0,1"), 8)
    assert lo == 0 and up >= 0
    with pytest.raises(ValueError):
        fekete_entropy_estimate(parse_vector("0,1,0"), 3)


def test_fekete_bracket_is_ordered():
    lo, up = fekete_entropy_estimate(parse_vector("0,0,inf,inf,0"), 12)
    assert lo <= up


def test_fekete_floor_needs_a_full_period():
    # the d table of this vector stalls for five straight lengths once per
    # 15-cycle; a table that stops at 14 never sees the stall and the floor
    # lands above the true rate of 1/3, while the ceiling stays sound
    a = parse_vector("0,0,inf,inf,0")
    lo, up = fekete_entropy_estimate(a, 14)
    assert (lo, up) == (Fraction(2, 5), Fraction(5, 12))
    assert Fraction(1, 3) <= up
    lo, up = fekete_entropy_estimate(a, 22)
    assert lo <= Fraction(1, 3) <= up


def test_monotone_step_property():
    a = parse_vector("1,0,2")
    prev = hilbert_oracle(a, 3)
    for s in range(4, 9):
        cur = hilbert_oracle(a, s)
        assert prev <= cur <= prev + 1
        prev = cur


@given(st.lists(st.integers(min_value=0, max_value=2), min_size=3, max_size=3))
@settings(max_examples=30, deadline=None)
def test_subadditivity_small(entries):
    a = parse_vector(",".join(str(e) for e in entries))
    d = {s: hilbert_oracle(a, s) for s in range(3, 9)}
    for s in range(3, 6):
        for t in range(3, 6):
            if s + t <= 8:
                assert d[s + t] <= d[s] + d[t]
