"""
Tests for words and the symbol-space metric
"""

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import InvalidInputError
from src.shiftspace.words import (
    alphabet,
    concat,
    delete_twos,
    first_difference,
    format_fraction,
    is_lyndon,
    metric_distance,
    parse_word,
    periodic_extension,
    power,
    shift_word,
)

binary5 = st.text(alphabet="01", min_size=5, max_size=5)


def test_alphabet():
    assert alphabet(3) == "012"
    with pytest.raises(InvalidInputError):
        alphabet(0)


def test_parse_word_rejects_foreign_symbol():
    assert parse_word(" 0110 ", 2) == "0110"
    with pytest.raises(InvalidInputError, match="index 1"):
        parse_word("021", 2)


def test_metric_distance():
    assert metric_distance("0101", "0101") == 0
    assert metric_distance("0101", "0111") == Fraction(1, 3)
    assert metric_distance("0", "1") == 1


def test_metric_needs_equal_lengths():
    with pytest.raises(InvalidInputError):
        metric_distance("01", "011")


def test_ultrametric_exhaustive():
    """Strong triangle inequality over every triple of length-5 binary words"""
    words = ["".join(p) for p in product("01", repeat=5)]
    distance = {(x, y): metric_distance(x, y) for x in words for y in words}
    for x, y, z in product(words, repeat=3):
        assert distance[x, z] <= max(distance[x, y], distance[y, z])


@given(binary5, binary5)
def test_metric_symmetric_and_separating(x, y):
    assert metric_distance(x, y) == metric_distance(y, x)
    assert (metric_distance(x, y) == 0) == (x == y)


def test_periodic_extension():
    assert periodic_extension("01", 5) == "01010"
    assert periodic_extension("01", 5, 1) == "10101"
    assert periodic_extension("001", 7, 5) == "1001001"


def test_is_lyndon():
    assert is_lyndon("0")
    assert is_lyndon("001")
    assert not is_lyndon("010")
    assert not is_lyndon("00")
    assert not is_lyndon("")


def test_shift_word():
    assert shift_word("0110") == "110"
    assert shift_word("2") == ""
    assert shift_word("012012") == "12012"
    with pytest.raises(InvalidInputError):
        shift_word("")


def test_concat():
    assert concat("01", "10") == "0110"
    assert concat("", "2") == "2"
    assert concat("0", power("2", 3)) == "0222"


def test_delete_twos_and_power():
    assert delete_twos("20212") == "01"
    assert power("01", 3) == "010101"


def test_first_difference():
    assert first_difference("0110", "0100") == 2
    assert first_difference("01", "011") == 2


def test_format_fraction():
    assert format_fraction(Fraction(1, 3)) == "1/3"
    assert format_fraction(Fraction(0)) == "0"
