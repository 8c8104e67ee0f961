"""
Tests for admissible-word languages
"""

from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.analysis import mixing_certificate
from src.errors import InvalidInputError, NonConvergenceError, ResolutionExceededError
from src.shiftspace import THUE_MORSE, delete_twos, generate_language, language_complexity, parse_spec


def test_full_shift_counts(full2):
    assert language_complexity(full2, 8) == [2 ** n for n in range(1, 9)]
    assert full2.words(2) == ("00", "01", "10", "11")


def test_golden_mean_counts_follow_fibonacci(golden):
    assert language_complexity(golden, 6) == [2, 3, 5, 8, 13, 21]
    assert all(golden.count(n) == len(golden.words(n)) for n in range(1, 7))


def test_thue_morse_factors(thue_morse):
    assert thue_morse.words(3) == ("001", "010", "011", "100", "101", "110")
    assert language_complexity(thue_morse, 4) == [2, 4, 6, 10]
    assert thue_morse.orbit_prefix(8) == "01101001"


def test_chacon_has_no_11(chacon):
    assert "11" not in chacon.words(2)
    assert chacon.orbit_prefix(9) == "001000101"


def test_admissibility_edge_cases(golden):
    assert golden.is_admissible("")
    assert not golden.is_admissible("0110")
    assert not golden.is_admissible("02")
    with pytest.raises(ResolutionExceededError):
        golden.is_admissible("0" * 11)


def test_completions_are_canonical(golden):
    assert list(golden.completions("1", 3)) == ["100", "101"]
    assert golden.first_completion("11", 3) is None


def test_words_are_factor_closed(thue_morse):
    longer = set(thue_morse.words(6))
    assert {w[i:i + 5] for w in longer for i in range(2)} == set(thue_morse.words(5))


def test_tilde_counts(tilde_tm):
    assert tilde_tm.count(2) == 9
    assert tilde_tm.count(3) == 25
    assert tilde_tm.count(3) == len(tilde_tm.words(3))
    assert tilde_tm.is_admissible("2002")
    assert not tilde_tm.is_admissible("20002")


def test_tilde_matches_padding_oracle(tilde_tm):
    """Words from inserting 2s into inner words are exactly the tilde words"""
    inner = tilde_tm.inner
    for n in range(1, 9):
        padded = set()
        for i in range(n + 1):
            for w in inner.words(i):
                for slots in combinations(range(n), i):
                    word = ["2"] * n
                    for slot, symbol in zip(slots, w):
                        word[slot] = symbol
                    padded.add("".join(word))
        assert padded == set(tilde_tm.words(n))


def test_tilde_orbit_is_inner_orbit(tilde_tm):
    assert tilde_tm.has_orbit
    assert tilde_tm.orbit_prefix(4) == "0110"


def test_full_shift_has_no_orbit(full2):
    assert not full2.has_orbit
    with pytest.raises(InvalidInputError):
        full2.orbit_prefix(4)


def test_empty_finite_type_is_rejected():
    with pytest.raises(InvalidInputError, match="empty subshift"):
        generate_language(parse_spec("sft:k=2;forbid=0,1"), 4)


def test_finite_fixed_point_is_rejected():
    with pytest.raises(InvalidInputError, match="finite fixed point"):
        generate_language(parse_spec("subst:0->0;seed=0"), 4)


def test_step_cap_is_enforced():
    with pytest.raises(NonConvergenceError) as excinfo:
        generate_language(THUE_MORSE, 16, step_cap=1)
    assert excinfo.value.cap == 1


def test_one_sided_finite_type_prunes_dead_ends():
    """With 00 and 01 forbidden, 0 can only be followed by nothing"""
    lang = generate_language(parse_spec("sft:k=2;forbid=00,01"), 4)
    assert lang.words(3) == ("111",)
    assert all(
        lang.is_admissible("".join(p)) == ("".join(p) == "111") for p in product("01", repeat=3)
    )


def test_memoryless_finite_type_keeps_parallel_edges():
    lang = generate_language(parse_spec("sft:k=3;forbid=2"), 8)
    assert lang.words(1) == ("0", "1")
    assert [lang.count(n) for n in range(1, 9)] == [2 ** n for n in range(1, 9)]


def random_word(lang, choices):
    """Walk right extensions from the empty word, picking by the given indices"""
    w = ""
    for choice in choices:
        options = lang.extensions(w)
        assert options, f"{w!r} has no admissible extension"
        w = options[choice % len(options)]
    return w


def assert_factor_closed(lang, w):
    assert lang.is_admissible(w)
    assert all(lang.is_admissible(w[i:j]) for i in range(len(w)) for j in range(i + 1, len(w) + 1))


choices = st.lists(st.integers(min_value=0, max_value=2), min_size=1, max_size=10)


@settings(max_examples=1000, deadline=None)
@given(choices)
def test_golden_random_words(golden, picks):
    assert_factor_closed(golden, random_word(golden, picks))


@settings(max_examples=1000, deadline=None)
@given(choices)
def test_thue_morse_random_words(thue_morse, picks):
    assert_factor_closed(thue_morse, random_word(thue_morse, picks))


@settings(max_examples=1000, deadline=None)
@given(choices)
def test_chacon_random_words(chacon, picks):
    assert_factor_closed(chacon, random_word(chacon, picks))


@settings(max_examples=1000, deadline=None)
@given(choices)
def test_tilde_random_words(tilde_tm, picks):
    w = random_word(tilde_tm, picks)
    assert_factor_closed(tilde_tm, w)
    assert tilde_tm.inner.is_admissible(delete_twos(w))


@pytest.mark.parametrize("fixture", ["tilde_tm", "tilde_full"])
def test_tilde_restricts_to_inner(fixture, request):
    lang = request.getfixturevalue(fixture)
    for n in range(1, 9):
        assert {w for w in lang.words(n) if "2" not in w} == set(lang.inner.words(n))
    assert all(lang.is_admissible("2" * n) for n in range(1, lang.depth + 1))


def test_deeper_language_agrees_below_depth(thue_morse, thue_morse_deep, golden):
    for n in range(1, thue_morse.depth + 1):
        assert thue_morse.words(n) == thue_morse_deep.words(n)
    deeper = generate_language(parse_spec("sft:k=2;forbid=11"), 14)
    assert all(golden.words(n) == deeper.words(n) for n in range(1, golden.depth + 1))
    assert mixing_certificate(golden, "1", "1", 6).N == mixing_certificate(deeper, "1", "1", 6).N == 2
