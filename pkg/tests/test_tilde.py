"""
Tests for the padded extension and the b-bar construction
"""

import pytest

from src.errors import InvalidInputError, PrefixTooShortError, ResolutionExceededError
from src.analysis import mixing_certificate
from src.shiftspace import CHACON, TildeExtension, delete_twos, generate_language
from src.tilde import (
    build_bbar,
    connecting_word,
    omega_limit_sweep,
    omega_limit_trace,
    tilde_language,
    tilde_minimality_witness,
    tilde_mixing_certificate,
    tilde_periodic_scan,
    verify_bbar,
)

ORBIT_LENGTH = 16384


@pytest.fixture(scope="module")
def recipe_021(tilde_tm):
    return build_bbar("021", tilde_tm.inner, tilde_tm.orbit_prefix(ORBIT_LENGTH), 8)


class TestTildeLanguage:
    def test_tilde_language_over_inner(self, thue_morse):
        lang = tilde_language(thue_morse, 8)
        assert lang.count(2) == 9
        with pytest.raises(ResolutionExceededError):
            tilde_language(thue_morse, 20)

    def test_connecting_word(self, thue_morse):
        assert connecting_word(thue_morse, "00", "00") == "11"
        assert connecting_word(thue_morse, "01", "10") == ""


class TestTildeMixing:
    def test_padding_makes_thue_morse_mixing(self, tilde_tm):
        certificate = tilde_mixing_certificate(tilde_tm, "0011", "0011", 10)
        assert certificate is not None
        assert certificate.construction == "padded"
        assert set(certificate.gaps) == set(range(certificate.N, 11))
        assert all(tilde_tm.is_admissible("0011" + w + "0011") for w in certificate.gaps.values())

    def test_base_control_pair_fails(self, thue_morse_deep):
        assert mixing_certificate(thue_morse_deep, "0011", "0011", 10) is None

    def test_needs_tilde_language(self, thue_morse):
        with pytest.raises(InvalidInputError):
            tilde_mixing_certificate(thue_morse, "0", "1", 3)


class TestPeriodicScan:
    def test_thue_morse_scan_is_conclusive(self, tilde_tm):
        report = tilde_periodic_scan(tilde_tm, 6)
        assert report.conclusive
        assert [p.word for p in report.found] == ["2"]
        assert report.exclusions
        assert all(not tilde_tm.is_admissible(e.factor) for e in report.exclusions)

    def test_chacon_scan_is_conclusive(self):
        lang = generate_language(TildeExtension(inner=CHACON), 48)
        report = tilde_periodic_scan(lang, 6)
        assert report.verdict() == "conclusive"

    def test_full_shift_scan_is_inconclusive(self, tilde_full):
        report = tilde_periodic_scan(tilde_full, 4)
        assert not report.conclusive
        assert "01" in [p.word for p in report.found]

    def test_scan_needs_room(self, tilde_tm):
        with pytest.raises(ResolutionExceededError):
            tilde_periodic_scan(tilde_tm, 17)

    def test_minimality_witness(self, tilde_tm):
        witness = tilde_minimality_witness(tilde_tm)
        assert witness.fixed_point == "2" * 32
        assert witness.missed_cylinder == "0"
        assert witness.verdict() == "not-minimal"


class TestBbar:
    def test_recipe_shape(self, recipe_021):
        assert not recipe_021.degenerate
        assert recipe_021.j == 2
        assert recipe_021.m == 3 + recipe_021.N
        assert len(recipe_021.bbar_prefix) == 10 * recipe_021.m
        assert delete_twos(recipe_021.bbar_prefix) == recipe_021.b_prefix

    def test_recipe_verifies(self, recipe_021, tilde_tm):
        assert verify_bbar(recipe_021, tilde_tm, 8)

    def test_corrupted_recipe_fails(self, recipe_021, tilde_tm):
        corrupted = recipe_021.model_copy(update={"bbar_prefix": "1" + recipe_021.bbar_prefix[1:]})
        assert not verify_bbar(corrupted, tilde_tm, 8)

    def test_prefix_too_short(self, recipe_021, tilde_tm):
        with pytest.raises(PrefixTooShortError):
            verify_bbar(recipe_021, tilde_tm, 20)

    def test_degenerate_cylinder(self, tilde_tm):
        recipe = build_bbar("222", tilde_tm.inner, tilde_tm.orbit_prefix(64), 8)
        assert recipe.degenerate
        assert recipe.m == 1
        assert recipe.bbar_prefix == "2" * 13
        assert omega_limit_trace(recipe, 8).words == ("22222222",)

    def test_inadmissible_cylinder(self, tilde_tm):
        with pytest.raises(InvalidInputError):
            build_bbar("000", tilde_tm.inner, tilde_tm.orbit_prefix(64), 8)

    def test_raised_recurrence_floor(self, tilde_tm, recipe_021):
        raised = build_bbar(
            "021",
            tilde_tm.inner,
            tilde_tm.orbit_prefix(ORBIT_LENGTH),
            8,
            recurrence_floor=recipe_021.N + 3,
        )
        assert raised.m == recipe_021.m + 3
        assert verify_bbar(raised, tilde_tm, 8)

    def test_omega_limit_trace_is_invariant(self, tilde_tm):
        recipe = build_bbar("021", tilde_tm.inner, tilde_tm.orbit_prefix(ORBIT_LENGTH), 8, blocks=480)
        trace, burn_in = omega_limit_sweep(recipe, 8)
        assert burn_in >= 0
        assert all(w.startswith("021") and tilde_tm.is_admissible(w) for w in trace.words)
        assert {w[recipe.m:] for w in trace.words} == {w[:8 - recipe.m] for w in trace.words}

    def test_omega_limit_needs_room(self, recipe_021):
        with pytest.raises(ResolutionExceededError):
            omega_limit_trace(recipe_021, recipe_021.m)
