"""
Tests for traces, the induced map and hyperspace certificates
"""

from fractions import Fraction
from itertools import chain, combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import (
    InvalidInputError,
    ResolutionExceededError,
    ResolutionExhaustedError,
    SearchSpaceCapExceededError,
)
from src.hyperspace import (
    SearchLimits,
    aligned_word,
    dilatation,
    hausdorff_distance,
    hausdorff_report,
    hyper_mixing_corroboration,
    hyper_periodic_density_check,
    hyper_transitivity_witness,
    hyper_weak_mixing_cross_check,
    induced_shift,
    induced_shift_power,
    invariant_subset_certificate,
    is_shift_invariant,
    sample_vietoris_basics,
    trace_set,
    vietoris_member,
)
from src.shiftspace import generate_language, metric_distance, parse_spec
from src.storage.models import CERTIFIED, TraceSet, VietorisBasic
from src.tilde import build_bbar

WORDS4 = ["".join(w) for w in product("01", repeat=4)]
traces4 = st.sets(st.sampled_from(WORDS4), min_size=1).map(lambda s: TraceSet(resolution=4, words=tuple(s)))
WORDS8 = ["".join(w) for w in product("01", repeat=8)]
traces8 = st.sets(st.sampled_from(WORDS8), min_size=1, max_size=6).map(lambda s: TraceSet(resolution=8, words=tuple(s)))
SMALL = ("0000", "0011", "0100", "1000")


def nonempty_subsets(words):
    return [set(c) for c in chain.from_iterable(combinations(words, r) for r in range(1, len(words) + 1))]


class TestTraces:
    def test_trace_set_validation(self, golden):
        assert trace_set(golden, ["0100", "0010", "0100"]).words == ("0010", "0100")
        with pytest.raises(InvalidInputError):
            trace_set(golden, ["0110"])
        with pytest.raises(InvalidInputError):
            trace_set(golden, ["010", "0100"])

    def test_hausdorff_distance(self, full2):
        a = trace_set(full2, ["0000"])
        b = trace_set(full2, ["0010"])
        assert hausdorff_distance(a, b) == Fraction(1, 3)
        report = hausdorff_report(full2, a, b)
        assert report.witnesses()["distance"] == "1/3"

    def test_hausdorff_is_asymmetric_per_side(self, full2):
        a = trace_set(full2, ["0000", "1000"])
        b = trace_set(full2, ["0000"])
        report = hausdorff_report(full2, a, b)
        assert report.separation_ab == 1
        assert report.separation_ba == 0

    def test_resolutions_must_match(self, full2):
        with pytest.raises(InvalidInputError):
            hausdorff_distance(trace_set(full2, ["00"]), trace_set(full2, ["000"]))

    @settings(max_examples=200)
    @given(traces4, traces4, traces4)
    def test_hausdorff_metric_axioms(self, a, b, c):
        assert (hausdorff_distance(a, b) == 0) == (a == b)
        assert hausdorff_distance(a, b) == hausdorff_distance(b, a)
        assert hausdorff_distance(a, c) <= hausdorff_distance(a, b) + hausdorff_distance(b, c)

    def test_hausdorff_axioms_exhaustive(self):
        """Every pair and triple of nonempty subsets of a four-word language"""
        traces = [TraceSet(resolution=4, words=tuple(s)) for s in nonempty_subsets(SMALL)]
        distance = {(a, b): hausdorff_distance(a, b) for a in traces for b in traces}
        for a, b in product(traces, repeat=2):
            assert (distance[a, b] == 0) == (a == b)
            assert distance[a, b] == distance[b, a]
        for a, b, c in product(traces, repeat=3):
            assert distance[a, c] <= max(distance[a, b], distance[b, c])

    @settings(max_examples=1000, deadline=None)
    @given(traces8, traces8)
    def test_hausdorff_random_pairs(self, a, b):
        d = hausdorff_distance(a, b)
        assert d == hausdorff_distance(b, a)
        assert (d == 0) == (a == b)
        nearest = [min(metric_distance(x, y) for y in b.words) for x in a.words]
        nearest += [min(metric_distance(x, y) for x in a.words) for y in b.words]
        assert d == max(nearest)

    @settings(max_examples=300, deadline=None)
    @given(traces8, traces8, st.sampled_from([Fraction(1, n) for n in range(1, 10)] + [Fraction(2)]))
    def test_hausdorff_below_eps_iff_mutual_dilatation(self, full2, a, b, eps):
        inside_b = set(a.words) <= set(dilatation(full2, b, eps).words)
        inside_a = set(b.words) <= set(dilatation(full2, a, eps).words)
        assert (hausdorff_distance(a, b) < eps) == (inside_a and inside_b)

    @given(traces4, traces4)
    def test_induced_shift_distributes_over_union(self, a, b):
        assert induced_shift(a.union(b)) == induced_shift(a).union(induced_shift(b))
        assert induced_shift_power(a.union(b), 2) == induced_shift_power(a, 2).union(induced_shift_power(b, 2))

    @given(traces4, traces4)
    def test_induced_shift_is_monotone(self, a, b):
        bigger = a.union(b)
        assert set(induced_shift(a).words) <= set(induced_shift(bigger).words)
        assert set(induced_shift_power(a, 3).words) <= set(induced_shift_power(bigger, 3).words)

    def test_dilatation(self, full2):
        a = trace_set(full2, ["01"])
        assert dilatation(full2, a, Fraction(1, 2)).words == ("01",)
        assert dilatation(full2, a, Fraction(1)).words == ("00", "01")
        assert dilatation(full2, a, Fraction(2)).words == ("00", "01", "10", "11")
        with pytest.raises(InvalidInputError):
            dilatation(full2, a, Fraction(0))

    @given(traces4, st.sampled_from([Fraction(1, n) for n in range(1, 6)]))
    def test_dilatation_is_distance_ball(self, a, eps):
        lang = generate_language(parse_spec("full:k=2"), 4)
        ball = dilatation(lang, a, eps)
        expected = {w for w in WORDS4 if any(metric_distance(w, x) < eps for x in a.words)}
        assert set(ball.words) == expected

    def test_induced_shift_consumes_resolution(self):
        a = TraceSet(resolution=2, words=("01", "10"))
        assert induced_shift(a) == TraceSet(resolution=1, words=("0", "1"))
        with pytest.raises(ResolutionExhaustedError):
            induced_shift(induced_shift(a))
        with pytest.raises(ResolutionExhaustedError):
            induced_shift_power(a, 2)

    def test_shift_invariance(self):
        a = TraceSet(resolution=4, words=("0101", "1010"))
        assert is_shift_invariant(a, 1)
        assert is_shift_invariant(a, 2)
        assert not is_shift_invariant(TraceSet(resolution=4, words=("0101",)), 1)

    def test_vietoris_member(self):
        a = TraceSet(resolution=3, words=("010", "100"))
        assert vietoris_member(a, VietorisBasic(cylinders=("0", "1")))
        assert not vietoris_member(a, VietorisBasic(cylinders=("0",)))
        assert not vietoris_member(a, VietorisBasic(cylinders=("0", "1", "11")))
        with pytest.raises(ResolutionExceededError):
            vietoris_member(a, VietorisBasic(cylinders=("0101",)))


class TestInvariantSubsets:
    def test_full_shift_cylinder(self, full2):
        certificate = invariant_subset_certificate(full2, "01", 4, L=8)
        assert certificate.m == 2
        assert certificate.route == "periodic"
        assert certificate.trace.words == ("01010101",)

    def test_golden_mean_cylinder(self, golden):
        certificate = invariant_subset_certificate(golden, "1", 4, L=8)
        assert certificate.m == 2
        assert certificate.trace.words == ("10101010",)

    def test_tilde_fixed_point(self, tilde_tm):
        certificate = invariant_subset_certificate(tilde_tm, "2", 4, L=8)
        assert certificate.m == 1
        assert certificate.trace.words == ("22222222",)

    def test_cycle_search_on_small_pool(self, golden):
        """Without periodic words the exact search over the 8 words of [1] finds 101010"""
        limits = SearchLimits(periodic_search_max=1)
        certificate = invariant_subset_certificate(golden, "1", 3, L=6, limits=limits)
        assert certificate.m == 2
        assert certificate.route == "cycle-search"
        assert certificate.trace.words == ("101010",)

    def test_period_too_long_for_resolution(self, golden):
        with pytest.raises(ResolutionExceededError):
            invariant_subset_certificate(golden, "1", 8, L=8)

    def test_hyper_density_golden_mean(self, golden):
        report = hyper_periodic_density_check(golden, 1, 4, L=8)
        assert report.verdict() == CERTIFIED
        assert report.combined.m_lcm == 2
        assert report.combined.trace.words == ("00000000", "10101010")

    def test_hyper_density_full_shift(self, full2):
        report = hyper_periodic_density_check(full2, 2, 4, L=10)
        assert report.combined is not None
        assert set(report.outcomes) == {"00", "01", "10", "11"}
        assert is_shift_invariant(report.combined.trace, report.combined.m_lcm)


    def test_bbar_route_is_verified(self, tilde_tm):
        recipe = build_bbar("021", tilde_tm.inner, tilde_tm.orbit_prefix(16384), 8)
        certificate = invariant_subset_certificate(tilde_tm, "021", 12, L=16)
        assert certificate.route == "bbar"
        assert certificate.m == recipe.m
        assert certificate.witnesses()["verified_k_max"] == 8
        assert is_shift_invariant(certificate.trace, certificate.m)
        assert all(w.startswith("021") for w in certificate.trace.words)

    def test_unverified_bbar_recipe_is_dropped(self, tilde_tm, mocker):
        check = mocker.patch("src.hyperspace.invariant.verify_bbar", return_value=False)
        with pytest.raises(SearchSpaceCapExceededError):
            invariant_subset_certificate(tilde_tm, "021", 12, L=16)
        assert check.called

    def test_cycle_search_on_finite_type(self):
        lang = generate_language(parse_spec("sft:k=2;forbid=00,11"), 6)
        limits = SearchLimits(periodic_search_max=1)
        certificate = invariant_subset_certificate(lang, "0", 3, L=6, limits=limits)
        assert certificate.route == "cycle-search"
        assert certificate.m == 2
        assert certificate.trace.words == ("010101",)


BRUTE_FORCE_LANGUAGES = [
    ("full:k=2", 4),
    ("sft:k=2;forbid=11", 5),
    ("sft:k=2;forbid=10", 5),
    ("sft:k=2;forbid=000,111", 5),
    ("sft:k=2;forbid=011", 4),
]


def least_invariant_period(words, L):
    """Smallest m admitting an m-invariant subset, by trying every subset"""
    for m in range(1, L):
        for subset in nonempty_subsets(words):
            if {w[m:] for w in subset} == {w[:L - m] for w in subset}:
                return m
    return None


class TestInvariantSubsetsExhaustive:
    @pytest.mark.parametrize("spec,L", BRUTE_FORCE_LANGUAGES)
    def test_least_period_matches_every_subset(self, spec, L):
        lang = generate_language(parse_spec(spec), L)
        report = hyper_periodic_density_check(lang, 1, L - 1, L=L)
        for u in lang.words(1):
            pool = list(lang.completions(u, L))
            assert len(pool) <= 12
            least = least_invariant_period(pool, L)
            assert (report.outcomes[u] is None) == (least is None)
            certificate = invariant_subset_certificate(lang, u, L - 1, L=L)
            assert (certificate.m if certificate else None) == least


class TestHyperTransitivity:
    def test_aligned_word_with_overlap(self, full2):
        assert aligned_word(full2, "01", "10", 1) == "010"
        assert aligned_word(full2, "01", "00", 1) is None
        assert aligned_word(full2, "01", "1", 3) == "0101"

    def test_witness(self, full2):
        witness = hyper_transitivity_witness(
            full2, VietorisBasic(cylinders=("0",)), VietorisBasic(cylinders=("1",)), 3
        )
        assert witness.n == 1
        assert witness.trace.words == ("01",)
        assert vietoris_member(induced_shift_power(witness.trace, witness.n), VietorisBasic(cylinders=("1",)))

    def test_two_cylinder_basics(self, golden):
        source = VietorisBasic(cylinders=("0", "1"))
        target = VietorisBasic(cylinders=("00",))
        witness = hyper_transitivity_witness(golden, source, target, 4)
        assert witness is not None
        assert vietoris_member(witness.trace, source)
        assert vietoris_member(induced_shift_power(witness.trace, witness.n), target)

    def test_inadmissible_basic(self, golden):
        with pytest.raises(InvalidInputError):
            hyper_transitivity_witness(golden, VietorisBasic(cylinders=("11",)), VietorisBasic(cylinders=("0",)), 3)

    def test_mixing_corroboration(self, full2):
        pair = (VietorisBasic(cylinders=("0",)), VietorisBasic(cylinders=("1",)))
        report = hyper_mixing_corroboration(full2, [pair], 3)
        assert report.entries[0].N == 1
        assert report.entries[0].base == {"0|1": 1}
        assert report.verdict() == CERTIFIED

    def test_mixing_corroboration_golden_mean(self, golden):
        pair = (VietorisBasic(cylinders=("1",)), VietorisBasic(cylinders=("1",)))
        entry = hyper_mixing_corroboration(golden, [pair], 5).entries[0]
        assert entry.N == 2
        assert entry.base == {"1|1": 2}

    def test_weak_mixing_cross_check_agrees(self, golden):
        pairs = sample_vietoris_basics(golden, 2, 4)
        report = hyper_weak_mixing_cross_check(golden, pairs, 4)
        assert report.verdict() == "consistent"
        assert all(entry.hyper_n is not None for entry in report.entries)

    def test_sample_is_deterministic(self, golden):
        first = sample_vietoris_basics(golden, 2, 3)
        assert first == sample_vietoris_basics(golden, 2, 3)
        assert first[0] == (VietorisBasic(cylinders=("00",)), VietorisBasic(cylinders=("01", "10")))
