"""
Trace Sets and the Hausdorff Metric

Compact subsets of a subshift are represented by their traces: the sets
of length-L prefixes of their points. The induced shift consumes one
symbol of resolution per application.
"""

import logging
from fractions import Fraction
from math import floor
from typing import Iterable

from pydantic import ValidationError

from ..errors import InvalidInputError, ResolutionExceededError, ResolutionExhaustedError
from ..shiftspace.language import Language
from ..shiftspace.words import Word, metric_distance, shift_word
from ..storage.models import HausdorffReport, Resolution, TraceSet, VietorisBasic

logger = logging.getLogger(__name__)


def trace_set(lang: Language, words: Iterable[Word]) -> TraceSet:
    """Validated trace: nonempty, equal lengths, every word admissible"""
    try:
        trace = TraceSet.of(words)
    except ValidationError as exc:
        raise InvalidInputError(f"invalid trace: {exc.errors()[0]['msg']}") from None
    for w in trace.words:
        if not lang.is_admissible(w):
            raise InvalidInputError(f"trace word {w!r} is not admissible in {lang.spec.to_text()}")
    return trace


def separation(a: TraceSet, b: TraceSet) -> Fraction:
    """rho(A, B): how far the farthest word of A is from B"""
    return max(min(metric_distance(x, y) for y in b.words) for x in a.words)


def _require_same_resolution(a: TraceSet, b: TraceSet) -> None:
    if a.resolution != b.resolution:
        raise InvalidInputError(f"trace resolutions differ: {a.resolution} and {b.resolution}")


def hausdorff_distance(a: TraceSet, b: TraceSet) -> Fraction:
    """Exact Hausdorff distance max(rho(A,B), rho(B,A)) of two traces"""
    _require_same_resolution(a, b)
    return max(separation(a, b), separation(b, a))


def hausdorff_report(lang: Language, a: TraceSet, b: TraceSet) -> HausdorffReport:
    _require_same_resolution(a, b)
    return HausdorffReport(
        spec=lang.spec.to_text(),
        resolution=Resolution.of(lang),
        a=a,
        b=b,
        separation_ab=separation(a, b),
        separation_ba=separation(b, a),
    )


def dilatation(lang: Language, a: TraceSet, eps: Fraction) -> TraceSet:
    """
    All admissible length-L words at distance < eps from some word of A

    Distance below eps means agreeing on the first floor(1/eps) symbols.
    """
    if eps <= 0:
        raise InvalidInputError(f"eps must be positive, got {eps}")
    lang.check_length(a.resolution, "trace")
    if eps > 1:
        return TraceSet(resolution=a.resolution, words=lang.words(a.resolution))
    agree = min(floor(1 / eps), a.resolution)
    words = {w for x in a.words for w in lang.completions(x[:agree], a.resolution)}
    return TraceSet(resolution=a.resolution, words=tuple(words))


def induced_shift(a: TraceSet) -> TraceSet:
    """Elementwise shift; one symbol of resolution is consumed"""
    if a.resolution == 1:
        raise ResolutionExhaustedError("the induced shift needs resolution at least 2")
    return TraceSet(resolution=a.resolution - 1, words=tuple(shift_word(w) for w in a.words))


def induced_shift_power(a: TraceSet, m: int) -> TraceSet:
    if m >= a.resolution:
        raise ResolutionExhaustedError(f"{m} induced shifts exhaust resolution {a.resolution}")
    return TraceSet(resolution=a.resolution - m, words=tuple(w[m:] for w in a.words))


def truncate(a: TraceSet, length: int) -> TraceSet:
    if not 1 <= length <= a.resolution:
        raise InvalidInputError(f"cannot truncate resolution {a.resolution} to {length}")
    return TraceSet(resolution=length, words=tuple(w[:length] for w in a.words))


def is_shift_invariant(a: TraceSet, m: int) -> bool:
    """m induced shifts reproduce the (L-m)-truncation of the trace"""
    if not 1 <= m < a.resolution:
        return False
    return induced_shift_power(a, m) == truncate(a, a.resolution - m)


def vietoris_member(a: TraceSet, basic: VietorisBasic) -> bool:
    """A lies in B(G_1..G_n): every word extends some G_i and every G_i is met"""
    for base in basic.cylinders:
        if len(base) > a.resolution:
            raise ResolutionExceededError(f"cylinder [{base}] is longer than the trace", len(base), a.resolution)
    inside = all(any(w.startswith(g) for g in basic.cylinders) for w in a.words)
    meets = all(any(w.startswith(g) for w in a.words) for g in basic.cylinders)
    return inside and meets
