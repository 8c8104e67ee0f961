"""
Tilde Extension

The ternary space obtained by padding points of a binary minimal subshift
with the symbol 2: its language, padded mixing certificates, the
unique-periodic-point scan and the non-minimality witness.
"""

import logging
from typing import List, Optional

from ..analysis.mixing import confirmed, gap_word, require_admissible
from ..analysis.periodic import enumerate_periodic_words, inadmissible_factor
from ..errors import InvalidInputError, ResolutionExceededError
from ..shiftspace.language import Language, TildeLanguage, tilde_of
from ..shiftspace.words import Word, concat, delete_twos, is_lyndon
from ..storage.models import (
    Exclusion,
    MinimalityWitness,
    MixingCertificate,
    Resolution,
    TildePeriodicScanReport,
)

logger = logging.getLogger(__name__)

PAD = "2"


def tilde_language(inner: Language, depth: int) -> TildeLanguage:
    """
    Tilde language over a binary inner language

    Args:
        inner: Binary language, at least as deep as the requested depth
        depth: Resolution L of the tilde language

    Returns:
        Language of words whose 2-deletion is admissible in the inner language
    """
    if inner.depth < depth:
        raise ResolutionExceededError("inner language too shallow for the tilde language", depth, inner.depth)
    return tilde_of(inner, depth)


def _require_tilde(lang: Language) -> TildeLanguage:
    if not isinstance(lang, TildeLanguage):
        raise InvalidInputError(f"{lang.spec.to_text()} is not a tilde extension")
    return lang


def connecting_word(inner: Language, u: Word, v: Word) -> Optional[Word]:
    """Shortest inner word z with u z v admissible"""
    for g in range(inner.depth - len(u) - len(v) + 1):
        z = gap_word(inner, u, v, g)
        if z is not None:
            return z
    return None


def tilde_mixing_certificate(
    tlang: Language, u: Word, v: Word, horizon: int
) -> Optional[MixingCertificate]:
    """
    Mixing certificate built by padding one inner connecting word with 2s

    Gap lengths at least |z| are realized as z followed by 2s; shorter gaps
    fall back to brute force.
    """
    tlang = _require_tilde(tlang)
    if horizon < 1:
        raise InvalidInputError(f"horizon must be positive, got {horizon}")
    tlang.check_length(len(u) + len(v) + horizon, "mixing search")
    require_admissible(tlang, u, v)

    z = connecting_word(tlang.inner, delete_twos(u), delete_twos(v))
    if z is None:
        logger.info(f"No inner connecting word for {u!r} -> {v!r}; padding unavailable")
    gaps = {}
    for n in range(horizon, 0, -1):
        g = n - 1
        if z is not None and g >= len(z):
            w: Optional[Word] = z + PAD * (g - len(z))
        else:
            w = gap_word(tlang, u, v, g)
        if w is None:
            break
        gaps[n] = w
    if not gaps:
        return None
    certificate = MixingCertificate(
        spec=tlang.spec.to_text(),
        resolution=Resolution.of(tlang, horizon=horizon),
        u=u,
        v=v,
        N=min(gaps),
        horizon=horizon,
        gaps=gaps,
        construction="padded" if z is not None else "search",
        connecting_word=z,
    )
    return confirmed(tlang, certificate, [concat(u, concat(w, v)) for w in gaps.values()])


def _lyndon_words(symbols: str, p_max: int) -> List[Word]:
    words: List[Word] = []
    level = [""]
    for _ in range(p_max):
        level = [w + s for w in level for s in symbols]
        words.extend(w for w in level if is_lyndon(w))
    return words


def tilde_periodic_scan(tlang: Language, p_max: int) -> TildePeriodicScanReport:
    """
    Scan every primitive ternary word up to p_max for a surviving periodic extension

    Each candidate containing a non-2 symbol that fails is recorded with the
    shortest inadmissible factor of its periodic extension and its offset.
    The scan is conclusive when no such candidate survives.
    """
    tlang = _require_tilde(tlang)
    if 2 * p_max > tlang.depth:
        raise ResolutionExceededError(f"periodic scan up to {p_max} needs depth {2 * p_max}", 2 * p_max, tlang.depth)
    found = enumerate_periodic_words(tlang, p_max)
    found_words = {p.word for p in found}
    exclusions = []
    for candidate in _lyndon_words(tlang.symbols, p_max):
        if candidate in found_words or set(candidate) == {PAD}:
            continue
        evidence = inadmissible_factor(tlang, candidate)
        if evidence is not None:
            factor, offset = evidence
            exclusions.append(Exclusion(word=candidate, factor=factor, offset=offset))
    conclusive = all(set(p.word) == {PAD} for p in found)
    logger.info(
        f"Periodic scan of {tlang.spec.to_text()} up to {p_max}: "
        f"{len(found)} found, {len(exclusions)} excluded, conclusive={conclusive}"
    )
    return TildePeriodicScanReport(
        spec=tlang.spec.to_text(),
        resolution=Resolution.of(tlang),
        p_max=p_max,
        found=tuple(found),
        exclusions=tuple(exclusions),
        conclusive=conclusive,
    )


def tilde_minimality_witness(tlang: Language) -> MinimalityWitness:
    """The fixed point 2^[inf] and a cylinder its orbit closure never meets"""
    tlang = _require_tilde(tlang)
    fixed_point = PAD * tlang.depth
    missed = next(s for s in tlang.inner.symbols if tlang.is_admissible(s))
    return MinimalityWitness(
        spec=tlang.spec.to_text(),
        resolution=Resolution.of(tlang),
        fixed_point=fixed_point,
        missed_cylinder=missed,
    )
