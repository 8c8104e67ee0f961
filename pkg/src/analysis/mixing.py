"""
Transitivity, Mixing and Sensitivity Certificates

Brute-force gap-word searches over a language. Searches run in canonical
order, so the least gap length and the least witness word are returned.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple, TypeVar

from ..errors import InvalidInputError
from ..shiftspace.language import Language
from ..shiftspace.words import Word, concat, metric_distance
from ..storage.models import (
    Certificate,
    MixingCertificate,
    Resolution,
    SensitivityWitness,
    TransitivityCertificate,
    WeakMixingCertificate,
)

logger = logging.getLogger(__name__)

C = TypeVar("C", bound=Certificate)


def require_admissible(lang: Language, *words: Word) -> None:
    for w in words:
        if not lang.is_admissible(w):
            raise InvalidInputError(f"{w!r} is not admissible in {lang.spec.to_text()}")


def confirmed(lang: Language, certificate: C, words: Iterable[Word]) -> Optional[C]:
    """Return the certificate only if every witness word re-validates as admissible"""
    for w in words:
        if not lang.is_admissible(w):
            logger.warning(f"Discarding {certificate.kind} certificate: witness {w!r} is not admissible")
            return None
    return certificate


def gap_word(lang: Language, u: Word, v: Word, g: int) -> Optional[Word]:
    """Least word w of length g with u w v admissible"""
    for candidate in lang.completions(u, len(u) + g):
        if lang.is_admissible(candidate + v):
            return candidate[len(u):]
    return None


def transitivity_certificate(
    lang: Language, u: Word, v: Word, gap_max: int
) -> Optional[TransitivityCertificate]:
    """
    Least gap connecting u to v

    Args:
        lang: Language searched
        u: Source cylinder word
        v: Target cylinder word
        gap_max: Longest gap tried

    Returns:
        Certificate with the least gap length and witness, or None
    """
    if gap_max < 0:
        raise InvalidInputError(f"gap_max must be non-negative, got {gap_max}")
    lang.check_length(len(u) + len(v) + gap_max, "transitivity search")
    require_admissible(lang, u, v)
    for g in range(gap_max + 1):
        w = gap_word(lang, u, v, g)
        if w is not None:
            certificate = TransitivityCertificate(
                spec=lang.spec.to_text(),
                resolution=Resolution.of(lang),
                u=u,
                v=v,
                gap_max=gap_max,
                gap=g,
                witness=w,
            )
            return confirmed(lang, certificate, [concat(u, concat(w, v))])
    logger.debug(f"No gap up to {gap_max} connects {u!r} to {v!r}")
    return None


def mixing_certificate(lang: Language, u: Word, v: Word, horizon: int) -> Optional[MixingCertificate]:
    """
    Least N such that every n in [N, horizon] has a gap word of length n-1

    Returns None when the horizon itself has no gap word.
    """
    if horizon < 1:
        raise InvalidInputError(f"horizon must be positive, got {horizon}")
    lang.check_length(len(u) + len(v) + horizon, "mixing search")
    require_admissible(lang, u, v)
    gaps = {}
    for n in range(horizon, 0, -1):
        w = gap_word(lang, u, v, n - 1)
        if w is None:
            logger.debug(f"No gap of length {n - 1} between {u!r} and {v!r}")
            break
        gaps[n] = w
    if not gaps:
        return None
    certificate = MixingCertificate(
        spec=lang.spec.to_text(),
        resolution=Resolution.of(lang, horizon=horizon),
        u=u,
        v=v,
        N=min(gaps),
        horizon=horizon,
        gaps=gaps,
    )
    return confirmed(lang, certificate, [concat(u, concat(w, v)) for w in gaps.values()])


def common_gap_alignment(
    lang: Language,
    pairs: Sequence[Tuple[Word, Word]],
    gap_max: int,
    n_min: int = 1,
) -> Optional[Tuple[int, List[Word]]]:
    """
    Least n with a gap word for every pair at the same shift count

    For each pair (u, v) the gap w has length n - |u|, so v starts at
    position n of u w v.
    """
    if not pairs:
        raise InvalidInputError("alignment needs at least one pair")
    lang.check_length(gap_max + max(len(v) for _, v in pairs), "aligned gap search")
    require_admissible(lang, *[w for pair in pairs for w in pair])
    start = max([n_min] + [len(u) for u, _ in pairs])
    for n in range(start, gap_max + 1):
        words = []
        for u, v in pairs:
            w = gap_word(lang, u, v, n - len(u))
            if w is None:
                break
            words.append(w)
        else:
            return n, words
    return None


def weak_mixing_certificate(
    lang: Language, u1: Word, v1: Word, u2: Word, v2: Word, gap_max: int
) -> Optional[WeakMixingCertificate]:
    """Common shift count n <= gap_max moving [u1] into [v1] and [u2] into [v2]"""
    pairs = ((u1, v1), (u2, v2))
    aligned = common_gap_alignment(lang, pairs, gap_max)
    if aligned is None:
        return None
    n, words = aligned
    certificate = WeakMixingCertificate(
        spec=lang.spec.to_text(),
        resolution=Resolution.of(lang),
        pairs=pairs,
        gap_max=gap_max,
        n=n,
        gap_words=tuple(words),
    )
    return confirmed(lang, certificate, [concat(u, concat(w, v)) for (u, v), w in zip(pairs, words)])


def sensitivity_witness(lang: Language, u: Word, steps: int) -> Optional[SensitivityWitness]:
    """
    Two extensions of u separated by at least 1/2 within `steps` shifts

    The first branching position p after u decides the pair; shifting by
    t = max(p-1, 0) puts the difference at index 0 or 1.
    """
    if steps < 0:
        raise InvalidInputError(f"steps must be non-negative, got {steps}")
    length = len(u) + steps
    lang.check_length(length, "sensitivity search")
    require_admissible(lang, u)
    level = [u]
    for p in range(len(u), length):
        t = max(p - 1, 0)
        if t > steps:
            break
        for prefix in level:
            branches = lang.extensions(prefix)
            if len(branches) < 2:
                continue
            x = lang.first_completion(branches[0], length)
            y = lang.first_completion(branches[1], length)
            if x is None or y is None:
                continue
            witness = SensitivityWitness(
                spec=lang.spec.to_text(),
                resolution=Resolution.of(lang),
                u=u,
                steps=steps,
                x_prefix=x,
                y_prefix=y,
                t=t,
                separation=metric_distance(x[t:], y[t:]),
            )
            return confirmed(lang, witness, [x, y])
        level = [e for prefix in level for e in lang.extensions(prefix)]
    logger.debug(f"No branching extension of {u!r} within {steps} steps")
    return None
