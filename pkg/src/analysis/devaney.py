"""
Devaney Verdict

Composes transitivity, periodic density and sensitivity over every
cylinder of depth at most j into a single verdict.
"""

import logging
from typing import Dict, List, Optional, Tuple

from ..errors import InvalidInputError, ResolutionExceededError
from ..shiftspace.language import FiniteTypeLanguage, Language
from ..shiftspace.words import periodic_extension
from ..storage.models import (
    CERTIFIED,
    REFUTED,
    DevaneyVerdict,
    PeriodicDensityCertificate,
    PeriodicReturn,
    Resolution,
    SensitivityWitness,
    TransitivityCertificate,
)
from .mixing import sensitivity_witness, transitivity_certificate
from .periodic import enumerate_periodic_words, periodic_return_refutation

logger = logging.getLogger(__name__)

NOT_CERTIFIED = "not-certified-at-resolution"


def _transitivity(
    lang: Language, cylinders: List[str], horizon: int
) -> Tuple[Optional[Tuple[TransitivityCertificate, ...]], Optional[Tuple[str, str]]]:
    certificates = []
    for u in cylinders:
        for v in cylinders:
            gap_max = min(horizon, lang.depth - len(u) - len(v))
            if gap_max < 0:
                raise ResolutionExceededError(
                    f"cylinders {u!r} and {v!r} do not fit", len(u) + len(v), lang.depth
                )
            certificate = transitivity_certificate(lang, u, v, gap_max)
            if certificate is None:
                logger.info(f"Transitivity not certified for [{u}] -> [{v}]")
                return None, (u, v)
            certificates.append(certificate)
    return tuple(certificates), None


def periodic_cover(lang: Language, j: int, p_max: int) -> Dict[str, Tuple[str, int]]:
    """Map each depth-j cylinder met by an enumerated periodic word to (word, offset)"""
    cover: Dict[str, Tuple[str, int]] = {}
    for periodic in enumerate_periodic_words(lang, p_max):
        for offset in range(periodic.period):
            cover.setdefault(periodic_extension(periodic.word, j, offset), (periodic.word, offset))
    return cover


def devaney_verdict(lang: Language, j: int, horizon: int, p_max: int = 6) -> DevaneyVerdict:
    """
    Certify or refute Devaney chaos at resolution (L, j, horizon)

    Args:
        lang: Language of the base system
        j: Cylinder depth
        horizon: Longest gap / number of shifts searched
        p_max: Largest period enumerated for periodic density

    Returns:
        DevaneyVerdict with every sub-certificate embedded
    """
    if j < 1 or horizon < 1 or p_max < 1:
        raise InvalidInputError("j, horizon and p_max must be positive")
    lang.check_length(j, "cylinder depth")
    spec = lang.spec.to_text()
    logger.info(f"Devaney check for {spec} at L={lang.depth}, j={j}, horizon={horizon}")

    cylinders = [w for n in range(1, j + 1) for w in lang.words(n)]
    transitive, transitive_failure = _transitivity(lang, cylinders, horizon)

    top = list(lang.words(j))
    cover = periodic_cover(lang, j, min(p_max, lang.depth))
    missing = tuple(c for c in top if c not in cover)
    density = None
    if not missing:
        density = PeriodicDensityCertificate(
            spec=spec,
            resolution=Resolution.of(lang, j=j),
            p_max=p_max,
            cylinders={c: cover[c] for c in top},
        )
    else:
        logger.info(f"{len(missing)} of {len(top)} cylinders hold no periodic word of period <= {p_max}")

    refutation: Optional[PeriodicReturn] = None
    if missing and isinstance(lang, FiniteTypeLanguage):
        for c in missing:
            result = periodic_return_refutation(lang, c)
            if result.verdict() == REFUTED:
                refutation = result
                break

    steps = min(horizon, lang.depth - j)
    witnesses: List[SensitivityWitness] = []
    insensitive = None
    for c in top:
        witness = sensitivity_witness(lang, c, steps)
        if witness is None:
            insensitive = c
            break
        witnesses.append(witness)

    if transitive is not None and density is not None:
        outcome = CERTIFIED
    elif refutation is not None:
        outcome = REFUTED
    else:
        outcome = NOT_CERTIFIED
    logger.info(f"Devaney verdict for {spec}: {outcome}")

    return DevaneyVerdict(
        spec=spec,
        resolution=Resolution.of(lang, j=j, horizon=horizon),
        transitive=transitive,
        transitive_failure=transitive_failure,
        periodically_dense=density,
        density_missing=missing,
        sensitive=tuple(witnesses) if insensitive is None else None,
        insensitive_cylinder=insensitive,
        refutation=refutation,
        outcome=outcome,
    )
