"""
Hyperspace Transitivity and Mixing

Witnesses for the induced map on traces: a trace A in B(U) whose n-th
induced shift lies in B(V). Each cylinder of U must reach some cylinder of
V and each cylinder of V must be reached, all with the same n.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..analysis.mixing import gap_word, mixing_certificate
from ..errors import InvalidInputError
from ..shiftspace.language import Language, TildeLanguage
from ..shiftspace.words import Word
from ..storage.models import (
    CrossCheckEntry,
    HyperMixingEntry,
    HyperMixingReport,
    HyperTransitivityWitness,
    Resolution,
    TraceSet,
    VietorisBasic,
    WeakMixingCrossCheck,
)
from ..tilde.extension import tilde_mixing_certificate
from .traces import induced_shift_power, vietoris_member

logger = logging.getLogger(__name__)

BasicPair = Tuple[VietorisBasic, VietorisBasic]


def aligned_word(lang: Language, g: Word, h: Word, n: int) -> Optional[Word]:
    """
    Shortest admissible x in [g] with x[n:] in [h]

    Overlapping placements (n < |g|) must agree symbol for symbol.
    """
    if n >= len(g):
        w = gap_word(lang, g, h, n - len(g))
        return None if w is None else g + w + h
    overlap = g[n:]
    if len(h) >= len(overlap):
        if not h.startswith(overlap):
            return None
        x = g + h[len(overlap):]
    else:
        if not overlap.startswith(h):
            return None
        x = g
    return x if lang.is_admissible(x) else None


def _partners(lang: Language, source: VietorisBasic, target: VietorisBasic, n: int) -> Optional[List[Word]]:
    words: List[Word] = []
    for g in source.cylinders:
        x = next((x for x in (aligned_word(lang, g, h, n) for h in target.cylinders) if x is not None), None)
        if x is None:
            return None
        words.append(x)
    for h in target.cylinders:
        x = next((x for x in (aligned_word(lang, g, h, n) for g in source.cylinders) if x is not None), None)
        if x is None:
            return None
        words.append(x)
    return words


def _check_basics(lang: Language, source: VietorisBasic, target: VietorisBasic, n_max: int) -> None:
    for base in source.cylinders + target.cylinders:
        if not lang.is_admissible(base):
            raise InvalidInputError(f"cylinder [{base}] is not admissible in {lang.spec.to_text()}")
    reach = max([n_max + max(len(h) for h in target.cylinders), n_max + 1] + [len(g) for g in source.cylinders])
    lang.check_length(reach, "hyperspace search")


def hyper_transitivity_at(lang: Language, source: VietorisBasic, target: VietorisBasic, n: int) -> Optional[TraceSet]:
    """Trace in B(U) whose n-th induced shift lies in B(V), if one exists"""
    words = _partners(lang, source, target, n)
    if words is None:
        return None
    width = max([n + 1] + [len(x) for x in words])
    padded = [lang.first_completion(x, width) for x in words]
    if any(x is None for x in padded):
        return None
    trace = TraceSet(resolution=width, words=tuple(x for x in padded if x is not None))
    if vietoris_member(trace, source) and vietoris_member(induced_shift_power(trace, n), target):
        return trace
    logger.warning(f"Discarding trace for {source.label} -> {target.label} at n={n}: Vietoris check failed")
    return None


def hyper_transitivity_witness(
    lang: Language,
    source: VietorisBasic,
    target: VietorisBasic,
    n_max: int,
    n_min: int = 1,
) -> Optional[HyperTransitivityWitness]:
    """
    Least n in [n_min, n_max] moving some trace of B(U) into B(V)

    Args:
        lang: Language of the base system
        source: Vietoris basic set U
        target: Vietoris basic set V
        n_max: Largest number of induced shifts tried
        n_min: Smallest number of induced shifts tried

    Returns:
        The witness with its starting trace, or None
    """
    _check_basics(lang, source, target, n_max)
    for n in range(n_min, n_max + 1):
        trace = hyper_transitivity_at(lang, source, target, n)
        if trace is not None:
            return HyperTransitivityWitness(
                spec=lang.spec.to_text(),
                resolution=Resolution.of(lang),
                source=source,
                target=target,
                n_max=n_max,
                n=n,
                trace=trace,
            )
    logger.debug(f"No hyperspace witness {source.label} -> {target.label} up to n={n_max}")
    return None


def base_mixing_bound(lang: Language, u: Word, v: Word, horizon: int) -> Optional[int]:
    """Mixing N of a cylinder pair; tilde languages use the padded construction"""
    if isinstance(lang, TildeLanguage):
        certificate = tilde_mixing_certificate(lang, u, v, horizon)
    else:
        certificate = mixing_certificate(lang, u, v, horizon)
    return certificate.N if certificate is not None else None


def hyper_mixing_corroboration(
    lang: Language, pairs: Sequence[BasicPair], horizon: int
) -> HyperMixingReport:
    """
    Per pair (U, V): least N with a witness at every n in [N, horizon]

    Reported next to the base mixing N of every constituent cylinder pair.
    """
    if horizon < 1:
        raise InvalidInputError(f"horizon must be positive, got {horizon}")
    base_cache: Dict[str, Optional[int]] = {}
    entries = []
    for source, target in pairs:
        _check_basics(lang, source, target, horizon)
        N = None
        for n in range(horizon, 0, -1):
            if hyper_transitivity_at(lang, source, target, n) is None:
                break
            N = n
        base = {}
        for g in source.cylinders:
            for h in target.cylinders:
                key = f"{g}|{h}"
                if key not in base_cache:
                    base_cache[key] = base_mixing_bound(lang, g, h, horizon)
                base[key] = base_cache[key]
        logger.debug(f"{source.label} -> {target.label}: N={N}")
        entries.append(HyperMixingEntry(source=source, target=target, N=N, base=base))
    return HyperMixingReport(
        spec=lang.spec.to_text(),
        resolution=Resolution.of(lang, horizon=horizon),
        horizon=horizon,
        entries=tuple(entries),
    )


def _aligned_gaps_solvable(lang: Language, source: VietorisBasic, target: VietorisBasic, n: int) -> bool:
    def solvable(g: Word, h: Word) -> bool:
        return gap_word(lang, g, h, n - len(g)) is not None

    return all(any(solvable(g, h) for h in target.cylinders) for g in source.cylinders) and all(
        any(solvable(g, h) for g in source.cylinders) for h in target.cylinders
    )


def hyper_weak_mixing_cross_check(
    lang: Language, pairs: Sequence[BasicPair], n_max: int
) -> WeakMixingCrossCheck:
    """
    Compare hyperspace witnesses with the aligned base gap problems

    Both sides look for the least common shift count n >= the longest
    source cylinder; a disagreement means one of the two searches is wrong.
    """
    entries = []
    for source, target in pairs:
        n_min = max([1] + [len(g) for g in source.cylinders])
        witness = hyper_transitivity_witness(lang, source, target, n_max, n_min=n_min)
        base_n = next(
            (n for n in range(n_min, n_max + 1) if _aligned_gaps_solvable(lang, source, target, n)), None
        )
        entries.append(
            CrossCheckEntry(
                source=source,
                target=target,
                hyper_n=witness.n if witness is not None else None,
                base_n=base_n,
            )
        )
    report = WeakMixingCrossCheck(
        spec=lang.spec.to_text(),
        resolution=Resolution.of(lang),
        n_max=n_max,
        entries=tuple(entries),
    )
    if report.verdict() != "consistent":
        logger.warning(f"Hyperspace and base alignment disagree for {lang.spec.to_text()}")
    return report


def sample_vietoris_basics(lang: Language, length: int, limit: int) -> List[BasicPair]:
    """Deterministic sample of basic-set pairs over the length-`length` cylinders"""
    words = lang.words(length)
    basics = [VietorisBasic(cylinders=(w,)) for w in words]
    basics += [VietorisBasic(cylinders=(a, b)) for a, b in zip(words, words[1:])]
    return list(zip(basics, reversed(basics)))[:limit]
