"""
Periodic and Almost Periodic Points

Finite-scale searches for periodic words, their exclusion evidence, the
exact finite-type return test and the recurrence-bound scan of orbit
prefixes.
"""

import logging
from typing import List, Optional, Tuple

import networkx as nx

from ..errors import InvalidInputError
from ..shiftspace.language import FiniteTypeLanguage, Language
from ..shiftspace.words import Word, is_lyndon, periodic_extension
from ..storage.models import AlmostPeriodicityCertificate, PeriodicReturn, PeriodicWord, Resolution

logger = logging.getLogger(__name__)


def periodic_extension_admissible(lang: Language, w: Word) -> bool:
    """True when every depth-length window of w^[inf] is admissible"""
    return all(
        lang.is_admissible(periodic_extension(w, lang.depth, offset)) for offset in range(len(w))
    )


def enumerate_periodic_words(lang: Language, p_max: int) -> List[PeriodicWord]:
    """
    Primitive words whose periodic extension survives at resolution

    One representative (the least rotation) is kept per cycle. Exact for
    finite-type languages once the depth reaches the longest forbidden word;
    a necessary-condition screen otherwise.

    Args:
        lang: Language to scan
        p_max: Largest period considered

    Returns:
        Periodic words ordered by (period, word)
    """
    if p_max < 1:
        raise InvalidInputError(f"p_max must be positive, got {p_max}")
    lang.check_length(p_max, "period")
    found = [
        PeriodicWord(word=w, period=p)
        for p in range(1, p_max + 1)
        for w in lang.words(p)
        if is_lyndon(w) and periodic_extension_admissible(lang, w)
    ]
    logger.debug(f"{lang.spec.to_text()}: {len(found)} periodic words with period <= {p_max}")
    return found


def is_exact_periodic_scan(lang: Language) -> bool:
    return isinstance(lang, FiniteTypeLanguage) and lang.depth >= lang.memory


def inadmissible_factor(lang: Language, w: Word) -> Optional[Tuple[Word, int]]:
    """Shortest inadmissible factor of w^[inf] (least offset on ties), if any within resolution"""
    for length in range(1, lang.depth + 1):
        for offset in range(len(w)):
            factor = periodic_extension(w, length, offset)
            if not lang.is_admissible(factor):
                return factor, offset
    return None


def _return_word(lang: FiniteTypeLanguage, u: Word) -> Optional[Word]:
    """Shortest z with u z u forbidden-free, for |u| at least the state length"""
    s = lang.state_length
    if s == 0:
        return ""
    start = u[len(u) - s:]
    if start not in lang.graph:
        return None
    paths = nx.shortest_path(lang.graph, source=start)
    returns = [path for state, path in paths.items() if lang.avoids_forbidden(state + u)]
    if not returns:
        return None
    path = min(returns, key=lambda p: (len(p), p))
    return "".join(state[-1] for state in path[1:])


def periodic_return_refutation(lang: FiniteTypeLanguage, u: Word) -> PeriodicReturn:
    """
    Decide whether the cylinder [u] of a finite-type shift holds a periodic point

    [u] is split into its completions of length M-1; for each, a return word z
    with u z u forbidden-free is searched on the state graph, so the answer is
    exact rather than bounded by a period cap.
    """
    if not isinstance(lang, FiniteTypeLanguage):
        raise InvalidInputError("periodic return refutation needs a finite-type language")
    resolution = Resolution.of(lang)
    target_length = max(len(u), lang.state_length)
    lang.check_length(target_length, "return search")
    for completion in lang.completions(u, target_length):
        z = _return_word(lang, completion)
        if z is not None:
            return PeriodicReturn(
                spec=lang.spec.to_text(),
                resolution=resolution,
                u=u,
                found=True,
                return_word=z,
                period_word=completion + z,
            )
    logger.info(f"No periodic point in [{u}] of {lang.spec.to_text()}")
    return PeriodicReturn(spec=lang.spec.to_text(), resolution=resolution, u=u, found=False)


def almost_periodicity_certificate(
    orbit_prefix: Word,
    j: int,
    N_max: int,
    spec: str = "orbit",
) -> Optional[AlmostPeriodicityCertificate]:
    """
    Least recurrence bound of the length-j prefix along an orbit prefix

    N is certified when every window of length N+j contains an occurrence of
    the prefix starting inside it. Only the scanned range is claimed.

    Args:
        orbit_prefix: Prefix of the orbit to scan
        j: Length of the recurring prefix
        N_max: Largest bound tried
        spec: Text of the originating spec, for the certificate

    Returns:
        The certificate, or None when no N <= N_max works on the scanned range
    """
    length = len(orbit_prefix)
    if j < 1 or j > length:
        raise InvalidInputError(f"prefix length j={j} must be in 1..{length}")
    if N_max < 1:
        raise InvalidInputError(f"N_max must be positive, got {N_max}")
    if length < N_max + 2 * j:
        raise InvalidInputError(f"orbit prefix of {length} symbols is too short for N_max={N_max} and j={j}")

    prefix = orbit_prefix[:j]
    last_start = length - j
    occurrences = [i for i in range(last_start + 1) if orbit_prefix.startswith(prefix, i)]

    # distance from each start to the next occurrence, as a running maximum
    unbounded = length + 1
    next_occurrence = [unbounded] * (last_start + 2)
    for i in range(last_start, -1, -1):
        next_occurrence[i] = i if orbit_prefix.startswith(prefix, i) else next_occurrence[i + 1]
    running_max: List[int] = []
    worst = 0
    for i in range(last_start + 1):
        distance = next_occurrence[i] - i if next_occurrence[i] != unbounded else unbounded
        worst = max(worst, distance)
        running_max.append(worst)

    for N in range(1, N_max + 1):
        if running_max[length - N - j] <= N:
            logger.debug(f"Prefix {prefix!r} recurs within N={N} on {length} symbols")
            return AlmostPeriodicityCertificate(
                spec=spec,
                resolution=Resolution(depth=length, j=j),
                prefix=prefix,
                prefix_length=j,
                N=N,
                N_max=N_max,
                scanned_to=length,
                occurrences=tuple(occurrences),
            )
    logger.debug(f"Prefix {prefix!r} has gaps beyond N_max={N_max} on {length} symbols")
    return None
