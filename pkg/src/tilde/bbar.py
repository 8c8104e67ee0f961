"""
The b-bar Construction

Given a cylinder U of the tilde space, builds a padded point b-bar whose
m-step shifts all return to U, and extracts the finite trace of its
omega-limit set under the m-th power of the shift.

Block k of b-bar (length m = n + N) is the cylinder word, then the inner
symbols between the k-th and (k+1)-th return of the matched prefix, then 2s.
"""

import logging
from typing import List, Optional, Tuple

from ..analysis.periodic import almost_periodicity_certificate
from ..errors import (
    InvalidInputError,
    MatchFailureError,
    NeedsLongerPrefixError,
    PrefixTooShortError,
    RecurrenceFailureError,
    ResolutionExceededError,
)
from ..shiftspace.language import Language
from ..shiftspace.words import Word, alphabet, delete_twos
from ..storage.models import BbarRecipe, Resolution, TraceSet

logger = logging.getLogger(__name__)

PAD = "2"


def build_bbar(
    cylinder: Word,
    inner: Language,
    orbit_prefix: Word,
    horizon: int,
    recurrence_max: int = 64,
    recurrence_floor: int = 0,
    blocks: Optional[int] = None,
) -> BbarRecipe:
    """
    Construct the b-bar recipe for a tilde cylinder

    Args:
        cylinder: Ternary cylinder word, admissible in the tilde language
        inner: Binary inner language
        orbit_prefix: Prefix of an inner orbit used to locate b and its returns
        horizon: Number of returns the recipe must support
        recurrence_max: Largest recurrence bound N scanned for
        recurrence_floor: Lower bound imposed on N (raises the period m)
        blocks: Number of m-blocks emitted; defaults to horizon + 2

    Returns:
        BbarRecipe with the emitted prefix of b-bar
    """
    if not cylinder or any(s not in alphabet(3) for s in cylinder):
        raise InvalidInputError(f"cylinder must be a nonempty word over 012, got {cylinder!r}")
    if not inner.is_admissible(delete_twos(cylinder)):
        raise InvalidInputError(f"cylinder {cylinder!r} is not admissible in the tilde language")
    blocks = horizon + 2 if blocks is None else blocks
    if blocks < 1:
        raise InvalidInputError(f"blocks must be positive, got {blocks}")
    spec = f"tilde({inner.spec.to_text()})"
    resolution = Resolution(depth=inner.depth, horizon=horizon)
    n = len(cylinder)
    pattern = delete_twos(cylinder)

    if not pattern:
        logger.debug(f"Cylinder {cylinder!r} is all 2s; using the fixed point")
        return BbarRecipe(
            spec=spec,
            resolution=resolution,
            cylinder=cylinder,
            j=0,
            b_prefix="",
            match_offset=0,
            return_times=(),
            recurrence_N=0,
            N=0,
            m=1,
            bbar_prefix=PAD * (blocks + n),
            degenerate=True,
        )

    j = len(pattern)
    offset = orbit_prefix.find(pattern)
    if offset < 0:
        raise MatchFailureError(f"{pattern!r} does not occur in the {len(orbit_prefix)}-symbol orbit prefix")
    b = orbit_prefix[offset:]

    N_max = min(recurrence_max, len(b) - 2 * j)
    if N_max < 1:
        raise RecurrenceFailureError(f"orbit prefix too short to scan recurrence of {pattern!r}")
    certificate = almost_periodicity_certificate(b, j, N_max, spec=inner.spec.to_text())
    if certificate is None:
        raise RecurrenceFailureError(f"recurrence of {pattern!r} not certified up to N={N_max}")
    N = max(certificate.N, recurrence_floor)
    m = n + N

    times = [0]
    for occurrence in certificate.occurrences:
        if len(times) > blocks:
            break
        if occurrence >= times[-1] + j:
            if occurrence - times[-1] > certificate.N + j:
                raise RecurrenceFailureError(f"return gap after {times[-1]} exceeds N+j={certificate.N + j}")
            times.append(occurrence)
    if len(times) <= blocks:
        raise RecurrenceFailureError(f"only {len(times)} returns of {pattern!r} found, {blocks + 1} needed")

    parts = []
    for k in range(blocks):
        middle = b[times[k] + j:times[k + 1]]
        parts.append(cylinder + middle + PAD * (m - n - len(middle)))
    bbar_prefix = "".join(parts)

    logger.info(f"b-bar for [{cylinder}]: j={j}, N={N}, m={m}, {blocks} blocks")
    return BbarRecipe(
        spec=spec,
        resolution=resolution,
        cylinder=cylinder,
        j=j,
        b_prefix=b[:times[blocks]],
        match_offset=offset,
        return_times=tuple(times),
        recurrence_N=certificate.N,
        N=N,
        m=m,
        bbar_prefix=bbar_prefix,
    )


def verify_bbar(recipe: BbarRecipe, tlang: Language, k_max: int) -> bool:
    """
    Independently check a recipe against the tilde language

    True iff every window at offset k*m (k <= k_max) extends the cylinder and
    every depth-length factor of the prefix is admissible.
    """
    n = len(recipe.cylinder)
    needed = (k_max + 1) * recipe.m + n
    bbar = recipe.bbar_prefix
    if len(bbar) < needed:
        raise PrefixTooShortError(f"b-bar prefix has {len(bbar)} symbols, {needed} needed for k_max={k_max}")
    for k in range(k_max + 1):
        start = k * recipe.m
        if bbar[start:start + n] != recipe.cylinder:
            logger.warning(f"b-bar window at {start} leaves [{recipe.cylinder}]")
            return False
    width = min(tlang.depth, len(bbar))
    for i in range(len(bbar) - width + 1):
        if not tlang.is_admissible(bbar[i:i + width]):
            logger.warning(f"b-bar factor at {i} is not admissible")
            return False
    return True


def omega_limit_sweep(recipe: BbarRecipe, L: int) -> Tuple[TraceSet, int]:
    """
    Omega-limit trace of b-bar under the m-th shift power, with its burn-in

    Windows W_k of length L sit at offsets k*m. The burn-in k0 is the least
    index where, splitting the remaining windows into three equal sweeps,
    the later sweeps add nothing to the first and the (L-m)-truncations of
    W_k0..W_k1 and W_k0+1..W_k1+1 agree.
    """
    m = recipe.m
    if L <= m:
        raise ResolutionExceededError(f"omega-limit trace needs L > m={m}", m + 1, L)
    bbar = recipe.bbar_prefix
    count = (len(bbar) - L) // m + 1 if len(bbar) >= L else 0
    windows: List[Word] = [bbar[k * m:k * m + L] for k in range(count)]
    cut = L - m
    for k0 in range(count):
        sweep = (count - k0) // 3
        if sweep < 1:
            break
        first = set(windows[k0:k0 + sweep])
        if not set(windows[k0 + sweep:k0 + 3 * sweep]) <= first:
            continue
        head = {w[:cut] for w in windows[k0:k0 + sweep]}
        shifted = {w[:cut] for w in windows[k0 + 1:k0 + sweep + 1]}
        if head == shifted:
            logger.debug(f"omega-limit of [{recipe.cylinder}] stable after burn-in {k0}: {len(first)} windows")
            return TraceSet(resolution=L, words=tuple(first)), k0
    raise NeedsLongerPrefixError(
        f"windows of length {L} at offsets k*{m} did not stabilize within {count} blocks of [{recipe.cylinder}]"
    )


def omega_limit_trace(recipe: BbarRecipe, L: int) -> TraceSet:
    """Finite trace of the omega-limit set of b-bar under the m-th power of the shift"""
    return omega_limit_sweep(recipe, L)[0]
