"""
Invariant Subsets and Hyperspace Periodic Density

A trace W inside a cylinder [u] is m-invariant when m induced shifts give
back its (L-m)-truncation. Periods are searched in increasing order along
three routes: periodic words, the b-bar omega-limit (tilde languages with a
distinguished orbit), and an exact cycle search over small candidate pools.
"""

import logging
from functools import reduce
from itertools import islice
from math import lcm
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict

from ..analysis.periodic import enumerate_periodic_words
from ..errors import (
    InvalidInputError,
    MatchFailureError,
    NeedsLongerPrefixError,
    PrefixTooShortError,
    RecurrenceFailureError,
    ResolutionExceededError,
    SearchSpaceCapExceededError,
)
from ..shiftspace.language import Language, TildeLanguage, prune_stranded
from ..shiftspace.words import Word, periodic_extension
from ..storage.models import (
    BbarRecipe,
    CombinedTrace,
    HyperPeriodicDensityReport,
    InvariantSubsetCertificate,
    PeriodicWord,
    Resolution,
    TraceSet,
)
from ..tilde.bbar import build_bbar, omega_limit_sweep, verify_bbar
from .traces import is_shift_invariant

logger = logging.getLogger(__name__)


class SearchLimits(BaseModel):
    """Bounds of the invariant-subset search"""

    model_config = ConfigDict(frozen=True)

    periodic_search_max: int = 8
    subset_search_cap: int = 20
    recurrence_max: int = 64
    orbit_prefix_length: int = 16384
    bbar_blocks: int = 480
    horizon: int = 8


class _CylinderSearch:
    """Search state for one cylinder, reused across candidate periods"""

    def __init__(
        self,
        lang: Language,
        u: Word,
        L: int,
        limits: SearchLimits,
        periodic_words: Sequence[PeriodicWord],
    ):
        self.lang = lang
        self.u = u
        self.L = L
        self.limits = limits
        self.pool_exceeded = False
        self._pool: Optional[List[Word]] = None
        self._base_recipe: Optional[BbarRecipe] = None
        self._tilde = lang if isinstance(lang, TildeLanguage) and lang.has_orbit else None
        self._bbar_unavailable = self._tilde is None
        self.periodic: List[Tuple[int, Word]] = sorted(
            (p.period, periodic_extension(p.word, p.period, offset))
            for p in periodic_words
            for offset in range(p.period)
            if periodic_extension(p.word, len(u), offset) == u
        )

    def at(self, m: int) -> Optional[InvariantSubsetCertificate]:
        """Certificate with period exactly m, if any route yields one"""
        if not 1 <= m < self.L:
            return None
        for period, rotation in self.periodic:
            if m % period == 0:
                trace = TraceSet(resolution=self.L, words=(periodic_extension(rotation, self.L),))
                return self._certify(m, trace, "periodic", source=rotation)
        certificate = self._bbar(m)
        if certificate is not None:
            return certificate
        return self._cycle(m)

    def _recipe(self, m: int) -> Optional[BbarRecipe]:
        if self._tilde is None or self._bbar_unavailable:
            return None
        orbit = self._tilde.orbit_prefix(self.limits.orbit_prefix_length)
        try:
            if self._base_recipe is None:
                self._base_recipe = build_bbar(
                    self.u,
                    self._tilde.inner,
                    orbit,
                    self.limits.horizon,
                    recurrence_max=self.limits.recurrence_max,
                    blocks=self.limits.bbar_blocks,
                )
            base = self._base_recipe
            if base.degenerate or m == base.m:
                return base
            if m < base.m:
                return None
            return build_bbar(
                self.u,
                self._tilde.inner,
                orbit,
                self.limits.horizon,
                recurrence_max=self.limits.recurrence_max,
                recurrence_floor=m - len(self.u),
                blocks=self.limits.bbar_blocks,
            )
        except (MatchFailureError, RecurrenceFailureError) as e:
            logger.info(f"b-bar route unavailable for [{self.u}]: {e}")
            self._bbar_unavailable = True
            return None

    def _bbar(self, m: int) -> Optional[InvariantSubsetCertificate]:
        recipe = self._recipe(m)
        if recipe is None or self._tilde is None:
            return None
        k_max = self.limits.horizon
        try:
            verified = verify_bbar(recipe, self._tilde, k_max)
            trace, burn_in = omega_limit_sweep(recipe, self.L)
        except (NeedsLongerPrefixError, PrefixTooShortError, ResolutionExceededError) as e:
            logger.debug(f"b-bar omega-limit for [{self.u}] at m={m} failed: {e}")
            return None
        if not verified:
            logger.warning(f"Discarding b-bar recipe for [{self.u}] at m={m}: verification failed at k_max={k_max}")
            return None
        source = "2^inf" if recipe.degenerate else f"b-bar j={recipe.j} N={recipe.N}"
        return self._certify(m, trace, "bbar", source=source, burn_in=burn_in, verified_k_max=k_max)

    def _pool_words(self) -> Optional[List[Word]]:
        if self._pool is None:
            cap = self.limits.subset_search_cap
            self._pool = list(islice(self.lang.completions(self.u, self.L), cap + 1))
            if len(self._pool) > cap:
                self.pool_exceeded = True
        return None if self.pool_exceeded else self._pool

    def _cycle(self, m: int) -> Optional[InvariantSubsetCertificate]:
        """Exact search: an m-invariant trace exists iff the overlap graph on the pool has a cycle"""
        pool = self._pool_words()
        if not pool:
            return None
        cut = self.L - m
        G = nx.DiGraph()
        G.add_nodes_from(pool)
        G.add_edges_from((w, t) for w in pool for t in pool if w[m:] == t[:cut])
        prune_stranded(G)
        if not G:
            return None
        cycle = [w for w, _ in nx.find_cycle(G, source=min(G))]
        trace = TraceSet(resolution=self.L, words=tuple(cycle))
        return self._certify(m, trace, "cycle-search", source=f"cycle of {len(cycle)}")

    def _certify(
        self,
        m: int,
        trace: TraceSet,
        route: str,
        source: Optional[str] = None,
        burn_in: Optional[int] = None,
        verified_k_max: Optional[int] = None,
    ) -> Optional[InvariantSubsetCertificate]:
        valid = (
            all(w.startswith(self.u) and self.lang.is_admissible(w) for w in trace.words)
            and is_shift_invariant(trace, m)
        )
        if not valid:
            logger.warning(f"Discarding {route} trace for [{self.u}] at m={m}: not {m}-invariant at resolution")
            return None
        return InvariantSubsetCertificate(
            spec=self.lang.spec.to_text(),
            resolution=Resolution(depth=self.L),
            cylinder=self.u,
            m=m,
            trace=trace,
            residual_resolution=self.L - m,
            route=route,
            source=source,
            burn_in=burn_in,
            verified_k_max=verified_k_max,
        )


def _prepare(
    lang: Language, L: Optional[int], limits: Optional[SearchLimits], periodic_words: Optional[Sequence[PeriodicWord]]
) -> Tuple[int, SearchLimits, Sequence[PeriodicWord]]:
    L = lang.depth if L is None else L
    lang.check_length(L, "trace")
    limits = limits or SearchLimits()
    if periodic_words is None:
        periodic_words = enumerate_periodic_words(lang, min(limits.periodic_search_max, lang.depth))
    return L, limits, periodic_words


def _search(
    lang: Language, u: Word, m_max: int, L: int, limits: SearchLimits, periodic_words: Sequence[PeriodicWord]
) -> _CylinderSearch:
    if m_max < 1:
        raise InvalidInputError(f"m_max must be positive, got {m_max}")
    if L < len(u) + m_max:
        raise ResolutionExceededError(f"invariant search for [{u}] up to m={m_max}", len(u) + m_max, L)
    if not lang.is_admissible(u):
        raise InvalidInputError(f"cylinder [{u}] is not admissible in {lang.spec.to_text()}")
    return _CylinderSearch(lang, u, L, limits, periodic_words)


def invariant_subset_certificate(
    lang: Language,
    u: Word,
    m_max: int,
    L: Optional[int] = None,
    limits: Optional[SearchLimits] = None,
    periodic_words: Optional[Sequence[PeriodicWord]] = None,
) -> Optional[InvariantSubsetCertificate]:
    """
    Least m <= m_max with an m-invariant trace inside [u]

    Args:
        lang: Language of the base system
        u: Cylinder base word
        m_max: Largest period tried
        L: Trace resolution (defaults to the language depth)
        limits: Search bounds
        periodic_words: Precomputed periodic words, shared across cylinders

    Returns:
        The certificate, or None when no route succeeds

    Raises:
        SearchSpaceCapExceededError: nothing found and the exhaustive route was refused
    """
    L, limits, periodic_words = _prepare(lang, L, limits, periodic_words)
    search = _search(lang, u, m_max, L, limits, periodic_words)
    for m in range(1, m_max + 1):
        certificate = search.at(m)
        if certificate is not None:
            logger.debug(f"[{u}]: {certificate.route} trace with m={m}")
            return certificate
    if search.pool_exceeded:
        raise SearchSpaceCapExceededError(limits.subset_search_cap + 1, limits.subset_search_cap)
    return None


def harmonize_periods(
    lang: Language,
    certificates: Dict[Word, InvariantSubsetCertificate],
    L: Optional[int] = None,
    limits: Optional[SearchLimits] = None,
    periodic_words: Optional[Sequence[PeriodicWord]] = None,
) -> Optional[Dict[Word, InvariantSubsetCertificate]]:
    """
    Common period M < L certified directly by every cylinder

    Used when the lcm of the individual periods leaves no residual
    resolution. Cylinders whose period divides M keep their certificate.
    """
    L, limits, periodic_words = _prepare(lang, L, limits, periodic_words)
    searches: Dict[Word, _CylinderSearch] = {}
    for M in range(max(c.m for c in certificates.values()), L):
        harmonized: Dict[Word, InvariantSubsetCertificate] = {}
        for cylinder, certificate in certificates.items():
            if M % certificate.m == 0:
                harmonized[cylinder] = certificate
                continue
            search = searches.setdefault(cylinder, _CylinderSearch(lang, cylinder, L, limits, periodic_words))
            replacement = search.at(M)
            if replacement is None:
                break
            harmonized[cylinder] = replacement
        else:
            logger.info(f"Harmonized {len(certificates)} cylinders to the common period {M}")
            return harmonized
    return None


def _combine(
    certificates: Dict[Word, InvariantSubsetCertificate], L: int, harmonized: bool
) -> Optional[CombinedTrace]:
    m_lcm = lcm(*(c.m for c in certificates.values()))
    if m_lcm >= L:
        return None
    union = reduce(TraceSet.union, (c.trace for c in certificates.values()))
    meets_all = all(any(w.startswith(c) for w in union.words) for c in certificates)
    if not (meets_all and is_shift_invariant(union, m_lcm)):
        logger.warning(f"Union trace is not {m_lcm}-invariant; combined certificate withheld")
        return None
    return CombinedTrace(m_lcm=m_lcm, trace=union, harmonized=harmonized)


def hyper_periodic_density_check(
    lang: Language,
    j: int,
    m_max: int,
    L: Optional[int] = None,
    limits: Optional[SearchLimits] = None,
) -> HyperPeriodicDensityReport:
    """
    Invariant subsets for every depth-j cylinder, combined by lcm and union

    Args:
        lang: Language of the base system
        j: Cylinder depth
        m_max: Largest period tried per cylinder
        L: Trace resolution (defaults to the language depth)
        limits: Search bounds

    Returns:
        Report with per-cylinder outcomes and the combined trace when all succeed
    """
    L, limits, periodic_words = _prepare(lang, L, limits, None)
    lang.check_length(j, "cylinder depth")
    logger.info(f"Hyperspace periodic density for {lang.spec.to_text()}: j={j}, m_max={m_max}, L={L}")

    outcomes: Dict[Word, Optional[InvariantSubsetCertificate]] = {
        c: invariant_subset_certificate(lang, c, m_max, L, limits, periodic_words) for c in lang.words(j)
    }
    combined = None
    note = None
    if all(c is not None for c in outcomes.values()):
        certified = {c: cert for c, cert in outcomes.items() if cert is not None}
        combined = _combine(certified, L, harmonized=False)
        if combined is None:
            harmonized = harmonize_periods(lang, certified, L, limits, periodic_words)
            if harmonized is not None:
                outcomes = dict(harmonized)
                combined = _combine(harmonized, L, harmonized=True)
            if combined is None:
                note = f"lcm of the periods leaves no residual resolution at L={L} and no common period below L"
    else:
        missing = [c for c, cert in outcomes.items() if cert is None]
        logger.info(f"No invariant trace found for {len(missing)} cylinders, first [{missing[0]}]")

    return HyperPeriodicDensityReport(
        spec=lang.spec.to_text(),
        resolution=Resolution(depth=L, j=j),
        j=j,
        m_max=m_max,
        outcomes=outcomes,
        combined=combined,
        note=note,
    )
