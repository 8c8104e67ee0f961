"""
Command Handlers

Implements the commands behind the CLI:
- generate_language: factor complexity and sample words
- run_check: one named property check, emitting its certificate
- verify_paper: the end-to-end pipeline on a tilde extension

Every handler returns {"success": ..., "certificate" | "error": ..., "exit_code": ...}.
"""

import asyncio
import logging
from typing import Any, Callable, Dict, Optional, Tuple

from ..analysis.devaney import devaney_verdict
from ..analysis.mixing import (
    mixing_certificate,
    sensitivity_witness,
    transitivity_certificate,
    weak_mixing_certificate,
)
from ..analysis.periodic import (
    almost_periodicity_certificate,
    enumerate_periodic_words,
    is_exact_periodic_scan,
)
from ..config import RunConfig
from ..errors import InvalidInputError, SpecParseError, SubCheckFailedError, ToolkitError, UnknownCheckError
from ..hyperspace.invariant import hyper_periodic_density_check, invariant_subset_certificate
from ..hyperspace.traces import hausdorff_report, trace_set
from ..hyperspace.transitivity import (
    base_mixing_bound,
    hyper_mixing_corroboration,
    hyper_transitivity_witness,
    hyper_weak_mixing_cross_check,
    sample_vietoris_basics,
)
from ..shiftspace.language import Language, TildeLanguage, generate_language, language_complexity
from ..shiftspace.specs import TildeExtension, parse_spec
from ..storage.models import (
    ABSENT,
    BOTH_CERTIFIED,
    CERTIFIED,
    HEADLINE,
    INCONCLUSIVE,
    AbsentResult,
    Certificate,
    DevaneyVerdict,
    HyperMixingReport,
    HyperPeriodicDensityReport,
    LanguageSummary,
    PaperReport,
    PeriodicWordsReport,
    Resolution,
    TildePeriodicScanReport,
)
from ..tilde.bbar import build_bbar, verify_bbar
from ..tilde.extension import tilde_minimality_witness, tilde_mixing_certificate, tilde_periodic_scan

logger = logging.getLogger(__name__)

CHECKS = (
    "periodic",
    "almost-periodic",
    "transitive",
    "mixing",
    "weak-mixing",
    "sensitive",
    "devaney",
    "hausdorff",
    "invariant-subset",
    "hyper-density",
    "hyper-transitive",
    "bbar",
)
BASE_CHECKS = frozenset({"transitive", "mixing", "weak-mixing", "sensitive", "devaney"})

# verdicts that exit with 1
NEGATIVE_VERDICTS = frozenset({ABSENT, "refuted", "not-certified-at-resolution", "failed", "inconclusive"})

SAMPLE_LENGTH = 4
SAMPLE_SIZE = 8
MIXING_SAMPLE_LENGTH = 2
BASIC_SAMPLE_SIZE = 6


def exit_code_for(certificate: Certificate) -> int:
    return 1 if certificate.verdict() in NEGATIVE_VERDICTS else 0


def _failure(exc: ToolkitError) -> Dict[str, Any]:
    message = exc.annotated() if isinstance(exc, SpecParseError) else str(exc)
    return {"success": False, "error": message, "exit_code": exc.exit_code}


class CheckTools:
    """Runs commands for one RunConfig"""

    def __init__(self, config: RunConfig):
        self.config = config
        self._language: Optional[Language] = None

    def language(self) -> Language:
        if self._language is None:
            spec = parse_spec(self.config.spec)
            self._language = generate_language(
                spec,
                self.config.depth,
                step_cap=self.config.step_cap,
                max_length=self.config.max_length,
            )
        return self._language

    async def generate_language(self) -> Dict[str, Any]:
        """
        Word counts per length and sample words

        Returns:
            Result dict with a LanguageSummary certificate
        """
        try:
            lang = await asyncio.to_thread(self.language)
            counts = await asyncio.to_thread(language_complexity, lang)
            samples = {
                n: lang.words(n)[:SAMPLE_SIZE] for n in range(1, min(lang.depth, SAMPLE_LENGTH) + 1)
            }
            summary = LanguageSummary(
                spec=lang.spec.to_text(),
                resolution=Resolution.of(lang),
                counts=tuple(counts),
                samples=samples,
            )
            return {"success": True, "certificate": summary, "exit_code": 0}
        except ToolkitError as e:
            logger.error(f"Error generating language: {str(e)}")
            return _failure(e)

    async def run_check(self, name: str) -> Dict[str, Any]:
        """
        Run one named check

        Args:
            name: One of CHECKS

        Returns:
            Result dict with the certificate (or an absent result) and its exit code
        """
        try:
            if name not in CHECKS:
                raise UnknownCheckError(name, list(CHECKS))
            if name in BASE_CHECKS:
                self.config.require_base_resolution()
            lang = await asyncio.to_thread(self.language)
            handler: Callable[[Language], Optional[Certificate]] = getattr(self, "_" + name.replace("-", "_"))
            logger.info(f"Running check {name} on {lang.spec.to_text()}")
            certificate = await asyncio.to_thread(handler, lang)
            if certificate is None:
                certificate = self._absent(lang, name)
            logger.info(f"Check {name}: {certificate.verdict()}")
            return {"success": True, "certificate": certificate, "exit_code": exit_code_for(certificate)}
        except ToolkitError as e:
            logger.error(f"Error running check {name}: {str(e)}")
            return _failure(e)

    def _absent(self, lang: Language, name: str) -> AbsentResult:
        inputs = {
            key: value
            for key, value in self.config.model_dump(include={"u", "v", "u2", "v2", "cylinder", "a", "b"}).items()
            if value is not None
        }
        return AbsentResult(
            spec=lang.spec.to_text(),
            resolution=Resolution.of(lang, j=self.config.j, horizon=self.config.horizon),
            check=name,
            inputs=inputs,
            reason=f"no witness within the search bounds at depth {lang.depth}",
        )

    def _required(self, name: str) -> str:
        value = getattr(self.config, name)
        if value is None:
            raise InvalidInputError(f"--{name.replace('_', '-')} is required for this check")
        return value

    # check handlers

    def _periodic(self, lang: Language) -> Certificate:
        p_max = self.config.p_max
        return PeriodicWordsReport(
            spec=lang.spec.to_text(),
            resolution=Resolution.of(lang),
            p_max=p_max,
            words=tuple(enumerate_periodic_words(lang, p_max)),
            exact=is_exact_periodic_scan(lang),
        )

    def _almost_periodic(self, lang: Language) -> Optional[Certificate]:
        if not lang.has_orbit:
            raise InvalidInputError(f"{lang.spec.to_text()} has no distinguished orbit to scan")
        prefix = lang.orbit_prefix(self.config.orbit_prefix_length)
        N_max = min(self.config.recurrence_max, len(prefix) - 2 * self.config.j)
        return almost_periodicity_certificate(prefix, self.config.j, N_max, spec=lang.spec.to_text())

    def _transitive(self, lang: Language) -> Optional[Certificate]:
        return transitivity_certificate(lang, self._required("u"), self._required("v"), self.config.horizon)

    def _mixing(self, lang: Language) -> Optional[Certificate]:
        u, v = self._required("u"), self._required("v")
        if isinstance(lang, TildeLanguage):
            return tilde_mixing_certificate(lang, u, v, self.config.horizon)
        return mixing_certificate(lang, u, v, self.config.horizon)

    def _weak_mixing(self, lang: Language) -> Optional[Certificate]:
        return weak_mixing_certificate(
            lang,
            self._required("u"),
            self._required("v"),
            self._required("u2"),
            self._required("v2"),
            self.config.horizon,
        )

    def _sensitive(self, lang: Language) -> Optional[Certificate]:
        u = self._required("u")
        steps = self.config.steps or min(self.config.horizon, lang.depth - len(u))
        return sensitivity_witness(lang, u, steps)

    def _devaney(self, lang: Language) -> Certificate:
        return devaney_verdict(lang, self.config.j, self.config.horizon, self.config.p_max)

    def _hausdorff(self, lang: Language) -> Certificate:
        a = trace_set(lang, self.config.word_list("a"))
        b = trace_set(lang, self.config.word_list("b"))
        return hausdorff_report(lang, a, b)

    def _invariant_subset(self, lang: Language) -> Optional[Certificate]:
        return invariant_subset_certificate(
            lang, self._required("cylinder"), self.config.m_max, limits=self.config.search_limits()
        )

    def _hyper_density(self, lang: Language) -> Certificate:
        return hyper_periodic_density_check(
            lang, self.config.j, self.config.m_max, limits=self.config.search_limits()
        )

    def _hyper_transitive(self, lang: Language) -> Optional[Certificate]:
        return hyper_transitivity_witness(
            lang, self.config.basic_set("u"), self.config.basic_set("v"), self.config.horizon
        )

    def _bbar(self, lang: Language) -> Certificate:
        if not isinstance(lang, TildeLanguage) or not lang.has_orbit:
            raise InvalidInputError(f"{lang.spec.to_text()} is not a tilde extension of a substitution")
        k_max = self.config.k_max or self.config.horizon
        recipe = build_bbar(
            self._required("cylinder"),
            lang.inner,
            lang.orbit_prefix(self.config.orbit_prefix_length),
            k_max,
            recurrence_max=self.config.recurrence_max,
        )
        verified = verify_bbar(recipe, lang, k_max)
        return recipe.model_copy(update={"verified": verified})

    # verify-paper

    async def _stage(self, stage: str, func: Callable[..., Any], *args: Any) -> Any:
        logger.info(f"Sub-check {stage} started")
        try:
            result = await asyncio.to_thread(func, *args)
        except ToolkitError as e:
            logger.error(f"Sub-check {stage} failed: {str(e)}")
            raise SubCheckFailedError(stage, e) from e
        except Exception as e:
            logger.error(f"Sub-check {stage} raised unexpectedly: {str(e)}")
            raise SubCheckFailedError(stage, e) from e
        logger.info(f"Sub-check {stage} finished")
        return result

    def _cylinder_mixing(self, lang: Language) -> Dict[str, Optional[int]]:
        words = lang.words(MIXING_SAMPLE_LENGTH)
        return {
            f"{u}|{v}": base_mixing_bound(lang, u, v, self.config.horizon) for u in words for v in words
        }

    async def verify_paper(self) -> Dict[str, Any]:
        """
        Full pipeline on a tilde extension

        Runs the base Devaney verdict, the tilde periodic scan, hyperspace
        periodic density, the mixing corroboration, the minimality witness
        and the weak-mixing cross-check, then draws the conclusion.

        Returns:
            Result dict with the PaperReport; exit code 0 only for the headline conclusion
        """
        try:
            spec = parse_spec(self.config.spec)
            if not isinstance(spec, TildeExtension):
                raise InvalidInputError(f"verify-paper needs a tilde(...) spec, got {spec.to_text()}")
            lang = await self._stage("language", self.language)
            config = self.config
            basics = await self._stage(
                "sample", sample_vietoris_basics, lang, MIXING_SAMPLE_LENGTH, BASIC_SAMPLE_SIZE
            )
            cross_basics = await self._stage("sample", sample_vietoris_basics, lang, 1, BASIC_SAMPLE_SIZE)

            base, scan, hyper, cylinder_mixing, hyper_mixing, minimality, cross_check = await asyncio.gather(
                self._stage("devaney", devaney_verdict, lang, config.j, config.horizon, config.p_max),
                self._stage("tilde-periodic-scan", tilde_periodic_scan, lang, config.p_max),
                self._stage(
                    "hyper-density",
                    hyper_periodic_density_check,
                    lang,
                    config.j,
                    config.m_max,
                    None,
                    config.search_limits(),
                ),
                self._stage("cylinder-mixing", self._cylinder_mixing, lang),
                self._stage("hyper-mixing", hyper_mixing_corroboration, lang, basics, config.horizon),
                self._stage("minimality", tilde_minimality_witness, lang),
                self._stage("weak-mixing-cross-check", hyper_weak_mixing_cross_check, lang, cross_basics, config.horizon),
            )

            conclusion, hyper_side = conclude(base, scan, hyper, cylinder_mixing, hyper_mixing)
            logger.info(f"Conclusion for {lang.spec.to_text()}: {conclusion} (hyper side certified={hyper_side})")
            report = PaperReport(
                spec=lang.spec.to_text(),
                resolution=Resolution.of(lang, j=config.j, horizon=config.horizon),
                base=base,
                hyper=hyper,
                scan=scan,
                cylinder_mixing=cylinder_mixing,
                hyper_mixing=hyper_mixing,
                minimality=minimality,
                cross_check=cross_check,
                conclusion=conclusion,
            )
            return {"success": True, "certificate": report, "exit_code": 0 if conclusion == HEADLINE else 1}
        except ToolkitError as e:
            logger.error(f"Error verifying {self.config.spec}: {str(e)}")
            return _failure(e)


def conclude(
    base: DevaneyVerdict,
    scan: TildePeriodicScanReport,
    hyper: HyperPeriodicDensityReport,
    cylinder_mixing: Dict[str, Optional[int]],
    hyper_mixing: HyperMixingReport,
) -> Tuple[str, bool]:
    """Conclusion string and whether the hyperspace side is certified"""
    hyper_side = (
        hyper.combined is not None
        and all(N is not None for N in cylinder_mixing.values())
        and all(entry.N is not None for entry in hyper_mixing.entries)
    )
    if hyper_side and base.periodically_dense is None and scan.conclusive:
        return HEADLINE, hyper_side
    if hyper_side and base.verdict() == CERTIFIED:
        return BOTH_CERTIFIED, hyper_side
    return INCONCLUSIVE, hyper_side
