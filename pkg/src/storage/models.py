"""
Certificate Models

Immutable pydantic models for every certificate, witness and report the
toolkit emits. Each model renders the fixed envelope

    {kind, spec, resolution, parameters, witnesses, verdict}

with words as digit strings, word sets in canonical order and rationals
as "p/q" strings.
"""

from fractions import Fraction
from typing import Any, ClassVar, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..shiftspace.words import format_fraction

CERTIFIED = "certified"
ABSENT = "absent-at-resolution"
REFUTED = "refuted"

HEADLINE = "HYPER-DEVANEY-CERTIFIED; BASE-PERIODIC-DENSITY-ABSENT"
BOTH_CERTIFIED = "BOTH-CERTIFIED"
INCONCLUSIVE = "INCONCLUSIVE-AT-RESOLUTION"


def _pair_key(u: str, v: str) -> str:
    return f"{u}|{v}"


class Resolution(BaseModel):
    """The finite scale (L, j, horizon) a statement is made at"""

    model_config = ConfigDict(frozen=True)

    depth: int
    j: Optional[int] = None
    horizon: Optional[int] = None

    @classmethod
    def of(cls, lang, j: Optional[int] = None, horizon: Optional[int] = None) -> "Resolution":
        return cls(depth=lang.depth, j=j, horizon=horizon)

    def as_dict(self) -> Dict[str, int]:
        return self.model_dump(exclude_none=True)


class TraceSet(BaseModel):
    """Nonempty set of equal-length words standing for a compact set at resolution L"""

    model_config = ConfigDict(frozen=True)

    resolution: int = Field(ge=1)
    words: Tuple[str, ...]

    @field_validator("words")
    @classmethod
    def _canonical(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        if not value:
            raise ValueError("trace sets are nonempty")
        return tuple(sorted(set(value)))

    @model_validator(mode="after")
    def _equal_lengths(self) -> "TraceSet":
        for w in self.words:
            if len(w) != self.resolution:
                raise ValueError(f"word {w!r} does not have the trace resolution {self.resolution}")
        return self

    @classmethod
    def of(cls, words) -> "TraceSet":
        words = tuple(words)
        return cls(resolution=len(words[0]) if words else 1, words=words)

    def union(self, other: "TraceSet") -> "TraceSet":
        return TraceSet(resolution=self.resolution, words=self.words + other.words)

    def as_dict(self) -> Dict[str, Any]:
        return {"resolution": self.resolution, "words": list(self.words)}


class VietorisBasic(BaseModel):
    """Basic open set B(G_1, ..., G_n) given by cylinder base words"""

    model_config = ConfigDict(frozen=True)

    cylinders: Tuple[str, ...]

    @field_validator("cylinders")
    @classmethod
    def _nonempty(cls, value: Tuple[str, ...]) -> Tuple[str, ...]:
        if not value:
            raise ValueError("a Vietoris basic set needs at least one cylinder")
        return value

    @property
    def label(self) -> str:
        return "B(" + ",".join(f"[{c}]" for c in self.cylinders) + ")"


class PeriodicWord(BaseModel):
    model_config = ConfigDict(frozen=True)

    word: str
    period: int

    def as_list(self) -> List[Any]:
        return [self.word, self.period]


class Certificate(BaseModel):
    """Base for everything that renders the certificate envelope"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: ClassVar[str] = "certificate"

    spec: str
    resolution: Resolution

    def parameters(self) -> Dict[str, Any]:
        return {}

    def witnesses(self) -> Dict[str, Any]:
        return {}

    def verdict(self) -> str:
        return CERTIFIED

    @property
    def certified(self) -> bool:
        return self.verdict() == CERTIFIED

    def envelope(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "spec": self.spec,
            "resolution": self.resolution.as_dict(),
            "parameters": self.parameters(),
            "witnesses": self.witnesses(),
            "verdict": self.verdict(),
        }


class AbsentResult(Certificate):
    """No certificate found at the stated resolution"""

    check: str
    inputs: Dict[str, Any] = Field(default_factory=dict)
    reason: str = ""

    def envelope(self) -> Dict[str, Any]:
        envelope = super().envelope()
        envelope["kind"] = self.check
        return envelope

    def parameters(self) -> Dict[str, Any]:
        return dict(self.inputs)

    def witnesses(self) -> Dict[str, Any]:
        return {"reason": self.reason} if self.reason else {}

    def verdict(self) -> str:
        return ABSENT


class LanguageSummary(Certificate):
    kind: ClassVar[str] = "language"

    counts: Tuple[int, ...]
    samples: Dict[int, Tuple[str, ...]]

    def witnesses(self) -> Dict[str, Any]:
        return {
            "counts": list(self.counts),
            "samples": {str(n): list(words) for n, words in self.samples.items()},
        }

    def verdict(self) -> str:
        return "generated"


class PeriodicWordsReport(Certificate):
    kind: ClassVar[str] = "periodic"

    p_max: int
    words: Tuple[PeriodicWord, ...]
    exact: bool

    def parameters(self) -> Dict[str, Any]:
        return {"p_max": self.p_max, "exact": self.exact}

    def witnesses(self) -> Dict[str, Any]:
        return {"periodic_words": [p.as_list() for p in self.words]}

    def verdict(self) -> str:
        if self.words:
            return CERTIFIED
        return REFUTED if self.exact else ABSENT


class AlmostPeriodicityCertificate(Certificate):
    kind: ClassVar[str] = "almost-periodic"

    prefix: str
    prefix_length: int
    N: int
    N_max: int
    scanned_to: int
    occurrences: Tuple[int, ...]

    def parameters(self) -> Dict[str, Any]:
        return {"j": self.prefix_length, "N_max": self.N_max}

    def witnesses(self) -> Dict[str, Any]:
        return {
            "prefix": self.prefix,
            "N": self.N,
            "scanned_to": self.scanned_to,
            "occurrences": list(self.occurrences),
        }


class TransitivityCertificate(Certificate):
    kind: ClassVar[str] = "transitive"

    u: str
    v: str
    gap_max: int
    gap: int
    witness: str

    def parameters(self) -> Dict[str, Any]:
        return {"u": self.u, "v": self.v, "gap_max": self.gap_max}

    def witnesses(self) -> Dict[str, Any]:
        return {"gap": self.gap, "w": self.witness}


class MixingCertificate(Certificate):
    kind: ClassVar[str] = "mixing"

    u: str
    v: str
    N: int
    horizon: int
    gaps: Dict[int, str]
    construction: Literal["search", "padded"] = "search"
    connecting_word: Optional[str] = None

    def parameters(self) -> Dict[str, Any]:
        return {"u": self.u, "v": self.v, "horizon": self.horizon}

    def witnesses(self) -> Dict[str, Any]:
        witnesses: Dict[str, Any] = {
            "N": self.N,
            "construction": self.construction,
            "gaps": {str(n): self.gaps[n] for n in sorted(self.gaps)},
        }
        if self.connecting_word is not None:
            witnesses["connecting_word"] = self.connecting_word
        return witnesses


class WeakMixingCertificate(Certificate):
    kind: ClassVar[str] = "weak-mixing"

    pairs: Tuple[Tuple[str, str], ...]
    gap_max: int
    n: int
    gap_words: Tuple[str, ...]

    def parameters(self) -> Dict[str, Any]:
        return {"pairs": [list(p) for p in self.pairs], "gap_max": self.gap_max}

    def witnesses(self) -> Dict[str, Any]:
        return {"n": self.n, "gap_words": list(self.gap_words)}


class SensitivityWitness(Certificate):
    kind: ClassVar[str] = "sensitive"

    u: str
    steps: int
    x_prefix: str
    y_prefix: str
    t: int
    separation: Fraction

    def parameters(self) -> Dict[str, Any]:
        return {"u": self.u, "steps": self.steps, "delta": "1/2"}

    def witnesses(self) -> Dict[str, Any]:
        return {
            "x_prefix": self.x_prefix,
            "y_prefix": self.y_prefix,
            "t": self.t,
            "separation": format_fraction(self.separation),
        }


class PeriodicReturn(Certificate):
    """Exact answer for a finite-type cylinder: does it hold a periodic point at all"""

    kind: ClassVar[str] = "periodic-return"

    u: str
    found: bool
    return_word: Optional[str] = None
    period_word: Optional[str] = None

    def parameters(self) -> Dict[str, Any]:
        return {"u": self.u}

    def witnesses(self) -> Dict[str, Any]:
        if not self.found:
            return {}
        return {"return_word": self.return_word, "period_word": self.period_word}

    def verdict(self) -> str:
        return CERTIFIED if self.found else REFUTED


class PeriodicDensityCertificate(Certificate):
    kind: ClassVar[str] = "periodic-density"

    p_max: int
    cylinders: Dict[str, Tuple[str, int]]

    def parameters(self) -> Dict[str, Any]:
        return {"p_max": self.p_max}

    def witnesses(self) -> Dict[str, Any]:
        return {c: list(self.cylinders[c]) for c in sorted(self.cylinders)}


class DevaneyVerdict(Certificate):
    kind: ClassVar[str] = "devaney"

    transitive: Optional[Tuple[TransitivityCertificate, ...]] = None
    transitive_failure: Optional[Tuple[str, str]] = None
    periodically_dense: Optional[PeriodicDensityCertificate] = None
    density_missing: Tuple[str, ...] = ()
    sensitive: Optional[Tuple[SensitivityWitness, ...]] = None
    insensitive_cylinder: Optional[str] = None
    refutation: Optional[PeriodicReturn] = None
    outcome: Literal["certified", "not-certified-at-resolution", "refuted"]

    def witnesses(self) -> Dict[str, Any]:
        witnesses: Dict[str, Any] = {}
        if self.transitive is not None:
            witnesses["transitive"] = {_pair_key(c.u, c.v): [c.gap, c.witness] for c in self.transitive}
        else:
            witnesses["transitive"] = None
            witnesses["transitive_failure"] = list(self.transitive_failure or ())
        if self.periodically_dense is not None:
            witnesses["periodically_dense"] = self.periodically_dense.witnesses()
        else:
            witnesses["periodically_dense"] = None
            witnesses["density_missing"] = list(self.density_missing)
        if self.sensitive is not None:
            witnesses["sensitive"] = {s.u: s.witnesses() for s in self.sensitive}
        else:
            witnesses["sensitive"] = None
            witnesses["insensitive_cylinder"] = self.insensitive_cylinder
        if self.refutation is not None:
            witnesses["refutation"] = {"u": self.refutation.u, "verdict": self.refutation.verdict()}
        return witnesses

    def verdict(self) -> str:
        return self.outcome


class InvariantSubsetCertificate(Certificate):
    kind: ClassVar[str] = "invariant-subset"

    cylinder: str
    m: int
    trace: TraceSet
    residual_resolution: int
    route: Literal["periodic", "bbar", "cycle-search"]
    source: Optional[str] = None
    burn_in: Optional[int] = None
    verified_k_max: Optional[int] = None

    def parameters(self) -> Dict[str, Any]:
        return {"cylinder": self.cylinder}

    def witnesses(self) -> Dict[str, Any]:
        witnesses: Dict[str, Any] = {
            "m": self.m,
            "route": self.route,
            "residual_resolution": self.residual_resolution,
            "trace": self.trace.as_dict(),
        }
        if self.source is not None:
            witnesses["source"] = self.source
        if self.burn_in is not None:
            witnesses["burn_in"] = self.burn_in
        if self.verified_k_max is not None:
            witnesses["verified_k_max"] = self.verified_k_max
        return witnesses


class CombinedTrace(BaseModel):
    model_config = ConfigDict(frozen=True)

    m_lcm: int
    trace: TraceSet
    harmonized: bool = False

    def as_dict(self) -> Dict[str, Any]:
        return {"m_lcm": self.m_lcm, "harmonized": self.harmonized, "trace": self.trace.as_dict()}


class HyperPeriodicDensityReport(Certificate):
    kind: ClassVar[str] = "hyper-density"

    j: int
    m_max: int
    outcomes: Dict[str, Optional[InvariantSubsetCertificate]]
    combined: Optional[CombinedTrace] = None
    note: Optional[str] = None

    def parameters(self) -> Dict[str, Any]:
        return {"j": self.j, "m_max": self.m_max}

    def witnesses(self) -> Dict[str, Any]:
        witnesses: Dict[str, Any] = {
            "cylinders": {
                c: (cert.witnesses() if cert is not None else None)
                for c, cert in sorted(self.outcomes.items())
            },
            "combined": self.combined.as_dict() if self.combined is not None else None,
        }
        if self.note:
            witnesses["note"] = self.note
        return witnesses

    def verdict(self) -> str:
        return CERTIFIED if self.combined is not None else ABSENT


class HyperTransitivityWitness(Certificate):
    kind: ClassVar[str] = "hyper-transitive"

    source: VietorisBasic
    target: VietorisBasic
    n_max: int
    n: int
    trace: TraceSet

    def parameters(self) -> Dict[str, Any]:
        return {"U": list(self.source.cylinders), "V": list(self.target.cylinders), "n_max": self.n_max}

    def witnesses(self) -> Dict[str, Any]:
        return {"n": self.n, "trace": self.trace.as_dict()}


class HyperMixingEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: VietorisBasic
    target: VietorisBasic
    N: Optional[int]
    base: Dict[str, Optional[int]]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "U": list(self.source.cylinders),
            "V": list(self.target.cylinders),
            "N": self.N,
            "base_N": dict(sorted(self.base.items())),
        }


class HyperMixingReport(Certificate):
    kind: ClassVar[str] = "hyper-mixing"

    horizon: int
    entries: Tuple[HyperMixingEntry, ...]

    def parameters(self) -> Dict[str, Any]:
        return {"horizon": self.horizon}

    def witnesses(self) -> Dict[str, Any]:
        return {"pairs": [e.as_dict() for e in self.entries]}

    def verdict(self) -> str:
        return CERTIFIED if all(e.N is not None for e in self.entries) else ABSENT


class CrossCheckEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    source: VietorisBasic
    target: VietorisBasic
    hyper_n: Optional[int]
    base_n: Optional[int]

    @property
    def agree(self) -> bool:
        return self.hyper_n == self.base_n

    def as_dict(self) -> Dict[str, Any]:
        return {
            "U": list(self.source.cylinders),
            "V": list(self.target.cylinders),
            "hyper_n": self.hyper_n,
            "base_n": self.base_n,
            "agree": self.agree,
        }


class WeakMixingCrossCheck(Certificate):
    kind: ClassVar[str] = "hyper-weak-mixing"

    n_max: int
    entries: Tuple[CrossCheckEntry, ...]

    def parameters(self) -> Dict[str, Any]:
        return {"n_max": self.n_max}

    def witnesses(self) -> Dict[str, Any]:
        return {"pairs": [e.as_dict() for e in self.entries]}

    def verdict(self) -> str:
        return "consistent" if all(e.agree for e in self.entries) else "inconsistent"


class HausdorffReport(Certificate):
    kind: ClassVar[str] = "hausdorff"

    a: TraceSet
    b: TraceSet
    separation_ab: Fraction
    separation_ba: Fraction

    @property
    def distance(self) -> Fraction:
        return max(self.separation_ab, self.separation_ba)

    def parameters(self) -> Dict[str, Any]:
        return {"A": self.a.as_dict(), "B": self.b.as_dict()}

    def witnesses(self) -> Dict[str, Any]:
        return {
            "rho_AB": format_fraction(self.separation_ab),
            "rho_BA": format_fraction(self.separation_ba),
            "distance": format_fraction(self.distance),
        }

    def verdict(self) -> str:
        return "computed"


class BbarRecipe(Certificate):
    """Data of the padded point whose m-step returns stay in a cylinder"""

    kind: ClassVar[str] = "bbar"

    cylinder: str
    j: int
    b_prefix: str
    match_offset: int
    return_times: Tuple[int, ...]
    recurrence_N: int
    N: int
    m: int
    bbar_prefix: str
    degenerate: bool = False
    verified: Optional[bool] = None

    def parameters(self) -> Dict[str, Any]:
        return {"cylinder": self.cylinder}

    def witnesses(self) -> Dict[str, Any]:
        witnesses: Dict[str, Any] = {
            "degenerate": self.degenerate,
            "j": self.j,
            "match_offset": self.match_offset,
            "recurrence_N": self.recurrence_N,
            "N": self.N,
            "m": self.m,
            "return_times": list(self.return_times),
            "b_prefix": self.b_prefix,
            "bbar_prefix": self.bbar_prefix,
        }
        if self.verified is not None:
            witnesses["verified"] = self.verified
        return witnesses

    def verdict(self) -> str:
        if self.verified is None:
            return "constructed"
        return CERTIFIED if self.verified else "failed"


class Exclusion(BaseModel):
    model_config = ConfigDict(frozen=True)

    word: str
    factor: str
    offset: int

    def as_dict(self) -> Dict[str, Any]:
        return {"word": self.word, "factor": self.factor, "offset": self.offset}


class TildePeriodicScanReport(Certificate):
    kind: ClassVar[str] = "tilde-periodic-scan"

    p_max: int
    found: Tuple[PeriodicWord, ...]
    exclusions: Tuple[Exclusion, ...]
    conclusive: bool

    def parameters(self) -> Dict[str, Any]:
        return {"p_max": self.p_max}

    def witnesses(self) -> Dict[str, Any]:
        return {
            "found": [p.as_list() for p in self.found],
            "exclusions": [e.as_dict() for e in self.exclusions],
        }

    def verdict(self) -> str:
        return "conclusive" if self.conclusive else "inconclusive"


class MinimalityWitness(Certificate):
    kind: ClassVar[str] = "tilde-minimality"

    fixed_point: str
    missed_cylinder: str

    def witnesses(self) -> Dict[str, Any]:
        return {"fixed_point": self.fixed_point, "missed_cylinder": self.missed_cylinder}

    def verdict(self) -> str:
        return "not-minimal"


class PaperReport(Certificate):
    kind: ClassVar[str] = "paper-report"

    base: DevaneyVerdict
    hyper: HyperPeriodicDensityReport
    scan: TildePeriodicScanReport
    cylinder_mixing: Dict[str, Optional[int]]
    hyper_mixing: HyperMixingReport
    minimality: MinimalityWitness
    cross_check: WeakMixingCrossCheck
    conclusion: Literal[
        "HYPER-DEVANEY-CERTIFIED; BASE-PERIODIC-DENSITY-ABSENT",
        "BOTH-CERTIFIED",
        "INCONCLUSIVE-AT-RESOLUTION",
    ]

    def witnesses(self) -> Dict[str, Any]:
        return {
            "base_devaney": self.base.envelope(),
            "tilde_periodic_scan": self.scan.envelope(),
            "hyper_periodic_density": self.hyper.envelope(),
            "cylinder_mixing": dict(sorted(self.cylinder_mixing.items())),
            "hyper_mixing": self.hyper_mixing.envelope(),
            "minimality": self.minimality.envelope(),
            "weak_mixing_cross_check": self.cross_check.envelope(),
        }

    def verdict(self) -> str:
        return self.conclusion
