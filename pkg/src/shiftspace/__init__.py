"""Symbol spaces, subshift specifications and their languages"""

from .language import (
    FiniteTypeLanguage,
    FullShiftLanguage,
    Language,
    SubstitutionLanguage,
    TildeLanguage,
    generate_language,
    language_complexity,
    tilde_of,
)
from .specs import (
    CHACON,
    THUE_MORSE,
    FiniteType,
    FullShift,
    ShiftSpaceSpec,
    Substitution,
    TildeExtension,
    parse_spec,
)
from .words import (
    ALPHABET,
    Word,
    alphabet,
    concat,
    delete_twos,
    first_difference,
    format_fraction,
    is_lyndon,
    metric_distance,
    parse_word,
    periodic_extension,
    power,
    shift_word,
)

__all__ = [
    "ALPHABET",
    "CHACON",
    "THUE_MORSE",
    "FiniteType",
    "FiniteTypeLanguage",
    "FullShift",
    "FullShiftLanguage",
    "Language",
    "ShiftSpaceSpec",
    "Substitution",
    "SubstitutionLanguage",
    "TildeExtension",
    "TildeLanguage",
    "Word",
    "alphabet",
    "concat",
    "delete_twos",
    "first_difference",
    "format_fraction",
    "generate_language",
    "is_lyndon",
    "language_complexity",
    "metric_distance",
    "parse_spec",
    "parse_word",
    "periodic_extension",
    "power",
    "shift_word",
    "tilde_of",
]
