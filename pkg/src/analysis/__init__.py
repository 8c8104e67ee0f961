"""Dynamical property checks on base subshifts"""

from .devaney import devaney_verdict, periodic_cover
from .mixing import (
    common_gap_alignment,
    gap_word,
    mixing_certificate,
    sensitivity_witness,
    transitivity_certificate,
    weak_mixing_certificate,
)
from .periodic import (
    almost_periodicity_certificate,
    enumerate_periodic_words,
    inadmissible_factor,
    is_exact_periodic_scan,
    periodic_return_refutation,
)

__all__ = [
    "almost_periodicity_certificate",
    "common_gap_alignment",
    "devaney_verdict",
    "enumerate_periodic_words",
    "gap_word",
    "inadmissible_factor",
    "is_exact_periodic_scan",
    "mixing_certificate",
    "periodic_cover",
    "periodic_return_refutation",
    "sensitivity_witness",
    "transitivity_certificate",
    "weak_mixing_certificate",
]
