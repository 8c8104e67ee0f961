"""The induced map on compact subsets, studied through finite traces"""

from .invariant import (
    SearchLimits,
    harmonize_periods,
    hyper_periodic_density_check,
    invariant_subset_certificate,
)
from .traces import (
    dilatation,
    hausdorff_distance,
    hausdorff_report,
    induced_shift,
    induced_shift_power,
    is_shift_invariant,
    separation,
    trace_set,
    truncate,
    vietoris_member,
)
from .transitivity import (
    aligned_word,
    base_mixing_bound,
    hyper_mixing_corroboration,
    hyper_transitivity_at,
    hyper_transitivity_witness,
    hyper_weak_mixing_cross_check,
    sample_vietoris_basics,
)

__all__ = [
    "SearchLimits",
    "aligned_word",
    "base_mixing_bound",
    "dilatation",
    "harmonize_periods",
    "hausdorff_distance",
    "hausdorff_report",
    "hyper_mixing_corroboration",
    "hyper_periodic_density_check",
    "hyper_transitivity_at",
    "hyper_transitivity_witness",
    "hyper_weak_mixing_cross_check",
    "induced_shift",
    "induced_shift_power",
    "is_shift_invariant",
    "invariant_subset_certificate",
    "sample_vietoris_basics",
    "separation",
    "trace_set",
    "truncate",
    "vietoris_member",
]
