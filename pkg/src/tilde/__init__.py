"""The padded tilde extension and the b-bar construction"""

from .bbar import build_bbar, omega_limit_sweep, omega_limit_trace, verify_bbar
from .extension import (
    connecting_word,
    tilde_language,
    tilde_minimality_witness,
    tilde_mixing_certificate,
    tilde_periodic_scan,
)

__all__ = [
    "build_bbar",
    "connecting_word",
    "omega_limit_sweep",
    "omega_limit_trace",
    "tilde_language",
    "tilde_minimality_witness",
    "tilde_mixing_certificate",
    "tilde_periodic_scan",
    "verify_bbar",
]
