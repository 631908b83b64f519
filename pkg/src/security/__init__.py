"""Security bound: twirling, Bell spectrum, Eve's information and key rate."""

from .bound import (
    CLOSED_FORM,
    INFEASIBLE,
    NUMERIC,
    SecurityEstimate,
    c_cap,
    eve_information,
    eve_information_uv,
    increasing_at,
    is_feasible,
    key_rate_curve,
    linspace_grid,
    six_state_reference,
    u_bounds,
    v_of_u,
    werner_c,
    werner_curve,
)
from .entropy import binary_entropy
from .optimize import bracketed_max, golden_section_max
from .search import (
    find_crossing,
    grid_search_eve_information,
    locate_threshold,
    monotonicity_certificate,
    propagate_rate_error,
)
from .twirl import BELL_BASIS, BellDiagonalSpectrum, bell_spectrum, twirl

__all__ = [
    "BELL_BASIS",
    "BellDiagonalSpectrum",
    "SecurityEstimate",
    "CLOSED_FORM",
    "NUMERIC",
    "INFEASIBLE",
    "binary_entropy",
    "twirl",
    "bell_spectrum",
    "eve_information",
    "eve_information_uv",
    "increasing_at",
    "is_feasible",
    "c_cap",
    "u_bounds",
    "v_of_u",
    "werner_c",
    "six_state_reference",
    "key_rate_curve",
    "werner_curve",
    "linspace_grid",
    "golden_section_max",
    "bracketed_max",
    "grid_search_eve_information",
    "monotonicity_certificate",
    "locate_threshold",
    "find_crossing",
    "propagate_rate_error",
]
