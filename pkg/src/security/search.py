"""Brute-force oracle, monotonicity certificate, threshold location and error propagation."""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from ..config import settings
from ..exceptions import ValidationError
from ..observability import get_logger
from .bound import SecurityEstimate, eve_information, is_feasible, u_bounds
from .entropy import binary_entropy

logger = get_logger(__name__)


def _objective_on_grid(q: float, c: float, u: np.ndarray) -> np.ndarray:
    v = np.minimum(np.sqrt(np.maximum(0.5 * c - ((1.0 - q) * u) ** 2, 0.0)) / q, 1.0)
    return (1.0 - q) * binary_entropy((1.0 + u) / 2.0) + q * binary_entropy((1.0 + v) / 2.0)


def grid_search_eve_information(
    q: float, c: float, points: Optional[int] = None
) -> Tuple[float, float, float]:
    """Maximise I_E(Q, u, v(u)) by exhaustive evaluation on a u grid.

    Returns:
        (I_E, u, v) at the best grid point
    """
    if not is_feasible(q, c):
        raise ValidationError(f"(Q, C) = ({q}, {c}) is infeasible")
    if q == 0.0:
        u0 = min(math.sqrt(0.5 * c), 1.0)
        return float(binary_entropy((1.0 + u0) / 2.0)), u0, 0.0
    n = points or settings.oracle_points
    u_min, u_max = u_bounds(q, c)
    u = np.linspace(u_min, u_max, n)
    values = _objective_on_grid(q, c, u)
    k = int(np.argmax(values))
    v = min(math.sqrt(max(0.5 * c - ((1.0 - q) * u[k]) ** 2, 0.0)) / q, 1.0)
    return float(values[k]), float(u[k]), v


def monotonicity_certificate(
    q: float, c: float, points: int = 100, relative_step: float = 1e-3
) -> np.ndarray:
    """Central finite-difference dI_E/du at ``points`` interior points of [u_min, u_max].

    All entries are positive wherever the maximum sits at u_max.
    """
    if not 0.0 < q < 0.5:
        raise ValidationError(f"Certificate needs 0 < Q < 0.5, got {q}", field="Q")
    if not is_feasible(q, c):
        raise ValidationError(f"(Q, C) = ({q}, {c}) is infeasible")
    u_min, u_max = u_bounds(q, c)
    spacing = (u_max - u_min) / (points + 1)
    if spacing <= 0.0:
        return np.empty(0)
    u = u_min + spacing * np.arange(1, points + 1)
    h = spacing * relative_step
    return (_objective_on_grid(q, c, u + h) - _objective_on_grid(q, c, u - h)) / (2.0 * h)


def _rate(c_of_q: Callable[[float], float]) -> Callable[[float], float]:
    def rate(q: float) -> float:
        estimate = eve_information(q, c_of_q(q))
        if not estimate.feasible or estimate.r is None:
            raise ValidationError(f"C(Q) is infeasible at Q={q}")
        return estimate.r

    return rate


def locate_threshold(
    c_of_q: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 0.25,
    xtol: float = 1e-7,
) -> Optional[float]:
    """QBER where the key rate crosses zero on the curve C(Q), by bisection.

    Returns None when r does not change sign on [lo, hi].
    """
    rate = _rate(c_of_q)
    r_lo, r_hi = rate(lo), rate(hi)
    if r_lo == 0.0:
        return lo
    if r_hi == 0.0:
        return hi
    if (r_lo > 0) == (r_hi > 0):
        return None
    root = float(bisect(rate, lo, hi, xtol=xtol))
    logger.debug("rate crosses zero at Q=%.8f", root)
    return root


def find_crossing(
    estimates: Sequence[SecurityEstimate], c_of_q: Callable[[float], float]
) -> Optional[float]:
    """First zero of r between consecutive feasible grid rows, refined by bisection."""
    for left, right in zip(estimates, estimates[1:]):
        if not (left.feasible and right.feasible) or left.r is None or right.r is None:
            continue
        if left.r == 0.0:
            return left.Q
        if (left.r > 0) != (right.r > 0):
            return locate_threshold(c_of_q, left.Q, right.Q)
    return None


def _partial(f: Callable[[float], Optional[float]], x: float, step: float, lo: float) -> float:
    up = f(x + step)
    down = f(x - step) if x - step >= lo else None
    centre = f(x)
    if up is not None and down is not None:
        return (up - down) / (2.0 * step)
    if up is not None and centre is not None:
        return (up - centre) / step
    if down is not None and centre is not None:
        return (centre - down) / step
    return 0.0


def propagate_rate_error(
    q: float, c: float, sigma_q: float, sigma_c: float, step: float = 1e-6
) -> float:
    """First-order standard error of r from independent errors on Q and C.

    Returns NaN when (Q, C) itself is infeasible.
    """

    def rate_at(qq: float, cc: float) -> Optional[float]:
        if not (0.0 <= qq < 0.5 and cc >= 0.0):
            return None
        estimate = eve_information(qq, cc)
        return estimate.r if estimate.feasible else None

    if rate_at(q, c) is None:
        return math.nan
    dr_dq = _partial(lambda x: rate_at(x, c), q, step, 0.0)
    dr_dc = _partial(lambda x: rate_at(q, x), c, step, 0.0)
    return math.hypot(dr_dq * sigma_q, dr_dc * sigma_c)
