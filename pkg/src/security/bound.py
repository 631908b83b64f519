"""Eve's information I_E(Q, C) under collective attacks and the resulting key rate.

After twirling, Eve's information for a Bell-diagonal state is

    I_E(Q, u, v) = (1 - Q) h((1 + u)/2) + Q h((1 + v)/2)

maximised over u, v in [0, 1] subject to C = 2[(1 - Q)^2 u^2 + Q^2 v^2].
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import settings
from ..exceptions import InfeasibleError, ValidationError
from ..observability import get_logger
from .entropy import binary_entropy
from .optimize import bracketed_max

logger = get_logger(__name__)

CLOSED_FORM = "closed-form"
NUMERIC = "numeric"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SecurityEstimate:
    """Result of the security bound at one (Q, C) point.

    Infeasible points carry ``feasible=False`` and no I_E, r, u_opt, v_opt.
    """

    Q: float
    C: float
    I_E: Optional[float]
    r: Optional[float]
    u_opt: Optional[float]
    v_opt: Optional[float]
    feasible: bool
    method: str

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def werner_c(q: float) -> float:
    """C of the Werner state with QBER q: 2(1 - 2q)^2."""
    return 2.0 * (1.0 - 2.0 * q) ** 2


def c_cap(q: float) -> float:
    """Largest C reachable at QBER q: 2[(1 - q)^2 + q^2]."""
    return 2.0 * ((1.0 - q) ** 2 + q**2)


def is_feasible(q: float, c: float) -> bool:
    return c <= c_cap(q) + settings.atol


def _check_inputs(q: float, c: float) -> None:
    if not (math.isfinite(q) and 0.0 <= q < 0.5):
        raise ValidationError(f"Q must lie in [0, 0.5), got {q}", field="Q")
    if not (math.isfinite(c) and c >= 0.0):
        raise ValidationError(f"C must be a nonnegative number, got {c}", field="C")


def u_bounds(q: float, c: float) -> Tuple[float, float]:
    """Interval [u_min, u_max] on which v(u) lies in [0, 1]."""
    half = 0.5 * c
    u_min = math.sqrt(max(half - q * q, 0.0)) / (1.0 - q)
    u_max = min(math.sqrt(half) / (1.0 - q), 1.0)
    return min(u_min, u_max), u_max


def v_of_u(q: float, c: float, u: float) -> float:
    """v solving the C constraint for given u (q > 0), clipped to [0, 1]."""
    rest = max(0.5 * c - ((1.0 - q) * u) ** 2, 0.0)
    return min(math.sqrt(rest) / q, 1.0)


def eve_information_uv(q: float, u: float, v: float) -> float:
    """I_E(Q, u, v) in bits."""
    return (1.0 - q) * binary_entropy((1.0 + u) / 2.0) + q * binary_entropy((1.0 + v) / 2.0)


def _phi(x: float) -> float:
    """artanh(x)/x, continuous at 0 and infinite at 1."""
    if x >= 1.0:
        return math.inf
    if x < 1e-8:
        return 1.0 + x * x / 3.0
    return math.atanh(x) / x


def increasing_at(q: float, u: float, v: float) -> bool:
    """Sign of dI_E/du along the constraint: positive iff (1 - Q) phi(v) > Q phi(u)."""
    return (1.0 - q) * _phi(v) > q * _phi(u)


def _infeasible(q: float, c: float) -> SecurityEstimate:
    logger.warning("infeasible (Q, C) = (%.6g, %.6g)", q, c)
    return SecurityEstimate(q, c, None, None, None, None, feasible=False, method=INFEASIBLE)


def _estimate(q: float, c: float, u: float, v: float, i_e: float, method: str) -> SecurityEstimate:
    i_e = min(max(i_e, 0.0), 1.0)
    r = 1.0 - binary_entropy(q) - i_e
    return SecurityEstimate(q, c, i_e, r, u, v, feasible=True, method=method)


def eve_information(Q: float, C: float, strict: bool = False) -> SecurityEstimate:
    """Eve's information and the key rate r = 1 - h(Q) - I_E.

    Q = 0 uses I_E = h((1 + sqrt(C/2))/2). For 0 < Q <= settings.closed_form_q_max
    the maximum sits at u_max whenever I_E still increases there; otherwise the
    objective (unimodal in u) is maximised numerically.

    Args:
        Q: QBER in [0, 0.5)
        C: Frame-independent correlation sum
        strict: Raise instead of returning an infeasible estimate

    Raises:
        ValidationError: Q or C outside their domain
        InfeasibleError: C above the cap at Q and ``strict`` set
    """
    q, c = float(Q), float(C)
    _check_inputs(q, c)
    if not is_feasible(q, c):
        if strict:
            raise InfeasibleError(q, c)
        return _infeasible(q, c)

    if q == 0.0:
        u = min(math.sqrt(0.5 * c), 1.0)
        return _estimate(q, c, u, 0.0, binary_entropy((1.0 + u) / 2.0), CLOSED_FORM)

    u_min, u_max = u_bounds(q, c)
    v_max = v_of_u(q, c, u_max)
    if q <= settings.closed_form_q_max and increasing_at(q, u_max, v_max):
        i_e = eve_information_uv(q, u_max, v_max)
        logger.debug("closed form at u_max=%.12g (Q=%.6g, C=%.6g)", u_max, q, c)
        return _estimate(q, c, u_max, v_max, i_e, CLOSED_FORM)

    def objective(u: float) -> float:
        return eve_information_uv(q, u, v_of_u(q, c, u))

    u_opt, i_e = bracketed_max(
        objective, u_min, u_max, points=settings.bracket_points, tol=settings.golden_tol
    )
    logger.debug("numeric maximum at u=%.12g (Q=%.6g, C=%.6g)", u_opt, q, c)
    return _estimate(q, c, u_opt, v_of_u(q, c, u_opt), i_e, NUMERIC)


def six_state_reference(Q: float) -> Tuple[float, float]:
    """Six-state protocol benchmark: I_E = Q + (1 - Q) h((1 - 3Q/2)/(1 - Q)) and its rate."""
    q = float(Q)
    if not 0.0 <= q < 2.0 / 3.0:
        raise ValidationError(f"Q must lie in [0, 2/3), got {q}", field="Q")
    i_e = q + (1.0 - q) * binary_entropy((1.0 - 1.5 * q) / (1.0 - q))
    return i_e, 1.0 - binary_entropy(q) - i_e


def key_rate_curve(
    q_grid: Sequence[float],
    c_of_q: Callable[[float], float],
    max_workers: Optional[int] = None,
) -> List[SecurityEstimate]:
    """One SecurityEstimate per grid point, in grid order.

    Infeasible points stay in the table, flagged.
    """
    workers = max_workers or settings.max_workers

    def evaluate(q: float) -> SecurityEstimate:
        return eve_information(q, c_of_q(q))

    if workers <= 1 or len(q_grid) < 2:
        return [evaluate(float(q)) for q in q_grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, (float(q) for q in q_grid)))


def werner_curve(q_grid: Sequence[float]) -> List[SecurityEstimate]:
    return key_rate_curve(q_grid, werner_c)


def linspace_grid(q_max: float, steps: int) -> np.ndarray:
    """Grid 0..q_max with ``steps`` points (a single 0 when q_max is 0)."""
    if q_max == 0.0:
        return np.array([0.0])
    return np.linspace(0.0, q_max, steps)
