"""Bounded one-dimensional maximisation."""

from __future__ import annotations

import math
from typing import Callable, Tuple

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_section_max(
    obj: Callable[[float], float], a: float, b: float, tol: float = 1e-12
) -> Tuple[float, float]:
    """Golden-section search for the maximum of a unimodal function on [a, b].

    Args:
        obj: Objective
        a: Lower end of the bracket
        b: Upper end of the bracket
        tol: Final bracket width

    Returns:
        (argmax, max)
    """
    dist = b - a
    if dist <= tol:
        mid = 0.5 * (a + b)
        return mid, obj(mid)

    n = int(math.ceil(math.log(tol / dist) / math.log(INV_PHI)))

    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    yc = obj(c)
    yd = obj(d)

    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            dist = INV_PHI * dist
            c = a + INV_PHI_SQ * dist
            yc = obj(c)
        else:
            a = c
            c = d
            yc = yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            yd = obj(d)

    x = 0.5 * (a + d) if yc > yd else 0.5 * (c + b)
    return x, obj(x)


def bracketed_max(
    obj: Callable[[float], float],
    a: float,
    b: float,
    points: int = 201,
    tol: float = 1e-12,
) -> Tuple[float, float]:
    """Grid-bracket the maximum, refine it by golden section, keep the endpoints as candidates."""
    if b <= a:
        return a, obj(a)
    grid = np.linspace(a, b, points)
    values = np.array([obj(float(u)) for u in grid])
    k = int(np.argmax(values))
    lo = float(grid[max(k - 1, 0)])
    hi = float(grid[min(k + 1, points - 1)])
    x, fx = golden_section_max(obj, lo, hi, tol)
    candidates = [(x, fx), (float(grid[k]), float(values[k]))]
    return max(candidates, key=lambda item: item[1])
